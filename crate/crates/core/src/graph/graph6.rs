//! The graph6 format: the upper triangle of the adjacency matrix, column by
//! column, packed six bits per byte with every byte offset by 63.

use super::{Graph, GraphError};

const HEADER: &str = ">>graph6<<";

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::Graph6(msg.into())
}

/// Decodes a single graph6 record. Vertices are labeled `v0..v{n-1}`.
pub fn parse_graph6(input: &str) -> Result<Graph, GraphError> {
    let s = input.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(malformed("empty input"));
    }
    if let Some(&b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(malformed(format!("byte {b:#04x} outside 63..=126")));
    }
    let (n, rest) = decode_n(bytes)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    if rest.len() != need {
        return Err(malformed(format!(
            "{n} vertices need {need} data bytes, found {}",
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (pairs..need * 6).any(bit) {
        return Err(malformed("nonzero padding bits"));
    }
    let mut g = Graph::numbered(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge_idx(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

fn decode_n(bytes: &[u8]) -> Result<(usize, &[u8]), GraphError> {
    let fold = |chunk: &[u8]| chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(malformed("truncated 8-byte size field"));
        }
        Ok((fold(&bytes[2..8]), &bytes[8..]))
    } else {
        if bytes.len() < 4 {
            return Err(malformed("truncated 4-byte size field"));
        }
        Ok((fold(&bytes[1..4]), &bytes[4..]))
    }
}

/// Encodes `g` in its vertex order, without the optional header.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    let push_n = |out: &mut Vec<u8>, groups: u32| {
        for s in (0..groups).rev() {
            out.push(((n >> (6 * s)) & 63) as u8 + 63);
        }
    };
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        push_n(&mut out, 3);
    } else {
        out.extend([126, 126]);
        push_n(&mut out, 6);
    }
    let mut acc = 0u8;
    let mut used = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            used += 1;
            if used == 6 {
                out.push(acc + 63);
                acc = 0;
                used = 0;
            }
        }
    }
    if used > 0 {
        out.push((acc << (6 - used)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decodes_star_on_five() {
        // Independently decoded with networkx: edges (0,4),(1,4),(2,4),(3,4).
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        let expect = Graph::from_edges(
            (0..5).map(|i| format!("v{i}")),
            [("v0", "v4"), ("v1", "v4"), ("v2", "v4"), ("v3", "v4")],
        )
        .unwrap();
        assert_eq!(g, expect);
        assert_eq!(write_graph6(&g), "D?{");
    }

    #[test]
    fn header_is_stripped() {
        let g = parse_graph6(">>graph6<<D?{\n").unwrap();
        assert_eq!(g.m(), 4);
    }

    #[test]
    fn known_encodings() {
        assert_eq!(write_graph6(&Graph::complete(4)), "C~");
        assert_eq!(write_graph6(&Graph::numbered(0)), "?");
        assert_eq!(write_graph6(&Graph::numbered(1)), "@");
        assert_eq!(write_graph6(&Graph::cycle(5)), "Dhc");
    }

    #[test]
    fn rejects_length_mismatch() {
        assert!(parse_graph6("D?").is_err());
        assert!(parse_graph6("D?{?").is_err());
        assert!(parse_graph6("D? {").is_err());
        assert!(parse_graph6("").is_err());
    }

    #[test]
    fn rejects_nonzero_padding() {
        // n = 3 has three data bits; the last three bits of the byte are padding.
        assert!(parse_graph6("Bw").is_ok());
        assert!(parse_graph6("B~").is_err());
    }

    #[test]
    fn large_size_field() {
        let g = Graph::path(70);
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}

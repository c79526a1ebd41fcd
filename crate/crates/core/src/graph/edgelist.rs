use super::{Graph, GraphError};

/// Parses the whitespace-separated edge-list format.
///
/// One edge per line; `#` starts a comment line. An optional header
/// `n=<count> labels=<a,b,...>` declares vertices up front (this is the only
/// way to have isolated vertices). Repeated edges collapse into one.
pub fn parse_edge_list(input: &str) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    let mut seen_content = false;
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| GraphError::EdgeList { line: lineno + 1, msg };
        if !seen_content && line.starts_with("n=") {
            seen_content = true;
            parse_header(line, &mut g).map_err(err)?;
            continue;
        }
        seen_content = true;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(err(format!("expected two labels, found {}", toks.len())));
        }
        if toks[0] == toks[1] {
            return Err(GraphError::SelfLoop(toks[0].to_string()));
        }
        let a = g.ensure_vertex(toks[0]);
        let b = g.ensure_vertex(toks[1]);
        g.add_edge_idx(a, b)?;
    }
    Ok(g)
}

fn parse_header(line: &str, g: &mut Graph) -> Result<(), String> {
    let mut count: Option<usize> = None;
    let mut labels: Vec<&str> = Vec::new();
    for tok in line.split_whitespace() {
        if let Some(v) = tok.strip_prefix("n=") {
            count = Some(v.parse().map_err(|_| format!("bad vertex count {v:?}"))?);
        } else if let Some(v) = tok.strip_prefix("labels=") {
            labels = v.split(',').filter(|s| !s.is_empty()).collect();
        } else {
            return Err(format!("unexpected header token {tok:?}"));
        }
    }
    let count = count.ok_or("header without n=")?;
    if labels.is_empty() && count > 0 {
        for i in 0..count {
            g.add_vertex(format!("v{i}")).map_err(|e| e.to_string())?;
        }
        return Ok(());
    }
    if labels.len() != count {
        return Err(format!("n={count} but {} labels given", labels.len()));
    }
    for l in labels {
        g.add_vertex(l).map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Writes `g` in edge-list form. A header is emitted whenever some vertex is
/// isolated, so the output always parses back to the same graph.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    if (0..g.n()).any(|i| g.degree(i) == 0) {
        out.push_str(&format!("n={} labels={}\n", g.n(), g.labels().join(",")));
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("{} {}\n", g.label(i), g.label(j)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_from_two_lines() {
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g, Graph::from_edges(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap());
    }

    #[test]
    fn header_declares_isolated_vertex() {
        let g = parse_edge_list("n=1 labels=a\n").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
        assert_eq!(g.label(0), "a");
    }

    #[test]
    fn duplicates_and_comments() {
        let g = parse_edge_list("# triangle\na b\nb a\n\nb c\nc a\n# done\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn self_loop_rejected() {
        assert_eq!(parse_edge_list("a a"), Err(GraphError::SelfLoop("a".into())));
    }

    #[test]
    fn malformed_lines() {
        assert!(parse_edge_list("a b c").is_err());
        assert!(parse_edge_list("n=2 labels=a").is_err());
        assert!(parse_edge_list("n=x labels=a").is_err());
    }

    #[test]
    fn writer_round_trips_isolated_vertices() {
        let g = Graph::from_edges(["p", "q", "r"], [("p", "q")]).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }
}

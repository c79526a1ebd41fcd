use super::{Graph, GraphError};

/// A biconnected component together with the cut-vertices of the parent
/// graph that it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub graph: Graph,
    pub cut_vertices: Vec<String>,
}

/// Maximal connected induced subgraphs, ordered by their first vertex.
pub fn connected_components(g: &Graph) -> Vec<Graph> {
    component_masks(g).iter().map(|mask| g.induced_by_mask(mask)).collect()
}

pub(crate) fn component_masks(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }
    (0..count).map(|c| comp.iter().map(|&x| x == c).collect()).collect()
}

struct Lowpoint {
    blocks: Vec<Vec<usize>>,
    is_cut: Vec<bool>,
}

/// Single-pass DFS lowpoint computation with an explicit stack. Blocks come
/// out as vertex index sets; isolated vertices form singleton blocks.
fn lowpoint(g: &Graph) -> Lowpoint {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![NONE; n];
    let mut low = vec![NONE; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if g.degree(root) == 0 {
            blocks.push(vec![root]);
            continue;
        }
        let mut root_children = 0;
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = vec![(root, NONE, g.neighbors(root).collect(), 0)];
        while let Some(frame) = stack.last_mut() {
            let (v, parent) = (frame.0, frame.1);
            if frame.3 < frame.2.len() {
                let w = frame.2[frame.3];
                frame.3 += 1;
                if disc[w] == NONE {
                    edges.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, g.neighbors(w).collect(), 0));
                } else if w != parent && disc[w] < disc[v] {
                    edges.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == NONE {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                if parent != root {
                    is_cut[parent] = true;
                }
                let mut in_block = vec![false; n];
                while let Some((a, b)) = edges.pop() {
                    in_block[a] = true;
                    in_block[b] = true;
                    if (a, b) == (parent, v) {
                        break;
                    }
                }
                blocks.push((0..n).filter(|&i| in_block[i]).collect());
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    Lowpoint { blocks, is_cut }
}

/// Cut-vertices of `g`, sorted by label.
pub fn cut_vertices(g: &Graph) -> Vec<String> {
    let lp = lowpoint(g);
    let mut out: Vec<String> = (0..g.n())
        .filter(|&i| lp.is_cut[i])
        .map(|i| g.label(i).to_string())
        .collect();
    out.sort();
    out
}

/// Biconnected components of a connected graph. A bridge is its own
/// single-edge component; a single vertex is returned as one component.
pub fn biconnected_components(g: &Graph) -> Result<Vec<Block>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let lp = lowpoint(g);
    Ok(lp
        .blocks
        .iter()
        .map(|members| {
            let mut mask = vec![false; g.n()];
            for &i in members {
                mask[i] = true;
            }
            let mut cut_vertices: Vec<String> = members
                .iter()
                .filter(|&&i| lp.is_cut[i])
                .map(|&i| g.label(i).to_string())
                .collect();
            cut_vertices.sort();
            Block {
                graph: g.induced_by_mask(&mask),
                cut_vertices,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::from_edges(
            ["a", "b", "x", "c", "d"],
            [("a", "b"), ("b", "x"), ("x", "a"), ("x", "c"), ("c", "d"), ("d", "x")],
        )
        .unwrap()
    }

    #[test]
    fn two_triangles_share_cut_vertex() {
        let blocks = biconnected_components(&bowtie()).unwrap();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            assert_eq!(b.graph.n(), 3);
            assert_eq!(b.graph.m(), 3);
            assert_eq!(b.cut_vertices, vec!["x".to_string()]);
        }
        assert_eq!(cut_vertices(&bowtie()), vec!["x"]);
    }

    #[test]
    fn path_splits_into_edges() {
        let g = Graph::from_edges(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let blocks = biconnected_components(&g).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.graph.m() == 1 && b.cut_vertices == ["b"]));
    }

    #[test]
    fn cycle_is_its_own_block() {
        let g = Graph::cycle(4);
        let blocks = biconnected_components(&g).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].graph, g);
        assert!(blocks[0].cut_vertices.is_empty());
    }

    #[test]
    fn single_vertex_and_disconnected() {
        let g = Graph::numbered(1);
        let blocks = biconnected_components(&g).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].graph, g);
        assert_eq!(
            biconnected_components(&Graph::numbered(2)),
            Err(GraphError::Disconnected)
        );
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = Graph::from_edges(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "a"), ("d", "e")],
        )
        .unwrap();
        let cs = connected_components(&g);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], g.induced(&["a", "b", "c"]).unwrap());
        assert_eq!(cs[1], g.induced(&["d", "e"]).unwrap());
        assert_eq!(connected_components(&Graph::cycle(5)), vec![Graph::cycle(5)]);
        assert_eq!(connected_components(&Graph::numbered(3)).len(), 3);
    }
}

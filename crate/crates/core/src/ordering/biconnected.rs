//! Biconnected components by the edge-stack depth-first search.

use crate::graph::UndirectedGraph;

/// Edge sets of all biconnected components; each edge `(u, v)` once.
pub fn biconnected_components(graph: &UndirectedGraph) -> Vec<Vec<(usize, usize)>> {
    const UNSEEN: usize = usize::MAX;
    let n = graph.node_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut edges = Vec::new();
    let mut components = Vec::new();
    let mut time = 0;
    // (node, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, UNSEEN, 0));
        while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
            if let Some(&w) = graph.neighbors(v).get(*next) {
                *next += 1;
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edges.push((v, w));
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edges.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent != UNSEEN {
                low[parent] = low[parent].min(low[v]);
                if low[v] >= disc[parent] {
                    let mut component = Vec::new();
                    while let Some(e) = edges.pop() {
                        component.push(e);
                        if e == (parent, v) {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}

/// The biconnected component chosen as the last block of an order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Nodes, ascending.
    pub nodes: Vec<usize>,
    pub edge_count: usize,
    /// Edges with exactly one endpoint in the block.
    pub leaving: Vec<(usize, usize)>,
}

/// The biconnected component with the most edges; ties go to more nodes, then
/// to the smallest contained node. `None` for graphs without edges.
pub fn largest_biconnected_component(graph: &UndirectedGraph) -> Option<Block> {
    let (nodes, edge_count) = biconnected_components(graph)
        .into_iter()
        .map(|edges| {
            let mut nodes: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            nodes.sort_unstable();
            nodes.dedup();
            (nodes, edges.len())
        })
        .min_by(|(n1, e1), (n2, e2)| e2.cmp(e1).then(n2.len().cmp(&n1.len())).then(n1[0].cmp(&n2[0])))?;
    let mut inside = vec![false; graph.node_count()];
    for &v in &nodes {
        inside[v] = true;
    }
    let leaving = graph.edges().filter(|&(u, v)| inside[u] != inside[v]).collect();
    Some(Block { nodes, edge_count, leaving })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    fn sorted_blocks(g: &UndirectedGraph) -> Vec<Vec<(usize, usize)>> {
        let mut blocks: Vec<_> = biconnected_components(g)
            .into_iter()
            .map(|b| {
                let mut b: Vec<_> = b.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        blocks
    }

    #[test]
    fn bowtie() {
        let g = UndirectedGraph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(sorted_blocks(&g), vec![vec![(0, 1), (0, 2), (1, 2)], vec![(2, 3), (2, 4), (3, 4)]]);
        let b = largest_biconnected_component(&g).unwrap();
        assert_eq!(b.nodes, vec![0, 1, 2]);
        assert_eq!(b.leaving, vec![(2, 3), (2, 4)]);
    }

    #[test]
    fn tree_and_cycle() {
        let tree = generators::star(3);
        assert_eq!(biconnected_components(&tree).len(), 3);
        let b = largest_biconnected_component(&tree).unwrap();
        assert_eq!((b.nodes, b.edge_count), (vec![0, 1], 1));
        let cycle = generators::cycle(6);
        let b = largest_biconnected_component(&cycle).unwrap();
        assert_eq!((b.nodes.len(), b.edge_count), (6, 6));
        assert!(b.leaving.is_empty());
        assert!(largest_biconnected_component(&generators::path(1)).is_none());
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        for seed in 0..50 {
            let g = crate::testutil::random_graph(seed, 15, 0.12);
            let blocks = biconnected_components(&g);
            let total: usize = blocks.iter().map(Vec::len).sum();
            assert_eq!(total, g.edge_count());
            for block in &blocks {
                let mut nodes: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
                nodes.sort_unstable();
                nodes.dedup();
                let sub = g.induced_subgraph(&nodes);
                // No single node removal disconnects a block with three or more nodes.
                if nodes.len() >= 3 {
                    for cut in 0..nodes.len() {
                        assert!(sub.is_connected_subset(|v| v != cut), "seed {seed}");
                    }
                }
            }
        }
    }
}

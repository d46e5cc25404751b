//! Removal of degree-two chains ahead of nested dissection.
//!
//! For a chain `x, y_1, ..., y_k, z` of interior degree-two nodes, the `y_i`
//! are removed and the shortcut `x - z` is added unless `x` or `z` has degree
//! one, in which case that end is removed as well. Chains that close on
//! themselves (`x == z`, or cycles without any other node) keep `y_1` and
//! `y_k` joined by an edge, so a triangle remains instead of a self-loop.

use crate::graph::UndirectedGraph;

/// A graph with its chains removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReduction {
    /// Removed nodes of the input graph; they go first in an order.
    pub removed: Vec<usize>,
    /// Remaining input nodes, ascending; node `i` of `reduced` is `kept[i]`.
    pub kept: Vec<usize>,
    pub reduced: UndirectedGraph,
}

pub fn eliminate_degree2_chains(graph: &UndirectedGraph) -> ChainReduction {
    let n = graph.node_count();
    let deg = |v: usize| graph.degree(v);
    let mut removed = vec![false; n];
    let mut visited = vec![false; n];
    let mut shortcuts = Vec::new();
    for start in 0..n {
        if deg(start) != 2 || visited[start] {
            continue;
        }
        // Walk both directions from `start` to the chain ends.
        let mut chain = vec![start];
        let mut behind = Vec::new();
        visited[start] = true;
        let mut ends = [usize::MAX; 2];
        let mut cyclic = false;
        for (dir, end) in ends.iter_mut().enumerate() {
            let (mut prev, mut cur) = (start, graph.neighbors(start)[dir]);
            loop {
                if cur == start {
                    cyclic = true;
                    break;
                }
                if deg(cur) != 2 {
                    *end = cur;
                    break;
                }
                visited[cur] = true;
                if dir == 0 {
                    chain.push(cur);
                } else {
                    behind.push(cur);
                }
                let nb = graph.neighbors(cur);
                let next = if nb[0] == prev { nb[1] } else { nb[0] };
                prev = cur;
                cur = next;
            }
            if cyclic {
                break;
            }
        }
        behind.reverse();
        behind.extend(chain);
        let mut chain = behind;
        if cyclic {
            // A cycle of degree-two nodes: anchor it at its smallest node.
            let anchor = *chain.iter().min().unwrap();
            let pos = chain.iter().position(|&v| v == anchor).unwrap();
            chain.rotate_left(pos);
            close_loop(&chain[1..], &mut removed, &mut shortcuts);
            continue;
        }
        // `chain` runs from the neighbour of ends[1] to the neighbour of ends[0].
        let (x, z) = (ends[1], ends[0]);
        if x == z {
            close_loop(&chain, &mut removed, &mut shortcuts);
            continue;
        }
        for &y in &chain {
            removed[y] = true;
        }
        let (x_leaf, z_leaf) = (deg(x) == 1, deg(z) == 1);
        if x_leaf {
            removed[x] = true;
        }
        if z_leaf {
            removed[z] = true;
        }
        if !x_leaf && !z_leaf {
            shortcuts.push((x, z));
        }
    }
    let removed_list: Vec<usize> = (0..n).filter(|&v| removed[v]).collect();
    let kept: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        local[v] = i;
    }
    let edges =
        graph.edges().chain(shortcuts).filter(|&(u, v)| !removed[u] && !removed[v]).map(|(u, v)| (local[u], local[v]));
    let reduced = UndirectedGraph::from_edges(kept.len(), edges).expect("shortcuts join distinct kept nodes");
    ChainReduction { removed: removed_list, kept, reduced }
}

/// Interior `y_1..y_k` of a chain whose ends coincide: drop `y_2..y_{k-1}` and
/// join `y_1 - y_k`.
fn close_loop(interior: &[usize], removed: &mut [bool], shortcuts: &mut Vec<(usize, usize)>) {
    if interior.len() <= 2 {
        return;
    }
    for &y in &interior[1..interior.len() - 1] {
        removed[y] = true;
    }
    shortcuts.push((interior[0], interior[interior.len() - 1]));
}

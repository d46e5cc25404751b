//! Optimal elimination orders for forests via minimum vertex rankings.
//!
//! A vertex ranking labels nodes so that any path between two equal labels
//! passes a larger one. Processed bottom-up, each subtree is summarised by
//! the set of labels still visible from above; a node takes the smallest
//! label that exceeds every label visible from two children and is not
//! visible from any. The labels fit in a `u64` because an optimal ranking
//! never exceeds `log2(n) + 1`.

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Rank (1-based label) of every node of a forest.
pub fn optimal_ranking(forest: &UndirectedGraph) -> Result<Vec<u32>> {
    let n = forest.node_count();
    let components = forest.connected_components();
    if forest.edge_count() + components.len() != n {
        return Err(Error::NotAForest);
    }
    let mut visible = vec![0u64; n];
    let mut rank = vec![0u32; n];
    let mut parent = vec![usize::MAX; n];
    let mut postorder = Vec::with_capacity(n);
    for comp in &components {
        let root = comp[0];
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(v) = stack.pop() {
            postorder.push(v);
            for &w in forest.neighbors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
    }
    // Reversed preorder visits children before parents.
    for &v in postorder.iter().rev() {
        let (mut union, mut dup) = (0u64, 0u64);
        for &w in forest.neighbors(v) {
            if parent[w] == v && w != v {
                dup |= union & visible[w];
                union |= visible[w];
            }
        }
        let floor = 64 - dup.leading_zeros();
        let free = !union & (u64::MAX << floor);
        let k = free.trailing_zeros();
        let above = if k >= 63 { 0 } else { union & (u64::MAX << (k + 1)) };
        visible[v] = (1 << k) | above;
        rank[v] = k + 1;
    }
    Ok(rank)
}

/// Nodes sorted by increasing rank, ties by id. Eliminating in this order
/// yields an elimination tree of minimum height.
pub fn tree_order(forest: &UndirectedGraph) -> Result<Vec<usize>> {
    let rank = optimal_ranking(forest)?;
    let mut order: Vec<usize> = (0..forest.node_count()).collect();
    order.sort_by_key(|&v| (rank[v], v));
    Ok(order)
}

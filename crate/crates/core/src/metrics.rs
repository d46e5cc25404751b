//! Quality of a contraction order, measured by the elimination game.
//!
//! Contracting nodes in order and connecting each node's remaining neighbours
//! yields a chordal supergraph. Arcs point upward, from the node contracted
//! earlier to the later one. The search space of a node is everything reachable
//! from it along upward arcs.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Position of every node in `order`, or an error if `order` is not a
/// permutation of `0..n`.
pub fn check_permutation(order: &[usize], n: usize) -> Result<Vec<usize>> {
    if order.len() != n {
        return Err(Error::NotAPermutation(format!("{} entries for {n} nodes", order.len())));
    }
    let mut rank = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(Error::NotAPermutation(format!("node {v} out of range")));
        }
        if rank[v] != usize::MAX {
            return Err(Error::NotAPermutation(format!("node {v} appears twice")));
        }
        rank[v] = i;
    }
    Ok(rank)
}

/// The chordal supergraph of an elimination, indexed by rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationResult {
    /// `order[r]` is the node of rank `r`.
    pub order: Vec<usize>,
    /// Upward neighbours of every rank, as ranks, ascending.
    pub upward: Vec<Vec<usize>>,
    pub original_edges: usize,
    /// Upward arcs of the supergraph.
    pub arc_count: usize,
    /// Largest upward degree; an upper bound on the treewidth.
    pub treewidth_bound: usize,
}

impl EliminationResult {
    pub fn fill_in(&self) -> usize {
        self.arc_count - self.original_edges
    }

    /// Elimination-tree parent of rank `r`: its lowest upward neighbour.
    pub fn parent(&self, r: usize) -> Option<usize> {
        self.upward[r].first().copied()
    }
}

/// Plays the elimination game along `order`. Instead of forming each clique
/// explicitly, the upward neighbours of a node are merged into its lowest
/// upward neighbour, which is eliminated next among them.
pub fn elimination_game(graph: &UndirectedGraph, order: &[usize]) -> Result<EliminationResult> {
    let n = graph.node_count();
    let rank = check_permutation(order, n)?;
    let mut upward: Vec<Vec<usize>> = order
        .iter()
        .enumerate()
        .map(|(r, &v)| graph.neighbors(v).iter().map(|&w| rank[w]).filter(|&s| s > r).collect())
        .collect();
    for r in 0..n {
        let mut up = std::mem::take(&mut upward[r]);
        up.sort_unstable();
        up.dedup();
        if let Some((&p, rest)) = up.split_first() {
            upward[p].extend_from_slice(rest);
        }
        upward[r] = up;
    }
    let arc_count = upward.iter().map(Vec::len).sum();
    let treewidth_bound = upward.iter().map(Vec::len).max().unwrap_or(0);
    Ok(EliminationResult {
        order: order.to_vec(),
        upward,
        original_edges: graph.edge_count(),
        arc_count,
        treewidth_bound,
    })
}

/// Triangles of the supergraph, each counted once at its lowest node by
/// intersecting sorted upward lists.
pub fn count_triangles(result: &EliminationResult) -> u64 {
    let up = &result.upward;
    let mut count = 0u64;
    for list in up {
        for &s in list {
            let (mut i, mut j) = (0, 0);
            let other = &up[s];
            while i < list.len() && j < other.len() {
                match list[i].cmp(&other[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        count += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    count
}

/// Height of the elimination tree of `order` (a single node has height 1).
pub fn elimination_tree_height(graph: &UndirectedGraph, order: &[usize]) -> Result<usize> {
    let result = elimination_game(graph, order)?;
    Ok(search_space_stats(&result, SearchSpaceMode::Exact)?.nodes_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchSpaceMode {
    Exact,
    /// `k` distinct start nodes drawn uniformly with the given seed.
    Sampled {
        k: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSpaceStats {
    pub nodes_avg: f64,
    pub nodes_max: usize,
    pub arcs_avg: f64,
    pub arcs_max: usize,
    /// Number of start nodes evaluated.
    pub evaluated: usize,
}

impl SearchSpaceStats {
    fn from_sizes(sizes: impl Iterator<Item = (usize, usize)>) -> Self {
        let (mut count, mut node_sum, mut arc_sum, mut nodes_max, mut arcs_max) = (0usize, 0u64, 0u64, 0, 0);
        for (nodes, arcs) in sizes {
            count += 1;
            node_sum += nodes as u64;
            arc_sum += arcs as u64;
            nodes_max = nodes_max.max(nodes);
            arcs_max = arcs_max.max(arcs);
        }
        let avg = |sum: u64| if count == 0 { 0.0 } else { sum as f64 / count as f64 };
        SearchSpaceStats { nodes_avg: avg(node_sum), nodes_max, arcs_avg: avg(arc_sum), arcs_max, evaluated: count }
    }
}

/// Search-space sizes. Exact mode walks the elimination tree top-down: the
/// search space of a node is itself plus that of its parent. Sampled mode
/// runs an explicit upward search from each sampled node.
pub fn search_space_stats(result: &EliminationResult, mode: SearchSpaceMode) -> Result<SearchSpaceStats> {
    let n = result.upward.len();
    match mode {
        SearchSpaceMode::Exact => {
            let mut nodes = vec![0usize; n];
            let mut arcs = vec![0usize; n];
            for r in (0..n).rev() {
                let (pn, pa) = result.parent(r).map_or((0, 0), |p| (nodes[p], arcs[p]));
                nodes[r] = 1 + pn;
                arcs[r] = result.upward[r].len() + pa;
            }
            Ok(SearchSpaceStats::from_sizes(nodes.into_iter().zip(arcs)))
        }
        SearchSpaceMode::Sampled { k, seed } => {
            if k > n {
                return Err(Error::Domain(format!("cannot sample {k} of {n} nodes")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut starts = rand::seq::index::sample(&mut rng, n, k).into_vec();
            starts.sort_unstable();
            let mut seen = vec![false; n];
            let mut stack = Vec::new();
            let mut reached = Vec::new();
            let sizes: Vec<(usize, usize)> = starts
                .iter()
                .map(|&start| {
                    seen[start] = true;
                    stack.push(start);
                    reached.clear();
                    let mut arcs = 0;
                    while let Some(r) = stack.pop() {
                        reached.push(r);
                        arcs += result.upward[r].len();
                        for &s in &result.upward[r] {
                            if !seen[s] {
                                seen[s] = true;
                                stack.push(s);
                            }
                        }
                    }
                    for &r in &reached {
                        seen[r] = false;
                    }
                    (reached.len(), arcs)
                })
                .collect();
            Ok(SearchSpaceStats::from_sizes(sizes.into_iter()))
        }
    }
}

/// All quality figures of an order.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsReport {
    pub nodes: usize,
    pub edges: usize,
    pub cch_arcs: usize,
    pub fill_in: usize,
    pub triangles: u64,
    pub treewidth_bound: usize,
    pub search_space: SearchSpaceStats,
}

pub fn evaluate_order(graph: &UndirectedGraph, order: &[usize], mode: SearchSpaceMode) -> Result<MetricsReport> {
    let result = elimination_game(graph, order)?;
    Ok(MetricsReport {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        cch_arcs: result.arc_count,
        fill_in: result.fill_in(),
        triangles: count_triangles(&result),
        treewidth_bound: result.treewidth_bound,
        search_space: search_space_stats(&result, mode)?,
    })
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.search_space;
        writeln!(f, "nodes={}", self.nodes)?;
        writeln!(f, "edges={}", self.edges)?;
        writeln!(f, "cch_arcs={}", self.cch_arcs)?;
        writeln!(f, "fill_in={}", self.fill_in)?;
        writeln!(f, "triangles={}", self.triangles)?;
        writeln!(f, "treewidth_bound={}", self.treewidth_bound)?;
        writeln!(f, "search_space_evaluated={}", s.evaluated)?;
        writeln!(f, "search_space_nodes_avg={:.3}", s.nodes_avg)?;
        writeln!(f, "search_space_nodes_max={}", s.nodes_max)?;
        writeln!(f, "search_space_arcs_avg={:.3}", s.arcs_avg)?;
        writeln!(f, "search_space_arcs_max={}", s.arcs_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;

    /// Quadratic-memory elimination on an adjacency matrix.
    struct Naive {
        arcs: usize,
        bound: usize,
        triangles: u64,
        search_nodes: Vec<usize>,
        search_arcs: Vec<usize>,
    }

    fn naive(g: &UndirectedGraph, order: &[usize]) -> Naive {
        let n = g.node_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let mut gone = vec![false; n];
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &v in order {
            let nb: Vec<usize> = (0..n).filter(|&w| adj[v][w] && !gone[w]).collect();
            for &a in &nb {
                for &b in &nb {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
            up[v] = nb;
            gone[v] = true;
        }
        let mut triangles = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if adj[a][b] && adj[b][c] && adj[a][c] {
                        triangles += 1;
                    }
                }
            }
        }
        let mut search_nodes = Vec::new();
        let mut search_arcs = Vec::new();
        for s in 0..n {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut stack = vec![s];
            let (mut nodes, mut arcs) = (0, 0);
            while let Some(v) = stack.pop() {
                nodes += 1;
                arcs += up[v].len();
                for &w in &up[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            search_nodes.push(nodes);
            search_arcs.push(arcs);
        }
        Naive {
            arcs: up.iter().map(Vec::len).sum(),
            bound: up.iter().map(Vec::len).max().unwrap_or(0),
            triangles,
            search_nodes,
            search_arcs,
        }
    }

    #[test]
    fn path_with_perfect_order() {
        let g = generators::path(3);
        let r = elimination_game(&g, &[0, 2, 1]).unwrap();
        assert_eq!((r.arc_count, r.fill_in(), r.treewidth_bound), (2, 0, 1));
        assert_eq!(count_triangles(&r), 0);
        assert_eq!(search_space_stats(&r, SearchSpaceMode::Exact).unwrap().nodes_max, 2);
    }

    #[test]
    fn clique_any_order() {
        let g = generators::complete(4);
        let r = elimination_game(&g, &[2, 0, 3, 1]).unwrap();
        assert_eq!((r.arc_count, r.treewidth_bound), (6, 3));
        let k5 = elimination_game(&generators::complete(5), &[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(count_triangles(&k5), 10);
        let s = search_space_stats(&k5, SearchSpaceMode::Exact).unwrap();
        assert_eq!(s.nodes_max, 5);
        assert!((s.nodes_avg - 3.0).abs() < 1e-12);
    }

    #[test]
    fn four_cycle_fill() {
        let r = elimination_game(&generators::cycle(4), &[0, 1, 2, 3]).unwrap();
        assert_eq!((r.fill_in(), r.treewidth_bound), (1, 2));
        assert_eq!(count_triangles(&r), 2);
    }

    #[test]
    fn rejects_non_permutations() {
        let g = generators::path(3);
        assert!(matches!(elimination_game(&g, &[0, 1]), Err(Error::NotAPermutation(_))));
        assert!(matches!(elimination_game(&g, &[0, 1, 1]), Err(Error::NotAPermutation(_))));
        assert!(matches!(elimination_game(&g, &[0, 1, 3]), Err(Error::NotAPermutation(_))));
    }

    #[test]
    fn sampled_matches_exact_when_complete() {
        let g = crate::testutil::random_graph(4, 30, 0.15);
        let order: Vec<usize> = (0..g.node_count()).rev().collect();
        let r = elimination_game(&g, &order).unwrap();
        let exact = search_space_stats(&r, SearchSpaceMode::Exact).unwrap();
        let sampled = search_space_stats(&r, SearchSpaceMode::Sampled { k: g.node_count(), seed: 1 }).unwrap();
        assert_eq!(exact, sampled);
        assert!(search_space_stats(&r, SearchSpaceMode::Sampled { k: g.node_count() + 1, seed: 1 }).is_err());
        let few = search_space_stats(&r, SearchSpaceMode::Sampled { k: 5, seed: 1 }).unwrap();
        assert_eq!(few.evaluated, 5);
        assert!(few.nodes_max <= exact.nodes_max);
    }

    #[test]
    fn agrees_with_naive_elimination() {
        use rand::seq::SliceRandom;
        for seed in 0..60 {
            let g = crate::testutil::random_graph(seed, 50, 0.08);
            let mut order: Vec<usize> = (0..g.node_count()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let r = elimination_game(&g, &order).unwrap();
            let o = naive(&g, &order);
            assert_eq!(r.arc_count, o.arcs, "seed {seed}");
            assert_eq!(r.treewidth_bound, o.bound);
            assert_eq!(count_triangles(&r), o.triangles);
            let s = search_space_stats(&r, SearchSpaceMode::Exact).unwrap();
            assert_eq!(s.nodes_max, *o.search_nodes.iter().max().unwrap());
            assert_eq!(s.arcs_max, *o.search_arcs.iter().max().unwrap());
            let avg = o.search_nodes.iter().sum::<usize>() as f64 / g.node_count() as f64;
            assert!((s.nodes_avg - avg).abs() < 1e-9);
        }
    }

    #[test]
    fn report_lines() {
        let g = generators::complete(5);
        let report = evaluate_order(&g, &[0, 1, 2, 3, 4], SearchSpaceMode::Exact).unwrap();
        let text = report.to_string();
        assert!(text.contains("treewidth_bound=4\n"));
        assert!(text.contains("triangles=10\n"));
        assert!(text.lines().all(|l| l.contains('=')));
    }
}

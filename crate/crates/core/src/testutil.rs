//! Independent oracles and random instances for unit tests.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::UndirectedGraph;

/// Connected random graph with `2..=max_n` nodes: a random spanning tree plus
/// every other pair with probability `p`.
pub fn random_graph(seed: u64, max_n: usize, p: f64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, edges).unwrap()
}

/// Minimum number of edges crossing a bipartition with `s` and `t` on
/// different sides, by enumerating all bipartitions.
pub fn brute_force_min_cut(g: &UndirectedGraph, s: usize, t: usize) -> usize {
    let n = g.node_count();
    assert!(n <= 20);
    (0u32..1 << n)
        .filter(|mask| mask & (1 << s) != 0 && mask & (1 << t) == 0)
        .map(|mask| g.edges().filter(|&(u, v)| (mask >> u & 1) != (mask >> v & 1)).count())
        .min()
        .unwrap()
}

/// Textbook Edmonds-Karp on a dense capacity matrix.
pub fn edmonds_karp(g: &UndirectedGraph, s: usize, t: usize) -> usize {
    let n = g.node_count();
    let mut cap = vec![vec![0i32; n]; n];
    for (u, v) in g.edges() {
        cap[u][v] = 1;
        cap[v][u] = 1;
    }
    let mut flow = 0;
    loop {
        let mut pred = vec![usize::MAX; n];
        pred[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if pred[v] == usize::MAX && cap[u][v] > 0 {
                    pred[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if pred[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = pred[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

fn connected_avoiding(g: &UndirectedGraph, s: usize, t: usize, removed: u32) -> bool {
    let mut seen = removed | 1 << s;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        if u == t {
            return true;
        }
        for &v in g.neighbors(u) {
            if seen >> v & 1 == 0 {
                seen |= 1 << v;
                stack.push(v);
            }
        }
    }
    false
}

/// Smallest node set avoiding `s` and `t` whose removal disconnects them.
/// `s` and `t` must not be adjacent.
pub fn brute_force_vertex_cut(g: &UndirectedGraph, s: usize, t: usize) -> usize {
    let n = g.node_count();
    assert!(n <= 20 && !g.has_edge(s, t));
    (0u32..1 << n)
        .filter(|mask| mask & (1 << s | 1 << t) == 0)
        .filter(|&mask| !connected_avoiding(g, s, t, mask))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

/// Minimum elimination-tree height over all orders (the tree-depth), by
/// memoised recursion over node subsets.
pub fn min_elimination_height(g: &UndirectedGraph) -> usize {
    let n = g.node_count();
    assert!(n <= 16);
    let mut memo = vec![usize::MAX; 1 << n];
    fn solve(g: &UndirectedGraph, set: usize, memo: &mut [usize]) -> usize {
        if set == 0 {
            return 0;
        }
        if memo[set] != usize::MAX {
            return memo[set];
        }
        // Split into components of the induced subgraph.
        let root = set.trailing_zeros() as usize;
        let mut comp = 1 << root;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if set >> v & 1 == 1 && comp >> v & 1 == 0 {
                    comp |= 1 << v;
                    stack.push(v);
                }
            }
        }
        let result = if comp != set {
            solve(g, comp, memo).max(solve(g, set & !comp, memo))
        } else {
            (0..g.node_count())
                .filter(|&v| set >> v & 1 == 1)
                .map(|v| 1 + solve(g, set & !(1 << v), memo))
                .min()
                .unwrap()
        };
        memo[set] = result;
        result
    }
    solve(g, (1 << n) - 1, &mut memo)
}

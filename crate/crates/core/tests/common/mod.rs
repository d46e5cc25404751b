//! Independent oracles and instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::VecDeque;

use flowcut::UndirectedGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

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

pub fn random_tree(seed: u64, n: usize) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    UndirectedGraph::from_edges(n, edges).unwrap()
}

/// Grid with `width` columns and `length` rows; every balanced cut across the
/// long axis has `width` edges.
pub fn strip(width: usize, length: usize) -> UndirectedGraph {
    let id = |x: usize, y: usize| y * width + x;
    let mut edges = Vec::new();
    for y in 0..length {
        for x in 0..width {
            if x + 1 < width {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < length {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    UndirectedGraph::from_edges(width * length, edges).unwrap()
}

/// Minimum number of edges crossing a bipartition that separates `s` from `t`,
/// by enumerating every bipartition.
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

/// Minimum elimination-tree height over all orders, by trying every order.
pub fn brute_force_min_height(g: &UndirectedGraph) -> usize {
    let n = g.node_count();
    assert!(n <= 8);
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    permute(&mut order, 0, &mut |o| best = best.min(height_of(g, o)));
    best
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn height_of(g: &UndirectedGraph, order: &[usize]) -> usize {
    naive_elimination(g, order).height
}

/// Leaves-first elimination order of a forest: every node has at most one
/// neighbour eliminated after it.
pub fn leaf_peeling_order(g: &UndirectedGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut done = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        if done[v] {
            continue;
        }
        done[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !done[w] {
                degree[w] -= 1;
                if degree[w] <= 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

pub struct NaiveElimination {
    pub arcs: usize,
    pub bound: usize,
    pub triangles: u64,
    pub height: usize,
    pub search_nodes: Vec<usize>,
    pub search_arcs: Vec<usize>,
}

/// Elimination game on an adjacency matrix with search spaces by DFS over
/// upward arcs.
pub fn naive_elimination(g: &UndirectedGraph, order: &[usize]) -> NaiveElimination {
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
    let mut rank = vec![0; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
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
    // The elimination-tree parent is the lowest-ranked upward neighbour.
    let mut depth = vec![1; n];
    for &v in order.iter().rev() {
        if let Some(&p) = up[v].iter().min_by_key(|&&w| rank[w]) {
            depth[v] = depth[p] + 1;
        }
    }
    NaiveElimination {
        arcs: up.iter().map(Vec::len).sum(),
        bound: up.iter().map(Vec::len).max().unwrap_or(0),
        triangles,
        height: depth.into_iter().max().unwrap_or(0),
        search_nodes,
        search_arcs,
    }
}

/// Whether the nodes with `member(v)` induce a connected subgraph, by BFS.
pub fn induces_connected(g: &UndirectedGraph, member: impl Fn(usize) -> bool) -> bool {
    let n = g.node_count();
    let Some(start) = (0..n).find(|&v| member(v)) else { return true };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 0;
    while let Some(u) = queue.pop_front() {
        count += 1;
        for &v in g.neighbors(u) {
            if member(v) && !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    count == (0..n).filter(|&v| member(v)).count()
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

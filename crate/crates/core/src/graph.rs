//! Immutable simple undirected graphs in adjacency-array form.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// A simple symmetric graph. Every undirected edge `{u, v}` is stored as the
/// two arcs `(u, v)` and `(v, u)`; adjacency lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    first_out: Vec<usize>,
    head: Vec<usize>,
}

impl UndirectedGraph {
    /// Builds a graph from undirected edges. Duplicates and antiparallel
    /// copies collapse into a single edge.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut arcs = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= node_count {
                    return Err(Error::NodeOutOfRange { node: x, node_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            arcs.push((u, v));
            arcs.push((v, u));
        }
        Ok(Self::from_arc_list(node_count, arcs))
    }

    /// `arcs` must be in range and loop-free; symmetry is not required of the
    /// input, only of the caller's intent (both directions must be present).
    pub(crate) fn from_arc_list(node_count: usize, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup();
        let mut first_out = vec![0; node_count + 1];
        for &(u, _) in &arcs {
            first_out[u + 1] += 1;
        }
        for i in 0..node_count {
            first_out[i + 1] += first_out[i];
        }
        let head = arcs.into_iter().map(|(_, v)| v).collect();
        UndirectedGraph { first_out, head }
    }

    pub fn node_count(&self) -> usize {
        self.first_out.len().saturating_sub(1)
    }

    /// Number of directed arcs, twice the edge count.
    pub fn arc_count(&self) -> usize {
        self.head.len()
    }

    pub fn edge_count(&self) -> usize {
        self.head.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.head[self.first_out[v]..self.first_out[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.first_out[v + 1] - self.first_out[v]
    }

    /// Index range of the arcs leaving `v`.
    pub fn arc_range(&self, v: usize) -> std::ops::Range<usize> {
        self.first_out[v]..self.first_out[v + 1]
    }

    pub fn arc_head(&self, arc: usize) -> usize {
        self.head[arc]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// All arcs `(u, v)`, each undirected edge appearing twice.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Undirected edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs().filter(|&(u, v)| u < v)
    }

    /// Checks symmetry, simplicity and sortedness.
    pub fn is_valid(&self) -> bool {
        let n = self.node_count();
        (0..n).all(|u| {
            let adj = self.neighbors(u);
            adj.windows(2).all(|w| w[0] < w[1]) && adj.iter().all(|&v| v < n && v != u && self.has_edge(v, u))
        })
    }

    /// Subgraph induced by `nodes`; local node `i` corresponds to `nodes[i]`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> UndirectedGraph {
        let mut local = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let mut first_out = Vec::with_capacity(nodes.len() + 1);
        first_out.push(0);
        let mut head = Vec::new();
        for &v in nodes {
            let start = head.len();
            head.extend(self.neighbors(v).iter().map(|&w| local[w]).filter(|&w| w != usize::MAX));
            head[start..].sort_unstable();
            first_out.push(head.len());
        }
        UndirectedGraph { first_out, head }
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            let mut members = Vec::new();
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() <= 1 || self.connected_components().len() == 1
    }

    /// Whether the nodes selected by `member` induce a connected subgraph.
    /// The empty selection counts as connected.
    pub fn is_connected_subset(&self, member: impl Fn(usize) -> bool) -> bool {
        let n = self.node_count();
        let Some(root) = (0..n).find(|&v| member(v)) else {
            return true;
        };
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w] && member(w) {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == (0..n).filter(|&v| member(v)).count()
    }
}

/// Small deterministic graph families used by tests, examples and benchmarks.
pub mod generators {
    use super::UndirectedGraph;

    pub fn path(n: usize) -> UndirectedGraph {
        build(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> UndirectedGraph {
        assert!(n >= 3, "a cycle needs at least three nodes");
        build(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> UndirectedGraph {
        build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> UndirectedGraph {
        build(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// `width` x `height` grid; node `(x, y)` has id `y * width + x`.
    pub fn grid(width: usize, height: usize) -> UndirectedGraph {
        let id = |x: usize, y: usize| y * width + x;
        let mut edges = Vec::new();
        for y in 0..height {
            for x in 0..width {
                if x + 1 < width {
                    edges.push((id(x, y), id(x + 1, y)));
                }
                if y + 1 < height {
                    edges.push((id(x, y), id(x, y + 1)));
                }
            }
        }
        build(width * height, edges)
    }

    fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> UndirectedGraph {
        UndirectedGraph::from_edges(n, edges).expect("generator produced an invalid edge")
    }
}

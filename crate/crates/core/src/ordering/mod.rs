//! Nested-dissection contraction orders.
//!
//! A graph is ordered component by component. Trees use an optimal ranking
//! and cliques any order. Otherwise the largest biconnected component `B` is
//! ordered last, after the rest of the graph. Inside `B`, degree-two chains
//! are removed to the front of the order, and what remains is split by a
//! separator `Q`: the order of one side, then the other, then `Q`.

pub mod biconnected;
pub mod chains;
pub mod ranking;

pub use biconnected::{biconnected_components, largest_biconnected_component, Block};
pub use chains::{eliminate_degree2_chains, ChainReduction};
pub use ranking::{optimal_ranking, tree_order};

use crate::bisection::{MultiRunConfig, ParetoSet};
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::separator::{separator_pareto, Separator};

/// Which rule placed a node in the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    TreeBase,
    CliqueBase,
    Degree2Chain,
    Separator,
    /// An isolated node.
    LeafComponent,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::TreeBase => "tree-base",
            Provenance::CliqueBase => "clique-base",
            Provenance::Degree2Chain => "degree2-chain",
            Provenance::Separator => "separator",
            Provenance::LeafComponent => "leaf-component",
        }
    }
}

/// Elimination order: `permutation[i]` is contracted `i`-th.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContractionOrder {
    pub permutation: Vec<usize>,
    pub provenance: Vec<Provenance>,
}

impl ContractionOrder {
    pub fn len(&self) -> usize {
        self.permutation.len()
    }

    pub fn is_empty(&self) -> bool {
        self.permutation.is_empty()
    }

    /// Position of every node.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.permutation.len()];
        for (i, &v) in self.permutation.iter().enumerate() {
            rank[v] = i;
        }
        rank
    }

    fn emit(&mut self, nodes: impl IntoIterator<Item = usize>, provenance: Provenance) {
        for v in nodes {
            self.permutation.push(v);
            self.provenance.push(provenance);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderConfig {
    /// Terminal pairs per separator computation.
    pub pairs: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for OrderConfig {
    fn default() -> Self {
        OrderConfig { pairs: 20, seed: 0, threads: 1 }
    }
}

/// Imbalance ceiling for separators considered by [`select_separator`].
pub const MAX_SEPARATOR_IMBALANCE: f64 = 0.6;

/// The separator of minimum expansion among those with imbalance at most
/// 60%; ties go to the smaller separator, then the smaller imbalance. Without
/// such a member, the most balanced one.
pub fn select_separator(set: &ParetoSet<Separator>) -> Result<&Separator> {
    let balanced = set.iter().filter(|s| s.achieved_epsilon <= MAX_SEPARATOR_IMBALANCE).min_by(|a, b| {
        a.expansion()
            .total_cmp(&b.expansion())
            .then(a.size().cmp(&b.size()))
            .then(a.achieved_epsilon.total_cmp(&b.achieved_epsilon))
    });
    balanced
        .or_else(|| set.iter().min_by(|a, b| a.achieved_epsilon.total_cmp(&b.achieved_epsilon)))
        .ok_or_else(|| Error::Domain("no separator to select from".into()))
}

pub fn is_clique(graph: &UndirectedGraph) -> bool {
    let n = graph.node_count();
    graph.edge_count() == n * n.saturating_sub(1) / 2
}

fn is_forest(graph: &UndirectedGraph) -> bool {
    graph.edge_count() + graph.connected_components().len() == graph.node_count()
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed for the separator run on the subgraph spanned by `nodes`.
fn derive_seed(parent: u64, nodes: &[usize]) -> u64 {
    nodes.iter().fold(splitmix(parent), |h, &v| splitmix(h ^ v as u64))
}

/// A subgraph with its nodes in the input graph, ascending.
struct Part {
    graph: UndirectedGraph,
    nodes: Vec<usize>,
    seed: u64,
}

impl Part {
    fn sub(&self, local: &[usize], graph: UndirectedGraph) -> Part {
        Part { graph, nodes: local.iter().map(|&v| self.nodes[v]).collect(), seed: self.seed }
    }

    fn induced(&self, local: &[usize]) -> Part {
        self.sub(local, self.graph.induced_subgraph(local))
    }
}

enum Task {
    Order(Part),
    Emit(Vec<usize>, Provenance),
}

/// Nested-dissection order of `graph`; deterministic for a fixed config.
pub fn compute_order(graph: &UndirectedGraph, config: &OrderConfig) -> Result<ContractionOrder> {
    if config.pairs < 1 || config.threads < 1 {
        return Err(Error::Domain("pairs and threads must be at least one".into()));
    }
    let mut order = ContractionOrder::default();
    let root = Part { graph: graph.clone(), nodes: (0..graph.node_count()).collect(), seed: config.seed };
    let mut stack = vec![Task::Order(root)];
    while let Some(task) = stack.pop() {
        match task {
            Task::Emit(nodes, provenance) => order.emit(nodes, provenance),
            Task::Order(part) => expand_part(part, config, &mut stack)?,
        }
    }
    debug_assert_eq!(order.len(), graph.node_count());
    Ok(order)
}

/// Replaces `part` by the tasks that order it. Tasks are pushed in reverse.
fn expand_part(part: Part, config: &OrderConfig, stack: &mut Vec<Task>) -> Result<()> {
    let g = &part.graph;
    let n = g.node_count();
    if n == 0 {
        return Ok(());
    }
    let components = g.connected_components();
    if components.len() > 1 {
        for comp in components.iter().rev() {
            if comp.len() == 1 {
                stack.push(Task::Emit(vec![part.nodes[comp[0]]], Provenance::LeafComponent));
            } else {
                stack.push(Task::Order(part.induced(comp)));
            }
        }
        return Ok(());
    }
    if n == 1 {
        stack.push(Task::Emit(part.nodes, Provenance::LeafComponent));
        return Ok(());
    }
    if is_forest(g) {
        let local = tree_order(g)?;
        stack.push(Task::Emit(local.iter().map(|&v| part.nodes[v]).collect(), Provenance::TreeBase));
        return Ok(());
    }
    if is_clique(g) {
        stack.push(Task::Emit(part.nodes, Provenance::CliqueBase));
        return Ok(());
    }
    let block = largest_biconnected_component(g).expect("a connected non-tree has edges");
    if block.nodes.len() < n {
        // Everything outside B first, B last.
        let mut inside = vec![false; n];
        for &v in &block.nodes {
            inside[v] = true;
        }
        stack.push(Task::Order(part.induced(&block.nodes)));
        let rest: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
        let rest_part = part.induced(&rest);
        stack.push(Task::Order(rest_part));
        return Ok(());
    }
    let reduction = eliminate_degree2_chains(g);
    if !reduction.removed.is_empty() {
        let forest = g.induced_subgraph(&reduction.removed);
        let prefix = tree_order(&forest)?.into_iter().map(|i| part.nodes[reduction.removed[i]]).collect();
        stack.push(Task::Order(part.sub(&reduction.kept, reduction.reduced)));
        stack.push(Task::Emit(prefix, Provenance::Degree2Chain));
        return Ok(());
    }
    dissect(part, config, stack)
}

fn dissect(part: Part, config: &OrderConfig, stack: &mut Vec<Task>) -> Result<()> {
    let seed = derive_seed(part.seed, &part.nodes);
    let part = Part { seed, ..part };
    let g = &part.graph;
    let run = MultiRunConfig { pairs: config.pairs, epsilon: 0.0, seed, threads: config.threads };
    let set = separator_pareto(g, &run)?;
    let chosen = select_separator(&set)?;
    let labels = chosen.assignment();
    let side = |l: u8| (0..g.node_count()).filter(|&v| labels[v] == l).collect::<Vec<_>>();
    let (first, second, q) = (side(0), side(1), side(2));
    if q.is_empty() || first.is_empty() || second.is_empty() {
        // Degenerate split: remove one node of maximum degree instead.
        let hub = (0..g.node_count()).max_by(|&a, &b| g.degree(a).cmp(&g.degree(b)).then(b.cmp(&a))).unwrap();
        let rest: Vec<usize> = (0..g.node_count()).filter(|&v| v != hub).collect();
        stack.push(Task::Emit(vec![part.nodes[hub]], Provenance::Separator));
        stack.push(Task::Order(part.induced(&rest)));
        return Ok(());
    }
    stack.push(Task::Emit(q.iter().map(|&v| part.nodes[v]).collect(), Provenance::Separator));
    stack.push(Task::Order(part.induced(&second)));
    stack.push(Task::Order(part.induced(&first)));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::metrics;

    fn is_permutation(order: &ContractionOrder, n: usize) -> bool {
        let mut seen = vec![false; n];
        order.len() == n && order.permutation.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }

    #[test]
    fn clique_is_base_case() {
        let order = compute_order(&generators::complete(5), &OrderConfig::default()).unwrap();
        assert_eq!(order.permutation, vec![0, 1, 2, 3, 4]);
        assert!(order.provenance.iter().all(|&p| p == Provenance::CliqueBase));
    }

    #[test]
    fn path_of_seven_has_height_three() {
        let g = generators::path(7);
        let order = compute_order(&g, &OrderConfig::default()).unwrap();
        assert!(order.provenance.iter().all(|&p| p == Provenance::TreeBase));
        assert_eq!(metrics::elimination_tree_height(&g, &order.permutation).unwrap(), 3);
    }

    #[test]
    fn grid_order_is_narrow() {
        let g = generators::grid(5, 5);
        let order = compute_order(&g, &OrderConfig { pairs: 10, seed: 3, threads: 1 }).unwrap();
        assert!(is_permutation(&order, 25));
        let result = metrics::elimination_game(&g, &order.permutation).unwrap();
        assert!(result.treewidth_bound <= 6, "bound {}", result.treewidth_bound);
        assert!(order.provenance.contains(&Provenance::Separator));
    }

    #[test]
    fn disconnected_and_empty() {
        let g = UndirectedGraph::from_edges(6, [(1, 2), (2, 3), (3, 1), (4, 5)]).unwrap();
        let order = compute_order(&g, &OrderConfig::default()).unwrap();
        assert!(is_permutation(&order, 6));
        assert_eq!(order.permutation[0], 0);
        assert_eq!(order.provenance[0], Provenance::LeafComponent);
        assert!(compute_order(&UndirectedGraph::default(), &OrderConfig::default()).unwrap().is_empty());
    }

    #[test]
    fn block_goes_last() {
        // A 4-cycle with a pendant path 3-4-5.
        let g = UndirectedGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)]).unwrap();
        let order = compute_order(&g, &OrderConfig::default()).unwrap();
        assert!(is_permutation(&order, 6));
        assert_eq!(&order.permutation[..2], &[5, 4]);
    }

    #[test]
    fn deterministic_for_seed() {
        let g = crate::testutil::random_graph(11, 40, 0.1);
        let config = OrderConfig { pairs: 5, seed: 9, threads: 1 };
        let a = compute_order(&g, &config).unwrap();
        let b = compute_order(&g, &OrderConfig { threads: 2, ..config }).unwrap();
        assert_eq!(a, b);
        assert!(is_permutation(&a, g.node_count()));
    }

    fn sep(size: usize, a: usize, b: usize) -> Separator {
        crate::separator::test_separator(size, a, b)
    }

    #[test]
    fn selection_rule() {
        let mut set = ParetoSet::new();
        set.insert(sep(1, 1, 9));
        set.insert(sep(2, 5, 5));
        assert_eq!(select_separator(&set).unwrap().size(), 2);
        let mut single = ParetoSet::new();
        single.insert(sep(3, 1, 9));
        assert_eq!(select_separator(&single).unwrap().size(), 3);
        assert!(select_separator(&ParetoSet::new()).is_err());
        // Equal expansion 0.5: the smaller separator wins.
        let mut tie = ParetoSet::new();
        tie.insert(sep(2, 4, 6));
        tie.insert(sep(3, 6, 6));
        assert_eq!(select_separator(&tie).unwrap().size(), 2);
    }
}

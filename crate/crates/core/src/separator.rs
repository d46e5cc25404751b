//! Node separators through the expanded digraph.
//!
//! Every node `x` is split into an in-node `x_i` and an out-node `x_o` joined
//! by the internal arc `x_i -> x_o`; every edge `{x, y}` becomes the external
//! arcs `x_o -> y_i` and `y_o -> x_i`. An arc cut between `s_o` and `t_i`
//! translates into a node separator: internal cut arcs name their node, and
//! external cut arcs contribute the endpoint on the larger side.

use crate::bisection::{
    achieved_epsilon, check_epsilon, drive, pareto_filter, sample_pairs, Cutter, Emission, MultiRunConfig, ParetoPoint,
    ParetoSet, SideStamps, StampTables, Step, Translate,
};
use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, Side};
use crate::graph::UndirectedGraph;

pub fn in_node(x: usize) -> usize {
    2 * x
}

pub fn out_node(x: usize) -> usize {
    2 * x + 1
}

pub fn original(v: usize) -> usize {
    v / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    Internal,
    External,
}

const IN_SHIFT: u32 = 32;
const OUT_MASK: u64 = (1 << IN_SHIFT) - 1;

/// The node-split digraph of an undirected graph. Out-nodes weigh one and
/// in-nodes `2^32`, so the low and high halves of a side weight count out-
/// and in-nodes.
#[derive(Debug, Clone)]
pub struct ExpandedDigraph {
    original_nodes: usize,
    original_arcs: usize,
    network: FlowNetwork,
}

impl ExpandedDigraph {
    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    pub fn original_node_count(&self) -> usize {
        self.original_nodes
    }

    pub fn node_count(&self) -> usize {
        2 * self.original_nodes
    }

    /// Unit arcs, not counting zero-capacity twins: `n + m`.
    pub fn arc_count(&self) -> usize {
        self.original_nodes + self.original_arcs
    }

    pub fn kind(&self, arc: usize) -> ArcKind {
        if original(self.network.tail(arc)) == original(self.network.head(arc)) {
            ArcKind::Internal
        } else {
            ArcKind::External
        }
    }
}

pub fn expand(graph: &UndirectedGraph) -> ExpandedDigraph {
    let n = graph.node_count();
    let mut arcs = Vec::with_capacity(n + graph.arc_count());
    arcs.extend((0..n).map(|x| (in_node(x), out_node(x))));
    arcs.extend(graph.arcs().map(|(x, y)| (out_node(x), in_node(y))));
    let weights = (0..2 * n).map(|v| if v % 2 == 1 { 1 } else { 1 << IN_SHIFT }).collect();
    ExpandedDigraph {
        original_nodes: n,
        original_arcs: graph.arc_count(),
        network: FlowNetwork::from_directed_arcs(2 * n, &arcs).with_weights(weights),
    }
}

/// A node separator `(V_1, V_2, Q)`. `V_1` is the side of the sources.
#[derive(Debug, Clone)]
pub struct Separator {
    /// `Q`, ascending.
    pub nodes: Vec<usize>,
    pub source_side_size: usize,
    pub target_side_size: usize,
    pub achieved_epsilon: f64,
    pub instance: usize,
    emitted: Side,
    clock: u32,
    sides: Option<SideStamps>,
}

impl Separator {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn expansion(&self) -> f64 {
        ParetoPoint::expansion(self)
    }

    /// Per original node: 0 on the source side, 1 on the target side, 2 in `Q`.
    pub fn assignment(&self) -> Vec<u8> {
        let sides = self.sides.as_ref().expect("separator sides are attached when the instance ends");
        let mut labels: Vec<u8> = (0..sides.len() / 2)
            .map(|x| match self.emitted {
                Side::Source if sides.on_source_side(out_node(x)) => 0,
                Side::Target if sides.on_source_side(in_node(x)) => 0,
                _ => 1,
            })
            .collect();
        for &q in &self.nodes {
            labels[q] = 2;
        }
        labels
    }

    /// Whether removing `Q` from `graph` leaves more than two components.
    pub fn is_fragmented(&self, graph: &UndirectedGraph) -> bool {
        let labels = self.assignment();
        let keep: Vec<usize> = (0..graph.node_count()).filter(|&x| labels[x] != 2).collect();
        graph.induced_subgraph(&keep).connected_components().len() > 2
    }
}

impl ParetoPoint for Separator {
    const SIZE_COLUMN: &'static str = "separator_size";

    fn size(&self) -> usize {
        self.nodes.len()
    }

    fn achieved_epsilon(&self) -> f64 {
        self.achieved_epsilon
    }

    fn side_sizes(&self) -> (usize, usize) {
        let (a, b) = (self.source_side_size, self.target_side_size);
        (a.min(b), a.max(b))
    }
}

/// Imbalance of a separator, measured over the nodes outside `Q`.
fn separator_epsilon(a: usize, b: usize) -> f64 {
    if a + b == 0 {
        1.0
    } else {
        achieved_epsilon(a.min(b), a.max(b))
    }
}

/// Result of translating an arc cut: `Q` and the remaining side sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedSeparator {
    pub nodes: Vec<usize>,
    pub source_side_size: usize,
    pub target_side_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Class {
    Source,
    Target,
    Separator,
}

/// Classifies original node `x` from the closure of the emitting side: a node
/// belongs to that side if the copy facing away from the cut is inside.
fn classify(side: Side, in_closure: &impl Fn(usize) -> bool, x: usize) -> Class {
    match side {
        Side::Source if in_closure(out_node(x)) => Class::Source,
        Side::Source if in_closure(in_node(x)) => Class::Separator,
        Side::Source => Class::Target,
        Side::Target if in_closure(in_node(x)) => Class::Target,
        Side::Target if in_closure(out_node(x)) => Class::Separator,
        Side::Target => Class::Source,
    }
}

/// Translates the side cut `cut` of the emitting `side`. `in_closure` is the
/// membership of that side's closure over expanded nodes and `closure_count`
/// the number of original nodes the closure claims (out-nodes on the source
/// side, in-nodes on the target side). Endpoints that are original terminals
/// are avoided when the other endpoint is not one.
fn derive(
    expanded: &ExpandedDigraph,
    cut: &[usize],
    side: Side,
    in_closure: impl Fn(usize) -> bool,
    closure_count: usize,
    is_terminal: impl Fn(usize) -> bool,
) -> Result<DerivedSeparator> {
    let net = expanded.network();
    let n = expanded.original_node_count();
    let mut internal = Vec::new();
    let mut external = Vec::new();
    for &arc in cut {
        let (u, v) = (net.tail(arc), net.head(arc));
        let crosses = match side {
            Side::Source => in_closure(u) && !in_closure(v),
            Side::Target => !in_closure(u) && in_closure(v),
        };
        if net.capacity(arc) <= 0 || !crosses {
            return Err(Error::InvalidCut(format!("arc ({u}, {v}) does not cross the cut")));
        }
        match expanded.kind(arc) {
            ArcKind::Internal => internal.push(original(u)),
            ArcKind::External => external.push((original(u), original(v))),
        }
    }
    let rest = n - closure_count - internal.len();
    let (a, b) = match side {
        Side::Source => (closure_count, rest),
        Side::Target => (rest, closure_count),
    };
    let mut nodes = internal;
    let (mut from_a, mut from_b) = (Vec::new(), Vec::new());
    for (u, v) in external {
        // The terminal of the emitting side may sit across its own cut arc;
        // such an edge stays within one side.
        if classify(side, &in_closure, u) != Class::Source || classify(side, &in_closure, v) != Class::Target {
            continue;
        }
        let take_u = match (is_terminal(u), is_terminal(v)) {
            (true, false) => false,
            (false, true) => true,
            _ => a >= b,
        };
        if take_u {
            from_a.push(u);
        } else {
            from_b.push(v);
        }
    }
    for picks in [&mut from_a, &mut from_b] {
        picks.sort_unstable();
        picks.dedup();
    }
    let (source_side_size, target_side_size) = (a - from_a.len(), b - from_b.len());
    nodes.extend(from_a);
    nodes.extend(from_b);
    nodes.sort_unstable();
    Ok(DerivedSeparator { nodes, source_side_size, target_side_size })
}

/// Derives the separator of the side cut `cut` emitted by `side`, given the
/// membership of that side's closure over expanded nodes. `terminals` lists
/// original nodes to keep out of `Q` where possible.
pub fn derive_separator(
    expanded: &ExpandedDigraph,
    cut: &[usize],
    side: Side,
    closure: &[bool],
    terminals: &[usize],
) -> Result<DerivedSeparator> {
    if closure.len() != expanded.node_count() {
        return Err(Error::InvalidCut("closure does not cover the expanded digraph".into()));
    }
    let facing = |x: usize| match side {
        Side::Source => out_node(x),
        Side::Target => in_node(x),
    };
    let count = (0..expanded.original_node_count()).filter(|&x| closure[facing(x)]).count();
    derive(expanded, cut, side, |v| closure[v], count, |x| terminals.contains(&x))
}

struct Separators<'g> {
    expanded: &'g ExpandedDigraph,
    /// Sorted original terminals per instance.
    terminals: Vec<Vec<usize>>,
}

impl Translate for Separators<'_> {
    type Point = Separator;

    fn translate(&self, cutter: &Cutter, emission: &Emission, instance: usize) -> Separator {
        let state = cutter.state();
        let side = emission.side;
        let weight = state.side_weight(side);
        let closure_count = match side {
            Side::Source => weight & OUT_MASK,
            Side::Target => weight >> IN_SHIFT,
        } as usize;
        let terminals = &self.terminals[instance];
        let derived = derive(
            self.expanded,
            &emission.arcs,
            side,
            |v| state.is_reachable(side, v),
            closure_count,
            |x| terminals.binary_search(&x).is_ok(),
        )
        .expect("emitted cuts leave their closed side");
        Separator {
            achieved_epsilon: separator_epsilon(derived.source_side_size, derived.target_side_size),
            nodes: derived.nodes,
            source_side_size: derived.source_side_size,
            target_side_size: derived.target_side_size,
            instance,
            emitted: emission.side,
            clock: emission.clock,
            sides: None,
        }
    }

    fn attach(&self, sep: &mut Separator, stamps: &StampTables) {
        sep.sides = Some(stamps.sides(sep.emitted, sep.clock));
    }
}

fn sorted_terminals(sources: &[usize], targets: &[usize]) -> Vec<usize> {
    let mut all: Vec<usize> = sources.iter().chain(targets).copied().collect();
    all.sort_unstable();
    all.dedup();
    all
}

fn check_terminals(n: usize, nodes: &[usize]) -> Result<()> {
    match nodes.iter().find(|&&x| x >= n) {
        Some(&node) => Err(Error::NodeOutOfRange { node, node_count: n }),
        None => Ok(()),
    }
}

/// Separators of one terminal-set pair, in emission order, until one meets
/// `epsilon` or piercing runs out of candidates.
pub fn enumerate_separators(
    graph: &UndirectedGraph,
    sources: &[usize],
    targets: &[usize],
    epsilon: f64,
) -> Result<Vec<Separator>> {
    check_epsilon(epsilon)?;
    let n = graph.node_count();
    check_terminals(n, sources)?;
    check_terminals(n, targets)?;
    if let Some(&x) = sources.iter().find(|x| targets.contains(x)) {
        return Err(Error::OverlappingTerminals(x));
    }
    let expanded = expand(graph);
    let s: Vec<usize> = sources.iter().map(|&x| out_node(x)).collect();
    let t: Vec<usize> = targets.iter().map(|&x| in_node(x)).collect();
    let translator = Separators { expanded: &expanded, terminals: vec![sorted_terminals(sources, targets)] };
    let mut cutter = Cutter::new(expanded.network(), &s, &t)?;
    let mut separators = Vec::new();
    loop {
        match cutter.step()? {
            Step::Augmented => {}
            Step::Finished => break,
            Step::Emitted(e) => {
                let sep = translator.translate(&cutter, &e, 0);
                let done = sep.meets(epsilon);
                separators.push(sep);
                if done {
                    break;
                }
            }
        }
    }
    let stamps = StampTables::of_cutter(&cutter);
    for sep in &mut separators {
        translator.attach(sep, &stamps);
    }
    Ok(separators)
}

/// Pareto set of a single terminal-set pair.
pub fn pareto_separators(
    graph: &UndirectedGraph,
    sources: &[usize],
    targets: &[usize],
    epsilon: f64,
) -> Result<ParetoSet<Separator>> {
    Ok(pareto_filter(enumerate_separators(graph, sources, targets, epsilon)?))
}

/// Runs `q` random pairs `(s_o, t_i)` on the expanded digraph simultaneously
/// and filters all derived separators.
pub fn separator_pareto(graph: &UndirectedGraph, config: &MultiRunConfig) -> Result<ParetoSet<Separator>> {
    config.validate()?;
    let pairs = sample_pairs(graph.node_count(), config.pairs, config.seed)?;
    let expanded = expand(graph);
    let terminals: Vec<_> = pairs.iter().map(|&(s, t)| (vec![out_node(s)], vec![in_node(t)])).collect();
    let translator = Separators {
        expanded: &expanded,
        terminals: pairs.iter().map(|&(s, t)| sorted_terminals(&[s], &[t])).collect(),
    };
    drive(expanded.network(), &terminals, config, &translator)
}

#[cfg(test)]
pub(crate) fn test_separator(size: usize, source_side_size: usize, target_side_size: usize) -> Separator {
    Separator {
        nodes: (0..size).collect(),
        source_side_size,
        target_side_size,
        achieved_epsilon: separator_epsilon(source_side_size, target_side_size),
        instance: 0,
        emitted: Side::Source,
        clock: 0,
        sides: None,
    }
}

//! Pareto st-bisection: a sequence of increasingly balanced st-min-cuts per
//! terminal pair, dominance filtering, and the multi-pair driver.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, FlowState, Side};
use crate::graph::UndirectedGraph;
use crate::piercing::{pick_piercing_arc, piercing_node, precompute_distances, DistanceTables};

/// Achieved imbalance `max(0, 2 * large / n - 1)` of a bipartition.
pub fn achieved_epsilon(small: usize, large: usize) -> f64 {
    let n = small + large;
    if n == 0 {
        return 0.0;
    }
    (2.0 * large.max(small) as f64 / n as f64 - 1.0).max(0.0)
}

/// Largest side size allowed by the bound `ceil((1 + epsilon) * n / 2)`.
pub fn max_side_bound(n: usize, epsilon: f64) -> usize {
    // The tolerance keeps exact products such as 1.05 * 200 / 2 from rounding up.
    ((1.0 + epsilon) * n as f64 / 2.0 - 1e-9).ceil().max(0.0) as usize
}

pub fn meets_bound(large: usize, n: usize, epsilon: f64) -> bool {
    large <= max_side_bound(n, epsilon)
}

/// Probability that at least one of `q` uniformly drawn pairs straddles a
/// bisection with side fractions `alpha` and `1 - alpha`.
pub fn success_probability(alpha: f64, q: u32) -> Result<f64> {
    if !(alpha > 0.5 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0.5, 1), got {alpha}")));
    }
    let miss = 1.0 - 2.0 * alpha * (1.0 - alpha);
    Ok(1.0 - miss.powi(q as i32))
}

/// A point of a size/imbalance trade-off.
pub trait ParetoPoint {
    /// CSV column header for [`ParetoPoint::size`].
    const SIZE_COLUMN: &'static str;

    fn size(&self) -> usize;

    fn achieved_epsilon(&self) -> f64;

    /// `(small, large)` side sizes.
    fn side_sizes(&self) -> (usize, usize);

    /// Size divided by the smaller side; infinite if that side is empty.
    fn expansion(&self) -> f64 {
        let (small, _) = self.side_sizes();
        if small == 0 {
            f64::INFINITY
        } else {
            self.size() as f64 / small as f64
        }
    }

    fn meets(&self, epsilon: f64) -> bool {
        let (small, large) = self.side_sizes();
        meets_bound(large, small + large, epsilon)
    }
}

fn dominates<P: ParetoPoint>(a: &P, b: &P) -> bool {
    a.size() <= b.size() && a.achieved_epsilon() <= b.achieved_epsilon()
}

/// Mutually non-dominated points sorted by strictly increasing size and
/// strictly decreasing imbalance.
#[derive(Debug, Clone)]
pub struct ParetoSet<P> {
    points: Vec<P>,
}

impl<P> Default for ParetoSet<P> {
    fn default() -> Self {
        ParetoSet { points: Vec::new() }
    }
}

impl<P: ParetoPoint> ParetoSet<P> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `p` unless an existing point is at least as good in both
    /// coordinates; drops the points `p` dominates. Returns whether `p` was kept.
    pub fn insert(&mut self, p: P) -> bool {
        if self.points.iter().any(|q| dominates(q, &p)) {
            return false;
        }
        self.points.retain(|q| !dominates(&p, q));
        let pos = self.points.partition_point(|q| q.size() < p.size());
        self.points.insert(pos, p);
        true
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn into_vec(self) -> Vec<P> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, P> {
        self.points.iter()
    }

    /// The smallest point whose large side satisfies the `epsilon` bound.
    pub fn best_within(&self, epsilon: f64) -> Option<&P> {
        self.points.iter().find(|p| p.meets(epsilon))
    }

    pub fn is_well_formed(&self) -> bool {
        self.points.windows(2).all(|w| w[0].size() < w[1].size() && w[0].achieved_epsilon() > w[1].achieved_epsilon())
    }
}

impl<'a, P> IntoIterator for &'a ParetoSet<P> {
    type Item = &'a P;
    type IntoIter = std::slice::Iter<'a, P>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Dominance filter; among equal points the first one is kept.
pub fn pareto_filter<P: ParetoPoint>(points: impl IntoIterator<Item = P>) -> ParetoSet<P> {
    let mut set = ParetoSet::new();
    for p in points {
        set.insert(p);
    }
    set
}

/// Which nodes belonged to the source side of an emitted cut, stored as the
/// terminal stamps of the emitting side plus the emission clock.
#[derive(Debug, Clone)]
pub(crate) struct SideStamps {
    stamps: Arc<[u32]>,
    threshold: u32,
    emitted: Side,
}

impl SideStamps {
    /// Whether node `v` of the flow network lies on the source side.
    pub(crate) fn on_source_side(&self, v: usize) -> bool {
        let in_emitting_set = self.stamps[v] <= self.threshold;
        match self.emitted {
            Side::Source => in_emitting_set,
            Side::Target => !in_emitting_set,
        }
    }

    /// Number of flow-network nodes covered.
    pub(crate) fn len(&self) -> usize {
        self.stamps.len()
    }
}

/// Stamp tables of a finished instance, shared by all its emitted points.
#[derive(Debug, Clone)]
pub(crate) struct StampTables {
    source: Arc<[u32]>,
    target: Arc<[u32]>,
}

impl StampTables {
    pub(crate) fn of_cutter(cutter: &Cutter) -> Self {
        Self::of(&cutter.state)
    }

    fn of(state: &FlowState) -> Self {
        StampTables {
            source: Arc::from(state.terminal_stamps(Side::Source)),
            target: Arc::from(state.terminal_stamps(Side::Target)),
        }
    }

    pub(crate) fn sides(&self, emitted: Side, threshold: u32) -> SideStamps {
        let stamps = match emitted {
            Side::Source => Arc::clone(&self.source),
            Side::Target => Arc::clone(&self.target),
        };
        SideStamps { stamps, threshold, emitted }
    }
}

/// A balanced edge cut emitted by one instance.
#[derive(Debug, Clone)]
pub struct Cut {
    /// Cut edges oriented from the source side to the target side.
    pub edges: Vec<(usize, usize)>,
    pub small_side: usize,
    pub large_side: usize,
    pub achieved_epsilon: f64,
    /// Index of the terminal pair that produced the cut.
    pub instance: usize,
    emitted: Side,
    clock: u32,
    sides: Option<SideStamps>,
}

impl Cut {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn expansion(&self) -> f64 {
        ParetoPoint::expansion(self)
    }

    /// `true` for nodes on the side containing the instance's sources.
    pub fn source_side(&self) -> Vec<bool> {
        let sides = self.sides.as_ref().expect("cut sides are attached when the instance ends");
        (0..sides.stamps.len()).map(|v| sides.on_source_side(v)).collect()
    }
}

impl ParetoPoint for Cut {
    const SIZE_COLUMN: &'static str = "cut_size";

    fn size(&self) -> usize {
        self.edges.len()
    }

    fn achieved_epsilon(&self) -> f64 {
        self.achieved_epsilon
    }

    fn side_sizes(&self) -> (usize, usize) {
        (self.small_side, self.large_side)
    }
}

/// One iteration of the cutting loop.
#[derive(Debug)]
pub enum Step {
    Augmented,
    Emitted(Emission),
    Finished,
}

/// A side cut just output by the loop; the side has been promoted
/// (`S := S_R`) and piercing is deferred to the next step.
#[derive(Debug, Clone)]
pub struct Emission {
    pub side: Side,
    /// Cut arcs of the flow network.
    pub arcs: Vec<usize>,
    /// Emission clock; identifies the side set through terminal stamps.
    pub clock: u32,
}

/// The st-bisection loop as a step machine over one terminal pair.
#[derive(Debug, Clone)]
pub struct Cutter<'a> {
    state: FlowState<'a>,
    tables: DistanceTables,
    pending: Option<Side>,
    cut: Vec<usize>,
    finished: bool,
}

impl<'a> Cutter<'a> {
    pub fn new(net: &'a FlowNetwork, sources: &[usize], targets: &[usize]) -> Result<Self> {
        if net.node_count() == 0 {
            return Err(Error::EmptyGraph);
        }
        let state = FlowState::new(net, sources, targets)?;
        let tables = precompute_distances(net, sources, targets);
        Ok(Cutter { state, tables, pending: None, cut: Vec::new(), finished: false })
    }

    pub fn state(&self) -> &FlowState<'a> {
        &self.state
    }

    pub fn flow_value(&self) -> usize {
        self.state.flow_value()
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Pierces after the previous emission if needed, then either augments
    /// once or emits the cut of the smaller reachability side.
    pub fn step(&mut self) -> Result<Step> {
        if self.finished {
            return Ok(Step::Finished);
        }
        if let Some(side) = self.pending.take() {
            let state = &self.state;
            let opposite = side.opposite();
            let picked = pick_piercing_arc(
                state.network(),
                &self.cut,
                side,
                |v| state.is_reachable(opposite, v),
                |v| state.is_terminal(opposite, v),
                &self.tables,
            );
            match picked {
                Ok(arc) => {
                    let p = piercing_node(state.network(), arc, side);
                    self.state.pierce(side, p)?;
                }
                Err(Error::EmptyCut) => {
                    self.finished = true;
                    return Ok(Step::Finished);
                }
                Err(e) => return Err(e),
            }
        }
        if self.state.has_augmenting_path() {
            self.state.augment()?;
            return Ok(Step::Augmented);
        }
        let side = if self.state.reachable_len(Side::Source) <= self.state.reachable_len(Side::Target) {
            Side::Source
        } else {
            Side::Target
        };
        self.cut.clear();
        self.cut.extend_from_slice(self.state.extract_side_cut(side)?);
        self.state.promote(side);
        self.pending = Some(side);
        Ok(Step::Emitted(Emission { side, arcs: self.cut.clone(), clock: self.state.clock() }))
    }
}

/// Turns emissions of one network into Pareto points.
pub(crate) trait Translate: Sync {
    type Point: ParetoPoint + Send;

    fn translate(&self, cutter: &Cutter, emission: &Emission, instance: usize) -> Self::Point;

    fn attach(&self, point: &mut Self::Point, stamps: &StampTables);
}

struct EdgeCuts;

impl Translate for EdgeCuts {
    type Point = Cut;

    fn translate(&self, cutter: &Cutter, emission: &Emission, instance: usize) -> Cut {
        let state = cutter.state();
        let net = state.network();
        let n = net.node_count();
        let inside = state.side_weight(emission.side) as usize;
        let (small, large) = (inside.min(n - inside), inside.max(n - inside));
        Cut {
            edges: emission.arcs.iter().map(|&a| (net.tail(a), net.head(a))).collect(),
            small_side: small,
            large_side: large,
            achieved_epsilon: achieved_epsilon(small, large),
            instance,
            emitted: emission.side,
            clock: emission.clock,
            sides: None,
        }
    }

    fn attach(&self, cut: &mut Cut, stamps: &StampTables) {
        cut.sides = Some(stamps.sides(cut.emitted, cut.clock));
    }
}

/// Runs one terminal pair until it emits a cut within `epsilon` or runs out
/// of piercing candidates; returns every emitted cut in order.
pub fn enumerate_cuts(graph: &UndirectedGraph, sources: &[usize], targets: &[usize], epsilon: f64) -> Result<Vec<Cut>> {
    check_epsilon(epsilon)?;
    let net = FlowNetwork::from_undirected(graph);
    let mut cutter = Cutter::new(&net, sources, targets)?;
    let mut cuts = Vec::new();
    loop {
        match cutter.step()? {
            Step::Augmented => {}
            Step::Finished => break,
            Step::Emitted(e) => {
                let cut = EdgeCuts.translate(&cutter, &e, 0);
                let done = cut.meets(epsilon);
                cuts.push(cut);
                if done {
                    break;
                }
            }
        }
    }
    let stamps = StampTables::of_cutter(&cutter);
    for cut in &mut cuts {
        EdgeCuts.attach(cut, &stamps);
    }
    Ok(cuts)
}

/// Pareto set of a single terminal pair.
pub fn pareto_cuts(
    graph: &UndirectedGraph,
    sources: &[usize],
    targets: &[usize],
    epsilon: f64,
) -> Result<ParetoSet<Cut>> {
    Ok(pareto_filter(enumerate_cuts(graph, sources, targets, epsilon)?))
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if (0.0..=1.0).contains(&epsilon) {
        Ok(())
    } else {
        Err(Error::Domain(format!("epsilon must lie in [0, 1], got {epsilon}")))
    }
}

/// Parameters of a multi-pair run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiRunConfig {
    pub pairs: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub threads: usize,
}

impl Default for MultiRunConfig {
    fn default() -> Self {
        MultiRunConfig { pairs: 20, epsilon: 0.03, seed: 0, threads: 1 }
    }
}

impl MultiRunConfig {
    pub(crate) fn validate(&self) -> Result<()> {
        if self.pairs < 1 {
            return Err(Error::Domain("at least one terminal pair is required".into()));
        }
        if self.threads < 1 {
            return Err(Error::Domain("at least one thread is required".into()));
        }
        check_epsilon(self.epsilon)
    }
}

/// `q` pairs of distinct nodes drawn uniformly from `0..n`.
pub fn sample_pairs(n: usize, q: usize, seed: u64) -> Result<Vec<(usize, usize)>> {
    if n < 2 {
        return Err(Error::EmptyGraph);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..q)
        .map(|_| loop {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            if s != t {
                break (s, t);
            }
        })
        .collect())
}

/// Runs `q` random terminal pairs simultaneously and returns the dominance
/// filter over all their cuts.
pub fn run_multi(graph: &UndirectedGraph, config: &MultiRunConfig) -> Result<ParetoSet<Cut>> {
    config.validate()?;
    let pairs = sample_pairs(graph.node_count(), config.pairs, config.seed)?;
    let net = FlowNetwork::from_undirected(graph);
    let terminals: Vec<_> = pairs.into_iter().map(|(s, t)| (vec![s], vec![t])).collect();
    drive(&net, &terminals, config, &EdgeCuts)
}

struct Instance<'a, P> {
    cutter: Cutter<'a>,
    front: ParetoSet<P>,
    live: bool,
    /// Size of a cut within the bound emitted during the current round.
    round_best: Option<usize>,
}

impl<'a, P: ParetoPoint> Instance<'a, P> {
    fn advance<T: Translate<Point = P>>(
        &mut self,
        index: usize,
        best: usize,
        epsilon: f64,
        translator: &T,
    ) -> Result<()> {
        self.round_best = None;
        if self.cutter.flow_value() > best {
            self.live = false;
            return Ok(());
        }
        match self.cutter.step()? {
            Step::Augmented => {}
            Step::Finished => self.live = false,
            Step::Emitted(e) => {
                let point = translator.translate(&self.cutter, &e, index);
                if point.meets(epsilon) {
                    self.round_best = Some(point.size());
                    self.live = false;
                }
                self.front.insert(point);
            }
        }
        Ok(())
    }
}

/// Round-robin driver: each round advances every live instance by one step,
/// then lowers the shared abort threshold. The result does not depend on the
/// thread count.
pub(crate) fn drive<T: Translate>(
    net: &FlowNetwork,
    terminals: &[(Vec<usize>, Vec<usize>)],
    config: &MultiRunConfig,
    translator: &T,
) -> Result<ParetoSet<T::Point>> {
    config.validate()?;
    let mut instances = terminals
        .iter()
        .map(|(s, t)| {
            Ok(Instance { cutter: Cutter::new(net, s, t)?, front: ParetoSet::new(), live: true, round_best: None })
        })
        .collect::<Result<Vec<_>>>()?;
    let epsilon = config.epsilon;
    let mut best = usize::MAX;
    let mut run_rounds = |instances: &mut Vec<Instance<T::Point>>, parallel: bool| -> Result<()> {
        while instances.iter().any(|i| i.live) {
            let step = |(index, inst): (usize, &mut Instance<T::Point>)| {
                if inst.live {
                    inst.advance(index, best, epsilon, translator)
                } else {
                    Ok(())
                }
            };
            if parallel {
                instances.par_iter_mut().enumerate().map(step).collect::<Result<()>>()?;
            } else {
                instances.iter_mut().enumerate().try_for_each(step)?;
            }
            for inst in instances.iter() {
                if let Some(size) = inst.round_best {
                    best = best.min(size);
                }
            }
        }
        Ok(())
    };
    if config.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker threads: {e}")))?;
        pool.install(|| run_rounds(&mut instances, true))?;
    } else {
        run_rounds(&mut instances, false)?;
    }
    let mut result = ParetoSet::new();
    for inst in instances {
        let stamps = StampTables::of_cutter(&inst.cutter);
        for mut point in inst.front.into_vec() {
            translator.attach(&mut point, &stamps);
            result.insert(point);
        }
    }
    Ok(result)
}

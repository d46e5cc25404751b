//! Incremental unit-capacity flow with growable reachability sets.
//!
//! A [`FlowState`] keeps the source set `S`, the target set `T`, and their
//! residual reachability closures `S_R` and `T_R`. The closures grow
//! incrementally from a FIFO frontier, so between two augmentations every
//! node is scanned at most once per side. While scanning, saturated arcs are
//! collected into per-side candidate lists; the side cut is obtained by
//! filtering those lists instead of rescanning the whole side.

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;

/// Sentinel for "no arc".
const NO_ARC: usize = usize::MAX;

/// A directed network of unit-capacity arcs. Every arc has a twin in the
/// opposite direction (`back`). For undirected graphs both twins carry
/// capacity one; for directed inputs the twin is a zero-capacity residual arc.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    first_out: Vec<usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    back: Vec<usize>,
    capacity: Vec<i8>,
    weight: Vec<u64>,
}

impl FlowNetwork {
    /// Two antiparallel unit arcs per undirected edge. Arc ids coincide with
    /// the arc ids of `graph`.
    pub fn from_undirected(graph: &UndirectedGraph) -> Self {
        let n = graph.node_count();
        let mut first_out = Vec::with_capacity(n + 1);
        let mut tail = Vec::with_capacity(graph.arc_count());
        let mut head = Vec::with_capacity(graph.arc_count());
        let mut back = Vec::with_capacity(graph.arc_count());
        first_out.push(0);
        for u in 0..n {
            for &v in graph.neighbors(u) {
                tail.push(u);
                head.push(v);
                let pos = graph.neighbors(v).binary_search(&u).expect("graph is symmetric");
                back.push(graph.arc_range(v).start + pos);
            }
            first_out.push(head.len());
        }
        let capacity = vec![1; head.len()];
        FlowNetwork { first_out, tail, head, back, capacity, weight: vec![1; n] }
    }

    /// Directed unit arcs; each gets a zero-capacity reverse twin.
    pub fn from_directed_arcs(node_count: usize, arcs: &[(usize, usize)]) -> Self {
        // (tail, head, capacity, pair id)
        let mut entries: Vec<(usize, usize, i8, usize)> = Vec::with_capacity(2 * arcs.len());
        for (i, &(u, v)) in arcs.iter().enumerate() {
            entries.push((u, v, 1, i));
            entries.push((v, u, 0, i));
        }
        entries.sort_unstable_by_key(|&(u, v, c, _)| (u, v, std::cmp::Reverse(c)));
        let mut first_out = vec![0; node_count + 1];
        for &(u, ..) in &entries {
            first_out[u + 1] += 1;
        }
        for i in 0..node_count {
            first_out[i + 1] += first_out[i];
        }
        let mut slot = vec![[NO_ARC; 2]; arcs.len()];
        for (id, &(_, _, c, pair)) in entries.iter().enumerate() {
            slot[pair][usize::from(c == 0)] = id;
        }
        let back = entries.iter().map(|&(_, _, c, pair)| slot[pair][usize::from(c != 0)]).collect();
        FlowNetwork {
            first_out,
            tail: entries.iter().map(|e| e.0).collect(),
            head: entries.iter().map(|e| e.1).collect(),
            back,
            capacity: entries.iter().map(|e| e.2).collect(),
            weight: vec![1; node_count],
        }
    }

    /// Replaces the per-node weights summed by [`FlowState::side_weight`].
    pub fn with_weights(mut self, weight: Vec<u64>) -> Self {
        assert_eq!(weight.len(), self.node_count());
        self.weight = weight;
        self
    }

    pub fn node_count(&self) -> usize {
        self.first_out.len() - 1
    }

    /// Number of arc slots including zero-capacity twins.
    pub fn arc_count(&self) -> usize {
        self.head.len()
    }

    pub fn out_arcs(&self, v: usize) -> std::ops::Range<usize> {
        self.first_out[v]..self.first_out[v + 1]
    }

    pub fn tail(&self, arc: usize) -> usize {
        self.tail[arc]
    }

    pub fn head(&self, arc: usize) -> usize {
        self.head[arc]
    }

    pub fn back(&self, arc: usize) -> usize {
        self.back[arc]
    }

    pub fn capacity(&self, arc: usize) -> i8 {
        self.capacity[arc]
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weight[v]
    }
}

/// Which terminal side an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Source => Side::Target,
            Side::Target => Side::Source,
        }
    }
}

/// Bookkeeping of one side: terminal set, reachability closure, frontier.
#[derive(Debug, Clone)]
struct SideState {
    is_terminal: Vec<bool>,
    terminals: Vec<usize>,
    /// Emission clock value at which a node became a terminal.
    stamp: Vec<u32>,
    reachable: Vec<bool>,
    /// Members of the closure in insertion order.
    members: Vec<usize>,
    /// `members[..promoted]` are all terminals.
    promoted: usize,
    scanned: usize,
    weight: u64,
    parent: Vec<usize>,
    /// Saturated arcs met while scanning; a superset of the side cut.
    saturated: Vec<usize>,
}

impl SideState {
    fn new(n: usize) -> Self {
        SideState {
            is_terminal: vec![false; n],
            terminals: Vec::new(),
            stamp: vec![u32::MAX; n],
            reachable: vec![false; n],
            members: Vec::new(),
            promoted: 0,
            scanned: 0,
            weight: 0,
            parent: vec![NO_ARC; n],
            saturated: Vec::new(),
        }
    }
}

/// Residual unit-flow state between a growing source and target set.
#[derive(Debug, Clone)]
pub struct FlowState<'a> {
    net: &'a FlowNetwork,
    flow: Vec<i8>,
    flow_value: usize,
    source: SideState,
    target: SideState,
    clock: u32,
    meeting: Option<usize>,
}

impl<'a> FlowState<'a> {
    /// Sets `S = S_R = sources`, `T = T_R = targets` and grows both closures.
    pub fn new(net: &'a FlowNetwork, sources: &[usize], targets: &[usize]) -> Result<Self> {
        let n = net.node_count();
        if sources.is_empty() || targets.is_empty() {
            return Err(Error::EmptyTerminals);
        }
        for &v in sources.iter().chain(targets) {
            if v >= n {
                return Err(Error::NodeOutOfRange { node: v, node_count: n });
            }
        }
        let mut state = FlowState {
            net,
            flow: vec![0; net.arc_count()],
            flow_value: 0,
            source: SideState::new(n),
            target: SideState::new(n),
            clock: 0,
            meeting: None,
        };
        for &s in sources {
            if !state.source.is_terminal[s] {
                state.make_terminal(Side::Source, s);
            }
        }
        for &t in targets {
            if state.source.is_terminal[t] {
                return Err(Error::OverlappingTerminals(t));
            }
            if !state.target.is_terminal[t] {
                state.make_terminal(Side::Target, t);
            }
        }
        state.reset_reachable(Side::Source);
        state.reset_reachable(Side::Target);
        state.grow_both();
        Ok(state)
    }

    pub fn network(&self) -> &'a FlowNetwork {
        self.net
    }

    pub fn flow_value(&self) -> usize {
        self.flow_value
    }

    /// Flow on `arc`: `1` if a unit crosses it, `-1` if a unit crosses its twin.
    pub fn flow(&self, arc: usize) -> i8 {
        self.flow[arc]
    }

    pub fn residual(&self, arc: usize) -> i8 {
        self.net.capacity[arc] - self.flow[arc]
    }

    pub fn is_saturated(&self, arc: usize) -> bool {
        self.net.capacity[arc] > 0 && self.residual(arc) <= 0
    }

    fn side(&self, side: Side) -> &SideState {
        match side {
            Side::Source => &self.source,
            Side::Target => &self.target,
        }
    }

    fn side_mut(&mut self, side: Side) -> &mut SideState {
        match side {
            Side::Source => &mut self.source,
            Side::Target => &mut self.target,
        }
    }

    pub fn is_terminal(&self, side: Side, v: usize) -> bool {
        self.side(side).is_terminal[v]
    }

    pub fn is_reachable(&self, side: Side, v: usize) -> bool {
        self.side(side).reachable[v]
    }

    pub fn terminals(&self, side: Side) -> &[usize] {
        &self.side(side).terminals
    }

    /// Members of `S_R` (or `T_R`) in insertion order.
    pub fn reachable(&self, side: Side) -> &[usize] {
        &self.side(side).members
    }

    pub fn reachable_len(&self, side: Side) -> usize {
        self.side(side).members.len()
    }

    /// Sum of node weights over the reachability set of `side`.
    pub fn side_weight(&self, side: Side) -> u64 {
        self.side(side).weight
    }

    /// Terminal stamps: node `v` belonged to the terminal set of `side` at
    /// emission `k` iff `stamp[v] <= k`.
    pub fn terminal_stamps(&self, side: Side) -> &[u32] {
        &self.side(side).stamp
    }

    /// Number of side promotions so far.
    pub fn clock(&self) -> u32 {
        self.clock
    }

    pub fn has_augmenting_path(&self) -> bool {
        self.meeting.is_some()
    }

    fn make_terminal(&mut self, side: Side, v: usize) {
        let stamp = self.clock;
        let st = self.side_mut(side);
        debug_assert!(!st.is_terminal[v]);
        st.is_terminal[v] = true;
        st.terminals.push(v);
        st.stamp[v] = stamp;
    }

    fn reset_reachable(&mut self, side: Side) {
        let net = self.net;
        let st = self.side_mut(side);
        for &v in &st.members {
            st.reachable[v] = false;
            st.parent[v] = NO_ARC;
        }
        st.members.clear();
        st.members.extend_from_slice(&st.terminals);
        st.promoted = st.members.len();
        st.weight = 0;
        for &v in &st.terminals {
            st.reachable[v] = true;
            st.weight += net.weight[v];
        }
        st.scanned = 0;
        st.saturated.clear();
    }

    fn add_reachable(&mut self, side: Side, v: usize, parent: usize) {
        let w = self.net.weight[v];
        let st = self.side_mut(side);
        st.reachable[v] = true;
        st.parent[v] = parent;
        st.members.push(v);
        st.weight += w;
        if self.meeting.is_none() && self.side(side.opposite()).reachable[v] {
            self.meeting = Some(v);
        }
    }

    /// Forward growth of `S_R` (source side) or backward growth of `T_R`
    /// (target side) over non-saturated arcs. Resumes from the nodes added
    /// since the last call and stops early once an augmenting path is found.
    /// Returns the newly added nodes.
    pub fn grow(&mut self, side: Side) -> &[usize] {
        let start = self.side(side).members.len();
        let net = self.net;
        while self.meeting.is_none() && self.side(side).scanned < self.side(side).members.len() {
            let x = {
                let st = self.side_mut(side);
                let x = st.members[st.scanned];
                st.scanned += 1;
                x
            };
            for a in net.out_arcs(x) {
                // Source side follows x -> y, target side follows y -> x.
                let arc = match side {
                    Side::Source => a,
                    Side::Target => net.back[a],
                };
                let y = net.head[a];
                if self.residual(arc) > 0 {
                    if !self.side(side).reachable[y] {
                        self.add_reachable(side, y, arc);
                    }
                } else if net.capacity[arc] > 0 {
                    self.side_mut(side).saturated.push(arc);
                }
            }
        }
        &self.side(side).members[start..]
    }

    /// Grows the side with the smaller frontier first.
    fn grow_both(&mut self) {
        let frontier = |st: &SideState| st.members.len() - st.scanned;
        let first = if frontier(&self.source) <= frontier(&self.target) { Side::Source } else { Side::Target };
        self.grow(first);
        self.grow(first.opposite());
    }

    /// Pushes one unit along the augmenting path through the meeting node,
    /// then resets `S_R := S`, `T_R := T` and regrows both.
    pub fn augment(&mut self) -> Result<()> {
        let meet = self.meeting.ok_or(Error::NoAugmentingPath)?;
        let mut v = meet;
        while !self.source.is_terminal[v] {
            let arc = self.source.parent[v];
            self.push(arc);
            v = self.net.tail[arc];
        }
        let mut v = meet;
        while !self.target.is_terminal[v] {
            let arc = self.target.parent[v];
            self.push(arc);
            v = self.net.head[arc];
        }
        self.flow_value += 1;
        self.meeting = None;
        self.reset_reachable(Side::Source);
        self.reset_reachable(Side::Target);
        self.grow_both();
        Ok(())
    }

    fn push(&mut self, arc: usize) {
        self.flow[arc] += 1;
        self.flow[self.net.back[arc]] -= 1;
        debug_assert!(self.residual(arc) >= 0);
    }

    /// Turns every node of the closure of `side` into a terminal (`S := S_R`)
    /// and advances the emission clock.
    pub fn promote(&mut self, side: Side) {
        self.clock += 1;
        let stamp = self.clock;
        let st = self.side_mut(side);
        for i in st.promoted..st.members.len() {
            let v = st.members[i];
            if !st.is_terminal[v] {
                st.is_terminal[v] = true;
                st.stamp[v] = stamp;
                st.terminals.push(v);
            }
        }
        st.promoted = st.members.len();
    }

    /// The arcs leaving `S_R` (source side) or entering `T_R` (target side),
    /// obtained by filtering the saturated-arc list in place. Requires a
    /// closed side and no augmenting path.
    pub fn extract_side_cut(&mut self, side: Side) -> Result<&[usize]> {
        if self.meeting.is_some() {
            return Err(Error::AugmentingPathExists);
        }
        self.grow(side);
        if self.meeting.is_some() {
            return Err(Error::AugmentingPathExists);
        }
        let net = self.net;
        let st = self.side_mut(side);
        let reachable = &st.reachable;
        st.saturated.retain(|&arc| match side {
            Side::Source => !reachable[net.head[arc]],
            Side::Target => !reachable[net.tail[arc]],
        });
        debug_assert_eq!(st.saturated.len(), self.flow_value);
        Ok(&self.side(side).saturated)
    }

    /// Adds the piercing node `v` to the terminal set and closure of `side`
    /// and regrows that closure.
    pub fn pierce(&mut self, side: Side, v: usize) -> Result<()> {
        if self.side(side.opposite()).is_terminal[v] {
            return Err(Error::OverlappingTerminals(v));
        }
        if self.side(side).is_terminal[v] {
            return Ok(());
        }
        self.make_terminal(side, v);
        // Pierced nodes become terminals only after the current emission.
        self.side_mut(side).stamp[v] = self.clock + 1;
        if !self.side(side).reachable[v] {
            self.add_reachable(side, v, NO_ARC);
        }
        self.grow(side);
        Ok(())
    }
}

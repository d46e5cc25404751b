//! The piercing oracle: which cut arc to invalidate next.
//!
//! Candidates whose piercing node is not reachable from the opposite side are
//! preferred because piercing them cannot create an augmenting path. Among
//! the remaining candidates the node maximising
//! `dist(p, t) - dist(s, p)` wins (mirrored for the target side), with hop
//! distances measured from the original terminals.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::flow::{FlowNetwork, Side};

pub const UNREACHABLE: u32 = u32::MAX;

/// Hop distances from the source terminals and to the target terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTables {
    pub from_source: Vec<u32>,
    pub to_target: Vec<u32>,
}

/// Multi-source BFS forward from `sources` and backward from `targets` over
/// positive-capacity arcs.
pub fn precompute_distances(net: &FlowNetwork, sources: &[usize], targets: &[usize]) -> DistanceTables {
    DistanceTables { from_source: bfs(net, sources, Side::Source), to_target: bfs(net, targets, Side::Target) }
}

fn bfs(net: &FlowNetwork, roots: &[usize], direction: Side) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; net.node_count()];
    let mut queue = VecDeque::new();
    for &r in roots {
        if dist[r] == UNREACHABLE {
            dist[r] = 0;
            queue.push_back(r);
        }
    }
    while let Some(x) = queue.pop_front() {
        for a in net.out_arcs(x) {
            let arc = match direction {
                Side::Source => a,
                Side::Target => net.back(a),
            };
            let y = net.head(a);
            if net.capacity(arc) > 0 && dist[y] == UNREACHABLE {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// The node absorbed when piercing `arc` on `side`.
pub fn piercing_node(net: &FlowNetwork, arc: usize, side: Side) -> usize {
    match side {
        Side::Source => net.head(arc),
        Side::Target => net.tail(arc),
    }
}

/// Ranks a piercing node; larger is better. A node that cannot reach the
/// far terminals ranks below every node that can.
fn score(tables: &DistanceTables, p: usize, side: Side) -> (bool, i64) {
    let (near, far) = match side {
        Side::Source => (tables.from_source[p], tables.to_target[p]),
        Side::Target => (tables.to_target[p], tables.from_source[p]),
    };
    let near = if near == UNREACHABLE { i64::from(u32::MAX) } else { i64::from(near) };
    if far == UNREACHABLE {
        (false, -near)
    } else {
        (true, i64::from(far) - near)
    }
}

/// Picks the piercing arc among `cut` for `side`. Arcs whose piercing node is
/// `blocked` (a terminal of the opposite side) are never chosen. Ties break
/// towards the smaller piercing node, then the smaller arc id. Runs in
/// `O(|cut|)`.
pub fn pick_piercing_arc(
    net: &FlowNetwork,
    cut: &[usize],
    side: Side,
    opposite_reachable: impl Fn(usize) -> bool,
    blocked: impl Fn(usize) -> bool,
    tables: &DistanceTables,
) -> Result<usize> {
    cut.iter()
        .map(|&arc| (arc, piercing_node(net, arc, side)))
        .filter(|&(_, p)| !blocked(p))
        .max_by(|&(a1, p1), &(a2, p2)| {
            let k1 = (!opposite_reachable(p1), score(tables, p1, side));
            let k2 = (!opposite_reachable(p2), score(tables, p2, side));
            k1.cmp(&k2).then(p2.cmp(&p1)).then(a2.cmp(&a1))
        })
        .map(|(arc, _)| arc)
        .ok_or(Error::EmptyCut)
}

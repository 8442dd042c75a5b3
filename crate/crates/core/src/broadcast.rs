//! Synchronous all-to-all broadcast over rings of `TQ_n`.
//!
//! On a ring of `k` nodes every node starts holding its own message. At each
//! step every node passes the message it holds to its ring successor and
//! then holds what it received; after `k - 1` steps every node has seen every
//! other node's message. Traffic is counted per directed link, one unit per
//! message (or per message half when a payload is split across two rings).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::construction::Cycle;
use crate::error::{Error, Result};
use crate::topology::{edge_stream, Dimension, Edge, NodeCap, NodeLabel};

/// Default largest dimension the simulator accepts.
pub const DEFAULT_BROADCAST_CAP: u32 = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

/// Which part of each node's payload a ring carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MessageShare {
    Whole,
    /// Exactly two `Half` schedules split every payload; both rings must
    /// span the same node set.
    Half,
}

#[derive(Clone, Debug)]
pub struct RingSchedule {
    pub ring: Cycle,
    pub direction: Direction,
    pub share: MessageShare,
}

impl RingSchedule {
    pub fn new(ring: Cycle, direction: Direction, share: MessageShare) -> Self {
        RingSchedule {
            ring,
            direction,
            share,
        }
    }

    fn order(&self) -> Vec<NodeLabel> {
        let mut nodes = self.ring.nodes().to_vec();
        if self.direction == Direction::Backward {
            nodes.reverse();
        }
        nodes
    }
}

/// Per-ring outcome of a simulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingOutcome {
    pub ring_len: usize,
    pub direction: Direction,
    pub share: MessageShare,
    /// For split payloads: 0 for the first half, 1 for the second.
    pub half: Option<u8>,
    pub steps: u64,
    /// Messages (or halves) each node received, in ring order.
    #[serde(skip)]
    pub received: Vec<u64>,
    /// Every node received every other member's message exactly once.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkLoadReport {
    pub n: Dimension,
    /// Units carried per directed link `(from, to)`.
    pub loads: BTreeMap<(NodeLabel, NodeLabel), u64>,
    pub rings: Vec<RingOutcome>,
    /// Undirected links used by more than one ring.
    pub contention_edges: u64,
}

impl LinkLoadReport {
    /// Steps of the longest ring; rings run concurrently.
    pub fn steps(&self) -> u64 {
        self.rings.iter().map(|r| r.steps).max().unwrap_or(0)
    }

    pub fn load(&self, from: NodeLabel, to: NodeLabel) -> u64 {
        self.loads.get(&(from, to)).copied().unwrap_or(0)
    }
}

/// Runs one ring's pipeline, returning per-position link loads and receipt counts.
fn run_ring(order: &[NodeLabel]) -> (Vec<u64>, Vec<u64>, bool) {
    let k = order.len();
    // holding[i]: ring position whose message node i forwards next.
    let mut holding: Vec<usize> = (0..k).collect();
    let mut next = vec![0usize; k];
    let mut link = vec![0u64; k];
    let mut received = vec![0u64; k];
    let mut clean = true;
    for step in 1..k {
        for i in 0..k {
            let to = (i + 1) % k;
            let origin = holding[i];
            link[i] += 1;
            received[to] += 1;
            // At step s a node hears from the member s places upstream.
            clean &= origin == (to + k - step) % k;
            next[to] = origin;
        }
        std::mem::swap(&mut holding, &mut next);
    }
    let complete = clean && received.iter().all(|&r| r == k as u64 - 1);
    (link, received, complete)
}

pub fn simulate_all_to_all(schedules: &[RingSchedule]) -> Result<LinkLoadReport> {
    simulate_all_to_all_with_cap(schedules, NodeCap::new(DEFAULT_BROADCAST_CAP))
}

pub fn simulate_all_to_all_with_cap(
    schedules: &[RingSchedule],
    cap: NodeCap,
) -> Result<LinkLoadReport> {
    let first = schedules
        .first()
        .ok_or_else(|| Error::Config("no ring schedules given".into()))?;
    let n = first.ring.dimension();
    n.ensure_within(cap)?;
    if let Some(s) = schedules.iter().find(|s| s.ring.dimension() != n) {
        return Err(Error::DimensionMismatch {
            left: n.get(),
            right: s.ring.dimension().get(),
        });
    }

    let halves: Vec<&RingSchedule> = schedules
        .iter()
        .filter(|s| s.share == MessageShare::Half)
        .collect();
    match halves.len() {
        0 => {}
        2 => {
            let mut a = halves[0].ring.nodes().to_vec();
            let mut b = halves[1].ring.nodes().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::Config(
                    "rings splitting a payload must span the same node set".into(),
                ));
            }
        }
        k => {
            return Err(Error::Config(format!(
                "payloads split into halves need exactly two rings, got {k}"
            )))
        }
    }

    let mut loads = BTreeMap::new();
    // Edge -> (first ring using it, used by another ring too)
    let mut users: HashMap<Edge, (usize, bool)> = HashMap::new();
    let mut rings = Vec::with_capacity(schedules.len());
    let mut half_index = 0u8;
    for (idx, s) in schedules.iter().enumerate() {
        let order = s.order();
        let (link, received, complete) = run_ring(&order);
        for (i, &units) in link.iter().enumerate() {
            let (from, to) = (order[i], order[(i + 1) % order.len()]);
            *loads.entry((from, to)).or_insert(0) += units;
            let e = Edge::new(from, to);
            let (first_user, shared) = users.entry(e).or_insert((idx, false));
            *shared |= *first_user != idx;
        }
        let half = (s.share == MessageShare::Half).then(|| {
            half_index += 1;
            half_index - 1
        });
        rings.push(RingOutcome {
            ring_len: order.len(),
            direction: s.direction,
            share: s.share,
            half,
            steps: order.len() as u64 - 1,
            received,
            complete,
        });
    }
    let contention_edges = users.values().filter(|u| u.1).count() as u64;
    Ok(LinkLoadReport {
        n,
        loads,
        rings,
        contention_edges,
    })
}

/// How the links of `TQ_n` are split between two rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ContentionSummary {
    pub shared_edges: u64,
    pub first_only: u64,
    pub second_only: u64,
    pub unused: u64,
    pub total_edges: u64,
}

pub fn contention_report(c1: &Cycle, c2: &Cycle) -> Result<ContentionSummary> {
    let n = c1.dimension();
    if c2.dimension() != n {
        return Err(Error::DimensionMismatch {
            left: n.get(),
            right: c2.dimension().get(),
        });
    }
    let mut usage: HashMap<Edge, u8> = HashMap::new();
    for e in c1.edges() {
        *usage.entry(e).or_insert(0) |= 1;
    }
    for e in c2.edges() {
        *usage.entry(e).or_insert(0) |= 2;
    }
    let mut summary = ContentionSummary {
        shared_edges: 0,
        first_only: 0,
        second_only: 0,
        unused: 0,
        total_edges: 0,
    };
    for e in edge_stream(n) {
        summary.total_edges += 1;
        match usage.get(&e).copied().unwrap_or(0) {
            0 => summary.unused += 1,
            1 => summary.first_only += 1,
            2 => summary.second_only += 1,
            _ => summary.shared_edges += 1,
        }
    }
    Ok(summary)
}

#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use twisted_cube::verification::{find_hamiltonian_paths, VerificationReport, Witness};
use twisted_cube::{is_adjacent, Dimension, Edge, NodeLabel};

pub fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

#[derive(Clone, Copy, Debug)]
pub enum Mutation {
    Flip,
    Delete,
    SwapNeighbors,
}

pub const MUTATIONS: [Mutation; 3] = [Mutation::Flip, Mutation::Delete, Mutation::SwapNeighbors];

/// Applies one random mutation of the given type to `nodes`.
pub fn mutate<R: Rng>(
    nodes: &[NodeLabel],
    n: Dimension,
    kind: Mutation,
    rng: &mut R,
) -> Vec<NodeLabel> {
    let mut out = nodes.to_vec();
    match kind {
        Mutation::Flip => {
            let i = rng.gen_range(0..out.len());
            let mask = rng.gen_range(1..n.node_count());
            out[i] = NodeLabel(out[i].0 ^ mask);
        }
        Mutation::Delete => {
            let i = rng.gen_range(0..out.len());
            out.remove(i);
        }
        Mutation::SwapNeighbors => {
            let i = rng.gen_range(0..out.len() - 1);
            out.swap(i, i + 1);
        }
    }
    out
}

/// A Hamiltonian cycle of TQ_3, found by the oracle.
pub fn tq3_hamiltonian_cycle() -> Vec<NodeLabel> {
    let n = dim(3);
    // 000's neighbors are 001, 100, 110; a Hamiltonian path 000 -> 110 closes.
    let found = find_hamiltonian_paths(n, NodeLabel(0), NodeLabel(0b110), 1).unwrap();
    found[0].nodes().to_vec()
}

fn edges(nodes: &[NodeLabel], closed: bool) -> HashSet<Edge> {
    let mut set: HashSet<Edge> = nodes.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    if closed && nodes.len() >= 2 {
        set.insert(Edge::new(nodes[nodes.len() - 1], nodes[0]));
    }
    set
}

/// Re-examines a witness against the raw inputs without the checkers.
pub fn witness_refutes(w: &Witness, inputs: &[&[NodeLabel]], closed: bool, n: Dimension) -> bool {
    let in_range = |v: NodeLabel| v.0 < n.node_count();
    match w {
        Witness::NonAdjacent { from, to } => {
            let listed = inputs.iter().any(|nodes| {
                nodes.windows(2).any(|p| p[0] == *from && p[1] == *to)
                    || (closed && nodes.last() == Some(from) && nodes.first() == Some(to))
            });
            let not_edge =
                !in_range(*from) || !in_range(*to) || !is_adjacent(*from, *to, n).unwrap();
            listed && not_edge
        }
        Witness::Duplicate(v) => inputs
            .iter()
            .any(|nodes| nodes.iter().filter(|x| *x == v).count() >= 2),
        Witness::OutOfRange(v) => !in_range(*v) && inputs.iter().any(|nodes| nodes.contains(v)),
        Witness::Count { expected, actual } => {
            expected != actual && inputs.iter().any(|nodes| nodes.len() as u64 == *actual)
        }
        Witness::Missing(k) => {
            let covered: HashSet<NodeLabel> = inputs
                .iter()
                .flat_map(|nodes| nodes.iter().copied())
                .filter(|v| in_range(*v))
                .collect();
            *k > 0 && n.node_count() - covered.len() as u64 == *k
        }
        Witness::SharedEdge { edge, shared } => {
            let a = edges(inputs[0], closed);
            let b = edges(inputs[1], closed);
            a.contains(edge) && b.contains(edge) && a.intersection(&b).count() as u64 == *shared
        }
        Witness::SharedNode { node, .. } => inputs[0].contains(node) && inputs[1].contains(node),
    }
}

/// Every failed check in `report` carries a witness that holds up on its own.
pub fn failures_are_witnessed(
    report: &VerificationReport,
    inputs: &[&[NodeLabel]],
    closed: bool,
    n: Dimension,
) -> bool {
    report.failures().all(|c| {
        c.witness
            .as_ref()
            .is_some_and(|w| witness_refutes(w, inputs, closed, n))
    })
}

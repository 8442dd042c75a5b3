//! Brute-force search over `TQ_n` for `n <= 5`.
//!
//! Nodes fit in a `u64` bitmask, so the search state is a visited mask plus
//! the current node. Neighbors are tried in ascending label order, which
//! makes every run reproducible.

use std::collections::BTreeSet;

use crate::construction::{edh_cycles, Cycle, Path};
use crate::error::{Error, Result};
use crate::topology::{neighbors_unchecked, Dimension, NodeCap, NodeLabel};

use super::{verify_edge_disjoint, verify_hamiltonian_with_cap};

/// Largest dimension the oracle will search.
pub const ORACLE_MAX_DIMENSION: u32 = 5;

struct Search {
    adj: Vec<u64>,
    all: u64,
    end: usize,
    limit: usize,
    found: Vec<Vec<usize>>,
    path: Vec<usize>,
}

impl Search {
    fn new(adj: Vec<u64>, end: usize, limit: usize) -> Search {
        let all = if adj.len() == 64 {
            u64::MAX
        } else {
            (1u64 << adj.len()) - 1
        };
        Search {
            adj,
            all,
            end,
            limit,
            found: Vec::new(),
            path: Vec::new(),
        }
    }

    /// Necessary conditions for the unvisited nodes to still admit a path
    /// from `cur` through all of them ending at `end`.
    fn feasible(&self, cur: usize, unvisited: u64) -> bool {
        let open = unvisited | (1 << cur);
        let mut rest = unvisited;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let links = (self.adj[w] & open).count_ones();
            let need = if w == self.end { 1 } else { 2 };
            if links < need {
                return false;
            }
        }
        // Unvisited nodes must all be reachable from `cur` through unvisited nodes.
        let mut reached = 1u64 << cur;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v] & unvisited;
            }
            next &= !reached;
            reached |= next;
            frontier = next;
        }
        reached & unvisited == unvisited
    }

    fn run(&mut self, cur: usize, visited: u64) {
        if self.found.len() >= self.limit {
            return;
        }
        self.path.push(cur);
        if visited == self.all {
            if cur == self.end {
                self.found.push(self.path.clone());
            }
        } else if cur != self.end {
            let unvisited = self.all & !visited;
            if self.feasible(cur, unvisited) {
                let mut choices = self.adj[cur] & unvisited;
                while choices != 0 && self.found.len() < self.limit {
                    let next = choices.trailing_zeros() as usize;
                    choices &= choices - 1;
                    self.run(next, visited | (1 << next));
                }
            }
        }
        self.path.pop();
    }
}

fn adjacency_masks(n: Dimension) -> Vec<u64> {
    (0..n.node_count())
        .map(|b| neighbors_unchecked(b, n).fold(0u64, |m, v| m | (1 << v.0)))
        .collect()
}

fn search_paths(adj: Vec<u64>, start: usize, end: usize, limit: usize) -> Vec<Vec<usize>> {
    if start == end && adj.len() > 1 {
        return Vec::new();
    }
    let mut s = Search::new(adj, end, limit);
    s.run(start, 1 << start);
    s.found
}

fn check_oracle_dimension(n: Dimension) -> Result<()> {
    if n.get() > ORACLE_MAX_DIMENSION {
        return Err(Error::Capacity {
            n: n.get(),
            cap: ORACLE_MAX_DIMENSION,
        });
    }
    Ok(())
}

/// Up to `limit` Hamiltonian paths of `TQ_n` from `start` to `end`, found by
/// depth-first backtracking. Not exhaustive unless fewer than `limit` exist.
pub fn find_hamiltonian_paths(
    n: Dimension,
    start: NodeLabel,
    end: NodeLabel,
    limit: usize,
) -> Result<Vec<Path>> {
    check_oracle_dimension(n)?;
    n.check(start)?;
    n.check(end)?;
    if limit == 0 {
        return Err(Error::Oracle("limit must be at least 1".into()));
    }
    search_paths(adjacency_masks(n), start.0 as usize, end.0 as usize, limit)
        .into_iter()
        .map(|p| Path::new(n, p.into_iter().map(|v| NodeLabel(v as u64)).collect()))
        .collect()
}

/// Every Hamiltonian cycle of the graph given by `adj`, each once, as edge sets.
fn all_hamiltonian_cycles(adj: &[u64]) -> Vec<BTreeSet<(usize, usize)>> {
    let mut cycles = BTreeSet::new();
    let mut closers = adj[0];
    while closers != 0 {
        let t = closers.trailing_zeros() as usize;
        closers &= closers - 1;
        for p in search_paths(adj.to_vec(), 0, t, usize::MAX) {
            let mut edges: BTreeSet<(usize, usize)> = p
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect();
            edges.insert((0, t));
            cycles.insert(edges);
        }
    }
    cycles.into_iter().collect()
}

/// Counting bound: two edge-disjoint Hamiltonian cycles need `2 * 2^n` edges
/// and degree 4 at every node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeBound {
    pub degree: u32,
    pub required_degree: u32,
    pub required_edges: u64,
    pub available_edges: u64,
}

impl DegreeBound {
    pub fn feasible(&self) -> bool {
        self.degree >= self.required_degree && self.available_edges >= self.required_edges
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveSearch {
    /// Distinct undirected Hamiltonian cycles.
    pub hamiltonian_cycles: usize,
    /// Unordered pairs of them sharing no edge.
    pub disjoint_pairs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessSource {
    /// First cycle from backtracking, second found in the leftover graph.
    Search,
    /// The recursive construction, re-verified by the checkers.
    Construction,
}

#[derive(Clone, Debug)]
pub struct EdhPairVerdict {
    pub n: Dimension,
    pub exists: bool,
    pub degree_bound: DegreeBound,
    pub exhaustive: Option<ExhaustiveSearch>,
    pub witness: Option<(Cycle, Cycle, WitnessSource)>,
}

// Cycles tried as the first ring before falling back to the construction.
const FIRST_RING_ATTEMPTS: usize = 64;

fn to_cycle(n: Dimension, nodes: Vec<usize>) -> Result<Cycle> {
    Cycle::new(n, nodes.into_iter().map(|v| NodeLabel(v as u64)).collect())
}

/// Searches for a Hamiltonian cycle, then for a second one avoiding its edges.
fn search_edh_witness(n: Dimension) -> Result<Option<(Cycle, Cycle)>> {
    let adj = adjacency_masks(n);
    let mut tried = 0usize;
    let mut closers = adj[0];
    while closers != 0 && tried < FIRST_RING_ATTEMPTS {
        let t = closers.trailing_zeros() as usize;
        closers &= closers - 1;
        let budget = FIRST_RING_ATTEMPTS - tried;
        for first in search_paths(adj.clone(), 0, t, budget) {
            tried += 1;
            let mut rest = adj.clone();
            let mut remove = |a: usize, b: usize| {
                rest[a] &= !(1 << b);
                rest[b] &= !(1 << a);
            };
            for w in first.windows(2) {
                remove(w[0], w[1]);
            }
            remove(t, 0);
            let mut closers2 = rest[0];
            while closers2 != 0 {
                let t2 = closers2.trailing_zeros() as usize;
                closers2 &= closers2 - 1;
                if let Some(second) = search_paths(rest.clone(), 0, t2, 1).pop() {
                    return Ok(Some((to_cycle(n, first)?, to_cycle(n, second)?)));
                }
            }
        }
    }
    Ok(None)
}

/// Decides whether `TQ_n` (n in {3, 5}) has two edge-disjoint Hamiltonian cycles.
///
/// For `n = 3` the answer comes from the degree bound and is corroborated by
/// enumerating every Hamiltonian cycle and testing all pairs. For `n = 5` a
/// witness pair is searched for and checked; the constructed pair is the
/// fallback witness.
pub fn oracle_edh_pair_exists(n: Dimension) -> Result<EdhPairVerdict> {
    if !matches!(n.get(), 3 | 5) {
        return Err(Error::Oracle(format!(
            "edge-disjoint pair oracle supports n = 3 or 5, not {n}"
        )));
    }
    let degree_bound = DegreeBound {
        degree: n.get(),
        required_degree: 4,
        required_edges: 2 * n.node_count(),
        available_edges: n.edge_count(),
    };

    if n.get() == 3 {
        let adj = adjacency_masks(n);
        let cycles = all_hamiltonian_cycles(&adj);
        let mut disjoint_pairs = 0;
        for (i, a) in cycles.iter().enumerate() {
            for b in &cycles[i + 1..] {
                if a.is_disjoint(b) {
                    disjoint_pairs += 1;
                }
            }
        }
        return Ok(EdhPairVerdict {
            n,
            exists: degree_bound.feasible() && disjoint_pairs > 0,
            degree_bound,
            exhaustive: Some(ExhaustiveSearch {
                hamiltonian_cycles: cycles.len(),
                disjoint_pairs,
            }),
            witness: None,
        });
    }

    let (a, b, source) = match search_edh_witness(n)? {
        Some((a, b)) => (a, b, WitnessSource::Search),
        None => {
            let (a, b) = edh_cycles(n)?;
            (a, b, WitnessSource::Construction)
        }
    };
    let cap = NodeCap::new(ORACLE_MAX_DIMENSION);
    let ok = verify_hamiltonian_with_cap(a.route(), n, cap)?.passed()
        && verify_hamiltonian_with_cap(b.route(), n, cap)?.passed()
        && verify_edge_disjoint(a.route(), b.route()).passed();
    Ok(EdhPairVerdict {
        n,
        exists: degree_bound.feasible() && ok,
        degree_bound,
        exhaustive: None,
        witness: ok.then_some((a, b, source)),
    })
}

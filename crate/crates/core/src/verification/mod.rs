//! Independent checkers for paths, cycles and pairs of them.
//!
//! Checkers take raw node sequences ([`Route`]s) rather than validated
//! [`Path`](crate::Path)/[`Cycle`](crate::Cycle) values, so they can judge
//! arbitrary input. A failed check always carries a [`Witness`] that can be
//! re-examined on its own.

mod oracle;

use std::collections::HashSet;
use std::fmt;

use crate::construction::Route;
use crate::error::Result;
use crate::io::label_to_string;
use crate::topology::{
    adjacent_unchecked, edge_stream, neighbors_unchecked, Dimension, Edge, NodeCap, NodeLabel,
};
use crate::util::LabelSet;

pub use oracle::{
    find_hamiltonian_paths, oracle_edh_pair_exists, DegreeBound, EdhPairVerdict, ExhaustiveSearch,
    WitnessSource, ORACLE_MAX_DIMENSION,
};

/// Evidence refuting a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Consecutive (or closing) pair that is not an edge.
    NonAdjacent {
        from: NodeLabel,
        to: NodeLabel,
    },
    Duplicate(NodeLabel),
    OutOfRange(NodeLabel),
    Count {
        expected: u64,
        actual: u64,
    },
    /// Number of labels of `TQ_n` not covered.
    Missing(u64),
    /// One shared edge and the total number shared.
    SharedEdge {
        edge: Edge,
        shared: u64,
    },
    /// One shared node and the total number shared.
    SharedNode {
        node: NodeLabel,
        shared: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub witness: Option<Witness>,
}

impl Check {
    fn pass(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed: true,
            detail: detail.into(),
            witness: None,
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>, witness: Witness) -> Check {
        Check {
            name: name.into(),
            passed: false,
            detail: detail.into(),
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn new(subject: impl Into<String>) -> Self {
        VerificationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    /// Conjunction of all checks.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends another report's checks, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subject: {}", self.subject)?;
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  [{status}] {}: {}", c.name, c.detail)?;
        }
        write!(
            f,
            "overall: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn show(v: NodeLabel, n: Dimension) -> String {
    if n.contains(v) {
        label_to_string(v, n)
    } else {
        format!("#{}", v.0)
    }
}

/// Range, distinctness, adjacency (and closing edge) checks on one route.
fn structure_checks(route: Route<'_>, n: Dimension, prefix: &str, report: &mut VerificationReport) {
    let name = |s: &str| format!("{prefix}{s}");

    match route.nodes.iter().find(|v| !n.contains(**v)) {
        Some(&v) => report.checks.push(Check::fail(
            name("labels-in-range"),
            format!("label {} does not fit in {} bits", v.0, n.get()),
            Witness::OutOfRange(v),
        )),
        None => report
            .checks
            .push(Check::pass(name("labels-in-range"), "all labels < 2^n")),
    }

    let mut seen = LabelSet::new(n, route.nodes.len());
    let dup = route
        .nodes
        .iter()
        .filter(|v| n.contains(**v))
        .find(|v| !seen.insert(**v));
    match dup {
        Some(&v) => report.checks.push(Check::fail(
            name("distinct"),
            format!("node {} repeats", show(v, n)),
            Witness::Duplicate(v),
        )),
        None => report
            .checks
            .push(Check::pass(name("distinct"), "no repeated node")),
    }

    let bad = route
        .nodes
        .windows(2)
        .find(|w| !adjacent_unchecked(w[0].0, w[1].0, n));
    match bad {
        Some(w) => report.checks.push(Check::fail(
            name("adjacency"),
            format!("{} -> {} is not an edge", show(w[0], n), show(w[1], n)),
            Witness::NonAdjacent {
                from: w[0],
                to: w[1],
            },
        )),
        None => report.checks.push(Check::pass(
            name("adjacency"),
            "every consecutive pair is an edge",
        )),
    }

    if route.closed {
        let nodes = route.nodes;
        if nodes.len() < 3 {
            report.checks.push(Check::fail(
                name("closing-edge"),
                format!("a cycle needs at least 3 nodes, got {}", nodes.len()),
                Witness::Count {
                    expected: 3,
                    actual: nodes.len() as u64,
                },
            ));
        } else {
            let (last, first) = (nodes[nodes.len() - 1], nodes[0]);
            if adjacent_unchecked(last.0, first.0, n) {
                report.checks.push(Check::pass(
                    name("closing-edge"),
                    format!("{} -> {} is an edge", show(last, n), show(first, n)),
                ));
            } else {
                report.checks.push(Check::fail(
                    name("closing-edge"),
                    format!("{} -> {} is not an edge", show(last, n), show(first, n)),
                    Witness::NonAdjacent {
                        from: last,
                        to: first,
                    },
                ));
            }
        }
    }
}

fn count_check(name: String, expected: u64, actual: u64) -> Check {
    if expected == actual {
        Check::pass(name, format!("{actual} nodes"))
    } else {
        Check::fail(
            name,
            format!("expected {expected} nodes, found {actual}"),
            Witness::Count { expected, actual },
        )
    }
}

fn hamiltonian(route: Route<'_>, n: Dimension, cap: NodeCap) -> Result<VerificationReport> {
    n.ensure_within(cap)?;
    let what = if route.closed { "cycle" } else { "path" };
    let mut report = VerificationReport::new(format!("Hamiltonian {what} of TQ_{n}"));
    report.checks.push(count_check(
        "node-count".into(),
        n.node_count(),
        route.nodes.len() as u64,
    ));
    structure_checks(route, n, "", &mut report);
    Ok(report)
}

/// Length `2^n`, labels in range, no repeats, consecutive nodes adjacent.
pub fn verify_hamiltonian_path(nodes: &[NodeLabel], n: Dimension) -> Result<VerificationReport> {
    hamiltonian(Route::open(nodes), n, NodeCap::default())
}

/// [`verify_hamiltonian_path`] plus the closing edge.
pub fn verify_hamiltonian_cycle(nodes: &[NodeLabel], n: Dimension) -> Result<VerificationReport> {
    hamiltonian(Route::closed(nodes), n, NodeCap::default())
}

/// Hamiltonicity of a path or cycle under an explicit cap.
pub fn verify_hamiltonian_with_cap(
    route: Route<'_>,
    n: Dimension,
    cap: NodeCap,
) -> Result<VerificationReport> {
    hamiltonian(route, n, cap)
}

/// Cycle validity without any length requirement beyond 3 nodes.
pub fn verify_cycle(nodes: &[NodeLabel], n: Dimension) -> VerificationReport {
    let mut report = VerificationReport::new(format!("cycle of TQ_{n}"));
    structure_checks(Route::closed(nodes), n, "", &mut report);
    report
}

/// Pass iff the two routes share no undirected edge (closing edges included).
pub fn verify_edge_disjoint(a: Route<'_>, b: Route<'_>) -> VerificationReport {
    let mut report = VerificationReport::new("edge-disjointness");
    let left: HashSet<Edge> = a.edges().collect();
    let mut shared = 0u64;
    let mut first = None;
    let mut counted = HashSet::new();
    for e in b.edges() {
        if left.contains(&e) && counted.insert(e) {
            shared += 1;
            first.get_or_insert(e);
        }
    }
    match first {
        None => report.checks.push(Check::pass(
            "edge-disjoint",
            format!(
                "{} and {} edges, none shared",
                left.len(),
                b.edges().count()
            ),
        )),
        Some(edge) => report.checks.push(Check::fail(
            "edge-disjoint",
            format!(
                "{shared} shared edges, e.g. {{{}, {}}}",
                edge.u().0,
                edge.v().0
            ),
            Witness::SharedEdge { edge, shared },
        )),
    }
    report
}

/// Both inputs are cycles of `2^(n-1)` nodes with disjoint node sets covering `TQ_n`.
pub fn verify_equal_node_disjoint(
    a: &[NodeLabel],
    b: &[NodeLabel],
    n: Dimension,
) -> Result<VerificationReport> {
    verify_equal_node_disjoint_with_cap(a, b, n, NodeCap::default())
}

pub fn verify_equal_node_disjoint_with_cap(
    a: &[NodeLabel],
    b: &[NodeLabel],
    n: Dimension,
    cap: NodeCap,
) -> Result<VerificationReport> {
    n.ensure_within(cap)?;
    let mut report = VerificationReport::new(format!("equal node-disjoint cycles of TQ_{n}"));
    let half = n.node_count() / 2;
    report
        .checks
        .push(count_check("first.node-count".into(), half, a.len() as u64));
    report.checks.push(count_check(
        "second.node-count".into(),
        half,
        b.len() as u64,
    ));
    structure_checks(Route::closed(a), n, "first.", &mut report);
    structure_checks(Route::closed(b), n, "second.", &mut report);

    let mut in_a = LabelSet::new(n, a.len());
    for &v in a.iter().filter(|v| n.contains(**v)) {
        in_a.insert(v);
    }
    let mut shared = 0u64;
    let mut first_shared = None;
    let mut in_b = LabelSet::new(n, b.len());
    for &v in b.iter().filter(|v| n.contains(**v)) {
        if in_b.insert(v) && in_a.contains(v) {
            shared += 1;
            first_shared.get_or_insert(v);
        }
    }
    match first_shared {
        None => report
            .checks
            .push(Check::pass("node-disjoint", "no node in both cycles")),
        Some(node) => report.checks.push(Check::fail(
            "node-disjoint",
            format!("{shared} shared nodes, e.g. {}", show(node, n)),
            Witness::SharedNode { node, shared },
        )),
    }

    let covered = (in_a.len() + in_b.len()) as u64 - shared;
    let missing = n.node_count() - covered;
    if missing == 0 {
        report.checks.push(Check::pass(
            "covers-all",
            "every node of TQ_n is on a cycle",
        ));
    } else {
        report.checks.push(Check::fail(
            "covers-all",
            format!("{missing} nodes of TQ_{n} are on neither cycle"),
            Witness::Missing(missing),
        ));
    }
    Ok(report)
}

/// Both cycles Hamiltonian and mutually edge-disjoint.
pub fn verify_edh_pair(
    p: &[NodeLabel],
    q: &[NodeLabel],
    n: Dimension,
    cap: NodeCap,
) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new(format!("two edge-disjoint Hamiltonian cycles of TQ_{n}"));
    report.absorb("P", hamiltonian(Route::closed(p), n, cap)?);
    report.absorb("Q", hamiltonian(Route::closed(q), n, cap)?);
    report.absorb(
        "PQ",
        verify_edge_disjoint(Route::closed(p), Route::closed(q)),
    );
    Ok(report)
}

/// Node and edge counts of `TQ_n` obtained by enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub n: Dimension,
    pub node_count: u64,
    pub edge_count: u64,
    pub is_regular: bool,
    pub degree: u32,
}

impl fmt::Display for GraphStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "nodes={} edges={} regular={} degree={}",
            self.node_count, self.edge_count, self.is_regular, self.degree
        )
    }
}

pub fn graph_stats(n: Dimension) -> Result<GraphStats> {
    graph_stats_with_cap(n, NodeCap::default())
}

pub fn graph_stats_with_cap(n: Dimension, cap: NodeCap) -> Result<GraphStats> {
    n.ensure_within(cap)?;
    let mut node_count = 0u64;
    let mut degrees: Option<(u32, u32)> = None;
    let mut buf = Vec::with_capacity(n.get() as usize);
    for b in 0..n.node_count() {
        node_count += 1;
        buf.clear();
        buf.extend(neighbors_unchecked(b, n).map(|v| v.0));
        buf.sort_unstable();
        buf.dedup();
        // Only count neighbors that are genuine, symmetric, non-loop edges.
        let degree = buf
            .iter()
            .filter(|&&v| v != b && n.contains(NodeLabel(v)) && adjacent_unchecked(v, b, n))
            .count() as u32;
        degrees = Some(match degrees {
            None => (degree, degree),
            Some((lo, hi)) => (lo.min(degree), hi.max(degree)),
        });
    }
    let edge_count = edge_stream(n).count() as u64;
    let (lo, hi) = degrees.unwrap_or((0, 0));
    Ok(GraphStats {
        n,
        node_count,
        edge_count,
        is_regular: lo == hi,
        degree: hi,
    })
}

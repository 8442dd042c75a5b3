//! Recursive constructions of path/cycle pairs in `TQ_n`.
//!
//! Both constructions start from a small base pair and grow it two
//! dimensions at a time: the `(n-2)`-dimensional pair is copied into the
//! four quadrants `00, 10, 01, 11` (by setting the top two label bits) and
//! the copies are chained in a kind-specific quadrant order, with the
//! second and fourth copies traversed in reverse. The junction edges are
//! cross edges guaranteed by the endpoint patterns; they are re-checked on
//! every build anyway.
//!
//! * `edh`: two edge-disjoint Hamiltonian paths of `TQ_n`, odd `n >= 5`,
//!   closing into two edge-disjoint Hamiltonian cycles.
//! * `ndc`: two node-disjoint paths of `2^(n-1)` nodes each covering
//!   `TQ_n`, odd `n >= 3`, closing into two equal node-disjoint cycles.

mod path;
mod stream;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{adjacent_unchecked, Dimension, NodeCap, NodeLabel, Quadrant};

pub use path::{concat, reverse_path, Cycle, Path, Route};
pub use stream::{path_stream, PathStream};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    /// Two edge-disjoint Hamiltonian paths/cycles.
    Edh,
    /// Two equal node-disjoint paths/cycles.
    Ndc,
}

impl ConstructionKind {
    pub fn min_dimension(self) -> u32 {
        match self {
            ConstructionKind::Edh => 5,
            ConstructionKind::Ndc => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionKind::Edh => "edh",
            ConstructionKind::Ndc => "ndc",
        }
    }

    /// Dimension of the hard-coded base pair.
    pub(crate) fn base_dimension(self) -> u32 {
        self.min_dimension()
    }

    /// Errors unless the construction is defined for `n`.
    pub fn check(self, n: Dimension) -> Result<()> {
        match (self, n.get()) {
            (ConstructionKind::Edh, 3) => Err(Error::EdhNonexistent),
            (kind, m) if m < kind.min_dimension() => Err(Error::UnsupportedDimension {
                n: m,
                kind,
                min: kind.min_dimension(),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edh" => Ok(ConstructionKind::Edh),
            "ndc" => Ok(ConstructionKind::Ndc),
            other => Err(Error::Config(format!(
                "unknown construction kind {other:?} (expected edh or ndc)"
            ))),
        }
    }
}

/// Selects one path of a constructed pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    P,
    Q,
}

impl Which {
    fn index(self) -> usize {
        match self {
            Which::P => 0,
            Which::Q => 1,
        }
    }
}

/// Quadrant chaining order per `[kind][which]`. Copies in slots 1 and 3 are reversed.
const QUADRANT_ORDER: [[[Quadrant; 4]; 2]; 2] = {
    use Quadrant as Qd;
    [
        // edh
        [
            [Qd::Q00, Qd::Q10, Qd::Q01, Qd::Q11],
            [Qd::Q00, Qd::Q10, Qd::Q11, Qd::Q01],
        ],
        // ndc
        [
            [Qd::Q00, Qd::Q10, Qd::Q11, Qd::Q01],
            [Qd::Q00, Qd::Q10, Qd::Q01, Qd::Q11],
        ],
    ]
};

pub(crate) fn quadrant_order(kind: ConstructionKind, which: Which) -> &'static [Quadrant; 4] {
    let k = match kind {
        ConstructionKind::Edh => 0,
        ConstructionKind::Ndc => 1,
    };
    &QUADRANT_ORDER[k][which.index()]
}

#[rustfmt::skip]
const EDH_BASE_P: [u64; 32] = [
    0b00000, 0b00001, 0b00101, 0b00100, 0b10100, 0b10101, 0b10001, 0b10000,
    0b10110, 0b10010, 0b00010, 0b00011, 0b10011, 0b10111, 0b00111, 0b00110,
    0b11110, 0b11010, 0b01010, 0b01011, 0b11011, 0b11111, 0b01111, 0b01110,
    0b01000, 0b01001, 0b01101, 0b01100, 0b11100, 0b11101, 0b11001, 0b11000,
];

#[rustfmt::skip]
const EDH_BASE_Q: [u64; 32] = [
    0b00100, 0b00000, 0b10000, 0b10100, 0b10010, 0b10011, 0b10001, 0b00001,
    0b00011, 0b00111, 0b00101, 0b10101, 0b10111, 0b10110, 0b00110, 0b00010,
    0b01010, 0b01110, 0b11110, 0b11111, 0b11101, 0b01101, 0b01111, 0b01011,
    0b01001, 0b11001, 0b11011, 0b11010, 0b11100, 0b11000, 0b01000, 0b01100,
];

const NDC_BASE_P: [u64; 4] = [0b001, 0b101, 0b111, 0b011];
const NDC_BASE_Q: [u64; 4] = [0b000, 0b100, 0b010, 0b110];

pub(crate) fn base_table(kind: ConstructionKind, which: Which) -> &'static [u64] {
    match (kind, which) {
        (ConstructionKind::Edh, Which::P) => &EDH_BASE_P,
        (ConstructionKind::Edh, Which::Q) => &EDH_BASE_Q,
        (ConstructionKind::Ndc, Which::P) => &NDC_BASE_P,
        (ConstructionKind::Ndc, Which::Q) => &NDC_BASE_Q,
    }
}

fn load_base(kind: ConstructionKind) -> (Path, Path) {
    let n = Dimension::new(kind.base_dimension()).expect("base dimension is odd");
    let load = |which| {
        let nodes = base_table(kind, which)
            .iter()
            .copied()
            .map(NodeLabel)
            .collect();
        Path::new(n, nodes).unwrap_or_else(|e| panic!("corrupt {kind} base table {which:?}: {e}"))
    };
    (load(Which::P), load(Which::Q))
}

/// The two edge-disjoint Hamiltonian paths of `TQ_5` the induction starts from.
pub fn edh_base() -> (Path, Path) {
    static BASE: OnceLock<(Path, Path)> = OnceLock::new();
    BASE.get_or_init(|| load_base(ConstructionKind::Edh))
        .clone()
}

/// The two equal node-disjoint paths of `TQ_3`.
pub fn ndc_base() -> (Path, Path) {
    static BASE: OnceLock<(Path, Path)> = OnceLock::new();
    BASE.get_or_init(|| load_base(ConstructionKind::Ndc))
        .clone()
}

/// The four end nodes a construction of the given kind must produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EndpointSpec {
    pub kind: ConstructionKind,
    pub n: Dimension,
    pub start_p: NodeLabel,
    pub end_p: NodeLabel,
    pub start_q: NodeLabel,
    pub end_q: NodeLabel,
}

impl EndpointSpec {
    pub fn for_path(&self, which: Which) -> (NodeLabel, NodeLabel) {
        match which {
            Which::P => (self.start_p, self.end_p),
            Which::Q => (self.start_q, self.end_q),
        }
    }
}

pub fn endpoint_spec(n: Dimension, kind: ConstructionKind) -> Result<EndpointSpec> {
    kind.check(n)?;
    let top = 1u64 << (n.get() - 1);
    let next = 1u64 << (n.get() - 2);
    let (start_p, end_p, start_q, end_q) = match kind {
        ConstructionKind::Edh => (0, top | next, 0b100, next | 0b100),
        ConstructionKind::Ndc => (1, next | 1, 0, top | next),
    };
    Ok(EndpointSpec {
        kind,
        n,
        start_p: NodeLabel(start_p),
        end_p: NodeLabel(end_p),
        start_q: NodeLabel(start_q),
        end_q: NodeLabel(end_q),
    })
}

/// One doubling-twice step: four prefixed copies of `sub` chained in `order`.
fn expand(sub: &[u64], m: Dimension, order: &[Quadrant; 4]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(sub.len() * 4);
    for (slot, quadrant) in order.iter().enumerate() {
        let prefix = quadrant.prefix(m);
        let junction = out.len();
        if slot % 2 == 1 {
            out.extend(sub.iter().rev().map(|v| v | prefix));
        } else {
            out.extend(sub.iter().map(|v| v | prefix));
        }
        if slot > 0 && !adjacent_unchecked(out[junction - 1], out[junction], m) {
            return Err(Error::Construction(format!(
                "junction {:b} -> {:b} into quadrant {quadrant} of TQ_{m} is not an edge",
                out[junction - 1],
                out[junction]
            )));
        }
    }
    Ok(out)
}

fn build_pair(n: Dimension, kind: ConstructionKind, cap: NodeCap) -> Result<(Path, Path)> {
    kind.check(n)?;
    n.ensure_within(cap)?;
    let mut p: Vec<u64> = base_table(kind, Which::P).to_vec();
    let mut q: Vec<u64> = base_table(kind, Which::Q).to_vec();
    let mut m = kind.base_dimension();
    while m < n.get() {
        m += 2;
        let dim = Dimension::new(m)?;
        p = expand(&p, dim, quadrant_order(kind, Which::P))?;
        q = expand(&q, dim, quadrant_order(kind, Which::Q))?;
    }
    let wrap = |v: Vec<u64>| Path::from_trusted(n, v.into_iter().map(NodeLabel).collect());
    Ok((wrap(p), wrap(q)))
}

/// Two edge-disjoint Hamiltonian paths of `TQ_n`, odd `n >= 5`.
pub fn edh_paths(n: Dimension) -> Result<(Path, Path)> {
    edh_paths_with_cap(n, NodeCap::default())
}

pub fn edh_paths_with_cap(n: Dimension, cap: NodeCap) -> Result<(Path, Path)> {
    build_pair(n, ConstructionKind::Edh, cap)
}

/// Two node-disjoint paths of `2^(n-1)` nodes each covering `TQ_n`, odd `n >= 3`.
pub fn ndc_paths(n: Dimension) -> Result<(Path, Path)> {
    ndc_paths_with_cap(n, NodeCap::default())
}

pub fn ndc_paths_with_cap(n: Dimension, cap: NodeCap) -> Result<(Path, Path)> {
    build_pair(n, ConstructionKind::Ndc, cap)
}

/// Builds the pair for `kind` and closes both paths.
pub fn cycles_with_cap(
    n: Dimension,
    kind: ConstructionKind,
    cap: NodeCap,
) -> Result<(Cycle, Cycle)> {
    let (p, q) = build_pair(n, kind, cap)?;
    let close = |path: Path| {
        path.close()
            .map_err(|e| Error::Construction(format!("closing edge missing: {e}")))
    };
    let (cp, cq) = (close(p)?, close(q)?);
    if kind == ConstructionKind::Edh {
        let (ep, eq) = (cp.closing_edge(), cq.closing_edge());
        if ep == eq || cq.edges().any(|e| e == ep) || cp.edges().any(|e| e == eq) {
            return Err(Error::Construction(
                "closing edges collide with the other cycle".into(),
            ));
        }
    }
    Ok((cp, cq))
}

/// Two edge-disjoint Hamiltonian cycles of `TQ_n`, odd `n >= 5`.
pub fn edh_cycles(n: Dimension) -> Result<(Cycle, Cycle)> {
    cycles_with_cap(n, ConstructionKind::Edh, NodeCap::default())
}

/// Two equal node-disjoint cycles of `TQ_n`, odd `n >= 3`.
pub fn ndc_cycles(n: Dimension) -> Result<(Cycle, Cycle)> {
    cycles_with_cap(n, ConstructionKind::Ndc, NodeCap::default())
}

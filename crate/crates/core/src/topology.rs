//! The twisted cube `TQ_n` as an implicit graph.
//!
//! Nodes are `n`-bit labels with bit `i` holding `b_i`. `TQ_1` is `K_2`; for
//! odd `n >= 3` the graph is four copies of `TQ_{n-2}` (selected by the top
//! two bits) joined by cross edges. Every node `b` has two cross neighbors:
//! `b` with bit `n-1` flipped, and either `b` with bits `n-1, n-2` flipped
//! (when `parity(b, n-3) == 0`) or `b` with bit `n-2` flipped (when it is 1).
//! Unrolling the recursion, the neighbors of `b` come in "levels" `m = n,
//! n-2, ..., 3`, each contributing two cross neighbors that differ from `b`
//! only in bits `m-1` and `m-2`, plus the level-1 neighbor `b ^ 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension supported by label arithmetic.
pub const MAX_DIMENSION: u32 = 61;

/// Default cap on dimensions for operations that materialize every node.
pub const DEFAULT_NODE_CAP: u32 = 25;

/// Dimension `n` of a twisted cube. Always odd, `1 <= n <= 61`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange(n));
        }
        if n.is_multiple_of(2) {
            return Err(Error::EvenDimension(n));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `2^n`.
    pub fn node_count(self) -> u64 {
        1u64 << self.0
    }

    /// `n * 2^(n-1)`.
    pub fn edge_count(self) -> u64 {
        u64::from(self.0) << (self.0 - 1)
    }

    pub fn mask(self) -> u64 {
        self.node_count() - 1
    }

    pub fn contains(self, label: NodeLabel) -> bool {
        label.0 < self.node_count()
    }

    pub fn check(self, label: NodeLabel) -> Result<NodeLabel> {
        if self.contains(label) {
            Ok(label)
        } else {
            Err(Error::LabelOutOfRange {
                label: label.0,
                n: self.0,
            })
        }
    }

    /// The dimension of the four subcubes, if any.
    pub fn sub(self) -> Option<Dimension> {
        (self.0 >= 3).then(|| Dimension(self.0 - 2))
    }

    /// Errors unless every node of `TQ_n` can be materialized under `cap`.
    pub fn ensure_within(self, cap: NodeCap) -> Result<()> {
        if self.0 > cap.get() {
            Err(Error::Capacity {
                n: self.0,
                cap: cap.get(),
            })
        } else {
            Ok(())
        }
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Dimension::new(n)
    }
}

impl<'de> Deserialize<'de> for Dimension {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u32::deserialize(d)?;
        Dimension::new(n).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Upper bound on `n` for operations whose memory grows with `2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeCap(u32);

impl NodeCap {
    pub const fn new(max_n: u32) -> Self {
        NodeCap(max_n)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl Default for NodeCap {
    fn default() -> Self {
        NodeCap(DEFAULT_NODE_CAP)
    }
}

/// A node of `TQ_n`; bit `i` holds `b_i`. The dimension is carried separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeLabel(pub u64);

impl NodeLabel {
    pub fn value(self) -> u64 {
        self.0
    }

    pub fn bit(self, i: u32) -> u8 {
        ((self.0 >> i) & 1) as u8
    }

    pub fn flip(self, mask: u64) -> NodeLabel {
        NodeLabel(self.0 ^ mask)
    }
}

impl From<u64> for NodeLabel {
    fn from(v: u64) -> Self {
        NodeLabel(v)
    }
}

impl fmt::Binary for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Binary::fmt(&self.0, f)
    }
}

/// An undirected edge, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    u: NodeLabel,
    v: NodeLabel,
}

impl Edge {
    /// Canonicalizes the pair without checking adjacency.
    pub fn new(a: NodeLabel, b: NodeLabel) -> Edge {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    /// Canonicalizes the pair and checks that it is an edge of `TQ_n`.
    pub fn checked(a: NodeLabel, b: NodeLabel, n: Dimension) -> Result<Edge> {
        if is_adjacent(a, b, n)? {
            Ok(Edge::new(a, b))
        } else {
            Err(Error::Junction {
                left: a.0,
                right: b.0,
                n: n.get(),
            })
        }
    }

    pub fn u(self) -> NodeLabel {
        self.u
    }

    pub fn v(self) -> NodeLabel {
        self.v
    }
}

/// Which of the four `TQ_{n-2}` copies a node lives in: `(b_{n-1}, b_{n-2})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quadrant {
    pub high: u8,
    pub low: u8,
}

impl Quadrant {
    pub const Q00: Quadrant = Quadrant { high: 0, low: 0 };
    pub const Q10: Quadrant = Quadrant { high: 1, low: 0 };
    pub const Q01: Quadrant = Quadrant { high: 0, low: 1 };
    pub const Q11: Quadrant = Quadrant { high: 1, low: 1 };

    /// The label bits this quadrant sets in a `TQ_n` label.
    pub fn prefix(self, n: Dimension) -> u64 {
        let n = n.get();
        (u64::from(self.high) << (n - 1)) | (u64::from(self.low) << (n - 2))
    }
}

impl fmt::Display for Quadrant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.high, self.low)
    }
}

#[inline]
fn low_parity(b: u64, i: u32) -> u8 {
    let mask = if i >= 63 {
        u64::MAX
    } else {
        (1u64 << (i + 1)) - 1
    };
    ((b & mask).count_ones() & 1) as u8
}

/// `b_i ^ b_{i-1} ^ ... ^ b_0`.
pub fn parity(b: NodeLabel, i: u32, n: Dimension) -> Result<u8> {
    n.check(b)?;
    if i >= n.get() {
        return Err(Error::BitIndexOutOfRange {
            index: i,
            n: n.get(),
        });
    }
    Ok(low_parity(b.0, i))
}

/// Iterator over the `n` neighbors of a node, top level first.
#[derive(Clone, Debug)]
pub struct Neighbors {
    b: u64,
    // Current level; 1 is the final single-bit level, 0 means exhausted.
    level: u32,
    // Second cross neighbor of the current level still pending.
    pending: Option<u64>,
    remaining: usize,
}

impl Iterator for Neighbors {
    type Item = NodeLabel;

    fn next(&mut self) -> Option<NodeLabel> {
        if let Some(v) = self.pending.take() {
            self.remaining -= 1;
            return Some(NodeLabel(v));
        }
        match self.level {
            0 => None,
            1 => {
                self.level = 0;
                self.remaining -= 1;
                Some(NodeLabel(self.b ^ 1))
            }
            m => {
                let hi = 1u64 << (m - 1);
                let lo = 1u64 << (m - 2);
                let second = if low_parity(self.b, m - 3) == 0 {
                    self.b ^ hi ^ lo
                } else {
                    self.b ^ lo
                };
                self.pending = Some(second);
                self.level = m - 2;
                self.remaining -= 1;
                Some(NodeLabel(self.b ^ hi))
            }
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for Neighbors {}

pub(crate) fn neighbors_unchecked(b: u64, n: Dimension) -> Neighbors {
    Neighbors {
        b,
        level: n.get(),
        pending: None,
        remaining: n.get() as usize,
    }
}

/// The `n` neighbors of `b` in `TQ_n`.
pub fn neighbors(b: NodeLabel, n: Dimension) -> Result<Neighbors> {
    n.check(b)?;
    Ok(neighbors_unchecked(b.0, n))
}

/// Adjacency without range checks; both labels must lie in `TQ_n`.
#[inline]
pub(crate) fn adjacent_unchecked(u: u64, v: u64, n: Dimension) -> bool {
    let diff = u ^ v;
    if diff == 0 {
        return false;
    }
    let top = 63 - diff.leading_zeros();
    if top == 0 {
        return diff == 1;
    }
    // Bits m-1 and m-2 of level m: m-1 is even (m odd).
    let level = if top.is_multiple_of(2) {
        top + 1
    } else {
        top + 2
    };
    if level > n.get() {
        return false;
    }
    let hi = 1u64 << (level - 1);
    let lo = 1u64 << (level - 2);
    if diff & !(hi | lo) != 0 {
        return false;
    }
    if diff == hi {
        return true;
    }
    if low_parity(u, level - 3) == 0 {
        diff == hi | lo
    } else {
        diff == lo
    }
}

/// Whether `{u, v}` is an edge of `TQ_n`.
pub fn is_adjacent(u: NodeLabel, v: NodeLabel, n: Dimension) -> Result<bool> {
    n.check(u)?;
    n.check(v)?;
    Ok(adjacent_unchecked(u.0, v.0, n))
}

/// Top-two-bit quadrant of `b`.
pub fn subcube_of(b: NodeLabel, n: Dimension) -> Result<Quadrant> {
    n.check(b)?;
    if n.get() < 3 {
        return Err(Error::NoSubcubes { n: n.get() });
    }
    Ok(Quadrant {
        high: b.bit(n.get() - 1),
        low: b.bit(n.get() - 2),
    })
}

/// Every edge of `TQ_n` once, ordered by `(min endpoint, max endpoint)`.
#[derive(Clone, Debug)]
pub struct EdgeStream {
    n: Dimension,
    next_node: u64,
    buffered: Vec<u64>,
    cursor: usize,
}

impl Iterator for EdgeStream {
    type Item = Edge;

    fn next(&mut self) -> Option<Edge> {
        loop {
            if self.cursor < self.buffered.len() {
                let u = self.next_node - 1;
                let v = self.buffered[self.cursor];
                self.cursor += 1;
                return Some(Edge::new(NodeLabel(u), NodeLabel(v)));
            }
            if self.next_node >= self.n.node_count() {
                return None;
            }
            let u = self.next_node;
            self.next_node += 1;
            self.buffered.clear();
            self.buffered.extend(
                neighbors_unchecked(u, self.n)
                    .map(|x| x.0)
                    .filter(|&v| v > u),
            );
            self.buffered.sort_unstable();
            self.cursor = 0;
        }
    }
}

pub fn edge_stream(n: Dimension) -> EdgeStream {
    EdgeStream {
        n,
        next_node: 0,
        buffered: Vec::with_capacity(n.get() as usize),
        cursor: 0,
    }
}

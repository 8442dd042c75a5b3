use std::collections::HashSet;

use crate::topology::{Dimension, NodeLabel};

/// Membership set over the labels of one `TQ_n`.
///
/// Dense bit array when the label space is small relative to the expected
/// number of members, hash set otherwise.
pub(crate) enum LabelSet {
    Dense { bits: Vec<u64>, len: usize },
    Sparse(HashSet<u64>),
}

impl LabelSet {
    pub(crate) fn new(n: Dimension, expected: usize) -> Self {
        let space = n.node_count();
        if n.get() <= 16 || space <= (expected as u64).saturating_mul(64) {
            let words = space.div_ceil(64) as usize;
            LabelSet::Dense {
                bits: vec![0; words],
                len: 0,
            }
        } else {
            LabelSet::Sparse(HashSet::with_capacity(expected))
        }
    }

    /// Returns false if already present. Labels must be in range.
    pub(crate) fn insert(&mut self, v: NodeLabel) -> bool {
        match self {
            LabelSet::Dense { bits, len } => {
                let (w, b) = ((v.0 / 64) as usize, v.0 % 64);
                let fresh = bits[w] & (1 << b) == 0;
                bits[w] |= 1 << b;
                *len += fresh as usize;
                fresh
            }
            LabelSet::Sparse(s) => s.insert(v.0),
        }
    }

    pub(crate) fn contains(&self, v: NodeLabel) -> bool {
        match self {
            LabelSet::Dense { bits, .. } => bits
                .get((v.0 / 64) as usize)
                .is_some_and(|w| w & (1 << (v.0 % 64)) != 0),
            LabelSet::Sparse(s) => s.contains(&v.0),
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            LabelSet::Dense { len, .. } => *len,
            LabelSet::Sparse(s) => s.len(),
        }
    }
}

use crate::error::Result;
use crate::topology::{Dimension, NodeLabel, Quadrant};

use super::{base_table, quadrant_order, ConstructionKind, Which};

/// Lazily yields the nodes of a constructed path without materializing it.
///
/// Each position is resolved by descending the 4-ary concatenation tree:
/// at dimension `m` the position picks a quadrant slot, slots 1 and 3 are
/// reversed copies (so the offset is mirrored), and the descent bottoms out
/// in the base table. Memory is constant; each item costs `O(n)`.
#[derive(Clone, Debug)]
pub struct PathStream {
    n: u32,
    base_dim: u32,
    base: &'static [u64],
    order: &'static [Quadrant; 4],
    front: u64,
    back: u64,
}

impl PathStream {
    /// Node at position `index` of the full path.
    fn node_at(&self, mut index: u64) -> NodeLabel {
        let mut label = 0u64;
        let mut m = self.n;
        let mut len = (self.base.len() as u64) << (self.n - self.base_dim);
        while m > self.base_dim {
            let child = len / 4;
            let slot = (index / child) as usize;
            let mut offset = index % child;
            if slot % 2 == 1 {
                offset = child - 1 - offset;
            }
            let quadrant = self.order[slot];
            label |= (u64::from(quadrant.high) << (m - 1)) | (u64::from(quadrant.low) << (m - 2));
            index = offset;
            len = child;
            m -= 2;
        }
        NodeLabel(label | self.base[index as usize])
    }

    /// Total number of nodes in the path.
    pub fn path_len(&self) -> u64 {
        (self.base.len() as u64) << (self.n - self.base_dim)
    }
}

impl Iterator for PathStream {
    type Item = NodeLabel;

    fn next(&mut self) -> Option<NodeLabel> {
        if self.front >= self.back {
            return None;
        }
        let v = self.node_at(self.front);
        self.front += 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.back - self.front;
        match usize::try_from(rest) {
            Ok(r) => (r, Some(r)),
            Err(_) => (usize::MAX, None),
        }
    }

    fn nth(&mut self, k: usize) -> Option<NodeLabel> {
        self.front = self.front.saturating_add(k as u64).min(self.back);
        self.next()
    }
}

impl DoubleEndedIterator for PathStream {
    fn next_back(&mut self) -> Option<NodeLabel> {
        if self.front >= self.back {
            return None;
        }
        self.back -= 1;
        Some(self.node_at(self.back))
    }
}

impl ExactSizeIterator for PathStream {}

/// Streams path `which` of construction `kind` in `TQ_n`.
pub fn path_stream(n: Dimension, kind: ConstructionKind, which: Which) -> Result<PathStream> {
    kind.check(n)?;
    let base = base_table(kind, which);
    let base_dim = kind.base_dimension();
    let stream = PathStream {
        n: n.get(),
        base_dim,
        base,
        order: quadrant_order(kind, which),
        front: 0,
        back: 0,
    };
    let back = stream.path_len();
    Ok(PathStream { back, ..stream })
}

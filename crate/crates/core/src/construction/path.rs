use crate::error::{Error, Result};
use crate::topology::{adjacent_unchecked, Dimension, Edge, NodeLabel};
use crate::util::LabelSet;

/// A sequence of distinct nodes of `TQ_n`, consecutive nodes adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    n: Dimension,
    nodes: Vec<NodeLabel>,
}

/// A path whose last node is adjacent to its first, with at least 3 nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    n: Dimension,
    nodes: Vec<NodeLabel>,
}

/// A borrowed node sequence plus whether it closes back on itself.
///
/// The checkers in [`crate::verification`] take routes rather than
/// [`Path`]/[`Cycle`] so that arbitrary (possibly broken) input can be
/// examined.
#[derive(Clone, Copy, Debug)]
pub struct Route<'a> {
    pub nodes: &'a [NodeLabel],
    pub closed: bool,
}

impl<'a> Route<'a> {
    pub fn open(nodes: &'a [NodeLabel]) -> Self {
        Route {
            nodes,
            closed: false,
        }
    }

    pub fn closed(nodes: &'a [NodeLabel]) -> Self {
        Route {
            nodes,
            closed: true,
        }
    }

    /// Every traversed pair, including the closing pair of a closed route.
    pub fn steps(&self) -> impl Iterator<Item = (NodeLabel, NodeLabel)> + 'a {
        let nodes = self.nodes;
        let closing = (self.closed && nodes.len() >= 2).then(|| (nodes[nodes.len() - 1], nodes[0]));
        nodes.windows(2).map(|w| (w[0], w[1])).chain(closing)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + 'a {
        self.steps().map(|(a, b)| Edge::new(a, b))
    }
}

fn check_nodes(n: Dimension, nodes: &[NodeLabel]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::EmptyPath);
    }
    let mut seen = LabelSet::new(n, nodes.len());
    for &v in nodes {
        n.check(v)?;
        if !seen.insert(v) {
            return Err(Error::Overlap { label: v.0 });
        }
    }
    for w in nodes.windows(2) {
        if !adjacent_unchecked(w[0].0, w[1].0, n) {
            return Err(Error::Junction {
                left: w[0].0,
                right: w[1].0,
                n: n.get(),
            });
        }
    }
    Ok(())
}

impl Path {
    /// Validates distinctness and adjacency.
    pub fn new(n: Dimension, nodes: Vec<NodeLabel>) -> Result<Path> {
        check_nodes(n, &nodes)?;
        Ok(Path { n, nodes })
    }

    pub(crate) fn from_trusted(n: Dimension, nodes: Vec<NodeLabel>) -> Path {
        debug_assert!(!nodes.is_empty());
        Path { n, nodes }
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn nodes(&self) -> &[NodeLabel] {
        &self.nodes
    }

    pub fn into_nodes(self) -> Vec<NodeLabel> {
        self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn start(&self) -> NodeLabel {
        self.nodes[0]
    }

    pub fn end(&self) -> NodeLabel {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn route(&self) -> Route<'_> {
        Route::open(&self.nodes)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.route().edges()
    }

    /// Same nodes, end to start.
    pub fn reversed(&self) -> Path {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        Path { n: self.n, nodes }
    }

    /// Adds the closing edge `end -> start`, which must exist.
    pub fn close(self) -> Result<Cycle> {
        Cycle::new(self.n, self.nodes)
    }
}

impl Cycle {
    pub fn new(n: Dimension, nodes: Vec<NodeLabel>) -> Result<Cycle> {
        if nodes.len() < 3 {
            return Err(Error::CycleTooShort(nodes.len()));
        }
        check_nodes(n, &nodes)?;
        let (first, last) = (nodes[0], nodes[nodes.len() - 1]);
        if !adjacent_unchecked(last.0, first.0, n) {
            return Err(Error::Junction {
                left: last.0,
                right: first.0,
                n: n.get(),
            });
        }
        Ok(Cycle { n, nodes })
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn nodes(&self) -> &[NodeLabel] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn route(&self) -> Route<'_> {
        Route::closed(&self.nodes)
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.route().edges()
    }

    /// The closing edge `end -> start`.
    pub fn closing_edge(&self) -> Edge {
        Edge::new(self.nodes[self.nodes.len() - 1], self.nodes[0])
    }

    /// Drops the closing edge.
    pub fn into_path(self) -> Path {
        Path {
            n: self.n,
            nodes: self.nodes,
        }
    }
}

/// Reversal of `p`.
pub fn reverse_path(p: &Path) -> Path {
    p.reversed()
}

/// `p1 => p2`: joins two node-disjoint paths across the edge `end(p1) - start(p2)`.
pub fn concat(p1: &Path, p2: &Path) -> Result<Path> {
    if p1.n != p2.n {
        return Err(Error::DimensionMismatch {
            left: p1.n.get(),
            right: p2.n.get(),
        });
    }
    let n = p1.n;
    let mut seen = LabelSet::new(n, p1.len());
    for &v in &p1.nodes {
        seen.insert(v);
    }
    if let Some(&dup) = p2.nodes.iter().find(|v| seen.contains(**v)) {
        return Err(Error::Overlap { label: dup.0 });
    }
    if !adjacent_unchecked(p1.end().0, p2.start().0, n) {
        return Err(Error::Junction {
            left: p1.end().0,
            right: p2.start().0,
            n: n.get(),
        });
    }
    let mut nodes = Vec::with_capacity(p1.len() + p2.len());
    nodes.extend_from_slice(&p1.nodes);
    nodes.extend_from_slice(&p2.nodes);
    Ok(Path { n, nodes })
}

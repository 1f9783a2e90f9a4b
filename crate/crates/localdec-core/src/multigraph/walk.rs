use super::{Edge, Multigraph, Vertex};
use crate::error::{Error, Result};
use alloc::vec::Vec;

/// One traversal of an edge. `forward` runs from the lower-index end to
/// the higher one; for a loop it picks one of the two orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub edge: Edge,
    pub forward: bool,
}

impl OrientedEdge {
    pub fn new(edge: Edge, forward: bool) -> Self {
        OrientedEdge { edge, forward }
    }

    pub fn reverse(self) -> Self {
        OrientedEdge { edge: self.edge, forward: !self.forward }
    }

    pub fn tail(self, g: &Multigraph) -> Vertex {
        let (a, b) = g.ends(self.edge);
        if self.forward {
            a
        } else {
            b
        }
    }

    pub fn head(self, g: &Multigraph) -> Vertex {
        let (a, b) = g.ends(self.edge);
        if self.forward {
            b
        } else {
            a
        }
    }

    /// The traversal of `e` starting at `from` (forward for loops).
    pub fn leaving(g: &Multigraph, e: Edge, from: Vertex) -> Self {
        OrientedEdge { edge: e, forward: g.ends(e).0 == from }
    }
}

/// A walk: a start vertex and a sequence of edge traversals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    pub start: Vertex,
    pub steps: Vec<OrientedEdge>,
}

impl Walk {
    pub fn trivial(v: Vertex) -> Self {
        Walk { start: v, steps: Vec::new() }
    }

    /// Builds a walk from its alternating vertex and edge sequence
    /// `v0 e0 v1 … vk`, given as `v0` and the pairs `(e_i, v_{i+1})`.
    /// A loop in the sequence is read in its forward orientation.
    pub fn from_sequence(g: &Multigraph, v0: Vertex, seq: &[(Edge, Vertex)]) -> Result<Self> {
        let mut cur = v0;
        let mut steps = Vec::with_capacity(seq.len());
        for (i, &(e, next)) in seq.iter().enumerate() {
            if e >= g.edge_count() {
                return Err(Error::MalformedWalk { index: i });
            }
            let (a, b) = g.ends(e);
            let step = if a == cur && b == next {
                OrientedEdge::new(e, true)
            } else if b == cur && a == next {
                OrientedEdge::new(e, false)
            } else {
                return Err(Error::MalformedWalk { index: i });
            };
            steps.push(step);
            cur = next;
        }
        Ok(Walk { start: v0, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self, g: &Multigraph) -> Vertex {
        self.steps.last().map_or(self.start, |s| s.head(g))
    }

    pub fn is_closed(&self, g: &Multigraph) -> bool {
        self.end(g) == self.start
    }

    /// The vertex sequence `v0 … vk`.
    pub fn vertices(&self, g: &Multigraph) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(self.start);
        out.extend(self.steps.iter().map(|s| s.head(g)));
        out
    }

    /// Checks that every step leaves the vertex the previous one reached.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.start >= g.vertex_count() {
            return Err(Error::MalformedWalk { index: 0 });
        }
        let mut cur = self.start;
        for (i, s) in self.steps.iter().enumerate() {
            if s.edge >= g.edge_count() || s.tail(g) != cur {
                return Err(Error::MalformedWalk { index: i });
            }
            cur = s.head(g);
        }
        Ok(())
    }

    pub fn reversed(&self, g: &Multigraph) -> Walk {
        Walk {
            start: self.end(g),
            steps: self.steps.iter().rev().map(|s| s.reverse()).collect(),
        }
    }

    /// Concatenation; `other` must start where `self` ends.
    pub fn concat(&self, other: &Walk) -> Walk {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Walk { start: self.start, steps }
    }
}

/// Removes immediate backtracks `u e v e u` until none are left.
///
/// Cancellation is between a traversal and its reverse, so a loop run
/// twice in the same direction is kept; this is what makes a loop chord
/// generate an infinite cyclic group rather than an involution.
pub fn reduce_walk(g: &Multigraph, w: &Walk) -> Result<Walk> {
    w.validate(g)?;
    let mut stack: Vec<OrientedEdge> = Vec::with_capacity(w.steps.len());
    for &s in &w.steps {
        if stack.last() == Some(&s.reverse()) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    Ok(Walk { start: w.start, steps: stack })
}

pub fn homotopic(g: &Multigraph, w1: &Walk, w2: &Walk) -> Result<bool> {
    Ok(reduce_walk(g, w1)? == reduce_walk(g, w2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn path3() -> Multigraph {
        // u=0, v=1, w=2 with e=0 (uv), f=1 (vw)
        Multigraph::from_edges(3, &[(0, 1), (1, 2)])
    }

    #[test]
    fn trivial_walk_is_reduced() {
        let g = path3();
        assert_eq!(reduce_walk(&g, &Walk::trivial(1)).unwrap(), Walk::trivial(1));
    }

    #[test]
    fn backtrack_cancels() {
        let g = path3();
        let w = Walk::from_sequence(&g, 0, &[(0, 1), (0, 0)]).unwrap();
        assert_eq!(reduce_walk(&g, &w).unwrap(), Walk::trivial(0));
    }

    #[test]
    fn nested_cancellation() {
        let g = path3();
        let w = Walk::from_sequence(&g, 0, &[(0, 1), (1, 2), (1, 1), (0, 0)]).unwrap();
        assert_eq!(reduce_walk(&g, &w).unwrap(), Walk::trivial(0));
    }

    #[test]
    fn malformed_walk_rejected() {
        let g = path3();
        assert_eq!(
            Walk::from_sequence(&g, 0, &[(1, 2)]),
            Err(Error::MalformedWalk { index: 0 })
        );
        let bad = Walk { start: 0, steps: vec![OrientedEdge::new(1, true)] };
        assert!(reduce_walk(&g, &bad).is_err());
    }

    #[test]
    fn triangle_directions_not_homotopic() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let a = Walk::from_sequence(&g, 0, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = a.reversed(&g);
        assert!(!homotopic(&g, &a, &b).unwrap());
        assert!(homotopic(&g, &a, &a).unwrap());
    }

    #[test]
    fn loop_twice_same_direction_is_kept() {
        let g = Multigraph::from_edges(1, &[(0, 0)]);
        let w = Walk { start: 0, steps: vec![OrientedEdge::new(0, true); 2] };
        assert_eq!(reduce_walk(&g, &w).unwrap().len(), 2);
        let back = Walk { start: 0, steps: vec![OrientedEdge::new(0, true), OrientedEdge::new(0, false)] };
        assert!(reduce_walk(&g, &back).unwrap().is_empty());
    }
}

//! Edge labels and 128-bit edge sets.
//!
//! All `N(N-1)/2` vertex pairs of a point set get a dense index in
//! lexicographic order, so a plane graph is a single `u128` and subgraph
//! tests are one mask operation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::{segments_cross, Point};

/// Largest point set whose pairs fit in an [`EdgeSet`].
pub const MAX_POINTS: usize = 16;

/// An undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: usize) -> usize {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// A set of edge indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet(pub u128);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    #[inline]
    pub fn single(i: usize) -> Self {
        EdgeSet(1u128 << i)
    }
    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }
    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }
    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }
    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    #[inline]
    pub fn is_subset(self, other: EdgeSet) -> bool {
        self.0 & !other.0 == 0
    }
    #[inline]
    pub fn union(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 | other.0)
    }
    #[inline]
    pub fn intersection(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & other.0)
    }
    #[inline]
    pub fn difference(self, other: EdgeSet) -> EdgeSet {
        EdgeSet(self.0 & !other.0)
    }
    #[inline]
    pub fn is_disjoint(self, other: EdgeSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = EdgeSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Dense pair indexing plus the pairwise crossing relation of a point set.
#[derive(Debug, Clone)]
pub struct EdgeTable {
    n: usize,
    index: Vec<u8>,
    pairs: Vec<Edge>,
    crossing: Vec<EdgeSet>,
}

impl EdgeTable {
    pub(crate) fn new(points: &[Point]) -> Option<Self> {
        let n = points.len();
        if n > MAX_POINTS {
            return None;
        }
        let mut index = vec![u8::MAX; n * n];
        let mut pairs = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        for a in 0..n {
            for b in a + 1..n {
                let i = pairs.len() as u8;
                index[a * n + b] = i;
                index[b * n + a] = i;
                pairs.push(Edge(a, b));
            }
        }
        let crossing = pairs
            .iter()
            .map(|&Edge(a, b)| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(_, &Edge(c, d))| {
                        (a, b) != (c, d)
                            && segments_cross(points[a], points[b], points[c], points[d])
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Some(EdgeTable {
            n,
            index,
            pairs,
            crossing,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_pairs(&self) -> usize {
        self.pairs.len()
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a != b);
        self.index[a * self.n + b] as usize
    }

    #[inline]
    pub fn edge(&self, i: usize) -> Edge {
        self.pairs[i]
    }

    /// Edges whose open segments cross edge `i`.
    #[inline]
    pub fn crossing(&self, i: usize) -> EdgeSet {
        self.crossing[i]
    }

    pub fn all(&self) -> EdgeSet {
        EdgeSet((0..self.pairs.len()).fold(0u128, |m, i| m | 1u128 << i))
    }

    pub fn set_of(&self, edges: impl IntoIterator<Item = Edge>) -> EdgeSet {
        edges.into_iter().map(|e| self.index(e.0, e.1)).collect()
    }

    pub fn edges_of(&self, set: EdgeSet) -> Vec<Edge> {
        set.iter().map(|i| self.pairs[i]).collect()
    }

    /// Neighbor masks per vertex.
    pub fn adjacency(&self, set: EdgeSet) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for i in set.iter() {
            let Edge(a, b) = self.pairs[i];
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    /// True iff no two edges of the set cross.
    pub fn is_crossing_free(&self, set: EdgeSet) -> bool {
        set.iter().all(|i| self.crossing[i].is_disjoint(set))
    }
}

/// Iterates set bits of a vertex mask.
pub(crate) fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_lexicographic() {
        let pts: Vec<Point> = (0..5).map(|i| Point::new(i, i * i)).collect();
        let t = EdgeTable::new(&pts).unwrap();
        assert_eq!(t.num_pairs(), 10);
        assert_eq!(t.edge(0), Edge(0, 1));
        assert_eq!(t.edge(4), Edge(1, 2));
        assert_eq!(t.index(4, 3), 9);
        for i in 0..10 {
            let e = t.edge(i);
            assert_eq!(t.index(e.0, e.1), i);
        }
    }

    #[test]
    fn crossing_is_symmetric() {
        let pts = vec![
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(4, 4),
            Point::new(0, 4),
            Point::new(1, 2),
        ];
        let t = EdgeTable::new(&pts).unwrap();
        for i in 0..t.num_pairs() {
            for j in t.crossing(i).iter() {
                assert!(t.crossing(j).contains(i));
            }
        }
        let d1 = t.index(0, 2);
        let d2 = t.index(1, 3);
        assert!(t.crossing(d1).contains(d2));
    }

    #[test]
    fn set_ops() {
        let mut s = EdgeSet::EMPTY;
        s.insert(3);
        s.insert(100);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 100]);
        assert!(EdgeSet::single(3).is_subset(s));
        s.remove(3);
        assert_eq!(s.len(), 1);
    }
}

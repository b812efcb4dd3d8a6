//! Triangulations of a point set and their local structure.

mod decomposition;
mod enumerate;

pub use decomposition::{
    convex_decomposition_from_matching, is_ps_flippable_set, max_ps_flippable, PsFlippableSet,
};
pub use enumerate::{enumerate_triangulations, enumerate_triangulations_backtracking};

use std::sync::Arc;

use crate::edges::{bits, Edge, EdgeSet, EdgeTable};
use crate::error::{Error, Result};
use crate::geom::{cross, PointSet};
use crate::plane_graph::{hull_edge_set, sort_ccw, PlaneGraph};

/// A maximal plane graph: every bounded face is a triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    graph: PlaneGraph,
}

/// Edge count of every triangulation: `3N - 3 - h`.
pub fn triangulation_edge_count(points: &PointSet) -> usize {
    3 * points.len() - 3 - points.h()
}

impl Triangulation {
    /// Accepts a plane graph with exactly `3N - 3 - h` edges, which for a
    /// crossing-free graph is equivalent to maximality.
    pub fn from_graph(graph: PlaneGraph) -> Result<Self> {
        let ps = graph.point_set();
        if ps.len() < 3 {
            return Err(Error::NotTriangulation("fewer than three points".into()));
        }
        let want = triangulation_edge_count(ps);
        if graph.num_edges() != want {
            return Err(Error::NotTriangulation(format!(
                "{} edges, expected {want}",
                graph.num_edges()
            )));
        }
        Ok(Triangulation { graph })
    }

    pub(crate) fn from_set_unchecked(points: Arc<PointSet>, set: EdgeSet) -> Self {
        Triangulation {
            graph: PlaneGraph::from_set_unchecked(points, set),
        }
    }

    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub fn into_graph(self) -> PlaneGraph {
        self.graph
    }

    pub fn point_set(&self) -> &Arc<PointSet> {
        self.graph.point_set()
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.graph.edge_set()
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.graph.edges()
    }

    fn table(&self) -> &EdgeTable {
        self.graph.table()
    }

    /// Edges not on the convex hull boundary.
    pub fn interior_edges(&self) -> EdgeSet {
        let hull = hull_edge_set(self.point_set()).expect("tabled point set");
        self.edge_set().difference(hull)
    }

    /// Third vertices of the triangles on the left and right of `a -> b`.
    /// `None` on a side with no triangle (hull edges).
    pub fn apexes(&self, e: Edge) -> (Option<usize>, Option<usize>) {
        let adj = self.graph.adjacency();
        apexes_with(self.point_set(), &adj, e.0, e.1)
    }

    /// Interior edges whose two triangles form a convex quadrilateral.
    pub fn flippable_edges(&self) -> EdgeSet {
        flippable_in(self.point_set(), self.edge_set())
    }

    /// `flip(T)`: the number of flippable edges.
    pub fn flip_count(&self) -> usize {
        self.flippable_edges().len()
    }

    /// Replaces a flippable edge by the other diagonal of its quadrilateral.
    pub fn flip(&self, e: Edge) -> Result<Triangulation> {
        let t = self.table();
        if e.0 == e.1
            || e.1 >= self.point_set().len()
            || !self.edge_set().contains(t.index(e.0, e.1))
        {
            return Err(Error::NotFlippable(e.0, e.1));
        }
        match flip_set(self.point_set(), self.edge_set(), e) {
            Some(set) => Ok(Triangulation::from_set_unchecked(
                Arc::clone(self.point_set()),
                set,
            )),
            None => Err(Error::NotFlippable(e.0, e.1)),
        }
    }

    /// The diagonal that replaces `e` when flipped.
    pub fn flip_partner(&self, e: Edge) -> Option<Edge> {
        match self.apexes(e) {
            (Some(c), Some(d)) => Some(Edge::new(c, d)),
            _ => None,
        }
    }

    /// `v3(T)`: interior vertices of degree exactly three.
    pub fn v3(&self) -> usize {
        let adj = self.graph.adjacency();
        self.point_set()
            .interior()
            .iter()
            .filter(|&&p| adj[p].count_ones() == 3)
            .count()
    }

    /// Edges at interior `p` whose two neighboring angular gaps sum to more
    /// than `π`, i.e. that a line through `p` separates from the other edges.
    pub fn separable_edges_at(&self, p: usize) -> Result<Vec<Edge>> {
        let ps = self.point_set();
        if p >= ps.len() {
            return Err(Error::VertexOutOfRange(p));
        }
        if ps.is_hull_vertex(p) {
            return Err(Error::NotInterior(p));
        }
        let ring = self.graph.neighbors_ccw(p);
        let k = ring.len();
        let pts = ps.points();
        let mut out: Vec<Edge> = (0..k)
            .filter(|&i| cross(pts[p], pts[ring[(i + k - 1) % k]], pts[ring[(i + 1) % k]]) < 0)
            .map(|i| Edge::new(p, ring[i]))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Left/right apex of the edge `a -> b` given neighbor masks.
pub(crate) fn apexes_with(
    ps: &PointSet,
    adj: &[u32],
    a: usize,
    b: usize,
) -> (Option<usize>, Option<usize>) {
    let pts = ps.points();
    let (pa, pb) = (pts[a], pts[b]);
    let mut left: Option<usize> = None;
    let mut right: Option<usize> = None;
    for c in bits(adj[a] & adj[b]) {
        let pc = pts[c];
        if cross(pa, pb, pc) > 0 {
            // smallest counterclockwise angle from b around a
            if left.is_none_or(|l| cross(pa, pc, pts[l]) > 0) {
                left = Some(c);
            }
        } else if right.is_none_or(|r| cross(pa, pc, pts[r]) < 0) {
            right = Some(c);
        }
    }
    (left, right)
}

pub(crate) fn flippable_in(ps: &PointSet, set: EdgeSet) -> EdgeSet {
    let t = ps.table().expect("tabled point set");
    let adj = t.adjacency(set);
    set.iter()
        .filter(|&i| {
            let Edge(a, b) = t.edge(i);
            match apexes_with(ps, &adj, a, b) {
                (Some(c), Some(d)) => t.crossing(i).contains(t.index(c, d)),
                _ => false,
            }
        })
        .collect()
}

pub(crate) fn flip_set(ps: &PointSet, set: EdgeSet, e: Edge) -> Option<EdgeSet> {
    let t = ps.table().expect("tabled point set");
    let adj = t.adjacency(set);
    let i = t.index(e.0, e.1);
    match apexes_with(ps, &adj, e.0, e.1) {
        (Some(c), Some(d)) if t.crossing(i).contains(t.index(c, d)) => {
            let mut out = set;
            out.remove(i);
            out.insert(t.index(c, d));
            Some(out)
        }
        _ => None,
    }
}

/// Counterclockwise neighbor rings of a triangulation, per vertex.
pub(crate) fn rings(ps: &PointSet, set: EdgeSet) -> Vec<Vec<usize>> {
    let t = ps.table().expect("tabled point set");
    t.adjacency(set)
        .into_iter()
        .enumerate()
        .map(|(v, m)| {
            let mut nb: Vec<usize> = bits(m).collect();
            sort_ccw(ps.points(), v, &mut nb);
            nb
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::geom::Point;

    fn set(pts: &[(i64, i64)]) -> Arc<PointSet> {
        Arc::new(PointSet::new(pts.iter().map(|&p| Point::from(p)).collect()).unwrap())
    }

    fn tri_center() -> Arc<PointSet> {
        set(&[(0, 0), (8, 0), (4, 8), (4, 3)])
    }

    #[test]
    fn flippable_examples() {
        let q = set(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let ts = enumerate_triangulations(&q, &Budget::default()).unwrap();
        assert_eq!(ts.len(), 2);
        for t in &ts {
            assert_eq!(t.flip_count(), 1);
        }
        let tc = enumerate_triangulations(&tri_center(), &Budget::default()).unwrap();
        assert_eq!(tc.len(), 1);
        assert_eq!(tc[0].flip_count(), 0);
        assert_eq!(tc[0].v3(), 1);
    }

    #[test]
    fn flip_is_an_involution() {
        let q = set(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let ts = enumerate_triangulations(&q, &Budget::default()).unwrap();
        let e = Edge(0, 2);
        let t = ts.iter().find(|t| t.graph().has_edge(0, 2)).unwrap();
        let f = t.flip(e).unwrap();
        assert!(f.graph().has_edge(1, 3));
        assert_eq!(f.flip(Edge(1, 3)).unwrap(), *t);
        assert_eq!(t.flip(Edge(0, 1)).unwrap_err(), Error::NotFlippable(0, 1));
        assert_eq!(t.flip(Edge(1, 3)).unwrap_err(), Error::NotFlippable(1, 3));
    }

    #[test]
    fn separable_examples() {
        let tc = enumerate_triangulations(&tri_center(), &Budget::default()).unwrap();
        assert_eq!(tc[0].separable_edges_at(3).unwrap().len(), 3);
        assert_eq!(
            tc[0].separable_edges_at(0).unwrap_err(),
            Error::NotInterior(0)
        );
    }

    #[test]
    fn from_graph_checks_edge_count() {
        let q = set(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let hull = PlaneGraph::hull_cycle(q).unwrap();
        assert!(matches!(
            Triangulation::from_graph(hull),
            Err(Error::NotTriangulation(_))
        ));
    }
}

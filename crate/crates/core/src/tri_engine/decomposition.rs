use std::sync::Arc;

use super::{rings, Triangulation};
use crate::budget::Budget;
use crate::edges::{bits, Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::geom::{cross, Point};
use crate::plane_graph::{hull_edge_set, no_reflex_gap, PlaneGraph};

/// Interior edges of a triangulation whose removal leaves a convex
/// decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsFlippableSet {
    triangulation: Triangulation,
    edges: EdgeSet,
}

impl PsFlippableSet {
    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.triangulation.graph().table().edges_of(self.edges)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The convex decomposition `T \ F`.
    pub fn remainder(&self) -> PlaneGraph {
        PlaneGraph::from_set_unchecked(
            Arc::clone(self.triangulation.point_set()),
            self.triangulation.edge_set().difference(self.edges),
        )
    }
}

/// True iff `T \ F` is a convex decomposition. Edges of `F` outside the
/// interior edges of `T` make the answer false.
pub fn is_ps_flippable_set(t: &Triangulation, f: EdgeSet) -> bool {
    if !f.is_subset(t.interior_edges()) {
        return false;
    }
    let rest =
        PlaneGraph::from_set_unchecked(Arc::clone(t.point_set()), t.edge_set().difference(f));
    rest.is_convex_decomposition()
}

/// First neighbor of `p` strictly counterclockwise (`ccw = true`) or
/// clockwise from the ray `p -> away`, among `cands`.
fn first_from_ray(pts: &[Point], p: usize, away: Point, cands: u32, ccw: bool) -> Option<usize> {
    let pp = pts[p];
    let side = |w: usize| cross(pp, away, pts[w]);
    let mut best: Option<usize> = None;
    for w in bits(cands) {
        let s = side(w);
        assert!(s != 0, "ray from {p} passes through neighbor {w}");
        if (s > 0) != ccw {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) => {
                let c = cross(pp, pts[w], pts[b]);
                if ccw {
                    c > 0
                } else {
                    c < 0
                }
            }
        };
        if better {
            best = Some(w);
        }
    }
    best
}

/// Builds `M1 ⊆ D ⊆ T` by adding the hull and, at each interior vertex, the
/// first edges of `T` on either side of the ray opposite its matching edge.
/// Returns `D` and the ps-flippable remainder `F = T \ D`.
pub fn convex_decomposition_from_matching(
    t: &Triangulation,
    m1: &PlaneGraph,
) -> Result<(PlaneGraph, PsFlippableSet)> {
    let ps = t.point_set();
    if !crate::plane_graph::same_point_set(ps, m1.point_set()) {
        return Err(Error::MismatchedPointSet);
    }
    let adj_m = m1.adjacency();
    if adj_m.iter().any(|m| m.count_ones() != 1) {
        return Err(Error::NotPerfectMatching);
    }
    if !m1.edge_set().is_subset(t.edge_set()) {
        return Err(Error::NotSubgraph);
    }
    let table = t.graph().table();
    let pts = ps.points();
    let adj_t = t.graph().adjacency();
    let mut d = m1.edge_set().union(hull_edge_set(ps)?);
    for &p in ps.interior() {
        let q = adj_m[p].trailing_zeros() as usize;
        let (pp, pq) = (pts[p], pts[q]);
        let away = Point::new(2 * pp.x - pq.x, 2 * pp.y - pq.y);
        let others = adj_t[p] & !(1 << q);
        let e1 = first_from_ray(pts, p, away, others, false)
            .expect("interior vertex has a clockwise neighbor");
        let e2 = first_from_ray(pts, p, away, others, true)
            .expect("interior vertex has a counterclockwise neighbor");
        d.insert(table.index(p, e1));
        d.insert(table.index(p, e2));
    }
    let dg = PlaneGraph::from_set_unchecked(Arc::clone(ps), d);
    let f = PsFlippableSet {
        triangulation: t.clone(),
        edges: t.edge_set().difference(d),
    };
    Ok((dg, f))
}

struct Search<'a> {
    pts: &'a [Point],
    rings: Vec<Vec<usize>>,
    interior: Vec<bool>,
    cand: Vec<Edge>,
    idx: Vec<usize>,
    best: Vec<usize>,
    cur: Vec<usize>,
    alive: Vec<u32>,
}

impl Search<'_> {
    fn valid(&self, v: usize) -> bool {
        if !self.interior[v] {
            return true;
        }
        let ring: Vec<usize> = self.rings[v]
            .iter()
            .copied()
            .filter(|&w| self.alive[v] >> w & 1 == 1)
            .collect();
        no_reflex_gap(self.pts, v, &ring)
    }

    fn removable(&mut self, e: Edge) -> bool {
        self.set_alive(e, false);
        let ok = self.valid(e.0) && self.valid(e.1);
        self.set_alive(e, true);
        ok
    }

    fn set_alive(&mut self, Edge(a, b): Edge, on: bool) {
        if on {
            self.alive[a] |= 1 << b;
            self.alive[b] |= 1 << a;
        } else {
            self.alive[a] &= !(1 << b);
            self.alive[b] &= !(1 << a);
        }
    }

    fn run(&mut self, i: usize, meter: &mut crate::budget::Meter) -> Result<()> {
        meter.tick()?;
        if self.cur.len() + (self.cand.len() - i) <= self.best.len() {
            return Ok(());
        }
        if i == self.cand.len() {
            self.best = self.cur.clone();
            return Ok(());
        }
        let e = self.cand[i];
        if self.removable(e) {
            self.set_alive(e, false);
            self.cur.push(self.idx[i]);
            self.run(i + 1, meter)?;
            self.cur.pop();
            self.set_alive(e, true);
        }
        self.run(i + 1, meter)
    }
}

/// A maximum-cardinality ps-flippable set, by branch-and-bound over
/// interior-edge removals. Removal sets are feasible exactly when every
/// interior vertex keeps neighbors in all directions (no angular gap of `π`
/// or more), so feasibility is checked locally at the removed edge's ends.
pub fn max_ps_flippable(t: &Triangulation, budget: &Budget) -> Result<PsFlippableSet> {
    let ps = t.point_set();
    let table = t.graph().table();
    let interior_edges = t.interior_edges();
    let mut interior = vec![false; ps.len()];
    for &p in ps.interior() {
        interior[p] = true;
    }
    // Edges between hull vertices never affect validity.
    let (free, constrained): (Vec<usize>, Vec<usize>) = interior_edges.iter().partition(|&i| {
        let e = table.edge(i);
        !interior[e.0] && !interior[e.1]
    });
    let mut s = Search {
        pts: ps.points(),
        rings: rings(ps, t.edge_set()),
        interior,
        cand: constrained.iter().map(|&i| table.edge(i)).collect(),
        idx: constrained.clone(),
        best: Vec::new(),
        cur: Vec::new(),
        alive: table.adjacency(t.edge_set()),
    };
    // Greedy incumbent to tighten the bound from the start.
    for (k, &e) in s.cand.clone().iter().enumerate() {
        if s.removable(e) {
            s.set_alive(e, false);
            s.best.push(s.idx[k]);
        }
    }
    s.alive = table.adjacency(t.edge_set());
    let mut meter = budget.meter("max ps-flippable search");
    s.run(0, &mut meter)?;
    let edges: EdgeSet = free.into_iter().chain(s.best.iter().copied()).collect();
    debug_assert!(is_ps_flippable_set(t, edges));
    Ok(PsFlippableSet {
        triangulation: t.clone(),
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::PointSet;
    use crate::tri_engine::enumerate_triangulations;

    fn set(pts: &[(i64, i64)]) -> Arc<PointSet> {
        Arc::new(PointSet::new(pts.iter().map(|&p| Point::from(p)).collect()).unwrap())
    }

    #[test]
    fn convex_position_removes_every_diagonal() {
        let ps = Arc::new(PointSet::new((0..7).map(|i| Point::new(i, i * i)).collect()).unwrap());
        for t in enumerate_triangulations(&ps, &Budget::default()).unwrap() {
            assert_eq!(max_ps_flippable(&t, &Budget::default()).unwrap().len(), 4);
        }
    }

    #[test]
    fn triangle_with_center_has_none() {
        let ps = set(&[(0, 0), (8, 0), (4, 8), (4, 3)]);
        let t = &enumerate_triangulations(&ps, &Budget::default()).unwrap()[0];
        assert!(max_ps_flippable(t, &Budget::default()).unwrap().is_empty());
        assert!(is_ps_flippable_set(t, EdgeSet::EMPTY));
    }

    #[test]
    fn maximum_matches_exhaustive_search() {
        let ps = set(&[(0, 0), (20, 1), (18, 17), (2, 15), (9, 4), (11, 11), (6, 9)]);
        for t in enumerate_triangulations(&ps, &Budget::default()).unwrap() {
            let inner: Vec<usize> = t.interior_edges().iter().collect();
            let mut best = 0;
            for mask in 0u32..1 << inner.len() {
                let f: EdgeSet = inner
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                if f.len() > best && is_ps_flippable_set(&t, f) {
                    best = f.len();
                }
            }
            let got = max_ps_flippable(&t, &Budget::default()).unwrap();
            assert_eq!(got.len(), best);
            assert!(is_ps_flippable_set(&t, got.edge_set()));
        }
    }

    #[test]
    fn hull_edges_are_not_ps_flippable() {
        let ps = set(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        let t = &enumerate_triangulations(&ps, &Budget::default()).unwrap()[0];
        let hull = hull_edge_set(&ps).unwrap();
        assert!(!is_ps_flippable_set(
            t,
            EdgeSet::single(hull.iter().next().unwrap())
        ));
    }

    #[test]
    fn matching_errors() {
        let ps = Arc::new(PointSet::new((0..6).map(|i| Point::new(i, i * i)).collect()).unwrap());
        let ts = enumerate_triangulations(&ps, &Budget::default()).unwrap();
        let not_perfect = PlaneGraph::new(Arc::clone(&ps), [(0, 1)]).unwrap();
        assert_eq!(
            convex_decomposition_from_matching(&ts[0], &not_perfect).unwrap_err(),
            Error::NotPerfectMatching
        );
        let m = PlaneGraph::new(Arc::clone(&ps), [(0, 1), (2, 5), (3, 4)]).unwrap();
        let t = ts.iter().find(|t| !t.graph().has_edge(2, 5)).unwrap();
        assert_eq!(
            convex_decomposition_from_matching(t, &m).unwrap_err(),
            Error::NotSubgraph
        );
        let t = ts.iter().find(|t| t.graph().has_edge(2, 5)).unwrap();
        let (d, f) = convex_decomposition_from_matching(t, &m).unwrap();
        assert!(d.is_convex_decomposition());
        assert_eq!(f.len(), t.edge_set().len() - d.num_edges());
    }
}

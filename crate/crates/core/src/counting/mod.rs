//! Exhaustive counting: perfect matchings, spanning cycles, supports, polygon
//! triangulations, and the identities tying them to triangulation counts.

mod identity;
mod polygon;
mod support;

pub use identity::{identity_pm, identity_sc, inverse_support_sum, IdentityResult};
pub use polygon::{
    ears, enumerate_polygon_triangulations, flippable_diagonals, max_ps_flippable_diagonals,
    polygon_triangulation_count, PolygonTriangulation, SimplePolygon,
};
pub use support::{support, SupportCounter, SupportMethod, SupportResult};

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::budget::{Budget, Meter};
use crate::edges::{bits, EdgeSet, EdgeTable};
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::plane_graph::PlaneGraph;

fn sorted_graphs(points: &Arc<PointSet>, mut sets: Vec<EdgeSet>) -> Vec<PlaneGraph> {
    let t = points.table().expect("tabled point set");
    sets.sort_by_cached_key(|&s| t.edges_of(s));
    sets.into_iter()
        .map(|s| PlaneGraph::from_set_unchecked(Arc::clone(points), s))
        .collect()
}

/// All crossing-free perfect matchings on the point set, sorted by edge list.
/// Empty for odd `N`.
pub fn enumerate_perfect_matchings(
    points: &Arc<PointSet>,
    budget: &Budget,
) -> Result<Vec<PlaneGraph>> {
    let t = points.table_or_err()?;
    let n = points.len();
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        let mut meter = budget.meter("perfect matching enumeration");
        let allowed = vec![u32::MAX; n];
        matchings_rec(
            t,
            &allowed,
            (1u32 << n) - 1,
            EdgeSet::EMPTY,
            true,
            &mut meter,
            &mut out,
        )?;
    }
    Ok(sorted_graphs(points, out))
}

/// Perfect matchings using only edges of `g`. No crossing test is needed since
/// `g` is plane.
pub fn matchings_in(g: &PlaneGraph) -> Vec<EdgeSet> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        let mut meter = Budget::nodes(u64::MAX).meter("matchings in graph");
        matchings_rec(
            g.table(),
            &g.adjacency(),
            (1u32 << n) - 1,
            EdgeSet::EMPTY,
            false,
            &mut meter,
            &mut out,
        )
        .expect("unbounded budget");
    }
    out.sort_unstable();
    out
}

fn matchings_rec(
    t: &EdgeTable,
    allowed: &[u32],
    free: u32,
    chosen: EdgeSet,
    check_crossings: bool,
    meter: &mut Meter,
    out: &mut Vec<EdgeSet>,
) -> Result<()> {
    meter.tick()?;
    if free == 0 {
        out.push(chosen);
        return Ok(());
    }
    let v = free.trailing_zeros() as usize;
    for w in bits(free & allowed[v] & !(1 << v)) {
        let i = t.index(v, w);
        if check_crossings && !t.crossing(i).is_disjoint(chosen) {
            continue;
        }
        let mut next = chosen;
        next.insert(i);
        matchings_rec(
            t,
            allowed,
            free & !(1 << v) & !(1 << w),
            next,
            check_crossings,
            meter,
            out,
        )?;
    }
    Ok(())
}

/// All simple polygonizations (crossing-free spanning cycles), sorted by edge
/// list.
pub fn enumerate_spanning_cycles(
    points: &Arc<PointSet>,
    budget: &Budget,
) -> Result<Vec<PlaneGraph>> {
    let t = points.table_or_err()?;
    let n = points.len();
    if n < 3 {
        return Err(Error::DomainError(format!(
            "a spanning cycle needs at least three points, got {n}"
        )));
    }
    let mut meter = budget.meter("spanning cycle enumeration");
    let allowed = vec![u32::MAX; n];
    let mut out = Vec::new();
    let mut path = vec![0usize];
    cycles_rec(
        t,
        &allowed,
        &mut path,
        1,
        EdgeSet::EMPTY,
        true,
        &mut meter,
        &mut out,
    )?;
    Ok(sorted_graphs(points, out))
}

/// Hamiltonian cycles using only edges of `g`.
pub fn cycles_in(g: &PlaneGraph) -> Vec<EdgeSet> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    if n >= 3 {
        let mut meter = Budget::nodes(u64::MAX).meter("cycles in graph");
        let mut path = vec![0usize];
        cycles_rec(
            g.table(),
            &g.adjacency(),
            &mut path,
            1,
            EdgeSet::EMPTY,
            false,
            &mut meter,
            &mut out,
        )
        .expect("unbounded budget");
    }
    out.sort_unstable();
    out
}

/// Extends a path starting at vertex 0. Each cycle is produced once, in the
/// direction whose second vertex is smaller than its last.
#[allow(clippy::too_many_arguments)]
fn cycles_rec(
    t: &EdgeTable,
    allowed: &[u32],
    path: &mut Vec<usize>,
    used: u32,
    edges: EdgeSet,
    check_crossings: bool,
    meter: &mut Meter,
    out: &mut Vec<EdgeSet>,
) -> Result<()> {
    meter.tick()?;
    let n = t.n();
    let last = *path.last().expect("nonempty path");
    if path.len() == n {
        if path[1] > last || allowed[last] & 1 == 0 {
            return Ok(());
        }
        let close = t.index(last, 0);
        if check_crossings && !t.crossing(close).is_disjoint(edges) {
            return Ok(());
        }
        let mut cycle = edges;
        cycle.insert(close);
        out.push(cycle);
        return Ok(());
    }
    let full = (1u32 << n) - 1;
    for w in bits(allowed[last] & full & !used) {
        let i = t.index(last, w);
        if check_crossings && !t.crossing(i).is_disjoint(edges) {
            continue;
        }
        let mut next = edges;
        next.insert(i);
        path.push(w);
        cycles_rec(
            t,
            allowed,
            path,
            used | 1 << w,
            next,
            check_crossings,
            meter,
            out,
        )?;
        path.pop();
    }
    Ok(())
}

/// Vertex order of a spanning cycle: starts at 0 and the second vertex is
/// smaller than the last.
pub fn cycle_order(g: &PlaneGraph) -> Result<Vec<usize>> {
    let adj = g.adjacency();
    let n = adj.len();
    if n < 3 || adj.iter().any(|m| m.count_ones() != 2) {
        return Err(Error::DomainError("not a spanning cycle".into()));
    }
    let mut order = vec![0usize];
    let (mut prev, mut cur) = (0usize, adj[0].trailing_zeros() as usize);
    while cur != 0 && order.len() < n {
        order.push(cur);
        let next = bits(adj[cur]).find(|&w| w != prev).expect("degree two");
        (prev, cur) = (cur, next);
    }
    if cur != 0 || order.len() != n {
        return Err(Error::DomainError("not a spanning cycle".into()));
    }
    if order[1] > order[n - 1] {
        order[1..].reverse();
    }
    Ok(order)
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: u32) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn set(pts: &[(i64, i64)]) -> Arc<PointSet> {
        Arc::new(PointSet::new(pts.iter().map(|&p| Point::from(p)).collect()).unwrap())
    }

    fn convex(n: i64) -> Arc<PointSet> {
        Arc::new(PointSet::new((0..n).map(|i| Point::new(i, i * i)).collect()).unwrap())
    }

    #[test]
    fn catalan_values() {
        let want = [1u32, 1, 2, 5, 14, 42, 132];
        for (n, &c) in want.iter().enumerate() {
            assert_eq!(catalan(n as u32), BigUint::from(c));
        }
    }

    #[test]
    fn matching_examples() {
        let b = Budget::default();
        assert_eq!(
            enumerate_perfect_matchings(&set(&[(0, 0), (10, 0), (10, 10), (0, 10)]), &b)
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            enumerate_perfect_matchings(&set(&[(0, 0), (8, 0), (4, 8), (4, 3)]), &b)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_perfect_matchings(&convex(6), &b).unwrap().len(),
            5
        );
        assert!(enumerate_perfect_matchings(&convex(5), &b)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cycle_examples() {
        let b = Budget::default();
        for n in 3..=8 {
            assert_eq!(enumerate_spanning_cycles(&convex(n), &b).unwrap().len(), 1);
        }
        let tc = set(&[(0, 0), (8, 0), (4, 8), (4, 3)]);
        let cs = enumerate_spanning_cycles(&tc, &b).unwrap();
        assert_eq!(cs.len(), 3);
        for c in &cs {
            let order = cycle_order(c).unwrap();
            assert_eq!(order[0], 0);
            assert!(order[1] < order[3]);
        }
    }

    #[test]
    fn even_cycles_split_into_two_matchings() {
        let ps = set(&[(0, 0), (20, 1), (18, 17), (2, 15), (9, 4), (11, 11)]);
        let t = ps.table().unwrap();
        for c in enumerate_spanning_cycles(&ps, &Budget::default()).unwrap() {
            let order = cycle_order(&c).unwrap();
            let n = order.len();
            let a: EdgeSet = (0..n)
                .step_by(2)
                .map(|i| t.index(order[i], order[(i + 1) % n]))
                .collect();
            let b = c.edge_set().difference(a);
            assert_eq!(a.len(), n / 2);
            assert_eq!(b.len(), n / 2);
            for m in [a, b] {
                assert!(t.is_crossing_free(m));
                assert!(t.adjacency(m).iter().all(|d| d.count_ones() == 1));
            }
        }
    }

    #[test]
    fn cycle_order_rejects_non_cycles() {
        let ps = convex(4);
        let path = PlaneGraph::new(ps, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(cycle_order(&path).is_err());
    }
}

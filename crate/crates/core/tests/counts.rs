use std::sync::Arc;

use num_bigint::BigUint;

use planecount::corpus::triangle_center;
use planecount::counting::{catalan, enumerate_perfect_matchings, enumerate_spanning_cycles};
use planecount::gen::{
    add_triangular_hull, gen_convex, gen_double_chain, gen_double_circle, is_double_circle,
};
use planecount::tri_engine::enumerate_triangulations;
use planecount::{Budget, PlaneGraph, PointSet};

fn counts(ps: PointSet) -> (u64, u64, u64) {
    let ps = Arc::new(ps);
    let b = Budget::default();
    let tr = enumerate_triangulations(&ps, &b).unwrap().len() as u64;
    let pm = if ps.len().is_multiple_of(2) {
        enumerate_perfect_matchings(&ps, &b).unwrap().len() as u64
    } else {
        0
    };
    let sc = enumerate_spanning_cycles(&ps, &b).unwrap().len() as u64;
    (tr, pm, sc)
}

#[test]
fn convex_position_counts() {
    // Triangulations of a convex n-gon: C(n-2); non-crossing perfect
    // matchings of 2k points in convex position: C(k); one polygonization.
    for n in 3..=11usize {
        let (tr, pm, sc) = counts(gen_convex(n).unwrap());
        assert_eq!(BigUint::from(tr), catalan(n as u32 - 2), "tr of {n}-gon");
        if n % 2 == 0 {
            assert_eq!(BigUint::from(pm), catalan(n as u32 / 2), "pm of {n}-gon");
        }
        assert_eq!(sc, 1);
    }
}

#[test]
fn triangle_with_center() {
    assert_eq!(counts(triangle_center()), (1, 3, 3));
}

#[test]
fn small_double_configurations() {
    // Four points in convex position.
    assert_eq!(counts(gen_double_chain(2).unwrap()), (2, 2, 1));
    let dc = gen_double_circle(3).unwrap();
    assert!(is_double_circle(&dc, 3));
    let (tr, _, _) = counts(dc.clone());
    let ps = Arc::new(dc);
    let hull = PlaneGraph::hull_cycle(Arc::clone(&ps)).unwrap();
    for &v in ps.interior() {
        assert!(!hull.is_valid_vertex(v).unwrap());
    }
    assert!(tr >= 1);
}

#[test]
fn wrapping_never_loses_cycles() {
    for n in 3..=5 {
        let ps = gen_convex(n).unwrap();
        let w = add_triangular_hull(&ps).unwrap();
        assert_eq!(w.len(), n + 3);
        let (_, _, sc0) = counts(ps);
        let (_, _, sc1) = counts(w);
        assert!(sc1 >= sc0);
    }
}

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::{bound_enclosure, lemma51_bound, lemma53_bound, Constants};
use crate::budget::Budget;
use crate::counting::{
    catalan, cycles_in, enumerate_perfect_matchings, enumerate_spanning_cycles,
    inverse_support_sum, matchings_in, SupportCounter,
};
use crate::edges::EdgeSet;
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::kasteleyn::{count_matchings_in, hadamard_base, hadamard_holds, EdgeWeighting};
use crate::plane_graph::PlaneGraph;
use crate::tri_engine::{convex_decomposition_from_matching, Triangulation};

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn ser_ratio<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// `(q / c)⁴ ≤ base^n`, i.e. `q ≤ c·base^{n/4}`, exactly.
fn quartic_le(q: &BigRational, c: u64, base: &BigRational, n: usize) -> bool {
    let scaled = q / int(c);
    num_traits::pow(scaled, 4) <= num_traits::pow(base.clone(), n)
}

fn even_at_least_six(n: usize) -> Result<()> {
    if n % 2 == 1 || n < 6 {
        return Err(Error::DomainError(format!(
            "needs an even number of at least six points, got {n}"
        )));
    }
    Ok(())
}

/// The weighting of `T' = T \ M1` used against the second matching: edges of
/// a ps-flippable set `F` (cut down to exactly `N/2 − 3` edges) weigh 1,
/// the rest weigh 1/2.
#[derive(Clone, Debug)]
pub struct Thm31Weighting {
    pub t_prime: PlaneGraph,
    pub f: EdgeSet,
    /// Size of `T \ D` before truncation.
    pub f_full: usize,
    pub mu: EdgeWeighting,
}

pub fn thm31_weighting(t: &Triangulation, m1: &PlaneGraph) -> Result<Thm31Weighting> {
    let n = t.point_set().len();
    even_at_least_six(n)?;
    let (_, f_all) = convex_decomposition_from_matching(t, m1)?;
    let f: EdgeSet = f_all.edge_set().iter().take(n / 2 - 3).collect();
    let t_prime = t
        .graph()
        .with_edge_set(t.edge_set().difference(m1.edge_set()))?;
    let table = t.graph().table();
    let mu = EdgeWeighting::new(t_prime.edge_set().iter().map(|i| {
        let w = if f.contains(i) {
            ratio(1, 1)
        } else {
            ratio(1, 2)
        };
        (table.edge(i), w)
    }))?;
    Ok(Thm31Weighting {
        t_prime,
        f,
        f_full: f_all.len(),
        mu,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Eq3Summary {
    pub pairs: usize,
    pub violations: usize,
}

/// `1/supp(M1 ∪ M2) ≤ 8·(1/2)^{N/2 − j}` for every perfect matching `M2` of
/// `T'`, where `j = |M2 ∩ F|`.
pub fn eq3_check(
    w: &Thm31Weighting,
    m1: &PlaneGraph,
    counter: &SupportCounter,
) -> Result<Eq3Summary> {
    let n = m1.num_vertices();
    let mut s = Eq3Summary::default();
    for m2 in matchings_in(&w.t_prime) {
        let j = m2.intersection(w.f).len();
        let g = m1.with_edge_set(m1.edge_set().union(m2))?;
        let supp = BigUint::from(counter.support(&g)?.value);
        s.pairs += 1;
        if BigUint::one() << (n / 2 - j) > supp * 8u32 {
            s.violations += 1;
        }
    }
    Ok(s)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Eq13Summary {
    pub pairs: usize,
    pub single_cycles: usize,
    /// Violations among pairs whose union is one spanning cycle.
    pub cycle_violations: usize,
    /// Violations among pairs whose union splits into several cycles.
    pub multi_cycle_violations: usize,
}

/// `supp(M1 ∪ M2) ≥ 2^{N/2−3} x^{κN − flip_T(M1)} / μ(M2)`, with `μ` weighting
/// `F` by 2, other flippable edges of `T` by `x`, and the rest by 1.
pub fn eq13_check(
    t: &Triangulation,
    m1: &PlaneGraph,
    w: &Thm31Weighting,
    counter: &SupportCounter,
) -> Result<Eq13Summary> {
    let n = t.point_set().len() as i64;
    let c = Constants::get();
    let flippable = t.flippable_edges();
    let flip_m1 = m1.edge_set().intersection(flippable).len() as i64;
    let kappa_n = flippable.len() as i64 - (n / 2 - 3);
    let mut s = Eq13Summary::default();
    for m2 in matchings_in(&w.t_prime) {
        let a = m2.intersection(w.f).len() as i64;
        let b = m2.intersection(flippable).difference(w.f).len() as i64;
        let union = m1.edge_set().union(m2);
        let g = m1.with_edge_set(union)?;
        let supp = int(counter.support(&g)?.value);
        let rhs = c.two_x_power(n / 2 - 3 - a, kappa_n - flip_m1 - b);
        let single = g.components().len() == 1;
        s.pairs += 1;
        if single {
            s.single_cycles += 1;
        }
        if !rhs.exact_above(&supp) {
            if single {
                s.cycle_violations += 1;
            } else {
                s.multi_cycle_violations += 1;
            }
        }
    }
    Ok(s)
}

/// Per-triangulation results of the first cycle-sum bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thm31Row {
    pub triangulation: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub cycle_sum: BigRational,
    pub matchings: u64,
    /// `|PM(T)| ≤ 6^{N/4}`.
    pub matchings_ok: bool,
    /// `Σ 1/supp(C) ≤ 8·12^{N/4}`.
    pub cycle_sum_ok: bool,
    /// Hadamard holds for every first matching and its base is at most
    /// `2 − 9/(2N)`.
    pub hadamard_ok: bool,
    pub eq3: Eq3Summary,
    /// `8·12^{N/4}` divided by the cycle sum.
    pub slack: f64,
}

impl Thm31Row {
    pub fn ok(&self) -> bool {
        self.matchings_ok && self.cycle_sum_ok && self.hadamard_ok && self.eq3.violations == 0
    }
}

/// Checks the first bound and each link of its derivation on every
/// triangulation of the set.
pub fn thm31_check(points: &Arc<PointSet>, budget: &Budget) -> Result<Vec<Thm31Row>> {
    let n = points.len();
    even_at_least_six(n)?;
    let counter = SupportCounter::new(Arc::clone(points), *budget);
    let tris = counter.triangulations()?.to_vec();
    let twelve = int(12);
    let six = int(6);
    let base_cap = int(2) - ratio(9, 2 * n as i64);
    let rows: Vec<Result<Thm31Row>> = tris
        .par_iter()
        .enumerate()
        .map(|(k, &set)| {
            let t = Triangulation::from_graph(PlaneGraph::from_set(Arc::clone(points), set)?)?;
            let cycles = cycles_in(t.graph());
            let cycle_sum = inverse_support_sum(&counter, &cycles)?;
            let matchings = count_matchings_in(t.graph())?;
            let mut hadamard_ok = true;
            let mut eq3 = Eq3Summary::default();
            for m1 in matchings_in(t.graph()) {
                let m1 = t.graph().with_edge_set(m1)?;
                let w = thm31_weighting(&t, &m1)?;
                let (holds, _) = hadamard_holds(&w.t_prime, &w.mu)?;
                let base = hadamard_base(&w.t_prime, &w.mu)?;
                hadamard_ok &= holds && base <= base_cap;
                let e = eq3_check(&w, &m1, &counter)?;
                eq3.pairs += e.pairs;
                eq3.violations += e.violations;
            }
            let bound = 8.0 * 12f64.powf(n as f64 / 4.0);
            Ok(Thm31Row {
                triangulation: k,
                matchings_ok: quartic_le(&int(matchings), 1, &six, n),
                cycle_sum_ok: quartic_le(&cycle_sum, 8, &twelve, n),
                slack: bound / to_f64(&cycle_sum),
                cycle_sum,
                matchings,
                hadamard_ok,
                eq3,
            })
        })
        .collect();
    rows.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thm41Result {
    pub pm: u64,
    pub tr: u64,
    /// `pm ≤ 8·(3/2)^{N/4}·tr`.
    pub holds: bool,
    /// Smallest support of a perfect matching, when `N` is even.
    pub min_matching_support: Option<u64>,
    /// Every matching has support at least `2^{N/2−3}` (even `N ≥ 6`).
    pub supports_ok: bool,
}

pub fn thm41_check(points: &Arc<PointSet>, budget: &Budget) -> Result<Thm41Result> {
    let n = points.len();
    let counter = SupportCounter::new(Arc::clone(points), *budget);
    let tr = counter.triangulations()?.len() as u64;
    let matchings = enumerate_perfect_matchings(points, budget)?;
    let pm = matchings.len() as u64;
    let holds = quartic_le(
        &BigRational::new(BigInt::from(pm), BigInt::from(tr)),
        8,
        &ratio(3, 2),
        n,
    );
    let mut min_support = None;
    let mut supports_ok = true;
    for m in &matchings {
        let s = counter.support(m)?.value;
        min_support = Some(min_support.map_or(s, |v: u64| v.min(s)));
        if n >= 6 && s < 1u64 << (n / 2 - 3) {
            supports_ok = false;
        }
    }
    Ok(Thm41Result {
        pm,
        tr,
        holds,
        min_matching_support: min_support,
        supports_ok,
    })
}

/// `count ≥ 2^l · x^{k−l}` for a triangulated polygon with `k` flippable
/// diagonals, `l` of them forming a ps-flippable set.
pub fn lemma52_holds(count: u64, k: usize, l: usize) -> bool {
    let rhs = Constants::get().two_x_power(l as i64, k as i64 - l as i64);
    rhs.exact_above(&int(count))
}

/// `C_{d+1} ≥ 2^d (5/4)^{d−1}`, as `C_{d+1}·4^{d−1} ≥ 2^d·5^{d−1}`.
pub fn catalan_bound_holds(d: u32) -> bool {
    assert!(d >= 1);
    let lhs = catalan(d + 1) * BigUint::from(4u32).pow(d - 1);
    let rhs = BigUint::from(2u32).pow(d) * BigUint::from(5u32).pow(d - 1);
    lhs >= rhs
}

/// One triangulation's structural parameters and applicable bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriangulationRow {
    pub set_id: String,
    pub triangulation: usize,
    pub v3: usize,
    pub t: f64,
    pub flip: usize,
    pub kappa: f64,
    #[serde(serialize_with = "ser_ratio")]
    pub cycle_sum: BigRational,
    pub cycle_sum_approx: f64,
    pub thm31_bound: Option<f64>,
    pub lemma51_bound: Option<f64>,
    pub lemma53_bound: Option<f64>,
}

/// Exact counts for a point set plus per-triangulation bound rows.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub set_id: String,
    pub n: usize,
    pub h: usize,
    pub n_interior: usize,
    pub tr: u64,
    pub pm: u64,
    pub sc: u64,
    pub pm_over_tr: f64,
    pub sc_over_tr: f64,
    pub rows: Vec<TriangulationRow>,
    /// Descriptions of violated inequalities; empty when all hold.
    pub violations: Vec<String>,
}

/// Evaluates every applicable bound on every triangulation. The `8·12^{N/4}`
/// and flip-sensitive bounds need an even `N ≥ 6`; the degree-3-sensitive
/// bound additionally needs a triangular hull.
pub fn build_bound_report(
    set_id: &str,
    points: &Arc<PointSet>,
    budget: &Budget,
) -> Result<BoundReport> {
    let n = points.len();
    let counter = SupportCounter::new(Arc::clone(points), *budget);
    let tris = counter.triangulations()?.to_vec();
    let tr = tris.len() as u64;
    let pm = enumerate_perfect_matchings(points, budget)?.len() as u64;
    let sc = enumerate_spanning_cycles(points, budget)?.len() as u64;
    let even6 = n.is_multiple_of(2) && n >= 6;
    let tri_hull = points.h() == 3;
    let results: Vec<Result<(TriangulationRow, Vec<String>)>> = tris
        .par_iter()
        .enumerate()
        .map(|(k, &set)| {
            let t = Triangulation::from_graph(PlaneGraph::from_set(Arc::clone(points), set)?)?;
            let cycle_sum = inverse_support_sum(&counter, &cycles_in(t.graph()))?;
            let v3 = t.v3();
            let flip = t.flip_count();
            let tf = v3 as f64 / n as f64;
            let kappa = (flip as f64 - (n as f64 / 2.0 - 3.0)) / n as f64;
            let mut bad = Vec::new();
            let mut check = |name: &str, v: f64| {
                if !bound_enclosure(v, n).exact_below(&cycle_sum) {
                    bad.push(format!(
                        "{set_id} T{k}: cycle sum {cycle_sum} exceeds {name} {v}"
                    ));
                }
            };
            let thm31 = even6.then(|| 8.0 * 12f64.powf(n as f64 / 4.0));
            let l51 = if even6 && tri_hull {
                Some(lemma51_bound(n, tf)?)
            } else {
                None
            };
            let l53 = if even6 {
                Some(lemma53_bound(n, kappa)?)
            } else {
                None
            };
            for (name, v) in [("thm31", thm31), ("lemma51", l51), ("lemma53", l53)] {
                if let Some(v) = v {
                    check(name, v);
                }
            }
            let row = TriangulationRow {
                set_id: set_id.to_string(),
                triangulation: k,
                v3,
                t: tf,
                flip,
                kappa,
                cycle_sum_approx: to_f64(&cycle_sum),
                cycle_sum,
                thm31_bound: thm31,
                lemma51_bound: l51,
                lemma53_bound: l53,
            };
            Ok((row, bad))
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for r in results {
        let (row, bad) = r?;
        rows.push(row);
        violations.extend(bad);
    }
    if n.is_multiple_of(2) {
        let six = int(6);
        for (k, &set) in tris.iter().enumerate() {
            let g = PlaneGraph::from_set(Arc::clone(points), set)?;
            let m = count_matchings_in(&g)?;
            if !quartic_le(&int(m), 1, &six, n) {
                violations.push(format!("{set_id} T{k}: {m} matchings exceed 6^(N/4)"));
            }
        }
        if !quartic_le(
            &BigRational::new(BigInt::from(pm), BigInt::from(tr)),
            8,
            &ratio(3, 2),
            n,
        ) {
            violations.push(format!("{set_id}: pm = {pm} exceeds 8(3/2)^(N/4) tr"));
        }
    }
    let total: BigRational = rows.iter().map(|r| r.cycle_sum.clone()).sum();
    if total != int(sc) {
        violations.push(format!("{set_id}: cycle sums total {total}, sc = {sc}"));
    }
    Ok(BoundReport {
        set_id: set_id.to_string(),
        n,
        h: points.h(),
        n_interior: points.n_interior(),
        tr,
        pm,
        sc,
        pm_over_tr: pm as f64 / tr as f64,
        sc_over_tr: sc as f64 / tr as f64,
        rows,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn convex(n: i64) -> Arc<PointSet> {
        Arc::new(PointSet::new((0..n).map(|i| Point::new(i, i * i)).collect()).unwrap())
    }

    #[test]
    fn convex_hexagon_report() {
        let r = build_bound_report("hex", &convex(6), &Budget::default()).unwrap();
        assert_eq!((r.tr, r.pm, r.sc), (14, 5, 1));
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        for row in &r.rows {
            assert_eq!(row.v3, 0);
            assert_eq!(row.cycle_sum, ratio(1, 14));
        }
    }

    #[test]
    fn thm31_rows_on_hexagon() {
        let rows = thm31_check(&convex(6), &Budget::default()).unwrap();
        assert_eq!(rows.len(), 14);
        assert!(rows.iter().all(Thm31Row::ok));
        assert!(matches!(
            thm31_check(&convex(4), &Budget::default()),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn thm41_examples() {
        let r = thm41_check(&convex(6), &Budget::default()).unwrap();
        assert_eq!((r.pm, r.tr), (5, 14));
        assert!(r.holds && r.supports_ok);
        let q = thm41_check(&convex(4), &Budget::default()).unwrap();
        assert_eq!((q.pm, q.tr), (2, 2));
        assert!(q.holds);
    }

    #[test]
    fn catalan_inequality() {
        for d in 1..=30 {
            assert!(catalan_bound_holds(d));
        }
    }

    #[test]
    fn lemma52_on_small_counts() {
        assert!(lemma52_holds(5, 3, 2));
        assert!(lemma52_holds(2, 1, 1));
        assert!(!lemma52_holds(4, 3, 2));
    }
}

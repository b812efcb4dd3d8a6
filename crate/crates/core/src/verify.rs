//! Exhaustive verification suites over the built-in corpus. Each check runs
//! on one point set and yields a [`CheckRow`]; suites are lists of checks.

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    build_bound_report, catalan_bound_holds, eq13_check, lemma52_holds, thm31_check,
    thm31_weighting, thm41_check,
};
use crate::budget::Budget;
use crate::corpus::CorpusEntry;
use crate::counting::{
    cycle_order, ears, enumerate_polygon_triangulations, enumerate_spanning_cycles,
    flippable_diagonals, identity_pm, identity_sc, matchings_in, max_ps_flippable_diagonals,
    polygon_triangulation_count, SimplePolygon, SupportCounter,
};
use crate::edges::{bits, Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::gen::{augment, gen_random, reattach_cycle};
use crate::geom::{Point, PointSet};
use crate::kasteleyn::{count_matchings_in, matching_sum};
use crate::plane_graph::{face_walks, hull_edge_set, PlaneGraph};
use crate::tri_engine::{
    convex_decomposition_from_matching, is_ps_flippable_set, max_ps_flippable, Triangulation,
};

/// Outcome of one check on one point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub set_id: String,
    pub n: usize,
    /// Number of individual cases examined.
    pub cases: u64,
    pub passed: bool,
    pub detail: String,
}

/// Collects cases and the first few failures of a check.
struct Tally {
    cases: u64,
    failures: Vec<String>,
    failed: u64,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    /// `count` cases at once, `failed` of them failing.
    fn batch(&mut self, count: u64, failed: u64, what: impl FnOnce() -> String) {
        self.cases += count;
        if failed > 0 {
            self.failed += failed;
            if self.failures.len() < 5 {
                self.failures.push(what());
            }
        }
    }

    fn row(self, check: &str, e: &CorpusEntry) -> CheckRow {
        let detail = if self.failed == 0 {
            String::new()
        } else {
            format!("{} failing: {}", self.failed, self.failures.join("; "))
        };
        CheckRow {
            check: check.to_string(),
            set_id: e.id.clone(),
            n: e.n(),
            cases: self.cases,
            passed: self.failed == 0,
            detail,
        }
    }
}

fn triangulations(counter: &SupportCounter) -> Result<Vec<Triangulation>> {
    let ps = counter.points();
    counter
        .triangulations()?
        .iter()
        .map(|&s| Triangulation::from_graph(PlaneGraph::from_set(Arc::clone(ps), s)?))
        .collect()
}

/// Kasteleyn matching counts against brute-force enumeration, per
/// triangulation.
pub fn check_kasteleyn_counts(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let counter = SupportCounter::new(Arc::clone(&e.points), *budget);
    let mut t = Tally::new();
    for (k, tri) in triangulations(&counter)?.iter().enumerate() {
        let fast = count_matchings_in(tri.graph())?;
        let slow = matchings_in(tri.graph()).len() as u64;
        t.case(fast == slow, || format!("T{k}: {fast} vs {slow}"));
    }
    Ok(t.row("kasteleyn_counts", e))
}

fn weight_product(mu: &crate::kasteleyn::EdgeWeighting, g: &PlaneGraph, m: EdgeSet) -> BigRational {
    g.table()
        .edges_of(m)
        .into_iter()
        .map(|e| mu.get(e).expect("weighted edge").clone())
        .fold(BigRational::one(), |a, b| a * b)
}

/// Weighted Kasteleyn sums over `T \ M1` with the two-level weighting
/// against direct summation, for every triangulation and first matching.
pub fn check_kasteleyn_weighted(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let mut t = Tally::new();
    if e.n() % 2 == 1 || e.n() < 6 {
        return Ok(t.row("kasteleyn_weighted", e));
    }
    let counter = SupportCounter::new(Arc::clone(&e.points), *budget);
    for (k, tri) in triangulations(&counter)?.iter().enumerate() {
        for m1 in matchings_in(tri.graph()) {
            let m1 = tri.graph().with_edge_set(m1)?;
            let w = thm31_weighting(tri, &m1)?;
            let fast = matching_sum(&w.t_prime, &w.mu)?;
            let slow = matchings_in(&w.t_prime)
                .into_iter()
                .map(|m2| weight_product(&w.mu, &w.t_prime, m2))
                .fold(BigRational::zero(), |a, b| a + b);
            t.case(fast == slow, || {
                format!("T{k} M1 {:?}: {fast} vs {slow}", m1.edges())
            });
        }
    }
    Ok(t.row("kasteleyn_weighted", e))
}

pub fn check_identity_sc(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let mut t = Tally::new();
    let r = identity_sc(&e.points, budget)?;
    t.case(r.holds(), || format!("sc = {}, sum = {}", r.lhs, r.rhs));
    Ok(t.row("identity_sc", e))
}

pub fn check_identity_pm(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let mut t = Tally::new();
    if e.n().is_multiple_of(2) {
        let r = identity_pm(&e.points, budget)?;
        t.case(r.holds(), || format!("pm = {}, sum = {}", r.lhs, r.rhs));
    }
    Ok(t.row("identity_pm", e))
}

/// For every triangulation `T`, a maximum ps-flippable set `F`, and every
/// subgraph `G ⊆ T`: `supp(G) ≥ 2^{|F \ G|}`. Supports of all subgraphs
/// come from a superset-sum over `T ∩ T'` for every triangulation `T'`;
/// the `T \ J` (`J ⊆ F`) graphs are re-counted through [`SupportCounter`].
pub fn check_ps_support(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let counter = SupportCounter::new(Arc::clone(&e.points), *budget);
    let all = counter.triangulations()?.to_vec();
    let mut t = Tally::new();
    for (k, tri) in triangulations(&counter)?.iter().enumerate() {
        let f = max_ps_flippable(tri, budget)?;
        let local: Vec<usize> = tri.edge_set().iter().collect();
        let width = local.len();
        let to_local = |s: EdgeSet| -> usize {
            local
                .iter()
                .enumerate()
                .filter(|(_, &g)| s.contains(g))
                .map(|(i, _)| 1usize << i)
                .sum()
        };
        let mut supp = vec![0u64; 1 << width];
        for &other in &all {
            supp[to_local(other.intersection(tri.edge_set()))] += 1;
        }
        for b in 0..width {
            for mask in 0..1usize << width {
                if mask >> b & 1 == 0 {
                    supp[mask] += supp[mask | 1 << b];
                }
            }
        }
        let f_local = to_local(f.edge_set());
        for (mask, &s) in supp.iter().enumerate() {
            let j = (f_local & !mask).count_ones();
            t.case(s >= 1u64 << j, || {
                format!("T{k} G mask {mask:#x}: supp {s} < 2^{j}")
            });
        }
        for j_mask in 0..1usize << f.len() {
            let fe: Vec<usize> = f.edge_set().iter().collect();
            let drop: EdgeSet = (0..fe.len())
                .filter(|i| j_mask >> i & 1 == 1)
                .map(|i| fe[i])
                .collect();
            let g = tri.graph().with_edge_set(tri.edge_set().difference(drop))?;
            let direct = counter.support(&g)?.value;
            let swept = supp[to_local(g.edge_set())];
            t.case(direct == swept, || {
                format!("T{k}: support {direct} vs sweep {swept}")
            });
        }
    }
    Ok(t.row("ps_support", e))
}

/// Every triangulation has a ps-flippable set of at least `N/2 − 2` edges.
pub fn check_ps_size(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let counter = SupportCounter::new(Arc::clone(&e.points), *budget);
    let mut t = Tally::new();
    let n = e.n();
    for (k, tri) in triangulations(&counter)?.iter().enumerate() {
        let f = max_ps_flippable(tri, budget)?;
        t.case(
            2 * f.len() + 4 >= n && is_ps_flippable_set(tri, f.edge_set()),
            || format!("T{k}: |F| = {}", f.len()),
        );
    }
    Ok(t.row("ps_size", e))
}

/// The decomposition built from each perfect matching `M1 ⊆ T` is convex,
/// contains `M1`, and leaves at least `N/2 − 3` ps-flippable edges.
pub fn check_construction(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let mut t = Tally::new();
    let n = e.n();
    if n % 2 == 1 {
        return Ok(t.row("construction", e));
    }
    let counter = SupportCounter::new(Arc::clone(&e.points), *budget);
    for (k, tri) in triangulations(&counter)?.iter().enumerate() {
        for m1 in matchings_in(tri.graph()) {
            let m1g = tri.graph().with_edge_set(m1)?;
            let (d, f) = convex_decomposition_from_matching(tri, &m1g)?;
            let ok = d.is_convex_decomposition()
                && m1.is_subset(d.edge_set())
                && f.edge_set() == tri.edge_set().difference(d.edge_set())
                && f.edge_set().is_disjoint(m1)
                && 2 * f.len() + 6 >= n
                && is_ps_flippable_set(tri, f.edge_set());
            t.case(ok, || {
                format!("T{k} M1 {:?}: |F| = {}", m1g.edges(), f.len())
            });
        }
    }
    Ok(t.row("construction", e))
}

/// `pm ≤ 8·(3/2)^{N/4}·tr` and, for even `N ≥ 6`, `supp(M) ≥ 2^{N/2−3}`.
pub fn check_matching_ratio(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let mut t = Tally::new();
    let r = thm41_check(&e.points, budget)?;
    t.case(r.holds, || format!("pm = {}, tr = {}", r.pm, r.tr));
    t.case(r.supports_ok, || {
        format!("min matching support {:?}", r.min_matching_support)
    });
    Ok(t.row("matching_ratio", e))
}

/// All per-triangulation cycle-sum bounds, the matching-count bound, and
/// each step of the first bound's derivation.
pub fn check_cycle_bounds(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let mut t = Tally::new();
    let report = build_bound_report(&e.id, &e.points, budget)?;
    t.cases += report.rows.len() as u64;
    for v in &report.violations {
        t.case(false, || v.clone());
    }
    let n = e.n();
    if n.is_multiple_of(2) && n >= 6 {
        for row in thm31_check(&e.points, budget)? {
            t.case(row.ok(), || format!("T{}: {row:?}", row.triangulation));
        }
    }
    Ok(t.row("cycle_bounds", e))
}

/// The flip-weighted support lower bound on `M1 ∪ M2` for every pair of
/// perfect matchings `M1 ⊆ T`, `M2 ⊆ T \ M1`.
pub fn check_cycle_support(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let mut t = Tally::new();
    let n = e.n();
    if n % 2 == 1 || n < 6 {
        return Ok(t.row("cycle_support", e));
    }
    let counter = SupportCounter::new(Arc::clone(&e.points), *budget);
    for (k, tri) in triangulations(&counter)?.iter().enumerate() {
        for m1 in matchings_in(tri.graph()) {
            let m1 = tri.graph().with_edge_set(m1)?;
            let w = thm31_weighting(tri, &m1)?;
            let s = eq13_check(tri, &m1, &w, &counter)?;
            let bad = (s.cycle_violations + s.multi_cycle_violations) as u64;
            t.batch(s.pairs as u64, bad, || {
                format!("T{k} M1 {:?}: {bad} pairs below the bound", m1.edges())
            });
        }
    }
    Ok(t.row("cycle_support", e))
}

/// Angularly consecutive in the ring of `p`.
fn consecutive(ring: &[usize], a: usize, b: usize) -> bool {
    let k = ring.len();
    let i = ring.iter().position(|&v| v == a).expect("in ring");
    ring[(i + 1) % k] == b || ring[(i + k - 1) % k] == b
}

/// Flip and degree-3 counts, separable-edge structure, and the
/// flippable-iff-not-separable characterization, for every triangulation.
pub fn check_structure(e: &CorpusEntry, budget: &Budget) -> Result<CheckRow> {
    let counter = SupportCounter::new(Arc::clone(&e.points), *budget);
    let ps = &e.points;
    let n = e.n();
    let tri_hull = ps.h() == 3;
    let mut t = Tally::new();
    for (k, tri) in triangulations(&counter)?.iter().enumerate() {
        let flip = tri.flip_count();
        let v3 = tri.v3();
        t.case(2 * flip + 4 >= n, || format!("T{k}: flip {flip} < N/2 - 2"));
        t.case(3 * v3 <= 2 * n + 1, || format!("T{k}: v3 {v3} > (2N+1)/3"));
        if tri_hull {
            t.case(flip + v3 + 3 >= n, || {
                format!("T{k}: flip {flip} < N - 3 - v3")
            });
        }
        let g = tri.graph();
        let mut sep: HashSet<(usize, Edge)> = HashSet::new();
        for &p in ps.interior() {
            let s = tri.separable_edges_at(p)?;
            let deg = g.degree(p);
            if deg == 3 {
                t.case(s.len() == 3, || {
                    format!("T{k}: degree-3 vertex {p} has {} separable", s.len())
                });
                for q in g.neighbors(p) {
                    t.case(ps.is_hull_vertex(q) || g.degree(q) != 3, || {
                        format!("T{k}: adjacent degree-3 {p}, {q}")
                    });
                }
            } else {
                let ring = g.neighbors_ccw(p);
                let ok = s.len() <= 2
                    && (s.len() < 2 || consecutive(&ring, s[0].other(p), s[1].other(p)));
                t.case(ok, || {
                    format!("T{k}: vertex {p} of degree {deg} has separable {s:?}")
                });
            }
            sep.extend(s.into_iter().map(|e| (p, e)));
        }
        let flippable = tri.flippable_edges();
        let table = g.table();
        for i in tri.interior_edges().iter() {
            let ed = table.edge(i);
            let at_a = sep.contains(&(ed.0, ed));
            let at_b = sep.contains(&(ed.1, ed));
            t.case(!(at_a && at_b), || {
                format!("T{k}: {ed:?} separable at both ends")
            });
            t.case(flippable.contains(i) == !(at_a || at_b), || {
                format!(
                    "T{k}: {ed:?} flippable {} but separable {at_a}/{at_b}",
                    flippable.contains(i)
                )
            });
        }
    }
    Ok(t.row("structure", e))
}

/// Deterministic points strictly outside the hull of `ps`, one per compass
/// direction, each nudged until `ps` plus the point is in general position.
pub fn external_points(ps: &PointSet, count: usize) -> Vec<Point> {
    let p = ps.points();
    let min_x = p.iter().map(|q| q.x).min().unwrap();
    let max_x = p.iter().map(|q| q.x).max().unwrap();
    let min_y = p.iter().map(|q| q.y).min().unwrap();
    let max_y = p.iter().map(|q| q.y).max().unwrap();
    let (w, h) = (max_x - min_x + 1, max_y - min_y + 1);
    let seeds = [
        Point::new(max_x + w, min_y + h / 3),
        Point::new(min_x - w, max_y - h / 4),
        Point::new(min_x + w / 3, max_y + h),
        Point::new(max_x - w / 5, min_y - h),
        Point::new(max_x + w, max_y + h),
        Point::new(min_x - w, min_y - h),
        Point::new(max_x + 2 * w, min_y - h / 2),
    ];
    let mut out = Vec::new();
    for mut q in seeds.into_iter().cycle().take(count) {
        while augment(ps, q).is_err() {
            q = Point::new(q.x + 1, q.y + 2);
        }
        out.push(q);
    }
    out
}

/// Every spanning cycle can be reattached to each external test point and
/// the resulting map on cycles is injective.
pub fn check_reattachment(e: &CorpusEntry, budget: &Budget, points: usize) -> Result<CheckRow> {
    let mut t = Tally::new();
    let cycles = enumerate_spanning_cycles(&e.points, budget)?;
    for q in external_points(&e.points, points) {
        let aug = Arc::new(augment(&e.points, q)?);
        let mut images: HashSet<Vec<Edge>> = HashSet::new();
        for c in &cycles {
            match reattach_cycle(c, &aug) {
                Ok((_, mapped)) => {
                    let spanning = mapped.num_edges() == aug.len()
                        && mapped.adjacency().iter().all(|m| m.count_ones() == 2)
                        && mapped.components().len() == 1;
                    t.case(spanning, || {
                        format!("{q}: image of {:?} is not a spanning cycle", c.edges())
                    });
                    t.case(images.insert(mapped.edges()), || {
                        format!("{q}: two cycles share an image")
                    });
                }
                Err(err) => t.case(false, || format!("{q}: {:?}: {err}", c.edges())),
            }
        }
    }
    Ok(t.row("reattachment", e))
}

/// Polygons with `min..=max` vertices: bounded simple faces of `C ∪ hull`
/// for every spanning cycle `C` of each set, deduplicated by shape.
pub fn polygons_from_cycles(
    sets: &[Arc<PointSet>],
    budget: &Budget,
    max: usize,
) -> Result<Vec<SimplePolygon>> {
    let mut seen: HashSet<Vec<Point>> = HashSet::new();
    let mut out = Vec::new();
    for ps in sets {
        let hull = hull_edge_set(ps)?;
        for c in enumerate_spanning_cycles(ps, budget)? {
            let table = c.table();
            let adj: Vec<Vec<usize>> = table
                .adjacency(c.edge_set().union(hull))
                .iter()
                .map(|&m| bits(m).collect())
                .collect();
            for (walk, area) in face_walks(ps.points(), &adj) {
                if area <= 0 || walk.len() > max || walk.len() < 3 {
                    continue;
                }
                let Ok(poly) = SimplePolygon::new(walk.iter().map(|&v| ps.point(v)).collect())
                else {
                    continue;
                };
                if seen.insert(canonical(poly.boundary())) {
                    out.push(poly);
                }
            }
        }
    }
    Ok(out)
}

fn canonical(b: &[Point]) -> Vec<Point> {
    let start = (0..b.len())
        .min_by_key(|&i| (b[i].x, b[i].y))
        .expect("nonempty");
    b[start..].iter().chain(&b[..start]).copied().collect()
}

/// Random simple polygons: spanning cycles of random point sets, `per_set`
/// cycles drawn per set.
pub fn random_polygons(
    sizes: &[usize],
    seeds: u64,
    per_set: usize,
    budget: &Budget,
) -> Result<Vec<SimplePolygon>> {
    let mut out = Vec::new();
    for &n in sizes {
        for s in 0..seeds {
            let ps = Arc::new(gen_random(n, 1000 + s)?);
            let mut cycles = enumerate_spanning_cycles(&ps, budget)?;
            cycles.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
            for c in cycles.iter().take(per_set) {
                let order = cycle_order(c)?;
                out.push(SimplePolygon::new(
                    order.iter().map(|&v| ps.point(v)).collect(),
                )?);
            }
        }
    }
    Ok(out)
}

/// Per-polygon results of the flip-sensitive polygon count bound.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PolygonSweep {
    pub polygons: u64,
    pub triangulations: u64,
    pub count_violations: u64,
    pub ear_violations: u64,
    /// A polygon triangulation with three flippable diagonals, two of them
    /// ps-flippable, in a polygon with five triangulations.
    pub witness: Option<Vec<Point>>,
}

pub fn polygon_sweep(polys: &[SimplePolygon]) -> PolygonSweep {
    let parts: Vec<PolygonSweep> = polys
        .par_iter()
        .map(|p| {
            let mut s = PolygonSweep {
                polygons: 1,
                ..Default::default()
            };
            let count = polygon_triangulation_count(p);
            for tp in enumerate_polygon_triangulations(p) {
                s.triangulations += 1;
                let flippable = flippable_diagonals(p, &tp);
                let l = max_ps_flippable_diagonals(p, &tp, &flippable).len();
                let k = flippable.len();
                if !lemma52_holds(count, k, l) {
                    s.count_violations += 1;
                }
                if (k, l, count) == (3, 2, 5) && s.witness.is_none() {
                    s.witness = Some(p.boundary().to_vec());
                }
                if p.len() >= 4 && !two_disjoint_ears(p, &ears(p, &tp)) {
                    s.ear_violations += 1;
                }
            }
            s
        })
        .collect();
    parts.into_iter().fold(PolygonSweep::default(), |mut a, b| {
        a.polygons += b.polygons;
        a.triangulations += b.triangulations;
        a.count_violations += b.count_violations;
        a.ear_violations += b.ear_violations;
        a.witness = a.witness.or(b.witness);
        a
    })
}

fn two_disjoint_ears(p: &SimplePolygon, ears: &[[usize; 3]]) -> bool {
    let boundary = |t: &[usize; 3]| -> Vec<(usize, usize)> {
        let [a, b, c] = *t;
        [(a, b), (b, c), (a, c)]
            .into_iter()
            .filter(|&(u, v)| p.is_boundary_edge(u, v))
            .collect()
    };
    ears.iter().enumerate().any(|(i, x)| {
        ears[i + 1..].iter().any(|y| {
            let (bx, by) = (boundary(x), boundary(y));
            bx.iter().all(|e| !by.contains(e))
        })
    })
}

/// A named check that runs on one corpus entry.
pub type SetCheck = fn(&CorpusEntry, &Budget) -> Result<CheckRow>;

/// Check name, function, and the largest `N` it is run at.
pub fn suite_checks(suite: &str) -> Option<Vec<(&'static str, SetCheck, usize)>> {
    fn reattach(e: &CorpusEntry, b: &Budget) -> Result<CheckRow> {
        check_reattachment(e, b, 5)
    }
    let checks: Vec<(&'static str, SetCheck, usize)> = match suite {
        "identities" => vec![
            ("identity_sc", check_identity_sc, 9),
            ("identity_pm", check_identity_pm, 8),
        ],
        "kasteleyn" => vec![
            ("kasteleyn_counts", check_kasteleyn_counts, 10),
            ("kasteleyn_weighted", check_kasteleyn_weighted, 8),
        ],
        "bounds" => vec![
            ("matching_ratio", check_matching_ratio, 10),
            ("cycle_bounds", check_cycle_bounds, 8),
            ("cycle_support", check_cycle_support, 8),
        ],
        "lemmas" => vec![
            ("ps_support", check_ps_support, 7),
            ("ps_size", check_ps_size, 10),
            ("construction", check_construction, 10),
            ("structure", check_structure, 10),
            ("reattachment", reattach, 8),
        ],
        _ => return None,
    };
    Some(checks)
}

pub const SUITES: [&str; 4] = ["identities", "kasteleyn", "bounds", "lemmas"];

/// Runs `check` on every corpus entry with `N ≤ max_n`, in parallel; rows
/// come back in corpus order.
pub fn run_check(
    corpus: &[CorpusEntry],
    check: SetCheck,
    max_n: usize,
    budget: &Budget,
) -> Result<Vec<CheckRow>> {
    let rows: Vec<Result<CheckRow>> = corpus
        .par_iter()
        .filter(|e| e.n() <= max_n)
        .map(|e| check(e, budget))
        .collect();
    rows.into_iter().collect()
}

/// Runs a named suite; unknown names are a [`Error::DomainError`].
pub fn run_suite(
    suite: &str,
    corpus: &[CorpusEntry],
    max_n: usize,
    budget: &Budget,
) -> Result<Vec<CheckRow>> {
    let checks =
        suite_checks(suite).ok_or_else(|| Error::DomainError(format!("unknown suite {suite}")))?;
    let mut rows = Vec::new();
    for (_, f, cap) in checks {
        rows.extend(run_check(corpus, f, cap.min(max_n), budget)?);
    }
    if suite == "lemmas" {
        rows.push(polygon_row(corpus, max_n, budget)?);
        let bad: Vec<u32> = (1..=30).filter(|&d| !catalan_bound_holds(d)).collect();
        rows.push(CheckRow {
            check: "catalan".into(),
            set_id: "d=1..30".into(),
            n: 0,
            cases: 30,
            passed: bad.is_empty(),
            detail: if bad.is_empty() {
                String::new()
            } else {
                format!("failing d: {bad:?}")
            },
        });
    }
    Ok(rows)
}

/// The polygon sweep over faces of corpus cycles (sets with `N ≤ 8`) and
/// random polygons up to ten vertices, as one row.
pub fn polygon_row(corpus: &[CorpusEntry], max_n: usize, budget: &Budget) -> Result<CheckRow> {
    let cap = max_n.min(10);
    let sets: Vec<Arc<PointSet>> = corpus
        .iter()
        .filter(|e| e.n() <= cap.min(8))
        .map(|e| Arc::clone(&e.points))
        .collect();
    let mut polys = polygons_from_cycles(&sets, budget, 10)?;
    let sizes: Vec<usize> = (5..=cap).collect();
    polys.extend(random_polygons(&sizes, 4, 10, budget)?);
    let s = polygon_sweep(&polys);
    let passed = s.count_violations == 0 && s.ear_violations == 0;
    Ok(CheckRow {
        check: "polygon_counts".into(),
        set_id: "polygons".into(),
        n: cap,
        cases: s.triangulations,
        passed,
        detail: format!(
            "{} polygons, {} count violations, {} ear violations, witness {}",
            s.polygons,
            s.count_violations,
            s.ear_violations,
            if s.witness.is_some() {
                "found"
            } else {
                "missing"
            }
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::standard_corpus;

    fn entry(id: &str) -> CorpusEntry {
        standard_corpus(10)
            .unwrap()
            .into_iter()
            .find(|e| e.id == id)
            .unwrap()
    }

    #[test]
    fn checks_pass_on_small_sets() {
        let b = Budget::default();
        for id in ["convex-6", "double-circle-3", "wrap-convex-3"] {
            let e = entry(id);
            for (name, f, cap) in SUITES.iter().flat_map(|s| suite_checks(s).unwrap()) {
                if e.n() <= cap {
                    let row = f(&e, &b).unwrap();
                    assert!(row.passed, "{name} on {id}: {}", row.detail);
                }
            }
        }
    }

    #[test]
    fn external_points_are_external() {
        let ps = crate::gen::gen_convex(6).unwrap();
        let qs = external_points(&ps, 5);
        assert_eq!(qs.len(), 5);
        assert!(qs.iter().all(|&q| augment(&ps, q).is_ok()));
    }

    #[test]
    fn unknown_suite() {
        assert!(suite_checks("nope").is_none());
        assert!(run_suite("nope", &[], 8, &Budget::default()).is_err());
    }
}

//! Point-set generators and augmentations.
//!
//! Every generator returns a validated [`PointSet`]; a configuration that
//! happens to land on a collinear triple is nudged along a fixed schedule
//! rather than rejected, so outputs are deterministic.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::edges::Edge;
use crate::error::{Error, Result};
use crate::geom::{cross, point_in_triangle, segments_cross, Point, PointSet};
use crate::plane_graph::PlaneGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Convex,
    DoubleChain,
    DoubleCircle,
    Random,
}

/// A reproducible description of a generated point set. `size` is the
/// number of points for convex and random sets and the per-chain (or
/// per-circle) count for the double configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub shape: Shape,
    pub size: usize,
    pub seed: u64,
    pub scale: i64,
}

impl GeneratorSpec {
    pub fn new(shape: Shape, size: usize) -> Self {
        GeneratorSpec {
            shape,
            size,
            seed: 0,
            scale: 1,
        }
    }

    pub fn generate(&self) -> Result<PointSet> {
        if self.scale < 1 {
            return Err(Error::InfeasibleScale(self.scale));
        }
        let base = match self.shape {
            Shape::Convex => gen_convex(self.size)?,
            Shape::DoubleChain => gen_double_chain(self.size)?,
            Shape::DoubleCircle => return gen_double_circle_scaled(self.size, self.scale),
            Shape::Random => gen_random(self.size, self.seed)?,
        };
        if self.scale == 1 {
            return Ok(base);
        }
        let s = self.scale;
        PointSet::new(
            base.points()
                .iter()
                .map(|p| Point::new(p.x * s, p.y * s))
                .collect(),
        )
    }
}

fn at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::DomainError(format!(
            "{what} needs at least {min}, got {n}"
        )));
    }
    Ok(())
}

/// `n` points on the parabola `y = x²`.
pub fn gen_convex(n: usize) -> Result<PointSet> {
    at_least(n, 3, "a convex set")?;
    PointSet::new((0..n as i64).map(|i| Point::new(i, i * i)).collect())
}

/// Two facing chains of `m` points each. Both chains bend away from the
/// strip between them, so the hull is the four chain endpoints and every
/// point of one chain sees every point of the other.
pub fn gen_double_chain(m: usize) -> Result<PointSet> {
    at_least(m, 2, "a double chain")?;
    let m_i = m as i64;
    let sag = (m_i - 1) * (m_i - 1);
    for extra in 0..64 {
        let gap = 4 * sag + 8 * m_i + extra;
        let mut pts = Vec::with_capacity(2 * m);
        for i in 0..m_i {
            let d = 2 * i - (m_i - 1);
            pts.push(Point::new(4 * d, -d * d));
        }
        for i in 0..m_i {
            let d = 2 * i - (m_i - 1);
            pts.push(Point::new(4 * d, gap + d * d));
        }
        if let Ok(ps) = PointSet::new(pts) {
            if double_chain_visible(&ps, m) && (m == 2 || ps.h() == 4) {
                return Ok(ps);
            }
        }
    }
    Err(Error::InfeasibleScale(1))
}

/// Every segment from the first `m` points to the last `m` avoids all
/// chain edges.
pub fn double_chain_visible(ps: &PointSet, m: usize) -> bool {
    let p = ps.points();
    let chain_edges: Vec<(Point, Point)> = (0..m - 1)
        .flat_map(|i| [(p[i], p[i + 1]), (p[m + i], p[m + i + 1])])
        .collect();
    (0..m).all(|a| {
        (m..2 * m).all(|b| {
            chain_edges
                .iter()
                .all(|&(c, d)| !segments_cross(p[a], p[b], c, d))
        })
    })
}

/// Hull radius per unit of scale for [`gen_double_circle_scaled`].
pub const DOUBLE_CIRCLE_UNIT: i64 = 400;

pub fn gen_double_circle(m: usize) -> Result<PointSet> {
    gen_double_circle_scaled(m, 1)
}

/// `m` points near a regular `m`-gon of radius `scale·DOUBLE_CIRCLE_UNIT`,
/// followed by `m` interior points: point `m + i` sits at the midpoint of
/// hull edge `(i, i+1)`, pulled toward the center by 1/16 of the edge
/// length and jittered by at most one unit.
pub fn gen_double_circle_scaled(m: usize, scale: i64) -> Result<PointSet> {
    at_least(m, 3, "a double circle")?;
    if scale < 1 {
        return Err(Error::InfeasibleScale(scale));
    }
    let r = (scale * DOUBLE_CIRCLE_UNIT) as f64;
    let hull: Vec<Point> = (0..m)
        .map(|i| {
            let th = std::f64::consts::TAU * i as f64 / m as f64 + 0.1;
            Point::new((r * th.cos()).round() as i64, (r * th.sin()).round() as i64)
        })
        .collect();
    let edge_len = {
        let (a, b) = (hull[0], hull[1]);
        (((b.x - a.x).pow(2) + (b.y - a.y).pow(2)) as f64).sqrt()
    };
    if edge_len / 16.0 < 4.0 {
        return Err(Error::InfeasibleScale(scale));
    }
    const JITTER: [(i64, i64); 9] = [
        (0, 0),
        (1, 0),
        (0, 1),
        (-1, 0),
        (0, -1),
        (1, 1),
        (-1, 1),
        (1, -1),
        (-1, -1),
    ];
    for round in 0..JITTER.len() {
        let mut pts = hull.clone();
        for i in 0..m {
            let (a, b) = (hull[i], hull[(i + 1) % m]);
            let (mx, my) = ((a.x + b.x) as f64 / 2.0, (a.y + b.y) as f64 / 2.0);
            let dist = (mx * mx + my * my).sqrt();
            let pull = edge_len / 16.0 / dist;
            let (jx, jy) = JITTER[(i + round) % JITTER.len()];
            pts.push(Point::new(
                (mx * (1.0 - pull)).round() as i64 + jx,
                (my * (1.0 - pull)).round() as i64 + jy,
            ));
        }
        let Ok(ps) = PointSet::new(pts) else { continue };
        if is_double_circle(&ps, m) {
            return Ok(ps);
        }
    }
    Err(Error::InfeasibleScale(scale))
}

/// The first `m` points are the hull, in order, and each interior point
/// `m + i` lies inside the triangle spanned by hull edge `(i, i+1)` and the
/// origin, with no other point in the triangle `(i, m + i, i + 1)`.
pub fn is_double_circle(ps: &PointSet, m: usize) -> bool {
    if ps.len() != 2 * m || ps.h() != m {
        return false;
    }
    let p = ps.points();
    let o = Point::new(0, 0);
    (0..m).all(|i| {
        let (a, b, c) = (p[i], p[(i + 1) % m], p[m + i]);
        ps.is_hull_vertex(i)
            && point_in_triangle(c, a, b, o)
            && (0..2 * m).all(|k| k == m + i || !point_in_triangle(p[k], a, c, b))
    })
}

/// Rejection-samples `n` points in `[0, 1000)²` in general position.
pub fn gen_random(n: usize, seed: u64) -> Result<PointSet> {
    at_least(n, 3, "a random set")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let max_attempts = 10_000 * n;
    let mut attempts = 0;
    while pts.len() < n {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::ExhaustedAttempts(max_attempts));
        }
        let q = Point::new(rng.gen_range(0..1000), rng.gen_range(0..1000));
        let collinear = pts.contains(&q)
            || (0..pts.len()).any(|i| (i + 1..pts.len()).any(|j| cross(pts[i], pts[j], q) == 0));
        if !collinear {
            pts.push(q);
        }
    }
    PointSet::new(pts)
}

/// Appends three points forming a triangle that strictly contains `s` with
/// a margin of at least its diameter. The originals keep their indices.
pub fn add_triangular_hull(s: &PointSet) -> Result<PointSet> {
    let p = s.points();
    let (min_x, max_x) = (
        p.iter().map(|q| q.x).min().unwrap(),
        p.iter().map(|q| q.x).max().unwrap(),
    );
    let (min_y, max_y) = (
        p.iter().map(|q| q.y).min().unwrap(),
        p.iter().map(|q| q.y).max().unwrap(),
    );
    let d = (max_x - min_x).max(max_y - min_y) + 1;
    let (cx, cy) = ((min_x + max_x) / 2, (min_y + max_y) / 2);
    for nudge in 0..64 {
        let corners = [
            Point::new(cx - 4 * d - nudge, cy - 2 * d),
            Point::new(cx + 4 * d, cy - 2 * d - nudge),
            Point::new(cx + nudge, cy + 4 * d),
        ];
        let mut pts = p.to_vec();
        pts.extend(corners);
        if let Ok(ps) = PointSet::new(pts) {
            if ps.h() == 3 {
                return Ok(ps);
            }
        }
    }
    Err(Error::InfeasibleScale(1))
}

/// `s` with `q` appended, which must lie strictly outside the hull of `s`.
pub fn augment(s: &PointSet, q: Point) -> Result<PointSet> {
    if !s.is_external(q) {
        return Err(Error::NotExternal);
    }
    let mut pts = s.points().to_vec();
    pts.push(q);
    PointSet::new(pts)
}

/// The first edge `uv` of the crossing-free cycle `c` (in index order) such
/// that neither `pu` nor `pv` crosses an edge of `c`.
pub fn reattachment_edge(c: &PlaneGraph, p: Point) -> Result<Edge> {
    let ps = c.point_set();
    if !ps.is_external(p) {
        return Err(Error::NotExternal);
    }
    let pts = ps.points();
    let edges = c.edges();
    let sees = |u: usize| {
        edges
            .iter()
            .all(|e| !segments_cross(p, pts[u], pts[e.0], pts[e.1]))
    };
    edges
        .iter()
        .copied()
        .find(|e| sees(e.0) && sees(e.1))
        .ok_or_else(|| Error::NotSimple("no cycle edge is visible from the external point".into()))
}

/// Replaces the reattachment edge `uv` of `c` by the path `u p v`, where
/// `p` is the last point of `augmented` and the other points match `c`'s.
pub fn reattach_cycle(c: &PlaneGraph, augmented: &Arc<PointSet>) -> Result<(Edge, PlaneGraph)> {
    let n = c.num_vertices();
    if augmented.len() != n + 1 || augmented.points()[..n] != c.point_set().points()[..] {
        return Err(Error::MismatchedPointSet);
    }
    let p = augmented.point(n);
    let e = reattachment_edge(c, p)?;
    let edges = c
        .edges()
        .into_iter()
        .filter(|&f| f != e)
        .map(|f| (f.0, f.1))
        .chain([(e.0, n), (e.1, n)]);
    Ok((e, PlaneGraph::new(Arc::clone(augmented), edges)?))
}

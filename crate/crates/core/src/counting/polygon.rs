use crate::error::{Error, Result};
use crate::geom::{cross, segments_cross, Point};
use crate::plane_graph::{face_walks, is_convex_walk};

/// A simple polygon stored counterclockwise. Vertices must be in general
/// position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolygon {
    boundary: Vec<Point>,
}

/// A triangulation of a polygon by its vertex positions `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolygonTriangulation {
    /// Diagonals `(i, j)` with `i < j`, sorted.
    pub diagonals: Vec<(usize, usize)>,
    /// Triangles with vertices in increasing order, sorted.
    pub triangles: Vec<[usize; 3]>,
}

fn twice_area(pts: &[Point]) -> i128 {
    let k = pts.len();
    (0..k)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % k]);
            a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
        })
        .sum()
}

impl SimplePolygon {
    /// Validates simplicity; a clockwise boundary is reversed.
    pub fn new(mut boundary: Vec<Point>) -> Result<Self> {
        let k = boundary.len();
        if k < 3 {
            return Err(Error::NotSimple(format!("{k} vertices")));
        }
        for i in 0..k {
            for j in i + 1..k {
                if boundary[i] == boundary[j] {
                    return Err(Error::NotSimple(format!("repeated vertex {}", boundary[i])));
                }
                for l in j + 1..k {
                    if cross(boundary[i], boundary[j], boundary[l]) == 0 {
                        return Err(Error::NotSimple(format!(
                            "collinear vertices {i}, {j}, {l}"
                        )));
                    }
                }
            }
        }
        for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                let (a, b) = (boundary[i], boundary[(i + 1) % k]);
                let (c, d) = (boundary[j], boundary[(j + 1) % k]);
                if segments_cross(a, b, c, d) {
                    return Err(Error::NotSimple(format!("edges {i} and {j} cross")));
                }
            }
        }
        if twice_area(&boundary) < 0 {
            boundary.reverse();
        }
        Ok(SimplePolygon { boundary })
    }

    pub fn boundary(&self) -> &[Point] {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn is_convex(&self) -> bool {
        let idx: Vec<usize> = (0..self.len()).collect();
        is_convex_walk(&self.boundary, &idx)
    }

    pub fn is_boundary_edge(&self, i: usize, j: usize) -> bool {
        let k = self.len();
        (i + 1) % k == j || (j + 1) % k == i
    }

    /// True iff the chord `ij` lies inside the polygon: it crosses no
    /// boundary edge and its midpoint is interior.
    pub fn is_diagonal(&self, i: usize, j: usize) -> bool {
        let k = self.len();
        if i == j || self.is_boundary_edge(i, j) {
            return false;
        }
        let (a, b) = (self.boundary[i], self.boundary[j]);
        for e in 0..k {
            let (c, d) = (self.boundary[e], self.boundary[(e + 1) % k]);
            if segments_cross(a, b, c, d) {
                return false;
            }
        }
        let doubled: Vec<Point> = self
            .boundary
            .iter()
            .map(|p| Point::new(2 * p.x, 2 * p.y))
            .collect();
        winding(&doubled, Point::new(a.x + b.x, a.y + b.y)) != 0
    }

    #[allow(clippy::needless_range_loop)]
    fn chord_table(&self) -> Vec<Vec<bool>> {
        let k = self.len();
        let mut ok = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let v = self.is_boundary_edge(i, j) || self.is_diagonal(i, j);
                ok[i][j] = v;
                ok[j][i] = v;
            }
        }
        ok
    }
}

/// Winding number of the polygon around `q`, which must not lie on the
/// boundary.
fn winding(poly: &[Point], q: Point) -> i32 {
    let k = poly.len();
    let mut w = 0;
    for i in 0..k {
        let (a, b) = (poly[i], poly[(i + 1) % k]);
        if a.y <= q.y {
            if b.y > q.y && cross(a, b, q) > 0 {
                w += 1;
            }
        } else if b.y <= q.y && cross(a, b, q) < 0 {
            w -= 1;
        }
    }
    w
}

/// Number of triangulations of the polygon, by interval dynamic programming
/// over chords `(i, j)` that bound a sub-polygon `i..=j`.
pub fn polygon_triangulation_count(p: &SimplePolygon) -> u64 {
    let k = p.len();
    let ok = p.chord_table();
    let mut t = vec![vec![0u64; k]; k];
    for i in 0..k - 1 {
        t[i][i + 1] = 1;
    }
    for gap in 2..k {
        for i in 0..k - gap {
            let j = i + gap;
            if !ok[i][j] {
                continue;
            }
            t[i][j] = (i + 1..j)
                .filter(|&m| ok[i][m] && ok[m][j])
                .map(|m| t[i][m] * t[m][j])
                .sum();
        }
    }
    t[0][k - 1]
}

/// Triangle lists of each sub-polygon `i..=j`, filled lazily.
type Memo = Vec<Vec<Option<Vec<Vec<[usize; 3]>>>>>;

/// Every triangulation of the polygon.
pub fn enumerate_polygon_triangulations(p: &SimplePolygon) -> Vec<PolygonTriangulation> {
    let k = p.len();
    let ok = p.chord_table();
    let mut memo: Memo = vec![vec![None; k]; k];
    let all = sub_triangulations(0, k - 1, &ok, &mut memo);
    let mut out: Vec<PolygonTriangulation> = all
        .into_iter()
        .map(|mut triangles| {
            triangles.sort_unstable();
            let mut diagonals: Vec<(usize, usize)> = triangles
                .iter()
                .flat_map(|&[a, b, c]| [(a, b), (b, c), (a, c)])
                .filter(|&(a, b)| !p.is_boundary_edge(a, b))
                .collect();
            diagonals.sort_unstable();
            diagonals.dedup();
            PolygonTriangulation {
                diagonals,
                triangles,
            }
        })
        .collect();
    out.sort_by(|a, b| a.diagonals.cmp(&b.diagonals));
    out
}

fn sub_triangulations(
    i: usize,
    j: usize,
    ok: &[Vec<bool>],
    memo: &mut Memo,
) -> Vec<Vec<[usize; 3]>> {
    if j == i + 1 {
        return vec![Vec::new()];
    }
    if let Some(v) = &memo[i][j] {
        return v.clone();
    }
    let mut out = Vec::new();
    for m in i + 1..j {
        if !(ok[i][m] && ok[m][j]) {
            continue;
        }
        let left = sub_triangulations(i, m, ok, memo);
        let right = sub_triangulations(m, j, ok, memo);
        for l in &left {
            for r in &right {
                let mut tri = l.clone();
                tri.extend_from_slice(r);
                tri.push([i, m, j]);
                out.push(tri);
            }
        }
    }
    memo[i][j] = Some(out.clone());
    out
}

/// Triangles with two edges on the polygon boundary.
pub fn ears(p: &SimplePolygon, tp: &PolygonTriangulation) -> Vec<[usize; 3]> {
    tp.triangles
        .iter()
        .copied()
        .filter(|&[a, b, c]| {
            [(a, b), (b, c), (a, c)]
                .iter()
                .filter(|&&(u, v)| p.is_boundary_edge(u, v))
                .count()
                == 2
        })
        .collect()
}

/// The two apexes of a diagonal, one from each adjacent triangle.
fn apexes(tp: &PolygonTriangulation, (a, b): (usize, usize)) -> Vec<usize> {
    tp.triangles
        .iter()
        .filter(|t| t.contains(&a) && t.contains(&b))
        .map(|t| {
            t.iter()
                .copied()
                .find(|&v| v != a && v != b)
                .expect("third vertex")
        })
        .collect()
}

/// Diagonals whose two triangles form a convex quadrilateral.
pub fn flippable_diagonals(p: &SimplePolygon, tp: &PolygonTriangulation) -> Vec<(usize, usize)> {
    let pts = p.boundary();
    tp.diagonals
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let ap = apexes(tp, (a, b));
            ap.len() == 2 && segments_cross(pts[a], pts[b], pts[ap[0]], pts[ap[1]])
        })
        .collect()
}

/// True iff removing `removed` leaves every face of the triangulated polygon
/// convex.
fn faces_convex_without(
    p: &SimplePolygon,
    tp: &PolygonTriangulation,
    removed: &[(usize, usize)],
) -> bool {
    let k = p.len();
    let mut adj = vec![Vec::new(); k];
    let mut add = |a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
    };
    for i in 0..k {
        add(i, (i + 1) % k);
    }
    for &d in &tp.diagonals {
        if !removed.contains(&d) {
            add(d.0, d.1);
        }
    }
    face_walks(p.boundary(), &adj)
        .into_iter()
        .filter(|(_, area)| *area > 0)
        .all(|(w, _)| is_convex_walk(p.boundary(), &w))
}

/// A largest subset of `among` (diagonals of `tp`) whose removal leaves only
/// convex faces, by exhaustive search from the largest size down.
pub fn max_ps_flippable_diagonals(
    p: &SimplePolygon,
    tp: &PolygonTriangulation,
    among: &[(usize, usize)],
) -> Vec<(usize, usize)> {
    let m = among.len();
    assert!(m < 32, "too many candidate diagonals");
    let mut masks: Vec<u32> = (0..1u32 << m).collect();
    masks.sort_by_key(|s| (std::cmp::Reverse(s.count_ones()), *s));
    for s in masks {
        let sub: Vec<(usize, usize)> = (0..m)
            .filter(|i| s >> i & 1 == 1)
            .map(|i| among[i])
            .collect();
        if faces_convex_without(p, tp, &sub) {
            return sub;
        }
    }
    unreachable!("the empty set always qualifies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::catalan;
    use num_bigint::BigUint;

    fn poly(pts: &[(i64, i64)]) -> SimplePolygon {
        SimplePolygon::new(pts.iter().map(|&p| Point::from(p)).collect()).unwrap()
    }

    fn convex(n: i64) -> SimplePolygon {
        poly(&(0..n).map(|i| (i, i * i)).collect::<Vec<_>>())
    }

    #[test]
    fn convex_counts_are_catalan() {
        for n in 3..=12 {
            let p = convex(n);
            let c = polygon_triangulation_count(&p);
            assert_eq!(BigUint::from(c), catalan(n as u32 - 2));
            assert_eq!(enumerate_polygon_triangulations(&p).len() as u64, c);
        }
    }

    #[test]
    fn reflex_quadrilateral_has_one() {
        let p = poly(&[(0, 0), (10, 0), (3, 3), (0, 10)]);
        assert_eq!(polygon_triangulation_count(&p), 1);
        let ts = enumerate_polygon_triangulations(&p);
        assert_eq!(ts.len(), 1);
        assert!(flippable_diagonals(&p, &ts[0]).is_empty());
    }

    #[test]
    fn clockwise_input_is_reversed() {
        let p = poly(&[(0, 10), (3, 3), (10, 0), (0, 0)]);
        assert!(twice_area(p.boundary()) > 0);
        assert_eq!(polygon_triangulation_count(&p), 1);
    }

    #[test]
    fn rejects_non_simple() {
        let bowtie = [(0, 0), (10, 10), (10, 0), (0, 10)]
            .map(Point::from)
            .to_vec();
        assert!(matches!(
            SimplePolygon::new(bowtie),
            Err(Error::NotSimple(_))
        ));
        let two = [(0, 0), (1, 1)].map(Point::from).to_vec();
        assert!(matches!(SimplePolygon::new(two), Err(Error::NotSimple(_))));
    }

    #[test]
    fn ears_of_convex_polygons() {
        let quad = convex(4);
        for t in enumerate_polygon_triangulations(&quad) {
            assert_eq!(ears(&quad, &t).len(), 2);
        }
        let hex = convex(6);
        let fan = enumerate_polygon_triangulations(&hex)
            .into_iter()
            .find(|t| t.diagonals.iter().all(|d| d.0 == 0))
            .unwrap();
        assert_eq!(ears(&hex, &fan).len(), 2);
    }

    #[test]
    fn convex_polygons_flip_every_diagonal() {
        let p = convex(7);
        for t in enumerate_polygon_triangulations(&p) {
            let f = flippable_diagonals(&p, &t);
            assert_eq!(f.len(), 4);
            assert_eq!(max_ps_flippable_diagonals(&p, &t, &f).len(), 4);
        }
    }
}

//! Exact planar primitives over integer coordinates.
//!
//! Every predicate here evaluates an integer determinant in `i128`, so no
//! rounding ever enters a geometric decision. Point sets are validated for
//! general position on construction and are immutable afterwards.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::edges::EdgeTable;
use crate::error::{Error, Result};

/// A point with exact integer coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

/// Twice the signed area of the triangle `pqr`.
#[inline]
pub fn cross(p: Point, q: Point, r: Point) -> i128 {
    let (ax, ay) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (bx, by) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    ax * by - ay * bx
}

/// Sign of the determinant of `(q - p, r - p)`.
#[inline]
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).cmp(&0) {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// True iff the open segments `ab` and `cd` share a point.
///
/// Segments meeting only at a common endpoint do not cross, and neither do
/// segments whose supporting lines meet at an endpoint of one of them.
pub fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = cross(a, b, c).signum();
    let o2 = cross(a, b, d).signum();
    let o3 = cross(c, d, a).signum();
    let o4 = cross(c, d, b).signum();
    if o1 == 0 && o2 == 0 {
        // Collinear: the open intervals must overlap with positive length.
        let key = |p: Point| -> (i64, i64) {
            if a.x != b.x {
                (p.x, p.y)
            } else {
                (p.y, p.x)
            }
        };
        let (mut lo1, mut hi1) = (key(a), key(b));
        if lo1 > hi1 {
            std::mem::swap(&mut lo1, &mut hi1);
        }
        let (mut lo2, mut hi2) = (key(c), key(d));
        if lo2 > hi2 {
            std::mem::swap(&mut lo2, &mut hi2);
        }
        return lo1.max(lo2) < hi1.min(hi2);
    }
    if o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0 {
        return false;
    }
    o1 != o2 && o3 != o4
}

/// Labeled points in general position, with the convex hull precomputed.
#[derive(Debug, Clone)]
pub struct PointSet {
    points: Vec<Point>,
    hull: Vec<usize>,
    interior: Vec<usize>,
    on_hull: Vec<bool>,
    table: Option<EdgeTable>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    /// Validates general position and computes the hull.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        let mut sorted: Vec<(Point, usize)> = points.iter().copied().zip(0..).collect();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                let (first, second) = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
                return Err(Error::DuplicatePoint {
                    point: w[0].0,
                    first,
                    second,
                });
            }
        }
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if cross(points[i], points[j], points[k]) == 0 {
                        return Err(Error::CollinearTriple(i, j, k));
                    }
                }
            }
        }
        let hull = convex_hull(&points);
        let mut on_hull = vec![false; n];
        for &i in &hull {
            on_hull[i] = true;
        }
        let interior = (0..n).filter(|&i| !on_hull[i]).collect();
        let table = EdgeTable::new(&points);
        Ok(PointSet {
            points,
            hull,
            interior,
            on_hull,
            table,
        })
    }

    /// Parses the point-set text format.
    pub fn from_text(text: &str) -> Result<Self> {
        PointSet::new(parse_points(text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.points.len());
        for p in &self.points {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    /// Hull vertices in counterclockwise order.
    pub fn hull(&self) -> &[usize] {
        &self.hull
    }

    pub fn interior(&self) -> &[usize] {
        &self.interior
    }

    pub fn is_hull_vertex(&self, i: usize) -> bool {
        self.on_hull[i]
    }

    /// Number of hull vertices, `h`.
    pub fn h(&self) -> usize {
        self.hull.len()
    }

    /// Number of interior vertices, `n = N - h`.
    pub fn n_interior(&self) -> usize {
        self.interior.len()
    }

    /// Edge indexing and crossing tables; `None` above [`crate::edges::MAX_POINTS`].
    pub fn table(&self) -> Option<&EdgeTable> {
        self.table.as_ref()
    }

    pub(crate) fn table_or_err(&self) -> Result<&EdgeTable> {
        self.table.as_ref().ok_or(Error::TooManyPoints {
            n: self.len(),
            max: crate::edges::MAX_POINTS,
        })
    }

    pub fn orientation(&self, i: usize, j: usize, k: usize) -> Orientation {
        orientation(self.points[i], self.points[j], self.points[k])
    }

    /// Strict containment of `p` in the triangle `abc` (any winding).
    pub fn in_triangle(&self, p: usize, a: usize, b: usize, c: usize) -> bool {
        point_in_triangle(
            self.points[p],
            self.points[a],
            self.points[b],
            self.points[c],
        )
    }

    /// True iff `p` lies strictly outside the convex hull.
    pub fn is_external(&self, p: Point) -> bool {
        if self.hull.len() < 3 {
            return !self.points.contains(&p);
        }
        let h = self.hull.len();
        (0..h).any(|i| {
            let a = self.points[self.hull[i]];
            let b = self.points[self.hull[(i + 1) % h]];
            cross(a, b, p) < 0
        })
    }
}

/// Strict containment of `p` in the triangle `abc`, independent of winding.
pub fn point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s1 = cross(a, b, p).signum();
    let s2 = cross(b, c, p).signum();
    let s3 = cross(c, a, p).signum();
    s1 != 0 && s1 == s2 && s2 == s3
}

/// Andrew's monotone chain; counterclockwise, starting at the lexicographically
/// smallest point. Assumes no three points are collinear.
fn convex_hull(points: &[Point]) -> Vec<usize> {
    let n = points.len();
    if n < 3 {
        return (0..n).collect();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| points[i]);
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && cross(
                    points[hull[hull.len() - 2]],
                    points[hull[hull.len() - 1]],
                    points[i],
                ) <= 0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Parses `# comments`, then `N`, then `N` lines of `x y`.
pub fn parse_points(text: &str) -> Result<Vec<Point>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, first) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing point count".into(),
    })?;
    let count: usize = first.parse().map_err(|_| Error::Parse {
        line: line_no,
        msg: format!("expected a point count, found {first:?}"),
    })?;
    let mut points = Vec::with_capacity(count);
    for (line_no, line) in lines {
        if points.len() == count {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("more than {count} points"),
            });
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected `x y`, found {line:?}"),
            });
        }
        let coord = |s: &str| -> Result<i64> {
            s.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("coordinate {s:?} is not an integer"),
            })
        };
        points.push(Point::new(coord(fields[0])?, coord(fields[1])?));
    }
    if points.len() != count {
        return Err(Error::Parse {
            line: 0,
            msg: format!("expected {count} points, found {}", points.len()),
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(p(0, 0), p(1, 0), p(0, 1)), Orientation::Ccw);
        assert_eq!(
            orientation(p(0, 0), p(1, 1), p(2, 2)),
            Orientation::Collinear
        );
        assert_eq!(orientation(p(0, 0), p(0, 1), p(1, 0)), Orientation::Cw);
    }

    #[test]
    fn crossing_examples() {
        assert!(segments_cross(p(0, 0), p(2, 2), p(0, 2), p(2, 0)));
        assert!(!segments_cross(p(0, 0), p(1, 0), p(1, 0), p(2, 1)));
        assert!(!segments_cross(p(0, 0), p(1, 0), p(0, 1), p(1, 1)));
        // collinear overlap and collinear touching
        assert!(segments_cross(p(0, 0), p(2, 0), p(1, 0), p(3, 0)));
        assert!(!segments_cross(p(0, 0), p(1, 0), p(1, 0), p(3, 0)));
    }

    #[test]
    fn build_examples() {
        let sq = PointSet::new(vec![p(0, 0), p(10, 0), p(10, 10), p(0, 10)]).unwrap();
        assert_eq!((sq.h(), sq.n_interior()), (4, 0));
        let tc = PointSet::new(vec![p(0, 0), p(8, 0), p(4, 8), p(4, 3)]).unwrap();
        assert_eq!((tc.h(), tc.n_interior()), (3, 1));
        assert_eq!(tc.interior(), &[3]);
        let err = PointSet::new(vec![p(0, 0), p(1, 1), p(2, 2), p(5, 0)]).unwrap_err();
        assert_eq!(err, Error::CollinearTriple(0, 1, 2));
        let dup = PointSet::new(vec![p(0, 0), p(3, 1), p(0, 0)]).unwrap_err();
        assert!(matches!(
            dup,
            Error::DuplicatePoint {
                first: 0,
                second: 2,
                ..
            }
        ));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let text = "# triangle with center\n4\n0 0\n8 0\n4 8\n\n4 3\n";
        let s = PointSet::from_text(text).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(PointSet::from_text(&s.to_text()).unwrap(), s);
        assert!(matches!(
            PointSet::from_text("3\n0 0\n1.5 0\n0 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            PointSet::from_text("3\n0 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(PointSet::from_text(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn external_points() {
        let s = PointSet::new(vec![p(0, 0), p(8, 0), p(4, 8), p(4, 3)]).unwrap();
        assert!(s.is_external(p(100, 0)));
        assert!(!s.is_external(p(4, 2)));
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric(
            a in (-50i64..50, -50i64..50),
            b in (-50i64..50, -50i64..50),
            c in (-50i64..50, -50i64..50),
        ) {
            let (a, b, c) = (Point::from(a), Point::from(b), Point::from(c));
            let flip = |o: Orientation| match o {
                Orientation::Ccw => Orientation::Cw,
                Orientation::Cw => Orientation::Ccw,
                Orientation::Collinear => Orientation::Collinear,
            };
            prop_assert_eq!(orientation(a, b, c), flip(orientation(b, a, c)));
            prop_assert_eq!(orientation(a, b, c), flip(orientation(a, c, b)));
            prop_assert_eq!(orientation(a, b, c), orientation(b, c, a));
        }

        #[test]
        fn accepted_sets_are_in_general_position(
            pts in proptest::collection::vec((-20i64..20, -20i64..20), 3..9)
        ) {
            let pts: Vec<Point> = pts.into_iter().map(Point::from).collect();
            if let Ok(s) = PointSet::new(pts) {
                let n = s.len();
                for i in 0..n { for j in i+1..n { for k in j+1..n {
                    prop_assert_ne!(s.orientation(i, j, k), Orientation::Collinear);
                }}}
                let h = s.hull();
                for i in 0..h.len() {
                    let (a, b, c) = (h[i], h[(i + 1) % h.len()], h[(i + 2) % h.len()]);
                    prop_assert_eq!(s.orientation(a, b, c), Orientation::Ccw);
                }
                prop_assert_eq!(s.h() + s.n_interior(), n);
                // every other point lies left of each hull edge
                for i in 0..h.len() {
                    let (a, b) = (h[i], h[(i + 1) % h.len()]);
                    for q in 0..n {
                        if q != a && q != b {
                            prop_assert_eq!(s.orientation(a, b, q), Orientation::Ccw);
                        }
                    }
                }
            }
        }
    }
}

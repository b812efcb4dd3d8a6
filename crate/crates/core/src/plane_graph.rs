//! Crossing-free straight-edge graphs over a [`PointSet`].
//!
//! Faces are traced combinatorially: neighbors around each vertex are sorted
//! by exact direction comparisons, and the face to the left of a dart `u -> v`
//! continues with the neighbor of `v` immediately clockwise of `u`. Bounded
//! faces therefore come out counterclockwise.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::edges::{bits, Edge, EdgeSet, EdgeTable};
use crate::error::{Error, Result};
use crate::geom::{cross, Point, PointSet};

/// A crossing-free straight-edge graph on a point set.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    points: Arc<PointSet>,
    edges: EdgeSet,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges && same_point_set(&self.points, &other.points)
    }
}

impl Eq for PlaneGraph {}

pub(crate) fn same_point_set(a: &Arc<PointSet>, b: &Arc<PointSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Boundary walks of a plane graph's faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    /// Counterclockwise walks of the bounded faces.
    pub bounded_faces: Vec<Vec<usize>>,
    /// Clockwise walk around the outermost component.
    pub outer_face: Vec<usize>,
    /// Outer walks of any further components.
    pub other_boundaries: Vec<Vec<usize>>,
}

impl FaceSet {
    /// Faces counted by Euler's formula: bounded faces plus the unbounded one.
    pub fn face_count(&self) -> usize {
        self.bounded_faces.len() + 1
    }
}

impl PlaneGraph {
    /// Builds a graph from vertex pairs, rejecting loops, duplicates and crossings.
    pub fn new(
        points: Arc<PointSet>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let table = points.table_or_err()?;
        let mut set = EdgeSet::EMPTY;
        for (a, b) in edges {
            for v in [a, b] {
                if v >= points.len() {
                    return Err(Error::VertexOutOfRange(v));
                }
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            let i = table.index(a, b);
            if set.contains(i) {
                let e = Edge::new(a, b);
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
            set.insert(i);
        }
        PlaneGraph::from_set(points, set)
    }

    /// Builds a graph from an edge set, rejecting crossings.
    pub fn from_set(points: Arc<PointSet>, edges: EdgeSet) -> Result<Self> {
        let table = points.table_or_err()?;
        if edges.0 >> table.num_pairs() != 0 {
            return Err(Error::VertexOutOfRange(points.len()));
        }
        for i in edges.iter() {
            if let Some(j) = table.crossing(i).intersection(edges).iter().next() {
                let (e, f) = (table.edge(i), table.edge(j));
                return Err(Error::EdgesCross(e.0, e.1, f.0, f.1));
            }
        }
        Ok(PlaneGraph { points, edges })
    }

    /// The caller guarantees the set is crossing-free.
    pub(crate) fn from_set_unchecked(points: Arc<PointSet>, edges: EdgeSet) -> Self {
        debug_assert!(points.table().unwrap().is_crossing_free(edges));
        PlaneGraph { points, edges }
    }

    pub fn empty(points: Arc<PointSet>) -> Result<Self> {
        PlaneGraph::from_set(points, EdgeSet::EMPTY)
    }

    /// The convex hull boundary as a graph.
    pub fn hull_cycle(points: Arc<PointSet>) -> Result<Self> {
        let set = hull_edge_set(&points)?;
        Ok(PlaneGraph { points, edges: set })
    }

    pub fn point_set(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn table(&self) -> &EdgeTable {
        self.points
            .table()
            .expect("plane graphs only exist on tabled point sets")
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> Vec<Edge> {
        self.table().edges_of(self.edges)
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(self.table().index(a, b))
    }

    pub fn adjacency(&self) -> Vec<u32> {
        self.table().adjacency(self.edges)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbor_mask(v).count_ones() as usize
    }

    pub(crate) fn neighbor_mask(&self, v: usize) -> u32 {
        let t = self.table();
        (0..self.points.len())
            .filter(|&u| u != v && self.edges.contains(t.index(u, v)))
            .fold(0, |m, u| m | 1 << u)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        bits(self.neighbor_mask(v)).collect()
    }

    /// Neighbors of `v` sorted counterclockwise by direction, starting from
    /// the positive x-axis.
    pub fn neighbors_ccw(&self, v: usize) -> Vec<usize> {
        let mut nb = self.neighbors(v);
        sort_ccw(self.points.points(), v, &mut nb);
        nb
    }

    /// A new graph on the same points with a different edge set.
    pub fn with_edge_set(&self, edges: EdgeSet) -> Result<Self> {
        PlaneGraph::from_set(Arc::clone(&self.points), edges)
    }

    /// Faces of the graph; every vertex must have positive degree.
    pub fn faces(&self) -> Result<FaceSet> {
        let adj = self.adjacency();
        if let Some(v) = adj.iter().position(|&m| m == 0) {
            return Err(Error::IsolatedVertex(v));
        }
        Ok(self.faces_restricted())
    }

    /// Faces of the graph restricted to its non-isolated vertices.
    pub fn faces_restricted(&self) -> FaceSet {
        let adj: Vec<Vec<usize>> = self
            .adjacency()
            .into_iter()
            .map(|m| bits(m).collect())
            .collect();
        let mut bounded = Vec::new();
        let mut unbounded: Vec<(Vec<usize>, i128)> = Vec::new();
        for (walk, area) in face_walks(self.points.points(), &adj) {
            if area > 0 {
                bounded.push(rotate_to_min(walk));
            } else {
                unbounded.push((walk, area));
            }
        }
        bounded.sort();
        // the most negative area encloses everything else
        unbounded.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        let mut rest = unbounded.into_iter().map(|(w, _)| w);
        let outer_face = rest.next().unwrap_or_default();
        FaceSet {
            bounded_faces: bounded,
            outer_face,
            other_boundaries: rest.collect(),
        }
    }

    /// Number of connected components among non-isolated vertices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let n = adj.len();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] || adj[s] == 0 {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                for u in bits(adj[comp[k]]) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// `self ⊆ other`: every edge of `self` is an edge of `other`.
    pub fn is_subgraph(&self, other: &PlaneGraph) -> Result<bool> {
        if !same_point_set(&self.points, &other.points) {
            return Err(Error::MismatchedPointSet);
        }
        Ok(self.edges.is_subset(other.edges))
    }

    /// An interior vertex is valid when three of its neighbors span a triangle
    /// strictly containing it, i.e. its incident edges leave no angular gap of
    /// at least `π`.
    pub fn is_valid_vertex(&self, p: usize) -> Result<bool> {
        if p >= self.points.len() {
            return Err(Error::VertexOutOfRange(p));
        }
        if self.points.is_hull_vertex(p) {
            return Err(Error::NotInterior(p));
        }
        Ok(no_reflex_gap(
            self.points.points(),
            p,
            &self.neighbors_ccw(p),
        ))
    }

    /// Hull edges present, no isolated vertex, and every bounded face convex.
    ///
    /// The face-based answer is cross-checked against the valid-vertex
    /// characterization; a disagreement is a bug and panics.
    pub fn is_convex_decomposition(&self) -> bool {
        let hull = match hull_edge_set(&self.points) {
            Ok(h) => h,
            Err(_) => return false,
        };
        if !hull.is_subset(self.edges) {
            return false;
        }
        if self.points.len() > 1 && self.adjacency().contains(&0) {
            return false;
        }
        let faces = self.faces_restricted();
        let pts = self.points.points();
        let by_faces = faces.other_boundaries.is_empty()
            && faces.bounded_faces.iter().all(|f| is_convex_walk(pts, f));
        let by_vertices = self
            .points
            .interior()
            .iter()
            .all(|&p| self.is_valid_vertex(p).expect("interior vertex"));
        assert_eq!(
            by_faces,
            by_vertices,
            "face convexity and valid-vertex criteria disagree on {:?}",
            self.edges()
        );
        by_faces
    }

    /// Serializes as `points <ref>` followed by one `u v` line per edge.
    pub fn to_text(&self, point_set_ref: &str) -> String {
        let mut out = format!("points {point_set_ref}\n");
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }
}

/// Parses the graph text format into the point-set reference and edge list.
pub fn parse_graph_text(text: &str) -> Result<(String, Vec<Edge>)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (no, head) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing `points` line".into(),
    })?;
    let reference = head
        .strip_prefix("points")
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .ok_or(Error::Parse {
            line: no,
            msg: "expected `points <path>`".into(),
        })?
        .to_string();
    let mut edges = Vec::new();
    for (no, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: no,
                msg: format!("bad vertex index {s:?}"),
            })
        };
        if f.len() != 2 {
            return Err(Error::Parse {
                line: no,
                msg: format!("expected `u v`, found {line:?}"),
            });
        }
        edges.push(Edge::new(parse(f[0])?, parse(f[1])?));
    }
    Ok((reference, edges))
}

/// Hull boundary edges as a set.
pub fn hull_edge_set(points: &PointSet) -> Result<EdgeSet> {
    let table = points.table_or_err()?;
    let hull = points.hull();
    let mut set = EdgeSet::EMPTY;
    match hull.len() {
        0 | 1 => {}
        2 => set.insert(table.index(hull[0], hull[1])),
        h => {
            for i in 0..h {
                set.insert(table.index(hull[i], hull[(i + 1) % h]));
            }
        }
    }
    Ok(set)
}

fn half(d: (i64, i64)) -> u8 {
    if d.1 > 0 || (d.1 == 0 && d.0 > 0) {
        0
    } else {
        1
    }
}

/// Exact counterclockwise comparison of directions from `center`.
pub(crate) fn cmp_direction(center: Point, a: Point, b: Point) -> Ordering {
    let da = (a.x - center.x, a.y - center.y);
    let db = (b.x - center.x, b.y - center.y);
    half(da)
        .cmp(&half(db))
        .then_with(|| 0.cmp(&cross(center, a, b)))
}

pub(crate) fn sort_ccw(points: &[Point], center: usize, nb: &mut [usize]) {
    let c = points[center];
    nb.sort_by(|&a, &b| cmp_direction(c, points[a], points[b]));
}

/// All consecutive counterclockwise neighbor pairs span less than `π`.
pub(crate) fn no_reflex_gap(points: &[Point], p: usize, ccw: &[usize]) -> bool {
    let k = ccw.len();
    k >= 3 && (0..k).all(|i| cross(points[p], points[ccw[i]], points[ccw[(i + 1) % k]]) > 0)
}

/// Strictly convex counterclockwise simple walk.
pub(crate) fn is_convex_walk(points: &[Point], walk: &[usize]) -> bool {
    let k = walk.len();
    if k < 3 {
        return false;
    }
    let mut seen = walk.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    (0..k).all(|i| {
        cross(
            points[walk[i]],
            points[walk[(i + 1) % k]],
            points[walk[(i + 2) % k]],
        ) > 0
    })
}

/// Traces every face boundary of the embedded graph. Returns each walk with
/// twice its signed area; bounded faces have positive area.
pub(crate) fn face_walks(points: &[Point], adj: &[Vec<usize>]) -> Vec<(Vec<usize>, i128)> {
    let n = adj.len();
    let mut rot: Vec<Vec<usize>> = adj.to_vec();
    for (v, nb) in rot.iter_mut().enumerate() {
        sort_ccw(points, v, nb);
    }
    let pos = |v: usize, u: usize, rot: &Vec<Vec<usize>>| -> usize {
        rot[v]
            .iter()
            .position(|&w| w == u)
            .expect("dart endpoints adjacent")
    };
    let mut used: Vec<Vec<bool>> = rot.iter().map(|r| vec![false; r.len()]).collect();
    let mut walks = Vec::new();
    for s in 0..n {
        for si in 0..rot[s].len() {
            if used[s][si] {
                continue;
            }
            let mut walk = Vec::new();
            let mut area: i128 = 0;
            let (mut u, mut ui) = (s, si);
            loop {
                used[u][ui] = true;
                let v = rot[u][ui];
                walk.push(u);
                let (pu, pv) = (points[u], points[v]);
                area += pu.x as i128 * pv.y as i128 - pv.x as i128 * pu.y as i128;
                let k = rot[v].len();
                let back = pos(v, u, &rot);
                let next = (back + k - 1) % k;
                u = v;
                ui = next;
                if u == s && ui == si {
                    break;
                }
            }
            walks.push((walk, area));
        }
    }
    walks
}

fn rotate_to_min(mut walk: Vec<usize>) -> Vec<usize> {
    if let Some(i) = walk
        .iter()
        .enumerate()
        .min_by_key(|(_, &v)| v)
        .map(|(i, _)| i)
    {
        walk.rotate_left(i);
    }
    walk
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn set(pts: &[(i64, i64)]) -> Arc<PointSet> {
        Arc::new(PointSet::new(pts.iter().map(|&p| Point::from(p)).collect()).unwrap())
    }

    fn quad() -> Arc<PointSet> {
        set(&[(0, 0), (10, 0), (10, 10), (0, 10)])
    }

    fn tri_center() -> Arc<PointSet> {
        set(&[(0, 0), (8, 0), (4, 8), (4, 3)])
    }

    /// Oracle: exhaustive search for a neighbor triple strictly containing `p`.
    fn has_valid_triple(g: &PlaneGraph, p: usize) -> bool {
        let nb = g.neighbors(p);
        let ps = g.point_set();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                for k in j + 1..nb.len() {
                    if ps.in_triangle(p, nb[i], nb[j], nb[k]) {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn faces_of_small_graphs() {
        let q = quad();
        let t = PlaneGraph::new(q, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let f = t.faces().unwrap();
        assert_eq!(f.bounded_faces, vec![vec![0, 1, 2], vec![0, 2, 3]]);
        assert_eq!(f.outer_face.len(), 4);

        let pent = set(&[(0, 0), (1, 1), (2, 4), (3, 9), (4, 16)]);
        let c = PlaneGraph::hull_cycle(pent).unwrap();
        let f = c.faces().unwrap();
        assert_eq!(f.bounded_faces.len(), 1);
        assert_eq!(f.bounded_faces[0].len(), 5);

        let tc = tri_center();
        let g = PlaneGraph::new(tc, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        let f = g.faces().unwrap();
        assert_eq!(f.bounded_faces.len(), 3);
        assert!(f.bounded_faces.iter().all(|w| w.len() == 3));
    }

    #[test]
    fn faces_reject_isolated_vertices() {
        let tc = tri_center();
        let g = PlaneGraph::hull_cycle(tc).unwrap();
        assert_eq!(g.faces().unwrap_err(), Error::IsolatedVertex(3));
        assert_eq!(g.faces_restricted().bounded_faces.len(), 1);
    }

    #[test]
    fn construction_errors() {
        let q = quad();
        assert!(matches!(
            PlaneGraph::new(q.clone(), [(0, 2), (1, 3)]),
            Err(Error::EdgesCross(..))
        ));
        assert_eq!(
            PlaneGraph::new(q.clone(), [(1, 1)]).unwrap_err(),
            Error::Loop(1)
        );
        assert_eq!(
            PlaneGraph::new(q.clone(), [(0, 1), (1, 0)]).unwrap_err(),
            Error::DuplicateEdge(0, 1)
        );
        assert_eq!(
            PlaneGraph::new(q, [(0, 9)]).unwrap_err(),
            Error::VertexOutOfRange(9)
        );
    }

    #[test]
    fn subgraph_relation() {
        let q = quad();
        let hull = PlaneGraph::hull_cycle(q.clone()).unwrap();
        let t1 = hull
            .with_edge_set(
                hull.edge_set()
                    .union(EdgeSet::single(q.table().unwrap().index(0, 2))),
            )
            .unwrap();
        let t2 = hull
            .with_edge_set(
                hull.edge_set()
                    .union(EdgeSet::single(q.table().unwrap().index(1, 3))),
            )
            .unwrap();
        assert!(hull.is_subgraph(&t1).unwrap());
        assert!(!t1.is_subgraph(&t2).unwrap());
        assert!(t1.is_subgraph(&t1).unwrap());
        let other = PlaneGraph::empty(tri_center()).unwrap();
        assert_eq!(
            other.is_subgraph(&t1).unwrap_err(),
            Error::MismatchedPointSet
        );
    }

    #[test]
    fn valid_vertex_examples() {
        let tc = tri_center();
        let full =
            PlaneGraph::new(tc.clone(), [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(full.is_valid_vertex(3).unwrap());
        let two = PlaneGraph::new(tc.clone(), [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]).unwrap();
        assert!(!two.is_valid_vertex(3).unwrap());
        assert_eq!(full.is_valid_vertex(0).unwrap_err(), Error::NotInterior(0));

        // Degree three, but every neighbor lies above a line through the center.
        let s = set(&[(0, 0), (20, 0), (10, 20), (10, 2), (6, 9)]);
        let g =
            PlaneGraph::new(s, [(0, 1), (1, 2), (0, 2), (3, 0), (3, 1), (3, 4), (4, 2)]).unwrap();
        assert_eq!(g.is_valid_vertex(3).unwrap(), has_valid_triple(&g, 3));
        let s = set(&[(0, 0), (20, 0), (10, 20), (10, 4), (6, 9), (13, 12)]);
        // center 3 joined to 2, 4, 5, all strictly above y = 4
        let g = PlaneGraph::new(s, [(0, 1), (1, 2), (0, 2), (3, 2), (3, 4), (3, 5)]).unwrap();
        assert_eq!(g.degree(3), 3);
        assert!(!g.is_valid_vertex(3).unwrap());
        assert!(!has_valid_triple(&g, 3));
    }

    #[test]
    fn convex_decomposition_examples() {
        let tc = tri_center();
        let t =
            PlaneGraph::new(tc.clone(), [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]).unwrap();
        assert!(t.is_convex_decomposition());
        let two = PlaneGraph::new(tc, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]).unwrap();
        assert!(!two.is_convex_decomposition());
        let hex = set(&[(0, 0), (1, 1), (2, 4), (3, 9), (4, 16), (5, 25)]);
        assert!(PlaneGraph::hull_cycle(hex)
            .unwrap()
            .is_convex_decomposition());
    }

    #[test]
    fn graph_text_round_trip() {
        let q = quad();
        let t = PlaneGraph::new(q.clone(), [(2, 3), (0, 1), (1, 2), (0, 3), (0, 2)]).unwrap();
        let text = t.to_text("quad.txt");
        assert!(text.starts_with("points quad.txt\n0 1\n0 2\n"));
        let (r, edges) = parse_graph_text(&text).unwrap();
        assert_eq!(r, "quad.txt");
        let back = PlaneGraph::new(q, edges.iter().map(|e| (e.0, e.1))).unwrap();
        assert_eq!(back, t);
        assert!(parse_graph_text("0 1\n").is_err());
    }

    #[test]
    fn valid_vertex_matches_triple_oracle_on_random_subgraphs() {
        let s = set(&[
            (0, 0),
            (30, 1),
            (14, 28),
            (12, 9),
            (17, 11),
            (15, 5),
            (10, 14),
        ]);
        let table = s.table().unwrap();
        // all crossing-free subsets of the edges at interior vertices, sampled
        let all: Vec<usize> = (0..table.num_pairs()).collect();
        let mut seed = 7u64;
        for _ in 0..400 {
            let mut g = EdgeSet::EMPTY;
            for &i in &all {
                seed = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                if seed >> 62 != 0 && table.crossing(i).is_disjoint(g) {
                    g.insert(i);
                }
            }
            let g = PlaneGraph::from_set(s.clone(), g).unwrap();
            for &p in s.interior() {
                assert_eq!(g.is_valid_vertex(p).unwrap(), has_valid_triple(&g, p));
            }
        }
    }
}

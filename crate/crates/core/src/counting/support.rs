use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::polygon::{polygon_triangulation_count, SimplePolygon};
use crate::budget::Budget;
use crate::edges::{bits, EdgeSet};
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::plane_graph::{face_walks, hull_edge_set, same_point_set, PlaneGraph};
use crate::tri_engine::enumerate_triangulations;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportMethod {
    PolygonDp,
    EnumerationFilter,
}

/// Number of triangulations containing a graph, and how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportResult {
    pub value: u64,
    pub method: SupportMethod,
}

/// Support computations for one point set. The triangulation list needed by
/// the enumeration route is built on first use and shared afterwards.
#[derive(Debug)]
pub struct SupportCounter {
    points: Arc<PointSet>,
    budget: Budget,
    tris: OnceLock<std::result::Result<Vec<EdgeSet>, Error>>,
}

impl SupportCounter {
    pub fn new(points: Arc<PointSet>, budget: Budget) -> Self {
        SupportCounter {
            points,
            budget,
            tris: OnceLock::new(),
        }
    }

    /// Starts from an already enumerated triangulation list.
    pub fn with_triangulations(points: Arc<PointSet>, tris: Vec<EdgeSet>) -> Self {
        let cell = OnceLock::new();
        cell.set(Ok(tris)).expect("fresh cell");
        SupportCounter {
            points,
            budget: Budget::default(),
            tris: cell,
        }
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn triangulations(&self) -> Result<&[EdgeSet]> {
        self.tris
            .get_or_init(|| {
                enumerate_triangulations(&self.points, &self.budget)
                    .map(|ts| ts.iter().map(|t| t.edge_set()).collect())
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Polygon route when it applies, enumeration otherwise.
    pub fn support(&self, g: &PlaneGraph) -> Result<SupportResult> {
        self.check(g)?;
        if let Some(value) = self.by_polygons(g.edge_set()) {
            return Ok(SupportResult {
                value,
                method: SupportMethod::PolygonDp,
            });
        }
        Ok(SupportResult {
            value: self.by_enumeration(g.edge_set())?,
            method: SupportMethod::EnumerationFilter,
        })
    }

    fn check(&self, g: &PlaneGraph) -> Result<()> {
        if same_point_set(&self.points, g.point_set()) {
            Ok(())
        } else {
            Err(Error::MismatchedPointSet)
        }
    }

    /// Counts enumerated triangulations that contain `set`.
    pub fn by_enumeration(&self, set: EdgeSet) -> Result<u64> {
        Ok(self
            .triangulations()?
            .iter()
            .filter(|t| set.is_subset(**t))
            .count() as u64)
    }

    /// Product of polygon triangulation counts over the faces of `G ∪ hull`,
    /// provided that graph is connected, spans every point, and all its
    /// bounded faces are simple polygons. `None` otherwise.
    pub fn by_polygons(&self, set: EdgeSet) -> Option<u64> {
        let ps = &*self.points;
        let table = ps.table()?;
        let full = set.union(hull_edge_set(ps).ok()?);
        let adj = table.adjacency(full);
        if ps.len() < 3 || adj.contains(&0) || !connected(&adj) {
            return None;
        }
        let lists: Vec<Vec<usize>> = adj.iter().map(|&m| bits(m).collect()).collect();
        let mut product = 1u64;
        for (walk, area) in face_walks(ps.points(), &lists) {
            if area <= 0 {
                continue;
            }
            let mut seen = 0u32;
            for &v in &walk {
                if seen >> v & 1 == 1 {
                    return None;
                }
                seen |= 1 << v;
            }
            let poly = SimplePolygon::new(walk.iter().map(|&v| ps.point(v)).collect()).ok()?;
            product *= polygon_triangulation_count(&poly);
        }
        Some(product)
    }
}

fn connected(adj: &[u32]) -> bool {
    let n = adj.len();
    let mut seen = 1u32;
    let mut stack = vec![0usize];
    while let Some(v) = stack.pop() {
        for w in bits(adj[v] & !seen) {
            seen |= 1 << w;
            stack.push(w);
        }
    }
    seen.count_ones() as usize == n
}

/// One-off support computation.
pub fn support(g: &PlaneGraph, budget: &Budget) -> Result<SupportResult> {
    SupportCounter::new(Arc::clone(g.point_set()), *budget).support(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::enumerate_spanning_cycles;
    use crate::geom::Point;

    fn set(pts: &[(i64, i64)]) -> Arc<PointSet> {
        Arc::new(PointSet::new(pts.iter().map(|&p| Point::from(p)).collect()).unwrap())
    }

    #[test]
    fn hull_of_convex_hexagon() {
        let ps = Arc::new(PointSet::new((0..6).map(|i| Point::new(i, i * i)).collect()).unwrap());
        let hull = PlaneGraph::hull_cycle(Arc::clone(&ps)).unwrap();
        let r = support(&hull, &Budget::default()).unwrap();
        assert_eq!(
            r,
            SupportResult {
                value: 14,
                method: SupportMethod::PolygonDp
            }
        );
        let c = SupportCounter::new(ps, Budget::default());
        assert_eq!(c.by_enumeration(hull.edge_set()).unwrap(), 14);
    }

    #[test]
    fn triangulations_have_support_one() {
        let ps = set(&[(0, 0), (20, 1), (18, 17), (2, 15), (9, 4), (11, 11)]);
        let c = SupportCounter::new(Arc::clone(&ps), Budget::default());
        for &t in c.triangulations().unwrap() {
            let g = PlaneGraph::from_set(Arc::clone(&ps), t).unwrap();
            assert_eq!(c.support(&g).unwrap().value, 1);
        }
    }

    #[test]
    fn routes_agree_on_cycles() {
        let ps = set(&[(0, 0), (20, 1), (18, 17), (2, 15), (9, 4), (11, 11), (6, 9)]);
        let c = SupportCounter::new(Arc::clone(&ps), Budget::default());
        for cyc in enumerate_spanning_cycles(&ps, &Budget::default()).unwrap() {
            let fast = c
                .by_polygons(cyc.edge_set())
                .expect("cycles always decompose");
            assert_eq!(fast, c.by_enumeration(cyc.edge_set()).unwrap());
        }
    }

    #[test]
    fn empty_graph_falls_back_to_enumeration() {
        let ps = set(&[(0, 0), (8, 0), (4, 8), (4, 3)]);
        let g = PlaneGraph::empty(ps).unwrap();
        let r = support(&g, &Budget::default()).unwrap();
        assert_eq!(
            r,
            SupportResult {
                value: 1,
                method: SupportMethod::EnumerationFilter
            }
        );
    }
}

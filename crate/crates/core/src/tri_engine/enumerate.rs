use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use super::{flip_set, flippable_in, triangulation_edge_count, Triangulation};
use crate::budget::Budget;
use crate::edges::{EdgeSet, EdgeTable};
use crate::error::{Error, Result};
use crate::geom::PointSet;

fn canonical(points: &Arc<PointSet>, mut sets: Vec<EdgeSet>) -> Vec<Triangulation> {
    let t = points.table().expect("tabled point set");
    sets.sort_by_cached_key(|&s| t.edges_of(s));
    sets.into_iter()
        .map(|s| Triangulation::from_set_unchecked(Arc::clone(points), s))
        .collect()
}

fn check_size(points: &PointSet) -> Result<&EdgeTable> {
    if points.len() < 3 {
        return Err(Error::DomainError(format!(
            "a triangulation needs at least three points, got {}",
            points.len()
        )));
    }
    points.table_or_err()
}

/// Greedy maximal crossing-free set, scanning pairs in index order.
fn greedy(t: &EdgeTable) -> EdgeSet {
    let mut set = EdgeSet::EMPTY;
    for i in 0..t.num_pairs() {
        if t.crossing(i).is_disjoint(set) {
            set.insert(i);
        }
    }
    set
}

/// All triangulations, by breadth-first search of the flip graph (which is
/// connected) from a greedy start. Sorted by edge list.
pub fn enumerate_triangulations(
    points: &Arc<PointSet>,
    budget: &Budget,
) -> Result<Vec<Triangulation>> {
    let t = check_size(points)?;
    let start = greedy(t);
    debug_assert_eq!(start.len(), triangulation_edge_count(points));
    let mut meter = budget.meter("triangulation enumeration");
    let mut seen: HashSet<EdgeSet> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        meter.tick()?;
        for i in flippable_in(points, cur).iter() {
            let next = flip_set(points, cur, t.edge(i)).expect("flippable edge");
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(canonical(points, seen.into_iter().collect()))
}

/// Independent enumerator: maximal crossing-free edge sets by backtracking
/// over pairs. Used as an oracle for the flip-graph search.
pub fn enumerate_triangulations_backtracking(
    points: &Arc<PointSet>,
    budget: &Budget,
) -> Result<Vec<Triangulation>> {
    let t = check_size(points)?;
    let m = t.num_pairs();
    // later[i]: pairs with larger index crossing pair i
    let later: Vec<EdgeSet> = (0..m)
        .map(|i| EdgeSet(t.crossing(i).0 & !((1u128 << (i + 1)) - 1)))
        .collect();
    let mut meter = budget.meter("triangulation backtracking");
    let mut out = Vec::new();
    let mut stack = vec![(0usize, EdgeSet::EMPTY)];
    while let Some((i, set)) = stack.pop() {
        meter.tick()?;
        if i == m {
            let maximal = (0..m).all(|j| set.contains(j) || !t.crossing(j).is_disjoint(set));
            if maximal {
                out.push(set);
            }
            continue;
        }
        let free = t.crossing(i).is_disjoint(set);
        // Skipping pair i only helps if something later could block it.
        if !free || !later[i].is_empty() {
            stack.push((i + 1, set));
        }
        if free {
            let mut with = set;
            with.insert(i);
            stack.push((i + 1, with));
        }
    }
    Ok(canonical(points, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn convex(n: i64) -> Arc<PointSet> {
        Arc::new(PointSet::new((0..n).map(|i| Point::new(i, i * i)).collect()).unwrap())
    }

    #[test]
    fn convex_counts_are_catalan() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429];
        for n in 3..=9 {
            let ts = enumerate_triangulations(&convex(n), &Budget::default()).unwrap();
            assert_eq!(ts.len(), catalan[n as usize - 2], "n = {n}");
        }
    }

    #[test]
    fn routes_agree_on_small_sets() {
        let sets = [
            vec![(0, 0), (10, 0), (5, 9), (4, 3), (6, 1)],
            vec![(0, 0), (12, 0), (12, 12), (0, 12), (3, 5), (8, 7)],
            vec![(0, 0), (20, 1), (18, 17), (2, 15), (9, 4), (11, 11), (6, 9)],
        ];
        for pts in sets {
            let ps = Arc::new(PointSet::new(pts.into_iter().map(Point::from).collect()).unwrap());
            let a = enumerate_triangulations(&ps, &Budget::default()).unwrap();
            let b = enumerate_triangulations_backtracking(&ps, &Budget::default()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_triangulations(&convex(9), &Budget::nodes(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn too_few_points() {
        let ps = Arc::new(PointSet::new(vec![Point::new(0, 0), Point::new(1, 0)]).unwrap());
        assert!(matches!(
            enumerate_triangulations(&ps, &Budget::default()),
            Err(Error::DomainError(_))
        ));
    }
}

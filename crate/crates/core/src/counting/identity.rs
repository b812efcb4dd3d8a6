use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::support::SupportCounter;
use super::{cycles_in, enumerate_perfect_matchings, enumerate_spanning_cycles, matchings_in};
use crate::budget::Budget;
use crate::edges::EdgeSet;
use crate::error::{Error, Result};
use crate::geom::PointSet;
use crate::plane_graph::PlaneGraph;

/// Both sides of a counting identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityResult {
    /// The global count.
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: BigRational,
    /// The sum over triangulations of `1/supp` over contained graphs.
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: BigRational,
}

fn ser_ratio<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl IdentityResult {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Memoized supports shared across worker threads.
struct Memo<'a> {
    counter: &'a SupportCounter,
    cache: Mutex<HashMap<EdgeSet, u64>>,
}

impl Memo<'_> {
    fn support(&self, set: EdgeSet) -> Result<u64> {
        if let Some(&v) = self.cache.lock().expect("memo lock").get(&set) {
            return Ok(v);
        }
        let g = PlaneGraph::from_set_unchecked(Arc::clone(self.counter.points()), set);
        let v = self.counter.support(&g)?.value;
        self.cache.lock().expect("memo lock").insert(set, v);
        Ok(v)
    }
}

/// `Σ_{G ∈ graphs} 1/supp(G)`.
pub fn inverse_support_sum(counter: &SupportCounter, graphs: &[EdgeSet]) -> Result<BigRational> {
    let memo = Memo {
        counter,
        cache: Mutex::new(HashMap::new()),
    };
    sum_inverse(&memo, graphs)
}

fn sum_inverse(memo: &Memo<'_>, graphs: &[EdgeSet]) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for &g in graphs {
        let s = memo.support(g)?;
        total += BigRational::new(BigInt::from(1), BigInt::from(s));
    }
    Ok(total)
}

fn per_triangulation_sum(
    points: &Arc<PointSet>,
    budget: &Budget,
    inside: fn(&PlaneGraph) -> Vec<EdgeSet>,
) -> Result<BigRational> {
    let counter = SupportCounter::new(Arc::clone(points), *budget);
    let tris = counter.triangulations()?.to_vec();
    let memo = Memo {
        counter: &counter,
        cache: Mutex::new(HashMap::new()),
    };
    let parts: Vec<Result<BigRational>> = tris
        .par_iter()
        .map(|&t| {
            let g = PlaneGraph::from_set_unchecked(Arc::clone(points), t);
            sum_inverse(&memo, &inside(&g))
        })
        .collect();
    let mut total = BigRational::zero();
    for p in parts {
        total += p?;
    }
    Ok(total)
}

/// `sc(S)` against `Σ_T Σ_{C ⊆ T} 1/supp(C)` over spanning cycles `C`.
pub fn identity_sc(points: &Arc<PointSet>, budget: &Budget) -> Result<IdentityResult> {
    let lhs = enumerate_spanning_cycles(points, budget)?.len();
    let rhs = per_triangulation_sum(points, budget, cycles_in)?;
    Ok(IdentityResult {
        lhs: BigRational::from_integer(lhs.into()),
        rhs,
    })
}

/// `pm(S)` against `Σ_T Σ_{M ⊆ T} 1/supp(M)` over perfect matchings `M`.
pub fn identity_pm(points: &Arc<PointSet>, budget: &Budget) -> Result<IdentityResult> {
    if points.len() % 2 == 1 {
        return Err(Error::DomainError(
            "perfect matchings need an even number of points".into(),
        ));
    }
    let lhs = enumerate_perfect_matchings(points, budget)?.len();
    let rhs = per_triangulation_sum(points, budget, matchings_in)?;
    Ok(IdentityResult {
        lhs: BigRational::from_integer(lhs.into()),
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn set(pts: &[(i64, i64)]) -> Arc<PointSet> {
        Arc::new(PointSet::new(pts.iter().map(|&p| Point::from(p)).collect()).unwrap())
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn small_identities() {
        let b = Budget::default();
        let hex = Arc::new(PointSet::new((0..6).map(|i| Point::new(i, i * i)).collect()).unwrap());
        assert_eq!(
            identity_sc(&hex, &b).unwrap(),
            IdentityResult {
                lhs: int(1),
                rhs: int(1)
            }
        );
        let quad = set(&[(0, 0), (10, 0), (10, 10), (0, 10)]);
        assert_eq!(identity_sc(&quad, &b).unwrap().rhs, int(1));
        assert_eq!(
            identity_pm(&quad, &b).unwrap(),
            IdentityResult {
                lhs: int(2),
                rhs: int(2)
            }
        );
        let tc = set(&[(0, 0), (8, 0), (4, 8), (4, 3)]);
        assert_eq!(identity_sc(&tc, &b).unwrap().rhs, int(3));
        assert_eq!(identity_pm(&tc, &b).unwrap().rhs, int(3));
    }

    #[test]
    fn seven_points() {
        let ps = set(&[(0, 0), (20, 1), (18, 17), (2, 15), (9, 4), (11, 11), (6, 9)]);
        assert!(identity_sc(&ps, &Budget::default()).unwrap().holds());
        assert!(identity_pm(&ps, &Budget::default()).is_err());
    }
}

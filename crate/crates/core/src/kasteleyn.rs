//! Weighted perfect-matching sums of plane graphs via Pfaffian orientations.
//!
//! For a plane graph with a Pfaffian orientation, the weighted skew adjacency
//! matrix `B` satisfies `|det B| = (Σ_M μ(M))²`, so the matching sum is the
//! exact square root of an integer determinant after clearing denominators.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::edges::{bits, Edge, EdgeSet};
use crate::error::{Error, Result};
use crate::plane_graph::{face_walks, PlaneGraph};

/// Positive rational weight per edge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EdgeWeighting {
    weights: BTreeMap<Edge, BigRational>,
}

impl EdgeWeighting {
    pub fn new(weights: impl IntoIterator<Item = (Edge, BigRational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, w) in weights {
            let e = Edge::new(e.0, e.1);
            if !w.is_positive() {
                return Err(Error::BadWeight(e.0, e.1));
            }
            map.insert(e, w);
        }
        Ok(EdgeWeighting { weights: map })
    }

    /// Every edge of `g` weighted `w`.
    pub fn uniform(g: &PlaneGraph, w: BigRational) -> Result<Self> {
        EdgeWeighting::new(g.edges().into_iter().map(|e| (e, w.clone())))
    }

    pub fn ones(g: &PlaneGraph) -> Self {
        EdgeWeighting::uniform(g, BigRational::one()).expect("positive weight")
    }

    pub fn get(&self, e: Edge) -> Option<&BigRational> {
        self.weights.get(&Edge::new(e.0, e.1))
    }

    pub fn set(&mut self, e: Edge, w: BigRational) -> Result<()> {
        let e = Edge::new(e.0, e.1);
        if !w.is_positive() {
            return Err(Error::BadWeight(e.0, e.1));
        }
        self.weights.insert(e, w);
        Ok(())
    }

    fn require(&self, e: Edge) -> Result<&BigRational> {
        self.get(e).ok_or(Error::BadWeight(e.0, e.1))
    }
}

/// Orientation of every edge of a plane graph; edges in `reversed` point
/// from the higher to the lower index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfaffianOrientation {
    graph: PlaneGraph,
    reversed: EdgeSet,
}

impl PfaffianOrientation {
    pub fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    /// True iff the edge is oriented `a -> b`.
    pub fn points_from(&self, a: usize, b: usize) -> bool {
        let i = self.graph.table().index(a, b);
        (a < b) != self.reversed.contains(i)
    }

    /// Per bounded face walk, the number of edge traversals against the
    /// edge orientation (clockwise relative to the face).
    pub fn clockwise_counts(&self) -> Vec<usize> {
        bounded_walks(&self.graph)
            .iter()
            .map(|w| clockwise_in(w, |a, b| self.points_from(a, b)))
            .collect()
    }

    /// Every bounded face has an odd clockwise count.
    pub fn is_pfaffian(&self) -> bool {
        self.clockwise_counts().iter().all(|c| c % 2 == 1)
    }
}

fn bounded_walks(g: &PlaneGraph) -> Vec<Vec<usize>> {
    let adj: Vec<Vec<usize>> = g
        .adjacency()
        .into_iter()
        .map(|m| bits(m).collect())
        .collect();
    face_walks(g.point_set().points(), &adj)
        .into_iter()
        .filter(|(_, area)| *area > 0)
        .map(|(w, _)| w)
        .collect()
}

fn clockwise_in(walk: &[usize], along: impl Fn(usize, usize) -> bool) -> usize {
    let k = walk.len();
    (0..k)
        .filter(|&i| !along(walk[i], walk[(i + 1) % k]))
        .count()
}

/// FKT construction: orient a spanning forest low to high, then settle the
/// remaining edges face by face, always picking a bounded face with a single
/// unoriented edge and fixing its parity.
pub fn pfaffian_orientation(g: &PlaneGraph) -> Result<PfaffianOrientation> {
    let n = g.num_vertices();
    let adj = g.adjacency();
    if n > 1 {
        if let Some(v) = adj.iter().position(|&m| m == 0) {
            return Err(Error::IsolatedVertex(v));
        }
    }
    let table = g.table();
    let mut oriented = EdgeSet::EMPTY;
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for v in bits(adj[u]) {
                if !seen[v] {
                    seen[v] = true;
                    oriented.insert(table.index(u, v));
                    queue.push_back(v);
                }
            }
        }
    }
    let mut reversed = EdgeSet::EMPTY;
    let walks = bounded_walks(g);
    let walk_edges: Vec<EdgeSet> = walks
        .iter()
        .map(|w| {
            (0..w.len())
                .map(|i| table.index(w[i], w[(i + 1) % w.len()]))
                .collect()
        })
        .collect();
    let mut done = vec![false; walks.len()];
    loop {
        let mut progress = false;
        for f in 0..walks.len() {
            if done[f] {
                continue;
            }
            let open = walk_edges[f].difference(oriented);
            match open.len() {
                0 => done[f] = true,
                1 => {
                    let i = open.iter().next().expect("one open edge");
                    oriented.insert(i);
                    let along = |a: usize, b: usize| {
                        let j = table.index(a, b);
                        (a < b) != reversed.contains(j)
                    };
                    if clockwise_in(&walks[f], along) % 2 == 0 {
                        reversed.insert(i);
                    }
                    done[f] = true;
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    debug_assert!(oriented == g.edge_set());
    let o = PfaffianOrientation {
        graph: g.clone(),
        reversed,
    };
    assert!(
        o.is_pfaffian(),
        "FKT orientation failed the face parity check"
    );
    Ok(o)
}

/// The weighted skew adjacency matrix `B` of an oriented graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KasteleynMatrix {
    entries: Vec<Vec<BigRational>>,
}

impl KasteleynMatrix {
    pub fn new(o: &PfaffianOrientation, mu: &EdgeWeighting) -> Result<Self> {
        let n = o.graph.num_vertices();
        let mut entries = vec![vec![BigRational::zero(); n]; n];
        for e in o.graph.edges() {
            let w = mu.require(e)?.clone();
            let (a, b) = if o.points_from(e.0, e.1) {
                (e.0, e.1)
            } else {
                (e.1, e.0)
            };
            entries[b][a] = -w.clone();
            entries[a][b] = w;
        }
        Ok(KasteleynMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i][j]
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            self.entries[i][i].is_zero()
                && (0..n).all(|j| self.entries[i][j] == -self.entries[j][i].clone())
        })
    }

    /// Exact determinant, via fraction-free elimination on the matrix scaled
    /// by the least common denominator.
    pub fn determinant(&self) -> BigRational {
        let (scaled, l) = self.scaled();
        let n = self.size() as u32;
        BigRational::new(bareiss(scaled), num_traits::pow(l, n as usize))
    }

    /// Integer matrix `L·B` and the scale `L`.
    fn scaled(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let l = self
            .entries
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let m = self
            .entries
            .iter()
            .map(|row| row.iter().map(|q| q.numer() * (&l / q.denom())).collect())
            .collect();
        (m, l)
    }
}

/// Bareiss fraction-free determinant.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// `Σ_M Π_{e∈M} μ(e)` over perfect matchings `M ⊆ G`.
pub fn matching_sum(g: &PlaneGraph, mu: &EdgeWeighting) -> Result<BigRational> {
    let n = g.num_vertices();
    for e in g.edges() {
        mu.require(e)?;
    }
    if n % 2 == 1 || g.adjacency().contains(&0) {
        return Ok(BigRational::zero());
    }
    let o = pfaffian_orientation(g)?;
    let b = KasteleynMatrix::new(&o, mu)?;
    let (scaled, l) = b.scaled();
    let det = bareiss(scaled);
    let det = if det.sign() == Sign::Minus { -det } else { det };
    let root = exact_sqrt(&det).ok_or_else(|| Error::NotPerfectSquare(det.to_string()))?;
    Ok(BigRational::new(root, num_traits::pow(l, n / 2)))
}

/// Number of perfect matchings using only edges of `g`.
pub fn count_matchings_in(g: &PlaneGraph) -> Result<u64> {
    let s = matching_sum(g, &EdgeWeighting::ones(g))?;
    assert!(s.is_integer());
    Ok(u64::try_from(s.to_integer()).expect("matching count fits in u64"))
}

/// `((2/N) Σ_e μ(e)²)^{N/4}`: the Hadamard/AM-GM bound on the matching sum.
pub fn hadamard_bound(g: &PlaneGraph, mu: &EdgeWeighting) -> Result<f64> {
    let base = hadamard_base(g, mu)?;
    let n = g.num_vertices() as f64;
    Ok(ratio_to_f64(&base).powf(n / 4.0))
}

/// `(2/N) Σ_e μ(e)²` exactly.
pub fn hadamard_base(g: &PlaneGraph, mu: &EdgeWeighting) -> Result<BigRational> {
    let mut sum = BigRational::zero();
    for e in g.edges() {
        let w = mu.require(e)?;
        sum += w * w;
    }
    let n = g.num_vertices();
    Ok(sum * BigRational::new(2.into(), n.into()))
}

/// Exact check of `matching_sum ≤ hadamard_bound`, as
/// `sum⁴ ≤ ((2/N) Σ μ²)^N`. Returns the matching sum alongside.
pub fn hadamard_holds(g: &PlaneGraph, mu: &EdgeWeighting) -> Result<(bool, BigRational)> {
    let s = matching_sum(g, mu)?;
    let base = hadamard_base(g, mu)?;
    let lhs = num_traits::pow(s.clone(), 4);
    let rhs = num_traits::pow(base, g.num_vertices());
    Ok((lhs <= rhs, s))
}

pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

//! The built-in collection of small point sets that the verification
//! suites sweep over.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::gen::{
    add_triangular_hull, gen_convex, gen_double_chain, gen_double_circle, gen_random,
};
use crate::geom::{Point, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Convex,
    DoubleChain,
    DoubleCircle,
    Wrapped,
    Random,
    Fixed,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub family: Family,
    pub points: Arc<PointSet>,
}

impl CorpusEntry {
    fn new(id: impl Into<String>, family: Family, points: PointSet) -> Self {
        CorpusEntry {
            id: id.into(),
            family,
            points: Arc::new(points),
        }
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }
}

/// Seeds of the random eight-point sets.
pub const RANDOM_8_SEEDS: u64 = 50;

/// A triangle with one point inside.
pub fn triangle_center() -> PointSet {
    PointSet::new(vec![
        Point::new(0, 0),
        Point::new(8, 0),
        Point::new(4, 8),
        Point::new(4, 3),
    ])
    .expect("general position")
}

/// All built-in sets with at most `max_n` points, ordered by family and
/// size. Ids are stable across runs.
pub fn standard_corpus(max_n: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    out.push(CorpusEntry::new(
        "triangle-center",
        Family::Fixed,
        triangle_center(),
    ));
    for n in 4..=10 {
        out.push(CorpusEntry::new(
            format!("convex-{n}"),
            Family::Convex,
            gen_convex(n)?,
        ));
    }
    for m in 2..=5 {
        out.push(CorpusEntry::new(
            format!("double-chain-{m}"),
            Family::DoubleChain,
            gen_double_chain(m)?,
        ));
    }
    for m in 3..=5 {
        out.push(CorpusEntry::new(
            format!("double-circle-{m}"),
            Family::DoubleCircle,
            gen_double_circle(m)?,
        ));
    }
    for n in 3..=7 {
        out.push(CorpusEntry::new(
            format!("wrap-convex-{n}"),
            Family::Wrapped,
            add_triangular_hull(&gen_convex(n)?)?,
        ));
    }
    out.push(CorpusEntry::new(
        "wrap-triangle-center",
        Family::Wrapped,
        add_triangular_hull(&triangle_center())?,
    ));
    out.push(CorpusEntry::new(
        "wrap-double-chain-2",
        Family::Wrapped,
        add_triangular_hull(&gen_double_chain(2)?)?,
    ));
    for (n, seeds) in [(3, 3), (5, 4)] {
        for s in 0..seeds {
            let ps = add_triangular_hull(&gen_random(n, s)?)?;
            out.push(CorpusEntry::new(
                format!("wrap-random-{n}-s{s}"),
                Family::Wrapped,
                ps,
            ));
        }
    }
    for (n, seeds) in [(5, 4), (6, 4), (7, 4), (8, RANDOM_8_SEEDS), (9, 3), (10, 2)] {
        for s in 0..seeds {
            out.push(CorpusEntry::new(
                format!("random-{n}-s{s}"),
                Family::Random,
                gen_random(n, s)?,
            ));
        }
    }
    out.retain(|e| e.n() <= max_n);
    Ok(out)
}

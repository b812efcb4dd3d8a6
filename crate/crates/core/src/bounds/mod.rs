//! Closed-form upper bounds on per-triangulation cycle sums, their constants,
//! and exact-versus-enclosure comparisons against enumerated counts.
//!
//! Irrational quantities are carried as [`Enclosure`]s. An exact value passes
//! an upper-bound check only when it is at most the enclosure's lower end,
//! and a lower-bound check only when it is at least the upper end.

mod checks;

pub use checks::{
    build_bound_report, catalan_bound_holds, eq13_check, eq3_check, lemma52_holds, thm31_check,
    thm31_weighting, thm41_check, BoundReport, Eq13Summary, Eq3Summary, Thm31Row, Thm31Weighting,
    Thm41Result, TriangulationRow,
};

use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative half-width used for enclosures of values computed in double
/// precision.
pub const REL_TOL: f64 = 1e-12;

/// `1 + 4x² − 4x³`.
pub fn cubic(x: f64) -> f64 {
    1.0 + 4.0 * x * x - 4.0 * x * x * x
}

/// A closed interval of positive reals known to contain a quantity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn point(v: f64) -> Self {
        Enclosure { lo: v, hi: v }
    }

    /// `[v(1 − rel), v(1 + rel)]` for positive `v`.
    pub fn around(v: f64, rel: f64) -> Self {
        Enclosure {
            lo: v * (1.0 - rel),
            hi: v * (1.0 + rel),
        }
    }

    fn widen(self) -> Self {
        Enclosure {
            lo: self.lo.next_down().next_down(),
            hi: self.hi.next_up().next_up(),
        }
    }

    pub fn times(self, o: Enclosure) -> Self {
        debug_assert!(self.lo >= 0.0 && o.lo >= 0.0);
        Enclosure {
            lo: self.lo * o.lo,
            hi: self.hi * o.hi,
        }
        .widen()
    }

    /// Integer power of a positive enclosure.
    pub fn powi(self, e: i64) -> Self {
        let base = if e >= 0 { self } else { self.recip() };
        (1..e.unsigned_abs()).fold(
            if e == 0 { Enclosure::point(1.0) } else { base },
            |acc, _| acc.times(base),
        )
    }

    pub fn recip(self) -> Self {
        Enclosure {
            lo: 1.0 / self.hi,
            hi: 1.0 / self.lo,
        }
        .widen()
    }

    /// `q ≤ lo`, compared exactly.
    pub fn exact_below(&self, q: &BigRational) -> bool {
        match BigRational::from_float(self.lo) {
            Some(lo) => *q <= lo,
            None => false,
        }
    }

    /// `q ≥ hi`, compared exactly.
    pub fn exact_above(&self, q: &BigRational) -> bool {
        match BigRational::from_float(self.hi) {
            Some(hi) => *q >= hi,
            None => false,
        }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

/// The root `x` of `1 + 4x² − 4x³` and the derived `γ(κ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Constants {
    pub x: f64,
    /// Interval on which the cubic changes sign.
    pub x_enclosure: Enclosure,
}

impl Constants {
    /// Newton iteration from 1.2, certified by a sign change of the cubic
    /// across `x ± 1e-12`.
    pub fn compute() -> Result<Self> {
        let mut x = 1.2f64;
        for _ in 0..100 {
            let step = cubic(x) / (8.0 * x - 12.0 * x * x);
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (lo, hi) = (x - 1e-12, x + 1e-12);
        if !(cubic(lo) > 0.0 && cubic(hi) < 0.0) || !(1.0 < x && x <= 1.25) {
            return Err(Error::NoRootInBracket { lo, hi });
        }
        Ok(Constants {
            x,
            x_enclosure: Enclosure { lo, hi },
        })
    }

    pub fn get() -> &'static Constants {
        static C: OnceLock<Constants> = OnceLock::new();
        C.get_or_init(|| Constants::compute().expect("the cubic has a root near 1.18"))
    }

    /// `γ(κ) = x·exp(−(x² − 1) / (4(4 + (x² − 1)κ)))`.
    pub fn gamma(&self, kappa: f64) -> f64 {
        let x = self.x;
        let s = x * x - 1.0;
        x * (-s / (4.0 * (4.0 + s * kappa))).exp()
    }

    /// `2^a · x^b`, enclosed. Scaling by a power of two is exact.
    pub fn two_x_power(&self, a: i64, b: i64) -> Enclosure {
        let e = self.x_enclosure.powi(b);
        let s = 2f64.powi(a as i32);
        Enclosure {
            lo: e.lo * s,
            hi: e.hi * s,
        }
    }
}

/// `(3/2^t)·((2−t)(2−t/2)/(1−t)²)^{1−t}`.
pub fn lemma51_base(t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::DomainError(format!("t = {t} outside [0, 1)")));
    }
    let inner = (2.0 - t) * (2.0 - t / 2.0) / ((1.0 - t) * (1.0 - t));
    Ok(3.0 / 2f64.powf(t) * inner.powf(1.0 - t))
}

/// `8·lemma51_base(t)^{N/4}`: the cycle-sum bound in terms of the fraction
/// `t` of interior degree-3 vertices.
pub fn lemma51_bound(n: usize, t: f64) -> Result<f64> {
    Ok(8.0 * lemma51_base(t)?.powf(n as f64 / 4.0))
}

/// `(3 + (γ²−1)(κ+1/2))(4 + (x²−1)κ) / x^{4κ}`.
pub fn lemma53_base(kappa: f64) -> Result<f64> {
    if kappa < 0.0 || kappa.is_nan() {
        return Err(Error::DomainError(format!("kappa = {kappa} is negative")));
    }
    let c = Constants::get();
    let (x, g) = (c.x, c.gamma(kappa));
    Ok((3.0 + (g * g - 1.0) * (kappa + 0.5)) * (4.0 + (x * x - 1.0) * kappa) / x.powf(4.0 * kappa))
}

/// `8·lemma53_base(κ)^{N/4}`: the cycle-sum bound in terms of the flippable
/// edge surplus `κ`.
pub fn lemma53_bound(n: usize, kappa: f64) -> Result<f64> {
    Ok(8.0 * lemma53_base(kappa)?.powf(n as f64 / 4.0))
}

/// Enclosure of a bound evaluated in double precision for `N` points.
pub fn bound_enclosure(v: f64, n: usize) -> Enclosure {
    Enclosure::around(v, REL_TOL * (1.0 + n as f64))
}

/// Where the two per-triangulation bases coincide under `κ = 1/2 − t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub t: f64,
    pub lemma51_side: f64,
    pub lemma53_side: f64,
}

/// Bisection on `[0, 1/2]` for `lemma51_base(t) = lemma53_base(1/2 − t)`.
pub fn solve_threshold() -> Result<Threshold> {
    let f = |t: f64| -> Result<f64> { Ok(lemma51_base(t)? - lemma53_base(0.5 - t)?) };
    let (mut lo, mut hi) = (0.0f64, 0.5f64);
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if flo.signum() == fhi.signum() {
        return Err(Error::NoRootInBracket { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)?.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    Ok(Threshold {
        t,
        lemma51_side: lemma51_base(t)?,
        lemma53_side: lemma53_base(0.5 - t)?,
    })
}

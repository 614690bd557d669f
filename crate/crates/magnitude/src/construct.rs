//! Synthesis of a finite metric space whose small-scale magnitude limit hits
//! a prescribed target `R >= 1`, by bisection inside the join family
//! `X_r^n * X_{s(n,r)}^n`.

use crate::closed::{family_limit, family_upper_bound};
use crate::error::{Error, Result};
use crate::rational::{rat, rat_int, Rational};
use crate::space::FiniteMetricSpace;
use num_traits::{One, Signed};

/// Iteration cap for the bisection; overflow is an error, never an
/// unverified result.
pub const BISECTION_CAP: usize = 256;

/// A constructed space together with its exactly-evaluated limit.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub n: usize,
    pub r: Rational,
    pub space: FiniteMetricSpace,
    pub achieved: Rational,
    pub target: Rational,
    pub gap: Rational,
}

/// Smallest family size `n >= 2` whose value at `r = 2` reaches `R`.
pub fn minimal_family_size(target: &Rational) -> Result<usize> {
    if target < &Rational::one() {
        return Err(Error::InvalidTarget);
    }
    let mut n = 2;
    while family_upper_bound(n) < *target {
        n += 1;
    }
    Ok(n)
}

fn family_space(n: usize, r: &Rational) -> Result<FiniteMetricSpace> {
    let s = rat(2 * n as i64, n as i64 - 1) - r;
    FiniteMetricSpace::uniform(n, r)?.join(&FiniteMetricSpace::uniform(n, &s)?)
}

/// Finds `(n, r)` with `|family_limit(n, r) - R| <= tol` by exact rational
/// bisection over `r` in `[n/(n-1), 2]`, and returns the realized join
/// space. Exact hits at the interval endpoints return a zero gap.
pub fn construct_target_limit(target: &Rational, tol: &Rational) -> Result<ConstructionResult> {
    if !tol.is_positive() {
        return Err(Error::OutOfRange("tolerance must be positive".into()));
    }
    let n = minimal_family_size(target)?;
    let mut lo = rat(n as i64, n as i64 - 1);
    let mut hi = rat_int(2);
    let mut f_lo = Rational::one();
    let mut f_hi = family_limit(n, &hi)?;
    debug_assert_eq!(f_hi, family_upper_bound(n));
    let finish = |r: Rational, achieved: Rational| -> Result<ConstructionResult> {
        let gap = (&achieved - target).abs();
        Ok(ConstructionResult {
            n,
            space: family_space(n, &r)?,
            r,
            achieved,
            target: target.clone(),
            gap,
        })
    };
    if target.is_one() {
        return finish(lo, Rational::one());
    }
    if f_hi == *target {
        return finish(hi, f_hi);
    }
    for _ in 0..BISECTION_CAP {
        // Bracket invariant: the endpoint values always straddle the target.
        debug_assert!(f_lo <= *target && *target <= f_hi);
        let mid = (&lo + &hi) / rat_int(2);
        let value = family_limit(n, &mid)?;
        if (&value - target).abs() <= *tol {
            return finish(mid, value);
        }
        if value < *target {
            lo = mid;
            f_lo = value;
        } else {
            hi = mid;
            f_hi = value;
        }
    }
    Err(Error::BisectionCapExceeded(BISECTION_CAP))
}

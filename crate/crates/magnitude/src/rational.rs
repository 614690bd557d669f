//! Exact scalars: arbitrary-precision rationals and distances extended by infinity.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// Arbitrary-precision rational, the scalar for all exact computation.
/// `num_rational` keeps the invariant we need: positive denominator,
/// fully reduced, canonical zero `0/1`.
pub type Rational = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optionally negative) into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational: {s:?}"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts a rational to the nearest `f64`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    let numer = bigint_to_f64(r.numer());
    let denom = bigint_to_f64(r.denom());
    numer / denom
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    // Good enough for the magnitudes of number that arise here.
    n.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// A distance value: a nonnegative rational or infinity.
///
/// Infinity is absorbing under addition and larger than every finite value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite(Rational),
    Infinity,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(rat_int(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(r) if r.is_zero())
    }

    /// The finite value, if any.
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            ExtRational::Infinity => None,
        }
    }

    /// Multiplies by a finite positive rational; infinity stays infinity.
    pub fn scale(&self, t: &Rational) -> Self {
        match self {
            ExtRational::Finite(r) => ExtRational::Finite(r * t),
            ExtRational::Infinity => ExtRational::Infinity,
        }
    }

    /// Value as `f64`, with infinity mapped to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::Finite(r) => rational_to_f64(r),
            ExtRational::Infinity => f64::INFINITY,
        }
    }

    /// Parses `"inf"` or a rational string.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            Ok(ExtRational::Infinity)
        } else {
            let r = parse_rational(s)?;
            if r.is_negative() {
                return Err(Error::Parse(format!("negative distance: {s:?}")));
            }
            Ok(ExtRational::Finite(r))
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Finite(r) => write!(f, "{}", format_rational(r)),
            ExtRational::Infinity => write!(f, "inf"),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, ExtRational::Finite(_)) => Ordering::Greater,
            (ExtRational::Finite(_), ExtRational::Infinity) => Ordering::Less,
            (ExtRational::Finite(a), ExtRational::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for &ExtRational {
    type Output = ExtRational;
    fn add(self, other: &ExtRational) -> ExtRational {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a + b),
            _ => ExtRational::Infinity,
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "4/3", "-7/2", "12"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn infinity_is_absorbing_and_maximal() {
        let inf = ExtRational::Infinity;
        let one = ExtRational::from_int(1);
        assert_eq!(&inf + &one, ExtRational::Infinity);
        assert!(inf > one);
        assert_eq!(ExtRational::parse("inf").unwrap(), ExtRational::Infinity);
        assert!(ExtRational::parse("-1").is_err());
    }
}

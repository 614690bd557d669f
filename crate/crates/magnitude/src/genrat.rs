//! Generalized rational functions: the fraction field of generalized
//! polynomials, together with the exact `q -> 1` limit engine.

use crate::error::{Error, Result};
use crate::genpoly::GenPoly;
use crate::rational::{format_rational, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Value of an exact one-sided limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitResult {
    Finite(Rational),
    PlusInfinity,
    MinusInfinity,
}

impl LimitResult {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            LimitResult::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, LimitResult::Finite(r) if r.is_one())
    }
}

impl fmt::Display for LimitResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitResult::Finite(r) => write!(f, "{}", format_rational(r)),
            LimitResult::PlusInfinity => write!(f, "+inf"),
            LimitResult::MinusInfinity => write!(f, "-inf"),
        }
    }
}

/// A generalized rational function `num / den` in canonical form.
///
/// Canonical form: common factors on the exponent lattice are reduced away,
/// the denominator is a primitive integer polynomial in `q^{1/L}`, and its
/// lowest-exponent coefficient is positive.
#[derive(Debug, Clone)]
pub struct GenRat {
    num: GenPoly,
    den: GenPoly,
}

impl GenRat {
    pub fn new(num: GenPoly, den: GenPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominatorPolynomial);
        }
        let mut f = GenRat { num, den };
        f.canonicalize();
        Ok(f)
    }

    pub fn from_poly(p: GenPoly) -> Self {
        GenRat {
            num: p,
            den: GenPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(GenPoly::constant(c))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn numerator(&self) -> &GenPoly {
        &self.num
    }

    pub fn denominator(&self) -> &GenPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Reduces to canonical form on the exponent lattice `u = q^{1/L}`.
    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.den = GenPoly::one();
            return;
        }
        let lattice = self
            .num
            .exponent_denominator_lcm()
            .lcm(&self.den.exponent_denominator_lcm());
        let (num_content, num_prim) = self.num.to_lattice(&lattice);
        let (den_content, den_prim) = self.den.to_lattice(&lattice);
        let g = num_prim.gcd(&den_prim);
        let mut num_red = num_prim.div_exact(&g);
        let mut den_red = den_prim.div_exact(&g);
        let content = num_content / den_content;
        // Denominator sign normalization: lowest nonzero coefficient positive.
        let den_low = den_red
            .coeffs
            .iter()
            .find(|c| !Zero::is_zero(*c))
            .expect("nonzero denominator");
        if den_low.is_negative() {
            den_red = den_red.div_exact(&crate::upoly::UPoly::monomial(BigInt::from(-1), 0));
            num_red = num_red.div_exact(&crate::upoly::UPoly::monomial(BigInt::from(-1), 0));
            // content is unchanged: both signs flipped
        }
        self.num = GenPoly::from_lattice(&content, &num_red, &lattice);
        self.den = GenPoly::from_lattice(&Rational::one(), &den_red, &lattice);
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        GenRat::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        GenRat::new(
            &(&self.num * &other.den) - &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        GenRat::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZeroGenRat);
        }
        GenRat::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Floating-point evaluation at `q0 > 0`.
    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.num.eval_f64(q0) / self.den.eval_f64(q0)
    }

    /// Replaces every exponent `r` by `t * r` in numerator and denominator.
    pub fn scale_exponents(&self, t: &Rational) -> Result<Self> {
        GenRat::new(self.num.scale_exponents(t), self.den.scale_exponents(t))
    }

    /// Exact limit as `q -> 1` from below, via the substitution `q = e^{-t}`
    /// and Taylor expansion at `t = 0`.
    ///
    /// The denominator series must have a nonzero coefficient at order below
    /// the number of its distinct exponents (Vandermonde nondegeneracy), so
    /// the search is bounded and failure to find one is an internal error.
    pub fn limit_q1(&self) -> Result<LimitResult> {
        if self.den.is_zero() {
            return Err(Error::ZeroDenominatorPolynomial);
        }
        let bound = self.den.num_terms();
        // Coefficients of the denominator series, computed one order at a
        // time: generically the order-0 coefficient is already nonzero.
        let mut pows: Vec<(Rational, Rational)> = self
            .den
            .terms()
            .iter()
            .map(|(e, a)| (-e, a.clone())) // (-r_i, a_i (-r_i)^k / k!)
            .collect();
        let mut p = None;
        let mut b_p = Rational::zero();
        for k in 0..bound {
            let c: Rational = pows.iter().fold(Rational::zero(), |acc, (_, v)| acc + v);
            if !c.is_zero() {
                p = Some(k);
                b_p = c;
                break;
            }
            let k1 = Rational::from_integer(BigInt::from(k + 1));
            for (neg_r, v) in &mut pows {
                *v = &*v * &*neg_r / &k1;
            }
        }
        let p = p.ok_or_else(|| {
            Error::Internal("denominator series vanished to its exponent-count order".into())
        })?;
        let num_series = self.num.exp_series(p);
        for j in 0..p {
            let a = num_series.coeff(j);
            if !a.is_zero() {
                let sign = a / &b_p;
                return Ok(if sign.is_positive() {
                    LimitResult::PlusInfinity
                } else {
                    LimitResult::MinusInfinity
                });
            }
        }
        Ok(LimitResult::Finite(num_series.coeff(p) / &b_p))
    }
}

/// Equality by cross-multiplication of canonical polynomials.
impl PartialEq for GenRat {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for GenRat {}

impl fmt::Display for GenRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &GenPoly| p.num_terms() > 1;
        if self.den == GenPoly::one() {
            return if wrap(&self.num) {
                write!(f, "({})", self.num)
            } else {
                write!(f, "{}", self.num)
            };
        }
        if wrap(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, " / ")?;
        if wrap(&self.den) || !self.den.terms()[0].0.is_zero() {
            write!(f, "({})", self.den)
        } else {
            write!(f, "{}", self.den)
        }
    }
}

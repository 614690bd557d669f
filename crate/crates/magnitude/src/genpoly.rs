//! Generalized polynomials: finite sums `a_1 q^{r_1} + ... + a_n q^{r_n}`
//! with rational coefficients and nonnegative rational exponents.

use crate::error::{Error, Result};
use crate::rational::{format_rational, rational_to_f64, ExtRational, Rational};
use crate::series::TruncatedSeries;
use crate::upoly::UPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// A generalized polynomial in canonical form.
///
/// Invariant: terms are sorted by strictly increasing exponent, every
/// coefficient is nonzero, every exponent is `>= 0`. The empty term list is
/// the zero polynomial. Terms with exponent infinity are dropped at
/// construction (`q^inf = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly {
    terms: Vec<(Rational, Rational)>, // (exponent, coefficient)
}

impl GenPoly {
    pub fn zero() -> Self {
        GenPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Rational::zero())
    }

    /// The monomial `coeff * q^{exp}`.
    pub fn monomial(coeff: Rational, exp: Rational) -> Self {
        assert!(!exp.is_negative(), "generalized polynomial exponents must be >= 0");
        if coeff.is_zero() {
            return Self::zero();
        }
        GenPoly {
            terms: vec![(exp, coeff)],
        }
    }

    /// `q^{d}` for an extended distance; infinity yields the zero polynomial.
    pub fn q_power(d: &ExtRational) -> Self {
        match d {
            ExtRational::Finite(r) => Self::monomial(Rational::one(), r.clone()),
            ExtRational::Infinity => Self::zero(),
        }
    }

    /// Builds a canonical polynomial from arbitrary terms, merging equal
    /// exponents and dropping zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Rational, Rational)>>(terms: I) -> Self {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (exp, coeff) in terms {
            assert!(!exp.is_negative(), "generalized polynomial exponents must be >= 0");
            if coeff.is_zero() {
                continue;
            }
            let entry = map.entry(exp).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        GenPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Rational, Rational)] {
        &self.terms
    }

    /// Number of distinct exponents (with nonzero coefficient).
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sum of coefficients, i.e. the value at `q = 1`.
    pub fn coeff_sum(&self) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (_, c)| acc + c)
    }

    pub fn scale_coeffs(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GenPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a * c))
                .collect(),
        }
    }

    /// Replaces every exponent `r` by `t * r` (`t > 0`).
    pub fn scale_exponents(&self, t: &Rational) -> Self {
        assert!(t.is_positive(), "exponent scale must be positive");
        GenPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e * t, a.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GenPoly {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), -a)).collect(),
        }
    }

    /// Floating-point evaluation at `q0 > 0`.
    pub fn eval_f64(&self, q0: f64) -> f64 {
        self.terms
            .iter()
            .map(|(e, a)| rational_to_f64(a) * q0.powf(rational_to_f64(e)))
            .sum()
    }

    /// Exact evaluation at a rational `q0` in `(0, 1]`. Available when
    /// `q0 = 1` or all exponents are integers.
    pub fn eval_exact(&self, q0: &Rational) -> Result<Rational> {
        if !q0.is_positive() {
            return Err(Error::OutOfRange("q0 must be positive".into()));
        }
        if q0.is_one() {
            return Ok(self.coeff_sum());
        }
        let mut acc = Rational::zero();
        for (e, a) in &self.terms {
            if !e.is_integer() {
                return Err(Error::ExactnessUnavailable);
            }
            let k = e
                .to_integer()
                .to_usize()
                .ok_or_else(|| Error::Internal("exponent too large for exact eval".into()))?;
            let mut pow = Rational::one();
            for _ in 0..k {
                pow *= q0;
            }
            acc += a * pow;
        }
        Ok(acc)
    }

    /// Taylor expansion of `p(e^{-t})` at `t = 0`, to order `order`:
    /// coefficient `k` is `sum_i a_i (-r_i)^k / k!`.
    pub fn exp_series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (e, a) in &self.terms {
            let neg_r = -e;
            let mut pow = Rational::one(); // (-r)^k / k!
            for (k, slot) in coeffs.iter_mut().enumerate() {
                if k > 0 {
                    pow = pow * &neg_r / Rational::from_integer(BigInt::from(k));
                }
                *slot += a * &pow;
            }
        }
        TruncatedSeries::from_coeffs(coeffs)
    }

    /// Lcm of the denominators of all exponents (1 for the zero polynomial).
    pub fn exponent_denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for (e, _) in &self.terms {
            l = l.lcm(e.denom());
        }
        l
    }

    /// Reinterprets the polynomial in `u = q^{1/L}` and splits off rational
    /// content: returns `(content, primitive integer polynomial)` with
    /// `self = content * poly(q^{1/L})` and a positive leading coefficient.
    /// `L` must be a multiple of every exponent denominator.
    pub fn to_lattice(&self, lattice: &BigInt) -> (Rational, UPoly<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), UPoly::zero());
        }
        let mut denom_lcm = BigInt::one();
        for (_, a) in &self.terms {
            denom_lcm = denom_lcm.lcm(a.denom());
        }
        let max_deg = {
            let (e, _) = self.terms.last().unwrap();
            let d = e * Rational::from_integer(lattice.clone());
            assert!(d.is_integer(), "lattice does not clear exponent denominators");
            d.to_integer().to_usize().expect("lattice degree overflow")
        };
        let mut coeffs = vec![BigInt::zero(); max_deg + 1];
        for (e, a) in &self.terms {
            let d = (e * Rational::from_integer(lattice.clone()))
                .to_integer()
                .to_usize()
                .unwrap();
            coeffs[d] = a.numer() * (&denom_lcm / a.denom());
        }
        let poly = UPoly::from_coeffs(coeffs);
        let mut content = poly.content();
        if poly.leading().unwrap().is_negative() {
            content = -content;
        }
        let primitive = UPoly {
            coeffs: poly.coeffs.iter().map(|c| c / &content).collect(),
        };
        (Rational::new(content, denom_lcm), primitive)
    }

    /// Inverse of [`to_lattice`]: rebuilds `content * poly(q^{1/L})`.
    pub fn from_lattice(content: &Rational, poly: &UPoly<BigInt>, lattice: &BigInt) -> Self {
        let l = Rational::from_integer(lattice.clone());
        Self::from_terms(poly.coeffs.iter().enumerate().filter_map(|(k, c)| {
            if Zero::is_zero(c) {
                None
            } else {
                Some((
                    Rational::from_integer(BigInt::from(k)) / &l,
                    content * Rational::from_integer(c.clone()),
                ))
            }
        }))
    }
}

impl Add for &GenPoly {
    type Output = GenPoly;
    fn add(self, other: &GenPoly) -> GenPoly {
        GenPoly::from_terms(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, a)| (e.clone(), a.clone())),
        )
    }
}

impl Sub for &GenPoly {
    type Output = GenPoly;
    fn sub(self, other: &GenPoly) -> GenPoly {
        self + &other.neg()
    }
}

impl Mul for &GenPoly {
    type Output = GenPoly;
    fn mul(self, other: &GenPoly) -> GenPoly {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (e1, a1) in &self.terms {
            for (e2, a2) in &other.terms {
                let entry = map.entry(e1 + e2).or_insert_with(Rational::zero);
                *entry += a1 * a2;
            }
        }
        GenPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl fmt::Display for GenPoly {
    /// Canonical text form: terms by increasing exponent, joined with
    /// ` + ` / ` - `; coefficients as `a/b`, powers as `q^{r/s}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, a)) in self.terms.iter().enumerate() {
            let neg = a.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = a.abs();
            if e.is_zero() {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{} ", format_rational(&mag))?;
                }
                write!(f, "q^{{{}}}", format_rational(e))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn q() -> GenPoly {
        GenPoly::monomial(Rational::one(), Rational::one())
    }

    #[test]
    fn difference_of_squares() {
        let a = &q() + &GenPoly::one();
        let b = &q() - &GenPoly::one();
        let expect = &GenPoly::monomial(Rational::one(), rat_int(2)) - &GenPoly::one();
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn additive_identity() {
        let p = GenPoly::from_terms([(rat(4, 3), rat(2, 5)), (Rational::zero(), rat_int(7))]);
        assert_eq!(&p + &GenPoly::zero(), p);
    }

    #[test]
    fn five_point_denominator_expansion() {
        // (1 + q^{4/3})(1 + 2q^2) - 6q^2 = 1 + q^{4/3} - 4q^2 + 2q^{10/3}
        let a = &GenPoly::one() + &GenPoly::monomial(Rational::one(), rat(4, 3));
        let b = &GenPoly::one() + &GenPoly::monomial(rat_int(2), rat_int(2));
        let got = &(&a * &b) - &GenPoly::monomial(rat_int(6), rat_int(2));
        let expect = GenPoly::from_terms([
            (Rational::zero(), Rational::one()),
            (rat(4, 3), Rational::one()),
            (rat_int(2), rat_int(-4)),
            (rat(10, 3), rat_int(2)),
        ]);
        assert_eq!(got, expect);
    }

    #[test]
    fn eval_at_one_is_coefficient_sum() {
        let p = &GenPoly::monomial(rat_int(4), Rational::one()) + &GenPoly::one();
        assert_eq!(p.eval_exact(&Rational::one()).unwrap(), rat_int(5));
        assert_eq!(GenPoly::zero().eval_exact(&rat(1, 2)).unwrap(), rat_int(0));
        let five_point_den = GenPoly::from_terms([
            (Rational::zero(), Rational::one()),
            (rat(4, 3), Rational::one()),
            (rat_int(2), rat_int(-4)),
            (rat(10, 3), rat_int(2)),
        ]);
        assert_eq!(five_point_den.eval_exact(&Rational::one()).unwrap(), rat_int(0));
    }

    #[test]
    fn exactness_unavailable_for_fractional_exponent() {
        let p = GenPoly::monomial(Rational::one(), rat(4, 3));
        assert_eq!(p.eval_exact(&rat(1, 2)), Err(crate::error::Error::ExactnessUnavailable));
    }

    #[test]
    fn exp_series_examples() {
        // constant 1 to order 2
        assert_eq!(
            GenPoly::one().exp_series(2).coeffs(),
            &[rat_int(1), rat_int(0), rat_int(0)]
        );
        // 4q + 1: 4e^{-t} + 1 = 5 - 4t + ...
        let p = &GenPoly::monomial(rat_int(4), Rational::one()) + &GenPoly::one();
        assert_eq!(p.exp_series(1).coeffs(), &[rat_int(5), rat_int(-4)]);
        // (q - 1)^2 = q^2 - 2q + 1: (e^{-t} - 1)^2 = t^2 - ...
        let p = GenPoly::from_terms([
            (Rational::zero(), rat_int(1)),
            (Rational::one(), rat_int(-2)),
            (rat_int(2), rat_int(1)),
        ]);
        assert_eq!(p.exp_series(2).coeffs(), &[rat_int(0), rat_int(0), rat_int(1)]);
    }

    #[test]
    fn q_power_of_infinity_vanishes() {
        assert!(GenPoly::q_power(&ExtRational::Infinity).is_zero());
    }

    #[test]
    fn lattice_round_trip() {
        let p = GenPoly::from_terms([(rat(4, 3), rat(2, 5)), (rat(1, 2), rat_int(-3))]);
        let lattice = p.exponent_denominator_lcm();
        assert_eq!(lattice, num_bigint::BigInt::from(6));
        let (content, prim) = p.to_lattice(&lattice);
        assert_eq!(GenPoly::from_lattice(&content, &prim, &lattice), p);
    }

    #[test]
    fn display_canonical_text() {
        let p = GenPoly::from_terms([
            (Rational::zero(), rat_int(3)),
            (Rational::one(), rat_int(-1)),
        ]);
        assert_eq!(p.to_string(), "3 - q^{1}");
        let p = GenPoly::from_terms([(rat(4, 3), rat(1, 2))]);
        assert_eq!(p.to_string(), "1/2 q^{4/3}");
        assert_eq!(GenPoly::zero().to_string(), "0");
    }
}

//! Dense univariate polynomials over an integral domain of integers.
//!
//! Generalized polynomials with rational exponents are reinterpreted here as
//! ordinary polynomials in `u = q^{1/L}`, where `L` is the lcm of the exponent
//! denominators. Fraction-free elimination and gcd reduction then run on
//! plain integer coefficient vectors. Coefficients are generic so that small
//! matrices can use `i128` and large ones fall back to `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer-like coefficients for fraction-free algorithms.
pub trait RingInt: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn to_bigint(&self) -> BigInt;
}

impl RingInt for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("i128 overflow")
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self.checked_sub(*other).expect("i128 overflow")
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("i128 overflow")
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert_eq!(self % other, 0);
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl RingInt for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        <BigInt as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % other)));
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Dense polynomial; `coeffs[k]` is the coefficient of `u^k`.
/// Invariant: no trailing zero coefficient; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct UPoly<T: RingInt> {
    pub coeffs: Vec<T>,
}

impl<T: RingInt> UPoly<T> {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn monomial(coeff: T, degree: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = coeff;
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; zero polynomial returns `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(T::zero);
            let b = other.coeffs.get(k).cloned().unwrap_or_else(T::zero);
            out.push(a.sub_ref(&b));
        }
        Self::from_coeffs(out)
    }

    /// Exact division: panics in debug builds if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let dd = divisor.coeffs.len() - 1;
        let nd = self.coeffs.len() - 1;
        assert!(nd >= dd, "exact division with smaller degree");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            let q = c.div_exact(&lead);
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&q.mul_ref(d));
            }
            quot[k] = q;
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
        Self::from_coeffs(quot)
    }

    pub fn map_to_bigint(&self) -> UPoly<BigInt> {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c.to_bigint()).collect(),
        }
    }
}

impl UPoly<BigInt> {
    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = <BigInt as Zero>::zero();
        for c in &self.coeffs {
            if !Zero::is_zero(c) {
                g = g.gcd(c);
            }
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> UPoly<BigInt> {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        UPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap().clone();
            let shift = rd - dd;
            // rem <- lead * rem - c * u^shift * divisor
            let mut next = vec![<BigInt as Zero>::zero(); rd + 1];
            for (k, a) in rem.coeffs.iter().enumerate() {
                next[k] = a * &lead;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                next[shift + j] -= &c * d;
            }
            rem = UPoly::from_coeffs(next);
        }
        rem
    }

    /// Primitive gcd via the primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &Self) -> UPoly<BigInt> {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> UPoly<BigInt> {
        UPoly::from_coeffs(v.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn mul_div_round_trip() {
        let a = p(&[1, 2, 3]);
        let b = p(&[-4, 5]);
        let c = a.mul(&b);
        assert_eq!(c.div_exact(&b), a);
        assert_eq!(c.div_exact(&a), b);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let g = p(&[1, 4]); // 1 + 4u
        let a = g.mul(&p(&[2, 0, 1]));
        let b = g.mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), g);
    }

    #[test]
    fn gcd_coprime_is_constant() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.gcd(&b), p(&[1]));
    }

    #[test]
    fn i128_path_matches_bigint() {
        let a = UPoly::<i128>::from_coeffs(vec![1, 2, 3]);
        let b = UPoly::<i128>::from_coeffs(vec![-4, 5]);
        let c = a.mul(&b);
        assert_eq!(c.map_to_bigint(), p(&[1, 2, 3]).mul(&p(&[-4, 5])));
    }
}

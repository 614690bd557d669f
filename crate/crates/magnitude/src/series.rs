//! Power series in `t`, truncated at a fixed order, with exact coefficients.

use crate::rational::Rational;
use num_traits::Zero;

/// Truncated power series `c_0 + c_1 t + ... + c_K t^K`.
/// Invariant: `coeffs.len() == order + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    /// Product, truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn convolution_truncates() {
        let a = TruncatedSeries::from_coeffs(vec![rat_int(1), rat_int(1), rat_int(1)]);
        let b = TruncatedSeries::from_coeffs(vec![rat_int(1), rat_int(-1), rat_int(0)]);
        // (1 + t + t^2)(1 - t) = 1 - t^3, truncated at order 2.
        assert_eq!(a.mul(&b).coeffs(), &[rat_int(1), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn first_nonzero_index() {
        let s = TruncatedSeries::from_coeffs(vec![rat_int(0), rat_int(0), rat(1, 3)]);
        assert_eq!(s.first_nonzero(), Some(2));
        assert_eq!(TruncatedSeries::zero(3).first_nonzero(), None);
    }
}

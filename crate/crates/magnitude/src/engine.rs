//! The magnitude engine: numeric magnitude, exact formal magnitude via
//! fraction-free elimination, the small-scale limit, and the genericity
//! diagnostics `F_n`, `C_n`, `C_n'`.

use crate::error::{Error, Result};
use crate::genpoly::GenPoly;
use crate::genrat::{GenRat, LimitResult};
use crate::rational::{rat_int, Rational};
use crate::space::FiniteMetricSpace;
use crate::upoly::{RingInt, UPoly};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Condition-number threshold beyond which a numeric solve is reported as
/// singular at that scale.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Matrix sizes up to this bound keep `i128` coefficients in the exact
/// elimination; minors of a matrix of monomials are bounded by `k!`, and the
/// intermediate products by `(k!)^2`, which fits in `i128` for `k <= 20`.
const I128_SIZE_LIMIT: usize = 20;

/// Cap on the dense lattice degree of a single matrix entry times the matrix
/// size, to keep dense elimination from exploding on huge exponent
/// denominators.
const DENSE_LATTICE_LIMIT: usize = 250_000;

/// Numeric magnitude `|tX|`: solves `Z_{tX} w = 1` and returns the sum of
/// the weights. Infinite distances contribute entries `e^{-t * inf} = 0`.
pub fn numeric_magnitude(x: &FiniteMetricSpace, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::OutOfRange("t must be positive".into()));
    }
    let n = x.len();
    let z = DMatrix::from_fn(n, n, |i, j| {
        let d = x.dist(i, j).to_f64();
        if d.is_infinite() {
            0.0
        } else {
            (-t * d).exp()
        }
    });
    let inv = z
        .clone()
        .try_inverse()
        .ok_or(Error::SingularAtThisScale(t))?;
    let norm1 = |m: &DMatrix<f64>| {
        (0..m.ncols())
            .map(|j| m.column(j).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    };
    if norm1(&z) * norm1(&inv) > CONDITION_LIMIT {
        return Err(Error::SingularAtThisScale(t));
    }
    let w = &inv * DVector::from_element(n, 1.0);
    Ok(w.sum())
}

/// Numeric magnitude over a grid of scales; singular scales yield `None`.
pub fn magnitude_profile(x: &FiniteMetricSpace, t_grid: &[f64]) -> Vec<(f64, Option<f64>)> {
    t_grid
        .iter()
        .map(|&t| (t, numeric_magnitude(x, t).ok()))
        .collect()
}

/// Exact formal magnitude `Mag(X)(q)`, the sum of the entries of
/// `(q^{d(i,j)})^{-1}`.
///
/// Computed fraction-free on the exponent lattice: the similarity matrix is
/// bordered by a row and column of ones with corner 0, so a single
/// elimination yields both `det Z` (the last interior pivot) and the
/// bordered determinant, whose negative is the entry sum of the adjugate.
pub fn formal_magnitude(x: &FiniteMetricSpace) -> Result<GenRat> {
    let n = x.len();
    let mut lattice = <BigInt as One>::one();
    for row in x.matrix() {
        for d in row {
            if let Some(r) = d.finite() {
                lattice = lattice.lcm(r.denom());
            }
        }
    }
    // Degree bound for a dense entry: the largest exponent reachable by a
    // minor is the sum of the per-column maxima.
    let mut degree_bound = <BigInt as Zero>::zero();
    for j in 0..n {
        let mut col_max = Rational::zero();
        for i in 0..n {
            if let Some(r) = x.dist(i, j).finite() {
                if *r > col_max {
                    col_max = r.clone();
                }
            }
        }
        degree_bound += (col_max * Rational::from_integer(lattice.clone())).to_integer();
    }
    let degree_bound = degree_bound
        .to_usize()
        .ok_or(Error::ExponentLatticeTooLarge(usize::MAX))?;
    if degree_bound.saturating_mul(n) > DENSE_LATTICE_LIMIT {
        return Err(Error::ExponentLatticeTooLarge(degree_bound * n));
    }
    let (det_z, det_b) = if n + 1 <= I128_SIZE_LIMIT {
        let m = bordered_matrix::<i128>(x, &lattice);
        let (a, b) = bordered_determinants(m)?;
        (a.map_to_bigint(), b.map_to_bigint())
    } else {
        let m = bordered_matrix::<BigInt>(x, &lattice);
        bordered_determinants(m)?
    };
    // sum(adj Z) = -det of the bordered matrix.
    let num = GenPoly::from_lattice(&rat_int(-1), &det_b, &lattice);
    let den = GenPoly::from_lattice(&Rational::one(), &det_z, &lattice);
    GenRat::new(num, den)
}

fn bordered_matrix<T: RingInt>(x: &FiniteMetricSpace, lattice: &BigInt) -> Vec<Vec<UPoly<T>>> {
    let n = x.len();
    let one = UPoly::monomial(T::one(), 0);
    let mut m = vec![vec![UPoly::zero(); n + 1]; n + 1];
    for i in 0..n {
        for j in 0..n {
            m[i][j] = match x.dist(i, j).finite() {
                Some(r) => {
                    let deg = (r * Rational::from_integer(lattice.clone()))
                        .to_integer()
                        .to_usize()
                        .expect("lattice degree overflow");
                    UPoly::monomial(T::one(), deg)
                }
                None => UPoly::zero(), // q^inf = 0
            };
        }
        m[i][n] = one.clone();
        m[n][i] = one.clone();
    }
    m
}

/// Fraction-free (Bareiss) elimination of the first `n` columns of an
/// `(n+1) x (n+1)` matrix. Returns the `n`-th leading principal minor and the
/// full determinant. Interior pivots are principal minors of a formal
/// similarity matrix and have constant term 1, so no pivoting is needed.
fn bordered_determinants<T: RingInt>(
    mut m: Vec<Vec<UPoly<T>>>,
) -> Result<(UPoly<T>, UPoly<T>)> {
    let size = m.len();
    let n = size - 1;
    let mut prev = UPoly::monomial(T::one(), 0);
    for k in 0..n {
        if m[k][k].is_zero() {
            return Err(Error::Internal(
                "zero pivot in fraction-free elimination".into(),
            ));
        }
        for i in (k + 1)..size {
            for j in (k + 1)..size {
                let t1 = m[k][k].mul(&m[i][j]);
                let t2 = m[i][k].mul(&m[k][j]);
                m[i][j] = t1.sub(&t2).div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    Ok((m[n - 1][n - 1].clone(), m[n][n].clone()))
}

/// Exact small-scale limit `lim_{q -> 1} Mag(X)(q)`.
pub fn small_scale_limit(x: &FiniteMetricSpace) -> Result<LimitResult> {
    formal_magnitude(x)?.limit_q1()
}

/// Exact determinant of a rational matrix by Gaussian elimination with
/// pivoting.
pub fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &pivot;
            for j in (k + 1)..n {
                let sub = &factor * &m[k][j];
                m[i][j] -= sub;
            }
            m[i][k] = Rational::zero();
        }
    }
    det
}

fn ones_column(m: &mut [Vec<Rational>], col: usize) {
    for row in m.iter_mut() {
        row[col] = Rational::one();
    }
}

fn squares_column(m: &mut [Vec<Rational>], col: usize, d: &[Vec<Rational>]) {
    for (i, row) in m.iter_mut().enumerate() {
        row[col] = &d[i][col] * &d[i][col];
    }
}

/// The genericity polynomial `F_n`: the sum over `j` of the determinant of
/// the distance matrix with column `j` replaced by ones. Nonvanishing forces
/// the one-point property.
pub fn f_n(x: &FiniteMetricSpace) -> Result<Rational> {
    let d = x.finite_matrix()?;
    let n = x.len();
    let mut acc = Rational::zero();
    for j in 0..n {
        let mut m = d.clone();
        ones_column(&mut m, j);
        acc += det_rational(m);
    }
    Ok(acc)
}

/// Determinant of the distance matrix.
pub fn det_distance(x: &FiniteMetricSpace) -> Result<Rational> {
    Ok(det_rational(x.finite_matrix()?))
}

/// The order-`n` expansion coefficients `(C_n, C_n')`, with
/// `C_n' = C_n + det(d)`.
pub fn c_coefficients(x: &FiniteMetricSpace) -> Result<(Rational, Rational)> {
    let d = x.finite_matrix()?;
    let n = x.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut m = d.clone();
            ones_column(&mut m, i);
            squares_column(&mut m, j, &d);
            acc += det_rational(m);
        }
    }
    let c_n = acc / rat_int(2);
    let c_n_prime = &c_n + det_rational(d);
    Ok((c_n, c_n_prime))
}

/// Small-scale diagnostics for one space.
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeReport {
    pub f_n: Rational,
    pub det_d: Rational,
    pub c_n: Rational,
    pub c_n_prime: Rational,
    pub limit: LimitResult,
    pub one_point: bool,
}

/// Full one-point-property report.
///
/// When `F_n != 0` the limit is 1 by the expansion of `|tX|`; that fast path
/// is cross-validated against the exact engine in debug builds. When
/// `F_n = 0` the exact limit engine is used, and for `C_n' != 0` the identity
/// `limit = C_n / C_n'` is asserted.
pub fn one_point_report(x: &FiniteMetricSpace) -> Result<MagnitudeReport> {
    let f = f_n(x)?;
    let det_d = det_distance(x)?;
    let (c_n, c_n_prime) = c_coefficients(x)?;
    let limit = if !f.is_zero() {
        debug_assert_eq!(
            small_scale_limit(x)?,
            LimitResult::Finite(Rational::one()),
            "fast path disagrees with exact engine"
        );
        LimitResult::Finite(Rational::one())
    } else {
        let limit = small_scale_limit(x)?;
        if !c_n_prime.is_zero() {
            debug_assert_eq!(
                limit,
                LimitResult::Finite(&c_n / &c_n_prime),
                "C_n / C_n' disagrees with exact engine"
            );
        }
        limit
    };
    let one_point = limit.is_one();
    Ok(MagnitudeReport {
        f_n: f,
        det_d,
        c_n,
        c_n_prime,
        limit,
        one_point,
    })
}

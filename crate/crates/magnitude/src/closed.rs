//! Closed-form magnitude formulas and the explicit small-scale-limit formula
//! for joins of homogeneous spaces.

use crate::error::{Error, Result};
use crate::genpoly::GenPoly;
use crate::genrat::GenRat;
use crate::rational::{rat, rat_int, ExtRational, Rational};
use crate::space::{FiniteMetricSpace, Graph};
use num_traits::{One, Signed, Zero};

/// Derivative data of the profile polynomial `N_X` of a homogeneous space:
/// `n1 = N_X'(1)`, `n2 = N_X''(1)`, and the Lagrange-identity value
/// `(1/n^2) sum_{i<j} (d_i - d_j)^2 = n2 + n1 - n1^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousProfile {
    pub size: usize,
    pub n_poly: GenPoly,
    pub n1: Rational,
    pub n2: Rational,
    pub lagrange: Rational,
}

/// Profile of a verified homogeneous space.
pub fn homogeneous_profile(x: &FiniteMetricSpace, cap: usize) -> Result<HomogeneousProfile> {
    if !x.is_homogeneous(cap)? {
        return Err(Error::NotHomogeneous);
    }
    profile_from_row(x)
}

/// Profile from the first row, for spaces homogeneous by construction.
pub(crate) fn profile_from_row(x: &FiniteMetricSpace) -> Result<HomogeneousProfile> {
    let n = x.len();
    let nr = rat_int(n as i64);
    let mut row = Vec::with_capacity(n);
    for j in 0..n {
        match x.dist(0, j) {
            ExtRational::Finite(r) => row.push(r.clone()),
            ExtRational::Infinity => return Err(Error::InfiniteDistanceUnsupported),
        }
    }
    let n1 = row.iter().fold(Rational::zero(), |a, d| a + d) / &nr;
    let n2 = row
        .iter()
        .fold(Rational::zero(), |a, d| a + (d * d - d))
        / &nr;
    let mut pair_sum = Rational::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let diff = &row[i] - &row[j];
            pair_sum += &diff * &diff;
        }
    }
    let lagrange = pair_sum / (&nr * &nr);
    assert_eq!(
        lagrange,
        &n2 + &n1 - &n1 * &n1,
        "Lagrange identity violated for a homogeneous profile"
    );
    Ok(HomogeneousProfile {
        size: n,
        n_poly: x.n_profile_unchecked(),
        n1,
        n2,
        lagrange,
    })
}

/// Speyer's formula for a homogeneous space: `Mag(X) = 1 / N_X`.
pub fn speyer_magnitude(x: &FiniteMetricSpace, cap: usize) -> Result<GenRat> {
    if !x.is_homogeneous(cap)? {
        return Err(Error::NotHomogeneous);
    }
    GenRat::new(GenPoly::one(), x.n_profile_unchecked())
}

/// Closed form for a forest (with the shortest-path metric and `q^inf = 0`
/// across components): `#components + #edges * (1-q)/(1+q)`.
pub fn forest_magnitude(g: &Graph) -> Result<GenRat> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let components = rat_int(g.component_count() as i64);
    let edges = rat_int(g.edge_count() as i64);
    let q = GenPoly::monomial(Rational::one(), Rational::one());
    let one = GenPoly::one();
    // components + edges (1-q)/(1+q) = (components (1+q) + edges (1-q)) / (1+q)
    let num = &GenPoly::constant(components) * &(&one + &q);
    let num = &num + &(&GenPoly::constant(edges) * &(&one - &q));
    GenRat::new(num, &one + &q)
}

/// Closed form for the complete bipartite graph `K_{m,n}`:
/// `((m+n) - (2mn - m - n) q) / ((1+q)(1 - (m-1)(n-1) q^2))`.
pub fn bipartite_magnitude(m: usize, n: usize) -> Result<GenRat> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("bipartite sides must be >= 1".into()));
    }
    let (m, n) = (m as i64, n as i64);
    let q = GenPoly::monomial(Rational::one(), Rational::one());
    let q2 = GenPoly::monomial(Rational::one(), rat_int(2));
    let one = GenPoly::one();
    let num = &GenPoly::constant(rat_int(m + n))
        - &GenPoly::monomial(rat_int(2 * m * n - m - n), Rational::one());
    let den = &(&one + &q) * &(&one - &q2.scale_coeffs(&rat_int((m - 1) * (n - 1))));
    GenRat::new(num, den)
}

/// Formal magnitude of a join of homogeneous spaces of diameter at most 2:
/// `(N_X + N_Y - 2q) / (N_X N_Y - q^2)`.
pub fn join_magnitude(x: &FiniteMetricSpace, y: &FiniteMetricSpace, cap: usize) -> Result<GenRat> {
    let two = ExtRational::from_int(2);
    if x.diameter() > two || y.diameter() > two {
        return Err(Error::DiameterExceedsTwo);
    }
    if !x.is_homogeneous(cap)? || !y.is_homogeneous(cap)? {
        return Err(Error::NotHomogeneous);
    }
    let nx = x.n_profile_unchecked();
    let ny = y.n_profile_unchecked();
    join_magnitude_from_profiles(&nx, &ny)
}

pub(crate) fn join_magnitude_from_profiles(nx: &GenPoly, ny: &GenPoly) -> Result<GenRat> {
    let q = GenPoly::monomial(Rational::one(), Rational::one());
    let q2 = GenPoly::monomial(Rational::one(), rat_int(2));
    let num = &(nx + ny) - &q.scale_coeffs(&rat_int(2));
    let den = &(nx * ny) - &q2;
    GenRat::new(num, den)
}

/// Exact small-scale limit of a join of homogeneous spaces whose mean
/// distances sum to 2, via the explicit formula
/// `(n2_X + n2_Y) / (lagrange_X + lagrange_Y)`.
///
/// The equivalent form `(n2_X + n2_Y)/(n2_X + n2_Y - (n1_X - n1_Y)^2 / 2)` is
/// also computed and exact agreement asserted.
pub fn join_limit(x: &FiniteMetricSpace, y: &FiniteMetricSpace, cap: usize) -> Result<Rational> {
    let two = ExtRational::from_int(2);
    if x.diameter() > two || y.diameter() > two {
        return Err(Error::DiameterExceedsTwo);
    }
    let px = homogeneous_profile(x, cap)?;
    let py = homogeneous_profile(y, cap)?;
    join_limit_from_profiles(&px, &py)
}

pub(crate) fn join_limit_from_profiles(
    px: &HomogeneousProfile,
    py: &HomogeneousProfile,
) -> Result<Rational> {
    if &px.n1 + &py.n1 != rat_int(2) {
        return Err(Error::AssumptionViolated);
    }
    let n2_sum = &px.n2 + &py.n2;
    let lag_sum = &px.lagrange + &py.lagrange;
    assert!(lag_sum.is_positive(), "join-limit denominator must be positive");
    let value = &n2_sum / &lag_sum;
    // Alternate form of the same limit; exact agreement is a standing
    // self-test.
    let diff = &px.n1 - &py.n1;
    let alt_den = &n2_sum - &diff * &diff / rat_int(2);
    assert_eq!(value, &n2_sum / alt_den, "limit formulas disagree");
    assert!(value >= Rational::one(), "join limit must be >= 1");
    Ok(value)
}

/// Limit of the two-parameter family `X_r^n * X_{s(n,r)}^n` with
/// `s(n,r) = 2n/(n-1) - r`, for `r` in `[n/(n-1), 2]`.
pub fn family_limit(n: usize, r: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::OutOfRange("family requires n >= 2".into()));
    }
    let lower = rat(n as i64, n as i64 - 1);
    if r < &lower || r > &rat_int(2) {
        return Err(Error::OutOfRange(format!(
            "r must lie in [{}/{}, 2]",
            n,
            n - 1
        )));
    }
    let s = rat(2 * n as i64, n as i64 - 1) - r;
    let x = FiniteMetricSpace::uniform(n, r)?;
    let y = FiniteMetricSpace::uniform(n, &s)?;
    // Uniform spaces are homogeneous by construction; skip the search.
    join_limit_from_profiles(&profile_from_row(&x)?, &profile_from_row(&y)?)
}

/// The family's value at `r = 2`:
/// `(n^3/2 - 3n^2/2 + 2n) / (n^2 - 2n + 2)`, which grows like `n/2`.
pub fn family_upper_bound(n: usize) -> Rational {
    let n = rat_int(n as i64);
    let num = &n * &n * &n / rat_int(2) - &n * &n * rat(3, 2) + &n * rat_int(2);
    let den = &n * &n - &n * rat_int(2) + rat_int(2);
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{formal_magnitude, small_scale_limit};
    use crate::genrat::LimitResult;
    use crate::rational::{rat, rat_int};
    use crate::space::DEFAULT_HOMOGENEITY_CAP;
    use num_traits::One;

    const CAP: usize = DEFAULT_HOMOGENEITY_CAP;

    #[test]
    fn profile_of_uniform_space() {
        // X_r^n: N = (1 + (n-1)q^r)/n, n1 = (n-1)r/n, n2 = (n-1)r(r-1)/n.
        let x = FiniteMetricSpace::uniform(3, &rat_int(2)).unwrap();
        let p = homogeneous_profile(&x, CAP).unwrap();
        assert_eq!(p.n1, rat(4, 3));
        assert_eq!(p.n2, rat(4, 3));
        assert_eq!(p.lagrange, rat(8, 9));
        let y = FiniteMetricSpace::uniform(3, &rat_int(1)).unwrap();
        let py = homogeneous_profile(&y, CAP).unwrap();
        assert_eq!(py.n1, rat(2, 3));
        assert_eq!(py.n2, rat_int(0));
        assert_eq!(py.lagrange, rat(2, 9));
        // two points at distance 4/3
        let z = FiniteMetricSpace::uniform(2, &rat(4, 3)).unwrap();
        let pz = homogeneous_profile(&z, CAP).unwrap();
        assert_eq!(pz.n1, rat(2, 3));
        assert_eq!(pz.n2, rat(2, 9));
        assert_eq!(pz.lagrange, rat(4, 9));
    }

    #[test]
    fn speyer_formula_matches_engine_on_homogeneous_spaces() {
        for x in [
            FiniteMetricSpace::uniform(4, &rat(3, 2)).unwrap(),
            FiniteMetricSpace::from_graph(&Graph::cycle(5).unwrap()).unwrap(),
            FiniteMetricSpace::from_graph(&Graph::complete(4)).unwrap(),
        ] {
            assert_eq!(
                speyer_magnitude(&x, CAP).unwrap(),
                formal_magnitude(&x).unwrap()
            );
        }
        let path = FiniteMetricSpace::from_graph(&Graph::path(3)).unwrap();
        assert!(matches!(
            speyer_magnitude(&path, CAP),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn forest_formula_matches_engine() {
        for g in [
            Graph::path(5),
            Graph::star(6),
            Graph::new(7, vec![(0, 1), (1, 2), (3, 4)]).unwrap(),
        ] {
            let x = FiniteMetricSpace::from_graph(&g).unwrap();
            assert_eq!(forest_magnitude(&g).unwrap(), formal_magnitude(&x).unwrap());
        }
        assert!(matches!(
            forest_magnitude(&Graph::cycle(4).unwrap()),
            Err(Error::NotAForest)
        ));
    }

    #[test]
    fn bipartite_formula_matches_engine() {
        for (m, n) in [(2, 2), (2, 3), (3, 3), (1, 4)] {
            let x =
                FiniteMetricSpace::from_graph(&Graph::complete_bipartite(m, n)).unwrap();
            assert_eq!(
                bipartite_magnitude(m, n).unwrap(),
                formal_magnitude(&x).unwrap()
            );
        }
    }

    #[test]
    fn join_formula_matches_engine() {
        let x = FiniteMetricSpace::uniform(3, &rat_int(2)).unwrap();
        let y = FiniteMetricSpace::uniform(3, &rat_int(1)).unwrap();
        let j = x.join(&y).unwrap();
        assert_eq!(
            join_magnitude(&x, &y, CAP).unwrap(),
            formal_magnitude(&j).unwrap()
        );
        // K_{m,n} is the join of two uniform spaces at distance 2
        let a = FiniteMetricSpace::uniform(2, &rat_int(2)).unwrap();
        let b = FiniteMetricSpace::uniform(3, &rat_int(2)).unwrap();
        assert_eq!(
            join_magnitude(&a, &b, CAP).unwrap(),
            bipartite_magnitude(2, 3).unwrap()
        );
    }

    #[test]
    fn join_limit_values() {
        let x = FiniteMetricSpace::uniform(3, &rat_int(2)).unwrap();
        let y = FiniteMetricSpace::uniform(3, &rat_int(1)).unwrap();
        // (4/3 + 0) / (8/9 + 2/9) = 6/5
        assert_eq!(join_limit(&x, &y, CAP).unwrap(), rat(6, 5));
        // assumption n1_X + n1_Y = 2 fails for e.g. two 2-point spaces at 1
        let small = FiniteMetricSpace::uniform(2, &rat_int(1)).unwrap();
        assert!(matches!(
            join_limit(&small, &small, CAP),
            Err(Error::AssumptionViolated)
        ));
        // two antipodal pairs: K_{2,2}, limit 1
        let pair = FiniteMetricSpace::uniform(2, &rat_int(2)).unwrap();
        assert_eq!(join_limit(&pair, &pair, CAP).unwrap(), rat_int(1));
    }

    #[test]
    fn family_limit_values() {
        // left endpoint r = n/(n-1) gives limit 1
        assert!(family_limit(3, &rat(3, 2)).unwrap().is_one());
        // r = 2, n = 3 is the six-point join: 6/5
        assert_eq!(family_limit(3, &rat_int(2)).unwrap(), rat(6, 5));
        // out of range
        assert!(family_limit(3, &rat_int(1)).is_err());
        assert!(family_limit(3, &rat(5, 2)).is_err());
        // agrees with the exact engine at an interior point
        let r = rat(7, 4);
        let s = rat(2 * 3, 3 - 1) - &r;
        let j = FiniteMetricSpace::uniform(3, &r)
            .unwrap()
            .join(&FiniteMetricSpace::uniform(3, &s).unwrap())
            .unwrap();
        assert_eq!(
            small_scale_limit(&j).unwrap(),
            LimitResult::Finite(family_limit(3, &r).unwrap())
        );
    }

    #[test]
    fn family_upper_bound_values() {
        assert_eq!(family_upper_bound(3), rat(6, 5));
        assert_eq!(family_upper_bound(2), rat_int(1));
        // grows like n/2: bound at n = 21 exceeds 10
        assert!(family_upper_bound(21) > rat_int(10));
        assert!(family_upper_bound(20) < rat_int(10));
        // matches family_limit at r = 2
        assert_eq!(family_limit(5, &rat_int(2)).unwrap(), family_upper_bound(5));
    }
}

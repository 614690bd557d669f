//! Randomized property tests: algebraic laws of the exact function field,
//! consistency between symbolic and numeric evaluation, metric invariants,
//! and a brute-force cofactor oracle for the determinant engine.

use magnitude::engine::{
    det_rational, f_n, formal_magnitude, numeric_magnitude, one_point_report, small_scale_limit,
};
use magnitude::rational::{rat, rational_to_f64};
use magnitude::{FiniteMetricSpace, GenPoly, GenRat, LimitResult, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_exponent() -> impl Strategy<Value = Rational> {
    (0i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn arb_genpoly() -> impl Strategy<Value = GenPoly> {
    prop::collection::vec((arb_exponent(), arb_rational()), 0..5)
        .prop_map(GenPoly::from_terms)
}

fn arb_nonzero_genpoly() -> impl Strategy<Value = GenPoly> {
    arb_genpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_genrat() -> impl Strategy<Value = GenRat> {
    (arb_genpoly(), arb_nonzero_genpoly())
        .prop_map(|(n, d)| GenRat::new(n, d).unwrap())
}

fn arb_space() -> impl Strategy<Value = FiniteMetricSpace> {
    (2usize..=6, any::<u64>())
        .prop_map(|(n, seed)| FiniteMetricSpace::sample_random(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn genpoly_ring_laws(a in arb_genpoly(), b in arb_genpoly(), c in arb_genpoly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, GenPoly::zero());
        prop_assert_eq!(&a * &GenPoly::one(), a.clone());
        prop_assert_eq!(&a + &GenPoly::zero(), a);
    }

    #[test]
    fn genpoly_eval_consistent_with_terms(a in arb_genpoly(), b in arb_genpoly()) {
        // (a*b)(q0) = a(q0) * b(q0) in floating point
        let q0 = 0.7;
        let lhs = (&a * &b).eval_f64(q0);
        let rhs = a.eval_f64(q0) * b.eval_f64(q0);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0));
        // coefficient sum agrees with eval at 1
        let sum = rational_to_f64(&a.coeff_sum());
        prop_assert!((a.eval_f64(1.0) - sum).abs() <= 1e-9 * sum.abs().max(1.0));
    }

    #[test]
    fn genpoly_series_is_multiplicative(a in arb_genpoly(), b in arb_genpoly()) {
        let order = 4;
        let lhs = (&a * &b).exp_series(order);
        let rhs = a.exp_series(order).mul(&b.exp_series(order));
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn genrat_field_laws(a in arb_genrat(), b in arb_genrat(), c in arb_genrat()) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.sub(&a).unwrap(), GenRat::constant(Rational::zero()));
        if !a.is_zero() {
            prop_assert_eq!(a.div(&a).unwrap(), GenRat::one());
        }
    }

    #[test]
    fn genrat_canonicalization_idempotent(a in arb_genrat()) {
        let again = GenRat::new(a.numerator().clone(), a.denominator().clone()).unwrap();
        prop_assert_eq!(again.numerator(), a.numerator());
        prop_assert_eq!(again.denominator(), a.denominator());
    }

    #[test]
    fn genrat_limit_agrees_with_numeric_near_one(a in arb_genrat()) {
        if let LimitResult::Finite(v) = a.limit_q1().unwrap() {
            let q0 = 1.0 - 1e-6;
            let numeric = a.eval_f64(q0);
            let exact = rational_to_f64(&v);
            // finite-difference sanity only: generous tolerance
            prop_assert!(
                (numeric - exact).abs() <= 1e-3 * exact.abs().max(1.0),
                "limit {} vs value {} at q = {}", exact, numeric, q0
            );
        }
    }

    #[test]
    fn random_spaces_are_metric(x in arb_space()) {
        let n = x.len();
        for i in 0..n {
            prop_assert!(x.dist(i, i).is_zero());
            for j in 0..n {
                prop_assert_eq!(x.dist(i, j), x.dist(j, i));
                for k in 0..n {
                    prop_assert!(x.dist(i, k) <= &(x.dist(i, j) + x.dist(j, k)));
                }
            }
        }
    }

    #[test]
    fn formal_magnitude_matches_numeric(x in arb_space(), t in 0.2f64..3.0) {
        let f = formal_magnitude(&x).unwrap();
        let numeric = numeric_magnitude(&x, t).unwrap();
        let symbolic = f.eval_f64((-t).exp());
        prop_assert!(
            (numeric - symbolic).abs() <= 1e-9 * numeric.abs().max(1.0),
            "t = {}: {} vs {}", t, numeric, symbolic
        );
    }

    #[test]
    fn scaling_rescales_exponents(x in arb_space()) {
        let t = rat(3, 2);
        let scaled = formal_magnitude(&x.scale(&t).unwrap()).unwrap();
        let expect = formal_magnitude(&x).unwrap().scale_exponents(&t).unwrap();
        prop_assert_eq!(scaled, expect);
    }

    #[test]
    fn l1_product_is_multiplicative(seed_a in any::<u64>(), seed_b in any::<u64>()) {
        let x = FiniteMetricSpace::sample_random(3, seed_a).unwrap();
        let y = FiniteMetricSpace::sample_random(2, seed_b).unwrap();
        let p = x.l1_product(&y).unwrap();
        let lhs = formal_magnitude(&p).unwrap();
        let rhs = formal_magnitude(&x)
            .unwrap()
            .mul(&formal_magnitude(&y).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn f_criterion_is_sound(x in arb_space()) {
        // if F_n != 0 the limit is 1; either way the report's limit equals
        // the exact engine's
        let report = one_point_report(&x).unwrap();
        let exact = small_scale_limit(&x).unwrap();
        prop_assert_eq!(&report.limit, &exact);
        if !report.f_n.is_zero() {
            prop_assert!(report.limit.is_one());
            prop_assert!(report.one_point);
        }
        prop_assert_eq!(f_n(&x).unwrap(), report.f_n);
    }

    #[test]
    fn formal_magnitude_matches_cofactor_oracle(x in (2usize..=4, any::<u64>())
        .prop_map(|(n, seed)| FiniteMetricSpace::sample_random(n, seed).unwrap()))
    {
        // Independent route: sum of entries of Z^{-1} computed entrywise from
        // cofactors over the rational function field, evaluated at rational
        // points q0 where both sides are exact.
        let f = formal_magnitude(&x).unwrap();
        let n = x.len();
        for q0 in [rat(1, 2), rat(1, 3), rat(2, 3)] {
            // distances on the 1/8 grid: clear them to integers by working
            // at q0^{1/8} instead, i.e. evaluate q^{d} as (q0^{1/8})^{8d}
            let base = &q0; // exponents 8d are integers, see below
            let z: Vec<Vec<Rational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let d = x.dist(i, j).finite().unwrap();
                            let k = (d * rat(8, 1)).to_integer();
                            pow(base, &k)
                        })
                        .collect()
                })
                .collect();
            let det_z = det_rational(z.clone());
            prop_assume!(!det_z.is_zero());
            let mut adj_sum = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    let minor: Vec<Vec<Rational>> = (0..n)
                        .filter(|&r| r != i)
                        .map(|r| {
                            (0..n)
                                .filter(|&c| c != j)
                                .map(|c| z[r][c].clone())
                                .collect()
                        })
                        .collect();
                    let mut cof = det_rational(minor);
                    if (i + j) % 2 == 1 {
                        cof = -cof;
                    }
                    adj_sum += cof;
                }
            }
            let oracle = adj_sum / det_z;
            // f is a function of q = (q0)^{... }: evaluate f at q1 with
            // q1^{1/8} = q0, i.e. exponents of f times 8 are integers in q0
            let f8 = f.scale_exponents(&rat(8, 1)).unwrap();
            let num = f8.numerator().eval_exact(&q0).unwrap();
            let den = f8.denominator().eval_exact(&q0).unwrap();
            prop_assume!(!den.is_zero());
            prop_assert_eq!(num / den, oracle);
        }
    }
}

fn pow(base: &Rational, k: &BigInt) -> Rational {
    let mut out = Rational::one();
    let mut k = k.clone();
    let mut b = base.clone();
    while k.is_positive() {
        if k.bit(0) {
            out *= &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    out
}

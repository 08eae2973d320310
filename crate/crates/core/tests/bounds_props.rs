use diophlab::bounds::{
    bound_constants, feasible_uniform_exponent, frak_w_polynomial, g_root, g_root_enclosure, w_exact,
    w_polynomial,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |a, _| a * x)
}

/// `x^e - w^(e-2) (1 + w) x + w^(e-1)` evaluated directly.
fn h(w: &BigRational, e: usize, x: &BigRational) -> BigRational {
    pow(x, e) - pow(w, e - 2) * (BigRational::one() + w) * x + pow(w, e - 1)
}

fn pairs() -> Vec<(usize, usize)> {
    (3..=8).flat_map(|d| (1..d).map(move |n| (n, d))).collect()
}

#[test]
fn w_is_a_root_of_both_polynomials() {
    for (n, d) in pairs() {
        let w = w_exact(n, d);
        assert_eq!(w, rat(n as i64, (d - n) as i64));
        assert!(h(&w, d - n + 1, &w).is_zero());
        assert!(h(&w, d, &w).is_zero());
        assert!(frak_w_polynomial(n, d).unwrap().eval(&w).is_zero(), "({n},{d})");
        assert!(w_polynomial(n, d).unwrap().eval(&w).is_zero(), "({n},{d})");
        // the library polynomials agree with the direct formula off the root
        for k in 1..6 {
            let x = rat(k, 7);
            assert_eq!(frak_w_polynomial(n, d).unwrap().eval(&x), h(&w, d - n + 1, &x));
            assert_eq!(w_polynomial(n, d).unwrap().eval(&x), h(&w, d, &x));
        }
    }
}

#[test]
fn line_case_constants_coincide() {
    for d in 3..=8 {
        let b = bound_constants(1, d).unwrap();
        assert_eq!(b.big_w.polynomial, b.frak_w.polynomial);
        assert_eq!(b.big_w.degenerate, b.frak_w.degenerate);
        match (&b.big_w.enclosure, &b.frak_w.enclosure) {
            (Some((a0, a1)), Some((b0, b1))) => {
                let tol = rat(1, 1_000_000_000_000);
                assert!(a0 <= &(b1 + &tol) && b0 <= &(a1 + &tol));
            }
            (None, None) => {}
            other => panic!("{other:?}"),
        }
        assert_eq!(b.frak_w_or_w(), b.big_w_or_w());
        // n = 1: p'(w) = w^(d-2) ((d - 1) w - 1) = 0, so w is a double root
        assert_eq!(b.frak_w.multiplicity_at_w, 2, "d={d}");
        assert_eq!(b.big_w.multiplicity_at_w, 2, "d={d}");
    }
    // d = 3: x^3 - 3/4 x + 1/4 = (x - 1/2)^2 (x + 1) exactly
    let w = rat(1, 2);
    for k in -5..5 {
        let x = rat(k, 3);
        assert_eq!(h(&w, 3, &x), (&x - &w) * (&x - &w) * (&x + BigRational::one()));
    }
    assert!(bound_constants(1, 3).unwrap().frak_w.degenerate);
}

proptest! {
    #[test]
    fn feasibility_brackets_the_root(idx in 0usize..1000, t in 0u32..=1000) {
        let all = pairs();
        let (n, d) = all[idx % all.len()];
        let b = bound_constants(n, d).unwrap();
        prop_assume!(!b.frak_w.degenerate);
        let eps = rat(1, 1_000_000);
        let (lo, hi) = b.frak_w.enclosure.clone().unwrap();
        let w = w_exact(n, d);
        let frac = rat(t as i64, 1000);
        // a point of [0, frakW - eps]
        let below = (&lo - &eps) * &frac;
        prop_assert!(feasible_uniform_exponent(n, d, &below).unwrap(), "({n},{d}) at {below}");
        // a point of [frakW + eps, w - eps]
        let start = &hi + &eps;
        let end = &w - &eps;
        if start <= end {
            let above = &start + (&end - &start) * &frac;
            prop_assert!(!feasible_uniform_exponent(n, d, &above).unwrap(), "({n},{d}) at {above}");
        }
    }

    #[test]
    fn g_root_solves_the_theorem_polynomial(k in 2usize..=7, num in 1i64..1000) {
        // exponent k = d - n of the polynomial (1 - om) x^k - x^(k-1) + om;
        // a root lies within 1e-10 of the returned value
        let om = rat(num, 1000);
        let g = g_root(k + 1, num as f64 / 1000.0).unwrap();
        prop_assert!(g > 0.0);
        let f = |x: &BigRational| (BigRational::one() - &om) * pow(x, k) - pow(x, k - 1) + &om;
        let gr = BigRational::from_float(g).unwrap();
        let tol = rat(1, 10_000_000_000);
        let (a, b) = (f(&(&gr - &tol)), f(&(&gr + &tol)));
        prop_assert!(a.is_zero() || b.is_zero() || (a < BigRational::zero()) != (b < BigRational::zero())
            || (&gr - &tol <= BigRational::one() && BigRational::one() <= &gr + &tol),
            "k={k} om={num}/1000 g={g}");
    }

    #[test]
    fn g_root_enclosure_brackets_a_root(k in 2usize..=7, num in 1i64..1000) {
        let om = rat(num, 1000);
        let (lo, hi) = g_root_enclosure(k + 1, &om).unwrap();
        let g = |x: &BigRational| (BigRational::one() - &om) * pow(x, k) - pow(x, k - 1) + &om;
        // the root found is not the trivial root x = 1 unless the two coincide
        let (a, b) = (g(&lo), g(&hi));
        prop_assert!(a.is_zero() || b.is_zero() || (a < BigRational::zero()) != (b < BigRational::zero())
            || (lo <= BigRational::one() && BigRational::one() <= hi));
        prop_assert!(&hi - &lo <= rat(1, 1_000_000_000_000));
    }
}

#[test]
fn g_root_examples() {
    assert!((g_root(3, 0.5).unwrap() - 1.0).abs() < 1e-12);
    assert!((g_root(3, 1.0 / 3.0).unwrap() - 0.5).abs() < 1e-12);
    assert!((g_root(4, 0.5).unwrap() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    assert!(g_root(2, 0.5).is_err());
    assert!(g_root(4, 1.0).is_err());
}

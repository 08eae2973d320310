mod common;

use common::{brute_records, compare, target};
use diophlab::approx::{
    best_approximations, exponent_estimates, span_rank_tail, Metric, ScanOptions, TargetMatrix,
};
use diophlab::ExactScalar;
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((1, 1)), Just((1, 2)), Just((2, 1)), Just((1, 3)), Just((2, 2)), Just((3, 1))]
}

fn rational_target() -> impl Strategy<Value = (Vec<Vec<i64>>, i64)> {
    (shape(), prop_oneof![2i64..40, 1000i64..30_000]).prop_flat_map(|((n, m), q)| {
        (proptest::collection::vec(proptest::collection::vec(0..q, n), m), Just(q))
    })
}

/// Entries `a + b sqrt(D)` reduced into [0, 1); all in one field.
fn quadratic_target() -> impl Strategy<Value = TargetMatrix> {
    (shape(), prop_oneof![Just(2i64), Just(3), Just(5), Just(7)]).prop_flat_map(|((n, m), dd)| {
        proptest::collection::vec(proptest::collection::vec((1i64..9, 1i64..9), n), m).prop_map(
            move |rows| {
                let root = (dd as f64).sqrt();
                let e = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|&(b, c)| {
                                // b sqrt(D) / c minus its integer part
                                let fl = (b as f64 * root / c as f64).floor() as i64;
                                format!("{}+{b}/{c}*sqrt({dd})", -fl).parse::<ExactScalar>().unwrap()
                            })
                            .collect()
                    })
                    .collect();
                TargetMatrix::new(e).unwrap()
            },
        )
    })
}

fn metric() -> impl Strategy<Value = Metric> {
    prop_oneof![Just(Metric::Form), Just(Metric::Subspace)]
}

fn scan(t: &TargetMatrix, metric: Metric, tmax: u64) -> diophlab::approx::BestApproxSequence {
    best_approximations(t, metric, tmax, &ScanOptions::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn records_match_brute_force((p, q) in rational_target(), metric in metric(), tmax in 1u64..60) {
        let seq = scan(&target(&p, q), metric, tmax);
        let oracle = brute_records(&p, q, metric, tmax);
        if let Err(msg) = compare(&seq, &oracle) {
            prop_assert!(false, "{msg}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enlarging_t_only_appends(t in quadratic_target(), metric in metric(), t1 in 1u64..40, extra in 1u64..40) {
        let a = scan(&t, metric, t1);
        let b = scan(&t, metric, t1 + extra);
        prop_assert!(a.records.len() <= b.records.len());
        prop_assert_eq!(&a.records[..], &b.records[..a.records.len()]);
    }

    #[test]
    fn metrics_are_comparable(t in quadratic_target(), tmax in 5u64..40) {
        // psi_F / sqrt(1 + |Theta|_F^2) <= psi_S <= sqrt(m) psi_F at every x
        let (theta, _) = t.f64_entries();
        let m = t.m();
        let frob2: f64 = theta.iter().flatten().map(|v| v * v).sum();
        let form_err = |x: &[i64]| {
            theta
                .iter()
                .map(|row| {
                    let v: f64 = row.iter().zip(x).map(|(a, &b)| a * b as f64).sum();
                    (v - v.round()).abs()
                })
                .fold(0.0, f64::max)
        };
        let sub = scan(&t, Metric::Subspace, tmax);
        for r in &sub.records {
            let f = form_err(&r.x);
            prop_assert!(f / (1.0 + frob2).sqrt() <= r.psi * (1.0 + 1e-9) + 1e-12);
            prop_assert!(r.psi <= (m as f64).sqrt() * f * (1.0 + 1e-9) + 1e-12);
        }
        // the record errors of the two metrics interleave within the same factors
        let form = scan(&t, Metric::Form, tmax);
        let last_f = form.records.last().unwrap().psi;
        let last_s = sub.records.last().unwrap().psi;
        prop_assert!(last_f / (1.0 + frob2).sqrt() <= last_s * (1.0 + 1e-9) + 1e-12);
        prop_assert!(last_s <= (m as f64).sqrt() * last_f * (1.0 + 1e-9) + 1e-12);
    }

    #[test]
    fn omega_dominates_omega_hat(t in quadratic_target(), metric in metric(), tmax in 50u64..200) {
        let seq = scan(&t, metric, tmax);
        if seq.records.len() >= 3 && !seq.exact_hit {
            let e = exponent_estimates(&seq).unwrap();
            prop_assert!(e.omega_est >= e.omega_hat_est);
            prop_assert!(e.omega_hat_est >= 0.0);
        }
    }
}

#[test]
fn quadratic_irrationals_have_exponent_one() {
    for s in ["0+1*sqrt(2)", "0+1*sqrt(3)", "1/2+1/2*sqrt(5)", "-2+1*sqrt(6)", "0+1*sqrt(13)", "0+1*sqrt(46)"] {
        let t = TargetMatrix::new(vec![vec![s.parse().unwrap()]]).unwrap();
        let e = exponent_estimates(&scan(&t, Metric::Form, 1_000_000)).unwrap();
        assert!((e.omega_est - 1.0).abs() <= 0.05, "{s}: {e:?}");
        assert!((e.omega_hat_est - 1.0).abs() <= 0.05, "{s}: {e:?}");
    }
}

#[test]
fn span_rank_is_nonincreasing() {
    let t = TargetMatrix::new(vec![vec!["0+1*sqrt(2)".parse().unwrap()], vec!["0+1*sqrt(8)".parse().unwrap()]])
        .unwrap();
    let r = span_rank_tail(&scan(&t, Metric::Form, 2000)).unwrap();
    for w in r.ranks.windows(2) {
        assert!(w[0].1 >= w[1].1);
    }
    // (1, sqrt 2, 2 sqrt 2) satisfies y_2 = 2 y_1, so the records span at most a plane
    assert!(r.stabilized <= 2);
}

/// Records of `max_j ||theta_j . x||` over the box `|x| <= t` in `Z^2`, by
/// sup-norm shell, in plain floating point.
fn float_records(theta: [[f64; 2]; 2], t: i64) -> Vec<(i64, f64)> {
    let dist = |v: f64| (v - v.round()).abs();
    let mut best = f64::INFINITY;
    let mut out = vec![];
    for s in 1..=t {
        let mut sb = f64::INFINITY;
        let mut visit = |x0: i64, x1: i64| {
            let e = theta
                .iter()
                .map(|r| dist(r[0] * x0 as f64 + r[1] * x1 as f64))
                .fold(0.0, f64::max);
            sb = sb.min(e);
        };
        for v in -s..=s {
            visit(s, v);
        }
        for v in -s + 1..s {
            visit(v, s);
        }
        if sb < best {
            best = sb;
            out.push((s, sb));
        }
    }
    out
}

#[test]
fn quartic_plane_bad_constant() {
    let mut r = 1.4f64;
    for _ in 0..60 {
        r -= (r.powi(4) - r.powi(3) - 1.0) / (4.0 * r.powi(3) - 3.0 * r.powi(2));
    }
    // theta_j^i = r^(j 3^(i-1))
    let theta = [[r, r.powi(3)], [r.powi(2), r.powi(6)]];
    let oracle = float_records(theta, 10_000);
    let a = diophlab::approx::algebraic_subspace(&[-1, 0, 0, -1, 1], 2, 4).unwrap();
    let seq = best_approximations(&a.theta, Metric::Form, 10_000, &ScanOptions::default()).unwrap();
    assert_eq!(seq.norms(), oracle.iter().map(|o| o.0 as u64).collect::<Vec<_>>());
    let b = diophlab::approx::bad_constant_estimate(&seq, 2, 2).unwrap();
    let inf = oracle.iter().map(|&(s, e)| (s as f64).powi(2) * e * e).fold(f64::INFINITY, f64::min);
    assert!((b.infimum - inf).abs() < 1e-9 * inf, "{} vs {inf}", b.infimum);
    // frozen from the float oracle above
    assert!((b.infimum - 0.008_516_381_058).abs() < 1e-11);
    assert!(b.tail > 0.0);
}

use super::best::BestApproxSequence;
use crate::error::{Error, Result};
use crate::linalg::rank_i64;
use serde::Serialize;

/// Default fraction of leading records skipped as warm-up.
pub const DEFAULT_WARMUP: f64 = 0.2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BadConstantEstimate {
    /// `min M^n psi^m` over all records, which is the minimum over every
    /// scanned `x`: a point between two records has a norm at least that of
    /// the earlier record and an error at least its error.
    pub infimum: f64,
    /// The same minimum over records after the warm-up prefix; estimates the
    /// `liminf` rather than the infimum.
    pub tail: f64,
    pub tail_start: usize,
    pub exact_hit: bool,
}

fn tail_start(len: usize, warmup: f64) -> usize {
    ((len as f64 * warmup).floor() as usize).min(len.saturating_sub(1))
}

pub fn bad_constant_estimate(
    seq: &BestApproxSequence,
    n: usize,
    m: usize,
) -> Result<BadConstantEstimate> {
    bad_constant_estimate_with(seq, n, m, DEFAULT_WARMUP)
}

pub fn bad_constant_estimate_with(
    seq: &BestApproxSequence,
    n: usize,
    m: usize,
    warmup: f64,
) -> Result<BadConstantEstimate> {
    if seq.records.is_empty() {
        return Err(Error::precondition("empty best-approximation sequence"));
    }
    if (n, m) != (seq.n, seq.m) {
        return Err(Error::precondition(format!(
            "sequence has n = {}, m = {}; requested n = {n}, m = {m}",
            seq.n, seq.m
        )));
    }
    let start = tail_start(seq.records.len(), warmup);
    if seq.exact_hit {
        return Ok(BadConstantEstimate {
            infimum: 0.0,
            tail: 0.0,
            tail_start: start,
            exact_hit: true,
        });
    }
    let prod: Vec<f64> = seq
        .records
        .iter()
        .map(|r| (r.norm as f64).powi(n as i32) * r.psi.powi(m as i32))
        .collect();
    let min = |s: &[f64]| s.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(BadConstantEstimate {
        infimum: min(&prod),
        tail: min(&prod[start..]),
        tail_start: start,
        exact_hit: false,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentEstimate {
    pub omega_est: f64,
    pub omega_hat_est: f64,
    pub t: u64,
    pub tail_start: usize,
    /// `-log psi_nu / log M_(nu+1)` for each record from the tail start (the
    /// last one uses `T + 1`).
    pub uniform_ratios: Vec<f64>,
    /// `-log psi_nu / log M_nu` for each record from the tail start.
    pub pointwise_ratios: Vec<f64>,
    /// Least-squares slope of `-log psi` against `log M` over the tail.
    pub trend_slope: f64,
}

/// A late pointwise ratio counts as a spike when it exceeds the trend by this.
pub const SPIKE_MARGIN: f64 = 0.5;

pub fn exponent_estimates(seq: &BestApproxSequence) -> Result<ExponentEstimate> {
    exponent_estimates_with(seq, DEFAULT_WARMUP)
}

/// Uniform exponent: between consecutive records the best error available is
/// `psi_nu` for every bound below `M_(nu+1)`, so `omega_hat` is estimated by
/// the smallest `-log psi_nu / log M_(nu+1)` along the tail.
///
/// Ordinary exponent: the least-squares slope of `-log psi` against `log M`
/// over the tail, raised to any pointwise ratio `-log psi_nu / log M_nu` of a
/// record with `M_nu >= sqrt(T)` that exceeds the slope by [`SPIKE_MARGIN`],
/// and never below the uniform estimate.
pub fn exponent_estimates_with(seq: &BestApproxSequence, warmup: f64) -> Result<ExponentEstimate> {
    let recs = &seq.records;
    if recs.len() < 3 {
        return Err(Error::precondition(format!(
            "need at least 3 records, got {}",
            recs.len()
        )));
    }
    if seq.exact_hit {
        return Err(Error::precondition("sequence ends in an exact hit"));
    }
    if !(0.0..1.0).contains(&warmup) {
        return Err(Error::precondition("warm-up fraction must lie in [0, 1)"));
    }
    let start = tail_start(recs.len(), warmup).min(recs.len() - 2);
    let lpsi: Vec<f64> = recs.iter().map(|r| -r.psi.ln()).collect();
    let lm: Vec<f64> = recs.iter().map(|r| (r.norm as f64).ln()).collect();
    let uniform_ratios: Vec<f64> = (start..recs.len())
        .map(|k| {
            let next = if k + 1 < recs.len() {
                lm[k + 1]
            } else {
                ((seq.t + 1) as f64).ln()
            };
            lpsi[k] / next
        })
        .collect();
    let pointwise_ratios: Vec<f64> = (start..recs.len())
        .map(|k| if lm[k] > 0.0 { lpsi[k] / lm[k] } else { f64::INFINITY })
        .collect();
    let xs = &lm[start..];
    let ys = &lpsi[start..];
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let trend_slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let late = 0.5 * (seq.t as f64).ln();
    let spike = (start..recs.len())
        .filter(|&k| lm[k] >= late && lm[k] > 0.0)
        .map(|k| lpsi[k] / lm[k])
        .filter(|&r| r >= trend_slope + SPIKE_MARGIN)
        .fold(f64::NEG_INFINITY, f64::max);
    let omega_hat_est = uniform_ratios.iter().cloned().fold(f64::INFINITY, f64::min).max(0.0);
    let omega_est = trend_slope.max(spike).max(omega_hat_est);
    Ok(ExponentEstimate {
        omega_est,
        omega_hat_est,
        t: seq.t,
        tail_start: start,
        uniform_ratios,
        pointwise_ratios,
        trend_slope,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpanRankReport {
    pub d: usize,
    pub t: u64,
    /// `(nu_0, rank of {z_nu : nu >= nu_0})`.
    pub ranks: Vec<(usize, usize)>,
    pub stabilized: usize,
    pub stable_start: usize,
    /// Fewer records than the stabilization window needs.
    pub unstable: bool,
}

pub fn span_rank_tail(seq: &BestApproxSequence) -> Result<SpanRankReport> {
    if seq.records.is_empty() {
        return Err(Error::precondition("empty best-approximation sequence"));
    }
    let d = seq.n + seq.m;
    let z: Vec<Vec<i64>> = seq.records.iter().map(|r| r.z()).collect();
    let ranks: Vec<(usize, usize)> = (0..z.len()).map(|k| (k, rank_i64(&z[k..]))).collect();
    let window = (d + 1).max(5);
    let unstable = z.len() < window;
    let stable_start = z.len().saturating_sub(window);
    Ok(SpanRankReport {
        d,
        t: seq.t,
        stabilized: ranks[stable_start].1,
        stable_start,
        ranks,
        unstable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::best::{best_approximations_vector, Metric, ScanOptions};
    use crate::approx::target::VectorTarget;
    use crate::scalar::ExactScalar;

    fn golden_seq(t: u64) -> BestApproxSequence {
        let g: ExactScalar = "1/2+1/2*sqrt(5)".parse().unwrap();
        let v = VectorTarget::new(vec![g]).unwrap();
        best_approximations_vector(&v, Metric::Form, t, &ScanOptions::default()).unwrap()
    }

    #[test]
    fn golden_constants() {
        let s = golden_seq(10_000);
        let b = bad_constant_estimate(&s, 1, 2 - 1).unwrap();
        assert!(b.infimum >= 0.2 && b.infimum <= 0.5);
        // q = 1 gives ||phi|| = 0.381966...
        assert!((b.infimum - 0.381_966_011_250_105).abs() < 1e-12);
        assert!(b.tail > 0.44 && b.tail < 0.45);
        assert!(bad_constant_estimate(&s, 2, 1).is_err());
    }

    #[test]
    fn golden_exponents() {
        let e = exponent_estimates(&golden_seq(100_000)).unwrap();
        assert!((e.omega_est - 1.0).abs() < 0.05, "{e:?}");
        assert!((e.omega_hat_est - 1.0).abs() < 0.05, "{e:?}");
        assert!(e.omega_est >= e.omega_hat_est);
    }

    #[test]
    fn truncated_liouville_spike() {
        // sum of 2^-k! for k <= 5; the record at q = 2^24 has error exactly 2^-96
        let mut num = num_bigint::BigInt::from(0);
        for k in [1u32, 2, 6, 24, 120] {
            num += num_bigint::BigInt::from(1) << (120 - k);
        }
        let xi = ExactScalar::Rational(num_rational::BigRational::new(num, num_bigint::BigInt::from(1) << 120));
        let v = VectorTarget::new(vec![xi]).unwrap();
        let s = best_approximations_vector(&v, Metric::Form, (1 << 24) + 1000, &ScanOptions::default()).unwrap();
        assert_eq!(s.records.last().unwrap().norm, 1 << 24);
        let e = exponent_estimates(&s).unwrap();
        assert!(e.omega_est >= 4.0 - 1e-9, "{e:?}");
        assert!(e.trend_slope < 3.0);
    }

    #[test]
    fn golden_span_rank() {
        let r = span_rank_tail(&golden_seq(10_000)).unwrap();
        assert_eq!(r.stabilized, 2);
        assert!(!r.unstable);
        for w in r.ranks.windows(2) {
            assert!(w[0].1 >= w[1].1);
        }
    }

    #[test]
    fn single_record_is_unstable() {
        let s = golden_seq(1);
        let r = span_rank_tail(&s).unwrap();
        assert_eq!(r.stabilized, 1);
        assert!(r.unstable);
        assert!(exponent_estimates(&s).is_err());
    }
}

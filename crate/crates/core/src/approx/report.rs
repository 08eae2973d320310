use super::best::{best_approximations_vector, Metric, ScanOptions};
use super::estimates::exponent_estimates;
use super::target::VectorTarget;
use crate::bounds::bound_constants;
use crate::error::{Error, Result};
use crate::exact::SubspaceBasis;
use crate::interval::rational_to_f64;
use crate::scalar::ExactScalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Coefficients of sampled vectors are integers in `[-COEFF_RANGE, COEFF_RANGE]`.
pub const COEFF_RANGE: i64 = 64;
const MAX_RESAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    /// `xi = sum_k c_k b_k`, rescaled so that the last coordinate is 1.
    pub coefficients: Vec<i64>,
    pub records: usize,
    pub exact_hit: bool,
    pub omega_est: Option<f64>,
    pub omega_hat_est: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentBoundReport {
    pub n: usize,
    pub d: usize,
    pub t: u64,
    pub seed: u64,
    pub samples: Vec<SampleReport>,
    /// Samples rejected because the last coordinate was within `1e-3` of 0.
    pub resampled: usize,
    pub max_omega_hat_est: Option<f64>,
    pub w: f64,
    #[serde(rename = "W")]
    pub big_w: f64,
    #[serde(rename = "frakW")]
    pub frak_w: f64,
    /// `frakW` (or `W`) is degenerate and `w` is used in its place.
    pub degenerate: bool,
    pub exceeds_w: bool,
    pub exceeds_big_w: bool,
    pub exceeds_frak_w: bool,
    pub exact_hits: usize,
}

/// Samples vectors of `L`, estimates their uniform exponents and compares the
/// largest estimate with the bound constants. A consistency check only.
pub fn exponent_bound_report(
    l: &SubspaceBasis,
    sample_count: usize,
    t: u64,
    seed: u64,
    opts: &ScanOptions,
) -> Result<ExponentBoundReport> {
    if sample_count < 1 {
        return Err(Error::precondition("need at least one sample"));
    }
    let (n, d) = (l.n(), l.d());
    let bounds = bound_constants(n, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = vec![];
    let mut resampled = 0;
    while samples.len() < sample_count {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-COEFF_RANGE..=COEFF_RANGE)).collect();
        let v: Vec<ExactScalar> = (0..d)
            .map(|k| {
                l.rows()
                    .iter()
                    .zip(&c)
                    .try_fold(ExactScalar::zero(), |acc, (row, &ck)| acc.add(&row[k].mul_int(ck)))
            })
            .collect::<Result<_>>()?;
        let last = &v[d - 1];
        if last.is_zero() || rational_to_f64(&last.enclose(64).mid()).abs() < 1e-3 {
            resampled += 1;
            if resampled > MAX_RESAMPLES {
                return Err(Error::precondition(
                    "every sampled vector has last coordinate near 0",
                ));
            }
            continue;
        }
        let xi = VectorTarget::normalized(&v)?;
        let seq = best_approximations_vector(&xi, Metric::Form, t, opts)?;
        let est = if seq.exact_hit {
            None
        } else {
            exponent_estimates(&seq).ok()
        };
        samples.push(SampleReport {
            coefficients: c,
            records: seq.records.len(),
            exact_hit: seq.exact_hit,
            omega_est: est.as_ref().map(|e| e.omega_est),
            omega_hat_est: est.as_ref().map(|e| e.omega_hat_est),
        });
    }
    let max = samples
        .iter()
        .filter_map(|s| s.omega_hat_est)
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))));
    let w = rational_to_f64(&bounds.w);
    let big_w = bounds.big_w_or_w();
    let frak_w = bounds.frak_w_or_w();
    let gt = |b: f64| max.is_some_and(|m| m > b);
    Ok(ExponentBoundReport {
        n,
        d,
        t,
        seed,
        exact_hits: samples.iter().filter(|s| s.exact_hit).count(),
        samples,
        resampled,
        max_omega_hat_est: max,
        w,
        big_w,
        frak_w,
        degenerate: bounds.frak_w.degenerate || bounds.big_w.degenerate,
        exceeds_w: gt(w),
        exceeds_big_w: gt(big_w),
        exceeds_frak_w: gt(frak_w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_plane_reports_hits() {
        let q = |v: i64| ExactScalar::int(v);
        let l = SubspaceBasis::new(vec![
            vec![q(1), q(0), q(2), q(1)],
            vec![q(0), q(1), q(1), q(3)],
        ])
        .unwrap();
        let r = exponent_bound_report(&l, 3, 10_000, 1, &ScanOptions::default()).unwrap();
        assert_eq!(r.exact_hits, 3);
        assert_eq!(r.max_omega_hat_est, None);
        assert!(!r.exceeds_w);
    }
}

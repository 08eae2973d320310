//! Bound constants for the uniform exponent of vectors in an `n`-dimensional
//! completely irrational subspace of `R^d`:
//!
//! * `w = n / (d - n)`,
//! * `W`, the root in `(0, w)` of `x^d - w^(d-2) (1 + w) x + w^(d-1)`,
//! * `frakW`, the root in `(0, w)` of `x^(d-n+1) - w^(d-n-1) (1 + w) x + w^(d-n)`,
//! * `G_r(omega_hat)`, the positive root of `x^(r-2) = c (x^(r-3) + ... + 1)`,
//!   `c = omega_hat / (1 - omega_hat)`.
//!
//! Roots are bracketed by a sign-change scan and refined by bisection on
//! exact rational evaluation.

use crate::error::{Error, Result};
use crate::interval::{f64_to_rational, rational_to_f64};
use crate::upoly::UPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Grid resolution of the sign-change scan: `2^-SCAN_BITS * w`.
pub const SCAN_BITS: u32 = 20;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn target_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRoot {
    /// The defining polynomial, lowest degree first, as exact strings.
    pub polynomial: String,
    /// Enclosure `[lo, hi]` of the smallest interior root, width `<= 1e-12`.
    #[serde(serialize_with = "crate::ser::opt_rat_pair")]
    pub enclosure: Option<(BigRational, BigRational)>,
    /// No sign change inside `(0, w)`.
    pub degenerate: bool,
    /// Multiplicity of `x = w` as a root (exact).
    pub multiplicity_at_w: usize,
    /// Number of sign changes seen on the scan grid; more than one is a
    /// uniqueness warning.
    pub interior_sign_changes: usize,
    pub warning: Option<String>,
    /// `|p(mid)|` at the enclosure midpoint.
    pub residual: Option<f64>,
}

impl BoundRoot {
    pub fn value(&self) -> Option<f64> {
        self.enclosure
            .as_ref()
            .map(|(a, b)| rational_to_f64(&((a + b) / rat(2))))
    }

    pub fn mid(&self) -> Option<BigRational> {
        self.enclosure.as_ref().map(|(a, b)| (a + b) / rat(2))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSet {
    pub n: usize,
    pub d: usize,
    #[serde(serialize_with = "crate::ser::rat")]
    pub w: BigRational,
    #[serde(rename = "W")]
    pub big_w: BoundRoot,
    #[serde(rename = "frakW")]
    pub frak_w: BoundRoot,
}

impl BoundSet {
    /// `frakW`, or `w` when degenerate.
    pub fn frak_w_or_w(&self) -> f64 {
        self.frak_w.value().unwrap_or_else(|| rational_to_f64(&self.w))
    }

    pub fn big_w_or_w(&self) -> f64 {
        self.big_w.value().unwrap_or_else(|| rational_to_f64(&self.w))
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n < 1 || n >= d || d < 3 {
        return Err(Error::precondition(format!(
            "need 1 <= n < d and d >= 3, got n = {n}, d = {d}"
        )));
    }
    Ok(())
}

pub fn w_exact(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d - n))
}

fn rpow(x: &BigRational, k: usize) -> BigRational {
    let mut r = BigRational::one();
    for _ in 0..k {
        r *= x;
    }
    r
}

/// `x^e - w^(e-2) (1 + w) x + w^(e-1)`; `e = d` gives the `W` polynomial and
/// `e = d - n + 1` the `frakW` polynomial.
fn bound_poly(w: &BigRational, e: usize) -> UPoly {
    let mut c = vec![BigRational::zero(); e + 1];
    c[0] = rpow(w, e - 1);
    c[1] = -(rpow(w, e - 2) * (BigRational::one() + w));
    c[e] = BigRational::one();
    UPoly::new(c)
}

pub fn w_polynomial(n: usize, d: usize) -> Result<UPoly> {
    check_nd(n, d)?;
    Ok(bound_poly(&w_exact(n, d), d))
}

pub fn frak_w_polynomial(n: usize, d: usize) -> Result<UPoly> {
    check_nd(n, d)?;
    Ok(bound_poly(&w_exact(n, d), d - n + 1))
}

/// Sign of `p(x)` for `x = k * step`, from f64 evaluation with a rigorous
/// rounding bound and exact fallback.
fn sign_at(p: &UPoly, pf: &[f64], k: i64, stepf: f64, step: &BigRational) -> i32 {
    let xf = k as f64 * stepf;
    let mut v = 0.0f64;
    let mut mag = 0.0f64;
    for c in pf.iter().rev() {
        v = v * xf + c;
        mag = mag * xf.abs() + c.abs();
    }
    // Horner error <= 2 deg u sum|c_i||x|^i; the factor 4 also covers the
    // rounding of x and of the coefficients.
    let deg = pf.len() as f64;
    let bound = 4.0 * deg * f64::EPSILON * mag + f64::MIN_POSITIVE;
    if v > bound {
        1
    } else if v < -bound {
        -1
    } else {
        exact_sign(p, &(step * rat(k)))
    }
}

fn exact_sign(p: &UPoly, x: &BigRational) -> i32 {
    let v = p.eval(x);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn interior_root(p: &UPoly, w: &BigRational) -> BoundRoot {
    let pf: Vec<f64> = p.coeffs().iter().map(rational_to_f64).collect();
    let steps = 1i64 << SCAN_BITS;
    let step = w / rat(steps);
    let stepf = rational_to_f64(&step);
    let mut first: Option<(i64, i64)> = None;
    let mut changes = 0;
    let mut prev_k = 0;
    let mut prev_s = exact_sign(p, &BigRational::zero());
    for k in 1..steps {
        let s = sign_at(p, &pf, k, stepf, &step);
        if s == 0 {
            // exact grid root
            changes += 1;
            if first.is_none() {
                first = Some((k, k));
            }
        } else if prev_s != 0 && s != prev_s {
            changes += 1;
            if first.is_none() {
                first = Some((prev_k, k));
            }
        }
        if s != 0 {
            prev_s = s;
        }
        prev_k = k;
    }
    let first = first.map(|(a, b)| (&step * rat(a), &step * rat(b)));
    let mut mult = 0;
    let mut q = p.clone();
    while !q.is_zero() && q.eval(w).is_zero() {
        mult += 1;
        q = q.derivative();
    }
    let warning = (changes > 1).then(|| {
        format!("{changes} sign changes in (0, w); the smallest root is reported")
    });
    let enclosure = first.map(|(lo, hi)| {
        if lo == hi {
            (lo, hi)
        } else {
            UPoly::bisect(p, lo, hi, &target_width())
        }
    });
    let residual = enclosure
        .as_ref()
        .map(|(a, b)| rational_to_f64(&p.eval(&((a + b) / rat(2)))).abs());
    BoundRoot {
        polynomial: p.to_string(),
        degenerate: enclosure.is_none(),
        enclosure,
        multiplicity_at_w: mult,
        interior_sign_changes: changes,
        warning,
        residual,
    }
}

pub fn bound_constants(n: usize, d: usize) -> Result<BoundSet> {
    check_nd(n, d)?;
    let w = w_exact(n, d);
    let big_w = interior_root(&bound_poly(&w, d), &w);
    let frak_w = interior_root(&bound_poly(&w, d - n + 1), &w);
    Ok(BoundSet {
        n,
        d,
        w,
        big_w,
        frak_w,
    })
}

/// `(1 - om) x^(r-2) - om (x^(r-3) + ... + 1)`, the defining equation of
/// `G_r` multiplied by `om`.
fn g_poly(r: usize, om: &BigRational) -> UPoly {
    let mut c = vec![-om.clone(); r - 1];
    c[r - 2] = BigRational::one() - om;
    UPoly::new(c)
}

/// Enclosure of `G_r(omega_hat)` of width `<= 1e-12`.
pub fn g_root_enclosure(r: usize, omega_hat: &BigRational) -> Result<(BigRational, BigRational)> {
    if r < 3 {
        return Err(Error::precondition(format!("need r >= 3, got {r}")));
    }
    if !omega_hat.is_positive() || omega_hat >= &BigRational::one() {
        return Err(Error::precondition(format!(
            "omega_hat must lie in (0, 1), got {omega_hat}"
        )));
    }
    let p = g_poly(r, omega_hat);
    let c = omega_hat / (BigRational::one() - omega_hat);
    let hi = BigRational::one() + c;
    // p(0) = -om < 0, p(1 + c) = (1 - om) > 0; Sturm count confirms uniqueness
    let seq = p.sturm_sequence();
    let count = UPoly::count_roots(&seq, &BigRational::zero(), &hi);
    debug_assert_eq!(count, 1);
    if count != 1 {
        return Err(Error::precondition(format!(
            "expected one positive root, found {count}"
        )));
    }
    if exact_sign(&p, &hi) == 0 {
        return Ok((hi.clone(), hi));
    }
    Ok(UPoly::bisect(&p, BigRational::zero(), hi, &target_width()))
}

pub fn g_root(r: usize, omega_hat: f64) -> Result<f64> {
    if !omega_hat.is_finite() {
        return Err(Error::precondition("omega_hat must be finite"));
    }
    let (a, b) = g_root_enclosure(r, &f64_to_rational(omega_hat))?;
    Ok(rational_to_f64(&((a + b) / rat(2))))
}

/// `h(om) = om^(d-n+1) - w^(d-n-1) (1 + w) om + w^(d-n)`, exactly.
pub fn feasibility_margin(n: usize, d: usize, omega_hat: &BigRational) -> Result<BigRational> {
    check_nd(n, d)?;
    let w = w_exact(n, d);
    if omega_hat.is_negative() || omega_hat > &w {
        return Err(Error::precondition(format!(
            "omega_hat must lie in [0, w] = [0, {w}], got {omega_hat}"
        )));
    }
    Ok(bound_poly(&w, d - n + 1).eval(omega_hat))
}

/// `h(omega_hat) >= 0`. The input is converted to an exact rational, so the
/// sign is always decided.
pub fn feasible_uniform_exponent(n: usize, d: usize, omega_hat: &BigRational) -> Result<bool> {
    Ok(!feasibility_margin(n, d, omega_hat)?.is_negative())
}

pub fn feasible_uniform_exponent_f64(n: usize, d: usize, omega_hat: f64) -> Result<bool> {
    if !omega_hat.is_finite() {
        return Err(Error::precondition("omega_hat must be finite"));
    }
    feasible_uniform_exponent(n, d, &f64_to_rational(omega_hat))
}

/// Decimal rendering of a rational to `digits` places (truncated toward zero).
pub fn decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let v = (x * BigRational::from_integer(scale.clone())).trunc().to_integer();
    let neg = v.is_negative() || (v.is_zero() && x.is_negative());
    let v = v.abs();
    let int = &v / &scale;
    let frac = (&v % &scale).to_u128().unwrap_or(0);
    format!(
        "{}{}.{:0width$}",
        if neg { "-" } else { "" },
        int,
        frac,
        width = digits
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn example_2_4() {
        let b = bound_constants(2, 4).unwrap();
        assert_eq!(b.w, q(1, 1));
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert!((b.frak_w.value().unwrap() - golden).abs() < 1e-11);
        // x^4 - 2x + 1 = (x - 1)(x^3 + x^2 + x - 1); Cardano root 0.5436890127
        assert!((b.big_w.value().unwrap() - 0.543_689_012_692_076).abs() < 1e-11);
        assert_eq!(b.frak_w.multiplicity_at_w, 1);
        assert!(b.frak_w.residual.unwrap() < 1e-10);
    }

    #[test]
    fn degenerate_1_3() {
        let b = bound_constants(1, 3).unwrap();
        assert!(b.frak_w.degenerate);
        assert!(b.big_w.degenerate);
        assert_eq!(b.frak_w.multiplicity_at_w, 2);
        assert_eq!(b.frak_w_or_w(), 0.5);
    }

    #[test]
    fn invalid_pairs() {
        assert!(bound_constants(2, 2).is_err());
        assert!(bound_constants(1, 2).is_err());
        assert!(bound_constants(0, 4).is_err());
    }

    #[test]
    fn g_root_examples() {
        assert!((g_root(3, 0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!((g_root(3, 1.0 / 3.0).unwrap() - 0.5).abs() < 1e-12);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((g_root(4, 0.5).unwrap() - phi).abs() < 1e-12);
        assert!(g_root(4, 0.0).is_err());
        assert!(g_root(4, 1.0).is_err());
        assert!(g_root(2, 0.5).is_err());
    }

    #[test]
    fn feasibility_examples() {
        assert!(feasible_uniform_exponent_f64(2, 4, 0.6).unwrap());
        assert!(!feasible_uniform_exponent_f64(2, 4, 0.63).unwrap());
        assert!(feasible_uniform_exponent_f64(2, 4, 0.0).unwrap());
        assert_eq!(feasibility_margin(2, 4, &q(3, 5)).unwrap(), q(2, 125));
        assert!(feasible_uniform_exponent_f64(2, 4, 1.5).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal(&q(1, 3), 4), "0.3333");
        assert_eq!(decimal(&q(-5, 2), 2), "-2.50");
        assert_eq!(decimal(&q(-1, 8), 2), "-0.12");
    }
}

//! Floating-point view of a polynomial on a ball, in coordinates `z = c + rho w`
//! with `|w| <= 1`. Used only to pick directions and points; every claim is
//! re-checked exactly.

use super::ball::Ball;
use crate::interval::rational_to_f64;
use crate::multipoly::MultiPolynomial;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub(crate) const NEWTON_STARTS: usize = 32;
const NEWTON_STEPS: usize = 60;

pub(crate) struct LocalPoly {
    r: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl LocalPoly {
    pub fn new(f: &MultiPolynomial, ball: &Ball) -> Option<Self> {
        let g = f.taylor_shift(&ball.center);
        let scaled: Vec<(Vec<u32>, BigRational)> = g
            .terms()
            .map(|(e, c)| {
                let mut t = c.clone();
                for _ in 0..e.iter().sum::<u32>() {
                    t *= &ball.radius;
                }
                (e.clone(), t)
            })
            .collect();
        let big = scaled.iter().map(|(_, c)| c.abs()).max()?;
        if big.is_zero() {
            return None;
        }
        let terms = scaled
            .into_iter()
            .map(|(e, c)| (e, rational_to_f64(&(c / &big))))
            .collect();
        Some(LocalPoly { r: f.nvars(), terms })
    }

    pub fn eval(&self, w: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(w).map(|(&k, x)| x.powi(k as i32)).product::<f64>())
            .sum()
    }

    pub fn grad(&self, w: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.r];
        for (e, c) in &self.terms {
            for i in 0..self.r {
                if e[i] == 0 {
                    continue;
                }
                let mut t = c * e[i] as f64;
                for (j, (&k, x)) in e.iter().zip(w).enumerate() {
                    let p = if j == i { k - 1 } else { k };
                    t *= x.powi(p as i32);
                }
                g[i] += t;
            }
        }
        g
    }

    /// Newton projection onto `{g = 0}` from `w0`.
    pub fn project(&self, w0: &[f64]) -> Option<Vec<f64>> {
        let mut w = w0.to_vec();
        for _ in 0..NEWTON_STEPS {
            let v = self.eval(&w);
            if v.abs() < 1e-13 {
                return Some(w);
            }
            let g = self.grad(&w);
            let n2: f64 = g.iter().map(|x| x * x).sum();
            if !(n2 > 1e-24) {
                return None;
            }
            for (x, gi) in w.iter_mut().zip(&g) {
                *x -= v * gi / n2;
            }
            if w.iter().any(|x| !x.is_finite() || x.abs() > 4.0) {
                return None;
            }
        }
        (self.eval(&w).abs() < 1e-11).then_some(w)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// A point of `{f = 0}` inside the ball (local coordinates, `|w| <= 0.999`)
/// with nonvanishing gradient there, from the center and seeded starts.
/// Returns the point nearest the center.
pub(crate) fn locate<R: Rng>(
    f: &MultiPolynomial,
    ball: &Ball,
    rng: &mut R,
) -> Option<(Vec<f64>, Vec<f64>)> {
    let lp = LocalPoly::new(f, ball)?;
    let r = ball.dim();
    let mut best: Option<(Vec<f64>, Vec<f64>)> = None;
    for k in 0..NEWTON_STARTS {
        let start: Vec<f64> = if k == 0 {
            vec![0.0; r]
        } else {
            random_in_ball(r, rng)
        };
        if let Some(w) = lp.project(&start) {
            let g = lp.grad(&w);
            if norm(&w) <= 0.999 && norm(&g) > 1e-9 && best.as_ref().is_none_or(|(b, _)| norm(&w) < norm(b)) {
                best = Some((w, g));
            }
        }
    }
    best
}

pub(crate) fn random_unit<R: Rng>(r: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let n = norm(&v);
        if n > 1e-3 && n <= 1.0 {
            return v.iter().map(|x| x / n).collect();
        }
    }
}

pub(crate) fn random_in_ball<R: Rng>(r: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..r).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if norm(&v) <= 1.0 {
            return v;
        }
    }
}

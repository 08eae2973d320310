//! Dense univariate polynomials over `Q`.
//!
//! Coefficients are stored lowest degree first. Besides the ring operations
//! this module carries the pieces needed for number fields and for the bound
//! constants: exact evaluation, Sturm sequences, real root isolation,
//! bisection refinement and an irreducibility test over `Q`.

use crate::error::{Error, Result};
use crate::interval::RatInterval;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl UPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        UPoly { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &BigRational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(q), UPoly::new(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead().recip();
        self.scale(&l)
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `m`, when `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::constant(BigRational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let inv = r0.lead().recip();
        Some(s0.scale(&inv).rem(m))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &RatInterval) -> RatInterval {
        let mut acc = RatInterval::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&RatInterval::point(c.clone()));
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq.retain(|p| !p.is_zero());
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(seq: &[UPoly], lo: &BigRational, hi: &BigRational) -> usize {
        let v = |x: &BigRational| -> usize {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| {
                    let e = p.eval(x);
                    if e.is_positive() {
                        1
                    } else if e.is_negative() {
                        -1
                    } else {
                        0
                    }
                })
                .filter(|s| *s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        v(lo).saturating_sub(v(hi))
    }

    /// Bound `B` with every real root in `[-B, B]`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self.lead().abs();
        let m = self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .map(|c| c.abs() / &lead)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }

    /// Isolating intervals `(lo, hi]` for the distinct real roots, sorted
    /// increasingly. Endpoints are dyadic and never roots themselves.
    pub fn isolate_real_roots(&self) -> Vec<(BigRational, BigRational)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let sq = self.squarefree_part();
        let seq = sq.sturm_sequence();
        let b = sq.root_bound();
        // Power of two bound keeps every endpoint dyadic.
        let mut pb = BigRational::one();
        while pb <= b {
            pb *= rat(2);
        }
        let mut out = vec![];
        let mut stack = vec![(-pb.clone(), pb)];
        while let Some((lo, hi)) = stack.pop() {
            let c = UPoly::count_roots(&seq, &lo, &hi);
            if c == 0 {
                continue;
            }
            if c == 1 && !sq.eval(&hi).is_zero() {
                out.push((lo, hi));
                continue;
            }
            let mid = (&lo + &hi) / rat(2);
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn squarefree_part(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.divrem(&g).0
        }
    }

    /// Bisects a sign-changing bracket `[lo, hi]` until the width is at most
    /// `width`. Returns the final bracket; an exact root collapses it.
    pub fn bisect(
        &self,
        mut lo: BigRational,
        mut hi: BigRational,
        width: &BigRational,
    ) -> (BigRational, BigRational) {
        let mut slo = self.eval(&lo).signum();
        if slo.is_zero() {
            return (lo.clone(), lo);
        }
        if self.eval(&hi).is_zero() {
            return (hi.clone(), hi);
        }
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / rat(2);
            let sm = self.eval(&mid).signum();
            if sm.is_zero() {
                return (mid.clone(), mid);
            }
            if sm == slo {
                lo = mid;
                slo = sm;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    /// Irreducibility over `Q` for polynomials of degree at most 8
    /// (Kronecker's method on the primitive integer form).
    pub fn is_irreducible(&self) -> Result<bool> {
        let deg = self
            .degree()
            .ok_or_else(|| Error::precondition("zero polynomial"))?;
        if deg == 0 {
            return Ok(false);
        }
        if deg == 1 {
            return Ok(true);
        }
        if deg > 8 {
            return Err(Error::precondition(
                "irreducibility test supports degree <= 8",
            ));
        }
        let f = UPoly::from_bigints(&self.primitive_integer());
        for k in 1..=deg / 2 {
            if kronecker_has_factor(&f, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().unwrap_or(0);
    let mut ds = vec![];
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            ds.push(BigInt::from(i));
            if i * i != n {
                ds.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    ds
}

/// Searches for an integer factor of degree `1..=k` by interpolating through
/// divisors of `f` at `k + 1` integer points.
fn kronecker_has_factor(f: &UPoly, k: usize) -> Result<bool> {
    let mut points: Vec<BigRational> = vec![];
    let mut values: Vec<BigInt> = vec![];
    let mut a = 0i64;
    while points.len() < k + 1 {
        let x = rat(a);
        let v = f.eval(&x);
        if v.is_zero() {
            // integer root
            return Ok(true);
        }
        let vi = v.to_integer();
        if vi.abs().to_u64().is_none() {
            return Err(Error::ResourceCap(
                "polynomial values too large for Kronecker factor search".into(),
            ));
        }
        points.push(x);
        values.push(vi);
        a = if a <= 0 { -a + 1 } else { -a };
    }
    let divs: Vec<Vec<BigInt>> = values.iter().map(divisors).collect();
    let combos: u128 = divs
        .iter()
        .enumerate()
        .map(|(i, d)| d.len() as u128 * if i == 0 { 1 } else { 2 })
        .product();
    if combos > 5_000_000 {
        return Err(Error::ResourceCap(format!(
            "Kronecker search needs {combos} interpolations"
        )));
    }
    let mut idx = vec![0usize; k + 1];
    let mut signs = vec![false; k + 1];
    loop {
        let targets: Vec<BigRational> = (0..=k)
            .map(|i| {
                let d = divs[i][idx[i]].clone();
                BigRational::from_integer(if signs[i] { -d } else { d })
            })
            .collect();
        let g = lagrange(&points, &targets);
        if let Some(dg) = g.degree() {
            if dg >= 1 && g.coeffs().iter().all(|c| c.is_integer()) {
                let (_, r) = f.divrem(&g);
                if r.is_zero() {
                    return Ok(true);
                }
            }
        }
        // odometer over (divisor, sign); first sign fixed positive
        let mut pos = 0;
        loop {
            if pos > k {
                return Ok(false);
            }
            if pos > 0 && !signs[pos] {
                signs[pos] = true;
                break;
            }
            signs[pos] = false;
            idx[pos] += 1;
            if idx[pos] < divs[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn lagrange(xs: &[BigRational], ys: &[BigRational]) -> UPoly {
    let mut acc = UPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut term = UPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let lin = UPoly::new(vec![-xj.clone(), BigRational::one()]);
                term = term.mul(&lin).scale(&(xi - xj).recip());
            }
        }
        acc = acc.add(&term);
    }
    acc
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}*x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

//! Sparse multivariate polynomials with rational coefficients.
//!
//! Text form: a sum of monomials such as `3*z1^2*z2 - 1/2*z3 + 7`; variables
//! are `z1, ..., zr`.

use crate::error::{Error, Result};
use crate::interval::{rational_to_f64, RatInterval};
use crate::scalar::parse_rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolynomial {
    r: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl MultiPolynomial {
    pub fn zero(r: usize) -> Self {
        MultiPolynomial {
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(r: usize, c: BigRational) -> Self {
        Self::from_terms(r, [(vec![0; r], c)])
    }

    /// The coordinate function `z_{i+1}`.
    pub fn variable(r: usize, i: usize) -> Self {
        let mut e = vec![0; r];
        e[i] = 1;
        Self::from_terms(r, [(e, BigRational::one())])
    }

    pub fn from_terms(r: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = Self::zero(r);
        for (e, c) in terms {
            assert_eq!(e.len(), r, "exponent length must equal the variable count");
            p.add_term(e, c);
        }
        p
    }

    /// Integer coefficients, for tests and generators.
    pub fn from_int_terms(r: usize, terms: &[(Vec<u32>, i64)]) -> Self {
        Self::from_terms(r, terms.iter().map(|(e, c)| (e.clone(), rat(*c))))
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Total degree; 0 for constants and the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::from_terms(self.r, self.terms.iter().map(|(e, c)| (e.clone(), c * k)))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.r);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut p = Self::constant(self.r, BigRational::one());
        for _ in 0..k {
            p = p.mul(self);
        }
        p
    }

    /// `df/dz_{i+1}`.
    pub fn derivative(&self, i: usize) -> Self {
        Self::from_terms(
            self.r,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * rat(e[i] as i64))
            }),
        )
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.r).map(|i| self.derivative(i)).collect()
    }

    /// All partial derivatives of exactly order `k` (one per multiset of
    /// variables, nonzero ones only).
    pub fn partials_of_order(&self, k: u32) -> Vec<Self> {
        let mut level = vec![(self.clone(), 0usize)];
        for _ in 0..k {
            let mut next = vec![];
            for (p, start) in &level {
                for i in *start..self.r {
                    let q = p.derivative(i);
                    if !q.is_zero() {
                        next.push((q, i));
                    }
                }
            }
            level = next;
        }
        level.into_iter().map(|(p, _)| p).collect()
    }

    pub fn eval(&self, z: &[BigRational]) -> BigRational {
        assert_eq!(z.len(), self.r);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in z.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, z: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = rational_to_f64(c);
                for (x, &k) in z.iter().zip(e) {
                    t *= x.powi(k as i32);
                }
                t
            })
            .sum()
    }

    pub fn eval_interval(&self, z: &[RatInterval]) -> RatInterval {
        let mut acc = RatInterval::zero();
        for (e, c) in &self.terms {
            let mut t = RatInterval::point(c.clone());
            for (x, &k) in z.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&x.pow(k));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// `g(h) = f(c + h)`.
    pub fn taylor_shift(&self, c: &[BigRational]) -> Self {
        let mut out = Self::zero(self.r);
        for (e, coef) in &self.terms {
            // product over variables of (c_i + h_i)^{e_i}, binomially expanded
            let mut partial: Vec<(Vec<u32>, BigRational)> = vec![(vec![0; self.r], coef.clone())];
            for i in 0..self.r {
                let k = e[i];
                if k == 0 {
                    continue;
                }
                let mut next = vec![];
                let mut binom = BigInt::one();
                for j in 0..=k {
                    // term C(k, j) c_i^{k-j} h_i^j
                    let mut w = BigRational::from_integer(binom.clone());
                    for _ in 0..k - j {
                        w *= &c[i];
                    }
                    if !w.is_zero() {
                        for (pe, pc) in &partial {
                            let mut ne = pe.clone();
                            ne[i] += j;
                            next.push((ne, pc * &w));
                        }
                    }
                    binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
                }
                partial = next;
            }
            for (ne, nc) in partial {
                out.add_term(ne, nc);
            }
        }
        out
    }

    /// Enclosure of `f` over the box `|z_i - c_i| <= rho` from the Taylor
    /// expansion at `c`.
    pub fn enclose_box(&self, c: &[BigRational], rho: &BigRational) -> RatInterval {
        let g = self.taylor_shift(c);
        let mut mid = BigRational::zero();
        let mut rad = BigRational::zero();
        for (e, coef) in &g.terms {
            let deg: u32 = e.iter().sum();
            if deg == 0 {
                mid = coef.clone();
            } else {
                let mut t = coef.abs();
                for _ in 0..deg {
                    t *= rho;
                }
                rad += t;
            }
        }
        RatInterval::new(&mid - &rad, mid + rad)
    }

    pub fn parse(text: &str, r: Option<usize>) -> Result<Self> {
        parse_poly(text, r)
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (k, (e, c)) in ts.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts = vec![];
            let constant = e.iter().all(|&x| x == 0);
            if constant || !a.is_one() {
                parts.push(if a.is_integer() {
                    a.numer().to_string()
                } else {
                    format!("{}/{}", a.numer(), a.denom())
                });
            }
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => parts.push(format!("z{}", i + 1)),
                    _ => parts.push(format!("z{}^{}", i + 1, p)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

fn perr(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column: col + 1,
        message: msg.into(),
    }
}

fn parse_poly(text: &str, r: Option<usize>) -> Result<MultiPolynomial> {
    // split into signed terms at top-level '+'/'-' (not after '/' or '^')
    let bytes = text.as_bytes();
    let mut terms: Vec<(usize, bool, &str)> = vec![];
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    let mut seen_any = false;
    while i <= bytes.len() {
        let at_end = i == bytes.len();
        let c = if at_end { b'+' } else { bytes[i] };
        if c == b'+' || c == b'-' {
            let prev = text[..i].trim_end().bytes().last();
            let is_op = at_end || !matches!(prev, Some(b'/') | Some(b'^') | Some(b'*'));
            if is_op {
                let body = text[start..i].trim();
                if body.is_empty() {
                    if seen_any || at_end {
                        return Err(perr(i, "empty term"));
                    }
                } else {
                    let lead = start + (text[start..i].len() - text[start..i].trim_start().len());
                    terms.push((lead, neg, body));
                    seen_any = true;
                }
                neg = c == b'-';
                start = i + 1;
            }
        }
        i += 1;
    }
    let mut parsed = vec![];
    let mut maxvar = 0;
    for (off, neg, body) in terms {
        let mut coef = rat(if neg { -1 } else { 1 });
        let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
        let mut pos = off;
        for factor in body.split('*') {
            let f = factor.trim();
            let fo = pos + (factor.len() - factor.trim_start().len());
            pos += factor.len() + 1;
            if f.is_empty() {
                return Err(perr(fo, "empty factor"));
            }
            if let Some(v) = f.strip_prefix('z') {
                let (idx, pow) = match v.split_once('^') {
                    Some((a, b)) => (a, b),
                    None => (v, "1"),
                };
                let idx: usize = idx
                    .trim()
                    .parse()
                    .map_err(|_| perr(fo, format!("bad variable {f:?}")))?;
                if idx == 0 {
                    return Err(perr(fo, "variables are numbered from z1"));
                }
                let pow: u32 = pow
                    .trim()
                    .parse()
                    .map_err(|_| perr(fo, format!("bad exponent in {f:?}")))?;
                *exps.entry(idx - 1).or_default() += pow;
                maxvar = maxvar.max(idx);
            } else {
                coef *= parse_rational(f, fo).map_err(|(c, m)| perr(c, m))?;
            }
        }
        parsed.push((exps, coef));
    }
    if parsed.is_empty() {
        return Err(perr(0, "empty polynomial"));
    }
    let r = match r {
        Some(r) if r < maxvar => {
            return Err(Error::precondition(format!(
                "polynomial uses z{maxvar} but only {r} variables declared"
            )))
        }
        Some(r) => r,
        None => maxvar.max(1),
    };
    Ok(MultiPolynomial::from_terms(
        r,
        parsed.into_iter().map(|(ex, c)| {
            let mut e = vec![0; r];
            for (i, p) in ex {
                e[i] = p;
            }
            (e, c)
        }),
    ))
}

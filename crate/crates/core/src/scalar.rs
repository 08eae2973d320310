//! Exact scalars: rationals, quadratic surds `a + b*sqrt(D)` and elements of
//! a general number field `Q(theta)` given by a minimal polynomial and a real
//! root.
//!
//! Every scalar has a coefficient vector over `Q` in a fixed basis of its
//! field (`{1}`, `{1, sqrt(D)}` or the power basis `{1, theta, ...}`), which is
//! what exact rank and `Q`-independence computations work on.

use crate::error::{Error, Result};
use crate::interval::{rational_to_f64, RatInterval};
use crate::upoly::UPoly;
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// A real algebraic number field `Q(theta)`, `theta` a chosen real root of an
/// irreducible integer polynomial.
#[derive(Debug, Clone)]
pub struct NumberField {
    minpoly: UPoly,
    monic: UPoly,
    root_index: usize,
    root_lo: BigRational,
    root_hi: BigRational,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.monic == other.monic && self.root_index == other.root_index
    }
}

impl NumberField {
    /// `minpoly` lowest degree first. `root_index` picks among the real roots
    /// in increasing order; `None` takes the largest.
    pub fn new(minpoly: &UPoly, root_index: Option<usize>) -> Result<Arc<Self>> {
        let deg = minpoly
            .degree()
            .ok_or_else(|| Error::precondition("zero minimal polynomial"))?;
        if deg < 1 {
            return Err(Error::precondition("minimal polynomial must be nonconstant"));
        }
        if !minpoly.is_irreducible()? {
            return Err(Error::precondition(format!(
                "polynomial {minpoly} is reducible over Q"
            )));
        }
        let prim = UPoly::from_bigints(&minpoly.primitive_integer());
        let roots = prim.isolate_real_roots();
        if roots.is_empty() {
            return Err(Error::precondition(format!(
                "polynomial {minpoly} has no real root"
            )));
        }
        let idx = root_index.unwrap_or(roots.len() - 1);
        let (lo, hi) = roots
            .get(idx)
            .cloned()
            .ok_or_else(|| Error::precondition(format!("no real root with index {idx}")))?;
        Ok(Arc::new(NumberField {
            monic: prim.monic(),
            minpoly: prim,
            root_index: idx,
            root_lo: lo,
            root_hi: hi,
        }))
    }

    pub fn from_ints(minpoly: &[i64], root_index: Option<usize>) -> Result<Arc<Self>> {
        Self::new(&UPoly::from_ints(minpoly), root_index)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn minpoly(&self) -> &UPoly {
        &self.minpoly
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    /// Enclosure of `theta` of width at most `2^-bits`.
    pub fn root_enclosure(&self, bits: u32) -> RatInterval {
        let width = BigRational::new(BigInt::one(), BigInt::one() << bits);
        let (lo, hi) = self
            .minpoly
            .bisect(self.root_lo.clone(), self.root_hi.clone(), &width);
        RatInterval::new(lo, hi)
    }

    pub fn root_f64(&self) -> f64 {
        self.root_enclosure(64).mid_f64()
    }

    fn reduce(&self, p: &UPoly) -> Vec<BigRational> {
        let r = p.rem(&self.monic);
        (0..self.degree()).map(|i| r.coeff(i)).collect()
    }

    /// The element `theta^k`.
    pub fn power(self: &Arc<Self>, k: usize) -> ExactScalar {
        let coeffs = self.reduce(&UPoly::monomial(k));
        ExactScalar::from_coeffs(&FieldContext::Field(self.clone()), coeffs)
    }

    /// Element with the given power-basis coefficients.
    pub fn element(self: &Arc<Self>, coeffs: &[BigRational]) -> ExactScalar {
        let p = UPoly::new(coeffs.to_vec());
        ExactScalar::from_coeffs(&FieldContext::Field(self.clone()), self.reduce(&p))
    }
}

/// The smallest field a scalar (or a set of scalars) lives in.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldContext {
    Rational,
    Quadratic(BigInt),
    Field(Arc<NumberField>),
}

impl FieldContext {
    pub fn degree(&self) -> usize {
        match self {
            FieldContext::Rational => 1,
            FieldContext::Quadratic(_) => 2,
            FieldContext::Field(f) => f.degree(),
        }
    }

    pub fn join(&self, other: &FieldContext) -> Result<FieldContext> {
        use FieldContext::*;
        match (self, other) {
            (Rational, o) | (o, Rational) => Ok(o.clone()),
            (Quadratic(a), Quadratic(b)) if a == b => Ok(self.clone()),
            (Field(a), Field(b)) if a == b => Ok(self.clone()),
            _ => Err(Error::MixedFields(format!("{self} and {other}"))),
        }
    }

    pub fn join_all<'a>(xs: impl IntoIterator<Item = &'a ExactScalar>) -> Result<FieldContext> {
        xs.into_iter()
            .try_fold(FieldContext::Rational, |acc, x| acc.join(&x.context()))
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::Rational => write!(f, "Q"),
            FieldContext::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
            FieldContext::Field(k) => write!(f, "Q(root of {})", k.minpoly),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExactScalar {
    Rational(BigRational),
    /// `a + b*sqrt(d)`, `b != 0`, `d > 1` squarefree.
    Quadratic {
        a: BigRational,
        b: BigRational,
        d: BigInt,
    },
    /// Power-basis coefficients in `field`; at least one non-constant
    /// coefficient is nonzero.
    Algebraic {
        coeffs: Vec<BigRational>,
        field: Arc<NumberField>,
    },
}

fn squarefree_split(d: &BigInt) -> (BigInt, BigInt) {
    // d = s^2 * core
    let mut core = d.clone();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &(&p * &p) <= &core {
        let p2 = &p * &p;
        while (&core % &p2).is_zero() {
            core /= &p2;
            s *= &p;
        }
        p += 1;
    }
    (s, core)
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        ExactScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        ExactScalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `a + b*sqrt(d)`; normalizes square factors of `d` and `b = 0`.
    pub fn quadratic(a: BigRational, b: BigRational, d: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::precondition("radicand must be positive"));
        }
        let (s, core) = squarefree_split(&d);
        let b = b * BigRational::from_integer(s);
        if core.is_one() {
            return Ok(ExactScalar::Rational(a + b));
        }
        Ok(Self::from_coeffs(&FieldContext::Quadratic(core), vec![a, b]))
    }

    /// `sqrt(d)`
    pub fn sqrt(d: i64) -> Result<Self> {
        Self::quadratic(BigRational::zero(), BigRational::one(), BigInt::from(d))
    }

    pub fn context(&self) -> FieldContext {
        match self {
            ExactScalar::Rational(_) => FieldContext::Rational,
            ExactScalar::Quadratic { d, .. } => FieldContext::Quadratic(d.clone()),
            ExactScalar::Algebraic { field, .. } => FieldContext::Field(field.clone()),
        }
    }

    /// Coefficients in the basis of `ctx` (which must contain `self`).
    pub fn coeffs_in(&self, ctx: &FieldContext) -> Result<Vec<BigRational>> {
        let own = self.context();
        if own != FieldContext::Rational && &own != ctx {
            return Err(Error::MixedFields(format!("{own} is not {ctx}")));
        }
        let n = ctx.degree();
        let mut out = vec![BigRational::zero(); n];
        match self {
            ExactScalar::Rational(r) => out[0] = r.clone(),
            ExactScalar::Quadratic { a, b, .. } => {
                out[0] = a.clone();
                out[1] = b.clone();
            }
            ExactScalar::Algebraic { coeffs, .. } => {
                out[..coeffs.len()].clone_from_slice(coeffs);
            }
        }
        Ok(out)
    }

    pub fn from_coeffs(ctx: &FieldContext, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(ctx.degree(), BigRational::zero());
        if coeffs.iter().skip(1).all(|c| c.is_zero()) {
            return ExactScalar::Rational(coeffs.swap_remove(0));
        }
        match ctx {
            FieldContext::Rational => unreachable!(),
            FieldContext::Quadratic(d) => ExactScalar::Quadratic {
                a: coeffs[0].clone(),
                b: coeffs[1].clone(),
                d: d.clone(),
            },
            FieldContext::Field(f) => ExactScalar::Algebraic {
                coeffs,
                field: f.clone(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, ExactScalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactScalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, ExactScalar::Rational(r) if r.is_integer())
    }

    pub fn add(&self, o: &ExactScalar) -> Result<ExactScalar> {
        let ctx = self.context().join(&o.context())?;
        let a = self.coeffs_in(&ctx)?;
        let b = o.coeffs_in(&ctx)?;
        Ok(Self::from_coeffs(
            &ctx,
            a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        ))
    }

    pub fn neg(&self) -> ExactScalar {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r),
            ExactScalar::Quadratic { a, b, d } => ExactScalar::Quadratic {
                a: -a,
                b: -b,
                d: d.clone(),
            },
            ExactScalar::Algebraic { coeffs, field } => ExactScalar::Algebraic {
                coeffs: coeffs.iter().map(|c| -c).collect(),
                field: field.clone(),
            },
        }
    }

    pub fn sub(&self, o: &ExactScalar) -> Result<ExactScalar> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ExactScalar) -> Result<ExactScalar> {
        let ctx = self.context().join(&o.context())?;
        match &ctx {
            FieldContext::Rational => Ok(ExactScalar::Rational(
                self.as_rational().unwrap() * o.as_rational().unwrap(),
            )),
            FieldContext::Quadratic(d) => {
                let a = self.coeffs_in(&ctx)?;
                let b = o.coeffs_in(&ctx)?;
                let dd = BigRational::from_integer(d.clone());
                Ok(Self::from_coeffs(
                    &ctx,
                    vec![
                        &a[0] * &b[0] + &a[1] * &b[1] * dd,
                        &a[0] * &b[1] + &a[1] * &b[0],
                    ],
                ))
            }
            FieldContext::Field(f) => {
                let a = UPoly::new(self.coeffs_in(&ctx)?);
                let b = UPoly::new(o.coeffs_in(&ctx)?);
                Ok(Self::from_coeffs(&ctx, f.reduce(&a.mul(&b))))
            }
        }
    }

    pub fn mul_rational(&self, k: &BigRational) -> ExactScalar {
        self.mul(&ExactScalar::Rational(k.clone())).unwrap()
    }

    pub fn mul_int(&self, k: i64) -> ExactScalar {
        self.mul_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    pub fn inv(&self) -> Result<ExactScalar> {
        if self.is_zero() {
            return Err(Error::precondition("division by zero"));
        }
        match self {
            ExactScalar::Rational(r) => Ok(ExactScalar::Rational(r.recip())),
            ExactScalar::Quadratic { a, b, d } => {
                let dd = BigRational::from_integer(d.clone());
                let norm = a * a - b * b * dd;
                Ok(ExactScalar::Quadratic {
                    a: a / &norm,
                    b: -b / &norm,
                    d: d.clone(),
                })
            }
            ExactScalar::Algebraic { coeffs, field } => {
                let p = UPoly::new(coeffs.clone());
                let inv = p
                    .inverse_mod(&field.monic)
                    .expect("irreducible modulus makes every nonzero element invertible");
                Ok(Self::from_coeffs(
                    &FieldContext::Field(field.clone()),
                    field.reduce(&inv),
                ))
            }
        }
    }

    pub fn div(&self, o: &ExactScalar) -> Result<ExactScalar> {
        self.mul(&o.inv()?)
    }

    /// Enclosure of the real value, width at most `2^-bits`.
    pub fn enclose(&self, bits: u32) -> RatInterval {
        match self {
            ExactScalar::Rational(r) => RatInterval::point(r.clone()),
            ExactScalar::Quadratic { a, b, d } => {
                let extra = (b.abs().ceil().to_integer().bits() as u32) + 1;
                let k = bits + extra;
                let s = (d << (2 * k as usize)).sqrt();
                let den = BigInt::one() << k as usize;
                let root = RatInterval::new(
                    BigRational::new(s.clone(), den.clone()),
                    BigRational::new(s + 1, den),
                );
                root.scale(b).add(&RatInterval::point(a.clone()))
            }
            ExactScalar::Algebraic { coeffs, field } => {
                let p = UPoly::new(coeffs.clone());
                let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
                let mut k = bits + 8;
                loop {
                    let enc = p.eval_interval(&field.root_enclosure(k));
                    if enc.width() <= target {
                        return enc;
                    }
                    k += bits / 2 + 16;
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactScalar::Rational(r) => rational_to_f64(r),
            _ => self.enclose(64).mid_f64(),
        }
    }

    /// Sign of the real value (refines until the enclosure excludes zero).
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let mut bits = 32;
        loop {
            let e = self.enclose(bits);
            if e.lo.is_positive() {
                return 1;
            }
            if e.hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    pub fn abs(&self) -> ExactScalar {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Compares real values exactly.
    pub fn cmp_value(&self, o: &ExactScalar) -> Result<std::cmp::Ordering> {
        Ok(self.sub(o)?.signum().cmp(&0))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical text form: `p/q`, `p`, or `a+b*sqrt(D)` with `a`, `b` in
    /// `p/q` form. Algebraic elements print as a polynomial in `t` with the
    /// minimal polynomial attached; that form is informational only.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactScalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            ExactScalar::Quadratic { a, b, d } => {
                write!(f, "{}+{}*sqrt({})", fmt_rational(a), fmt_rational(b), d)
            }
            ExactScalar::Algebraic { coeffs, field } => {
                let p = UPoly::new(coeffs.clone());
                write!(
                    f,
                    "alg[{}; {}; root {}]",
                    p.to_string().replace('x', "t"),
                    field.minpoly,
                    field.root_index
                )
            }
        }
    }
}

/// Error offset (0-based column) and message.
pub type ScalarParseError = (usize, String);

fn parse_int(s: &str, offset: usize) -> std::result::Result<BigInt, ScalarParseError> {
    let t = s.trim();
    let body = t.strip_prefix(['-', '+']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err((offset, format!("expected integer, found {s:?}")));
    }
    BigInt::from_str(t).map_err(|e| (offset, e.to_string()))
}

/// `p/q` or `p`.
pub fn parse_rational(s: &str, offset: usize) -> std::result::Result<BigRational, ScalarParseError> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p, offset)?;
            let q = parse_int(q, offset + s.find('/').unwrap() + 1)?;
            if q.is_zero() {
                return Err((offset, "zero denominator".into()));
            }
            if q.sign() == Sign::Minus {
                return Err((offset, "denominator must be positive".into()));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(parse_int(s, offset)?)),
    }
}

impl ExactScalar {
    /// Parses the canonical text form; errors carry a 0-based column.
    pub fn parse(s: &str) -> std::result::Result<ExactScalar, ScalarParseError> {
        let t = s.trim();
        let lead = s.len() - s.trim_start().len();
        if let Some(pos) = t.find("*sqrt(") {
            // split "a+b" at the last '+' before the '*sqrt(' that is not a sign
            let head = &t[..pos];
            let plus = head
                .char_indices()
                .rev()
                .find(|&(i, c)| c == '+' && i > 0 && !head[..i].ends_with(['/', '+', '-']))
                .map(|(i, _)| i)
                .ok_or((lead, "expected RATIONAL+RATIONAL*sqrt(D)".to_string()))?;
            let a = parse_rational(&head[..plus], lead)?;
            let b = parse_rational(&head[plus + 1..], lead + plus + 1)?;
            let rest = &t[pos + 6..];
            let close = rest
                .strip_suffix(')')
                .ok_or((lead + t.len(), "missing ')'".to_string()))?;
            let d = parse_int(close, lead + pos + 6)?;
            if !d.is_positive() {
                return Err((lead + pos + 6, "radicand must be positive".into()));
            }
            return ExactScalar::quadratic(a, b, d).map_err(|e| (lead, e.to_string()));
        }
        Ok(ExactScalar::Rational(parse_rational(t, lead)?))
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExactScalar::parse(s).map_err(|(column, message)| Error::Parse {
            line: 1,
            column: column + 1,
            message,
        })
    }
}

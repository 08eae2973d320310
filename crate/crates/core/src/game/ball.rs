use crate::error::{Error, Result};
use crate::interval::{f64_to_rational, rational_to_f64};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ball {
    #[serde(serialize_with = "crate::ser::rat_vec")]
    pub center: Vec<BigRational>,
    #[serde(serialize_with = "crate::ser::rat")]
    pub radius: BigRational,
}

impl Ball {
    pub fn new(center: Vec<BigRational>, radius: BigRational) -> Result<Self> {
        if !radius.is_positive() {
            return Err(Error::precondition("ball radius must be positive"));
        }
        if center.is_empty() {
            return Err(Error::precondition("ball needs at least one coordinate"));
        }
        Ok(Ball { center, radius })
    }

    /// Ball centered at the origin.
    pub fn origin(r: usize, radius: BigRational) -> Result<Self> {
        Self::new(vec![BigRational::zero(); r], radius)
    }

    /// The default start: unit ball at the origin.
    pub fn unit(r: usize) -> Self {
        Self::origin(r.max(1), BigRational::one()).expect("positive radius")
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center_f64(&self) -> Vec<f64> {
        self.center.iter().map(rational_to_f64).collect()
    }

    /// Exact test of `other ⊆ self`.
    pub fn contains_ball(&self, other: &Ball) -> bool {
        if other.radius > self.radius || other.dim() != self.dim() {
            return false;
        }
        let gap = &self.radius - &other.radius;
        dist2(&self.center, &other.center) <= &gap * &gap
    }

    pub fn contains_point(&self, p: &[BigRational]) -> bool {
        dist2(&self.center, p) <= &self.radius * &self.radius
    }
}

pub(crate) fn dist2(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let t = x - y;
            &t * &t
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SchmidtConfig {
    pub r: usize,
    #[serde(serialize_with = "crate::ser::rat")]
    pub alpha: BigRational,
    #[serde(serialize_with = "crate::ser::rat")]
    pub beta: BigRational,
    /// `1 + alpha beta - 2 alpha`: the escaper's net progress per round,
    /// relative to the current radius, when it plays the `alpha` balls.
    #[serde(serialize_with = "crate::ser::rat")]
    pub gamma: BigRational,
}

impl SchmidtConfig {
    pub fn new(r: usize, alpha: BigRational, beta: BigRational) -> Result<Self> {
        let unit = |x: &BigRational| x.is_positive() && x < &BigRational::one();
        if r < 1 {
            return Err(Error::precondition("game dimension must be at least 1"));
        }
        if !unit(&alpha) || !unit(&beta) {
            return Err(Error::precondition("alpha and beta must lie in (0, 1)"));
        }
        let gamma = BigRational::one() + &alpha * &beta - rat(2) * &alpha;
        Ok(SchmidtConfig {
            r,
            alpha,
            beta,
            gamma,
        })
    }

    pub fn quarter(r: usize) -> Self {
        Self::new(r, ratio(1, 4), ratio(1, 4)).expect("valid constants")
    }

    /// Smallest `t` with `(alpha beta)^t < gamma / 2`.
    pub fn halfspace_rounds(&self) -> Result<usize> {
        if !self.gamma.is_positive() {
            return Err(Error::precondition(format!(
                "escaping needs gamma > 0, got {}",
                self.gamma
            )));
        }
        let ab = &self.alpha * &self.beta;
        let half = &self.gamma / rat(2);
        let mut p = ab.clone();
        let mut t = 1;
        while p >= half {
            p *= &ab;
            t += 1;
        }
        Ok(t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HawConfig {
    pub r: usize,
    #[serde(serialize_with = "crate::ser::rat")]
    pub beta: BigRational,
}

impl HawConfig {
    pub fn new(r: usize, beta: BigRational) -> Result<Self> {
        if r < 1 {
            return Err(Error::precondition("game dimension must be at least 1"));
        }
        if !beta.is_positive() || beta >= ratio(1, 3) {
            return Err(Error::precondition("beta must lie in (0, 1/3)"));
        }
        Ok(HawConfig { r, beta })
    }

    pub fn quarter(r: usize) -> Self {
        Self::new(r, ratio(1, 4)).expect("valid constant")
    }
}

/// Closed `epsilon`-neighbourhood of the hyperplane `(u, z - a) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneNeighborhood {
    #[serde(serialize_with = "crate::ser::rat_vec")]
    pub normal: Vec<BigRational>,
    #[serde(serialize_with = "crate::ser::rat_vec")]
    pub anchor: Vec<BigRational>,
    #[serde(serialize_with = "crate::ser::rat")]
    pub epsilon: BigRational,
}

impl HyperplaneNeighborhood {
    /// Exact test that `ball` misses the neighbourhood; the normal need not
    /// have length 1.
    pub fn disjoint_from(&self, ball: &Ball) -> bool {
        let n2 = dot(&self.normal, &self.normal);
        if n2.is_zero() {
            return false;
        }
        let diff: Vec<BigRational> = ball.center.iter().zip(&self.anchor).map(|(c, a)| c - a).collect();
        let s = dot(&self.normal, &diff);
        let reach = &self.epsilon + &ball.radius;
        &s * &s > &reach * &reach * n2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Escaper,
    Opponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<String>,
}

impl Verdict {
    fn from(violations: Vec<String>) -> Self {
        Verdict {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// In a Schmidt game the escaper's balls have ratio `alpha` and the
/// opponent's `beta`.
pub fn validate_schmidt_move(prev: &Ball, next: &Ball, role: Role, config: &SchmidtConfig) -> Verdict {
    let mut v = vec![];
    if prev.dim() != config.r || next.dim() != config.r {
        v.push(format!("dimension differs from r = {}", config.r));
        return Verdict::from(v);
    }
    let k = match role {
        Role::Escaper => &config.alpha,
        Role::Opponent => &config.beta,
    };
    if next.radius != &prev.radius * k {
        v.push(format!(
            "radius ratio {} differs from {}",
            &next.radius / &prev.radius,
            k
        ));
    }
    if !prev.contains_ball(next) {
        v.push("ball not contained in the previous ball".into());
    }
    Verdict::from(v)
}

pub fn validate_haw_move(
    prev: &Ball,
    removed: &HyperplaneNeighborhood,
    next: &Ball,
    config: &HawConfig,
) -> Verdict {
    let mut v = vec![];
    if prev.dim() != config.r
        || next.dim() != config.r
        || removed.normal.len() != config.r
        || removed.anchor.len() != config.r
    {
        v.push(format!("dimension differs from r = {}", config.r));
        return Verdict::from(v);
    }
    let cap = &config.beta * &prev.radius;
    if !removed.epsilon.is_positive() {
        v.push("thickness must be positive".into());
    }
    if removed.epsilon >= cap {
        v.push(format!("thickness {} not below beta * radius = {}", removed.epsilon, cap));
    }
    if next.radius < cap {
        v.push(format!("radius {} below beta * radius = {}", next.radius, cap));
    }
    if !prev.contains_ball(next) {
        v.push("ball not contained in the previous ball".into());
    }
    if !removed.disjoint_from(next) {
        v.push("ball meets the removed neighbourhood".into());
    }
    Verdict::from(v)
}

/// Exact rational unit vector close to the direction of `v`, by inverse
/// stereographic projection of a rational point.
pub fn exact_unit(v: &[f64]) -> Result<Vec<BigRational>> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm.is_finite() && norm > 0.0) {
        return Err(Error::precondition("direction must be finite and nonzero"));
    }
    let r = v.len();
    if r == 1 {
        return Ok(vec![rat(v[0].signum() as i64)]);
    }
    let w: Vec<f64> = v.iter().map(|x| x / norm).collect();
    // project from the pole farther from w so that |p| <= 1
    let last = w[r - 1];
    let south = last > 0.0;
    let denom = if south { 1.0 + last } else { 1.0 - last };
    let grid = BigRational::from_integer(BigInt::one() << 52u32);
    let p: Vec<BigRational> = w[..r - 1]
        .iter()
        .map(|x| {
            let q = f64_to_rational(x / denom) * &grid;
            BigRational::from_integer(q.round().to_integer()) / &grid
        })
        .collect();
    let s = p.iter().fold(BigRational::zero(), |acc, x| acc + x * x);
    let one = BigRational::one();
    let den = &one + &s;
    let mut u: Vec<BigRational> = p.iter().map(|x| rat(2) * x / &den).collect();
    u.push(if south { (&one - &s) / &den } else { (&s - &one) / &den });
    Ok(u)
}

/// Rounds each coordinate to the dyadic grid `2^-bits`.
pub(crate) fn snap(v: &[BigRational], bits: u64) -> Vec<BigRational> {
    let scale = BigInt::one() << bits;
    v.iter()
        .map(|x| {
            let n = x.numer() * &scale;
            let (q, rem) = n.div_mod_floor(x.denom());
            let q = if rem * 2 >= *x.denom() { q + 1 } else { q };
            BigRational::new(q, scale.clone())
        })
        .collect()
}

/// Grid fine enough that snapping moves a point by much less than
/// `radius * 2^-extra`.
pub(crate) fn grid_bits(radius: &BigRational, extra: u64) -> u64 {
    let inv_bits = radius.denom().bits().saturating_sub(radius.numer().bits());
    inv_bits + extra + 8
}

/// `center + s * dir` with `s` rational and `dir` exact, snapped to a grid
/// well below `radius`.
pub(crate) fn offset_point(
    center: &[BigRational],
    dir: &[BigRational],
    s: &BigRational,
    radius: &BigRational,
) -> Vec<BigRational> {
    let raw: Vec<BigRational> = center.iter().zip(dir).map(|(c, d)| c + s * d).collect();
    snap(&raw, grid_bits(radius, 60))
}

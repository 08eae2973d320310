use super::ball::{dot, exact_unit, offset_point, ratio, Ball, HyperplaneNeighborhood};
use super::local::{locate, norm, random_unit};
use crate::error::{Error, Result};
use crate::interval::f64_to_rational;
use crate::multipoly::MultiPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::str::FromStr;

/// Keeps every placement strictly inside the containment limit.
fn shrink() -> BigRational {
    BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << 30u32)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OpponentKind {
    /// Uniformly random direction and offset, seeded.
    RandomLegal,
    /// Keeps the center (HAW: the smallest shift that clears the slab).
    CenterCopy,
    /// Moves toward the nearest located point of the manifold being escaped.
    ManifoldHugging,
    /// Always moves as far as allowed in a fixed direction.
    Retreat(Vec<f64>),
}

impl FromStr for OpponentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" | "random-legal" => Ok(OpponentKind::RandomLegal),
            "center" | "center-copy" => Ok(OpponentKind::CenterCopy),
            "hug" | "manifold-hugging" => Ok(OpponentKind::ManifoldHugging),
            _ => {
                if let Some(rest) = s.strip_prefix("retreat:") {
                    let v = rest
                        .split(',')
                        .map(|t| t.trim().parse::<f64>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::precondition(format!("bad retreat direction '{rest}'")))?;
                    return Ok(OpponentKind::Retreat(v));
                }
                Err(Error::precondition(format!(
                    "unknown opponent '{s}' (random, center, hug, retreat:x,y,...)"
                )))
            }
        }
    }
}

pub struct Opponent {
    pub kind: OpponentKind,
    rng: ChaCha8Rng,
}

impl Opponent {
    pub fn new(kind: OpponentKind, seed: u64) -> Self {
        Opponent {
            kind,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Direction (f64) and fraction of the maximal offset for the next center.
    fn plan(&mut self, ball: &Ball, target: Option<&MultiPolynomial>, reach: &BigRational) -> (Vec<f64>, f64) {
        let r = ball.dim();
        match &self.kind {
            OpponentKind::RandomLegal => (random_unit(r, &mut self.rng), self.rng.gen_range(0.0..=1.0)),
            OpponentKind::CenterCopy => (vec![1.0; r], 0.0),
            OpponentKind::Retreat(v) => {
                let mut d = v.clone();
                d.resize(r, 0.0);
                (d, 1.0)
            }
            OpponentKind::ManifoldHugging => {
                let hit = target.and_then(|f| locate(f, ball, &mut self.rng));
                match hit {
                    Some((w, _)) if norm(&w) > 1e-12 => {
                        // w is in units of the ball radius
                        let want = norm(&w) * crate::interval::rational_to_f64(&ball.radius);
                        let lim = crate::interval::rational_to_f64(reach);
                        let frac = if lim > 0.0 { (want / lim).min(1.0) } else { 0.0 };
                        (w, frac)
                    }
                    _ => (vec![1.0; r], 0.0),
                }
            }
        }
    }

    fn candidate(&mut self, ball: &Ball, radius: &BigRational, target: Option<&MultiPolynomial>) -> Result<Ball> {
        let reach = &ball.radius - radius;
        let (dir, frac) = self.plan(ball, target, &reach);
        if frac <= 0.0 || norm(&dir) == 0.0 {
            return Ball::new(ball.center.clone(), radius.clone());
        }
        let u = exact_unit(&dir)?;
        let s = &reach * f64_to_rational(frac.clamp(0.0, 1.0)) * shrink();
        let c = offset_point(&ball.center, &u, &s, &ball.radius);
        let next = Ball::new(c, radius.clone())?;
        if ball.contains_ball(&next) {
            Ok(next)
        } else {
            Ball::new(ball.center.clone(), radius.clone())
        }
    }

    pub fn schmidt_reply(
        &mut self,
        ball: &Ball,
        beta: &BigRational,
        target: Option<&MultiPolynomial>,
    ) -> Result<Ball> {
        let radius = &ball.radius * beta;
        self.candidate(ball, &radius, target)
    }

    pub fn haw_reply(
        &mut self,
        ball: &Ball,
        removed: &HyperplaneNeighborhood,
        beta: &BigRational,
        target: Option<&MultiPolynomial>,
    ) -> Result<Ball> {
        let min = &ball.radius * beta;
        let radius = match self.kind {
            OpponentKind::RandomLegal => {
                let k = self.rng.gen_range(0..=16);
                let top = &ball.radius * ratio(1, 2);
                &min + (top - &min) * ratio(k, 16)
            }
            _ => min.clone(),
        };
        let tries = if self.kind == OpponentKind::RandomLegal { 8 } else { 1 };
        for _ in 0..tries {
            let c = self.candidate(ball, &radius, target)?;
            if removed.disjoint_from(&c) {
                return Ok(c);
            }
        }
        clear_slab(ball, removed, &min)
    }
}

/// Smallest shift along the slab normal that clears it, falling back to the
/// farthest legal shift.
fn clear_slab(ball: &Ball, removed: &HyperplaneNeighborhood, radius: &BigRational) -> Result<Ball> {
    let n2 = dot(&removed.normal, &removed.normal);
    if n2 != BigRational::one() {
        return Err(Error::precondition("slab normal must be an exact unit vector"));
    }
    let diff: Vec<BigRational> = ball.center.iter().zip(&removed.anchor).map(|(c, a)| c - a).collect();
    let s = dot(&removed.normal, &diff);
    let sign = if s.is_negative() { -BigRational::one() } else { BigRational::one() };
    let reach = (&ball.radius - radius) * shrink();
    let need = (&removed.epsilon + radius) - s.abs();
    // tiny extra so that the snapped center still clears the slab
    let margin = &ball.radius * BigRational::new(BigInt::one(), BigInt::one() << 40u32);
    let shift = if need.is_negative() { BigRational::zero() } else { need + margin };
    let shift = if shift > reach { reach } else { shift };
    let u = removed.normal.clone();
    let c = offset_point(&ball.center, &u, &(sign * shift), &ball.radius);
    Ball::new(c, radius.clone())
}

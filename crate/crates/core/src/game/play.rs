use super::ball::{
    dot, exact_unit, offset_point, rat, ratio, snap, grid_bits, validate_haw_move,
    validate_schmidt_move, Ball, HawConfig, HyperplaneNeighborhood, Role, SchmidtConfig, Verdict,
};
use super::local::locate;
use super::opponent::Opponent;
use super::range::{polynomial_range, RangeCertificate};
use crate::error::{Error, Result};
use crate::interval::{f64_to_rational, rational_to_f64};
use crate::multipoly::MultiPolynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_MAX_ROUNDS: usize = 20_000;
/// Rounds of waiting allowed while trying to certify `|f| > 0` after an escape.
const CERTIFY_WAIT_CAP: usize = 400;
const DELTA_BISECTIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GameConfig {
    Schmidt(SchmidtConfig),
    Haw(HawConfig),
}

impl GameConfig {
    pub fn r(&self) -> usize {
        match self {
            GameConfig::Schmidt(c) => c.r,
            GameConfig::Haw(c) => c.r,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameMove {
    pub round: usize,
    pub mover: Role,
    /// What the escaper was doing: `wait`, `halfspace`, `remove`.
    pub phase: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ball: Option<Ball>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub removed: Option<HyperplaneNeighborhood>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "crate::ser::display")]
    pub polynomial: MultiPolynomial,
    /// `|f| > epsilon` on every later ball of the game.
    #[serde(serialize_with = "crate::ser::rat")]
    pub epsilon: BigRational,
    /// Range of `f` on the ball where the certificate was issued.
    pub range: RangeCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameTranscript {
    pub config: GameConfig,
    pub start: Ball,
    pub moves: Vec<GameMove>,
    pub final_ball: Ball,
    pub certificates: Vec<Certificate>,
    pub rounds: usize,
}

impl GameTranscript {
    /// Replays every move against the rules.
    pub fn revalidate(&self) -> Verdict {
        let mut violations = vec![];
        let mut prev = self.start.clone();
        let mut pending: Option<&HyperplaneNeighborhood> = None;
        for (k, mv) in self.moves.iter().enumerate() {
            match (&self.config, mv.mover) {
                (GameConfig::Schmidt(c), role) => {
                    let Some(b) = &mv.ball else {
                        violations.push(format!("move {k}: missing ball"));
                        continue;
                    };
                    let v = validate_schmidt_move(&prev, b, role, c);
                    violations.extend(v.violations.into_iter().map(|s| format!("move {k}: {s}")));
                    prev = b.clone();
                }
                (GameConfig::Haw(_), Role::Escaper) => match &mv.removed {
                    Some(h) => pending = Some(h),
                    None => violations.push(format!("move {k}: missing neighbourhood")),
                },
                (GameConfig::Haw(c), Role::Opponent) => {
                    let (Some(b), Some(h)) = (&mv.ball, pending.take()) else {
                        violations.push(format!("move {k}: ball without a preceding removal"));
                        continue;
                    };
                    let v = validate_haw_move(&prev, h, b, c);
                    violations.extend(v.violations.into_iter().map(|s| format!("move {k}: {s}")));
                    prev = b.clone();
                }
            }
        }
        if prev != self.final_ball {
            violations.push("final ball differs from the last move".into());
        }
        Verdict {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// Re-evaluates every certificate on the final ball.
    pub fn recheck_certificates(&self) -> bool {
        self.certificates
            .iter()
            .all(|c| polynomial_range(&c.polynomial, &self.final_ball).min_abs > c.epsilon)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfspaceReport {
    pub t: usize,
    #[serde(serialize_with = "crate::ser::rat_vec")]
    pub direction: Vec<BigRational>,
    /// `gamma * rho / 2` for the radius `rho` of the ball the move started from.
    #[serde(serialize_with = "crate::ser::rat")]
    pub threshold: BigRational,
    /// Minimum of `(x - o, u)` over the final ball.
    #[serde(serialize_with = "crate::ser::rat")]
    pub achieved: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EscapeOutcome {
    pub final_ball: Ball,
    #[serde(serialize_with = "crate::ser::rat")]
    pub epsilon: BigRational,
    pub transcript: GameTranscript,
    pub rounds: usize,
}

/// A game in progress; the escaper's strategies act on it one after another,
/// so certificates from earlier escapes stay valid on later (nested) balls.
pub struct Game {
    config: GameConfig,
    ball: Ball,
    transcript: GameTranscript,
    opponent: Opponent,
    rng: ChaCha8Rng,
    target: Option<MultiPolynomial>,
    max_rounds: usize,
}

impl Game {
    pub fn new(config: GameConfig, opponent: Opponent, seed: u64, start: Ball) -> Result<Self> {
        if start.dim() != config.r() {
            return Err(Error::precondition(format!(
                "start ball has dimension {}, game has r = {}",
                start.dim(),
                config.r()
            )));
        }
        Ok(Game {
            transcript: GameTranscript {
                config: config.clone(),
                start: start.clone(),
                moves: vec![],
                final_ball: start.clone(),
                certificates: vec![],
                rounds: 0,
            },
            config,
            ball: start,
            opponent,
            rng: ChaCha8Rng::seed_from_u64(seed),
            target: None,
            max_rounds: DEFAULT_MAX_ROUNDS,
        })
    }

    pub fn with_max_rounds(mut self, n: usize) -> Self {
        self.max_rounds = n;
        self
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn rounds(&self) -> usize {
        self.transcript.rounds
    }

    pub fn transcript(&self) -> &GameTranscript {
        &self.transcript
    }

    pub fn into_transcript(self) -> GameTranscript {
        self.transcript
    }

    fn tick(&mut self) -> Result<usize> {
        if self.transcript.rounds >= self.max_rounds {
            return Err(Error::ResourceCap(format!(
                "game exceeded {} rounds",
                self.max_rounds
            )));
        }
        self.transcript.rounds += 1;
        Ok(self.transcript.rounds)
    }

    fn record(&mut self, round: usize, mover: Role, phase: &str, ball: Option<Ball>, removed: Option<HyperplaneNeighborhood>, verdict: Verdict) {
        self.transcript.moves.push(GameMove {
            round,
            mover,
            phase: phase.to_string(),
            ball,
            removed,
            verdict,
        });
    }

    fn schmidt_round(&mut self, cfg: &SchmidtConfig, mine: Ball, phase: &str) -> Result<()> {
        let round = self.tick()?;
        let v = validate_schmidt_move(&self.ball, &mine, Role::Escaper, cfg);
        if !v.ok {
            return Err(Error::GameAborted(format!(
                "escaper move rejected: {}",
                v.violations.join("; ")
            )));
        }
        self.record(round, Role::Escaper, phase, Some(mine.clone()), None, v);
        let reply = self.opponent.schmidt_reply(&mine, &cfg.beta, self.target.as_ref())?;
        let v = validate_schmidt_move(&mine, &reply, Role::Opponent, cfg);
        let ok = v.ok;
        let why = v.violations.join("; ");
        self.record(round, Role::Opponent, phase, Some(reply.clone()), None, v);
        if !ok {
            return Err(Error::OpponentForfeit(why));
        }
        self.ball = reply;
        self.transcript.final_ball = self.ball.clone();
        Ok(())
    }

    fn haw_round(&mut self, cfg: &HawConfig, slab: HyperplaneNeighborhood, phase: &str) -> Result<()> {
        let round = self.tick()?;
        if !(slab.epsilon.is_positive() && slab.epsilon < &cfg.beta * &self.ball.radius) {
            return Err(Error::GameAborted("escaper slab thickness out of range".into()));
        }
        self.record(round, Role::Escaper, phase, None, Some(slab.clone()), Verdict { ok: true, violations: vec![] });
        let reply = self.opponent.haw_reply(&self.ball, &slab, &cfg.beta, self.target.as_ref())?;
        let v = validate_haw_move(&self.ball, &slab, &reply, cfg);
        let ok = v.ok;
        let why = v.violations.join("; ");
        self.record(round, Role::Opponent, phase, Some(reply.clone()), None, v);
        if !ok {
            return Err(Error::OpponentForfeit(why));
        }
        self.ball = reply;
        self.transcript.final_ball = self.ball.clone();
        Ok(())
    }

    /// One round that only shrinks the ball: a concentric `alpha` ball
    /// (Schmidt) or a slab through the center (HAW), which forces the
    /// opponent's radius below half the current one.
    pub fn wait(&mut self) -> Result<()> {
        match self.config.clone() {
            GameConfig::Schmidt(c) => {
                let mine = Ball::new(self.ball.center.clone(), &self.ball.radius * &c.alpha)?;
                self.schmidt_round(&c, mine, "wait")
            }
            GameConfig::Haw(c) => {
                let mut normal = vec![BigRational::zero(); c.r];
                normal[0] = BigRational::one();
                let slab = HyperplaneNeighborhood {
                    normal,
                    anchor: self.ball.center.clone(),
                    epsilon: &c.beta * &self.ball.radius / rat(2),
                };
                self.haw_round(&c, slab, "wait")
            }
        }
    }

    /// Waits until the radius is at most `limit`, then checks that it landed in
    /// the window `(k * limit, limit]` with `k = alpha beta` (Schmidt) or `beta`
    /// (HAW).
    fn wait_until(&mut self, limit: &BigRational) -> Result<()> {
        let lower = match &self.config {
            GameConfig::Schmidt(c) => limit * &c.alpha * &c.beta,
            GameConfig::Haw(c) => limit * &c.beta,
        };
        let entered_above = self.ball.radius > lower;
        while &self.ball.radius > limit {
            self.wait()?;
        }
        if entered_above && self.ball.radius <= lower {
            return Err(Error::GameAborted("radius window missed".into()));
        }
        Ok(())
    }

    /// Schmidt's half-space move: `t` rounds placing the escaper's ball as far
    /// as possible along `u`; afterwards every point `x` of the current ball
    /// has `(x - o, u) > gamma rho / 2`, checked exactly.
    pub fn escape_halfspace(&mut self, u: &[BigRational]) -> Result<HalfspaceReport> {
        let GameConfig::Schmidt(cfg) = self.config.clone() else {
            return Err(Error::precondition("the half-space move belongs to the Schmidt game"));
        };
        if u.len() != cfg.r || dot(u, u) != BigRational::one() {
            return Err(Error::precondition("direction must be an exact unit vector of length r"));
        }
        let t = cfg.halfspace_rounds()?;
        let o = self.ball.center.clone();
        let threshold = &cfg.gamma * &self.ball.radius / rat(2);
        let inside = BigRational::one() - BigRational::new(BigInt::one(), BigInt::one() << 40u32);
        for _ in 0..t {
            let radius = &self.ball.radius * &cfg.alpha;
            let s = (&self.ball.radius - &radius) * &inside;
            let c = offset_point(&self.ball.center, u, &s, &self.ball.radius);
            let mut mine = Ball::new(c, radius.clone())?;
            if !self.ball.contains_ball(&mine) {
                mine = Ball::new(self.ball.center.clone(), radius)?;
            }
            self.schmidt_round(&cfg, mine, "halfspace")?;
        }
        let diff: Vec<BigRational> = self.ball.center.iter().zip(&o).map(|(a, b)| a - b).collect();
        let achieved = dot(&diff, u) - &self.ball.radius;
        if achieved <= threshold {
            return Err(Error::GameAborted(format!(
                "half-space guarantee failed: {} <= {}",
                rational_to_f64(&achieved),
                rational_to_f64(&threshold)
            )));
        }
        Ok(HalfspaceReport {
            t,
            direction: u.to_vec(),
            threshold,
            achieved,
        })
    }

    /// Plays until `|f| > epsilon` is certified on every later ball and
    /// records the certificate.
    pub fn escape(&mut self, f: &MultiPolynomial) -> Result<Certificate> {
        if f.is_zero() {
            return Err(Error::precondition("cannot escape the zero polynomial"));
        }
        if f.nvars() != self.config.r() {
            return Err(Error::precondition(format!(
                "polynomial has {} variables, game has r = {}",
                f.nvars(),
                self.config.r()
            )));
        }
        let epsilon = self.escape_rec(f)?;
        let range = polynomial_range(f, &self.ball);
        if range.min_abs <= epsilon {
            return Err(Error::GameAborted("certificate does not re-verify".into()));
        }
        let cert = Certificate {
            polynomial: f.clone(),
            epsilon,
            range,
        };
        self.transcript.certificates.push(cert.clone());
        Ok(cert)
    }

    fn certified(&self, f: &MultiPolynomial) -> Option<BigRational> {
        let rc = polynomial_range(f, &self.ball);
        rc.certifies_nonzero().then(|| rc.min_abs / rat(2))
    }

    fn certify_by_waiting(&mut self, f: &MultiPolynomial) -> Result<BigRational> {
        for _ in 0..CERTIFY_WAIT_CAP {
            if let Some(e) = self.certified(f) {
                return Ok(e);
            }
            self.wait()?;
        }
        self.certified(f).ok_or_else(|| {
            Error::GameAborted(format!(
                "could not certify |f| > 0 within {CERTIFY_WAIT_CAP} waiting rounds"
            ))
        })
    }

    fn escape_rec(&mut self, f: &MultiPolynomial) -> Result<BigRational> {
        self.target = Some(f.clone());
        if let Some(e) = self.certified(f) {
            return Ok(e);
        }
        let s = f.degree();
        if s <= 1 {
            return self.escape_linear(f);
        }
        let r = self.config.r();
        let mut eps_prev: Option<BigRational> = None;
        for i in 0..r {
            let p = f.derivative(i);
            if p.is_zero() {
                continue;
            }
            let e = self.escape_rec(&p)?;
            eps_prev = Some(match eps_prev {
                Some(x) if x < e => x,
                _ => e,
            });
        }
        self.target = Some(f.clone());
        if let Some(e) = self.certified(f) {
            return Ok(e);
        }
        let eps_prev = eps_prev.expect("a nonconstant polynomial has a nonzero partial");
        let mut k_bound = BigRational::zero();
        for k in 2..=s {
            for p in f.partials_of_order(k) {
                let m = polynomial_range(&p, &self.ball).max_abs;
                if m > k_bound {
                    k_bound = m;
                }
            }
        }
        let (coef, eps1_factor) = match &self.config {
            GameConfig::Schmidt(c) => {
                let g = &c.alpha * &c.beta * &c.gamma;
                (&g / rat(8), g / rat(8))
            }
            GameConfig::Haw(c) => {
                let b2 = &c.beta * &c.beta;
                (&b2 / rat(4), b2 * ratio(49, 200))
            }
        };
        let delta = choose_delta(&k_bound, s, r, &(coef * &eps_prev), &self.ball.radius);
        self.wait_until(&(&delta / rat(2)))?;
        if let Some(e) = self.certified(f) {
            return Ok(e);
        }
        let Some((w, g)) = locate(f, &self.ball, &mut self.rng) else {
            // no manifold point found: shrinking alone must certify
            return self.certify_by_waiting(f);
        };
        self.step_away(&w, &g)?;
        let eps2 = self.certify_by_waiting(f)?;
        let eps1 = eps1_factor * delta;
        Ok(if eps1 < eps2 { eps1 } else { eps2 })
    }

    /// Moves away from the hyperplane through `a = c + rho w` with normal
    /// direction `g` (local coordinates).
    fn step_away(&mut self, w: &[f64], g: &[f64]) -> Result<()> {
        let mut u = exact_unit(g)?;
        let gw: f64 = g.iter().zip(w).map(|(x, y)| x * y).sum();
        match self.config.clone() {
            GameConfig::Schmidt(_) => {
                // orient u so that (u, o - a) >= 0, i.e. (u, w) <= 0
                if gw > 0.0 {
                    u.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.escape_halfspace(&u)?;
            }
            GameConfig::Haw(c) => {
                let raw: Vec<BigRational> = self
                    .ball
                    .center
                    .iter()
                    .zip(w)
                    .map(|(ci, wi)| ci + &self.ball.radius * f64_to_rational(*wi))
                    .collect();
                let anchor = snap(&raw, grid_bits(&self.ball.radius, 60));
                let slab = HyperplaneNeighborhood {
                    normal: u,
                    anchor,
                    epsilon: &c.beta * &self.ball.radius * ratio(99, 100),
                };
                self.haw_round(&c, slab, "remove")?;
            }
        }
        Ok(())
    }

    fn escape_linear(&mut self, f: &MultiPolynomial) -> Result<BigRational> {
        let grad: Vec<BigRational> = f
            .gradient()
            .iter()
            .map(|p| p.coeff(&vec![0; p.nvars()]))
            .collect();
        let fc = f.eval(&self.ball.center);
        let gf: Vec<f64> = grad.iter().map(rational_to_f64).collect();
        match self.config.clone() {
            GameConfig::Schmidt(_) => {
                let mut u = exact_unit(&gf)?;
                if fc.is_negative() {
                    u.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.escape_halfspace(&u)?;
            }
            GameConfig::Haw(c) => {
                // anchor: the point of {f = 0} nearest the center
                let g2 = dot(&grad, &grad);
                let k = &fc / &g2;
                let raw: Vec<BigRational> = self.ball.center.iter().zip(&grad).map(|(ci, gi)| ci - &k * gi).collect();
                let slab = HyperplaneNeighborhood {
                    normal: exact_unit(&gf)?,
                    anchor: snap(&raw, grid_bits(&self.ball.radius, 60)),
                    epsilon: &c.beta * &self.ball.radius * ratio(99, 100),
                };
                self.haw_round(&c, slab, "remove")?;
            }
        }
        self.certify_by_waiting(f)
    }
}

/// Half of the largest `delta <= 4 rho` with
/// `K sum_{k=2}^{s+1} r^k delta^(k-1) / k! < rhs`, capped at `2 rho`.
fn choose_delta(k_bound: &BigRational, s: u32, r: usize, rhs: &BigRational, rho: &BigRational) -> BigRational {
    let lhs = |d: &BigRational| {
        let mut total = BigRational::zero();
        let mut fact = BigInt::one();
        let mut rk = BigRational::one();
        let mut dk = BigRational::one();
        for k in 1..=(s + 1) {
            fact *= BigInt::from(k);
            rk *= rat(r as i64);
            if k >= 2 {
                total += &rk * &dk / BigRational::from_integer(fact.clone());
            }
            dk *= d;
        }
        total * k_bound
    };
    let cap = rho * rat(2);
    let mut hi = rho * rat(4);
    if &lhs(&hi) < rhs {
        return cap;
    }
    let mut lo = BigRational::zero();
    for _ in 0..DELTA_BISECTIONS {
        let mid = (&lo + &hi) / rat(2);
        if &lhs(&mid) < rhs {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let d = lo / rat(2);
    if d > cap {
        cap
    } else {
        d
    }
}

fn outcome(game: Game, epsilon: BigRational) -> EscapeOutcome {
    let rounds = game.rounds();
    let transcript = game.into_transcript();
    EscapeOutcome {
        final_ball: transcript.final_ball.clone(),
        epsilon,
        transcript,
        rounds,
    }
}

pub fn manifold_escape_schmidt(
    f: &MultiPolynomial,
    config: &SchmidtConfig,
    opponent: Opponent,
    seed: u64,
    start: Ball,
) -> Result<EscapeOutcome> {
    config.halfspace_rounds()?;
    let mut game = Game::new(GameConfig::Schmidt(config.clone()), opponent, seed, start)?;
    let cert = game.escape(f)?;
    Ok(outcome(game, cert.epsilon))
}

pub fn manifold_escape_haw(
    f: &MultiPolynomial,
    config: &HawConfig,
    opponent: Opponent,
    seed: u64,
    start: Ball,
) -> Result<EscapeOutcome> {
    let mut game = Game::new(GameConfig::Haw(config.clone()), opponent, seed, start)?;
    let cert = game.escape(f)?;
    Ok(outcome(game, cert.epsilon))
}

/// Runs only the half-space move of the Schmidt game from `start`.
pub fn schmidt_escape_halfspace(
    config: &SchmidtConfig,
    opponent: Opponent,
    seed: u64,
    start: Ball,
    u: &[BigRational],
) -> Result<(HalfspaceReport, GameTranscript)> {
    let mut game = Game::new(GameConfig::Schmidt(config.clone()), opponent, seed, start)?;
    let rep = game.escape_halfspace(u)?;
    Ok((rep, game.into_transcript()))
}

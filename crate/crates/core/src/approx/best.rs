//! Exhaustive best-approximation scan.
//!
//! Integer points `x` are visited shell by shell (`|x|_sup = M` for
//! `M = 1, 2, ..., T`) and, inside a shell, in lexicographic order; `x` and
//! `-x` give the same error, so only `x` with positive first nonzero
//! coordinate is visited. A shell produces a record when its smallest error is
//! strictly below every error seen in earlier shells.
//!
//! Errors are first compared in `f64` with a rigorous error bound. Anything
//! the fast path cannot separate is compared on rational enclosures, doubling
//! the precision up to [`PRECISION_CAP_BITS`], and finally by exact
//! arithmetic on the entries.

use super::target::{TargetMatrix, VectorTarget, PRECISION_CAP_BITS};
use crate::error::{Error, Result};
use crate::interval::{rational_to_f64, FInterval, RatInterval};
use crate::linalg::det_exact;
use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

/// Number of shell chunks a scan is split into. Fixed, so that the result does
/// not depend on the worker count.
const CHUNKS: usize = 256;

/// Default cap on the number of integer points `x` visited.
pub const DEFAULT_POINT_CAP: u128 = 100_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// `max_j ||L_j(x)||`, distance to the nearest integer.
    Form,
    /// Euclidean distance from `(x, y)` to the subspace `y = Theta x`.
    Subspace,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "form" => Ok(Metric::Form),
            "subspace" => Ok(Metric::Subspace),
            _ => Err(Error::precondition(format!(
                "unknown metric {s:?} (expected form or subspace)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestApproxRecord {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    /// `|x|_sup`.
    pub norm: u64,
    /// Midpoint of a certified enclosure of the error.
    pub psi: f64,
    /// Radius of that enclosure.
    pub psi_radius: f64,
    pub exact_hit: bool,
    /// Another point of the same shell attains the same error.
    pub tied: bool,
}

impl BestApproxRecord {
    pub fn z(&self) -> Vec<i64> {
        let mut z = self.x.clone();
        z.extend(&self.y);
        z
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestApproxSequence {
    pub target: String,
    pub n: usize,
    pub m: usize,
    pub metric: Metric,
    /// Norm on `x` (always `sup`).
    pub x_norm: &'static str,
    pub t: u64,
    pub records: Vec<BestApproxRecord>,
    pub tie_flag: bool,
    pub exact_hit: bool,
    pub points_scanned: u64,
}

impl BestApproxSequence {
    pub fn norms(&self) -> Vec<u64> {
        self.records.iter().map(|r| r.norm).collect()
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Worker threads; 0 means the rayon default.
    pub workers: usize,
    pub point_cap: u128,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: 0,
            point_cap: DEFAULT_POINT_CAP,
        }
    }
}

#[derive(Debug, Clone)]
struct Cand {
    x: Vec<i64>,
    y: Vec<i64>,
    /// Form: approximate error. Subspace: approximate squared distance.
    approx: f64,
    /// Subspace: certified enclosure of the squared distance.
    fint: FInterval,
    hit: bool,
}

struct ChunkResult {
    records: Vec<(Cand, bool)>,
    points: u64,
}

/// Everything a worker needs; immutable.
struct Scanner<'a> {
    target: &'a TargetMatrix,
    metric: Metric,
    n: usize,
    m: usize,
    theta: Vec<Vec<f64>>,
    /// Uniform bound on the error of any computed `L_j(x)`.
    err: f64,
    // subspace metric data
    theta_int: Vec<Vec<FInterval>>,
    adj_int: Vec<Vec<FInterval>>,
    inv_det_int: FInterval,
    /// Lower bound for the smallest eigenvalue of `(I + Theta Theta^T)^-1`.
    lam_low: f64,
    /// Upper bound for the largest eigenvalue of `I + Theta Theta^T`.
    lam_high: f64,
    exact_adj: Vec<Vec<ExactScalar>>,
    exact_det: ExactScalar,
    hit_shell: AtomicU64,
}

pub fn best_approximations(
    target: &TargetMatrix,
    metric: Metric,
    t: u64,
    opts: &ScanOptions,
) -> Result<BestApproxSequence> {
    if t < 1 {
        return Err(Error::precondition("search bound T must be >= 1"));
    }
    let (n, m) = (target.n(), target.m());
    let points = ((2 * t as u128 + 1).pow(n as u32) - 1) / 2;
    if points > opts.point_cap {
        return Err(Error::ResourceCap(format!(
            "{points} points for T = {t}, n = {n}; cap {}",
            opts.point_cap
        )));
    }
    let scanner = Scanner::new(target, metric, t)?;
    let chunks = chunk_bounds(t, n);
    let run = || -> Vec<Result<ChunkResult>> {
        chunks
            .par_iter()
            .map(|&(a, b)| scanner.scan_chunk(a, b))
            .collect()
    };
    let results = if opts.workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::precondition(e.to_string()))?
            .install(run)
    };
    let mut best: Option<Cand> = None;
    let mut records = vec![];
    let mut scanned = 0;
    'merge: for r in results {
        let r = r?;
        scanned += r.points;
        for (c, tied) in r.records {
            let better = match &best {
                None => true,
                Some(b) => scanner.cmp(&c, b)? == Ordering::Less,
            };
            if better {
                let hit = c.hit;
                records.push((c.clone(), tied));
                best = Some(c);
                if hit {
                    break 'merge;
                }
            }
        }
    }
    let records = records
        .into_iter()
        .map(|(c, tied)| scanner.finalize(c, tied))
        .collect::<Result<Vec<_>>>()?;
    Ok(BestApproxSequence {
        target: target.to_string(),
        n,
        m,
        metric,
        x_norm: "sup",
        t,
        tie_flag: records.iter().any(|r| r.tied),
        exact_hit: records.last().is_some_and(|r| r.exact_hit),
        records,
        points_scanned: scanned,
    })
}

/// Best approximations `(q, p)` to a vector `(xi, 1)`: the form metric of the
/// column matrix, or the subspace metric of the line it spans when `metric`
/// is `Subspace`.
pub fn best_approximations_vector(
    target: &VectorTarget,
    metric: Metric,
    t: u64,
    opts: &ScanOptions,
) -> Result<BestApproxSequence> {
    best_approximations(target.as_matrix(), metric, t, opts)
}

/// Contiguous shell ranges of roughly equal work (`M^(n-1)` points per shell).
fn chunk_bounds(t: u64, n: usize) -> Vec<(u64, u64)> {
    let w = |m: u64| (m as f64).powi(n as i32 - 1).max(1.0);
    let total: f64 = if t <= 1_000_000 {
        (1..=t).map(w).sum()
    } else {
        (t as f64).powi(n as i32) / n as f64
    };
    let per = total / CHUNKS as f64;
    let mut out = vec![];
    let mut start = 1;
    let mut acc = 0.0;
    for m in 1..=t {
        acc += w(m);
        if acc >= per || m == t {
            out.push((start, m));
            start = m + 1;
            acc = 0.0;
        }
    }
    out
}

fn finterval_of(e: &ExactScalar) -> FInterval {
    FInterval::from_rat(&e.enclose(80))
}

impl<'a> Scanner<'a> {
    fn new(target: &'a TargetMatrix, metric: Metric, t: u64) -> Result<Self> {
        let (n, m) = (target.n(), target.m());
        let (theta, errs) = target.f64_entries();
        let mut err = 0.0f64;
        let mut size = 0.0f64;
        for j in 0..m {
            let mut e = 0.0;
            let mut s = 0.0;
            for i in 0..n {
                e += errs[j][i] + (n as f64 + 2.0) * f64::EPSILON * theta[j][i].abs();
                s += theta[j][i].abs();
            }
            err = err.max(e);
            size = size.max(s);
        }
        let tf = t as f64;
        if tf * size > 2f64.powi(50) {
            return Err(Error::ResourceCap(
                "T times the entry size exceeds the range of the f64 fast path".into(),
            ));
        }
        let err = tf * err * 1.01 + 1e-300;
        let mut sc = Scanner {
            target,
            metric,
            n,
            m,
            theta,
            err,
            theta_int: vec![],
            adj_int: vec![],
            inv_det_int: FInterval::point(1.0),
            lam_low: 1.0,
            lam_high: 1.0,
            exact_adj: vec![],
            exact_det: ExactScalar::one(),
            hit_shell: AtomicU64::new(u64::MAX),
        };
        if metric == Metric::Subspace {
            // G = I + Theta Theta^T, exactly
            let mut g = vec![vec![ExactScalar::zero(); m]; m];
            for a in 0..m {
                for b in 0..m {
                    let mut s = if a == b { ExactScalar::one() } else { ExactScalar::zero() };
                    for i in 0..n {
                        s = s.add(&target.entry(a, i).mul(target.entry(b, i))?)?;
                    }
                    g[a][b] = s;
                }
            }
            let det = det_exact(&g)?;
            let mut adj = vec![vec![ExactScalar::zero(); m]; m];
            for a in 0..m {
                for b in 0..m {
                    // adj[a][b] = (-1)^(a+b) minor(b, a)
                    let minor: Vec<Vec<ExactScalar>> = (0..m)
                        .filter(|&r| r != b)
                        .map(|r| {
                            (0..m)
                                .filter(|&c| c != a)
                                .map(|c| g[r][c].clone())
                                .collect()
                        })
                        .collect();
                    let v = if m == 1 { ExactScalar::one() } else { det_exact(&minor)? };
                    adj[a][b] = if (a + b) % 2 == 0 { v } else { v.neg() };
                }
            }
            let trace: f64 = (0..m).map(|a| g[a][a].to_f64()).sum();
            sc.lam_high = trace * (1.0 + 1e-9);
            sc.lam_low = 1.0 / sc.lam_high;
            sc.theta_int = (0..m)
                .map(|j| (0..n).map(|i| finterval_of(target.entry(j, i))).collect())
                .collect();
            sc.adj_int = adj.iter().map(|r| r.iter().map(finterval_of).collect()).collect();
            let det_i = finterval_of(&det);
            sc.inv_det_int = FInterval::point(1.0)
                .div(det_i)
                .ok_or_else(|| Error::precondition("singular Gram matrix"))?;
            sc.exact_adj = adj;
            sc.exact_det = det;
        }
        Ok(sc)
    }

    fn scan_chunk(&self, first: u64, last: u64) -> Result<ChunkResult> {
        let mut cur: Option<Cand> = None;
        let mut records = vec![];
        let mut points = 0u64;
        for shell in first..=last {
            if shell > self.hit_shell.load(AtomicOrdering::Relaxed) {
                break;
            }
            let (sb, tied, pts) = self.scan_shell(shell, cur.as_ref())?;
            points += pts;
            if let Some(sb) = sb {
                let hit = sb.hit;
                records.push((sb.clone(), tied));
                cur = Some(sb);
                if hit {
                    self.hit_shell.fetch_min(shell, AtomicOrdering::Relaxed);
                    break;
                }
            }
        }
        Ok(ChunkResult { records, points })
    }

    /// Smallest error in shell `M`, if strictly below `cur`.
    fn scan_shell(&self, shell: u64, cur: Option<&Cand>) -> Result<(Option<Cand>, bool, u64)> {
        let n = self.n;
        let mm = shell as i64;
        let mut sb: Option<Cand> = None;
        let mut tied = false;
        let mut points = 0u64;
        let mut prefix = vec![0i64; n - 1];
        if n > 1 {
            prefix[0] = 0;
            for p in prefix.iter_mut().skip(1) {
                *p = -mm;
            }
        }
        let mut x = vec![0i64; n];
        let mut partial = vec![0.0f64; self.m];
        loop {
            // prefix validity: first nonzero positive
            let first_nz = prefix.iter().find(|&&v| v != 0).copied();
            if first_nz.is_none_or(|v| v > 0) {
                let psup = prefix.iter().map(|v| v.abs()).max().unwrap_or(0);
                for (j, s) in partial.iter_mut().enumerate() {
                    *s = (0..n - 1).map(|i| prefix[i] as f64 * self.theta[j][i]).sum();
                }
                x[..n - 1].copy_from_slice(&prefix);
                let lasts: Vec<i64> = if first_nz.is_none() {
                    vec![mm]
                } else if psup == mm {
                    (-mm..=mm).collect()
                } else {
                    vec![-mm, mm]
                };
                for l in lasts {
                    x[n - 1] = l;
                    points += 1;
                    self.visit(&x, &partial, cur, &mut sb, &mut tied)?;
                }
            }
            // advance the prefix odometer; first coordinate runs over 0..=M
            let mut i = n - 1;
            loop {
                if i == 0 {
                    return Ok((sb, tied, points));
                }
                i -= 1;
                if prefix[i] < mm {
                    prefix[i] += 1;
                    break;
                }
                prefix[i] = if i == 0 { 0 } else { -mm };
            }
        }
    }

    fn visit(
        &self,
        x: &[i64],
        partial: &[f64],
        cur: Option<&Cand>,
        sb: &mut Option<Cand>,
        tied: &mut bool,
    ) -> Result<()> {
        let n = self.n;
        let last = x[n - 1] as f64;
        let e2 = 2.0 * self.err;
        if sb.as_ref().is_some_and(|s| s.hit) {
            // only another exact hit can matter, as a tie
            let vals: Vec<f64> = (0..self.m)
                .map(|j| partial[j] + last * self.theta[j][n - 1])
                .collect();
            if vals.iter().all(|v| (v - v.round()).abs() <= e2) {
                let y: Vec<i64> = vals.iter().map(|v| v.round() as i64).collect();
                if self.is_hit(x, &y)? {
                    *tied = true;
                }
            }
            return Ok(());
        }
        match self.metric {
            Metric::Form => {
                let mut psi = 0.0f64;
                for j in 0..self.m {
                    let v = partial[j] + last * self.theta[j][n - 1];
                    psi = psi.max((v - v.round()).abs());
                }
                for b in [cur, sb.as_ref()].into_iter().flatten() {
                    if b.hit || psi > b.approx + e2 {
                        return Ok(());
                    }
                }
                let y = (0..self.m)
                    .map(|j| (partial[j] + last * self.theta[j][n - 1]).round() as i64)
                    .collect::<Vec<_>>();
                let hit = psi <= e2 && self.is_hit(x, &y)?;
                let c = Cand {
                    x: x.to_vec(),
                    y,
                    approx: if hit { 0.0 } else { psi },
                    fint: FInterval::point(0.0),
                    hit,
                };
                self.offer(c, cur, sb, tied)
            }
            Metric::Subspace => {
                let u: Vec<f64> = (0..self.m)
                    .map(|j| partial[j] + last * self.theta[j][n - 1])
                    .collect();
                let mut w0 = 0.0f64;
                let mut w0_hi = 0.0f64;
                for &v in &u {
                    let f = (v - v.round()).abs();
                    w0 += (f - self.err).max(0.0).powi(2);
                    w0_hi += (f + self.err).powi(2);
                }
                let lb = self.lam_low * w0 * (1.0 - 1e-9);
                let mut thr = w0_hi * (1.0 + 1e-9);
                for b in [cur, sb.as_ref()].into_iter().flatten() {
                    if b.hit || lb > b.fint.hi {
                        return Ok(());
                    }
                    thr = thr.min(b.fint.hi);
                }
                // candidate y: |y_j - u_j| <= sqrt(lam_high * thr)
                let rad = (self.lam_high * thr).sqrt() + self.err;
                let ranges: Vec<(i64, i64)> = u
                    .iter()
                    .map(|&v| ((v - rad).ceil() as i64, (v + rad).floor() as i64))
                    .collect();
                if ranges.iter().any(|(a, b)| a > b) {
                    return Ok(());
                }
                let uint: Vec<FInterval> = (0..self.m)
                    .map(|j| {
                        (0..n).fold(FInterval::point(0.0), |acc, i| {
                            acc.add(self.theta_int[j][i].mul(FInterval::point(x[i] as f64)))
                        })
                    })
                    .collect();
                let mut y: Vec<i64> = ranges.iter().map(|r| r.0).collect();
                loop {
                    let w: Vec<FInterval> = (0..self.m)
                        .map(|j| uint[j].sub(FInterval::point(y[j] as f64)))
                        .collect();
                    let mut q = FInterval::point(0.0);
                    for a in 0..self.m {
                        for b in 0..self.m {
                            q = q.add(self.adj_int[a][b].mul(w[a]).mul(w[b]));
                        }
                    }
                    let d2 = q.mul(self.inv_det_int);
                    let d2 = FInterval::new(d2.lo.max(0.0), d2.hi.max(0.0));
                    let skip = [cur, sb.as_ref()]
                        .into_iter()
                        .flatten()
                        .any(|b| b.hit || d2.lo > b.fint.hi);
                    if !skip {
                        let hit = d2.lo <= 0.0 && self.is_hit(x, &y)?;
                        let c = Cand {
                            x: x.to_vec(),
                            y: y.clone(),
                            approx: if hit { 0.0 } else { d2.mid() },
                            fint: if hit { FInterval::point(0.0) } else { d2 },
                            hit,
                        };
                        self.offer(c, cur, sb, tied)?;
                    }
                    // next y in the box, lexicographically
                    let mut k = self.m;
                    loop {
                        if k == 0 {
                            return Ok(());
                        }
                        k -= 1;
                        if y[k] < ranges[k].1 {
                            y[k] += 1;
                            break;
                        }
                        y[k] = ranges[k].0;
                    }
                }
            }
        }
    }

    fn offer(
        &self,
        c: Cand,
        cur: Option<&Cand>,
        sb: &mut Option<Cand>,
        tied: &mut bool,
    ) -> Result<()> {
        if let Some(b) = cur {
            if self.cmp(&c, b)? != Ordering::Less {
                return Ok(());
            }
        }
        match sb {
            None => *sb = Some(c),
            Some(s) => match self.cmp(&c, s)? {
                Ordering::Less => {
                    *sb = Some(c);
                    *tied = false;
                }
                Ordering::Equal => *tied = true,
                Ordering::Greater => {}
            },
        }
        Ok(())
    }

    fn is_hit(&self, x: &[i64], y: &[i64]) -> Result<bool> {
        let v = self.target.apply_exact(x)?;
        Ok(v.iter().zip(y).all(|(a, &b)| a == &ExactScalar::int(b)))
    }

    fn cmp(&self, a: &Cand, b: &Cand) -> Result<Ordering> {
        match (a.hit, b.hit) {
            (true, true) => return Ok(Ordering::Equal),
            (true, false) => return Ok(Ordering::Less),
            (false, true) => return Ok(Ordering::Greater),
            _ => {}
        }
        match self.metric {
            Metric::Form => {
                let e2 = 2.0 * self.err;
                if a.approx + e2 < b.approx {
                    return Ok(Ordering::Less);
                }
                if a.approx > b.approx + e2 {
                    return Ok(Ordering::Greater);
                }
            }
            Metric::Subspace => {
                if let Some(o) = a.fint.certain_cmp(&b.fint) {
                    return Ok(o);
                }
            }
        }
        self.precise_cmp(a, b)
    }

    /// Compares errors on rational enclosures, doubling the precision up to
    /// the cap, then decides exact equality.
    fn precise_cmp(&self, a: &Cand, b: &Cand) -> Result<Ordering> {
        let mut bits = self.target.precision();
        loop {
            let ea = self.enclose(a, bits);
            let eb = self.enclose(b, bits);
            if let Some(o) = ea.certain_cmp(&eb) {
                return Ok(o);
            }
            if bits >= PRECISION_CAP_BITS {
                break;
            }
            bits = (bits * 2).min(PRECISION_CAP_BITS);
        }
        let va = self.exact_error(a)?;
        let vb = self.exact_error(b)?;
        if va.sub(&vb)?.is_zero() {
            Ok(Ordering::Equal)
        } else {
            Err(Error::PrecisionExhausted(format!(
                "errors at x = {:?} and x = {:?} agree to {PRECISION_CAP_BITS} bits but differ",
                a.x, b.x
            )))
        }
    }

    /// Enclosure of the error (form) or squared distance times det (subspace).
    fn enclose(&self, c: &Cand, bits: u32) -> RatInterval {
        let enc = self.target.enclosures(bits);
        let v: Vec<RatInterval> = (0..self.m)
            .map(|j| {
                (0..self.n).fold(RatInterval::zero(), |acc, i| {
                    acc.add(&enc[j][i].scale(&BigRational::from_integer(BigInt::from(c.x[i]))))
                })
            })
            .collect();
        match self.metric {
            Metric::Form => v
                .iter()
                .map(|vj| nearest_distance(vj))
                .fold(RatInterval::zero(), |acc, d| acc.max(&d)),
            Metric::Subspace => {
                let w: Vec<RatInterval> = v
                    .iter()
                    .zip(&c.y)
                    .map(|(vj, &yj)| vj.sub(&RatInterval::from_int(yj)))
                    .collect();
                let mut q = RatInterval::zero();
                for a in 0..self.m {
                    for b in 0..self.m {
                        q = q.add(&self.exact_adj[a][b].enclose(bits).mul(&w[a]).mul(&w[b]));
                    }
                }
                q
            }
        }
    }

    fn exact_error(&self, c: &Cand) -> Result<ExactScalar> {
        let v = self.target.apply_exact(&c.x)?;
        match self.metric {
            Metric::Form => {
                let mut best: Option<ExactScalar> = None;
                for vj in &v {
                    let d = exact_nearest_distance(vj)?;
                    best = Some(match best {
                        None => d,
                        Some(b) => {
                            if d.cmp_value(&b)? == Ordering::Greater {
                                d
                            } else {
                                b
                            }
                        }
                    });
                }
                Ok(best.unwrap())
            }
            Metric::Subspace => {
                let w: Vec<ExactScalar> = v
                    .iter()
                    .zip(&c.y)
                    .map(|(vj, &yj)| vj.sub(&ExactScalar::int(yj)))
                    .collect::<Result<_>>()?;
                let mut q = ExactScalar::zero();
                for a in 0..self.m {
                    for b in 0..self.m {
                        q = q.add(&self.exact_adj[a][b].mul(&w[a])?.mul(&w[b])?)?;
                    }
                }
                Ok(q)
            }
        }
    }

    fn finalize(&self, c: Cand, tied: bool) -> Result<BestApproxRecord> {
        let norm = c.x.iter().map(|v| v.unsigned_abs()).max().unwrap();
        let bits = self.target.precision();
        let mut y = c.y.clone();
        if self.metric == Metric::Form {
            // exact nearest integers (smaller one at exact halves)
            let v = self.target.apply_exact(&c.x)?;
            for (j, vj) in v.iter().enumerate() {
                y[j] = exact_nearest_integer(vj)?;
            }
        }
        let (psi, rad) = if c.hit {
            (0.0, 0.0)
        } else {
            let e = self.enclose(&c, bits);
            match self.metric {
                Metric::Form => (e.mid_f64(), rational_to_f64(&e.width()) / 2.0),
                Metric::Subspace => {
                    let det = self.exact_det.enclose(bits);
                    let d2 = e.div(&det).expect("positive determinant");
                    let lo = rational_to_f64(&d2.lo).max(0.0).sqrt();
                    let hi = rational_to_f64(&d2.hi).sqrt();
                    ((lo + hi) / 2.0, (hi - lo) / 2.0)
                }
            }
        };
        Ok(BestApproxRecord {
            x: c.x,
            y,
            norm,
            psi,
            psi_radius: rad,
            exact_hit: c.hit,
            tied,
        })
    }
}

fn floor_rat(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Enclosure of the distance from `v` to the nearest integer.
fn nearest_distance(v: &RatInterval) -> RatInterval {
    let k = floor_rat(&v.mid());
    let mut best: Option<RatInterval> = None;
    for dk in 0..=1 {
        let kk = BigRational::from_integer(&k + dk);
        let d = v.sub(&RatInterval::point(kk)).abs();
        best = Some(match best {
            None => d,
            Some(b) => RatInterval::new(
                b.lo.clone().min(d.lo.clone()),
                b.hi.clone().min(d.hi.clone()),
            ),
        });
    }
    // points within 1/2 of the midpoint cover the whole interval when it is
    // narrower than 1; otherwise fall back to [0, 1/2]
    if v.width() >= BigRational::one() {
        return RatInterval::new(BigRational::zero(), BigRational::new(1.into(), 2.into()));
    }
    let b = best.unwrap();
    let half = BigRational::new(1.into(), 2.into());
    RatInterval::new(b.lo, b.hi.min(half))
}

fn exact_nearest_integer(v: &ExactScalar) -> Result<i64> {
    let half = BigRational::new(1.into(), 2.into());
    let k = if let Some(r) = v.as_rational() {
        // exact halves go to the smaller integer
        let s = r + &half;
        if s.is_integer() {
            s.to_integer() - 1
        } else {
            floor_rat(&s)
        }
    } else {
        // irrational: never a half-integer, refine until the rounding is fixed
        let mut bits = 64;
        loop {
            let e = v.enclose(bits);
            let a = floor_rat(&(&e.lo + &half));
            if a == floor_rat(&(&e.hi + &half)) {
                break a;
            }
            bits *= 2;
        }
    };
    k.to_i64()
        .ok_or_else(|| Error::precondition("nearest integer out of range"))
}

fn exact_nearest_distance(v: &ExactScalar) -> Result<ExactScalar> {
    let k = exact_nearest_integer(v)?;
    Ok(v.sub(&ExactScalar::int(k))?.abs())
}

/// Sign-canonical form of `x`: first nonzero coordinate positive.
pub fn canonical_sign(x: &[i64]) -> Vec<i64> {
    match x.iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => x.iter().map(|a| -a).collect(),
        _ => x.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> ExactScalar {
        "1/2+1/2*sqrt(5)".parse().unwrap()
    }

    #[test]
    fn fibonacci_denominators() {
        let t = VectorTarget::new(vec![golden()]).unwrap();
        let s = best_approximations_vector(&t, Metric::Form, 100, &ScanOptions::default()).unwrap();
        assert_eq!(s.norms(), vec![1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        assert!(!s.tie_flag);
        assert!(!s.exact_hit);
        assert_eq!(s.records[4].y, vec![13]);
    }

    #[test]
    fn sqrt2_convergents() {
        let t = VectorTarget::new(vec![ExactScalar::sqrt(2).unwrap()]).unwrap();
        let s = best_approximations_vector(&t, Metric::Form, 100, &ScanOptions::default()).unwrap();
        assert_eq!(s.norms(), vec![1, 2, 5, 12, 29, 70]);
    }

    #[test]
    fn rational_target_hits() {
        let t = TargetMatrix::new(vec![vec![ExactScalar::ratio(1, 3)]]).unwrap();
        let s = best_approximations(&t, Metric::Form, 10, &ScanOptions::default()).unwrap();
        assert!(s.exact_hit);
        let last = s.records.last().unwrap();
        assert_eq!(last.x, vec![3]);
        assert_eq!(last.y, vec![1]);
        assert_eq!(last.psi, 0.0);
    }

    #[test]
    fn ties_are_flagged() {
        // every x in the first shell has error ||r2|| for Theta = diag(r2, r2)
        let r2 = ExactScalar::sqrt(2).unwrap();
        let z = ExactScalar::zero();
        let t = TargetMatrix::new(vec![vec![r2.clone(), z.clone()], vec![z, r2]]).unwrap();
        let s = best_approximations(&t, Metric::Form, 3, &ScanOptions::default()).unwrap();
        assert!(s.tie_flag);
        assert_eq!(s.records[0].x, vec![0, 1]);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let t = VectorTarget::new(vec![golden()]).unwrap();
        let a = best_approximations_vector(
            &t,
            Metric::Subspace,
            2000,
            &ScanOptions { workers: 1, ..Default::default() },
        )
        .unwrap();
        let b = best_approximations_vector(
            &t,
            Metric::Subspace,
            2000,
            &ScanOptions { workers: 4, ..Default::default() },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chunks_cover_range() {
        for (t, n) in [(1, 1), (7, 2), (1000, 1), (1000, 3)] {
            let c = chunk_bounds(t, n);
            assert_eq!(c[0].0, 1);
            assert_eq!(c.last().unwrap().1, t);
            for w in c.windows(2) {
                assert_eq!(w[0].1 + 1, w[1].0);
            }
        }
    }

    #[test]
    fn point_cap() {
        let t = TargetMatrix::new(vec![vec![golden(), golden()]]).unwrap();
        let r = best_approximations(
            &t,
            Metric::Form,
            1000,
            &ScanOptions { workers: 0, point_cap: 1000 },
        );
        assert!(matches!(r, Err(Error::ResourceCap(_))));
    }
}

#![allow(dead_code)]

//! Brute-force best-approximation records for rational targets `Theta = P / q`,
//! in exact integer arithmetic.

use diophlab::approx::{BestApproxSequence, Metric, TargetMatrix};
use diophlab::ExactScalar;
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRecord {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub norm: u64,
    pub value: f64,
    pub hit: bool,
    pub tied: bool,
}

/// Error as an exact fraction `num / den` (squared for the subspace metric);
/// `den` is the same for every point of one target.
#[derive(Debug, Clone, Copy)]
struct Err {
    num: i128,
    den: i128,
}

impl Err {
    fn cmp(&self, o: &Err) -> Ordering {
        assert_eq!(self.den, o.den);
        self.num.cmp(&o.num)
    }
}

pub fn target(p: &[Vec<i64>], q: i64) -> TargetMatrix {
    TargetMatrix::new(
        p.iter()
            .map(|r| r.iter().map(|&a| ExactScalar::ratio(a, q)).collect())
            .collect(),
    )
    .unwrap()
}

fn det(a: &[Vec<i128>]) -> i128 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, v)| *v).collect())
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * a[0][c] * det(&minor)
            })
            .sum(),
    }
}

fn adjugate(a: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = a.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            out[i][j] = s * det(&minor);
        }
    }
    out
}

/// Nearest integer to `s / q`, exact halves going down.
fn nearest(s: i128, q: i128) -> i128 {
    // ceil((2s - q) / 2q)
    let a = 2 * s - q;
    let b = 2 * q;
    -((-a).div_euclid(b))
}

/// Points with sup norm `m` whose first nonzero entry is positive, in
/// lexicographic order.
fn shell_points(n: usize, m: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, m: i64, x: &mut Vec<i64>, at_max: bool, started: bool, out: &mut Vec<Vec<i64>>) {
        if x.len() == n {
            if at_max && started {
                out.push(x.clone());
            }
            return;
        }
        let last = x.len() + 1 == n;
        let lo = if started { -m } else { 0 };
        for v in lo..=m {
            if last && !at_max && v.abs() != m {
                continue;
            }
            x.push(v);
            go(n, m, x, at_max || v.abs() == m, started || v != 0, out);
            x.pop();
        }
    }
    let mut out = vec![];
    go(n, m, &mut Vec::with_capacity(n), false, false, &mut out);
    out
}

/// Records up to `t`: per shell the lexicographically first minimizer, kept when
/// strictly below all earlier shells; stops after an exact hit.
pub fn brute_records(p: &[Vec<i64>], q: i64, metric: Metric, t: u64) -> Vec<OracleRecord> {
    let m = p.len();
    let n = p[0].len();
    let q = q as i128;
    let gp: Vec<Vec<i128>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| {
                    let mut s = if a == b { q * q } else { 0 };
                    for i in 0..n {
                        s += p[a][i] as i128 * p[b][i] as i128;
                    }
                    s
                })
                .collect()
        })
        .collect();
    let adj = adjugate(&gp);
    let dg = det(&gp);
    let mut best: Option<Err> = None;
    let mut out = vec![];
    for shell in 1..=t as i64 {
        let mut sb: Option<(Err, Vec<i64>, Vec<i64>)> = None;
        let mut tied = false;
        for x in shell_points(n, shell) {
            let s: Vec<i128> = (0..m)
                .map(|j| (0..n).map(|i| p[j][i] as i128 * x[i] as i128).sum())
                .collect();
            let mut cands: Vec<(Err, Vec<i64>)> = vec![];
            match metric {
                Metric::Form => {
                    let y: Vec<i128> = s.iter().map(|&v| nearest(v, q)).collect();
                    let num = s.iter().zip(&y).map(|(v, yy)| (v - yy * q).abs()).max().unwrap();
                    cands.push((Err { num, den: q }, y.iter().map(|&v| v as i64).collect()));
                }
                Metric::Subspace => {
                    let base: Vec<i128> = s.iter().map(|&v| nearest(v, q)).collect();
                    let mut off = vec![-2i128; m];
                    loop {
                        let y: Vec<i128> = base.iter().zip(&off).map(|(a, b)| a + b).collect();
                        let u: Vec<i128> = s.iter().zip(&y).map(|(v, yy)| v - yy * q).collect();
                        let mut num = 0;
                        for a in 0..m {
                            for b in 0..m {
                                num = u[a]
                                    .checked_mul(adj[a][b])
                                    .and_then(|v| v.checked_mul(u[b]))
                                    .and_then(|v| v.checked_add(num))
                                    .expect("oracle arithmetic fits in i128");
                            }
                        }
                        cands.push((Err { num, den: dg }, y.iter().map(|&v| v as i64).collect()));
                        let mut k = m;
                        let mut done = true;
                        while k > 0 {
                            k -= 1;
                            if off[k] < 2 {
                                off[k] += 1;
                                done = false;
                                break;
                            }
                            off[k] = -2;
                        }
                        if done {
                            break;
                        }
                    }
                    cands.sort_by(|a, b| a.1.cmp(&b.1));
                }
            }
            for (e, y) in cands {
                if best.is_some_and(|b| e.cmp(&b) != Ordering::Less) {
                    continue;
                }
                match &sb {
                    None => sb = Some((e, x.clone(), y)),
                    Some((s0, _, _)) => match e.cmp(s0) {
                        Ordering::Less => {
                            sb = Some((e, x.clone(), y));
                            tied = false;
                        }
                        Ordering::Equal => tied = true,
                        Ordering::Greater => {}
                    },
                }
            }
        }
        if let Some((e, x, y)) = sb {
            let hit = e.num == 0;
            let v = e.num as f64 / e.den as f64;
            out.push(OracleRecord {
                x,
                y,
                norm: shell as u64,
                value: if metric == Metric::Subspace { v.sqrt() } else { v },
                hit,
                tied,
            });
            best = Some(e);
            if hit {
                break;
            }
        }
    }
    out
}

/// Compares a scanned sequence with oracle records; returns a description of
/// the first difference.
pub fn compare(seq: &BestApproxSequence, oracle: &[OracleRecord]) -> Result<(), String> {
    if seq.records.len() != oracle.len() {
        return Err(format!(
            "record count {} vs oracle {}: {:?} vs {:?}",
            seq.records.len(),
            oracle.len(),
            seq.norms(),
            oracle.iter().map(|r| r.norm).collect::<Vec<_>>()
        ));
    }
    for (k, (a, b)) in seq.records.iter().zip(oracle).enumerate() {
        if a.x != b.x || a.y != b.y || a.norm != b.norm || a.exact_hit != b.hit || a.tied != b.tied {
            return Err(format!("record {k}: {a:?} vs oracle {b:?}"));
        }
        if (a.psi - b.value).abs() > a.psi_radius + 1e-12 * b.value.max(1e-300) {
            return Err(format!("record {k}: psi {} +- {} vs {}", a.psi, a.psi_radius, b.value));
        }
    }
    Ok(())
}

pub mod plays {
    use diophlab::game::{
        manifold_escape_haw, manifold_escape_schmidt, polynomial_range, Ball, EscapeOutcome,
        HawConfig, Opponent, OpponentKind, SchmidtConfig,
    };
    use diophlab::multipoly::MultiPolynomial;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Nonconstant polynomial in `r` variables, degree `<= 3`, coefficients in [-5, 5].
    pub fn random_poly(rng: &mut ChaCha8Rng, r: usize) -> MultiPolynomial {
        loop {
            let mut terms = vec![];
            for _ in 0..rng.gen_range(1..=5) {
                let deg = rng.gen_range(0..=3u32);
                let mut e = vec![0u32; r];
                for _ in 0..deg {
                    e[rng.gen_range(0..r)] += 1;
                }
                terms.push((e, rng.gen_range(-5..=5i64)));
            }
            let f = MultiPolynomial::from_int_terms(r, &terms);
            if !f.is_constant() {
                return f;
            }
        }
    }

    pub fn kind(k: usize) -> OpponentKind {
        [OpponentKind::RandomLegal, OpponentKind::CenterCopy, OpponentKind::ManifoldHugging][k % 3].clone()
    }

    /// Plays one seeded escape and checks everything that can be checked
    /// independently of the strategy.
    pub struct Play {
        pub outcome: EscapeOutcome,
        pub f: MultiPolynomial,
        pub haw: bool,
        pub opponent: OpponentKind,
    }

    pub fn play(seed: u64) -> Result<Play, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = rng.gen_range(1..=3);
        let f = random_poly(&mut rng, r);
        let haw = rng.gen_bool(0.5);
        let opponent = kind(rng.gen_range(0..3));
        let opp = Opponent::new(opponent.clone(), seed);
        let start = Ball::origin(r, BigRational::from_integer(BigInt::from(1))).unwrap();
        let out = if haw {
            manifold_escape_haw(&f, &HawConfig::quarter(r), opp, seed, start)
        } else {
            manifold_escape_schmidt(&f, &SchmidtConfig::quarter(r), opp, seed, start)
        }
        .map_err(|e| format!("seed {seed}: f = {f}: {e}"))?;
        if !out.epsilon.is_positive() {
            return Err(format!("seed {seed}: epsilon {}", out.epsilon));
        }
        if polynomial_range(&f, &out.final_ball).min_abs <= out.epsilon {
            return Err(format!("seed {seed}: f = {f}: range does not clear epsilon"));
        }
        let v = out.transcript.revalidate();
        if !v.ok {
            return Err(format!("seed {seed}: f = {f}: {:?}", v.violations));
        }
        if !out.transcript.recheck_certificates() {
            return Err(format!("seed {seed}: f = {f}: certificate recheck"));
        }
        Ok(Play { outcome: out, f, haw, opponent })
    }
}

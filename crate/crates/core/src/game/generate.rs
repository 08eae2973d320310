use super::ball::{rat, Ball};
use super::opponent::Opponent;
use super::play::{Game, GameConfig, GameTranscript};
use crate::error::{Error, Result};
use crate::exact::{enumerate_rational_subspaces, irrationality_profile, RationalSubspace, SubspaceBasis};
use crate::linalg::combinations;
use crate::multipoly::MultiPolynomial;
use crate::scalar::ExactScalar;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::HashMap;

/// Variable index of `theta_j^i` (row `j < m`, column `i < n`).
pub fn theta_var(n: usize, j: usize, i: usize) -> usize {
    j * n + i
}

/// Rows `(theta_1^i, ..., theta_m^i | e_i)` for `i = 1..n` as polynomials.
fn theta_rows(n: usize, m: usize) -> Vec<Vec<MultiPolynomial>> {
    let r = n * m;
    (0..n)
        .map(|i| {
            let mut row: Vec<MultiPolynomial> = (0..m).map(|j| MultiPolynomial::variable(r, theta_var(n, j, i))).collect();
            row.extend((0..n).map(|k| {
                if k == i {
                    MultiPolynomial::constant(r, BigRational::one())
                } else {
                    MultiPolynomial::zero(r)
                }
            }));
            row
        })
        .collect()
}

fn constant_rows(r: usize, sub: &RationalSubspace) -> Vec<Vec<MultiPolynomial>> {
    sub.rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| MultiPolynomial::constant(r, BigRational::from_integer(x.clone())))
                .collect()
        })
        .collect()
}

/// Determinant by expansion along rows, memoized on the set of used columns.
fn det_poly(rows: &[Vec<MultiPolynomial>], r: usize) -> MultiPolynomial {
    fn go(
        rows: &[Vec<MultiPolynomial>],
        k: usize,
        used: u64,
        r: usize,
        memo: &mut HashMap<u64, MultiPolynomial>,
    ) -> MultiPolynomial {
        if k == rows.len() {
            return MultiPolynomial::constant(r, BigRational::one());
        }
        if let Some(p) = memo.get(&used) {
            return p.clone();
        }
        let mut acc = MultiPolynomial::zero(r);
        let mut sign_neg = false;
        for (c, entry) in rows[k].iter().enumerate() {
            if used & (1 << c) != 0 {
                continue;
            }
            if !entry.is_zero() {
                let minor = go(rows, k + 1, used | (1 << c), r, memo);
                let term = entry.mul(&minor);
                acc = if sign_neg { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(used, acc.clone());
        acc
    }
    go(rows, 0, 0, r, &mut HashMap::new())
}

/// `det Xi` for an `m`-dimensional rational `M` in `R^(n+m)`: vanishes
/// exactly when `L_Theta` meets `M` nontrivially.
pub fn determinant_manifold(n: usize, m: usize, sub: &RationalSubspace) -> Result<MultiPolynomial> {
    if n < 1 || m < 1 {
        return Err(Error::precondition("need n, m >= 1"));
    }
    if sub.d != n + m || sub.m != m {
        return Err(Error::precondition(format!(
            "subspace has dimension {} in R^{}, expected {} in R^{}",
            sub.m,
            sub.d,
            m,
            n + m
        )));
    }
    let mut rows = theta_rows(n, m);
    rows.extend(constant_rows(n * m, sub));
    Ok(det_poly(&rows, n * m))
}

/// Polynomial vanishing exactly when `L_Theta` meets `M` (of any dimension
/// `k <= m`) nontrivially: `det Xi` for `k = m`, otherwise the sum of squares
/// of the maximal minors of `Xi`.
pub fn intersection_manifold(n: usize, m: usize, sub: &RationalSubspace) -> Result<MultiPolynomial> {
    if sub.m == m {
        return determinant_manifold(n, m, sub);
    }
    if sub.d != n + m || sub.m < 1 || sub.m > m {
        return Err(Error::precondition("subspace dimension out of range"));
    }
    let r = n * m;
    let mut rows = theta_rows(n, m);
    rows.extend(constant_rows(r, sub));
    let mut total = MultiPolynomial::zero(r);
    for cols in combinations(n + m, n + sub.m) {
        let minor: Vec<Vec<MultiPolynomial>> = rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let p = det_poly(&minor, r);
        total = total.add(&p.mul(&p));
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceCertificate {
    pub subspace: RationalSubspace,
    #[serde(serialize_with = "crate::ser::display")]
    pub polynomial: MultiPolynomial,
    #[serde(serialize_with = "crate::ser::rat")]
    pub epsilon: BigRational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratedMatrix {
    pub n: usize,
    pub m: usize,
    pub height_bound: u64,
    /// Center of the final ball, `m x n`.
    #[serde(serialize_with = "crate::ser::rat_rows")]
    pub theta: Vec<Vec<BigRational>>,
    pub theta_f64: Vec<Vec<f64>>,
    pub certificates: Vec<SubspaceCertificate>,
    /// Subspaces whose polynomial is a nonzero constant need no play.
    pub trivially_avoided: usize,
    /// Independent check: `certified_m` of the irrationality profile of the
    /// returned matrix at the same height.
    pub post_check_certified_m: usize,
    pub transcript: GameTranscript,
}

impl GeneratedMatrix {
    pub fn theta_exact(&self) -> Vec<Vec<ExactScalar>> {
        self.theta
            .iter()
            .map(|row| row.iter().map(|x| ExactScalar::Rational(x.clone())).collect())
            .collect()
    }

    pub fn min_epsilon(&self) -> Option<&BigRational> {
        self.certificates.iter().map(|c| &c.epsilon).min()
    }
}

/// Plays one continuing game that escapes the intersection manifold of every
/// rational subspace of dimension `1..=m` and height `<= h`; the final center
/// avoids all of them with certified margins.
pub fn generate_irrational_matrix(
    n: usize,
    m: usize,
    h: u64,
    config: GameConfig,
    opponent: Opponent,
    seed: u64,
    cap: u64,
) -> Result<GeneratedMatrix> {
    if n < 1 || m < 1 || h < 1 {
        return Err(Error::precondition("need n, m, H >= 1"));
    }
    let r = n * m;
    if config.r() != r {
        return Err(Error::precondition(format!(
            "game dimension must be n m = {r}, got {}",
            config.r()
        )));
    }
    let d = n + m;
    let mut game = Game::new(config, opponent, seed, Ball::origin(r, rat(1))?)?;
    let mut certs = vec![];
    let mut trivial = 0;
    for k in 1..=m {
        for sub in enumerate_rational_subspaces(d, k, h, cap)? {
            let f = intersection_manifold(n, m, &sub)?;
            if f.is_zero() {
                return Err(Error::precondition("intersection polynomial vanishes identically"));
            }
            if f.is_constant() {
                trivial += 1;
                continue;
            }
            let cert = game.escape(&f)?;
            certs.push(SubspaceCertificate {
                subspace: sub,
                polynomial: f,
                epsilon: cert.epsilon,
            });
        }
    }
    let transcript = game.into_transcript();
    let center = transcript.final_ball.center.clone();
    let theta: Vec<Vec<BigRational>> = (0..m)
        .map(|j| (0..n).map(|i| center[theta_var(n, j, i)].clone()).collect())
        .collect();
    let exact: Vec<Vec<ExactScalar>> = theta
        .iter()
        .map(|row| row.iter().map(|x| ExactScalar::Rational(x.clone())).collect())
        .collect();
    let profile = irrationality_profile(&SubspaceBasis::graph_yx(&exact)?, h, cap)?;
    Ok(GeneratedMatrix {
        n,
        m,
        height_bound: h,
        theta_f64: theta
            .iter()
            .map(|row| row.iter().map(crate::interval::rational_to_f64).collect())
            .collect(),
        theta,
        certificates: certs,
        trivially_avoided: trivial,
        post_check_certified_m: profile.certified_m,
        transcript,
    })
}

/// True when `f` vanishes at `theta` (row-major `m x n`).
pub fn vanishes_at(f: &MultiPolynomial, theta: &[Vec<BigRational>]) -> bool {
    let point: Vec<BigRational> = theta.iter().flatten().cloned().collect();
    f.eval(&point).is_zero()
}

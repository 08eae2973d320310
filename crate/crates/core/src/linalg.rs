//! Exact linear algebra over `Z`, `Q` and the scalar fields of
//! [`ExactScalar`].

use crate::error::Result;
use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank by fraction-free (Bareiss) elimination over `Z`.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    rank_int(&big)
}

/// Scales a rational row to a primitive integer row (content 1, sign kept).
pub fn primitive_row(row: &[BigRational]) -> Vec<BigInt> {
    let den = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_row(r)).collect();
    rank_int(&ints)
}

/// Reduced row echelon form over `Q`; zero rows dropped.
pub fn rref_rational(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    if m.is_empty() {
        return m;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for c in col..ncols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..ncols {
                    let v = &f * &m[rank][c];
                    m[r][c] -= v;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    m
}

/// Basis of the right kernel `{v : A v = 0}` over `Q`.
pub fn kernel_rational(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let r = rref_rational(rows);
    let pivots: Vec<usize> = r
        .iter()
        .map(|row| row.iter().position(|c| !c.is_zero()).unwrap())
        .collect();
    let mut out = vec![];
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &p) in r.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Rank over the (common) scalar field by division-free elimination:
/// `row_k <- pivot * row_k - a_k * row_pivot`, exact zero tests.
pub fn rank_exact(rows: &[Vec<ExactScalar>]) -> Result<usize> {
    let mut m: Vec<Vec<ExactScalar>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return Ok(0);
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            if m[r][col].is_zero() {
                continue;
            }
            let a = m[r][col].clone();
            for c in col..ncols {
                let v = pivot.mul(&m[r][c])?.sub(&a.mul(&m[rank][c])?)?;
                m[r][c] = v;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    Ok(rank)
}

/// Determinant over the scalar field (Gaussian elimination with inverses).
pub fn det_exact(rows: &[Vec<ExactScalar>]) -> Result<ExactScalar> {
    let n = rows.len();
    let mut m: Vec<Vec<ExactScalar>> = rows.to_vec();
    let mut det = ExactScalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(ExactScalar::zero());
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        let inv = m[col][col].inv()?;
        det = det.mul(&m[col][col])?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv)?;
            for c in col..n {
                let v = m[r][c].sub(&f.mul(&m[col][c])?)?;
                m[r][c] = v;
            }
        }
    }
    Ok(det)
}

/// Integer determinant by Bareiss elimination.
pub fn det_int(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Sign of the permutation sorting `seq` (all entries distinct).
pub fn permutation_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn is_zero_row(row: &[BigInt]) -> bool {
    row.iter().all(|x| x.is_zero())
}

pub fn sup_norm(row: &[BigInt]) -> BigInt {
    row.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

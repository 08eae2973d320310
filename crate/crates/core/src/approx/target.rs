use crate::error::{Error, Result};
use crate::interval::{rational_to_f64, RatInterval};
use crate::scalar::{ExactScalar, FieldContext};
use std::fmt;

/// Default working precision in bits.
pub const DEFAULT_PRECISION_BITS: u32 = 256;
/// Hard cap for precision escalation.
pub const PRECISION_CAP_BITS: u32 = 4096;

/// The `m x n` matrix `Theta` of the linear forms `L_j(x) = sum_i theta_j^i x_i`
/// (equivalently, of the subspace `y = Theta x` of `R^(n+m)`).
///
/// Every entry is an exact scalar; inputs written as decimals are carried as
/// the rational they denote and flagged inexact.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetMatrix {
    m: usize,
    n: usize,
    entries: Vec<Vec<ExactScalar>>,
    ctx: FieldContext,
    inexact: bool,
    precision: u32,
}

impl TargetMatrix {
    pub fn new(entries: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let m = entries.len();
        let n = entries.first().map_or(0, |r| r.len());
        if m == 0 || n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::precondition("target matrix must be nonempty and rectangular"));
        }
        let ctx = FieldContext::join_all(entries.iter().flatten())?;
        Ok(TargetMatrix {
            m,
            n,
            entries,
            ctx,
            inexact: false,
            precision: DEFAULT_PRECISION_BITS,
        })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| ExactScalar::int(x)).collect())
                .collect(),
        )
    }

    pub fn with_precision(mut self, bits: u32) -> Result<Self> {
        if !(53..=PRECISION_CAP_BITS).contains(&bits) {
            return Err(Error::precondition(format!(
                "precision must lie in [53, {PRECISION_CAP_BITS}] bits, got {bits}"
            )));
        }
        self.precision = bits;
        Ok(self)
    }

    pub fn mark_inexact(mut self, inexact: bool) -> Self {
        self.inexact = inexact;
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.m + self.n
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_inexact(&self) -> bool {
        self.inexact
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    /// Row `j` (form `L_j`), column `i` (variable `x_i`).
    pub fn entry(&self, j: usize, i: usize) -> &ExactScalar {
        &self.entries[j][i]
    }

    pub fn entries(&self) -> &[Vec<ExactScalar>] {
        &self.entries
    }

    /// Entry enclosures of width at most `2^-bits`.
    pub fn enclosures(&self, bits: u32) -> Vec<Vec<RatInterval>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.enclose(bits)).collect())
            .collect()
    }

    /// Entries rounded to f64 together with a bound on the rounding error.
    pub fn f64_entries(&self) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let enc = self.enclosures(80);
        let vals: Vec<Vec<f64>> = enc
            .iter()
            .map(|r| r.iter().map(|e| rational_to_f64(&e.mid())).collect())
            .collect();
        let errs = vals
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.abs() * f64::EPSILON + 1e-22)
                    .collect()
            })
            .collect();
        (vals, errs)
    }

    /// `Theta x`, exactly.
    pub fn apply_exact(&self, x: &[i64]) -> Result<Vec<ExactScalar>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter().zip(x).try_fold(ExactScalar::zero(), |acc, (t, &xi)| {
                    acc.add(&t.mul_int(xi))
                })
            })
            .collect()
    }

    pub fn transpose(&self) -> TargetMatrix {
        let entries = (0..self.n)
            .map(|i| (0..self.m).map(|j| self.entries[j][i].clone()).collect())
            .collect();
        TargetMatrix {
            m: self.n,
            n: self.m,
            entries,
            ctx: self.ctx.clone(),
            inexact: self.inexact,
            precision: self.precision,
        }
    }
}

impl fmt::Display for TargetMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// A vector `(xi_1, ..., xi_{d-1}, 1)`; simultaneous approximation of the
/// first `d - 1` coordinates by fractions `p / q`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTarget {
    coords: Vec<ExactScalar>,
    matrix: TargetMatrix,
}

impl VectorTarget {
    pub fn new(coords: Vec<ExactScalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::precondition("need at least one free coordinate"));
        }
        let matrix = TargetMatrix::new(coords.iter().map(|c| vec![c.clone()]).collect())?;
        Ok(VectorTarget { coords, matrix })
    }

    /// From a vector whose last coordinate is nonzero, by scaling it to 1.
    pub fn normalized(v: &[ExactScalar]) -> Result<Self> {
        let last = v
            .last()
            .ok_or_else(|| Error::precondition("empty vector"))?;
        if last.is_zero() {
            return Err(Error::precondition("last coordinate is zero"));
        }
        let coords = v[..v.len() - 1]
            .iter()
            .map(|c| c.div(last))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    pub fn d(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn coords(&self) -> &[ExactScalar] {
        &self.coords
    }

    pub fn with_precision(mut self, bits: u32) -> Result<Self> {
        self.matrix = self.matrix.with_precision(bits)?;
        Ok(self)
    }

    pub fn mark_inexact(mut self, inexact: bool) -> Self {
        self.matrix = self.matrix.mark_inexact(inexact);
        self
    }

    /// The `(d-1) x 1` matrix of the forms `q xi_j`.
    pub fn as_matrix(&self) -> &TargetMatrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_errors() {
        let t = TargetMatrix::from_ints(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap();
        assert_eq!((t.m(), t.n(), t.d()), (2, 3, 5));
        assert_eq!(t.transpose().entry(2, 1), &ExactScalar::int(6));
        assert!(TargetMatrix::from_ints(&[vec![1], vec![1, 2]]).is_err());
        assert!(TargetMatrix::new(vec![vec![
            ExactScalar::sqrt(2).unwrap(),
            ExactScalar::sqrt(3).unwrap()
        ]])
        .is_err());
        assert!(t.clone().with_precision(16).is_err());
    }

    #[test]
    fn exact_application() {
        let r2 = ExactScalar::sqrt(2).unwrap();
        let t = TargetMatrix::new(vec![vec![r2.clone(), ExactScalar::int(1)]]).unwrap();
        let v = t.apply_exact(&[2, -1]).unwrap();
        assert_eq!(v[0], r2.mul_int(2).sub(&ExactScalar::int(1)).unwrap());
    }

    #[test]
    fn normalized_vector() {
        let v = VectorTarget::normalized(&[ExactScalar::int(1), ExactScalar::int(3)]).unwrap();
        assert_eq!(v.coords(), &[ExactScalar::ratio(1, 3)]);
        assert!(VectorTarget::normalized(&[ExactScalar::int(1), ExactScalar::zero()]).is_err());
    }
}

use super::target::TargetMatrix;
use crate::error::{Error, Result};
use crate::exact::SubspaceBasis;
use crate::scalar::{ExactScalar, NumberField};
use crate::upoly::UPoly;

/// Working precision of constructed targets: the default plus guard bits.
pub const CONSTRUCT_PRECISION_BITS: u32 = 384;

#[derive(Debug, Clone)]
pub struct AlgebraicSubspace {
    pub basis: SubspaceBasis,
    pub theta: TargetMatrix,
    /// Decimal approximation of the chosen root.
    pub root: f64,
}

/// Subspace `y = Theta x` of `R^d` with `Theta` the `(d-n) x n` matrix
/// `theta_j^i = t^(j (m+1)^(i-1))` (`i, j` from 1, `m = d - n`), `t` the
/// largest real root of `minpoly`. For `n = 1` this is the line through
/// `(1, t, t^2, ...)`. The exponent pattern is not symmetric in `i, j`: with
/// `t^(i j)` the Plücker coordinates satisfy `p_13 + p_24 = 0` for `n = m = 2`
/// and the plane meets a rational plane. Complete irrationality still depends
/// on the field and is not checked here.
pub fn algebraic_subspace(minpoly: &[i64], n: usize, d: usize) -> Result<AlgebraicSubspace> {
    let p = UPoly::from_ints(minpoly);
    if p.degree() != Some(d) {
        return Err(Error::precondition(format!(
            "minimal polynomial must have degree d = {d}, got {:?}",
            p.degree()
        )));
    }
    if n < 1 || n >= d {
        return Err(Error::precondition(format!("need 1 <= n < d, got n = {n}")));
    }
    let field = NumberField::new(&p, None)?;
    let m = d - n;
    let entries: Vec<Vec<ExactScalar>> = (1..=m)
        .map(|j| (1..=n).map(|i| field.power(j * (m + 1).pow(i as u32 - 1))).collect())
        .collect();
    let theta = TargetMatrix::new(entries)?.with_precision(CONSTRUCT_PRECISION_BITS)?;
    let basis = SubspaceBasis::graph_xy(theta.entries())?;
    Ok(AlgebraicSubspace {
        basis,
        theta,
        root: field.root_f64(),
    })
}

/// `copies` copies of `Theta` on the diagonal of an otherwise zero matrix.
pub fn block_diagonal_subspace(theta: &TargetMatrix, copies: usize) -> Result<TargetMatrix> {
    if copies < 2 {
        return Err(Error::precondition(format!("need at least 2 copies, got {copies}")));
    }
    let (m, n) = (theta.m(), theta.n());
    let mut rows = vec![vec![ExactScalar::zero(); n * copies]; m * copies];
    for k in 0..copies {
        for j in 0..m {
            for i in 0..n {
                rows[k * m + j][k * n + i] = theta.entry(j, i).clone();
            }
        }
    }
    Ok(TargetMatrix::new(rows)?
        .with_precision(theta.precision())?
        .mark_inexact(theta.is_inexact()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_line() {
        let a = algebraic_subspace(&[-1, -1, 1], 1, 2).unwrap();
        assert_eq!(a.theta.m(), 1);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((a.theta.entry(0, 0).to_f64() - phi).abs() < 1e-15);
    }

    #[test]
    fn quartic_plane_shape() {
        let a = algebraic_subspace(&[-1, 0, 0, -1, 1], 2, 4).unwrap();
        assert_eq!((a.theta.m(), a.theta.n()), (2, 2));
        assert!((a.root - 1.380_277_569_097_61).abs() < 1e-12);
        let t = a.root;
        assert!((a.theta.entry(0, 1).to_f64() - t.powi(3)).abs() < 1e-12);
        assert!((a.theta.entry(1, 1).to_f64() - t.powi(6)).abs() < 1e-12);
        assert_eq!(a.basis.d(), 4);
    }

    #[test]
    fn rejected_inputs() {
        assert!(algebraic_subspace(&[-4, 0, 1], 1, 2).is_err());
        assert!(algebraic_subspace(&[1, 0, 1], 1, 2).is_err());
        assert!(algebraic_subspace(&[-1, -1, 1], 2, 2).is_err());
        assert!(algebraic_subspace(&[-1, -1, 1], 1, 3).is_err());
    }

    #[test]
    fn block_diagonal() {
        let r2 = TargetMatrix::new(vec![vec![ExactScalar::sqrt(2).unwrap()]]).unwrap();
        let b = block_diagonal_subspace(&r2, 2).unwrap();
        assert_eq!(b.entry(0, 0), b.entry(1, 1));
        assert!(b.entry(0, 1).is_zero());
        assert!(block_diagonal_subspace(&r2, 1).is_err());
    }
}

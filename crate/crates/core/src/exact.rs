//! Subspaces with exact entries, Plücker coordinates, rational subspaces of
//! bounded height and certification of irrationality.
//!
//! An `n`-dimensional subspace `L` of `R^d` is *m-irrational* when it meets
//! every `m`-dimensional rational subspace only at the origin, and completely
//! irrational when this holds for `m = d - n`. Two routes are offered: an
//! exact, height-independent certificate (the Plücker coordinates are linearly
//! independent over `Q`) and an exhaustive search over rational subspaces up
//! to a height bound.

use crate::error::{Error, Result};
use crate::linalg::{
    combinations, det_int, permutation_sign, primitive_row, rank_exact, rank_rational,
    rref_rational, sup_norm,
};
use crate::scalar::{ExactScalar, FieldContext};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashSet;

/// Default cap on candidate bases examined by the rational-subspace search.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Basis of an `n`-dimensional real subspace of `R^d` with exact entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    d: usize,
    rows: Vec<Vec<ExactScalar>>,
    ctx: FieldContext,
}

impl SubspaceBasis {
    pub fn new(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::precondition("basis rows have different lengths"));
        }
        if n < 1 || n >= d {
            return Err(Error::precondition(format!(
                "need 1 <= n < d, got n = {n}, d = {d}"
            )));
        }
        let ctx = FieldContext::join_all(rows.iter().flatten())?;
        if rank_exact(&rows)? != n {
            return Err(Error::precondition("basis rows are linearly dependent"));
        }
        Ok(SubspaceBasis { d, rows, ctx })
    }

    /// `L = {(x, Theta x)}` for an `m x n` matrix `theta`; rows `(e_i | Theta e_i)`.
    pub fn graph_xy(theta: &[Vec<ExactScalar>]) -> Result<Self> {
        let (m, n) = dims(theta)?;
        let rows = (0..n)
            .map(|i| {
                let mut r: Vec<ExactScalar> = (0..n)
                    .map(|k| if k == i { ExactScalar::one() } else { ExactScalar::zero() })
                    .collect();
                r.extend((0..m).map(|j| theta[j][i].clone()));
                r
            })
            .collect();
        Self::new(rows)
    }

    /// Same subspace with coordinates ordered `(y, x)`: rows `(Theta e_i | e_i)`,
    /// the layout of the determinant manifolds.
    pub fn graph_yx(theta: &[Vec<ExactScalar>]) -> Result<Self> {
        let (m, n) = dims(theta)?;
        let rows = (0..n)
            .map(|i| {
                let mut r: Vec<ExactScalar> = (0..m).map(|j| theta[j][i].clone()).collect();
                r.extend(
                    (0..n).map(|k| if k == i { ExactScalar::one() } else { ExactScalar::zero() }),
                );
                r
            })
            .collect();
        Self::new(rows)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<ExactScalar>] {
        &self.rows
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }
}

fn dims(theta: &[Vec<ExactScalar>]) -> Result<(usize, usize)> {
    let m = theta.len();
    let n = theta.first().map_or(0, |r| r.len());
    if m == 0 || n == 0 || theta.iter().any(|r| r.len() != n) {
        return Err(Error::precondition("matrix must be nonempty and rectangular"));
    }
    Ok((m, n))
}

/// Rational subspace in canonical form: reduced echelon rows scaled to
/// primitive integers (leading entries positive).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalSubspace {
    pub d: usize,
    pub m: usize,
    #[serde(serialize_with = "crate::ser::big_rows")]
    pub rows: Vec<Vec<BigInt>>,
    /// Max absolute entry of the canonical basis.
    #[serde(serialize_with = "crate::ser::big")]
    pub height: BigInt,
    /// Sup-norm of the smallest integer basis known for this subspace; for
    /// enumerated subspaces this is exactly the enumeration level.
    pub basis_height: u64,
}

impl RationalSubspace {
    pub fn from_basis(rows: &[Vec<BigInt>]) -> Result<Self> {
        let d = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != d) || d == 0 {
            return Err(Error::precondition("basis rows have different lengths"));
        }
        let canon = canonical_rows(rows).ok_or_else(|| {
            Error::precondition("rational basis rows are linearly dependent")
        })?;
        let given = rows.iter().map(|r| sup_norm(r)).max().unwrap();
        Ok(Self::from_canonical(canon, given.to_u64().unwrap_or(u64::MAX)))
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_basis(&big)
    }

    fn from_canonical(rows: Vec<Vec<BigInt>>, known: u64) -> Self {
        let height = rows.iter().map(|r| sup_norm(r)).max().unwrap();
        let bh = known.min(height.to_u64().unwrap_or(u64::MAX));
        RationalSubspace {
            d: rows[0].len(),
            m: rows.len(),
            rows,
            height,
            basis_height: bh,
        }
    }

    pub fn rows_exact(&self) -> Vec<Vec<ExactScalar>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| ExactScalar::Rational(BigRational::from_integer(x.clone())))
                    .collect()
            })
            .collect()
    }
}

/// Canonical echelon form, or `None` when the rows are dependent.
fn canonical_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let q: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let r = rref_rational(&q);
    if r.len() != rows.len() {
        return None;
    }
    Some(r.iter().map(|row| primitive_row(row)).collect())
}

/// Plücker coordinates `p_I`, `I = (i_1 < ... < i_n)` in lexicographic order
/// (0-based indices).
#[derive(Debug, Clone, PartialEq)]
pub struct PluckerVector {
    pub d: usize,
    pub n: usize,
    pub index: Vec<Vec<usize>>,
    pub entries: Vec<ExactScalar>,
}

impl PluckerVector {
    pub fn get(&self, idx: &[usize]) -> Option<&ExactScalar> {
        self.index
            .iter()
            .position(|i| i == idx)
            .map(|p| &self.entries[p])
    }
}

pub fn plucker_coordinates(basis: &SubspaceBasis) -> Result<PluckerVector> {
    let n = basis.n();
    let index = combinations(basis.d(), n);
    let entries = index
        .iter()
        .map(|cols| {
            let minor: Vec<Vec<ExactScalar>> = basis
                .rows()
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            crate::linalg::det_exact(&minor)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PluckerVector {
        d: basis.d(),
        n,
        index,
        entries,
    })
}

/// Maximal number of `Q`-linearly independent values in `coords`.
pub fn rational_dimension(coords: &[ExactScalar]) -> Result<usize> {
    if coords.is_empty() {
        return Err(Error::precondition("empty coordinate list"));
    }
    let ctx = FieldContext::join_all(coords)?;
    let rows = coords
        .iter()
        .map(|c| c.coeffs_in(&ctx))
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_rational(&rows))
}

/// Primitive integer vectors with sup-norm exactly `h`, first nonzero entry
/// positive, in lexicographic order.
fn primitive_vectors_at(d: usize, h: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![];
    let mut v = vec![-h; d];
    loop {
        let first = v.iter().find(|&&x| x != 0);
        if first.is_some_and(|&f| f > 0)
            && v.iter().map(|x| x.abs()).max() == Some(h)
            && v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x)) == 1
        {
            out.push(v.iter().map(|&x| BigInt::from(x)).collect());
        }
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if v[i] < h {
                v[i] += 1;
                break;
            }
            v[i] = -h;
        }
    }
}

/// Incremental level-by-level search over rational subspaces.
pub struct SubspaceEnumerator {
    d: usize,
    m: usize,
    cap: u64,
    examined: u64,
    level: i64,
    vectors: Vec<Vec<BigInt>>,
    seen: HashSet<Vec<Vec<BigInt>>>,
}

impl SubspaceEnumerator {
    pub fn new(d: usize, m: usize, cap: u64) -> Result<Self> {
        if m < 1 || m >= d {
            return Err(Error::precondition(format!(
                "need 1 <= m < d, got m = {m}, d = {d}"
            )));
        }
        Ok(SubspaceEnumerator {
            d,
            m,
            cap,
            examined: 0,
            level: 0,
            vectors: vec![],
            seen: HashSet::new(),
        })
    }

    pub fn examined(&self) -> u64 {
        self.examined
    }

    /// Subspaces admitting an integer basis of sup-norm `level + 1` but none
    /// smaller, sorted by canonical form.
    pub fn next_level(&mut self) -> Result<Vec<RationalSubspace>> {
        self.level += 1;
        let h = self.level;
        let start = self.vectors.len();
        self.vectors.extend(primitive_vectors_at(self.d, h));
        let end = self.vectors.len();
        let k = self.m - 1;
        let need: u128 = (start..end).map(|j| binom(j as u128, k as u128)).sum();
        if self.examined as u128 + need > self.cap as u128 {
            return Err(Error::ResourceCap(format!(
                "{} candidate bases needed at height {h}, cap {}",
                self.examined as u128 + need,
                self.cap
            )));
        }
        let mut found = vec![];
        for j in start..end {
            for combo in combinations(j, k) {
                self.examined += 1;
                let mut rows: Vec<Vec<BigInt>> =
                    combo.iter().map(|&i| self.vectors[i].clone()).collect();
                rows.push(self.vectors[j].clone());
                let Some(canon) = canonical_rows(&rows) else {
                    continue;
                };
                if self.seen.insert(canon.clone()) {
                    found.push(RationalSubspace::from_canonical(canon, h as u64));
                }
            }
        }
        found.sort_by(|a, b| a.rows.cmp(&b.rows));
        Ok(found)
    }
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut r = 1u128;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Every `m`-dimensional rational subspace of `R^d` with an integer basis of
/// sup-norm at most `height`, each once, sorted by (basis height, canonical
/// form).
pub fn enumerate_rational_subspaces(
    d: usize,
    m: usize,
    height: u64,
    cap: u64,
) -> Result<Vec<RationalSubspace>> {
    if height < 1 {
        return Err(Error::precondition("height bound must be >= 1"));
    }
    let mut e = SubspaceEnumerator::new(d, m, cap)?;
    let mut out = vec![];
    for _ in 0..height {
        out.extend(e.next_level()?);
    }
    Ok(out)
}

/// `L` with its Plücker coordinates expanded over `Q`, for repeated
/// intersection tests.
pub struct PreparedSubspace<'a> {
    basis: &'a SubspaceBasis,
    plucker: PluckerVector,
    coeffs: Vec<Vec<BigRational>>,
}

impl<'a> PreparedSubspace<'a> {
    pub fn new(basis: &'a SubspaceBasis) -> Result<Self> {
        let plucker = plucker_coordinates(basis)?;
        let coeffs = plucker
            .entries
            .iter()
            .map(|e| e.coeffs_in(basis.context()))
            .collect::<Result<Vec<_>>>()?;
        Ok(PreparedSubspace {
            basis,
            plucker,
            coeffs,
        })
    }

    /// `dim(L ∩ M)`.
    pub fn intersection_dimension(&self, other: &RationalSubspace) -> Result<usize> {
        let n = self.basis.n();
        let d = self.basis.d();
        if other.d != d {
            return Err(Error::precondition(format!(
                "ambient dimensions differ: {d} vs {}",
                other.d
            )));
        }
        let m = other.m;
        if n + m > d {
            return Err(Error::precondition(format!(
                "n + m = {} exceeds d = {d}",
                n + m
            )));
        }
        // Laplace expansion of each (n+m)-minor of the stacked matrix along
        // the first n rows; any nonzero minor means full rank.
        let deg = self.basis.context().degree();
        for cols in combinations(d, n + m) {
            let mut acc = vec![BigRational::zero(); deg];
            for sub in combinations(n + m, n) {
                let top: Vec<usize> = sub.iter().map(|&i| cols[i]).collect();
                let rest: Vec<usize> = (0..n + m)
                    .filter(|i| !sub.contains(i))
                    .map(|i| cols[i])
                    .collect();
                let minor: Vec<Vec<BigInt>> = other
                    .rows
                    .iter()
                    .map(|r| rest.iter().map(|&c| r[c].clone()).collect())
                    .collect();
                let q = det_int(&minor);
                if q.is_zero() {
                    continue;
                }
                let mut order = sub.clone();
                order.extend((0..n + m).filter(|i| !sub.contains(i)));
                let sign = permutation_sign(&order);
                let pidx = self.plucker.index.iter().position(|i| *i == top).unwrap();
                let f = BigRational::from_integer(q * sign);
                for (a, c) in acc.iter_mut().zip(&self.coeffs[pidx]) {
                    *a += &f * c;
                }
            }
            if acc.iter().any(|c| !c.is_zero()) {
                return Ok(0);
            }
        }
        let mut rows = self.basis.rows().to_vec();
        rows.extend(other.rows_exact());
        Ok(n + m - rank_exact(&rows)?)
    }
}

/// `dim(L ∩ M) = n + m - rank(Xi)`, `Xi` the stacked bases.
pub fn intersection_dimension(l: &SubspaceBasis, m: &RationalSubspace) -> Result<usize> {
    PreparedSubspace::new(l)?.intersection_dimension(m)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockingSubspace {
    pub subspace: RationalSubspace,
    pub intersection_dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrationalityProfile {
    pub d: usize,
    pub n: usize,
    pub height_bound: u64,
    /// Largest `m <= d - n` such that no rational subspace of dimension `<= m`
    /// within the height bound meets `L` nontrivially.
    pub certified_m: usize,
    /// Plücker coordinates are `Q`-linearly independent (height independent).
    pub completely_irrational_certificate: bool,
    pub blocking: Option<BlockingSubspace>,
    /// Search stopped at the enumeration cap; `certified_m` covers only the
    /// dimensions fully searched.
    pub partial: bool,
    pub candidates_examined: u64,
}

impl IrrationalityProfile {
    pub fn is_complete(&self) -> bool {
        self.certified_m == self.d - self.n && !self.partial
    }
}

pub fn irrationality_profile(
    l: &SubspaceBasis,
    height: u64,
    cap: u64,
) -> Result<IrrationalityProfile> {
    if height < 1 {
        return Err(Error::precondition("height bound must be >= 1"));
    }
    let prepared = PreparedSubspace::new(l)?;
    let (d, n) = (l.d(), l.n());
    let certificate = rational_dimension(&prepared.plucker.entries)? == prepared.plucker.entries.len();
    let mut profile = IrrationalityProfile {
        d,
        n,
        height_bound: height,
        certified_m: 0,
        completely_irrational_certificate: certificate,
        blocking: None,
        partial: false,
        candidates_examined: 0,
    };
    'dims: for m in 1..=d - n {
        let mut e = SubspaceEnumerator::new(d, m, cap.saturating_sub(profile.candidates_examined))?;
        for _ in 0..height {
            let level = match e.next_level() {
                Ok(level) => level,
                Err(Error::ResourceCap(_)) => {
                    profile.partial = true;
                    profile.candidates_examined += e.examined();
                    break 'dims;
                }
                Err(err) => return Err(err),
            };
            for sub in level {
                let k = prepared.intersection_dimension(&sub)?;
                if k > 0 {
                    profile.candidates_examined += e.examined();
                    profile.blocking = Some(BlockingSubspace {
                        subspace: sub,
                        intersection_dimension: k,
                    });
                    break 'dims;
                }
            }
        }
        profile.candidates_examined += e.examined();
        profile.certified_m = m;
    }
    Ok(profile)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrrationalityWitness {
    /// `L` is `m'`-irrational for some `m' >= m`.
    pub m: usize,
    /// 0-based index set.
    pub index_set: Vec<usize>,
    /// The Plücker entries supported on the index set (text form).
    pub entries: Vec<String>,
    /// `m = 0`: no information.
    pub trivial: bool,
}

/// Independence of the Plücker coordinates supported on `index_set`
/// (0-based) implies `(|I| - n)`-irrationality at least.
pub fn partial_irrationality_witness(
    l: &SubspaceBasis,
    index_set: &[usize],
) -> Result<Option<IrrationalityWitness>> {
    let mut idx = index_set.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if idx.len() != index_set.len() || idx.iter().any(|&i| i >= l.d()) {
        return Err(Error::precondition("index set must be distinct indices below d"));
    }
    if idx.len() < l.n() {
        return Err(Error::precondition(format!(
            "index set of size {} is smaller than n = {}",
            idx.len(),
            l.n()
        )));
    }
    let p = plucker_coordinates(l)?;
    let s: Vec<ExactScalar> = p
        .index
        .iter()
        .zip(&p.entries)
        .filter(|(i, _)| i.iter().all(|c| idx.contains(c)))
        .map(|(_, e)| e.clone())
        .collect();
    if rational_dimension(&s)? != s.len() {
        return Ok(None);
    }
    let m = idx.len() - l.n();
    Ok(Some(IrrationalityWitness {
        m,
        index_set: idx,
        entries: s.iter().map(|e| e.to_string()).collect(),
        trivial: m == 0,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactScalar {
        ExactScalar::int(n)
    }

    fn r2() -> ExactScalar {
        ExactScalar::sqrt(2).unwrap()
    }

    #[test]
    fn plucker_of_line_and_coordinate_plane() {
        let b = SubspaceBasis::new(vec![vec![q(3), q(4)]]).unwrap();
        assert_eq!(plucker_coordinates(&b).unwrap().entries, vec![q(3), q(4)]);
        let b = SubspaceBasis::new(vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]).unwrap();
        assert_eq!(plucker_coordinates(&b).unwrap().entries, vec![q(1), q(0), q(0)]);
    }

    #[test]
    fn plucker_over_sqrt2() {
        // minors computed by hand: p12 = 1, p13 = 0, p14 = r2, p23 = -r2, p24 = 0, p34 = 2
        let b = SubspaceBasis::new(vec![
            vec![q(1), q(0), r2(), q(0)],
            vec![q(0), q(1), q(0), r2()],
        ])
        .unwrap();
        let p = plucker_coordinates(&b).unwrap();
        assert_eq!(p.entries, vec![q(1), q(0), r2(), r2().neg(), q(0), q(2)]);
        assert_eq!(p.get(&[2, 3]), Some(&q(2)));
    }

    #[test]
    fn rational_dimension_examples() {
        assert_eq!(
            rational_dimension(&[q(1), ExactScalar::ratio(1, 2), q(3)]).unwrap(),
            1
        );
        assert_eq!(rational_dimension(&[q(1), r2()]).unwrap(), 2);
        let c = "1+2*sqrt(2)".parse().unwrap();
        assert_eq!(rational_dimension(&[q(1), r2(), c]).unwrap(), 2);
        assert!(rational_dimension(&[]).is_err());
        assert!(rational_dimension(&[r2(), ExactScalar::sqrt(3).unwrap()]).is_err());
    }

    #[test]
    fn enumerate_small_cases() {
        let one = enumerate_rational_subspaces(2, 1, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        let dirs: Vec<Vec<i64>> = one
            .iter()
            .map(|s| s.rows[0].iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        assert_eq!(dirs, vec![vec![0, 1], vec![1, -1], vec![1, 0], vec![1, 1]]);
        let two = enumerate_rational_subspaces(2, 1, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(two.len(), 8);
        assert!(enumerate_rational_subspaces(2, 2, 1, DEFAULT_ENUMERATION_CAP).is_err());
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let e = enumerate_rational_subspaces(4, 2, 3, 1000);
        assert!(matches!(e, Err(Error::ResourceCap(_))));
    }

    #[test]
    fn canonical_form_identifies_subspaces() {
        let a = RationalSubspace::from_i64(&[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = RationalSubspace::from_i64(&[vec![1, 2, 1], vec![1, 0, -1]]).unwrap();
        assert_eq!(a.rows, b.rows);
        assert!(RationalSubspace::from_i64(&[vec![1, 2], vec![2, 4]]).is_err());
    }

    #[test]
    fn intersection_examples() {
        let l = SubspaceBasis::new(vec![vec![q(1), q(0), q(0)]]).unwrap();
        let m = RationalSubspace::from_i64(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert_eq!(intersection_dimension(&l, &m).unwrap(), 1);

        let l = SubspaceBasis::new(vec![vec![q(1), r2()]]).unwrap();
        let m = RationalSubspace::from_i64(&[vec![1, 1]]).unwrap();
        assert_eq!(intersection_dimension(&l, &m).unwrap(), 0);

        let l = SubspaceBasis::new(vec![
            vec![q(1), q(0), r2(), q(0)],
            vec![q(0), q(1), q(0), r2()],
        ])
        .unwrap();
        let m = RationalSubspace::from_i64(&[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        assert_eq!(intersection_dimension(&l, &m).unwrap(), 1);
    }

    #[test]
    fn profile_examples() {
        let l = SubspaceBasis::new(vec![vec![r2(), q(1)]]).unwrap();
        let p = irrationality_profile(&l, 10, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(p.certified_m, 1);
        assert!(p.completely_irrational_certificate);

        let l = SubspaceBasis::new(vec![vec![q(1), q(2)]]).unwrap();
        let p = irrationality_profile(&l, 10, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(p.certified_m, 0);
        let b = p.blocking.unwrap();
        assert_eq!(b.subspace.m, 1);
        assert_eq!(b.subspace.basis_height, 2);
    }

    #[test]
    fn witness_examples() {
        let l = SubspaceBasis::new(vec![vec![q(1), q(2)]]).unwrap();
        assert_eq!(partial_irrationality_witness(&l, &[0, 1]).unwrap(), None);

        let l = SubspaceBasis::new(vec![vec![r2(), q(1)]]).unwrap();
        let w = partial_irrationality_witness(&l, &[0]).unwrap().unwrap();
        assert!(w.trivial);
        assert_eq!(w.m, 0);

        let l2 = SubspaceBasis::new(vec![vec![q(1), q(0), q(3)], vec![q(0), q(1), q(5)]]).unwrap();
        assert!(partial_irrationality_witness(&l2, &[0]).is_err());
    }
}

//! Matrix text form: rows separated by `;` or newlines, entries by `,`,
//! optional surrounding brackets. Entries are `p/q`, `p`, `a+b*sqrt(D)`, or a
//! decimal prefixed with `~` (inexact; carried as the rational it denotes).

use crate::approx::TargetMatrix;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct SpecEntry {
    pub value: ExactScalar,
    pub inexact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSpec {
    pub rows: Vec<Vec<SpecEntry>>,
}

impl MatrixSpec {
    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn is_inexact(&self) -> bool {
        self.rows.iter().flatten().any(|e| e.inexact)
    }

    pub fn values(&self) -> Vec<Vec<ExactScalar>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|e| e.value.clone()).collect())
            .collect()
    }

    pub fn to_target(&self, precision: u32) -> Result<TargetMatrix> {
        TargetMatrix::new(self.values())?
            .with_precision(precision)
            .map(|t| t.mark_inexact(self.is_inexact()))
    }

    /// All entries of a single row or column, for vector targets.
    pub fn as_vector(&self) -> Result<Vec<ExactScalar>> {
        if self.m() == 1 {
            Ok(self.rows[0].iter().map(|e| e.value.clone()).collect())
        } else if self.n() == 1 {
            Ok(self.rows.iter().map(|r| r[0].value.clone()).collect())
        } else {
            Err(Error::precondition("expected a single row or column"))
        }
    }
}

impl fmt::Display for MatrixSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match (&e.value, e.inexact) {
                        (ExactScalar::Rational(q), true) => format!("~{}", decimal_string(q)),
                        (v, _) => v.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

/// Exact decimal expansion of a rational whose denominator divides a power of 10.
fn decimal_string(q: &BigRational) -> String {
    let mut k = 0usize;
    let mut scale = BigInt::one();
    while !(q.numer() * &scale).is_multiple_of(q.denom()) {
        scale *= 10;
        k += 1;
    }
    let n = q.numer() * &scale / q.denom();
    let neg = n.is_negative();
    let digits = n.abs().to_string();
    let digits = format!("{:0>width$}", digits, width = k + 1);
    let (int, frac) = digits.split_at(digits.len() - k);
    let sign = if neg { "-" } else { "" };
    if k == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn parse_decimal(s: &str) -> std::result::Result<BigRational, String> {
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mant, exp) = match body.find(['e', 'E']) {
        Some(i) => (
            &body[..i],
            body[i + 1..]
                .parse::<i32>()
                .map_err(|_| format!("bad exponent in {s:?}"))?,
        ),
        None => (body, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty()
        || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit())
    {
        return Err(format!("expected decimal literal, found {s:?}"));
    }
    let digits: BigInt = format!("0{int}{frac}").parse().expect("digits");
    let e = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let v = if e >= 0 {
        BigRational::from_integer(digits * ten.pow(e as u32))
    } else {
        BigRational::new(digits, ten.pow((-e) as u32))
    };
    Ok(if sign < 0 { -v } else { v })
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a matrix; mixing exact and `~` entries needs `allow_mixed`.
/// Line and column in errors are 1-based.
pub fn parse_matrix_spec(text: &str, allow_mixed: bool) -> Result<MatrixSpec> {
    let mut rows: Vec<Vec<SpecEntry>> = vec![];
    let mut line = 1;
    let mut line_start = 0;
    let mut cell_start = 0;
    let mut row: Vec<SpecEntry> = vec![];
    let push_cell = |start: usize, end: usize, line: usize, line_start: usize, row: &mut Vec<SpecEntry>| -> Result<()> {
        let raw = &text[start..end];
        let t = raw.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() {
            return Ok(());
        }
        let col = start - line_start + raw.find(t).unwrap_or(0) + 1;
        let entry = if let Some(dec) = t.strip_prefix('~') {
            let q = parse_decimal(dec.trim()).map_err(|m| perr(line, col, m))?;
            SpecEntry {
                value: ExactScalar::Rational(q),
                inexact: true,
            }
        } else {
            let v = ExactScalar::parse(t).map_err(|(c, m)| perr(line, col + c, m))?;
            SpecEntry {
                value: v,
                inexact: false,
            }
        };
        row.push(entry);
        Ok(())
    };
    for (i, ch) in text.char_indices() {
        match ch {
            ',' => {
                push_cell(cell_start, i, line, line_start, &mut row)?;
                cell_start = i + 1;
            }
            ';' | '\n' => {
                push_cell(cell_start, i, line, line_start, &mut row)?;
                cell_start = i + 1;
                if !row.is_empty() {
                    rows.push(std::mem::take(&mut row));
                }
                if ch == '\n' {
                    line += 1;
                    line_start = i + 1;
                }
            }
            _ => {}
        }
    }
    push_cell(cell_start, text.len(), line, line_start, &mut row)?;
    if !row.is_empty() {
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(perr(1, 1, "empty matrix"));
    }
    let n = rows[0].len();
    if let Some(k) = rows.iter().position(|r| r.len() != n) {
        return Err(perr(1, 1, format!("row {} has {} entries, expected {n}", k + 1, rows[k].len())));
    }
    let spec = MatrixSpec { rows };
    let inexact = spec.rows.iter().flatten().filter(|e| e.inexact).count();
    let total = spec.m() * spec.n();
    if inexact > 0 && inexact < total && !allow_mixed {
        return Err(Error::precondition(
            "matrix mixes exact and '~' entries; pass --allow-mixed to accept",
        ));
    }
    // a single common field is required downstream
    crate::scalar::FieldContext::join_all(spec.rows.iter().flatten().map(|e| &e.value))?;
    Ok(spec)
}

/// Parses a univariate integer polynomial in `x`, e.g. `x^4 - x^3 - 1`;
/// returns coefficients lowest degree first.
pub fn parse_minpoly(text: &str) -> Result<Vec<i64>> {
    let p = crate::multipoly::MultiPolynomial::parse(&text.replace('x', "z1"), Some(1))?;
    let deg = p.degree() as usize;
    let mut out = vec![0i64; deg + 1];
    for (e, c) in p.terms() {
        if !c.is_integer() {
            return Err(Error::precondition("minimal polynomial needs integer coefficients"));
        }
        out[e[0] as usize] = c
            .to_integer()
            .try_into()
            .map_err(|_| Error::precondition("coefficient out of range"))?;
    }
    if deg == 0 || out.iter().all(|c| c.is_zero()) {
        return Err(Error::precondition("minimal polynomial must be nonconstant"));
    }
    Ok(out)
}

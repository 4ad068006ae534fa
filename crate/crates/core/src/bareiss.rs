//! Fraction-free (Bareiss) Gaussian elimination over arbitrary-precision integers.
//!
//! Every intermediate value stays an integer: after step `k` each entry of the
//! working matrix is a `(k+1) x (k+1)` minor of the input, so the division by the
//! previous pivot is always exact. Solutions are reported as an integer matrix `X`
//! together with a common denominator `D`, so that `A X = D B`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EliminationError {
    #[error("matrix is not square ({rows} rows, row {row} has {cols} columns)")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("right-hand side column {column} has length {len}, expected {expected}")]
    RhsShape { column: usize, len: usize, expected: usize },
    #[error("matrix is singular")]
    Singular,
}

/// Result of a fraction-free solve: `matrix * columns[c] = denominator * rhs[c]`.
#[derive(Debug, Clone)]
pub struct FractionFreeSolution {
    /// Positive common denominator; equals `|det A|`.
    pub denominator: BigInt,
    /// One integer solution vector per right-hand side column.
    pub columns: Vec<Vec<BigInt>>,
    /// Pivots in elimination order (the successive leading principal minors when
    /// no row exchange was needed).
    pub pivots: Vec<BigInt>,
    /// Whether any row exchange happened.
    pub pivoted: bool,
}

/// Solves `a * x = rhs[c]` for every column `c` without leaving the integers.
pub fn solve(a: &[Vec<BigInt>], rhs: &[Vec<BigInt>]) -> Result<FractionFreeSolution, EliminationError> {
    let n = a.len();
    for (row, r) in a.iter().enumerate() {
        if r.len() != n {
            return Err(EliminationError::NotSquare { rows: n, row, cols: r.len() });
        }
    }
    for (column, c) in rhs.iter().enumerate() {
        if c.len() != n {
            return Err(EliminationError::RhsShape { column, len: c.len(), expected: n });
        }
    }
    if n == 0 {
        return Ok(FractionFreeSolution {
            denominator: BigInt::one(),
            columns: rhs.iter().map(|_| Vec::new()).collect(),
            pivots: Vec::new(),
            pivoted: false,
        });
    }

    let m = rhs.len();
    let width = n + m;
    let mut w: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend(a[i].iter().cloned());
            row.extend(rhs.iter().map(|c| c[i].clone()));
            row
        })
        .collect();

    let mut prev = BigInt::one();
    let mut pivots = Vec::with_capacity(n);
    let mut pivoted = false;
    for k in 0..n {
        if w[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !w[i][k].is_zero()).ok_or(EliminationError::Singular)?;
            w.swap(k, swap);
            pivoted = true;
        }
        pivots.push(w[k][k].clone());
        let (upper, lower) = w.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..width {
                let v = &row[j] * &pivot_row[k] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }

    let mut last = w[n - 1][n - 1].clone();
    let flip = last.is_negative();
    if flip {
        last = -last;
    }

    let mut columns = Vec::with_capacity(m);
    for c in 0..m {
        let mut x = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut acc = &last * &w[i][n + c];
            for j in i + 1..n {
                acc -= &w[i][j] * &x[j];
            }
            x[i] = acc / &w[i][i];
        }
        columns.push(x);
    }

    Ok(FractionFreeSolution { denominator: last, columns, pivots, pivoted })
}

/// Determinant by fraction-free elimination.
pub fn determinant(a: &[Vec<BigInt>]) -> Result<BigInt, EliminationError> {
    let n = a.len();
    for (row, r) in a.iter().enumerate() {
        if r.len() != n {
            return Err(EliminationError::NotSquare { rows: n, row, cols: r.len() });
        }
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(signed_determinant(a, n))
}

fn signed_determinant(a: &[Vec<BigInt>], n: usize) -> BigInt {
    let mut w: Vec<Vec<BigInt>> = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if w[k][k].is_zero() {
            match (k + 1..n).find(|&i| !w[i][k].is_zero()) {
                Some(s) => {
                    w.swap(k, s);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                w[i][j] = v / &prev;
            }
            w[i][k] = BigInt::zero();
        }
        prev = w[k][k].clone();
    }
    sign * &w[n - 1][n - 1]
}

//! Small dense exact-rational matrix helpers shared by the lattice and
//! isometry modules. Ranks in practice are ≤ 24, so nothing clever here.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratio::{int, Rational};

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { int(1) } else { int(0) }).collect())
        .collect()
}

pub fn shape_ok(m: &Matrix, rows: usize, cols: usize) -> bool {
    m.len() == rows && m.iter().all(|r| r.len() == cols)
}

pub fn is_symmetric(m: &Matrix) -> bool {
    let n = m.len();
    if !shape_ok(m, n, n) {
        return false;
    }
    (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let (rows, cols) = (m.len(), m[0].len());
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j].clone()).collect())
        .collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let inner = a.first().map_or(0, Vec::len);
    if b.len() != inner {
        return Err(Error::Arity {
            expected: inner,
            found: b.len(),
        });
    }
    let cols = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![int(0); cols]; a.len()];
    for (i, row) in a.iter().enumerate() {
        for (k, aik) in row.iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                out[i][j] += aik * bkj;
            }
        }
    }
    Ok(out)
}

pub fn mul_vec(a: &Matrix, v: &[Rational]) -> Result<Vec<Rational>> {
    let inner = a.first().map_or(0, Vec::len);
    if v.len() != inner {
        return Err(Error::Arity {
            expected: inner,
            found: v.len(),
        });
    }
    Ok(a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect())
}

/// Exact inverse by Gauss-Jordan elimination.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    if !shape_ok(m, n, n) {
        return Err(Error::InvalidInput("inverse of a non-square matrix".into()));
    }
    let mut a = m.clone();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidInput("singular matrix has no inverse".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] -= t;
                let t = &inv[col][j] * &f;
                inv[r][j] -= t;
            }
        }
    }
    Ok(inv)
}

/// Rank by fraction-free Gaussian elimination (exact).
pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let p = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for j in col..cols {
                let t = &a[rank][j] * &f;
                a[r][j] -= t;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

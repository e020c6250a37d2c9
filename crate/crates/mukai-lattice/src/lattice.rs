//! Symmetric bilinear spaces with exact Gram matrices.
//!
//! A [`BilinearSpace`] is a based rational quadratic space: an ordered list
//! of basis labels together with a symmetric Gram matrix. Vectors are plain
//! coordinate tuples; every operation takes the space explicitly and checks
//! coordinate arity, so vectors never migrate silently between spaces.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::ratio::{int, render, Rational};

/// A based symmetric bilinear space over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearSpace {
    labels: Vec<String>,
    gram: Matrix,
}

impl BilinearSpace {
    /// Builds a space, checking that the Gram matrix is square, symmetric
    /// and sized like the label list.
    pub fn new(labels: Vec<String>, gram: Matrix) -> Result<Self> {
        let n = labels.len();
        if !matrix::shape_ok(&gram, n, n) {
            return Err(Error::InvalidInput(format!(
                "gram matrix must be {n}x{n} to match {n} basis labels"
            )));
        }
        if !matrix::is_symmetric(&gram) {
            return Err(Error::InvalidInput("gram matrix is not symmetric".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate basis label '{l}'")));
            }
        }
        Ok(Self { labels, gram })
    }

    /// Convenience constructor from integer Gram entries.
    pub fn from_ints(labels: &[&str], gram: &[&[i64]]) -> Result<Self> {
        Self::new(
            labels.iter().map(|s| s.to_string()).collect(),
            gram.iter()
                .map(|row| row.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn zero_vector(&self) -> LatticeVector {
        LatticeVector::zero(self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Result<LatticeVector> {
        if i >= self.dim() {
            return Err(Error::Arity {
                expected: self.dim(),
                found: i,
            });
        }
        let mut coords = vec![int(0); self.dim()];
        coords[i] = int(1);
        Ok(LatticeVector::new(coords))
    }

    /// Vector from `(label, coefficient)` pairs; unlisted labels get 0.
    pub fn vector(&self, terms: &[(&str, Rational)]) -> Result<LatticeVector> {
        let mut coords = vec![int(0); self.dim()];
        for (label, c) in terms {
            let i = self
                .label_index(label)
                .ok_or_else(|| Error::InvalidInput(format!("unknown basis label '{label}'")))?;
            coords[i] += c;
        }
        Ok(LatticeVector::new(coords))
    }

    fn check(&self, v: &LatticeVector) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::Arity {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// The bilinear form: vᵀ·gram·w. Symmetric in its arguments.
    pub fn pair(&self, v: &LatticeVector, w: &LatticeVector) -> Result<Rational> {
        self.check(v)?;
        self.check(w)?;
        let mut acc = int(0);
        for (i, vi) in v.coords.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.coords.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                acc += vi * &self.gram[i][j] * wj;
            }
        }
        Ok(acc)
    }

    /// The quadratic form q(v) = pair(v, v).
    pub fn q(&self, v: &LatticeVector) -> Result<Rational> {
        self.pair(v, v)
    }

    /// Renders a vector as a linear combination of the basis labels.
    pub fn render_vector(&self, v: &LatticeVector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in v.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            push_term(&mut out, c, &self.labels[i]);
        }
        out
    }
}

pub(crate) fn push_term(out: &mut String, c: &Rational, label: &str) {
    let neg = c < &int(0);
    let abs = if neg { -c.clone() } else { c.clone() };
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if abs != int(1) || label.is_empty() {
        let coeff = render(&abs);
        let spaced = coeff.contains('/') && !label.is_empty();
        out.push_str(&coeff);
        if spaced {
            out.push(' ');
        }
    }
    out.push_str(label);
}

/// A coordinate vector over some [`BilinearSpace`] basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    coords: Vec<Rational>,
}

impl LatticeVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![int(0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::Arity {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coords.iter().map(|x| x * c).collect())
    }
}

/// Exact isometry check: `map` (shape dim(dst) × dim(src), columns are the
/// images of the source basis) preserves the forms iff
/// mapᵀ·gram_dst·map = gram_src entrywise.
pub fn is_isometry(src: &BilinearSpace, dst: &BilinearSpace, map: &Matrix) -> Result<bool> {
    if !matrix::shape_ok(map, dst.dim(), src.dim()) {
        return Err(Error::Arity {
            expected: dst.dim() * src.dim(),
            found: map.len() * map.first().map_or(0, Vec::len),
        });
    }
    let pulled = matrix::mul(&matrix::transpose(map), &matrix::mul(dst.gram(), map)?)?;
    Ok(&pulled == src.gram())
}

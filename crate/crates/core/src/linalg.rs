//! Dense linear algebra over the ground field and linear coordinate changes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Ring};
use crate::scalar::{Field, Scalar};

pub type ScalarMatrix = Vec<Vec<Scalar>>;

/// Reduces `mat` in place to reduced row echelon form; returns the pivot columns.
pub fn row_reduce(mat: &mut ScalarMatrix) -> Vec<usize> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].inv();
        for x in mat[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                for k in c..cols {
                    let v = &mat[r][k] * &factor;
                    mat[i][k] = &mat[i][k] - &v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(mat: &ScalarMatrix) -> usize {
    let mut m = mat.clone();
    row_reduce(&mut m).len()
}

pub fn determinant(field: Field, mat: &ScalarMatrix) -> Scalar {
    let n = mat.len();
    let mut m = mat.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return field.zero();
        };
        if p != c {
            m.swap(p, c);
            det = -&det;
        }
        det = &det * &m[c][c];
        let inv = m[c][c].inv();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] * &inv;
            for k in c..n {
                let v = &m[c][k] * &factor;
                m[i][k] = &m[i][k] - &v;
            }
        }
    }
    det
}

pub fn inverse(field: Field, mat: &ScalarMatrix) -> Option<ScalarMatrix> {
    let n = mat.len();
    let mut aug: ScalarMatrix = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul(a: &ScalarMatrix, b: &ScalarMatrix, field: Field) -> ScalarMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(field.zero(), |acc, k| &acc + &(&row[k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Basis of the right kernel `{v : mat·v = 0}`.
pub fn kernel(field: Field, mat: &ScalarMatrix, cols: usize) -> Vec<Vec<Scalar>> {
    let mut m = mat.clone();
    let pivots = row_reduce(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][f];
            }
            v
        })
        .collect()
}

/// An invertible substitution `x_i ↦ Σ_j T[i][j] x_j`, with its inverse cached.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearChange {
    field: Field,
    mat: ScalarMatrix,
    inv: ScalarMatrix,
}

impl LinearChange {
    pub fn new(field: Field, mat: ScalarMatrix) -> Result<Self> {
        let n = mat.len();
        if n == 0 || mat.iter().any(|r| r.len() != n) {
            return Err(Error::Spec("linear change must be a square matrix".into()));
        }
        let inv = inverse(field, &mat).ok_or_else(|| Error::Spec("singular linear change".into()))?;
        Ok(LinearChange { field, mat, inv })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let mat = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::new(field, mat)
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mat: ScalarMatrix =
            (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        LinearChange { field, inv: mat.clone(), mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.mat[i][j]
    }

    pub fn matrix(&self) -> &ScalarMatrix {
        &self.mat
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange { field: self.field, mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn image_of_var(&self, ring: &Arc<Ring>, i: usize) -> Polynomial {
        let terms = (0..self.dim())
            .map(|j| (crate::monomial::Monomial::var(ring.nvars(), j), self.mat[i][j].clone()))
            .collect::<Vec<_>>();
        Polynomial::from_terms(ring, terms)
    }
}

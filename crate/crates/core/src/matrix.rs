//! Matrices of homogeneous polynomials with row and column twists.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{same_ring, Polynomial, Ring};

/// Entry `(i, j)` is zero or homogeneous of degree `col_twists[j] - row_twists[i]`.
///
/// Columns are thought of as images of basis vectors of `⊕ R(-col_twists[j])`
/// inside `⊕ R(-row_twists[i])`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMatrix {
    ring: Arc<Ring>,
    entries: Vec<Vec<Polynomial>>,
    row_twists: Vec<i64>,
    col_twists: Vec<i64>,
}

impl GradedMatrix {
    pub fn new(
        ring: &Arc<Ring>,
        entries: Vec<Vec<Polynomial>>,
        row_twists: Vec<i64>,
        col_twists: Vec<i64>,
    ) -> Result<Self> {
        if entries.len() != row_twists.len() || entries.iter().any(|r| r.len() != col_twists.len()) {
            return Err(Error::Spec("matrix shape does not match its twists".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if !same_ring(e.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
                if e.is_zero() {
                    continue;
                }
                let want = col_twists[j] - row_twists[i];
                if e.homogeneous_degree().map(|d| d as i64) != Some(want) {
                    return Err(Error::NotHomogeneous(format!(
                        "entry ({i}, {j}) = {e} should be homogeneous of degree {want}"
                    )));
                }
            }
        }
        Ok(GradedMatrix { ring: ring.clone(), entries, row_twists, col_twists })
    }

    /// Infers column twists from the first nonzero entry of each column.
    pub fn with_row_twists(ring: &Arc<Ring>, entries: Vec<Vec<Polynomial>>, row_twists: Vec<i64>) -> Result<Self> {
        let cols = entries.first().map_or(0, |r| r.len());
        let mut col_twists = vec![0i64; cols];
        for (j, t) in col_twists.iter_mut().enumerate() {
            let found = (0..entries.len()).find_map(|i| {
                entries[i][j].homogeneous_degree().map(|d| d as i64 + row_twists[i])
            });
            *t = found.unwrap_or(0);
        }
        Self::new(ring, entries, row_twists, col_twists)
    }

    /// A single row `[f_1 ... f_k]` mapping onto `R` (row twist 0).
    pub fn row(ring: &Arc<Ring>, forms: &[Polynomial]) -> Result<Self> {
        Self::with_row_twists(ring, vec![forms.to_vec()], vec![0])
    }

    pub fn zero(ring: &Arc<Ring>, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Self {
        let entries = row_twists.iter().map(|_| col_twists.iter().map(|_| Polynomial::zero(ring)).collect()).collect();
        GradedMatrix { ring: ring.clone(), entries, row_twists, col_twists }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.row_twists.len()
    }

    pub fn cols(&self) -> usize {
        self.col_twists.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn row_twists(&self) -> &[i64] {
        &self.row_twists
    }

    pub fn col_twists(&self) -> &[i64] {
        &self.col_twists
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|e| e.is_zero()))
    }

    /// True when some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().any(|r| r.iter().any(|e| e.constant_value().is_some()))
    }

    /// Matrix product; the column twists of `self` must equal the row twists of `other`.
    pub fn mul(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.col_twists != other.row_twists {
            return Err(Error::Spec("incompatible twists in matrix product".into()));
        }
        let entries = (0..self.rows())
            .map(|i| {
                (0..other.cols())
                    .map(|j| {
                        let mut acc = Polynomial::zero(&self.ring);
                        for k in 0..self.cols() {
                            if !self.entries[i][k].is_zero() && !other.entries[k][j].is_zero() {
                                acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(GradedMatrix {
            ring: self.ring.clone(),
            entries,
            row_twists: self.row_twists.clone(),
            col_twists: other.col_twists.clone(),
        })
    }

    /// `[self | other]`; both must share row twists.
    pub fn hconcat(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.row_twists != other.row_twists {
            return Err(Error::Spec("row twists differ in horizontal concatenation".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        let mut col_twists = self.col_twists.clone();
        col_twists.extend(&other.col_twists);
        Ok(GradedMatrix { ring: self.ring.clone(), entries, row_twists: self.row_twists.clone(), col_twists })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> GradedMatrix {
        GradedMatrix {
            ring: self.ring.clone(),
            entries: rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
            row_twists: rows.iter().map(|&i| self.row_twists[i]).collect(),
            col_twists: cols.iter().map(|&j| self.col_twists[j]).collect(),
        }
    }

    pub fn transpose_entries(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    /// Determinant of a square matrix (fraction-free elimination).
    pub fn determinant(&self) -> Result<Polynomial> {
        if self.rows() != self.cols() {
            return Err(Error::Spec("determinant of a non-square matrix".into()));
        }
        Ok(det(&self.ring, self.entries.clone()))
    }

    /// All `k × k` minors, rows and columns in lexicographic order of index sets.
    pub fn minors(&self, k: usize) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for rs in combinations(self.rows(), k) {
            for cs in combinations(self.cols(), k) {
                let sub: Vec<Vec<Polynomial>> =
                    rs.iter().map(|&i| cs.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
                out.push(det(&self.ring, sub));
            }
        }
        out
    }

    /// For an `m × (m-1)` matrix: `(-1)^i det(matrix without row i)`, `i = 0..m`.
    pub fn signed_maximal_minors(&self) -> Result<Vec<Polynomial>> {
        let m = self.rows();
        if self.cols() + 1 != m {
            return Err(Error::Spec("signed maximal minors need an m x (m-1) matrix".into()));
        }
        let cols: Vec<usize> = (0..m - 1).collect();
        Ok((0..m)
            .map(|i| {
                let rows: Vec<usize> = (0..m).filter(|&r| r != i).collect();
                let d = det(&self.ring, self.submatrix(&rows, &cols).entries);
                if i % 2 == 0 {
                    d
                } else {
                    -&d
                }
            })
            .collect())
    }
}

/// Index subsets of size `k` of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Bareiss fraction-free determinant; every division is exact.
fn det(ring: &Arc<Ring>, mut a: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = !sign;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("same ring").expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

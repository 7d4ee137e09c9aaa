//! Generic central arrangements of linear forms.
//!
//! After normalizing `l_i = x_i` for `i ≤ n`, the remaining forms are `A·x`. The
//! (m−1)-fold products have the linear Hilbert–Burch matrix Γ, and
//! `𝔖 = [−A | I]·Γ` has maximal minors generating `𝔪^{m−n}`.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, ideal_power_product, IdealBasis};
use crate::linalg::{determinant, inverse, mat_mul, LinearChange, ScalarMatrix};
use crate::matrix::{combinations, GradedMatrix};
use crate::monomial::{binomial, Monomial, MonomialOrder};
use crate::poly::{product, Polynomial, Ring};
use crate::random::random_scalar;
use crate::resolution::BettiTable;

/// Sampling attempts before giving up on a generic draw.
pub const GENERIC_RETRIES: usize = 100;

#[derive(Clone, Debug)]
pub struct Arrangement {
    ring: Arc<Ring>,
    forms: Vec<Polynomial>,
    coeffs: ScalarMatrix,
}

impl Arrangement {
    /// Forms must be nonzero linear forms; genericity is tested separately.
    pub fn new(ring: &Arc<Ring>, forms: Vec<Polynomial>) -> Result<Self> {
        let n = ring.nvars();
        let mut coeffs = Vec::with_capacity(forms.len());
        for l in &forms {
            if !crate::poly::same_ring(l.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if l.homogeneous_degree() != Some(1) {
                return Err(Error::Spec(format!("'{l}' is not a nonzero linear form")));
            }
            coeffs.push((0..n).map(|j| l.coefficient(&Monomial::var(n, j))).collect());
        }
        if forms.is_empty() {
            return Err(Error::Spec("an arrangement needs at least one form".into()));
        }
        Ok(Arrangement { ring: ring.clone(), forms, coeffs })
    }

    pub fn parse(ring: &Arc<Ring>, forms: &[&str]) -> Result<Self> {
        let forms = forms.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<_>>()?;
        Self::new(ring, forms)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    pub fn m(&self) -> usize {
        self.forms.len()
    }

    /// The m×n matrix Θ of coefficients (row i holds `l_i`).
    pub fn coefficient_matrix(&self) -> &ScalarMatrix {
        &self.coeffs
    }

    /// `F = l_1 ⋯ l_m`.
    pub fn defining_polynomial(&self) -> Polynomial {
        product(&self.ring, &self.forms)
    }

    /// `J_F`.
    pub fn jacobian_ideal(&self) -> Result<IdealBasis> {
        IdealBasis::new(&self.ring, self.defining_polynomial().gradient())
    }

    /// Ideal of the (m−1)-fold products `F / l_i`.
    pub fn fold_product_ideal(&self) -> Result<IdealBasis> {
        let gens = (0..self.m())
            .map(|i| {
                let rest: Vec<Polynomial> =
                    self.forms.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, l)| l.clone()).collect();
                product(&self.ring, &rest)
            })
            .collect();
        IdealBasis::new(&self.ring, gens)
    }

    /// `l_i = x_i` for `i ≤ n`.
    pub fn is_normalized(&self) -> bool {
        let n = self.n();
        self.m() >= n && (0..n).all(|i| self.forms[i] == Polynomial::var(&self.ring, i))
    }
}

/// Every n×n minor of the coefficient matrix is nonzero.
pub fn is_generic(arr: &Arrangement) -> Result<bool> {
    let (n, m) = (arr.n(), arr.m());
    if m < n {
        return Err(Error::hypothesis(format!("genericity needs m ≥ n, got m = {m}, n = {n}")));
    }
    let field = arr.ring.field();
    Ok(combinations(m, n).iter().all(|rows| {
        let sub: ScalarMatrix = rows.iter().map(|&r| arr.coeffs[r].clone()).collect();
        !determinant(field, &sub).is_zero()
    }))
}

/// The (m−n)×n matrix with `(l_{n+1}, …, l_m)ᵗ = A·x` after normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientMatrixA(pub ScalarMatrix);

impl CoefficientMatrixA {
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn cols(&self) -> usize {
        self.0.first().map_or(0, |r| r.len())
    }

    /// Whether every square minor, of every size, is nonzero.
    pub fn all_minors_nonzero(&self, field: crate::scalar::Field) -> bool {
        let (r, c) = (self.rows(), self.cols());
        (1..=r.min(c)).all(|k| {
            combinations(r, k).iter().all(|rows| {
                combinations(c, k).iter().all(|cols| {
                    let sub: ScalarMatrix =
                        rows.iter().map(|&i| cols.iter().map(|&j| self.0[i][j].clone()).collect()).collect();
                    !determinant(field, &sub).is_zero()
                })
            })
        })
    }
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub arrangement: Arrangement,
    /// Substitution `x ↦ T·x` taking the input to the normalized arrangement.
    pub change: LinearChange,
    pub a: CoefficientMatrixA,
}

/// Changes coordinates so that `l_1, …, l_n` become `x_1, …, x_n`.
pub fn normalize_to_coordinates(arr: &Arrangement) -> Result<Normalized> {
    if !is_generic(arr)? {
        return Err(Error::hypothesis("arrangement is not generic"));
    }
    let (n, field) = (arr.n(), arr.ring.field());
    let top: ScalarMatrix = arr.coeffs[..n].to_vec();
    let t = inverse(field, &top).ok_or_else(|| Error::Inconsistent("leading n forms are dependent".into()))?;
    let change = LinearChange::new(field, t.clone())?;
    let forms = arr.forms.iter().map(|l| l.substitute_linear(&change)).collect::<Result<Vec<_>>>()?;
    let normalized = Arrangement::new(&arr.ring, forms)?;
    if !normalized.is_normalized() {
        return Err(Error::Inconsistent("coordinate change did not normalize the first n forms".into()));
    }
    let a = CoefficientMatrixA(mat_mul(&arr.coeffs[n..].to_vec(), &t, field));
    if a.0 != normalized.coeffs[n..] {
        return Err(Error::Inconsistent("A disagrees with the transformed forms".into()));
    }
    if !a.all_minors_nonzero(field) {
        return Err(Error::Inconsistent("a minor of A vanishes for a generic arrangement".into()));
    }
    Ok(Normalized { arrangement: normalized, change, a })
}

/// Γ: the m×(m−1) matrix with diagonal `−l_1, …, −l_{m−1}` and last row `l_m`.
pub fn build_gamma(arr: &Arrangement) -> Result<GradedMatrix> {
    let m = arr.m();
    if m < 2 {
        return Err(Error::hypothesis("Γ needs at least two forms"));
    }
    let ring = &arr.ring;
    let entries = (0..m)
        .map(|i| {
            (0..m - 1)
                .map(|j| {
                    if i == m - 1 {
                        arr.forms[m - 1].clone()
                    } else if i == j {
                        -&arr.forms[i]
                    } else {
                        Polynomial::zero(ring)
                    }
                })
                .collect()
        })
        .collect();
    GradedMatrix::new(ring, entries, vec![m as i64 - 1; m], vec![m as i64; m - 1])
}

fn scalar_times_gamma(ring: &Arc<Ring>, s: &ScalarMatrix, gamma: &GradedMatrix) -> Result<GradedMatrix> {
    let entries = s
        .iter()
        .map(|row| {
            (0..gamma.cols())
                .map(|j| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .fold(Polynomial::zero(ring), |acc, (k, c)| &acc + &gamma.entry(k, j).scale(c))
                })
                .collect()
        })
        .collect();
    GradedMatrix::new(ring, entries, vec![0; s.len()], vec![1; gamma.cols()])
}

/// `𝔖 = [−A | I_{m−n}]·Γ`, an (m−n)×(m−1) matrix of linear forms.
pub fn build_frak_s(arr: &Arrangement) -> Result<GradedMatrix> {
    let (n, m) = (arr.n(), arr.m());
    if m < n + 1 {
        return Err(Error::hypothesis(format!("𝔖 needs m ≥ n + 1, got m = {m}, n = {n}")));
    }
    if !arr.is_normalized() {
        return Err(Error::hypothesis("𝔖 needs a normalized arrangement"));
    }
    let field = arr.ring.field();
    let s: ScalarMatrix = (n..m)
        .map(|k| {
            (0..m)
                .map(|c| {
                    if c < n {
                        -&arr.coeffs[k][c]
                    } else if c == k {
                        field.one()
                    } else {
                        field.zero()
                    }
                })
                .collect()
        })
        .collect();
    scalar_times_gamma(&arr.ring, &s, &build_gamma(arr)?)
}

/// 𝔖′: the first n rows of Γ.
pub fn build_frak_s_prime(arr: &Arrangement) -> Result<GradedMatrix> {
    let g = build_gamma(arr)?;
    let n = arr.n();
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..g.cols()).collect();
    let sub = g.submatrix(&rows, &cols);
    GradedMatrix::new(&arr.ring, sub.entries().to_vec(), vec![0; n], vec![1; g.cols()])
}

/// `[f_{n+1} ⋯ f_m]·𝔖 = −[∂F/∂x_1 ⋯ ∂F/∂x_n]·𝔖′`, checked exactly.
pub fn verify_frak_s_identity(arr: &Arrangement) -> Result<bool> {
    let n = arr.n();
    let s = build_frak_s(arr)?;
    let sp = build_frak_s_prime(arr)?;
    let folds = arr.fold_product_ideal()?.gens().to_vec();
    let grad = arr.defining_polynomial().gradient();
    let ring = &arr.ring;
    for j in 0..s.cols() {
        let lhs = (0..s.rows()).fold(Polynomial::zero(ring), |acc, k| &acc + &(&folds[n + k] * s.entry(k, j)));
        let rhs = (0..n).fold(Polynomial::zero(ring), |acc, i| &acc - &(&grad[i] * sp.entry(i, j)));
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I_{m−n}(𝔖) = 𝔪^{m−n}`, by two Gröbner-basis inclusions.
pub fn verify_minors_identity(arr: &Arrangement) -> Result<bool> {
    let field = arr.ring.field();
    let m = arr.m() as u64;
    if field.char_divides(m) {
        return Err(Error::Characteristic { characteristic: field.characteristic(), value: m });
    }
    let norm = if arr.is_normalized() { arr.clone() } else { normalize_to_coordinates(arr)?.arrangement };
    let s = build_frak_s(&norm)?;
    let minors = IdealBasis::new(&arr.ring, s.minors(s.rows()))?;
    let power = ideal_power_product(&IdealBasis::maximal(&arr.ring), &IdealBasis::unit(&arr.ring), (arr.m() - arr.n()) as u32, 0)?;
    Ok(minors.is_subset_of(&power)? && power.is_subset_of(&minors)?)
}

/// Minimal Betti table of `R/J_F` for a generic arrangement of m forms in n variables.
pub fn arrangement_betti_formula(n: usize, m: usize) -> Result<BettiTable> {
    if n == 0 || m <= n {
        return Err(Error::Spec(format!("the arrangement formula needs m ≥ n + 1 ≥ 2, got n = {n}, m = {m}")));
    }
    let (n_, m_) = (n as i64, m as i64);
    let mut entries = vec![(0, 0, 1), (1, m_ - 1, n as u64)];
    for i in 1..n_ {
        let rank = binomial(m_ - n_ + i - 2, i - 1) * binomial(m_ - 1, m_ - n_ + i);
        entries.push((i as usize + 1, 2 * m_ - n_ + i - 1, rank));
    }
    Ok(BettiTable::from_entries(entries))
}

/// Smallest `r ≤ r_max` with `I^{r+1} = J·I^r`, or `None` within the bound.
pub fn is_reduction(j: &IdealBasis, i: &IdealBasis, r_max: u32) -> Result<Option<u32>> {
    j.require_homogeneous()?;
    i.require_homogeneous()?;
    if !j.is_subset_of(i)? {
        return Err(Error::hypothesis("J is not contained in I"));
    }
    let ring = i.ring();
    let grevlex = MonomialOrder::grevlex();
    let mut power = IdealBasis::unit(ring);
    for r in 0..=r_max {
        let j_power = ideal_power_product(j, &power, 1, 1)?;
        let next = ideal_power_product(i, &power, 1, 1)?;
        let gb = groebner_basis(&j_power, &grevlex);
        let mut equal = true;
        for g in next.gens() {
            if !gb.contains(g)? {
                equal = false;
                break;
            }
        }
        if equal {
            return Ok(Some(r));
        }
        power = groebner_basis(&next, &grevlex).to_ideal();
    }
    Ok(None)
}

/// A random linear form.
fn random_linear(ring: &Arc<Ring>, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = ring.nvars();
    Polynomial::from_terms(ring, (0..n).map(|j| (Monomial::var(n, j), random_scalar(ring.field(), rng))))
}

/// Seeded random generic arrangement, resampled until generic.
pub fn random_generic_arrangement(ring: &Arc<Ring>, m: usize, rng: &mut ChaCha8Rng) -> Result<Arrangement> {
    for _ in 0..GENERIC_RETRIES {
        let forms: Vec<Polynomial> = (0..m).map(|_| random_linear(ring, rng)).collect();
        if forms.iter().any(|l| l.is_zero()) {
            continue;
        }
        let arr = Arrangement::new(ring, forms)?;
        if is_generic(&arr)? {
            return Ok(arr);
        }
    }
    Err(Error::BoundExceeded(format!("no generic arrangement in {GENERIC_RETRIES} draws")))
}

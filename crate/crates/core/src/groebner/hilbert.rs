//! Hilbert functions and series, dimension, multiplicity and the regular-sequence test.

use crate::error::{Error, Result};
use crate::monomial::{binomial, monomials_of_degree, Monomial, MonomialOrder};
use crate::poly::Polynomial;

use super::{groebner_basis, IdealBasis};

fn lead_ideal(ideal: &IdealBasis) -> Result<Vec<Monomial>> {
    ideal.require_homogeneous()?;
    Ok(groebner_basis(ideal, &MonomialOrder::grevlex()).leads())
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// `dim_K (R/I)_t`, counted as standard monomials of the lead-term ideal.
pub fn hilbert_function(ideal: &IdealBasis, t: u32) -> Result<u64> {
    let leads = lead_ideal(ideal)?;
    Ok(standard_monomials(&leads, ideal.ring().nvars(), t))
}

fn standard_monomials(leads: &[Monomial], n: usize, t: u32) -> u64 {
    monomials_of_degree(n, t).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count() as u64
}

/// Numerator `Q(t)` of the Hilbert series `Q(t) / (1 - t)^n` of `R/I` (coefficients by power).
pub fn hilbert_numerator(ideal: &IdealBasis) -> Result<Vec<i64>> {
    let leads = lead_ideal(ideal)?;
    Ok(trim(monomial_numerator(minimalize(leads))))
}

fn trim(mut q: Vec<i64>) -> Vec<i64> {
    while q.len() > 1 && *q.last().unwrap() == 0 {
        q.pop();
    }
    q
}

fn poly_sub_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, v) in b.iter().enumerate() {
        a[k + shift] -= v;
    }
}

/// `N(⟨m_1..m_k⟩) = N(⟨m_1..m_{k-1}⟩) − t^{deg m_k} N(⟨m_1..m_{k-1}⟩ : m_k)`.
fn monomial_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b))) {
        let mut acc = vec![1i64];
        for g in &gens {
            let mut next = acc.clone();
            poly_sub_shifted(&mut next, &acc, g.degree() as usize);
            acc = next;
        }
        return acc;
    }
    let mut rest = gens;
    let last = rest.pop().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|m| last.gcd(m).quotient_of(m)).collect();
    let mut a = monomial_numerator(rest);
    let b = monomial_numerator(minimalize(colon));
    poly_sub_shifted(&mut a, &b, last.degree() as usize);
    a
}

/// Krull dimension of `R/I` and codimension of `I`. The unit ideal has
/// dimension −1 and codimension `n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dimension {
    pub dim: i64,
    pub codim: i64,
}

pub fn krull_dimension(ideal: &IdealBasis) -> Result<Dimension> {
    let n = ideal.ring().nvars();
    let leads = minimalize(lead_ideal(ideal)?);
    Ok(dimension_of_monomial_ideal(&leads, n))
}

pub(crate) fn dimension_of_monomial_ideal(leads: &[Monomial], n: usize) -> Dimension {
    if leads.iter().any(|m| m.is_one()) {
        return Dimension { dim: -1, codim: n as i64 + 1 };
    }
    let supports: Vec<u32> =
        leads.iter().map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for set in 0u32..(1 << n) {
        let size = set.count_ones() as i64;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    Dimension { dim: best, codim: n as i64 - best }
}

/// Degree (multiplicity) of `R/I` for `dim R/I ∈ {0, 1}`.
///
/// Read off the Hilbert function: total length in dimension 0, the stable value
/// in dimension 1 (three equal consecutive values past max lead degree + n + 2),
/// cross-checked against the Hilbert-series numerator.
pub fn multiplicity_degree(ideal: &IdealBasis) -> Result<u64> {
    let n = ideal.ring().nvars();
    let leads = minimalize(lead_ideal(ideal)?);
    let d = dimension_of_monomial_ideal(&leads, n);
    let q = trim(monomial_numerator(leads.clone()));
    let via_series = multiplicity_from_numerator(&q, n, d.dim);
    let top = leads.iter().map(|m| m.degree()).max().unwrap_or(0) + n as u32 + 2;
    let via_hf = match d.dim {
        0 => (0..=top).map(|t| standard_monomials(&leads, n, t)).sum::<u64>(),
        1 => {
            let v: Vec<u64> = (top..top + 3).map(|t| standard_monomials(&leads, n, t)).collect();
            if v[0] != v[1] || v[1] != v[2] {
                return Err(Error::BoundExceeded(format!("Hilbert function not stable at degree {top}: {v:?}")));
            }
            v[0]
        }
        k => return Err(Error::hypothesis(format!("multiplicity supported for dim 0 or 1, got {k}"))),
    };
    if via_series != Some(via_hf as i64) {
        return Err(Error::Inconsistent(format!(
            "multiplicity {via_hf} disagrees with Hilbert series value {via_series:?}"
        )));
    }
    Ok(via_hf)
}

/// `(Q / (1 − t)^{n − dim})(1)`.
fn multiplicity_from_numerator(q: &[i64], n: usize, dim: i64) -> Option<i64> {
    if dim < 0 {
        return None;
    }
    let mut p = q.to_vec();
    for _ in 0..(n as i64 - dim) {
        // synthetic division by (1 - t): p = (1 - t) s  ⇔  s_k = Σ_{j<=k} p_j
        if p.iter().sum::<i64>() != 0 {
            return None;
        }
        let mut s = Vec::with_capacity(p.len());
        let mut acc = 0;
        for &c in &p[..p.len() - 1] {
            acc += c;
            s.push(acc);
        }
        p = if s.is_empty() { vec![0] } else { s };
    }
    Some(p.iter().sum())
}

/// Hilbert function values from a numerator: `Σ_k Q_k C(t − k + n − 1, n − 1)`.
pub fn hilbert_from_numerator(q: &[i64], n: usize, t: u32) -> i64 {
    q.iter()
        .enumerate()
        .filter(|(k, _)| *k as u32 <= t)
        .map(|(k, c)| c * binomial(t as i64 - k as i64 + n as i64 - 1, n as i64 - 1) as i64)
        .sum()
}

/// Whether homogeneous forms of positive degree form a regular sequence: the
/// Hilbert series numerator of `R/⟨f⟩` must equal `∏ (1 − t^{d_i})`.
pub fn is_regular_sequence(forms: &[Polynomial]) -> Result<bool> {
    let Some(first) = forms.first() else { return Ok(true) };
    if forms.iter().any(|f| f.is_zero()) {
        return Err(Error::Spec("zero form in a regular-sequence test".into()));
    }
    for f in forms {
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(f.to_string()));
        }
        if f.is_constant() {
            return Err(Error::Spec("forms must have positive degree".into()));
        }
    }
    let ring = first.ring();
    if forms.len() > ring.nvars() {
        return Ok(false);
    }
    let ideal = IdealBasis::new(ring, forms.to_vec())?;
    let q = hilbert_numerator(&ideal)?;
    let mut koszul = vec![1i64];
    for f in forms {
        let mut next = koszul.clone();
        poly_sub_shifted(&mut next, &koszul, f.degree().unwrap() as usize);
        koszul = next;
    }
    Ok(trim(koszul) == q)
}

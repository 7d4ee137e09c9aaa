//! Colon ideals, intersections, saturation, gcds and products of ideals.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, Polynomial};

use super::module::{minimal_generator_indices, syzygy_generators};
use super::{groebner_basis, IdealBasis};

fn syz_of_row(ideal_ring: &IdealBasis, row: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    let ring = ideal_ring.ring();
    let cols: Vec<Vec<Polynomial>> = row.iter().map(|p| vec![p.clone()]).collect();
    let degs: Vec<i64> = row.iter().map(|p| p.degree().unwrap_or(0) as i64).collect();
    syzygy_generators(ring, &cols, &[0], &degs, &MonomialOrder::grevlex())
        .into_iter()
        .map(|(c, _)| c)
        .collect()
}

/// Keeps a minimal generating set when all generators are homogeneous.
fn trim(ideal: IdealBasis) -> IdealBasis {
    if !ideal.is_homogeneous() || ideal.is_empty() {
        return ideal;
    }
    let vecs: Vec<Vec<Polynomial>> = ideal.gens().iter().map(|g| vec![g.clone()]).collect();
    let degs: Vec<i64> = ideal.gens().iter().map(|g| g.degree().unwrap_or(0) as i64).collect();
    let keep = minimal_generator_indices(ideal.ring(), &vecs, &degs, &[0], &MonomialOrder::grevlex());
    ideal.with_gens(keep.into_iter().map(|k| ideal.gens()[k].clone()).collect())
}

/// `(I : f) = {g : g·f ∈ I}`.
pub fn ideal_quotient(ideal: &IdealBasis, f: &Polynomial) -> Result<IdealBasis> {
    if !same_ring(f.ring(), ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::Spec("colon by the zero polynomial".into()));
    }
    let ring = ideal.ring();
    if ideal.is_empty() {
        return Ok(IdealBasis::zero(ring));
    }
    let mut row = vec![f.clone()];
    row.extend(groebner_basis(ideal, &MonomialOrder::grevlex()).polys().iter().cloned());
    let gens: Vec<Polynomial> = syz_of_row(ideal, &row).into_iter().map(|c| c[0].clone()).collect();
    Ok(trim(ideal.with_gens(gens)))
}

/// `I ∩ J`.
pub fn intersect(a: &IdealBasis, b: &IdealBasis) -> Result<IdealBasis> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring();
    if a.is_empty() || b.is_empty() {
        return Ok(IdealBasis::zero(ring));
    }
    let mut row = a.gens().to_vec();
    row.extend(b.gens().iter().cloned());
    let k = a.len();
    let gens = syz_of_row(a, &row)
        .into_iter()
        .map(|c| c[..k].iter().zip(a.gens()).fold(Polynomial::zero(ring), |acc, (s, g)| &acc + &(s * g)))
        .collect();
    Ok(trim(a.with_gens(gens)))
}

/// `I : f^∞`, by iterating colons until the ideal stabilizes.
pub fn saturate_by(ideal: &IdealBasis, f: &Polynomial) -> Result<IdealBasis> {
    let mut cur = ideal.clone();
    let mut cur_gb = groebner_basis(&cur, &MonomialOrder::grevlex());
    loop {
        let next = ideal_quotient(&cur, f)?;
        let next_gb = groebner_basis(&next, &MonomialOrder::grevlex());
        if next_gb.polys() == cur_gb.polys() {
            return Ok(cur_gb.to_ideal());
        }
        cur = next;
        cur_gb = next_gb;
    }
}

/// `I^sat = I : 𝔪^∞ = ⋂_i (I : x_i^∞)` for homogeneous `I`.
pub fn saturate_irrelevant(ideal: &IdealBasis) -> Result<IdealBasis> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let mut acc: Option<IdealBasis> = None;
    for i in 0..ring.nvars() {
        let s = saturate_by(ideal, &Polynomial::var(ring, i))?;
        acc = Some(match acc {
            None => s,
            Some(a) => intersect(&a, &s)?,
        });
    }
    let out = acc.expect("at least one variable");
    Ok(groebner_basis(&out, &MonomialOrder::grevlex()).to_ideal())
}

/// Greatest common divisor, normalized to be monic in grevlex.
///
/// Computed as `f·g / lcm(f, g)` where `⟨lcm⟩ = ⟨f⟩ ∩ ⟨g⟩`.
pub fn polynomial_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if !same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    let ring = f.ring();
    let a = IdealBasis::new(ring, vec![f.clone()])?;
    let b = IdealBasis::new(ring, vec![g.clone()])?;
    let i = intersect(&a, &b)?;
    let gb = groebner_basis(&i, &MonomialOrder::grevlex());
    let [l] = gb.polys() else {
        return Err(Error::Inconsistent("intersection of principal ideals is not principal".into()));
    };
    let h = (f * g)
        .div_exact(l)?
        .ok_or_else(|| Error::Inconsistent("lcm does not divide the product".into()))?;
    Ok(h.monic())
}

/// Generators of `I^a · J^b` (all products of generators, duplicates removed).
pub fn ideal_power_product(i: &IdealBasis, j: &IdealBasis, a: u32, b: u32) -> Result<IdealBasis> {
    if !same_ring(i.ring(), j.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = i.ring();
    let mut cur = vec![Polynomial::one(ring)];
    for (ideal, e) in [(i, a), (j, b)] {
        for _ in 0..e {
            let mut seen = HashSet::new();
            let mut next = Vec::new();
            for p in &cur {
                for g in ideal.gens() {
                    let q = (p * g).monic();
                    if seen.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            cur = next;
        }
    }
    IdealBasis::new(ring, cur)
}

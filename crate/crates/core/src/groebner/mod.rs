//! Gröbner bases of ideals and the ideal-theoretic toolbox built on them.

pub mod engine;
pub mod hilbert;
pub mod ideal;
pub mod module;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{same_ring, Polynomial, Ring};

use engine::{Engine, ModuleOrder, Vector};

pub use hilbert::{hilbert_function, hilbert_numerator, is_regular_sequence, krull_dimension, multiplicity_degree};
pub use ideal::{
    ideal_power_product, ideal_quotient, intersect, polynomial_gcd, saturate_irrelevant, saturate_by,
};

/// A finite generating set of an ideal. Zero generators are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(IdealBasis { ring: ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| Polynomial::parse(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        IdealBasis { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        IdealBasis { ring: ring.clone(), gens: vec![Polynomial::one(ring)] }
    }

    /// The irrelevant ideal `⟨x_1, …, x_n⟩`.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        IdealBasis { ring: ring.clone(), gens: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub(crate) fn require_homogeneous(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::NotHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Generator degrees (homogeneous generators).
    pub fn degrees(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.degree().unwrap_or(0)).collect()
    }

    pub fn with_gens(&self, gens: Vec<Polynomial>) -> Self {
        IdealBasis { ring: self.ring.clone(), gens: gens.into_iter().filter(|g| !g.is_zero()).collect() }
    }

    /// True when both generating sets span the same ideal.
    pub fn same_ideal(&self, other: &IdealBasis) -> Result<bool> {
        let a = groebner_basis(self, &MonomialOrder::grevlex());
        let b = groebner_basis(other, &MonomialOrder::grevlex());
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(a.polys() == b.polys())
    }

    pub fn is_subset_of(&self, other: &IdealBasis) -> Result<bool> {
        let g = groebner_basis(other, &MonomialOrder::grevlex());
        for f in &self.gens {
            if !g.contains(f)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Reduced Gröbner basis for a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    vectors: Vec<Vector>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Basis elements, monic, sorted by ascending lead monomial.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn leads(&self) -> Vec<Monomial> {
        self.vectors.iter().map(|v| v.terms[0].0).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.leads().iter().any(|m| m.is_one())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn to_ideal(&self) -> IdealBasis {
        IdealBasis { ring: self.ring.clone(), gens: self.polys.clone() }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduce(f))
    }

    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        let ord = ModuleOrder::ideal(&self.order);
        let mut v = Vector::from_poly(f, 0, &ord);
        // division by a reduced basis; no pairs are needed
        let mut k = 0;
        while k < v.terms.len() {
            let m = v.terms[k].0;
            match self.vectors.iter().find(|g| g.terms[0].0.divides(&m)) {
                Some(g) => {
                    let q = g.terms[0].0.quotient_of(&m);
                    let c = -&v.terms[k].2;
                    v = v.axpy(&q, &c, g, &ord);
                }
                None => k += 1,
            }
        }
        v.to_poly(&self.ring)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn check_spairs(&self) -> bool {
        let ord = ModuleOrder::ideal(&self.order);
        let one = self.ring.field().one();
        for (i, a) in self.vectors.iter().enumerate() {
            for b in &self.vectors[i + 1..] {
                let la = a.terms[0].0;
                let lb = b.terms[0].0;
                let l = la.lcm(&lb);
                let s = Vector::zero().axpy(&la.quotient_of(&l), &one, a, &ord).axpy(&lb.quotient_of(&l), &-&one, b, &ord);
                if !self.reduce(&s.to_poly(&self.ring)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Basis is monic, no lead divides another, and tails are reduced.
    pub fn is_reduced(&self) -> bool {
        let leads = self.leads();
        self.vectors.iter().enumerate().all(|(i, v)| {
            v.terms[0].2.is_one()
                && v.terms.iter().enumerate().all(|(k, (m, _, _))| {
                    leads.iter().enumerate().all(|(j, l)| !l.divides(m) || (j == i && k == 0))
                })
        })
    }
}

/// Reduced Gröbner basis of `ideal` for `order`.
pub fn groebner_basis(ideal: &IdealBasis, order: &MonomialOrder) -> GroebnerBasis {
    let ring = ideal.ring();
    let ord = ModuleOrder::ideal(order);
    let mut e = Engine::new(ring.nvars(), ring.field(), ord.clone(), false);
    let mut gens: Vec<&Polynomial> = ideal.gens().iter().collect();
    gens.sort_by_key(|g| (g.degree(), g.num_terms()));
    for g in gens {
        let v = Vector::from_poly(g, 0, &ord);
        e.add(v, g.degree().unwrap_or(0) as i64);
        // completing after each generator keeps the pair set small
        e.complete(None);
    }
    from_engine(ring, order, &e)
}

/// Gröbner basis truncated at degree `bound` (homogeneous input): correct in degrees `<= bound`.
pub fn truncated_groebner_basis(ideal: &IdealBasis, order: &MonomialOrder, bound: u32) -> GroebnerBasis {
    let ring = ideal.ring();
    let ord = ModuleOrder::ideal(order);
    let mut e = Engine::new(ring.nvars(), ring.field(), ord.clone(), false);
    for g in ideal.gens() {
        if g.degree().unwrap_or(0) <= bound {
            e.add(Vector::from_poly(g, 0, &ord), g.degree().unwrap_or(0) as i64);
        }
    }
    e.complete(Some(bound as i64));
    from_engine(ring, order, &e)
}

pub(crate) fn from_engine(ring: &Arc<Ring>, order: &MonomialOrder, e: &Engine) -> GroebnerBasis {
    let vectors = e.reduced_basis();
    let polys = vectors.iter().map(|v| v.to_poly(ring)).collect();
    GroebnerBasis { ring: ring.clone(), order: order.clone(), vectors, polys }
}

pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    g.normal_form(f)
}

/// Ideal membership.
pub fn contains(ideal: &IdealBasis, f: &Polynomial) -> Result<bool> {
    if !same_ring(f.ring(), ideal.ring()) {
        return Err(Error::RingMismatch);
    }
    groebner_basis(ideal, &MonomialOrder::grevlex()).contains(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use proptest::prelude::*;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::standard(Field::Rational, n)
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    #[test]
    fn reduced_examples() {
        let r = ring(2);
        let g = groebner_basis(&IdealBasis::parse(&r, &["x", "y"]).unwrap(), &MonomialOrder::grevlex());
        assert_eq!(g.polys(), &[p(&r, "y"), p(&r, "x")]);
        let g = groebner_basis(&IdealBasis::parse(&r, &["x+y", "x-y"]).unwrap(), &MonomialOrder::grevlex());
        assert_eq!(g.polys(), &[p(&r, "y"), p(&r, "x")]);
        assert!(g.is_reduced() && g.check_spairs());
    }

    #[test]
    fn line_triple_jacobian_has_pure_powers() {
        let r = ring(2);
        let i = IdealBasis::parse(&r, &["2*x*y+y^2", "x^2+2*x*y"]).unwrap();
        let g = groebner_basis(&i, &MonomialOrder::grevlex());
        // brute force: smallest k with x^k and y^k reducing to zero
        let first = |v: &str| (1..=4).find(|&k| g.normal_form(&p(&r, v).pow(k)).unwrap().is_zero());
        assert_eq!(first("x"), Some(3));
        assert_eq!(first("y"), Some(3));
        assert!(g.check_spairs());
    }

    #[test]
    fn membership_examples() {
        let r = ring(3);
        let jf = IdealBasis::parse(&r, &["5*x^4", "5*y^4", "5*z^4"]).unwrap();
        assert!(!contains(&jf, &p(&r, "x^2")).unwrap());
        let f = p(&r, "x^2+y*z");
        let grad = IdealBasis::new(&r, f.gradient()).unwrap();
        assert!(contains(&grad, &p(&r, "x^2-y*z")).unwrap());
        assert_eq!(normal_form(&p(&r, "1"), &groebner_basis(&IdealBasis::maximal(&r), &MonomialOrder::lex())).unwrap(), p(&r, "1"));
        let empty = groebner_basis(&IdealBasis::zero(&r), &MonomialOrder::grevlex());
        assert!(empty.is_zero_ideal());
    }

    #[test]
    fn unit_ideal_reduces_to_one() {
        let r = ring(2);
        let g = groebner_basis(&IdealBasis::parse(&r, &["x*y-1", "x"]).unwrap(), &MonomialOrder::grevlex());
        assert_eq!(g.polys(), &[p(&r, "1")]);
        assert!(g.is_unit());
    }

    fn arb_ideal() -> impl Strategy<Value = Vec<Polynomial>> {
        let r = Ring::standard(Field::prime(32003).unwrap(), 3);
        prop::collection::vec(
            prop::collection::vec((prop::collection::vec(0u32..3, 3), -9i64..10), 1..4),
            1..4,
        )
        .prop_map(move |gs| {
            gs.into_iter()
                .map(|ts| {
                    Polynomial::from_terms(
                        &r,
                        ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), r.field().from_i64(c))).collect::<Vec<_>>(),
                    )
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn basis_is_reduced_and_permutation_invariant(gens in arb_ideal()) {
            let r = gens[0].ring().clone();
            for order in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
                let a = groebner_basis(&IdealBasis::new(&r, gens.clone()).unwrap(), &order);
                prop_assert!(a.check_spairs());
                prop_assert!(a.is_reduced());
                let mut rev = gens.clone();
                rev.reverse();
                let scaled: Vec<Polynomial> = rev.iter().map(|g| g.scale(&r.field().from_i64(7))).collect();
                let b = groebner_basis(&IdealBasis::new(&r, scaled).unwrap(), &order);
                prop_assert_eq!(a.polys(), b.polys());
                for g in &gens {
                    prop_assert!(a.contains(g).unwrap());
                }
            }
        }

        #[test]
        fn normal_form_is_idempotent(gens in arb_ideal(), f in arb_ideal()) {
            let r = gens[0].ring().clone();
            let g = groebner_basis(&IdealBasis::new(&r, gens).unwrap(), &MonomialOrder::grevlex());
            let nf = g.normal_form(&f[0]).unwrap();
            prop_assert_eq!(g.normal_form(&nf).unwrap(), nf);
        }
    }
}

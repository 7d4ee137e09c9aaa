//! Plane quartics that are products of two smooth conics: free-divisor
//! detection and the five-way classification by `(indeg Syz(J_F), deg R/J_F)`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, multiplicity_degree, IdealBasis};
use crate::poly::{gcd, same_ring, Polynomial, Ring};
use crate::productforms::is_reduced_form;
use crate::resolution::{hilbert_burch_verify, homological_profile, indeg_syzygies, minimal_resolution, BettiTable};
use crate::scalar::Scalar;

pub use crate::productforms::is_smooth_form;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    TransversalGeneral,
    ThreeSyzygy,
    PlusOne,
    NearlyFree,
    Free,
}

impl Category {
    pub const ALL: [Category; 5] =
        [Category::TransversalGeneral, Category::ThreeSyzygy, Category::PlusOne, Category::NearlyFree, Category::Free];

    /// Row key `(e, deg R/J_F)`.
    pub fn key(self) -> (i64, u64) {
        match self {
            Category::TransversalGeneral => (2, 4),
            Category::ThreeSyzygy => (2, 5),
            Category::PlusOne => (2, 6),
            Category::NearlyFree => (1, 6),
            Category::Free => (1, 7),
        }
    }

    pub fn from_key(e: i64, deg: u64) -> Option<Category> {
        Self::ALL.into_iter().find(|c| c.key() == (e, deg))
    }

    /// Twists of the second and third free modules in the row's resolution
    /// (the first is always `R(−3)³`).
    pub fn expected_twists(self) -> (Vec<i64>, Vec<i64>) {
        match self {
            Category::TransversalGeneral => (vec![5, 6, 6, 6], vec![7, 7]),
            Category::ThreeSyzygy => (vec![5, 5, 6], vec![7]),
            Category::PlusOne => (vec![5, 5, 5], vec![6]),
            Category::NearlyFree => (vec![4, 6, 6], vec![7]),
            Category::Free => (vec![4, 5], vec![]),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::TransversalGeneral => "transversal/general",
            Category::ThreeSyzygy => "3-syzygy curve",
            Category::PlusOne => "plus-one curve",
            Category::NearlyFree => "nearly free",
            Category::Free => "free divisor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub category: Category,
    /// `indeg Syz(J_F)` above the generator degree 3.
    pub e: i64,
    /// Multiplicity of `R/J_F`.
    pub deg_jf: u64,
    /// Bourbaki degree, `7 − deg R/J_F` for this family.
    pub bourbaki: i64,
    pub betti: BettiTable,
    pub rty: bool,
}

/// Free iff `codim J_F = 2` and `pd R/J_F = 2`; a positive answer is
/// confirmed by Hilbert–Burch.
pub fn is_free_divisor(f: &Polynomial) -> Result<bool> {
    if !is_reduced_form(f)? {
        return Err(Error::hypothesis(format!("{f} is not reduced")));
    }
    let jf = IdealBasis::new(f.ring(), f.gradient())?;
    if krull_dimension(&jf)?.codim != 2 {
        return Ok(false);
    }
    let (res, _) = minimal_resolution(&jf)?;
    if res.length() != 2 {
        return Ok(false);
    }
    if !hilbert_burch_verify(&jf)? {
        return Err(Error::Inconsistent("free divisor fails Hilbert–Burch".into()));
    }
    Ok(true)
}

fn require_conic(ring: &Arc<Ring>, q: &Polynomial, name: &str) -> Result<()> {
    if !same_ring(q.ring(), ring) {
        return Err(Error::RingMismatch);
    }
    if q.is_zero() || q.homogeneous_degree() != Some(2) {
        return Err(Error::hypothesis(format!("{name} = {q} is not a quadratic form")));
    }
    if !is_smooth_form(q)? {
        return Err(Error::hypothesis(format!("{name} = {q} is not smooth")));
    }
    Ok(())
}

/// Classifies `F = f·g` for smooth coprime conics, checking the whole row.
pub fn classify_conic_pair(f: &Polynomial, g: &Polynomial) -> Result<CurveClass> {
    let ring = f.ring().clone();
    if ring.nvars() != 3 {
        return Err(Error::hypothesis(format!("conic pairs live in 3 variables, got {}", ring.nvars())));
    }
    let c = ring.field().characteristic();
    if c != 0 && c <= 7 {
        return Err(Error::Characteristic { characteristic: c, value: 7 });
    }
    require_conic(&ring, f, "f")?;
    require_conic(&ring, g, "g")?;
    if !gcd(f, g)?.is_constant() {
        return Err(Error::hypothesis("f and g share a factor"));
    }
    let product = f * g;
    let jf = IdealBasis::new(&ring, product.gradient())?;
    let e = indeg_syzygies(&jf)?;
    let deg_jf = multiplicity_degree(&jf)?;
    let prof = homological_profile(&jf)?;
    let category = Category::from_key(e, deg_jf)
        .ok_or_else(|| Error::TableViolation(format!("(e, deg) = ({e}, {deg_jf}) matches no row")))?;
    let (second, third) = category.expected_twists();
    let betti = prof.betti;
    if betti.twists(0) != [0] || betti.twists(1) != [3, 3, 3] || betti.twists(2) != second || betti.twists(3) != third
    {
        return Err(Error::TableViolation(format!("resolution of {} differs from its row:\n{betti}", category.name())));
    }
    let rty = prof.depth == 0;
    if rty == (category == Category::Free) {
        return Err(Error::TableViolation(format!("{} with rty = {rty}", category.name())));
    }
    if category != Category::TransversalGeneral && deg_jf < 5 {
        return Err(Error::TableViolation("non-transversal pair with deg R/J_F < 5".into()));
    }
    Ok(CurveClass { category, e, deg_jf, bourbaki: 7 - deg_jf as i64, betti, rty })
}

/// `(x² + yz)(x² + v·y² + yz)` is free for every nonzero `v`.
pub fn family_freeness_scan(ring: &Arc<Ring>, v_values: &[Scalar]) -> Result<Vec<bool>> {
    if ring.nvars() != 3 {
        return Err(Error::hypothesis("the conic family lives in 3 variables"));
    }
    let f = Polynomial::parse(ring, &format!("{0}^2+{1}*{2}", ring.var_names()[0], ring.var_names()[1], ring.var_names()[2]))?;
    let y2 = Polynomial::var(ring, 1).pow(2);
    let x2 = Polynomial::var(ring, 0).pow(2);
    let yz = &Polynomial::var(ring, 1) * &Polynomial::var(ring, 2);
    v_values
        .iter()
        .map(|v| {
            if v.is_zero() {
                return Err(Error::hypothesis("v = 0 makes the two conics equal"));
            }
            let g = &(&x2 + &y2.scale(v)) + &yz;
            is_free_divisor(&(&f * &g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn conics(f: &str, g: &str) -> Result<CurveClass> {
        let r = Ring::standard(Field::Rational, 3);
        classify_conic_pair(&Polynomial::parse(&r, f).unwrap(), &Polynomial::parse(&r, g).unwrap())
    }

    #[test]
    fn table_rows() {
        let rows = [
            ("y^2+x*z", Category::TransversalGeneral, 2, 4, 3),
            ("x^2+y^2-y*z", Category::ThreeSyzygy, 2, 5, 2),
            ("x^2+x*y+y^2+y*z", Category::PlusOne, 2, 6, 1),
            ("x^2-y*z", Category::NearlyFree, 1, 6, 1),
            ("x^2+y^2+y*z", Category::Free, 1, 7, 0),
        ];
        for (g, cat, e, deg, b) in rows {
            let c = conics("x^2+y*z", g).unwrap();
            assert_eq!((c.category, c.e, c.deg_jf, c.bourbaki), (cat, e, deg, b), "{g}");
            assert_eq!(c.rty, cat != Category::Free);
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(conics("x^2", "y^2+x*z"), Err(Error::Hypothesis(_))));
        assert!(matches!(conics("x^2+y*z", "x^2+y*z"), Err(Error::Hypothesis(_))));
        assert!(matches!(conics("x^3+y^3+z^3", "y^2+x*z"), Err(Error::Hypothesis(_))));
        let r7 = Ring::standard(Field::prime(7).unwrap(), 3);
        let p = |s: &str| Polynomial::parse(&r7, s).unwrap();
        assert!(matches!(classify_conic_pair(&p("x^2+y*z"), &p("y^2+x*z")), Err(Error::Characteristic { .. })));
    }

    #[test]
    fn free_divisors() {
        let r = Ring::standard(Field::Rational, 3);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(is_free_divisor(&p("(x^2+y*z)*(x^2+y^2+y*z)")).unwrap());
        assert!(!is_free_divisor(&p("(x^2+y*z)*(y^2+x*z)")).unwrap());
        assert!(is_free_divisor(&p("x^2*y")).is_err());
        let f = Field::Rational;
        let vs: Vec<Scalar> = [1, 2, -1, 17].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(family_freeness_scan(&r, &vs).unwrap(), vec![true; 4]);
        assert!(family_freeness_scan(&r, &[f.zero()]).is_err());
    }

    #[test]
    fn five_variable_free_divisor() {
        let r = Ring::standard(Field::Rational, 5);
        let f = Polynomial::parse(&r, "(x1^2+x2*x3)*(x1^2+x2^2+x2*x3)*(x5^5-x4*(x1^2+x2*x3)*(x1^2+x2^2+x2*x3))").unwrap();
        assert!(is_free_divisor(&f).unwrap());
    }
}

//! Sparse multivariate polynomials over a `Ring` context.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::LinearChange;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};
use crate::scalar::{Field, Scalar};

/// Polynomial ring context: ground field and variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>) -> Result<Arc<Ring>> {
        if vars.is_empty() || vars.len() > MAX_VARS {
            return Err(Error::Spec(format!("number of variables must be between 1 and {MAX_VARS}")));
        }
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Spec(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Spec(format!("duplicate variable name {v:?}")));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    /// `x, y, z` for up to three variables, `x1..xn` otherwise.
    pub fn standard(field: Field, n: usize) -> Arc<Ring> {
        let vars = if n <= 3 {
            ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        Ring::new(field, vars).expect("standard ring")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A polynomial; terms are nonzero and sorted descending in grevlex.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    MonomialOrder::grevlex().compare(b, a)
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        crate::parse::parse_polynomial(text, ring)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Nonzero constant value, if the polynomial is a nonzero constant.
    pub fn constant_value(&self) -> Option<&Scalar> {
        match self.terms.as_slice() {
            [(m, c)] if m.is_one() => Some(c),
            _ => None,
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// The common degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            Some(self.terms[0].0.degree())
        }
    }

    /// Leading term with respect to grevlex.
    pub fn lead(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// Leading term with respect to an arbitrary order.
    pub fn lead_in(&self, order: &MonomialOrder) -> Option<&(Monomial, Scalar)> {
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0))
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|(t, _)| canonical_cmp(t, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Greater
            } else if j == b.len() {
                Ordering::Less
            } else {
                canonical_cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    /// Exact product; the operands must share a ring.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // multiplication by a monomial preserves any monomial order
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so that the grevlex leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let f = self.field();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(i);
            if e == 0 {
                return None;
            }
            let c = c * &f.from_i64(e as i64);
            if c.is_zero() {
                None
            } else {
                Some((m.with_exponent(i, e - 1), c))
            }
        });
        Polynomial::from_terms(&self.ring, terms.collect::<Vec<_>>())
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.partial_derivative(i)).collect()
    }

    /// `Σ x_i ∂f/∂x_i − d·f` for homogeneous `f` of degree `d`.
    pub fn euler_residue(&self) -> Result<Polynomial> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        let Some(d) = self.homogeneous_degree() else {
            return Ok(self.clone());
        };
        let mut acc = self.scale(&self.field().from_i64(-(d as i64)));
        for i in 0..self.nvars() {
            acc = &acc + &(&Polynomial::var(&self.ring, i) * &self.partial_derivative(i));
        }
        Ok(acc)
    }

    /// Substitutes `x_i ↦ images[i]`.
    pub fn compose(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars() {
            return Err(Error::Spec("composition needs one image per variable".into()));
        }
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for i in 0..self.nvars() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.multiply(&powers[i][e])?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// `f(T·x)`, i.e. `x_i ↦ Σ_j T[i][j] x_j`.
    pub fn substitute_linear(&self, t: &LinearChange) -> Result<Polynomial> {
        if t.dim() != self.nvars() {
            return Err(Error::Spec("linear change has the wrong size".into()));
        }
        let images: Vec<Polynomial> = (0..self.nvars()).map(|i| t.image_of_var(&self.ring, i)).collect();
        self.compose(&images)
    }

    /// Quotient `self / g` when `g` divides `self` exactly.
    pub fn div_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.check(g)?;
        let Some((lm, lc)) = g.terms.first().cloned() else {
            return Err(Error::Spec("division by the zero polynomial".into()));
        };
        let lci = lc.inv();
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return Ok(None);
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lci;
            rem = &rem - &g.mul_term(&qm, &qc);
            q.push((qm, qc));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, q)))
    }

    /// Maps the polynomial into another ring with the same number of variables.
    pub fn with_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if ring.nvars() != self.nvars() || ring.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial { ring: ring.clone(), terms: self.terms.clone() })
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.multiply(rhs).expect("ring mismatch")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

/// Product of a list of polynomials (one for the empty list).
pub fn product(ring: &Arc<Ring>, factors: &[Polynomial]) -> Polynomial {
    factors.iter().fold(Polynomial::one(ring), |acc, f| &acc * f)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for i in m.support() {
                let name = &self.ring.vars[i];
                match m.exponent(i) {
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Gcd of two polynomials, normalized monic in grevlex.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    crate::groebner::ideal::polynomial_gcd(f, g)
}

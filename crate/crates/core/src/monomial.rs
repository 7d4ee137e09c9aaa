//! Monomials with dense exponent vectors and the supported monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum number of variables of a ring.
pub const MAX_VARS: usize = 8;

/// A monomial `x_1^a_1 ... x_n^a_n`. The total degree is cached.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    n: u8,
    deg: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        Monomial { exps: [0; MAX_VARS], n: n as u8, deg: 0 }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        assert!(i < n);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut m = Self::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg += e;
        }
        m
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps[..self.n as usize]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n, other.n);
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        Monomial { exps, n: self.n, deg: self.deg + other.deg }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && (0..MAX_VARS).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        for i in 0..MAX_VARS {
            exps[i] = other.exps[i] - self.exps[i];
        }
        Monomial { exps, n: self.n, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].max(other.exps[i]);
            deg += exps[i] as u32;
        }
        Monomial { exps, n: self.n, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            exps[i] = self.exps[i].min(other.exps[i]);
            deg += exps[i] as u32;
        }
        Monomial { exps, n: self.n, deg }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n as usize).filter(move |&i| self.exps[i] > 0)
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.deg = m.deg - m.exps[i] as u32 + e;
        m.exps[i] = e as u16;
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// All monomials of total degree `d` in `n` variables, in lex-descending order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut [u32], out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(n, i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut cur = vec![0u32; n];
    rec(n, 0, d, &mut cur, &mut out);
    out
}

/// Binomial coefficient for small arguments; zero outside the usual range.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Grevlex,
    Lex,
    GradedLex,
}

/// A monomial order together with a variable precedence (most significant first).
/// An empty precedence means `x_1 > x_2 > ... > x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    precedence: Vec<usize>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::Grevlex, precedence: Vec::new() }
    }

    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, precedence: Vec::new() }
    }

    pub fn graded_lex() -> Self {
        MonomialOrder { kind: OrderKind::GradedLex, precedence: Vec::new() }
    }

    /// An order with an explicit variable precedence, which must be a permutation.
    pub fn with_precedence(kind: OrderKind, precedence: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; precedence.len()];
        for &p in &precedence {
            if p >= precedence.len() || seen[p] {
                return Err(Error::Spec("variable precedence is not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(MonomialOrder { kind, precedence })
    }

    pub fn is_graded(&self) -> bool {
        !matches!(self.kind, OrderKind::Lex)
    }

    #[inline]
    fn var_at(&self, rank: usize) -> usize {
        if self.precedence.is_empty() {
            rank
        } else {
            self.precedence[rank]
        }
    }

    /// Compares two monomials of the same ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let n = a.n as usize;
        match self.kind {
            OrderKind::Lex => self.lex_part(a, b, n),
            OrderKind::GradedLex => a.deg.cmp(&b.deg).then_with(|| self.lex_part(a, b, n)),
            OrderKind::Grevlex => a.deg.cmp(&b.deg).then_with(|| {
                for rank in (0..n).rev() {
                    let v = self.var_at(rank);
                    match a.exps[v].cmp(&b.exps[v]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }

    #[inline]
    fn lex_part(&self, a: &Monomial, b: &Monomial, n: usize) -> Ordering {
        for rank in 0..n {
            let v = self.var_at(rank);
            match a.exps[v].cmp(&b.exps[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

/// Checked comparison: both monomials must match the order's variable count.
pub fn monomial_compare(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.n != b.n || (!order.precedence.is_empty() && order.precedence.len() != a.n as usize) {
        return Err(Error::Spec("monomial length does not match the order".into()));
    }
    Ok(order.compare(a, b))
}

//! Buchberger's algorithm for submodules of graded free modules, with optional
//! tracking of each element as a combination of the input generators.
//!
//! Tracking turns every S-pair that reduces to zero (and every skipped coprime
//! pair) into a syzygy of the inputs; the Gebauer–Möller criteria keep only pairs
//! whose syzygies generate the whole module, so the collected syzygies generate
//! the kernel of the input matrix.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::scalar::{Field, Scalar};

/// Term-over-position order on `R^r`. When `graded`, `deg m + twist[i]` decides first.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleOrder {
    pub order: MonomialOrder,
    pub twists: Vec<i64>,
    pub graded: bool,
}

impl ModuleOrder {
    pub fn ideal(order: &MonomialOrder) -> Self {
        ModuleOrder { order: order.clone(), twists: vec![0], graded: false }
    }

    pub fn graded(order: &MonomialOrder, twists: Vec<i64>) -> Self {
        ModuleOrder { order: order.clone(), twists, graded: true }
    }

    #[inline]
    pub fn degree(&self, m: &Monomial, comp: usize) -> i64 {
        m.degree() as i64 + if self.graded { self.twists[comp] } else { 0 }
    }

    #[inline]
    pub fn compare(&self, a: &Monomial, ai: usize, b: &Monomial, bi: usize) -> Ordering {
        if self.graded {
            let c = self.degree(a, ai).cmp(&self.degree(b, bi));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.order.compare(a, b).then(bi.cmp(&ai))
    }
}

pub type Term = (Monomial, usize, Scalar);

/// Sparse vector of `R^r`, terms sorted descending in a `ModuleOrder`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Vector {
    pub terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn from_terms(mut terms: Vec<Term>, ord: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| ord.compare(&b.0, b.1, &a.0, a.1));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => last.2 = &last.2 + &t.2,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.2.is_zero());
        Vector { terms: out }
    }

    pub fn from_poly(p: &Polynomial, comp: usize, ord: &ModuleOrder) -> Self {
        Self::from_terms(p.terms().iter().map(|(m, c)| (*m, comp, c.clone())).collect(), ord)
    }

    pub fn from_column(col: &[Polynomial], ord: &ModuleOrder) -> Self {
        let terms = col
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |(m, c)| (*m, i, c.clone())))
            .collect();
        Self::from_terms(terms, ord)
    }

    pub fn unit(n: usize, comp: usize, c: Scalar) -> Self {
        Vector { terms: vec![(Monomial::one(n), comp, c)] }
    }

    pub fn to_poly(&self, ring: &Arc<Ring>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().map(|(m, _, c)| (*m, c.clone())).collect::<Vec<_>>())
    }

    pub fn to_column(&self, rank: usize, ring: &Arc<Ring>) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for (m, i, c) in &self.terms {
            parts[*i].push((*m, c.clone()));
        }
        parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
    }

    /// `self + c·m·other`.
    pub fn axpy(&self, m: &Monomial, c: &Scalar, other: &Vector, ord: &ModuleOrder) -> Vector {
        let a = &self.terms;
        let b = &other.terms;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.extend_from_slice(&a[i..]);
                break;
            }
            let bm = b[j].0.mul(m);
            let ord_ij = if i == a.len() { Ordering::Less } else { ord.compare(&a[i].0, a[i].1, &bm, b[j].1) };
            match ord_ij {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bm, b[j].1, &b[j].2 * c));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &a[i].2 + &(&b[j].2 * c);
                    if !v.is_zero() {
                        out.push((bm, b[j].1, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Vector { terms: out }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector { terms: self.terms.iter().map(|(m, i, a)| (*m, *i, a * c)).collect() }
    }

    /// `p · self` for a rank-one vector `p`.
    pub fn mul_poly(&self, p: &Vector, ord: &ModuleOrder) -> Vector {
        let mut acc = Vector::zero();
        for (m, _, c) in &p.terms {
            acc = acc.axpy(m, c, self, ord);
        }
        acc
    }
}

struct Elem {
    v: Vector,
    track: Option<Vector>,
    sugar: i64,
    lm: Monomial,
    comp: usize,
    deg: i64,
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    deg: i64,
    sugar: i64,
}

pub struct Engine {
    nvars: usize,
    field: Field,
    ord: ModuleOrder,
    track_ord: Option<ModuleOrder>,
    basis: Vec<Elem>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    syzygies: Vec<Vector>,
    ninputs: usize,
}

impl Engine {
    pub fn new(nvars: usize, field: Field, ord: ModuleOrder, tracking: bool) -> Self {
        let track_ord = tracking.then(|| ModuleOrder::graded(&ord.order, Vec::new()));
        let rank = ord.twists.len();
        Engine {
            nvars,
            field,
            ord,
            track_ord,
            basis: Vec::new(),
            by_comp: vec![Vec::new(); rank.max(1)],
            pairs: Vec::new(),
            syzygies: Vec::new(),
            ninputs: 0,
        }
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.ord
    }

    pub fn num_inputs(&self) -> usize {
        self.ninputs
    }

    /// Adds an input generator of the given degree. Returns true when it was not
    /// already in the span of the current basis (reduction is only complete up to
    /// the degree of the last `complete` call).
    pub fn add(&mut self, v: Vector, degree: i64) -> bool {
        let track = self.track_ord.as_mut().map(|to| {
            to.twists.push(degree);
            Vector::unit(self.nvars, self.ninputs, self.field.one())
        });
        self.ninputs += 1;
        let (r, tr) = self.reduce(v, track);
        if r.is_zero() {
            if let Some(t) = tr {
                if !t.is_zero() {
                    self.syzygies.push(t);
                }
            }
            false
        } else {
            let sugar = degree.max(self.ord.degree(&r.terms[0].0, r.terms[0].1));
            self.insert(r, tr, sugar);
            true
        }
    }

    /// Processes pairs until none remain at degree `<= bound` (all pairs when `None`).
    pub fn complete(&mut self, bound: Option<i64>) {
        loop {
            let Some(idx) = self.select_pair() else { return };
            if let Some(b) = bound {
                if self.pairs[idx].deg > b {
                    return;
                }
            }
            let p = self.pairs.swap_remove(idx);
            let (s, tr) = self.spoly(&p);
            let (r, tr) = self.reduce(s, tr);
            if r.is_zero() {
                if let Some(t) = tr {
                    if !t.is_zero() {
                        self.syzygies.push(t);
                    }
                }
            } else {
                self.insert(r, tr, p.sugar);
            }
        }
    }

    pub fn has_pairs_up_to(&self, bound: i64) -> bool {
        self.pairs.iter().any(|p| p.deg <= bound)
    }

    fn select_pair(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.pairs.iter().enumerate() {
            best = match best {
                None => Some(k),
                Some(b) => {
                    let q = &self.pairs[b];
                    let c = p
                        .deg
                        .cmp(&q.deg)
                        .then(p.sugar.cmp(&q.sugar))
                        .then_with(|| self.ord.compare(&p.lcm, p.comp, &q.lcm, q.comp))
                        .then((p.i, p.j).cmp(&(q.i, q.j)));
                    if c == Ordering::Less {
                        Some(k)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        best
    }

    fn spoly(&self, p: &Pair) -> (Vector, Option<Vector>) {
        let gi = &self.basis[p.i];
        let gj = &self.basis[p.j];
        let ci = gi.v.terms[0].2.inv();
        let cj = -&gj.v.terms[0].2.inv();
        let mi = gi.lm.quotient_of(&p.lcm);
        let mj = gj.lm.quotient_of(&p.lcm);
        let s = Vector::zero().axpy(&mi, &ci, &gi.v, &self.ord).axpy(&mj, &cj, &gj.v, &self.ord);
        let tr = self.track_ord.as_ref().map(|to| {
            Vector::zero()
                .axpy(&mi, &ci, gi.track.as_ref().unwrap(), to)
                .axpy(&mj, &cj, gj.track.as_ref().unwrap(), to)
        });
        (s, tr)
    }

    fn find_reducer(&self, m: &Monomial, comp: usize) -> Option<usize> {
        self.by_comp[comp].iter().copied().find(|&k| self.basis[k].lm.divides(m))
    }

    /// Full reduction of `v` by the current basis, updating the track alongside.
    pub fn reduce(&self, mut v: Vector, mut tr: Option<Vector>) -> (Vector, Option<Vector>) {
        let mut k = 0;
        while k < v.terms.len() {
            let (m, comp, _) = &v.terms[k];
            match self.find_reducer(m, *comp) {
                Some(idx) => {
                    let g = &self.basis[idx];
                    let q = g.lm.quotient_of(m);
                    let c = -&(&v.terms[k].2 / &g.v.terms[0].2);
                    v = v.axpy(&q, &c, &g.v, &self.ord);
                    if let (Some(t), Some(to)) = (tr.as_mut(), self.track_ord.as_ref()) {
                        *t = t.axpy(&q, &c, g.track.as_ref().unwrap(), to);
                    }
                }
                None => k += 1,
            }
        }
        (v, tr)
    }

    pub fn normal_form(&self, v: Vector) -> Vector {
        self.reduce(v, None).0
    }

    fn insert(&mut self, v: Vector, track: Option<Vector>, sugar: i64) {
        let (lm, comp, _) = v.terms[0].clone();
        let deg = self.ord.degree(&lm, comp);
        let k = self.basis.len();
        self.basis.push(Elem { v, track, sugar, lm, comp, deg });
        self.update_pairs(k);
        self.by_comp[comp].push(k);
    }

    fn update_pairs(&mut self, k: usize) {
        let tk = self.basis[k].lm;
        let ck = self.basis[k].comp;
        let rank_one = self.ord.twists.len() == 1;

        // chain criterion on existing pairs
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.comp != ck || !tk.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lm.lcm(&tk);
            let lj = basis[p.j].lm.lcm(&tk);
            li == p.lcm || lj == p.lcm
        });

        let mut cands: Vec<(usize, Monomial, bool)> = self.by_comp[ck]
            .iter()
            .map(|&i| {
                let li = self.basis[i].lm;
                (i, li.lcm(&tk), rank_one && li.is_coprime(&tk))
            })
            .collect();

        // M: drop candidates whose lcm is strictly divisible by another's
        let lcms: Vec<Monomial> = cands.iter().map(|c| c.1).collect();
        cands.retain(|(_, l, _)| !lcms.iter().any(|o| o.divides(l) && o != l));

        // F: one pair per lcm class; a class with a coprime pair is dropped whole
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for (idx, c) in cands.iter().enumerate() {
            if seen.contains(&c.1) {
                continue;
            }
            seen.push(c.1);
            let class: Vec<&(usize, Monomial, bool)> = cands[idx..].iter().filter(|d| d.1 == c.1).collect();
            match class.iter().find(|d| d.2) {
                Some(cop) => {
                    let i = cop.0;
                    self.koszul(i, k);
                }
                None => kept.push(c.clone()),
            }
        }

        for (i, lcm, _) in kept {
            let gi = &self.basis[i];
            let gk = &self.basis[k];
            let sugar = (gi.sugar + (lcm.degree() - gi.lm.degree()) as i64)
                .max(gk.sugar + (lcm.degree() - gk.lm.degree()) as i64);
            let deg = self.ord.degree(&lcm, ck);
            self.pairs.push(Pair { i, j: k, lcm, comp: ck, deg, sugar });
        }
    }

    /// Records `g_k·track_i − g_i·track_k` for a skipped coprime pair.
    fn koszul(&mut self, i: usize, k: usize) {
        let Some(to) = self.track_ord.as_ref() else { return };
        let gi = &self.basis[i];
        let gk = &self.basis[k];
        let a = gi.track.as_ref().unwrap().mul_poly(&gk.v, to);
        let b = gk.track.as_ref().unwrap().mul_poly(&gi.v, to);
        let minus = -&self.field.one();
        let syz = a.axpy(&Monomial::one(self.nvars), &minus, &b, to);
        if !syz.is_zero() {
            self.syzygies.push(syz);
        }
    }

    pub fn take_syzygies(&mut self) -> Vec<Vector> {
        std::mem::take(&mut self.syzygies)
    }

    pub fn track_order(&self) -> Option<&ModuleOrder> {
        self.track_ord.as_ref()
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &Vector> {
        self.basis.iter().map(|e| &e.v)
    }

    /// Lead degrees of basis elements (graded degree).
    pub fn basis_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.basis.iter().map(|e| e.deg)
    }

    /// The reduced Gröbner basis: minimal, monic, tail-reduced, sorted by ascending lead.
    pub fn reduced_basis(&self) -> Vec<Vector> {
        let n = self.basis.len();
        let minimal: Vec<usize> = (0..n)
            .filter(|&i| {
                let e = &self.basis[i];
                !(0..n).any(|j| {
                    let f = &self.basis[j];
                    j != i && f.comp == e.comp && f.lm.divides(&e.lm) && (f.lm != e.lm || j < i)
                })
            })
            .collect();
        let mut sub = Engine::new(self.nvars, self.field, self.ord.clone(), false);
        for &i in &minimal {
            let e = &self.basis[i];
            sub.basis.push(Elem {
                v: e.v.clone(),
                track: None,
                sugar: e.sugar,
                lm: e.lm,
                comp: e.comp,
                deg: e.deg,
            });
            sub.by_comp[e.comp].push(sub.basis.len() - 1);
        }
        let mut out: Vec<Vector> = (0..sub.basis.len())
            .map(|k| {
                let v = &sub.basis[k].v;
                let head = v.terms[0].clone();
                let tail = Vector { terms: v.terms[1..].to_vec() };
                let (rt, _) = sub.reduce(tail, None);
                let inv = head.2.inv();
                let mut terms = vec![(head.0, head.1, head.2.field().one())];
                terms.extend(rt.terms.into_iter().map(|(m, i, c)| (m, i, &c * &inv)));
                Vector { terms }
            })
            .collect();
        out.sort_by(|a, b| {
            let (ma, ia, _) = &a.terms[0];
            let (mb, ib, _) = &b.terms[0];
            self.ord.compare(ma, *ia, mb, *ib)
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axpy_cancels() {
        let ord = ModuleOrder::ideal(&MonomialOrder::grevlex());
        let r = Ring::standard(Field::Rational, 2);
        let f = Polynomial::parse(&r, "x^2 + x*y + 3").unwrap();
        let v = Vector::from_poly(&f, 0, &ord);
        let minus = Field::Rational.from_i64(-1);
        let z = v.axpy(&Monomial::one(2), &minus, &v, &ord);
        assert!(z.is_zero());
        assert_eq!(v.to_poly(&r), f);
    }
}

//! Brute-force oracles: everything here works degree by degree with plain
//! Gaussian elimination on coefficient vectors, independent of Gröbner bases.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use formdepth::{Monomial, MonomialOrder, Polynomial, Ring, Scalar};

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial::from_exponents(prefix));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn mono_poly(ring: &Arc<Ring>, m: Monomial) -> Polynomial {
    Polynomial::monomial(ring, m, ring.field().one())
}

/// Spanning set of the degree-`d` part of the ideal generated by homogeneous `gens`.
pub fn degree_part(ring: &Arc<Ring>, gens: &[Polynomial], d: u32) -> Vec<Polynomial> {
    let mut out = Vec::new();
    for g in gens {
        let Some(e) = g.homogeneous_degree() else { continue };
        if e > d {
            continue;
        }
        for m in monomials(ring.nvars(), d - e) {
            out.push(&mono_poly(ring, m) * g);
        }
    }
    out
}

fn vectors(ring: &Arc<Ring>, polys: &[Polynomial], d: u32) -> Vec<Vec<Scalar>> {
    let basis = monomials(ring.nvars(), d);
    let index: HashMap<Monomial, usize> = basis.iter().copied().enumerate().map(|(i, m)| (m, i)).collect();
    polys
        .iter()
        .map(|p| {
            let mut v = vec![ring.field().zero(); basis.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        })
        .collect()
}

/// Row-reduces in place; returns pivot columns.
pub fn row_reduce(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..cols {
                    let t = &rows[r][k] * &f;
                    rows[i][k] = &rows[i][k] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    row_reduce(&mut rows).len()
}

/// `dim (R/I)_d` by linear algebra.
pub fn brute_hf(ring: &Arc<Ring>, gens: &[Polynomial], d: u32) -> u64 {
    let total = monomials(ring.nvars(), d).len();
    let part = degree_part(ring, gens, d);
    (total - rank(vectors(ring, &part, d))) as u64
}

/// Whether the homogeneous `f` of degree `d` lies in the ideal generated by `gens`.
pub fn in_ideal(ring: &Arc<Ring>, gens: &[Polynomial], f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = f.homogeneous_degree().expect("homogeneous");
    let mut part = degree_part(ring, gens, d);
    let before = rank(vectors(ring, &part, d));
    part.push(f.clone());
    rank(vectors(ring, &part, d)) == before
}

/// Whether the spans of two families of forms of degree `d` coincide.
pub fn same_span(ring: &Arc<Ring>, a: &[Polynomial], b: &[Polynomial], d: u32) -> bool {
    let ra = rank(vectors(ring, a, d));
    let rb = rank(vectors(ring, b, d));
    let both: Vec<Polynomial> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(vectors(ring, &both, d)) == ra
}

pub fn span_rank(ring: &Arc<Ring>, a: &[Polynomial], d: u32) -> usize {
    rank(vectors(ring, a, d))
}

/// Basis of the degree-`k` syzygies `(a_1, …, a_s)` with `Σ a_i g_i = 0`, for
/// forms `g_i` of one common degree.
pub fn syzygies_of_degree(ring: &Arc<Ring>, gens: &[Polynomial], k: u32) -> Vec<Vec<Polynomial>> {
    let field = ring.field();
    let e = gens[0].homogeneous_degree().unwrap();
    let mons = monomials(ring.nvars(), k);
    // Unknowns: coefficient of monomial j in a_i; columns of the linear map.
    let images: Vec<Polynomial> =
        gens.iter().flat_map(|g| mons.iter().map(move |m| (g, *m))).map(|(g, m)| &mono_poly(ring, m) * g).collect();
    let cols = vectors(ring, &images, k + e);
    // Transpose so that rows are equations.
    let neq = cols.first().map_or(0, |c| c.len());
    let mut rows: Vec<Vec<Scalar>> = (0..neq).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    let pivots = row_reduce(&mut rows);
    let nunk = images.len();
    let mut basis = Vec::new();
    for free in (0..nunk).filter(|c| !pivots.contains(c)) {
        let mut x = vec![field.zero(); nunk];
        x[free] = field.one();
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -&rows[r][free];
        }
        let v = (0..gens.len())
            .map(|i| {
                Polynomial::from_terms(ring, mons.iter().enumerate().map(|(j, m)| (*m, x[i * mons.len() + j].clone())))
            })
            .collect();
        basis.push(v);
    }
    basis
}

/// Coefficients of `Π (1 − t)^n · Σ_{d ≤ top} h_d t^d`, truncated at `top`.
pub fn numerator_from_hf(hf: &[i64], n: usize) -> Vec<i64> {
    let mut q = hf.to_vec();
    for _ in 0..n {
        for d in (1..q.len()).rev() {
            q[d] -= q[d - 1];
        }
    }
    q
}

/// `Σ_i (−1)^i β_{i,j} t^j` up to degree `top`.
pub fn betti_numerator(triples: &[(usize, i64, u64)], top: usize) -> Vec<i64> {
    let mut q = vec![0i64; top + 1];
    for &(i, j, r) in triples {
        if (j as usize) <= top {
            q[j as usize] += if i % 2 == 0 { r as i64 } else { -(r as i64) };
        }
    }
    q
}

/// Hilbert-series check: the brute-force Hilbert function of `R/I` agrees with
/// the alternating Betti numbers through degree `top`.
pub fn hf_matches_betti(ring: &Arc<Ring>, gens: &[Polynomial], triples: &[(usize, i64, u64)], top: u32) -> bool {
    let hf: Vec<i64> = (0..=top).map(|d| brute_hf(ring, gens, d) as i64).collect();
    numerator_from_hf(&hf, ring.nvars()) == betti_numerator(triples, top as usize)
}

/// Multivariate division remainder by `basis` in `order`.
pub fn remainder(p: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = p.ring().clone();
    let mut p = p.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some((lm, lc)) = p.lead_in(order).cloned() {
        match basis.iter().find(|g| g.lead_in(order).is_some_and(|(gm, _)| gm.divides(&lm))) {
            Some(g) => {
                let (gm, gc) = g.lead_in(order).unwrap();
                let q = gm.quotient_of(&lm);
                p = &p - &g.mul_term(&q, &(&lc / gc));
            }
            None => {
                let t = Polynomial::monomial(&ring, lm, lc);
                rem = &rem + &t;
                p = &p - &t;
            }
        }
    }
    rem
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (fm, fc) = f.lead_in(order).unwrap();
    let (gm, gc) = g.lead_in(order).unwrap();
    let l = fm.lcm(gm);
    let one = f.field().one();
    &f.mul_term(&fm.quotient_of(&l), &(&one / fc)) - &g.mul_term(&gm.quotient_of(&l), &(&one / gc))
}

pub fn det3(m: &[Vec<Polynomial>]) -> Polynomial {
    let t = |a: &Polynomial, b: &Polynomial, c: &Polynomial| &(a * b) * c;
    let plus = &(&t(&m[0][0], &m[1][1], &m[2][2]) + &t(&m[0][1], &m[1][2], &m[2][0])) + &t(&m[0][2], &m[1][0], &m[2][1]);
    let minus = &(&t(&m[0][2], &m[1][1], &m[2][0]) + &t(&m[0][0], &m[1][2], &m[2][1])) + &t(&m[0][1], &m[1][0], &m[2][2]);
    &plus - &minus
}

/// `a = c·b` for a nonzero scalar `c`.
pub fn nonzero_multiple(a: &Polynomial, b: &Polynomial) -> bool {
    let Some((m, bc)) = b.terms().first() else { return false };
    let c = &a.coefficient(m) / bc;
    !c.is_zero() && *a == b.scale(&c)
}

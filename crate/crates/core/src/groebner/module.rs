//! Syzygies and minimal generators of graded submodules of free modules.

use std::sync::Arc;

use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring};

use super::engine::{Engine, ModuleOrder, Vector};

/// Generators of the kernel of the matrix whose columns are `cols`
/// (each of length `row_twists.len()`), together with their degrees.
///
/// Column `j` is regarded as the image of a basis vector of degree `col_twists[j]`.
pub fn syzygy_generators(
    ring: &Arc<Ring>,
    cols: &[Vec<Polynomial>],
    row_twists: &[i64],
    col_twists: &[i64],
    order: &MonomialOrder,
) -> Vec<(Vec<Polynomial>, i64)> {
    let ord = ModuleOrder::graded(order, row_twists.to_vec());
    let mut e = Engine::new(ring.nvars(), ring.field(), ord.clone(), true);
    let mut perm: Vec<usize> = (0..cols.len()).collect();
    perm.sort_by_key(|&j| col_twists[j]);
    for &j in &perm {
        e.add(Vector::from_column(&cols[j], &ord), col_twists[j]);
    }
    e.complete(None);
    let track_ord = e.track_order().expect("tracking engine").clone();
    e.take_syzygies()
        .into_iter()
        .map(|s| {
            let (m, i, _) = &s.terms[0];
            let deg = track_ord.degree(m, *i);
            let mut col = vec![Polynomial::zero(ring); cols.len()];
            for (k, p) in s.to_column(cols.len(), ring).into_iter().enumerate() {
                col[perm[k]] = p;
            }
            (col, deg)
        })
        .collect()
}

/// Indices of a minimal generating subset of the graded submodule spanned by
/// homogeneous `vectors` of the given degrees, in order of increasing degree.
pub fn minimal_generator_indices(
    ring: &Arc<Ring>,
    vectors: &[Vec<Polynomial>],
    degrees: &[i64],
    row_twists: &[i64],
    order: &MonomialOrder,
) -> Vec<usize> {
    let ord = ModuleOrder::graded(order, row_twists.to_vec());
    let mut e = Engine::new(ring.nvars(), ring.field(), ord.clone(), false);
    let mut idx: Vec<usize> = (0..vectors.len()).collect();
    idx.sort_by_key(|&j| (degrees[j], vectors[j].iter().map(|p| p.num_terms()).sum::<usize>()));
    let mut kept = Vec::new();
    for j in idx {
        let v = Vector::from_column(&vectors[j], &ord);
        if v.is_zero() {
            continue;
        }
        e.complete(Some(degrees[j]));
        if e.add(v, degrees[j]) {
            kept.push(j);
        }
    }
    kept
}

/// Minimal generators of the kernel, sorted by degree.
pub fn minimal_syzygies(
    ring: &Arc<Ring>,
    cols: &[Vec<Polynomial>],
    row_twists: &[i64],
    col_twists: &[i64],
    order: &MonomialOrder,
) -> Vec<(Vec<Polynomial>, i64)> {
    let syz = syzygy_generators(ring, cols, row_twists, col_twists, order);
    let vecs: Vec<Vec<Polynomial>> = syz.iter().map(|s| s.0.clone()).collect();
    let degs: Vec<i64> = syz.iter().map(|s| s.1).collect();
    minimal_generator_indices(ring, &vecs, &degs, col_twists, order)
        .into_iter()
        .map(|k| syz[k].clone())
        .collect()
}

/// Module membership of `v` in the span of `gens` (homogeneous, rank `row_twists.len()`).
pub fn module_contains(
    ring: &Arc<Ring>,
    gens: &[Vec<Polynomial>],
    v: &[Polynomial],
    row_twists: &[i64],
    order: &MonomialOrder,
) -> bool {
    let ord = ModuleOrder::graded(order, row_twists.to_vec());
    let mut e = Engine::new(ring.nvars(), ring.field(), ord.clone(), false);
    for g in gens {
        let gv = Vector::from_column(g, &ord);
        if let Some((m, i, _)) = gv.lead().cloned() {
            let d = ord.degree(&m, i);
            e.add(gv, d);
        }
    }
    e.complete(None);
    e.normal_form(Vector::from_column(v, &ord)).is_zero()
}

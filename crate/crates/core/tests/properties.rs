//! Randomized invariants across the library, driven by seeds so failures shrink
//! to a reproducible draw.

mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;

use common::{brute_hf, monomials};
use formdepth::arrangement::{
    arrangement_betti_formula, build_gamma, normalize_to_coordinates, random_generic_arrangement,
};
use formdepth::groebner::{
    groebner_basis, hilbert_function, is_regular_sequence, krull_dimension, saturate_irrelevant,
};
use formdepth::linalg::LinearChange;
use formdepth::planeclassify::{classify_conic_pair, Category};
use formdepth::productforms::{
    codim, criteria_evaluate, fold_products, frak_d, gradient_ideal, gradient_syzygy_indeg, is_smooth_form,
    random_forms, rty_check,
};
use formdepth::random::{random_form, random_scalar, rng};
use formdepth::resolution::{free_resolution, hilbert_burch_verify, homological_profile, indeg_syzygies};
use formdepth::{Error, Field, GradedMatrix, IdealBasis, Monomial, MonomialOrder, Polynomial, Ring, Scalar};

fn fp() -> Field {
    Field::prime(32003).unwrap()
}

fn random_ideal(seed: u64, field: Field) -> IdealBasis {
    let mut r = rng(seed);
    let ring = Ring::standard(field, 3);
    let gens: Vec<Polynomial> = (0..r.gen_range(2..=3)).map(|_| random_form(&ring, r.gen_range(1..=3), &mut r)).collect();
    IdealBasis::new(&ring, gens.into_iter().filter(|g| !g.is_zero()).collect()).unwrap()
}

/// Krull dimension of `R/in(I)`: the largest variable set carrying no lead monomial.
fn monomial_dimension(leads: &[Monomial], n: usize) -> i64 {
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    (0u32..1 << n)
        .filter(|&s| leads.iter().all(|m| m.support().any(|i| s & (1 << i) == 0)))
        .map(|s| s.count_ones() as i64)
        .max()
        .unwrap()
}

fn standard_count(leads: &[Monomial], n: usize, t: u32) -> u64 {
    monomials(n, t).iter().filter(|m| !leads.iter().any(|l| l.divides(m))).count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn scalars_are_canonical(a in -1000i64..1000, b in 1i64..1000, p in prop::sample::select(vec![2u64, 3, 7, 32003, 2147483647])) {
        let q = Field::Rational;
        let x = &q.from_i64(a) / &q.from_i64(b);
        if let Scalar::Rational(r) = &x {
            use num_integer::Integer;
            prop_assert!(r.denom() > &0.into());
            prop_assert!(r.numer().gcd(r.denom()) == 1.into());
        }
        let f = Field::prime(p).unwrap();
        let y = &f.from_i64(a) * &f.from_i64(-b);
        if let Scalar::Prime { value, .. } = y {
            prop_assert!((value as u64) < p);
        }
        prop_assert_eq!(y.field().characteristic(), p);
    }

    #[test]
    fn linear_change_inverse_is_identity(seed in any::<u64>()) {
        let field = Field::Rational;
        let ring = Ring::standard(field, 3);
        let mut r = rng(seed);
        let mat: Vec<Vec<Scalar>> = (0..3).map(|_| (0..3).map(|_| random_scalar(field, &mut r)).collect()).collect();
        let Ok(t) = LinearChange::new(field, mat) else { return Ok(()) };
        let f = random_form(&ring, 3, &mut r);
        let back = f.substitute_linear(&t).unwrap().substitute_linear(&t.inverse()).unwrap();
        let forth = f.substitute_linear(&t.inverse()).unwrap().substitute_linear(&t).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(&forth, &f);
    }

    #[test]
    fn graded_matrix_rejects_wrong_degrees(seed in any::<u64>(), shift in 1i64..3) {
        let ring = Ring::standard(fp(), 3);
        let mut r = rng(seed);
        let (d0, d1) = (r.gen_range(1..=3u32), r.gen_range(1..=3u32));
        let row = vec![random_form(&ring, d0, &mut r), random_form(&ring, d1, &mut r)];
        prop_assert!(GradedMatrix::new(&ring, vec![row.clone()], vec![0], vec![d0 as i64, d1 as i64]).is_ok());
        let bad = GradedMatrix::new(&ring, vec![row], vec![0], vec![d0 as i64 + shift, d1 as i64]);
        prop_assert!(matches!(bad, Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn ideal_invariants_do_not_depend_on_the_order(seed in any::<u64>()) {
        let ideal = random_ideal(seed, fp());
        let n = ideal.ring().nvars();
        let lex = groebner_basis(&ideal, &MonomialOrder::lex());
        let grevlex = groebner_basis(&ideal, &MonomialOrder::grevlex());
        let dim = krull_dimension(&ideal).unwrap().dim;
        prop_assert_eq!(monomial_dimension(&lex.leads(), n), dim);
        for t in 0..=6 {
            let h = hilbert_function(&ideal, t).unwrap();
            prop_assert_eq!(standard_count(&lex.leads(), n, t), h);
        }
        let mut r = rng(seed ^ 0xABCD);
        let probe = &random_form(ideal.ring(), 2, &mut r) * &ideal.gens()[0];
        prop_assert!(lex.contains(&probe).unwrap() && grevlex.contains(&probe).unwrap());
        let other = random_form(ideal.ring(), 3, &mut r);
        prop_assert_eq!(lex.contains(&other).unwrap(), grevlex.contains(&other).unwrap());
        // The saturation is one ideal whichever order tests membership.
        let sat = saturate_irrelevant(&ideal).unwrap();
        let sat_lex = groebner_basis(&sat, &MonomialOrder::lex());
        for g in groebner_basis(&sat, &MonomialOrder::grevlex()).polys() {
            prop_assert!(sat_lex.contains(g).unwrap());
        }
    }

    #[test]
    fn saturation_is_extensive_and_idempotent(seed in any::<u64>()) {
        let ideal = random_ideal(seed, fp());
        let sat = saturate_irrelevant(&ideal).unwrap();
        prop_assert!(ideal.is_subset_of(&sat).unwrap());
        prop_assert!(saturate_irrelevant(&sat).unwrap().same_ideal(&sat).unwrap());
    }

    #[test]
    fn complete_intersections_have_full_codimension(seed in any::<u64>()) {
        let ideal = random_ideal(seed, fp());
        if is_regular_sequence(ideal.gens()).unwrap() {
            prop_assert_eq!(codim(&ideal).unwrap(), ideal.len() as i64);
        }
    }

    #[test]
    fn hilbert_function_matches_linear_algebra(seed in any::<u64>()) {
        let ideal = random_ideal(seed, Field::Rational);
        for t in 0..=5 {
            prop_assert_eq!(hilbert_function(&ideal, t).unwrap(), brute_hf(ideal.ring(), ideal.gens(), t));
        }
    }

    #[test]
    fn resolutions_are_compatible_complexes(seed in any::<u64>()) {
        let ideal = random_ideal(seed, fp());
        let res = free_resolution(&ideal).unwrap();
        prop_assert!(res.is_complex());
        for w in res.maps().windows(2) {
            prop_assert_eq!(w[1].row_twists(), w[0].col_twists());
        }
        let prof = homological_profile(&ideal).unwrap();
        prop_assert_eq!(prof.betti.alternating_rank_sum(), 0);
        prop_assert_eq!(prof.depth == 0, !prof.saturated);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn hilbert_burch_round_trip(seed in any::<u64>(), d in 1u32..=2) {
        // Fold products of three general forms: a codimension-2 perfect ideal.
        let ring = Ring::standard(fp(), 3);
        let sys = random_forms(&ring, &[d, d, d], seed).unwrap();
        let folds = fold_products(&sys, 2).unwrap();
        prop_assert_eq!(codim(&folds).unwrap(), 2);
        prop_assert!(hilbert_burch_verify(&folds).unwrap());
    }

    #[test]
    fn gamma_presents_the_fold_products(seed in any::<u64>(), n in 2usize..=3, extra in 1usize..=3) {
        let ring = Ring::standard(fp(), n);
        let arr = random_generic_arrangement(&ring, n + extra, &mut rng(seed)).unwrap();
        let norm = normalize_to_coordinates(&arr).unwrap();
        let a = &norm.a;
        for k in 1..=a.rows().min(a.cols()) {
            for rows in formdepth::matrix::combinations(a.rows(), k) {
                for cols in formdepth::matrix::combinations(a.cols(), k) {
                    let sub: Vec<Vec<Scalar>> = rows.iter().map(|&i| cols.iter().map(|&j| a.0[i][j].clone()).collect()).collect();
                    prop_assert!(!formdepth::linalg::determinant(fp(), &sub).is_zero());
                }
            }
        }
        let gamma = build_gamma(&arr).unwrap();
        let folds = arr.fold_product_ideal().unwrap();
        let row = GradedMatrix::row(&ring, folds.gens()).unwrap();
        prop_assert!(row.mul(&gamma).unwrap().is_zero());
        let minors = IdealBasis::new(&ring, gamma.signed_maximal_minors().unwrap()).unwrap();
        prop_assert!(minors.same_ideal(&folds).unwrap());
        let prof = homological_profile(&arr.jacobian_ideal().unwrap()).unwrap();
        prop_assert_eq!(prof.betti, arrangement_betti_formula(n, n + extra).unwrap());
        prop_assert_eq!(prof.depth, 0);
    }

    #[test]
    fn product_form_invariants(seed in any::<u64>(), degs in prop::collection::vec(1u32..=3, 2..=3)) {
        let ring = Ring::standard(fp(), 3);
        let Ok(sys) = random_forms(&ring, &degs, seed) else { return Ok(()) };
        let (f, jf) = gradient_ideal(&sys).unwrap();
        let m = sys.m();
        // J_F sits inside the (m−1)-fold products, so its codimension is 2.
        prop_assert!(jf.is_subset_of(&fold_products(&sys, m - 1).unwrap()).unwrap());
        prop_assert_eq!(codim(&jf).unwrap(), 2);
        let rep = rty_check(&sys).unwrap();
        prop_assert_eq!(rep.rty, rep.depth == 0);
        prop_assert_eq!(rep.rty, rep.pd == 3);
        prop_assert_eq!(rep.rty, !rep.saturated);
        if criteria_evaluate(&sys).unwrap().any_holds() {
            prop_assert!(rep.rty);
        }
        let forms = sys.forms();
        let tail_smooth = forms[1..].iter().all(|g| is_smooth_form(g).unwrap());
        if tail_smooth {
            prop_assert!(indeg_syzygies(&jf).unwrap() >= frak_d(&degs));
        }
        // Two-factor splits f = f_1, g = F/f_1.
        let g = f.div_exact(&forms[0]).unwrap().unwrap();
        if g.homogeneous_degree().unwrap() >= 2 {
            prop_assert!(gradient_syzygy_indeg(&f).unwrap() >= gradient_syzygy_indeg(&g).unwrap());
        }
        if forms[0].homogeneous_degree().unwrap() >= 2 && is_smooth_form(&forms[0]).unwrap() {
            let sat = groebner_basis(&saturate_irrelevant(&jf).unwrap(), &MonomialOrder::grevlex());
            prop_assert!(sat.contains(&g.pow(2)).unwrap());
        }
    }

    #[test]
    fn conic_pairs_classify_totally(coeffs in prop::collection::vec(-1i64..=1, 6), rational in any::<bool>()) {
        let field = if rational { Field::Rational } else { fp() };
        let ring: Arc<Ring> = Ring::new(field, vec!["x".into(), "y".into(), "z".into()]).unwrap();
        let f = Polynomial::parse(&ring, "x^2+y*z").unwrap();
        let mons = ["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"];
        let text: Vec<String> = coeffs.iter().zip(mons).map(|(c, m)| format!("({c})*{m}")).collect();
        let g = Polynomial::parse(&ring, &text.join("+")).unwrap();
        match classify_conic_pair(&f, &g) {
            Ok(c) => {
                prop_assert_eq!(Category::from_key(c.e, c.deg_jf), Some(c.category));
                prop_assert!(c.e == 1 || c.e == 2);
                prop_assert_eq!(c.e == 1, matches!(c.category, Category::NearlyFree | Category::Free));
                prop_assert_eq!(c.rty, c.category != Category::Free);
                prop_assert_eq!(c.bourbaki, 7 - c.deg_jf as i64);
                if c.category != Category::TransversalGeneral {
                    prop_assert!(c.deg_jf >= 5);
                }
                if c.category == Category::Free {
                    prop_assert_eq!(c.betti.twists(2), vec![4, 5]);
                    prop_assert!(hilbert_burch_verify(&IdealBasis::new(&ring, (&f * &g).gradient()).unwrap()).unwrap());
                }
            }
            Err(Error::Hypothesis(_)) => {}
            Err(e) => prop_assert!(false, "{g}: {e}"),
        }
    }
}

//! Seeded sampling of field elements and dense forms.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::monomial::monomials_of_degree;
use crate::poly::{Polynomial, Ring};
use crate::scalar::{Field, Scalar};

/// Bound on the absolute value of random integer coefficients over ℚ.
pub const RATIONAL_COEFF_BOUND: i64 = 9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for trial `k` of a run seeded with `seed`.
pub fn trial_seed(seed: u64, k: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(k.wrapping_mul(0xD1B5_4A32_D192_ED03)) ^ k
}

pub fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-RATIONAL_COEFF_BOUND..=RATIONAL_COEFF_BOUND)),
        Field::Prime { p } => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

/// A dense random form of degree `d` (every monomial gets a random coefficient).
pub fn random_form(ring: &Arc<Ring>, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let terms: Vec<_> =
        monomials_of_degree(ring.nvars(), d).into_iter().map(|m| (m, random_scalar(ring.field(), rng))).collect();
    Polynomial::from_terms(ring, terms)
}

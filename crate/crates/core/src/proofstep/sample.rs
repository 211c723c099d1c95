use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Scalar};

/// Draws points of `X(K^m)`.
pub trait PointSampler {
    /// A point in standard coordinates of `P(K^m)`.
    fn sample(&self, m: usize, field: Field, rng: &mut ChaCha8Rng) -> Vec<Scalar>;
}

/// Integers in `[-10, 10]` over ℚ, uniform residues over `𝔽_p`.
pub fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_int(rng.gen_range(-10..=10)),
        Field::Prime(p) => field.from_bigint(&BigInt::from(rng.gen_range(0..p))),
    }
}

/// Pure tensors `v ⊗ w` in `K^m ⊗ K^m`, the rank-one matrices.
#[derive(Clone, Copy, Debug, Default)]
pub struct RankOneSampler;

impl PointSampler for RankOneSampler {
    fn sample(&self, m: usize, field: Field, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
        let v: Vec<Scalar> = (0..m).map(|_| random_scalar(field, rng)).collect();
        let w: Vec<Scalar> = (0..m).map(|_| random_scalar(field, rng)).collect();
        let mut out = Vec::with_capacity(m * m);
        for a in &v {
            for b in &w {
                out.push(a * b);
            }
        }
        out
    }
}

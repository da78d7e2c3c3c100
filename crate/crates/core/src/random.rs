//! Seeded sampling: Gaussian Hermitian matrices and Haar-random unitaries.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, Hermitian, C64, ZERO};

pub type SampleRng = ChaCha8Rng;

/// SplitMix64 finalizer; derives well-separated per-sample seeds from one base seed.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed))
}

/// Independent stream for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SampleRng {
    rng_from_seed(splitmix64(seed) ^ splitmix64(index.wrapping_add(0xA5A5_A5A5)))
}

pub fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(normal(rng), normal(rng)) / std::f64::consts::SQRT_2
}

/// GUE-style sample: real N(0,1) diagonal, complex N(0,1) off-diagonal.
pub fn gaussian_hermitian(dim: usize, rng: &mut impl Rng) -> Hermitian {
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = C64::new(normal(rng), 0.0);
        for j in (i + 1)..dim {
            let z = complex_normal(rng);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Hermitian::symmetrize(m)
}

/// Purely imaginary Hermitian matrix (`Aᵀ = −A`).
pub fn gaussian_antisymmetric(dim: usize, rng: &mut impl Rng) -> Hermitian {
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let x = normal(rng);
            m[(i, j)] = C64::new(0.0, x);
            m[(j, i)] = C64::new(0.0, -x);
        }
    }
    Hermitian::symmetrize(m)
}

/// Haar-random unitary: Gram-Schmidt QR of a Ginibre matrix. Gram-Schmidt leaves
/// the diagonal of R real positive, which is the phase convention that makes Q Haar.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> CMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim).map(|_| complex_normal(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let c: C64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-8 {
            cols.push(v.into_iter().map(|z| z / n).collect());
        }
    }
    CMatrix::from_columns(&cols)
}

/// Haar-random unit vector in the span of `basis` (orthonormal columns).
pub fn random_unit_in_span(basis: &[Vec<C64>], rng: &mut impl Rng) -> Vec<C64> {
    let dim = basis[0].len();
    let mut v = vec![ZERO; dim];
    for b in basis {
        let c = complex_normal(rng);
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi += c * bi;
        }
    }
    crate::linalg::normalized(&v)
}

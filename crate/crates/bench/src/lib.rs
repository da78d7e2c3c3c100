//! Shared inputs for the benchmarks.

use hamuni_core::random::{gaussian_hermitian, sample_rng};
use hamuni_core::Hermitian;

/// A fixed batch of Gaussian two-qubit Hamiltonians.
pub fn batch(count: u64) -> Vec<Hermitian> {
    (0..count).map(|i| gaussian_hermitian(4, &mut sample_rng(0xBE7C, i))).collect()
}

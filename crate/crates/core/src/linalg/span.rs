//! Hermitian matrices as real vectors, and real-span rank.
//!
//! The coordinate map sends `H` to `(H₁₁, …, H_NN, √2·Re H_kl, √2·Im H_kl, …)`
//! over `k < l`, so the Euclidean dot product of coordinates equals the
//! Hilbert-Schmidt product `tr(AB)`.

use std::f64::consts::SQRT_2;

use super::matrix::{CMatrix, Hermitian, C64};
use super::LinalgError;

pub fn hermitian_coords(h: &CMatrix) -> Vec<f64> {
    let n = h.dim();
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        out.push(h[(k, k)].re);
    }
    for k in 0..n {
        for l in (k + 1)..n {
            let z = h[(k, l)];
            out.push(SQRT_2 * z.re);
            out.push(SQRT_2 * z.im);
        }
    }
    out
}

pub fn from_coords(dim: usize, x: &[f64]) -> Hermitian {
    assert_eq!(x.len(), dim * dim, "coordinate vector has wrong length");
    let mut m = CMatrix::zeros(dim);
    for k in 0..dim {
        m[(k, k)] = C64::new(x[k], 0.0);
    }
    let mut idx = dim;
    for k in 0..dim {
        for l in (k + 1)..dim {
            let z = C64::new(x[idx], x[idx + 1]) / SQRT_2;
            m[(k, l)] = z;
            m[(l, k)] = z.conj();
            idx += 2;
        }
    }
    Hermitian::symmetrize(m)
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Incrementally built orthonormal basis of real vectors (two-pass modified Gram-Schmidt).
#[derive(Clone, Debug, Default)]
pub struct OrthoBasis {
    vectors: Vec<Vec<f64>>,
}

impl OrthoBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Component of `v` orthogonal to the span.
    pub fn project_out(&self, v: &[f64]) -> Vec<f64> {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for b in &self.vectors {
                let c = dot(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        w
    }

    /// Adds the normalized orthogonal residual of `v` if its norm exceeds `threshold`.
    /// Returns the residual norm when the vector was accepted.
    pub fn try_push(&mut self, v: &[f64], threshold: f64) -> Option<f64> {
        let w = self.project_out(v);
        let r = norm(&w);
        if r > threshold {
            self.vectors.push(w.into_iter().map(|x| x / r).collect());
            Some(r)
        } else {
            None
        }
    }
}

/// Dimension of the real linear span of `mats` under the Hilbert-Schmidt product.
///
/// Inputs with norm at most `rank_tol` times the largest input norm count as zero.
/// The rest are scaled to unit norm and reduced by column-pivoted, re-orthogonalized
/// Gram-Schmidt: the vector with the largest remaining residual is taken next, and
/// the process stops once every residual is at most `rank_tol`.
pub fn real_span_rank(mats: &[CMatrix], rank_tol: f64) -> Result<usize, LinalgError> {
    let Some(first) = mats.first() else {
        return Ok(0);
    };
    for m in mats {
        first.check_same_dim(m)?;
    }
    let coords: Vec<Vec<f64>> = mats.iter().map(hermitian_coords).collect();
    let norms: Vec<f64> = coords.iter().map(|c| norm(c)).collect();
    let largest = norms.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return Ok(0);
    }
    let mut remaining: Vec<Vec<f64>> = coords
        .into_iter()
        .zip(&norms)
        .filter(|(_, &n)| n > rank_tol * largest)
        .map(|(c, &n)| c.into_iter().map(|x| x / n).collect())
        .collect();

    let mut basis = OrthoBasis::new();
    while !remaining.is_empty() {
        let (best, best_norm) = remaining
            .iter()
            .enumerate()
            .map(|(i, r)| (i, norm(r)))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_norm <= rank_tol {
            break;
        }
        let pivot = remaining.swap_remove(best);
        if basis.try_push(&pivot, rank_tol).is_none() {
            continue;
        }
        let q = basis.vectors().last().unwrap().clone();
        for r in remaining.iter_mut() {
            let c = dot(&q, r);
            for (ri, qi) in r.iter_mut().zip(&q) {
                *ri -= c * qi;
            }
        }
    }
    Ok(basis.len())
}

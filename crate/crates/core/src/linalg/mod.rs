//! Dense complex linear algebra for dimensions up to 16: Hermitian eigensolver,
//! commutators, the unitary exponential `e^{iHt}`, Hilbert-Schmidt geometry and
//! real-span rank.

mod eigen;
mod matrix;
mod span;

use thiserror::Error;

pub use eigen::{eig_hermitian, EigenDecomposition};
pub(crate) use eigen::eigh;
pub use matrix::{basis_vector, inner, normalized, vec_norm, CMatrix, Hermitian, C64, I, ONE, ZERO};
pub use span::{from_coords, hermitian_coords, real_span_rank, OrthoBasis};
pub(crate) use span::{dot, norm};

/// Maximum number of cyclic Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;
/// Eigen-residual tolerance per unit dimension, relative to `‖H‖`.
pub const EIG_TOL_PER_DIM: f64 = 1e-12;
/// Accepted anti-Hermitian part, relative to the largest entry.
pub const HERM_TOL: f64 = 1e-10;
/// Default threshold for real-span rank and Lie closure.
pub const RANK_TOL: f64 = 1e-9;
/// Eigenvalues closer than `DEG_TOL · max(1, ‖H‖)` are treated as equal.
pub const DEG_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix has no rows")]
    Empty,
    #[error("row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("matrix is not Hermitian (max |M - M†| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("Jacobi eigensolver did not converge in {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

/// `i(AB − BA)`, exactly Hermitian after symmetrization.
pub fn commutator_i(a: &Hermitian, b: &Hermitian) -> Result<Hermitian, LinalgError> {
    a.check_same_dim(b)?;
    Ok(Hermitian::symmetrize(a.commutator(b).scale(I)))
}

/// `e^{iHt} = V · diag(e^{iλt}) · V†`.
pub fn expm_i(h: &Hermitian, t: f64) -> CMatrix {
    eigh(h).map_spectrum(|l| C64::from_polar(1.0, l * t))
}

/// Hilbert-Schmidt inner product `tr(AB)` of Hermitian matrices.
pub fn hs_inner(a: &Hermitian, b: &Hermitian) -> Result<f64, LinalgError> {
    a.check_same_dim(b)?;
    Ok(a
        .as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x.re * y.re + x.im * y.im)
        .sum())
}

/// Spectral norm: square root of the largest eigenvalue of `M†M`.
pub fn opnorm(m: &CMatrix) -> f64 {
    let gram = Hermitian::symmetrize(&m.adjoint() * m);
    let top = eigh(&gram).values.last().copied().unwrap_or(0.0);
    top.max(0.0).sqrt()
}

/// Scale used for every relative threshold in the crate: `max(1, ‖H‖)`.
pub fn threshold_scale(h: &CMatrix) -> f64 {
    opnorm(h).max(1.0)
}

//! The SWAP gate `T`, the singlet `|s⟩`, and the T-basis in which `T` is diagonal.
//!
//! `U_T` maps `|s⟩` to `e₁` and `T` to `T̃ = diag(−1, 1, 1, 1)`, so a matrix commutes
//! with `T` exactly when its T-basis form is block diagonal `1 ⊕ 3`.

use std::f64::consts::FRAC_1_SQRT_2;

use rand::Rng;

use crate::error::{expect_dim, Error, Result};
use crate::linalg::{eigh, inner, normalized, threshold_scale, vec_norm, CMatrix, Hermitian, C64, DEG_TOL, ONE, ZERO};
use crate::random::{haar_unitary, rng_from_seed};

/// Default relative tolerance of the predicates in this module.
pub const PREDICATE_TOL: f64 = 1e-9;

/// SWAP on two qubits: `|ab⟩ ↦ |ba⟩`.
pub fn swap() -> CMatrix {
    CMatrix::from_fn(4, |i, j| {
        let swapped = ((j & 1) << 1) | (j >> 1);
        if i == swapped {
            ONE
        } else {
            ZERO
        }
    })
}

/// `(|01⟩ − |10⟩)/√2`
pub fn singlet() -> Vec<C64> {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    vec![ZERO, h, -h, ZERO]
}

/// The basis change `U_T`; rows are `⟨s|`, then an orthonormal basis of the symmetric subspace.
pub fn basis_change() -> CMatrix {
    let h = FRAC_1_SQRT_2;
    CMatrix::from_real_rows(&[
        vec![0.0, h, -h, 0.0],
        vec![0.0, h, h, 0.0],
        vec![h, 0.0, 0.0, h],
        vec![h, 0.0, 0.0, -h],
    ])
    .expect("constant is square")
}

/// `T` in the T-basis.
pub fn t_tilde() -> CMatrix {
    CMatrix::real_diag(&[-1.0, 1.0, 1.0, 1.0])
}

/// `|s⟩` in the T-basis.
pub fn singlet_tilde() -> Vec<C64> {
    vec![ONE, ZERO, ZERO, ZERO]
}

/// A 4×4 matrix expressed in the T-basis. Kept apart from computational-basis
/// matrices so the two cannot be mixed by accident.
#[derive(Clone, Debug, PartialEq)]
pub struct TBasis(CMatrix);

impl TBasis {
    /// Wraps entries that are already in the T-basis.
    pub fn from_entries(m: CMatrix) -> Result<Self> {
        expect_dim(m.dim(), 4)?;
        Ok(Self(m))
    }

    pub fn entries(&self) -> &CMatrix {
        &self.0
    }

    /// `U_T† M̃ U_T`
    pub fn to_computational(&self) -> CMatrix {
        basis_change().adjoint().conjugate(&self.0)
    }
}

/// `U_T M U_T†`
pub fn to_t_basis(m: &CMatrix) -> Result<TBasis> {
    expect_dim(m.dim(), 4)?;
    Ok(TBasis(basis_change().conjugate(m)))
}

pub fn from_t_basis(m: &TBasis) -> CMatrix {
    m.to_computational()
}

/// `‖MT − TM‖_F ≤ tol · ‖M‖_F`
pub fn commutes_with_t(m: &CMatrix, tol: f64) -> Result<bool> {
    expect_dim(m.dim(), 4)?;
    let t = swap();
    Ok((&(m * &t) - &(&t * m)).frobenius_norm() <= tol * m.frobenius_norm())
}

/// Whether `|s⟩` is an eigenvector of the normal matrix `n`.
pub fn singlet_is_eigenvector(n: &CMatrix, tol: f64) -> Result<bool> {
    expect_dim(n.dim(), 4)?;
    let scale = n.frobenius_norm();
    let defect = (&(n * &n.adjoint()) - &(&n.adjoint() * n)).max_abs();
    if defect > tol * scale * scale {
        return Err(Error::NotNormal(defect));
    }
    let s = singlet();
    let ns = n.apply(&s);
    let mu = inner(&s, &ns);
    let residual: Vec<C64> = ns.iter().zip(&s).map(|(a, b)| a - mu * b).collect();
    Ok(vec_norm(&residual) <= tol * scale)
}

/// A common eigenvector of `h` and `T`, if one exists.
///
/// Eigenvalue clusters of size two or more always contain a vector orthogonal to
/// `|s⟩`, which lies in the symmetric subspace. Simple eigenvalues are tested
/// directly; failing that, `|s⟩` itself is checked.
pub fn shares_eigenvector_with_t(h: &Hermitian, tol: f64) -> Result<Option<Vec<C64>>> {
    expect_dim(h.dim(), 4)?;
    let scale = threshold_scale(h);
    let eig = eigh(h);
    let s = singlet();
    for cluster in eig.clusters(DEG_TOL * scale) {
        let vs: Vec<Vec<C64>> = cluster.iter().map(|&k| eig.vector(k)).collect();
        if vs.len() == 1 {
            if inner(&vs[0], &s).norm() <= tol {
                return Ok(Some(vs[0].clone()));
            }
            continue;
        }
        // ⟨s|v₀⟩ v₁ − ⟨s|v₁⟩ v₀ is orthogonal to |s⟩; fall back to v₀ if both overlaps vanish.
        let (c0, c1) = (inner(&s, &vs[0]), inner(&s, &vs[1]));
        let w: Vec<C64> = vs[1].iter().zip(&vs[0]).map(|(a, b)| c0 * a - c1 * b).collect();
        let witness = if vec_norm(&w) > 1e-6 { normalized(&w) } else { vs[0].clone() };
        return Ok(Some(witness));
    }
    let hs = h.apply(&s);
    let mu = inner(&s, &hs);
    let residual: Vec<C64> = hs.iter().zip(&s).map(|(a, b)| a - mu * b).collect();
    if vec_norm(&residual) <= tol * scale {
        return Ok(Some(s));
    }
    Ok(None)
}

/// `U_T† (V₁ ⊕ V₃) U_T` with `V₁ ∈ U(1)` and `V₃ ∈ U(3)` Haar-random.
pub fn random_t_commuting_unitary(rng: &mut impl Rng) -> CMatrix {
    let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    let v3 = haar_unitary(3, rng);
    let block = CMatrix::from_fn(4, |i, j| match (i, j) {
        (0, 0) => phase,
        (0, _) | (_, 0) => ZERO,
        _ => v3[(i - 1, j - 1)],
    });
    basis_change().adjoint().conjugate(&block)
}

pub fn sample_t_commuting_unitary(seed: u64) -> CMatrix {
    random_t_commuting_unitary(&mut rng_from_seed(seed))
}

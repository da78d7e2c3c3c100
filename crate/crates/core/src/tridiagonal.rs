//! The unique tridiagonal form of a two-qubit Hamiltonian under T-similarity.
//!
//! In the T-basis, conjugations that commute with `T` are exactly `e^{iφ} ⊕ U(3)`.
//! Reducing the lower-right block column by column with such unitaries gives
//!
//! ```text
//! ⎡ a  b  ·  · ⎤
//! ⎢ b  c  d  · ⎥
//! ⎢ ·  d  e  f ⎥
//! ⎣ ·  ·  f  g ⎦
//! ```
//!
//! with `b, d, f ≥ 0`, and a diagonal sort on the blocks that decouple when `b = 0`
//! or `d = 0`.

use serde::Serialize;

use crate::error::{expect_dim, Result};
use crate::linalg::{eigh, threshold_scale, vec_norm, CMatrix, Hermitian, C64, ONE, ZERO};
use crate::tgate::{basis_change, TBasis};

/// Values at or below `ZERO_CUT · max(1, ‖H‖)` are treated as exact zeros.
pub const ZERO_CUT: f64 = 1e-9;
/// A quantity within this factor of its threshold is reported as borderline.
pub const BORDERLINE_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FormType {
    /// `b, d, f > 0`
    One = 1,
    /// `b, d > 0`, `f = 0`
    Two = 2,
    /// `b > 0`, `d = f = 0`, `e ≥ g`
    Three = 3,
    /// `b = d = f = 0`, `c ≥ e ≥ g`
    Four = 4,
}

impl FormType {
    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Raw magnitudes of the three sub-diagonal entries before the zero cut.
/// A coupling that was never computed because an earlier one vanished is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RawCouplings {
    pub b: f64,
    pub d: Option<f64>,
    pub f: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TridiagonalForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub form_type: FormType,
    /// `P` with `[P, T] = 0` and `P H P† = Ξ`, in the computational basis.
    pub conjugator: CMatrix,
    pub raw: RawCouplings,
    pub zero_threshold: f64,
    /// Some coupling lies within a factor 10 of the zero threshold.
    pub borderline: bool,
}

impl TridiagonalForm {
    pub fn params(&self) -> [f64; 7] {
        [self.a, self.b, self.c, self.d, self.e, self.f, self.g]
    }

    pub fn t_basis(&self) -> TBasis {
        TBasis::from_entries(tridiagonal_t_basis(&self.params())).expect("4x4")
    }

    /// `Ξ = U_T† Ξ̃ U_T`
    pub fn hamiltonian(&self) -> Hermitian {
        tridiagonal_hamiltonian(&self.params())
    }

    pub fn trace(&self) -> f64 {
        self.a + self.c + self.e + self.g
    }

    /// Largest minus smallest of `a, c, e, g`.
    pub fn diagonal_spread(&self) -> f64 {
        let d = [self.a, self.c, self.e, self.g];
        let max = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = d.iter().copied().fold(f64::INFINITY, f64::min);
        max - min
    }

    /// `b·d·f = 0`, i.e. the Hamiltonian shares an eigenvector with `T`.
    pub fn has_zero_coupling(&self) -> bool {
        self.form_type != FormType::One
    }
}

/// The T-basis matrix with diagonal `(a, c, e, g)` and sub-diagonal `(b, d, f)`.
pub fn tridiagonal_t_basis(p: &[f64; 7]) -> CMatrix {
    let [a, b, c, d, e, f, g] = *p;
    CMatrix::from_real_rows(&[
        vec![a, b, 0.0, 0.0],
        vec![b, c, d, 0.0],
        vec![0.0, d, e, f],
        vec![0.0, 0.0, f, g],
    ])
    .expect("4x4")
}

pub fn tridiagonal_hamiltonian(p: &[f64; 7]) -> Hermitian {
    let ut = basis_change();
    Hermitian::symmetrize(ut.adjoint().conjugate(&tridiagonal_t_basis(p)))
}

pub fn tridiagonalize(h: &Hermitian) -> Result<TridiagonalForm> {
    tridiagonalize_with_cut(h, ZERO_CUT)
}

/// As [`tridiagonalize`], cutting couplings at or below `zero_cut · max(1, ‖H‖)`.
pub fn tridiagonalize_with_cut(h: &Hermitian, zero_cut: f64) -> Result<TridiagonalForm> {
    expect_dim(h.dim(), 4)?;
    let ut = basis_change();
    let zero_threshold = zero_cut * threshold_scale(h);
    let mut m = ut.conjugate(h);
    let mut q = CMatrix::identity(4);

    let tail_b: Vec<C64> = (1..4).map(|i| m[(i, 0)]).collect();
    let raw_b = vec_norm(&tail_b);
    let mut raw = RawCouplings { b: raw_b, d: None, f: None };
    let form_type = if raw_b <= zero_threshold {
        let p = embed(1, &sorted_eigenbasis_adjoint(&m, 1));
        apply(&mut m, &mut q, &p);
        FormType::Four
    } else {
        apply(&mut m, &mut q, &embed(1, &householder(&tail_b)));
        let tail_d = vec![m[(2, 1)], m[(3, 1)]];
        let raw_d = vec_norm(&tail_d);
        raw.d = Some(raw_d);
        if raw_d <= zero_threshold {
            let p = embed(2, &sorted_eigenbasis_adjoint(&m, 2));
            apply(&mut m, &mut q, &p);
            FormType::Three
        } else {
            apply(&mut m, &mut q, &embed(2, &householder(&tail_d)));
            let z = m[(3, 2)];
            raw.f = Some(z.norm());
            if z.norm() <= zero_threshold {
                FormType::Two
            } else {
                apply(&mut m, &mut q, &CMatrix::diag(&[ONE, ONE, ONE, z.conj() / z.norm()]));
                FormType::One
            }
        }
    };

    // Sign fix: make every kept sub-diagonal entry non-negative by a diagonal ±1 conjugation.
    let mut signs = [1.0; 4];
    for k in 1..4 {
        let s = if m[(k, k - 1)].re < 0.0 { -1.0 } else { 1.0 };
        signs[k] = signs[k - 1] * s;
    }
    if signs.iter().any(|&s| s < 0.0) {
        apply(&mut m, &mut q, &CMatrix::real_diag(&signs));
    }

    let keep = |x: f64, cut: bool| if cut { 0.0 } else { x };
    let (cut_b, cut_d, cut_f) = match form_type {
        FormType::One => (false, false, false),
        FormType::Two => (false, false, true),
        FormType::Three => (false, true, true),
        FormType::Four => (true, true, true),
    };
    let borderline = [Some(raw.b), raw.d, raw.f].into_iter().flatten().any(|x| {
        x > zero_threshold / BORDERLINE_FACTOR && x <= zero_threshold * BORDERLINE_FACTOR
    });
    Ok(TridiagonalForm {
        a: m[(0, 0)].re,
        b: keep(m[(1, 0)].re, cut_b),
        c: m[(1, 1)].re,
        d: keep(m[(2, 1)].re, cut_d),
        e: m[(2, 2)].re,
        f: keep(m[(3, 2)].re, cut_f),
        g: m[(3, 3)].re,
        form_type,
        conjugator: ut.adjoint() * &q * &ut,
        raw,
        zero_threshold,
        borderline,
    })
}

/// Whether the two Hamiltonians have tridiagonal forms agreeing entrywise within
/// `tol · max(1, ‖H₁‖, ‖H₂‖)`.
pub fn is_t_similar(h1: &Hermitian, h2: &Hermitian, tol: f64) -> Result<bool> {
    let (x1, x2) = (tridiagonalize(h1)?, tridiagonalize(h2)?);
    let scale = threshold_scale(h1).max(threshold_scale(h2));
    Ok(x1.params().iter().zip(x2.params()).all(|(p, q)| (p - q).abs() <= tol * scale))
}

fn apply(m: &mut CMatrix, q: &mut CMatrix, p: &CMatrix) {
    *m = p.conjugate(m);
    *q = p * &*q;
}

/// `I_k ⊕ w`
fn embed(k: usize, w: &CMatrix) -> CMatrix {
    CMatrix::from_fn(4, |i, j| {
        if i >= k && j >= k {
            w[(i - k, j - k)]
        } else if i == j {
            ONE
        } else {
            ZERO
        }
    })
}

/// Unitary `W` with `W x = ‖x‖ e₁`: a Householder reflector followed by a phase on the first row.
fn householder(x: &[C64]) -> CMatrix {
    let n = x.len();
    let r = vec_norm(x);
    let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { ONE };
    let alpha = -phase * r;
    let mut v = x.to_vec();
    v[0] -= alpha;
    let vv: f64 = vec_norm(&v).powi(2);
    let reflector = CMatrix::from_fn(n, |i, j| {
        let id = if i == j { ONE } else { ZERO };
        id - v[i] * v[j].conj() * (2.0 / vv)
    });
    let mut fix = vec![ONE; n];
    fix[0] = alpha.conj() / r;
    &CMatrix::diag(&fix) * &reflector
}

/// `V†` for the eigenvectors of the trailing block `m[k.., k..]`, ordered by
/// descending eigenvalue (ties keep the solver's order).
fn sorted_eigenbasis_adjoint(m: &CMatrix, k: usize) -> CMatrix {
    let n = 4 - k;
    let block = Hermitian::symmetrize(CMatrix::from_fn(n, |i, j| m[(i + k, j + k)]));
    let eig = eigh(&block);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.values[j].total_cmp(&eig.values[i]));
    let cols: Vec<Vec<C64>> = order.iter().map(|&i| eig.vector(i)).collect();
    CMatrix::from_columns(&cols).adjoint()
}

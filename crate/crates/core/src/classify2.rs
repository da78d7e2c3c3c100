//! Two-qubit universality.
//!
//! A two-qubit Hamiltonian fails to be 2-universal exactly when it is T-similar to a
//! local Hamiltonian, shares an eigenvector with `T`, or is traceless. On the
//! tridiagonal form these read `a = c = e = g`, `b·d·f = 0` and `a + c + e + g = 0`.

use serde::Serialize;

use crate::error::{expect_dim, Error, Result};
use crate::linalg::{
    eigh, inner, threshold_scale, vec_norm, CMatrix, EigenDecomposition, Hermitian, C64, DEG_TOL, ONE, ZERO,
};
use crate::tgate::{basis_change, shares_eigenvector_with_t, singlet};
use crate::tridiagonal::{tridiagonalize_with_cut, TridiagonalForm, BORDERLINE_FACTOR};

/// Relative tolerance of every condition test: `COND_TOL · max(1, ‖H‖)`.
pub const COND_TOL: f64 = 1e-9;
/// Absolute tolerance on squared singlet overlaps when matching eigenbases.
pub const OVERLAP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Universal,
    NonUniversal,
}

/// `P (H) P† = H₁ ⊗ I + I ⊗ H₂` with `[P, T] = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct LocalWitness {
    pub h1: Hermitian,
    pub h2: Hermitian,
    pub conjugator: CMatrix,
    /// `‖P H P† − (H₁ ⊗ I + I ⊗ H₂)‖_F`
    pub residual: f64,
}

impl LocalWitness {
    pub fn local_hamiltonian(&self) -> Hermitian {
        local_sum(&self.h1, &self.h2)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Borderline {
    pub shared_eigvec: bool,
    pub t_similar_local: bool,
    pub traceless: bool,
    /// The coupling test and the direct eigenvector search disagreed.
    pub witness_disagreement: bool,
}

impl Borderline {
    pub fn any(&self) -> bool {
        self.shared_eigvec || self.t_similar_local || self.traceless || self.witness_disagreement
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub cond_shared_eigvec: bool,
    pub shared_eigvec_witness: Option<Vec<C64>>,
    pub cond_t_similar_local: bool,
    pub local_witness: Option<LocalWitness>,
    pub cond_traceless: bool,
    pub trace: f64,
    pub tridiagonal: TridiagonalForm,
    pub borderline: Borderline,
    pub tolerance: f64,
}

impl ClassificationReport {
    pub fn is_universal(&self) -> bool {
        self.verdict == Verdict::Universal
    }
}

fn near_threshold(x: f64, tol: f64) -> bool {
    x > tol / BORDERLINE_FACTOR && x <= tol * BORDERLINE_FACTOR
}

pub fn classify(h: &Hermitian) -> Result<ClassificationReport> {
    classify_with_tol(h, COND_TOL)
}

/// As [`classify`] with every zero test (couplings, diagonal spread, trace) at
/// `rel_tol · max(1, ‖H‖)`.
pub fn classify_with_tol(h: &Hermitian, rel_tol: f64) -> Result<ClassificationReport> {
    expect_dim(h.dim(), 4)?;
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {rel_tol}")));
    }
    let tol = rel_tol * threshold_scale(h);
    let xi = tridiagonalize_with_cut(h, rel_tol)?;
    let mut borderline = Borderline { shared_eigvec: xi.borderline, ..Borderline::default() };

    let cond_shared_eigvec = xi.has_zero_coupling();
    let searched = shares_eigenvector_with_t(h, rel_tol)?;
    borderline.witness_disagreement = searched.is_some() != cond_shared_eigvec;
    let shared_eigvec_witness = cond_shared_eigvec.then(|| decoupled_eigenvector(&xi));

    let (cond_t_similar_local, local_witness) = if cond_shared_eigvec {
        let w = is_t_similar_to_local(h)?;
        (w.is_some(), w)
    } else {
        let spread = xi.diagonal_spread();
        borderline.t_similar_local = near_threshold(spread, tol);
        if spread <= tol {
            (true, is_t_similar_to_local(h)?)
        } else {
            (false, None)
        }
    };

    let trace = xi.trace();
    let cond_traceless = trace.abs() <= tol;
    borderline.traceless = near_threshold(trace.abs(), tol);

    let verdict = if cond_shared_eigvec || cond_t_similar_local || cond_traceless {
        Verdict::NonUniversal
    } else {
        Verdict::Universal
    };
    Ok(ClassificationReport {
        verdict,
        cond_shared_eigvec,
        shared_eigvec_witness,
        cond_t_similar_local,
        local_witness,
        cond_traceless,
        trace,
        tridiagonal: xi,
        borderline,
        tolerance: tol,
    })
}

/// Common eigenvector of `H` and `T` read off a form with a vanishing coupling:
/// `|s⟩` when `b = 0`, otherwise the last T-basis vector pulled back through `P`.
fn decoupled_eigenvector(xi: &TridiagonalForm) -> Vec<C64> {
    if xi.b == 0.0 {
        return singlet();
    }
    let e4 = [ZERO, ZERO, ZERO, ONE];
    xi.conjugator.adjoint().apply(&basis_change().adjoint().apply(&e4))
}

/// `H₁ ⊗ I + I ⊗ H₂`
pub fn local_sum(h1: &Hermitian, h2: &Hermitian) -> Hermitian {
    let id = CMatrix::identity(2);
    Hermitian::symmetrize(&h1.kron(&id) + &id.kron(h2))
}

/// The three ways to split four eigenpairs into two pairs.
const PAIRINGS: [[usize; 4]; 3] = [[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]];

/// Searches for a local Hamiltonian T-similar to `h`.
///
/// `h` is T-similar to a local Hamiltonian iff its eigenpairs split into two pairs with
/// equal eigenvalue sums, where both members of the first pair have the same squared
/// singlet overlap `x` and both members of the second the same `y`. Inside a
/// degenerate eigenspace only the projected weight `‖Π|s⟩‖²` is basis independent, so
/// the overlaps are matched per cluster and a basis realizing them is constructed.
pub fn is_t_similar_to_local(h: &Hermitian) -> Result<Option<LocalWitness>> {
    expect_dim(h.dim(), 4)?;
    let scale = threshold_scale(h);
    let tol = COND_TOL * scale;
    let eig = eigh(h);
    let clusters = eig.clusters(DEG_TOL * scale);
    let weights = cluster_weights(&eig, &clusters);
    let lam = &eig.values;

    let mut best: Option<(f64, [usize; 4], f64, f64)> = None;
    for pairing in PAIRINGS {
        let [i, j, k, l] = pairing;
        let eig_res = (lam[i] + lam[j] - lam[k] - lam[l]).abs();
        if eig_res > tol {
            continue;
        }
        let Some((x, y, overlap_res)) = solve_overlaps(&pairing, &clusters, &weights) else {
            continue;
        };
        let cost = eig_res / scale + overlap_res;
        if best.is_none_or(|b| cost < b.0) {
            best = Some((cost, pairing, x, y));
        }
    }
    let Some((_, pairing, x, y)) = best else {
        return Ok(None);
    };

    let mut target = [0.0; 4];
    for (slot, &idx) in pairing.iter().enumerate() {
        target[idx] = if slot < 2 { x } else { y };
    }
    let aligned = aligned_eigenbasis(&eig, &clusters, &target);
    let [i, j, k, _] = pairing;
    let (l1, l2, l3) = (lam[i], lam[j], lam[k]);

    let theta = (2.0 * x).clamp(0.0, 1.0).sqrt().asin();
    let (c, s) = (theta.cos(), theta.sin());
    let h1 = Hermitian::from_real_diag(&[0.0, l2 - l3]);
    let w1 = [c, s];
    let w2 = [-s, c];
    let h2 = Hermitian::symmetrize(CMatrix::from_fn(2, |a, b| C64::new(l1 * w1[a] * w1[b] + l3 * w2[a] * w2[b], 0.0)));

    // Eigenvectors of H₁⊗I + I⊗H₂ in pairing order: v₁w₁, v₂w₂, v₁w₂, v₂w₁.
    let v1 = [1.0, 0.0];
    let v2 = [0.0, 1.0];
    let prod = |v: [f64; 2], w: [f64; 2]| -> Vec<C64> {
        (0..4).map(|m| C64::new(v[m >> 1] * w[m & 1], 0.0)).collect()
    };
    let local_vecs = [prod(v1, w1), prod(v2, w2), prod(v1, w2), prod(v2, w1)];
    let source: Vec<Vec<C64>> = pairing.iter().map(|&idx| aligned[idx].clone()).collect();
    let conjugator = overlap_matched_unitary(&source, &local_vecs);

    let local = local_sum(&h1, &h2);
    let residual = (&conjugator.conjugate(h) - local.matrix()).frobenius_norm();
    Ok(Some(LocalWitness { h1, h2, conjugator, residual }))
}

/// `‖Π_C |s⟩‖²` for each cluster.
fn cluster_weights(eig: &EigenDecomposition, clusters: &[Vec<usize>]) -> Vec<f64> {
    let s = singlet();
    clusters
        .iter()
        .map(|c| c.iter().map(|&k| inner(&eig.vector(k), &s).norm_sqr()).sum())
        .collect()
}

/// Squared overlaps `(x, y)` for the two pairs, from `n₁(C)·x + n₂(C)·y = ‖Π_C s‖²`
/// over clusters `C`, where `nₚ(C)` counts members of pair `p` in `C`. Returns the
/// least-squares solution and its worst residual, or `None` if infeasible.
fn solve_overlaps(pairing: &[usize; 4], clusters: &[Vec<usize>], weights: &[f64]) -> Option<(f64, f64, f64)> {
    let rows: Vec<([f64; 2], f64)> = clusters
        .iter()
        .zip(weights)
        .map(|(c, &w)| {
            let n1 = c.iter().filter(|k| pairing[..2].contains(k)).count() as f64;
            let n2 = c.iter().filter(|k| pairing[2..].contains(k)).count() as f64;
            ([n1, n2], w)
        })
        .collect();
    let mut g = [[0.0; 2]; 2];
    let mut rhs = [0.0; 2];
    for (n, w) in &rows {
        for a in 0..2 {
            rhs[a] += n[a] * w;
            for b in 0..2 {
                g[a][b] += n[a] * n[b];
            }
        }
    }
    // Integer entries: a nonsingular G has |det G| ≥ 1.
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let (x, y) = if det.abs() > 0.5 {
        (
            (g[1][1] * rhs[0] - g[0][1] * rhs[1]) / det,
            (g[0][0] * rhs[1] - g[1][0] * rhs[0]) / det,
        )
    } else {
        // Rank one: G⁺ = G / tr(G)², the minimum-norm solution.
        let tr2 = (g[0][0] + g[1][1]).powi(2);
        (
            (g[0][0] * rhs[0] + g[0][1] * rhs[1]) / tr2,
            (g[1][0] * rhs[0] + g[1][1] * rhs[1]) / tr2,
        )
    };
    if x < -OVERLAP_TOL || y < -OVERLAP_TOL {
        return None;
    }
    let (x, y) = (x.max(0.0), y.max(0.0));
    let res = rows
        .iter()
        .map(|(n, w)| (n[0] * x + n[1] * y - w).abs())
        .fold(0.0, f64::max);
    (res <= OVERLAP_TOL).then_some((x, y, res))
}

/// Orthonormal eigenbasis in which eigenvector `k` has squared singlet overlap `target[k]`,
/// obtained by rotating within each cluster. Clusters whose targets do not sum to the
/// cluster weight are rescaled to it.
fn aligned_eigenbasis(eig: &EigenDecomposition, clusters: &[Vec<usize>], target: &[f64]) -> Vec<Vec<C64>> {
    let s = singlet();
    let mut out: Vec<Vec<C64>> = (0..eig.dim()).map(|k| eig.vector(k)).collect();
    for cluster in clusters.iter().filter(|c| c.len() > 1) {
        let vs: Vec<Vec<C64>> = cluster.iter().map(|&k| eig.vector(k)).collect();
        let c: Vec<C64> = vs.iter().map(|v| inner(v, &s)).collect();
        let p = vec_norm(&c);
        let t: Vec<C64> = cluster.iter().map(|&k| C64::new(target[k].max(0.0).sqrt(), 0.0)).collect();
        let tn = vec_norm(&t);
        if p < 1e-14 || tn < 1e-14 {
            continue;
        }
        let c_hat: Vec<C64> = c.iter().map(|z| z / p).collect();
        let t_hat: Vec<C64> = t.iter().map(|z| z / tn).collect();
        // R maps ĉ to t̂; the new coefficients are W = R†.
        let r = &unitary_with_first_column(&t_hat) * &unitary_with_first_column(&c_hat).adjoint();
        let w = r.adjoint();
        for (col, &k) in cluster.iter().enumerate() {
            out[k] = (0..4)
                .map(|row| vs.iter().enumerate().map(|(m, v)| v[row] * w[(m, col)]).sum())
                .collect();
        }
    }
    out
}

/// A unitary whose first column is the unit vector `a`.
fn unitary_with_first_column(a: &[C64]) -> CMatrix {
    let n = a.len();
    let mut cols = vec![a.to_vec()];
    for k in 0..n {
        if cols.len() == n {
            break;
        }
        let mut v = crate::linalg::basis_vector(n, k);
        for _ in 0..2 {
            for q in &cols {
                let c = inner(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= c * qi;
                }
            }
        }
        let nv = vec_norm(&v);
        if nv > 1e-6 {
            cols.push(v.into_iter().map(|z| z / nv).collect());
        }
    }
    CMatrix::from_columns(&cols)
}

/// `U = Σⱼ e^{i(βⱼ − αⱼ)} |wⱼ⟩⟨vⱼ|` where `⟨vⱼ|s⟩ = |·|e^{iαⱼ}` and `⟨wⱼ|s⟩ = |·|e^{iβⱼ}`,
/// so that `U|s⟩ = |s⟩` whenever the overlap moduli agree.
fn overlap_matched_unitary(from: &[Vec<C64>], to: &[Vec<C64>]) -> CMatrix {
    let s = singlet();
    let mut u = CMatrix::zeros(4);
    for (v, w) in from.iter().zip(to) {
        let (ov, ow) = (inner(v, &s), inner(w, &s));
        let phase = if ov.norm() > 1e-12 && ow.norm() > 1e-12 {
            (ow / ow.norm()) * (ov.conj() / ov.norm())
        } else {
            ONE
        };
        u = &u + &CMatrix::outer(w, v).scale(phase);
    }
    u
}

/// A unitary `U` with `[U, T] = 0` and `U H₁ U† = H₂`, if the Hamiltonians are T-similar.
pub fn t_similarity_witness(h1: &Hermitian, h2: &Hermitian) -> Result<Option<CMatrix>> {
    expect_dim(h1.dim(), 4)?;
    expect_dim(h2.dim(), 4)?;
    let scale = threshold_scale(h1).max(threshold_scale(h2));
    let tol = COND_TOL * scale;
    let (e1, e2) = (eigh(h1), eigh(h2));
    if e1.values.iter().zip(&e2.values).any(|(a, b)| (a - b).abs() > tol) {
        return Ok(None);
    }
    let clusters = e1.clusters(DEG_TOL * scale);
    if e2.clusters(DEG_TOL * scale) != clusters {
        return Ok(None);
    }
    let (w1, w2) = (cluster_weights(&e1, &clusters), cluster_weights(&e2, &clusters));
    if w1.iter().zip(&w2).any(|(a, b)| (a - b).abs() > OVERLAP_TOL) {
        return Ok(None);
    }
    // Inside each cluster, put all of the singlet weight on the first vector.
    let mut target = [0.0; 4];
    for (c, &w) in clusters.iter().zip(&w1) {
        target[c[0]] = w;
    }
    let v = aligned_eigenbasis(&e1, &clusters, &target);
    let w = aligned_eigenbasis(&e2, &clusters, &target);
    Ok(Some(overlap_matched_unitary(&v, &w)))
}

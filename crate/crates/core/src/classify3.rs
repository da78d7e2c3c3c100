//! Three-qubit non-universality families.
//!
//! A two-qubit Hamiltonian cannot generate every three-qubit unitary when it
//! (1) is local, (2) has an eigenvector `|a⟩|a⟩`, (3) is traceless,
//! (4) equals `rI + (U⊗U) A (U⊗U)†` with `A` antisymmetric, or
//! (5) commutes with some `U⊗U` whose `U` has distinct eigenvalues.
//! The closure on three qubits gives an independent verdict; the family list is not
//! known to be complete, so a non-full closure with no family hit is `Unknown`.

use serde::Serialize;

use crate::classify2::COND_TOL;
use crate::error::{expect_dim, Result};
use crate::lie::universality_dimension;
use crate::linalg::{
    commutator_i, dot, eigh, hermitian_coords, norm, opnorm, threshold_scale, vec_norm, CMatrix, Hermitian, C64,
    DEG_TOL, ONE, ZERO,
};
use crate::pauli::{from_pauli_coefficients, pauli, pauli_coefficients, Pauli};

/// Accepted distance of `a⊗a` from an eigenspace.
pub const PRODUCT_TOL: f64 = 1e-8;
/// Relative residual accepted by the antisymmetric-form search.
pub const SEARCH_TOL: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct LocalDecomposition {
    pub h1: Hermitian,
    pub h2: Hermitian,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductEigenvector {
    /// Unit vector `a` with `H(a⊗a) ≈ λ(a⊗a)`.
    pub a: Vec<C64>,
    pub eigenvalue: f64,
    /// `‖(I − Π)(a⊗a)‖` for the projector `Π` onto the eigenspace.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AntisymmetricWitness {
    pub r: f64,
    pub u: CMatrix,
    /// Purely imaginary Hermitian, so `Aᵀ = −A`.
    pub a: Hermitian,
    /// `‖H − rI − (U⊗U) A (U⊗U)†‖_F`
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutingWitness {
    /// Traceless `u = Σ uₖσₖ` with `Σ uₖ² = 1`.
    pub u: Hermitian,
    /// `‖[H, u⊗I + I⊗u]‖_F`
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict3 {
    NonUniversal3,
    Universal3,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThreeQubitReport {
    pub local: Option<LocalDecomposition>,
    pub product_eigenvector: Option<ProductEigenvector>,
    pub traceless: bool,
    pub trace: f64,
    pub antisymmetric: Option<AntisymmetricWitness>,
    pub commuting_unitary: Option<CommutingWitness>,
    pub closure_dim_3: usize,
    pub verdict: Verdict3,
    /// A family matched yet the closure is full: one of the two computations is wrong.
    pub cross_check_failed: bool,
}

impl ThreeQubitReport {
    pub fn family_hits(&self) -> [bool; 5] {
        [
            self.local.is_some(),
            self.product_eigenvector.is_some(),
            self.traceless,
            self.antisymmetric.is_some(),
            self.commuting_unitary.is_some(),
        ]
    }

    pub fn any_family_hit(&self) -> bool {
        self.family_hits().iter().any(|&b| b)
    }

    /// The closure is `su(8)`: traceless but otherwise complete.
    pub fn reaches_su8(&self) -> bool {
        self.closure_dim_3 == 63
    }
}

pub fn classify3(h: &Hermitian) -> Result<ThreeQubitReport> {
    expect_dim(h.dim(), 4)?;
    let trace = h.real_trace();
    let traceless = trace.abs() <= COND_TOL * threshold_scale(h);
    let local = test_local(h)?;
    let product_eigenvector = test_product_eigenvector(h)?;
    let antisymmetric = test_antisymmetric_conjugate(h)?;
    let commuting_unitary = test_commuting_local_unitary(h)?;
    let closure_dim_3 = universality_dimension(h, 3)?;
    let mut report = ThreeQubitReport {
        local,
        product_eigenvector,
        traceless,
        trace,
        antisymmetric,
        commuting_unitary,
        closure_dim_3,
        verdict: Verdict3::Unknown,
        cross_check_failed: false,
    };
    let hit = report.any_family_hit();
    report.cross_check_failed = hit && closure_dim_3 == 64;
    report.verdict = if hit {
        Verdict3::NonUniversal3
    } else if closure_dim_3 == 64 {
        Verdict3::Universal3
    } else {
        Verdict3::Unknown
    };
    Ok(report)
}

/// `H = H₁ ⊗ I + I ⊗ H₂`, read off the Pauli coefficients.
pub fn test_local(h: &Hermitian) -> Result<Option<LocalDecomposition>> {
    expect_dim(h.dim(), 4)?;
    let c = pauli_coefficients(h);
    let tol = COND_TOL * threshold_scale(h);
    let coupled = (1..4).flat_map(|i| (1..4).map(move |j| 4 * i + j)).any(|k| c[k].abs() > tol);
    if coupled {
        return Ok(None);
    }
    let half = c[0] / 2.0;
    let single = |coef: [f64; 3]| {
        let mut m = Hermitian::identity(2).scale(half);
        for (p, x) in Pauli::XYZ.into_iter().zip(coef) {
            m = m.add(&pauli(p).scale(x));
        }
        m
    };
    Ok(Some(LocalDecomposition {
        h1: single([c[4], c[8], c[12]]),
        h2: single([c[1], c[2], c[3]]),
    }))
}

/// An eigenvector of the form `a⊗a`.
///
/// Simple eigenvalues: reshape `v` into `M` with `Mᵢⱼ = v₂ᵢ₊ⱼ`; then `v = a⊗a` iff `M`
/// is symmetric of rank one. Degenerate eigenspaces: `a⊗a` lies in the eigenspace iff
/// `⟨w|a⊗a⟩ = aᵀ W̄ a = 0` for every `w` in its orthogonal complement, so the
/// candidates are the roots of these binary quadratic forms, each checked directly.
pub fn test_product_eigenvector(h: &Hermitian) -> Result<Option<ProductEigenvector>> {
    expect_dim(h.dim(), 4)?;
    let scale = threshold_scale(h);
    let eig = eigh(h);
    let mut best: Option<ProductEigenvector> = None;
    for cluster in eig.clusters(DEG_TOL * scale) {
        let span: Vec<Vec<C64>> = cluster.iter().map(|&k| eig.vector(k)).collect();
        let complement: Vec<Vec<C64>> = (0..4).filter(|k| !cluster.contains(k)).map(|k| eig.vector(k)).collect();
        let candidates = if span.len() == 1 {
            rank_one_factor(&span[0]).into_iter().collect()
        } else {
            quadric_roots(&complement)
        };
        let lambda = cluster.iter().map(|&k| eig.values[k]).sum::<f64>() / cluster.len() as f64;
        for a in candidates {
            let aa = kron2(&a, &a);
            let residual = complement
                .iter()
                .map(|w| crate::linalg::inner(w, &aa).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if residual <= PRODUCT_TOL && best.as_ref().is_none_or(|b| residual < b.residual) {
                best = Some(ProductEigenvector { a, eigenvalue: lambda, residual });
            }
        }
    }
    Ok(best)
}

fn kron2(a: &[C64], b: &[C64]) -> Vec<C64> {
    vec![a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// `a` with `a⊗a ∝ v` when `v` reshapes to a (near) symmetric rank-one matrix.
fn rank_one_factor(v: &[C64]) -> Option<Vec<C64>> {
    let (m00, m01, m10, m11) = (v[0], v[1], v[2], v[3]);
    if (m01 - m10).norm() > PRODUCT_TOL || (m00 * m11 - m01 * m10).norm() > PRODUCT_TOL {
        return None;
    }
    let off = (m01 + m10) * 0.5;
    let a = if m00.norm() >= m11.norm() {
        let a0 = m00.sqrt();
        vec![a0, off / a0]
    } else {
        let a1 = m11.sqrt();
        vec![off / a1, a1]
    };
    let n = vec_norm(&a);
    Some(a.into_iter().map(|z| z / n).collect())
}

/// Unit roots `a` of `aᵀ Q a = 0` for `Q` the symmetrized reshape of each `w̄`.
fn quadric_roots(complement: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let mut out = Vec::new();
    for w in complement {
        let q00 = w[0].conj();
        let q01 = (w[1].conj() + w[2].conj()) * 0.5;
        let q11 = w[3].conj();
        let scale = q00.norm().max(q01.norm()).max(q11.norm());
        if scale < 1e-14 {
            continue;
        }
        // Chart with the larger leading coefficient: q₀₀t² + 2q₀₁t + q₁₁ = 0 for a = (t, 1),
        // or q₁₁t² + 2q₀₁t + q₀₀ = 0 for a = (1, t).
        let first = q00.norm() >= q11.norm();
        let (lead, last) = if first { (q00, q11) } else { (q11, q00) };
        let mut roots = Vec::new();
        if lead.norm() <= 1e-14 * scale {
            // Both squares vanish: 2q₀₁a₀a₁ = 0.
            roots.push(vec![ONE, ZERO]);
            roots.push(vec![ZERO, ONE]);
        } else {
            let disc = (q01 * q01 - lead * last).sqrt();
            for t in [(-q01 + disc) / lead, (-q01 - disc) / lead] {
                roots.push(if first { vec![t, ONE] } else { vec![ONE, t] });
            }
        }
        for r in roots {
            let n = vec_norm(&r);
            out.push(r.into_iter().map(|z| z / n).collect());
        }
    }
    // No quadric constrains `a` (antisymmetric reshapes vanish on a⊗a): any `a` works.
    if out.is_empty() {
        out.push(vec![ONE, ZERO]);
    }
    out
}

/// `H = rI + (U⊗U) A (U⊗U)†` with `A` antisymmetric.
///
/// Conjugation by `U⊗U` rotates both Pauli indices of `H₀ = H − rI` by the same
/// `R ∈ SO(3)`. The purely imaginary Pauli strings are those with exactly one `Y`, so
/// the condition asks for an axis `n` (the preimage of `ŷ`) with the single-qubit
/// vectors parallel to `n`, and the correlation matrix `C` vanishing on `n⊥ ⊗ n⊥` and
/// on `n ⊗ n`. The squared violation is minimized over the sphere from many starts
/// by Levenberg-Marquardt. A spectrum of `H₀` not symmetric about zero rules the
/// condition out immediately.
pub fn test_antisymmetric_conjugate(h: &Hermitian) -> Result<Option<AntisymmetricWitness>> {
    expect_dim(h.dim(), 4)?;
    let scale = threshold_scale(h);
    let r = h.real_trace() / 4.0;
    let h0 = h.sub(&Hermitian::identity(4).scale(r));
    let lam = eigh(&h0).values;
    let spec_tol = COND_TOL * scale;
    if (lam[0] + lam[3]).abs() > spec_tol || (lam[1] + lam[2]).abs() > spec_tol {
        return Ok(None);
    }
    let tol = SEARCH_TOL * opnorm(&h0);
    let c = pauli_coefficients(&h0);
    let data = PauliData {
        p: [c[4], c[8], c[12]],
        q: [c[1], c[2], c[3]],
        corr: [[c[5], c[6], c[7]], [c[9], c[10], c[11]], [c[13], c[14], c[15]]],
    };
    let n = data.best_axis(tol);
    let v = rotation_to_y(n);
    let vv = v.kron(&v);
    let rotated = vv.conjugate(&h0);
    let a = Hermitian::symmetrize((&rotated - &rotated.transpose()).scale_real(0.5));
    let u = v.adjoint();
    let uu = u.kron(&u);
    let rebuilt = Hermitian::identity(4).scale(r).add(&a.conjugated_by(&uu));
    let residual = (h.matrix() - rebuilt.matrix()).frobenius_norm();
    Ok((residual <= tol).then_some(AntisymmetricWitness { r, u, a, residual }))
}

struct PauliData {
    p: [f64; 3],
    q: [f64; 3],
    corr: [[f64; 3]; 3],
}

fn axis(x: [f64; 2]) -> [f64; 3] {
    let (t, f) = (x[0], x[1]);
    [t.sin() * f.cos(), t.sin() * f.sin(), t.cos()]
}

fn angles(n: [f64; 3]) -> [f64; 2] {
    let l = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    [(n[2] / l).clamp(-1.0, 1.0).acos(), n[1].atan2(n[0])]
}

impl PauliData {
    /// Components that must vanish for axis `n`.
    fn violation(&self, n: [f64; 3]) -> Vec<f64> {
        let mut out = Vec::with_capacity(16);
        for v in [self.p, self.q] {
            let along = dot(&v, &n);
            out.extend((0..3).map(|i| v[i] - along * n[i]));
        }
        let proj = |i: usize, j: usize| if i == j { 1.0 - n[i] * n[j] } else { -n[i] * n[j] };
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    for l in 0..3 {
                        s += proj(i, k) * self.corr[k][l] * proj(l, j);
                    }
                }
                out.push(s);
            }
        }
        let ncn: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| n[i] * self.corr[i][j] * n[j]).sum();
        out.push(ncn);
        out
    }

    /// Frobenius norm of the symmetric part left over for axis `n`.
    fn cost(&self, n: [f64; 3]) -> f64 {
        2.0 * norm(&self.violation(n))
    }

    fn starts(&self) -> Vec<[f64; 3]> {
        let mut out = Vec::new();
        for v in [self.p, self.q] {
            if norm(&v) > 0.0 {
                out.push(v);
            }
        }
        let c = &self.corr;
        let sym = CMatrix::from_fn(3, |i, j| C64::new(0.5 * (c[i][j] + c[j][i]), 0.0));
        let ctc = CMatrix::from_fn(3, |i, j| C64::new((0..3).map(|k| c[k][i] * c[k][j]).sum(), 0.0));
        let cct = CMatrix::from_fn(3, |i, j| C64::new((0..3).map(|k| c[i][k] * c[j][k]).sum(), 0.0));
        for m in [sym, ctc, cct] {
            let eig = eigh(&Hermitian::symmetrize(m));
            for k in 0..3 {
                let v = eig.vector(k);
                out.push([v[0].re, v[1].re, v[2].re]);
            }
        }
        // Fibonacci lattice on the sphere.
        let count = 64;
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        for k in 0..count {
            let z = 1.0 - (2.0 * k as f64 + 1.0) / count as f64;
            let rho = (1.0 - z * z).sqrt();
            let phi = golden * k as f64;
            out.push([rho * phi.cos(), rho * phi.sin(), z]);
        }
        out
    }

    fn best_axis(&self, tol: f64) -> [f64; 3] {
        let mut best = ([0.0, 1.0, 0.0], f64::INFINITY);
        for start in self.starts() {
            if norm(&start) < 1e-12 {
                continue;
            }
            let n = self.levenberg_marquardt(angles(start));
            let cost = self.cost(n);
            if cost < best.1 {
                best = (n, cost);
            }
            if best.1 <= tol / 10.0 {
                break;
            }
        }
        best.0
    }

    fn levenberg_marquardt(&self, mut x: [f64; 2]) -> [f64; 3] {
        let f = |x: [f64; 2]| self.violation(axis(x));
        let mut r = f(x);
        let mut cost = dot(&r, &r);
        let mut mu = 1e-3;
        for _ in 0..100 {
            if cost == 0.0 {
                break;
            }
            let h = 1e-7;
            let cols: Vec<Vec<f64>> = (0..2)
                .map(|k| {
                    let (mut xp, mut xm) = (x, x);
                    xp[k] += h;
                    xm[k] -= h;
                    f(xp).iter().zip(f(xm)).map(|(a, b)| (a - b) / (2.0 * h)).collect()
                })
                .collect();
            let jtj = [
                [dot(&cols[0], &cols[0]), dot(&cols[0], &cols[1])],
                [dot(&cols[1], &cols[0]), dot(&cols[1], &cols[1])],
            ];
            let jtr = [dot(&cols[0], &r), dot(&cols[1], &r)];
            let mut improved = false;
            for _ in 0..20 {
                let m = [
                    [jtj[0][0] * (1.0 + mu) + 1e-30, jtj[0][1]],
                    [jtj[1][0], jtj[1][1] * (1.0 + mu) + 1e-30],
                ];
                let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
                let step = [
                    -(m[1][1] * jtr[0] - m[0][1] * jtr[1]) / det,
                    -(m[0][0] * jtr[1] - m[1][0] * jtr[0]) / det,
                ];
                let xn = [x[0] + step[0], x[1] + step[1]];
                let rn = f(xn);
                let cn = dot(&rn, &rn);
                if cn < cost {
                    let small = (step[0].abs() + step[1].abs()) < 1e-15;
                    x = xn;
                    r = rn;
                    cost = cn;
                    mu = (mu / 3.0).max(1e-12);
                    improved = !small;
                    break;
                }
                mu *= 4.0;
            }
            if !improved {
                break;
            }
        }
        axis(x)
    }
}

/// `V ∈ SU(2)` whose adjoint action rotates the unit vector `n` onto `ŷ`.
fn rotation_to_y(n: [f64; 3]) -> CMatrix {
    // m = n × ŷ
    let m = [-n[2], 0.0, n[0]];
    let sin = norm(&m);
    let cos = n[1];
    let theta = sin.atan2(cos);
    let (axis, theta) = if sin > 1e-15 {
        ([m[0] / sin, m[1] / sin, m[2] / sin], theta)
    } else if cos > 0.0 {
        return CMatrix::identity(2);
    } else {
        ([1.0, 0.0, 0.0], std::f64::consts::PI)
    };
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut v = CMatrix::identity(2).scale_real(c);
    for (p, k) in Pauli::XYZ.into_iter().zip(axis) {
        v = &v + &pauli(p).matrix().scale(C64::new(0.0, -s * k));
    }
    v
}

/// A traceless `u ≠ 0` with `[H, u⊗I + I⊗u] = 0`, from the null space of the real
/// 16×3 map `(u_x, u_y, u_z) ↦ i[H, Σ uₖ(σₖ⊗I + I⊗σₖ)]`.
pub fn test_commuting_local_unitary(h: &Hermitian) -> Result<Option<CommutingWitness>> {
    expect_dim(h.dim(), 4)?;
    let id = CMatrix::identity(2);
    let cols: Vec<Vec<f64>> = Pauli::XYZ
        .into_iter()
        .map(|p| {
            let s = pauli(p);
            let g = Hermitian::symmetrize(&s.kron(&id) + &id.kron(&s));
            hermitian_coords(&commutator_i(h, &g).expect("4x4"))
        })
        .collect();
    let gram = CMatrix::from_fn(3, |i, j| C64::new(dot(&cols[i], &cols[j]), 0.0));
    let eig = eigh(&Hermitian::symmetrize(gram));
    let v = eig.vector(0);
    let mut u = [v[0].re, v[1].re, v[2].re];
    let un = norm(&u);
    u.iter_mut().for_each(|x| *x /= un);
    let image: Vec<f64> = (0..16).map(|k| (0..3).map(|i| u[i] * cols[i][k]).sum()).collect();
    let residual = norm(&image);
    if residual > COND_TOL * threshold_scale(h) {
        return Ok(None);
    }
    let mut coeffs = [0.0; 16];
    coeffs[4] = u[0];
    coeffs[8] = u[1];
    coeffs[12] = u[2];
    // Σ uₖ σₖ ⊗ I, then keep the first factor.
    let full = from_pauli_coefficients(&coeffs);
    let single = Hermitian::symmetrize(CMatrix::from_fn(2, |i, j| full[(2 * i, 2 * j)]));
    Ok(Some(CommutingWitness { u: single, residual }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify2::classify;
    use crate::fixtures::t_similar_to_local_counterexample;
    use crate::linalg::tests::assert_close;
    use crate::pauli::PauliPair;
    use crate::random::{gaussian_antisymmetric, gaussian_hermitian, haar_unitary, rng_from_seed};

    fn pp(a: Pauli, b: Pauli) -> Hermitian {
        PauliPair(a, b).matrix()
    }

    #[test]
    fn local_examples() {
        let h = pp(Pauli::Z, Pauli::I).add(&pp(Pauli::I, Pauli::X));
        let w = test_local(&h).unwrap().unwrap();
        assert_close(&w.h1, &pauli(Pauli::Z), 1e-15);
        assert_close(&w.h2, &pauli(Pauli::X), 1e-15);
        assert!(test_local(&pp(Pauli::X, Pauli::X)).unwrap().is_none());
        let (h, p) = t_similar_to_local_counterexample();
        assert!(test_local(&h.conjugated_by(&p)).unwrap().is_none());
    }

    #[test]
    fn local_witness_reconstructs() {
        let mut rng = rng_from_seed(61);
        for _ in 0..50 {
            let (a, b) = (gaussian_hermitian(2, &mut rng), gaussian_hermitian(2, &mut rng));
            let h = crate::classify2::local_sum(&a, &b);
            let w = test_local(&h).unwrap().unwrap();
            assert_close(&crate::classify2::local_sum(&w.h1, &w.h2), &h, 1e-9);
        }
    }

    #[test]
    fn product_eigenvector_examples() {
        let w = test_product_eigenvector(&Hermitian::from_real_diag(&[1.0, 2.0, 3.0, 4.0])).unwrap().unwrap();
        assert!((w.a[0].norm() - 1.0).abs() < 1e-12 || (w.a[1].norm() - 1.0).abs() < 1e-12);

        let s = crate::tgate::singlet();
        let ss = CMatrix::outer(&s, &s);
        let h = Hermitian::symmetrize(&ss + &(&CMatrix::identity(4) - &ss).scale_real(2.0));
        let w = test_product_eigenvector(&h).unwrap().unwrap();
        let aa = kron2(&w.a, &w.a);
        let haa = h.apply(&aa);
        assert!(haa.iter().zip(&aa).all(|(x, y)| (x - y * 2.0).norm() < 1e-8));

        let mut rng = rng_from_seed(62);
        for _ in 0..100 {
            assert!(test_product_eigenvector(&gaussian_hermitian(4, &mut rng)).unwrap().is_none());
        }
    }

    #[test]
    fn product_eigenvector_in_degenerate_space() {
        let mut rng = rng_from_seed(63);
        for _ in 0..100 {
            // A 2-dimensional eigenspace spanned by a⊗a and a random vector.
            let a = crate::random::random_unit_in_span(&[vec![ONE, ZERO], vec![ZERO, ONE]], &mut rng);
            let aa = kron2(&a, &a);
            let u = haar_unitary(4, &mut rng);
            let mut cols: Vec<Vec<C64>> = vec![aa.clone()];
            for k in 0..4 {
                let mut v = u.column(k);
                for q in &cols {
                    let c = crate::linalg::inner(q, &v);
                    v.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
                }
                let n = vec_norm(&v);
                if n > 1e-6 && cols.len() < 4 {
                    cols.push(v.into_iter().map(|z| z / n).collect());
                }
            }
            // Mix the first two so neither basis vector is the product.
            let (c0, c1) = (cols[0].clone(), cols[1].clone());
            cols[0] = c0.iter().zip(&c1).map(|(x, y)| (x + y) / 2f64.sqrt()).collect();
            cols[1] = c0.iter().zip(&c1).map(|(x, y)| (x - y) / 2f64.sqrt()).collect();
            let basis = CMatrix::from_columns(&cols);
            let h = Hermitian::from_real_diag(&[1.5, 1.5, -0.3, 2.7]).conjugated_by(&basis);
            let w = test_product_eigenvector(&h).unwrap().expect("product vector missed");
            let v = kron2(&w.a, &w.a);
            let hv = h.apply(&v);
            assert!(hv.iter().zip(&v).all(|(x, y)| (x - y * w.eigenvalue).norm() < 1e-8));
        }
    }

    fn check_antisym(h: &Hermitian, w: &AntisymmetricWitness) {
        assert!(w.residual <= 1e-6);
        assert!((w.a.matrix() + &w.a.transpose()).max_abs() <= 1e-8);
        assert!(w.u.is_unitary(1e-12));
        let uu = w.u.kron(&w.u);
        let rebuilt = Hermitian::identity(4).scale(w.r).add(&w.a.conjugated_by(&uu));
        assert_close(&rebuilt, h, 1e-6);
    }

    #[test]
    fn antisymmetric_examples() {
        let h = pp(Pauli::Y, Pauli::X).add(&pp(Pauli::X, Pauli::Y));
        let w = test_antisymmetric_conjugate(&h).unwrap().unwrap();
        check_antisym(&h, &w);

        let h = Hermitian::identity(4).scale(3.0).add(&pp(Pauli::Y, Pauli::I));
        let w = test_antisymmetric_conjugate(&h).unwrap().unwrap();
        assert!((w.r - 3.0).abs() < 1e-12);
        check_antisym(&h, &w);

        assert!(test_antisymmetric_conjugate(&pp(Pauli::Z, Pauli::Z)).unwrap().is_none());
    }

    #[test]
    fn antisymmetric_family_found() {
        let mut rng = rng_from_seed(64);
        for _ in 0..100 {
            let a = gaussian_antisymmetric(4, &mut rng);
            let u = haar_unitary(2, &mut rng);
            let r = crate::random::normal(&mut rng);
            let h = Hermitian::identity(4).scale(r).add(&a.conjugated_by(&u.kron(&u)));
            let w = test_antisymmetric_conjugate(&h).unwrap().expect("antisymmetric form missed");
            check_antisym(&h, &w);
        }
        for _ in 0..100 {
            assert!(test_antisymmetric_conjugate(&gaussian_hermitian(4, &mut rng)).unwrap().is_none());
        }
    }

    #[test]
    fn commuting_examples() {
        let w = test_commuting_local_unitary(&pp(Pauli::Z, Pauli::Z)).unwrap().unwrap();
        assert_close(&w.u, &pauli(Pauli::Z), 1e-12);
        let heis = pp(Pauli::X, Pauli::X).add(&pp(Pauli::Y, Pauli::Y)).add(&pp(Pauli::Z, Pauli::Z));
        let w = test_commuting_local_unitary(&heis).unwrap().unwrap();
        assert!((w.u.frobenius_norm() - 2f64.sqrt()).abs() < 1e-12);
        let mut rng = rng_from_seed(65);
        for _ in 0..100 {
            assert!(test_commuting_local_unitary(&gaussian_hermitian(4, &mut rng)).unwrap().is_none());
        }
    }

    #[test]
    fn classify3_examples() {
        let r = classify3(&pp(Pauli::Z, Pauli::Z)).unwrap();
        assert_eq!(r.verdict, Verdict3::NonUniversal3);
        assert!(r.traceless && r.commuting_unitary.is_some());
        assert!(r.closure_dim_3 < 64 && !r.cross_check_failed);

        let mut rng = rng_from_seed(66);
        let g = gaussian_hermitian(4, &mut rng);
        let traceless = g.sub(&Hermitian::identity(4).scale(g.real_trace() / 4.0));
        let r = classify3(&traceless).unwrap();
        assert_eq!(r.family_hits(), [false, false, true, false, false]);
        assert_eq!(r.verdict, Verdict3::NonUniversal3);
        assert!(r.reaches_su8());
        assert!(!classify(&traceless).unwrap().is_universal());

        let r = classify3(&gaussian_hermitian(4, &mut rng)).unwrap();
        assert_eq!(r.verdict, Verdict3::Universal3);
        assert_eq!(r.closure_dim_3, 64);
    }
}

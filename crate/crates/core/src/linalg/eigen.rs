//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use super::matrix::{CMatrix, Hermitian, C64, ZERO};
use super::{LinalgError, MAX_SWEEPS};

/// Eigenvalues in ascending order with matching orthonormal eigenvectors stored
/// as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// `V · diag(f(λ)) · V†`
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let n = self.dim();
        let phases: Vec<C64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        CMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj()).sum()
        })
    }

    /// Groups indices of (ascending) eigenvalues whose neighbours differ by at most `gap`.
    pub fn clusters(&self, gap: f64) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for (k, &l) in self.values.iter().enumerate() {
            match out.last_mut() {
                Some(c) if l - self.values[*c.last().unwrap()] <= gap => c.push(k),
                _ => out.push(vec![k]),
            }
        }
        out
    }
}

pub fn eig_hermitian(h: &Hermitian) -> Result<EigenDecomposition, LinalgError> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= f64::EPSILON * 0.25 * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let cols: Vec<Vec<C64>> = order
        .iter()
        .map(|&k| fix_phase(v.column(k)))
        .collect();
    Ok(EigenDecomposition {
        values,
        vectors: CMatrix::from_columns(&cols),
    })
}

/// Infallible variant for callers that already hold a validated `Hermitian`
/// (finite entries, so the Jacobi sweep always converges).
pub(crate) fn eigh(h: &Hermitian) -> EigenDecomposition {
    eig_hermitian(h).expect("Jacobi sweep diverged on a finite Hermitian matrix")
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation zeroing `a[p][q]`. The unitary is
/// `G = diag(1, e^{-iφ}) · R(θ)` on the (p, q) plane, with φ = arg a_pq.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let n = a.dim();
    let beta = a[(p, q)];
    let m = beta.norm();
    if m == 0.0 {
        return;
    }
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    // Negligible against both diagonal entries: drop without rotating.
    if alpha.abs() + 1e3 * m == alpha.abs() && gamma.abs() + 1e3 * m == gamma.abs() {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = beta.conj() / m; // e^{-iφ}
    let theta = (gamma - alpha) / (2.0 * m);
    let t = if theta.is_finite() && theta.abs() < 1e150 {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.5 / theta
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let g_pp = C64::new(c, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Rotates the global phase so the first entry of (near-)maximal modulus is real positive.
fn fix_phase(mut col: Vec<C64>) -> Vec<C64> {
    let max = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return col;
    }
    let pivot = col
        .iter()
        .position(|z| z.norm() >= max * (1.0 - 1e-10))
        .unwrap_or(0);
    let ph = col[pivot].conj() / col[pivot].norm();
    for z in col.iter_mut() {
        *z *= ph;
    }
    col
}

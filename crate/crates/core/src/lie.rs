//! Dynamical Lie algebra closure: the real span of the generators closed under `i[·,·]`.

use crate::error::{expect_dim, Error, Result};
use crate::linalg::{
    commutator_i, from_coords, hermitian_coords, norm, CMatrix, Hermitian, OrthoBasis, ONE, RANK_TOL, ZERO,
};
use crate::tgate::swap;

/// An orthonormal (Hilbert-Schmidt) basis of a real Lie algebra of Hermitian matrices.
#[derive(Clone, Debug)]
pub struct LieSpan {
    dim_ambient: usize,
    basis: Vec<Hermitian>,
    coords: OrthoBasis,
}

impl LieSpan {
    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Hermitian] {
        &self.basis
    }

    /// Dimension of `u(N)`.
    pub fn full_dimension(&self) -> usize {
        self.dim_ambient * self.dim_ambient
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == self.full_dimension()
    }

    /// `‖h − Π h‖ / ‖h‖` for the orthogonal projection `Π` onto the span (0 for `h = 0`).
    pub fn relative_residual(&self, h: &CMatrix) -> f64 {
        let x = hermitian_coords(h);
        let n = norm(&x);
        if n == 0.0 {
            return 0.0;
        }
        norm(&self.coords.project_out(&x)) / n
    }
}

/// Closure of `generators` under real linear combination and `i[·,·]`.
///
/// Generators are scaled to unit Frobenius norm; a new direction is accepted when its
/// residual against the current basis exceeds `rank_tol`. Every pair of accepted
/// elements is commuted exactly once, so the result is deterministic in input order.
///
/// Commutators are taken between the accepted elements themselves (unit-normalized),
/// not between the orthonormalized basis vectors: a direction accepted with a small
/// residual has its rounding error amplified by orthogonalization, and feeding it back
/// into later commutators lets that noise masquerade as new directions.
pub fn closure(generators: &[Hermitian], rank_tol: f64) -> Result<LieSpan> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let dim = first.dim();
    for g in generators {
        expect_dim(g.dim(), dim)?;
    }
    let full = dim * dim;
    let mut span = LieSpan { dim_ambient: dim, basis: Vec::new(), coords: OrthoBasis::new() };
    let mut elements: Vec<Hermitian> = Vec::new();
    for g in generators {
        let n = g.frobenius_norm();
        if n > 0.0 {
            push(&mut span, &mut elements, &g.scale(1.0 / n), rank_tol);
        }
    }
    let mut k = 0;
    while k < elements.len() && span.basis.len() < full {
        for j in 0..k {
            let c = commutator_i(&elements[k], &elements[j])?;
            push(&mut span, &mut elements, &c, rank_tol);
            if span.basis.len() == full {
                break;
            }
        }
        k += 1;
    }
    Ok(span)
}

fn push(span: &mut LieSpan, elements: &mut Vec<Hermitian>, h: &Hermitian, rank_tol: f64) {
    if span.coords.try_push(&hermitian_coords(h), rank_tol).is_some() {
        let q = span.coords.vectors().last().expect("just pushed");
        span.basis.push(from_coords(span.dim_ambient, q));
        elements.push(h.scale(1.0 / h.frobenius_norm()));
    }
}

/// Dimension of the closure of `{H, THT}`; 16 exactly when `H` is 2-universal.
pub fn two_qubit_closure_dimension(h: &Hermitian) -> Result<usize> {
    expect_dim(h.dim(), 4)?;
    let tht = h.conjugated_by(&swap());
    Ok(closure(&[h.clone(), tht], RANK_TOL)?.dimension())
}

/// A relabeling of `n` qubits: qubit `q` (1-based, qubit 1 most significant) moves to `perm[q − 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitPermutation {
    n: usize,
    perm: Vec<usize>,
    matrix: CMatrix,
}

impl QubitPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p == 0 || p > n || seen[p - 1] {
                return Err(Error::InvalidPermutation(perm));
            }
            seen[p - 1] = true;
        }
        let size = 1 << n;
        let target = |x: usize| {
            (0..n).fold(0, |acc, q| {
                let bit = (x >> (n - 1 - q)) & 1;
                acc | (bit << (n - perm[q]))
            })
        };
        let matrix = CMatrix::from_fn(size, |i, j| if i == target(j) { ONE } else { ZERO });
        Ok(Self { n, perm, matrix })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// `P (H ⊗ I) P†` where `P` sends qubits 1 and 2 to `pair.0` and `pair.1` (1-based).
pub fn embed(h: &Hermitian, n: usize, pair: (usize, usize)) -> Result<Hermitian> {
    expect_dim(h.dim(), 4)?;
    let (i, j) = pair;
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedQubits(n));
    }
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidQubitPair(i, j, n));
    }
    let bit = |x: usize, q: usize| (x >> (n - q)) & 1;
    let size = 1 << n;
    let m = CMatrix::from_fn(size, |x, y| {
        let rest_equal = (1..=n).filter(|&q| q != i && q != j).all(|q| bit(x, q) == bit(y, q));
        if rest_equal {
            h[(2 * bit(x, i) + bit(x, j), 2 * bit(y, i) + bit(y, j))]
        } else {
            ZERO
        }
    });
    Ok(Hermitian::symmetrize(m))
}

/// Closure dimension of `H` applied to every ordered pair of `n ∈ {2, 3}` qubits.
pub fn universality_dimension(h: &Hermitian, n: usize) -> Result<usize> {
    universality_dimension_with_tol(h, n, RANK_TOL)
}

pub fn universality_dimension_with_tol(h: &Hermitian, n: usize, rank_tol: f64) -> Result<usize> {
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedQubits(n));
    }
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                gens.push(embed(h, n, (i, j))?);
            }
        }
    }
    Ok(closure(&gens, rank_tol)?.dimension())
}

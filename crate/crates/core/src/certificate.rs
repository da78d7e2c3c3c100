//! Finite certificates of 2-universality.
//!
//! For a universal Hamiltonian the nested commutators of `Ξ̃` and `T̃Ξ̃T̃` can be
//! combined into the standard basis `X_kl, Y_kl, Z_k` of `su(4)`; together with `Ξ̃`
//! itself (nonzero trace) they span `u(4)`. The older nested-commutator scheme
//! `H₁, TH₁T, i[H₁, ·]…` is provided for comparison: when its 16 elements are
//! independent they certify universality, but it can fail on universal input.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::classify2::COND_TOL;
use crate::linalg::{commutator_i, opnorm, real_span_rank, CMatrix, Hermitian, I, ONE, RANK_TOL, ZERO};
use crate::tgate::{swap, t_tilde};
use crate::tridiagonal::{tridiagonal_t_basis, FormType, TridiagonalForm};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertificateError {
    #[error("b·d·f = 0: the Hamiltonian shares an eigenvector with T")]
    SharesEigenvector,
    #[error("a = c = e = g: the Hamiltonian is T-similar to a local one")]
    TSimilarToLocal,
    #[error("a + c + e + g = 0: the Hamiltonian is traceless")]
    Traceless,
    #[error("no diagonal gap exceeds the tolerance; cannot choose a Y12 construction")]
    AmbiguousCase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// `X_kl, Y_kl, Z_k` and `Ξ̃` built from the tridiagonal form.
    Paper,
    /// `H`, `THT` and nested commutators with them.
    Dbe,
}

/// Labels use 1-based T-basis indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Label {
    X(u8, u8),
    Y(u8, u8),
    Z(u8),
    Trace,
    Nested(u8),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::X(k, l) => write!(f, "X{k}{l}"),
            Label::Y(k, l) => write!(f, "Y{k}{l}"),
            Label::Z(k) => write!(f, "Z{k}"),
            Label::Trace => write!(f, "Xi"),
            Label::Nested(j) => write!(f, "H{j}"),
        }
    }
}

impl Label {
    /// The canonical T-basis matrix, for labels that have one.
    pub fn canonical(self) -> Option<CMatrix> {
        let e = |k: u8, l: u8| {
            CMatrix::from_fn(4, |i, j| if (i, j) == (k as usize - 1, l as usize - 1) { ONE } else { ZERO })
        };
        match self {
            Label::X(k, l) => Some(&e(k, l) + &e(l, k)),
            Label::Y(k, l) => Some(&e(k, l).scale(-I) + &e(l, k).scale(I)),
            Label::Z(k) => Some(&e(k, k) - &e(k + 1, k + 1)),
            Label::Trace | Label::Nested(_) => None,
        }
    }
}

/// Which of the three formulas produced `Y12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Y12Case {
    /// `a ≠ c`
    DiagonalAC,
    /// `c ≠ e`
    DiagonalCE,
    /// `a = c = e ≠ g`
    DiagonalAG,
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub label: Label,
    /// T-basis for the tridiagonal scheme, computational basis for the nested scheme.
    pub matrix: Hermitian,
    pub formula: &'static str,
    /// `‖generator − canonical‖_F`, where a canonical form exists.
    pub canonical_residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub scheme: Scheme,
    pub generators: Vec<Generator>,
    pub rank: usize,
    pub independent: bool,
    pub y12_case: Option<Y12Case>,
}

impl Certificate {
    pub fn max_canonical_residual(&self) -> Option<f64> {
        self.generators.iter().filter_map(|g| g.canonical_residual).reduce(f64::max)
    }
}

fn ci(a: &Hermitian, b: &Hermitian) -> Hermitian {
    commutator_i(a, b).expect("same dimension")
}

fn lin(terms: &[(f64, &Hermitian)]) -> Hermitian {
    let mut m = CMatrix::zeros(terms[0].1.dim());
    for (c, h) in terms {
        m = &m + &h.matrix().scale_real(*c);
    }
    Hermitian::symmetrize(m)
}

/// Builds the 16 generators from a tridiagonal form of a universal Hamiltonian.
pub fn build_certificate(xi: &TridiagonalForm) -> Result<Certificate, CertificateError> {
    let [a, b, c, d, e, f, g] = xi.params();
    let xt = Hermitian::symmetrize(tridiagonal_t_basis(&xi.params()));
    let tol = COND_TOL * opnorm(&xt).max(1.0);
    if xi.form_type != FormType::One {
        return Err(CertificateError::SharesEigenvector);
    }
    if xi.diagonal_spread() <= tol {
        return Err(CertificateError::TSimilarToLocal);
    }
    if xi.trace().abs() <= tol {
        return Err(CertificateError::Traceless);
    }

    let txt = xt.conjugated_by(&t_tilde());
    let a_op = ci(&xt, &txt).scale(1.0 / (2.0 * b));
    let x12 = lin(&[(1.0 / (2.0 * b), &xt), (-1.0 / (2.0 * b), &txt)]);
    let y13 = lin(&[(1.0 / (3.0 * d), &ci(&ci(&x12, &a_op), &x12)), (-4.0 / (3.0 * d), &a_op)]);
    let x23 = ci(&x12, &y13);
    let b_op = lin(&[(0.5, &xt), (0.5, &txt)]);

    let (y12, case, y12_formula) = if (a - c).abs() > tol {
        (lin(&[(d / (a - c), &y13), (1.0 / (a - c), &a_op)]), Y12Case::DiagonalAC, "(d·Y13 + A)/(a−c)")
    } else if (c - e).abs() > tol {
        (ci(&y13, &ci(&b_op, &x23)).scale(1.0 / (c - e)), Y12Case::DiagonalCE, "i[Y13, i[B, X23]]/(c−e)")
    } else if (a - g).abs() > tol {
        let inner = ci(&b_op, &ci(&y13, &b_op));
        (
            ci(&ci(&x23, &b_op), &inner).scale(1.0 / ((a - g) * f * f)),
            Y12Case::DiagonalAG,
            "i[i[X23, B], i[B, i[Y13, B]]]/((a−g)f²)",
        )
    } else {
        return Err(CertificateError::AmbiguousCase);
    };

    let x13 = ci(&y12, &x23);
    let x14 = lin(&[(c - e, &x13), (1.0, &ci(&a_op, &x23)), (1.0, &ci(&y13, &b_op))]).scale(1.0 / f);
    let x24 = ci(&x14, &y12);
    let x34 = ci(&x14, &y13);
    let y14 = ci(&x24, &x12);
    let y23 = ci(&x13, &x12);
    let y24 = ci(&x14, &x12);
    let y34 = ci(&x14, &x13);
    let z1 = ci(&y12, &x12).scale(0.5);
    let z2 = ci(&y23, &x23).scale(0.5);
    let z3 = ci(&y34, &x34).scale(0.5);

    let items = vec![
        (Label::X(1, 2), x12, "(Ξ̃ − T̃Ξ̃T̃)/(2b)"),
        (Label::X(1, 3), x13, "i[Y12, X23]"),
        (Label::X(1, 4), x14, "((c−e)X13 + i[A, X23] + i[Y13, B])/f"),
        (Label::X(2, 3), x23, "i[X12, Y13]"),
        (Label::X(2, 4), x24, "i[X14, Y12]"),
        (Label::X(3, 4), x34, "i[X14, Y13]"),
        (Label::Y(1, 2), y12, y12_formula),
        (Label::Y(1, 3), y13, "(i[i[X12, A], X12] − 4A)/(3d)"),
        (Label::Y(1, 4), y14, "i[X24, X12]"),
        (Label::Y(2, 3), y23, "i[X13, X12]"),
        (Label::Y(2, 4), y24, "i[X14, X12]"),
        (Label::Y(3, 4), y34, "i[X14, X13]"),
        (Label::Z(1), z1, "i[Y12, X12]/2"),
        (Label::Z(2), z2, "i[Y23, X23]/2"),
        (Label::Z(3), z3, "i[Y34, X34]/2"),
        (Label::Trace, xt, "Ξ̃"),
    ];
    let generators: Vec<Generator> = items
        .into_iter()
        .map(|(label, matrix, formula)| {
            let canonical_residual = label.canonical().map(|m| (matrix.matrix() - &m).frobenius_norm());
            Generator { label, matrix, formula, canonical_residual }
        })
        .collect();
    let mats: Vec<CMatrix> = generators.iter().map(|g| g.matrix.matrix().clone()).collect();
    let rank = real_span_rank(&mats, RANK_TOL).expect("4x4 generators");
    Ok(Certificate { scheme: Scheme::Paper, generators, rank, independent: rank == 16, y12_case: Some(case) })
}

/// Elements below this fraction of their a-priori scale are numerically zero.
const NESTED_ZERO: f64 = 1e-12;

/// `H₁ = H`, `H₂ = TH₁T`, `Hⱼ = i[H₁, Hⱼ₋₁]` for `j = 3..14`, `H₁₅ = i[H₂, H₃]`, `H₁₆ = i[H₂, H₅]`.
///
/// Nested commutators shrink or grow geometrically, so each element is measured
/// against its own bound `sⱼ` (with `s₁ = s₂ = ‖H‖_F` and each commutator with `H₁` or
/// `H₂` multiplying the bound by `2‖H‖`) and rescaled to unit norm before the rank
/// test. Elements below `10⁻¹² sⱼ` count as zero.
pub fn dbe_scheme(h: &Hermitian) -> Certificate {
    let t = swap();
    let mut mats: Vec<Hermitian> = vec![h.clone(), h.conjugated_by(&t)];
    for j in 2..14 {
        let next = ci(&mats[0], &mats[j - 1]);
        mats.push(next);
    }
    mats.push(ci(&mats[1], &mats[2]));
    mats.push(ci(&mats[1], &mats[4]));

    let base = h.frobenius_norm();
    let growth = 2.0 * opnorm(h);
    let mut bounds = vec![base, base];
    for j in 2..14 {
        bounds.push(bounds[j - 1] * growth);
    }
    bounds.push(bounds[2] * growth);
    bounds.push(bounds[4] * growth);

    let normalized: Vec<CMatrix> = mats
        .iter()
        .zip(&bounds)
        .filter_map(|(m, &s)| {
            let n = m.frobenius_norm();
            (n > NESTED_ZERO * s && n > 0.0).then(|| m.matrix().scale_real(1.0 / n))
        })
        .collect();
    let rank = real_span_rank(&normalized, RANK_TOL).expect("4x4 generators");

    const FORMULAS: [&str; 16] = [
        "H", "THT", "i[H1, H2]", "i[H1, H3]", "i[H1, H4]", "i[H1, H5]", "i[H1, H6]", "i[H1, H7]",
        "i[H1, H8]", "i[H1, H9]", "i[H1, H10]", "i[H1, H11]", "i[H1, H12]", "i[H1, H13]", "i[H2, H3]",
        "i[H2, H5]",
    ];
    let generators = mats
        .into_iter()
        .enumerate()
        .map(|(j, matrix)| Generator {
            label: Label::Nested(j as u8 + 1),
            matrix,
            formula: FORMULAS[j],
            canonical_residual: None,
        })
        .collect();
    Certificate { scheme: Scheme::Dbe, generators, rank, independent: rank == 16, y12_case: None }
}

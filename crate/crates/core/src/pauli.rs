//! Single-qubit Pauli matrices and the two-qubit Pauli coefficient basis.

use std::fmt;
use std::str::FromStr;

use crate::linalg::{CMatrix, Hermitian, C64, I, ONE, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    pub const XYZ: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

pub fn pauli(p: Pauli) -> Hermitian {
    let m = match p {
        Pauli::I => [[ONE, ZERO], [ZERO, ONE]],
        Pauli::X => [[ZERO, ONE], [ONE, ZERO]],
        Pauli::Y => [[ZERO, -I], [I, ZERO]],
        Pauli::Z => [[ONE, ZERO], [ZERO, -ONE]],
    };
    Hermitian::symmetrize(CMatrix::from_fn(2, |i, j| m[i][j]))
}

/// A two-qubit Pauli string `σ_first ⊗ σ_second`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliPair(pub Pauli, pub Pauli);

impl PauliPair {
    /// All 16 strings in canonical order `II, IX, IY, IZ, XI, …, ZZ`.
    pub fn all() -> impl Iterator<Item = PauliPair> {
        Pauli::ALL
            .into_iter()
            .flat_map(|a| Pauli::ALL.into_iter().map(move |b| PauliPair(a, b)))
    }

    pub fn matrix(self) -> Hermitian {
        Hermitian::symmetrize(pauli(self.0).kron(&pauli(self.1)))
    }

    pub fn index(self) -> usize {
        4 * self.0 as usize + self.1 as usize
    }
}

impl fmt::Display for PauliPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.0.letter(), self.1.letter())
    }
}

impl FromStr for PauliPair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut it = s.chars();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => match (Pauli::from_letter(a), Pauli::from_letter(b)) {
                (Some(a), Some(b)) => Ok(PauliPair(a, b)),
                _ => Err(format!("invalid Pauli string {s:?}")),
            },
            _ => Err(format!("Pauli string {s:?} must have exactly two letters")),
        }
    }
}

/// Real coefficients `c_P = tr(H P)/4` in canonical order; `H = Σ c_P P`.
pub fn pauli_coefficients(h: &CMatrix) -> [f64; 16] {
    assert_eq!(h.dim(), 4, "two-qubit Pauli decomposition needs a 4x4 matrix");
    let mut out = [0.0; 16];
    for p in PauliPair::all() {
        let m = p.matrix();
        let tr: C64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)] * m[(j, i)])
            .sum();
        out[p.index()] = tr.re / 4.0;
    }
    out
}

pub fn from_pauli_coefficients(coeffs: &[f64; 16]) -> Hermitian {
    let mut m = CMatrix::zeros(4);
    for p in PauliPair::all() {
        let c = coeffs[p.index()];
        if c != 0.0 {
            m = &m + &p.matrix().scale_real(c);
        }
    }
    Hermitian::symmetrize(m)
}

//! Named Hamiltonians used by tests, benchmarks and the CLI examples.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::Rng;

use crate::linalg::{CMatrix, Hermitian, C64, ONE, ZERO};
use crate::random::haar_unitary;

/// Barenco gate parameters: irrational multiples of π and of each other.
pub const BARENCO_PHI: f64 = PI * 2.236_067_977_499_79 / 10.0;
pub const BARENCO_BETA: f64 = PI * std::f64::consts::SQRT_2 / 10.0;
pub const BARENCO_THETA: f64 = PI * 1.732_050_807_568_877_2 / 10.0;

/// Tridiagonal parameters `(a, b, c, d, e, f, g)` of a universal Hamiltonian.
pub const UNIVERSAL_TRIDIAGONAL: [f64; 7] = [1.0, 1.0, 2.0, 1.0, 3.0, 1.0, 5.0];

/// `A(φ, β, θ)`: identity on `|00⟩, |01⟩`, a phased rotation on `|10⟩, |11⟩`.
pub fn barenco_gate(phi: f64, beta: f64, theta: f64) -> CMatrix {
    let eb = C64::from_polar(1.0, beta);
    let mi = C64::new(0.0, -1.0);
    let mut a = CMatrix::identity(4);
    a[(2, 2)] = eb * theta.cos();
    a[(2, 3)] = mi * C64::from_polar(1.0, beta - phi) * theta.sin();
    a[(3, 2)] = mi * C64::from_polar(1.0, beta + phi) * theta.sin();
    a[(3, 3)] = eb * theta.cos();
    a
}

/// The lower block `[[β, −θe^{−iφ}], [−θe^{iφ}, β]]`, zero elsewhere; `e^{iH} = A(φ, β, θ)`.
pub fn barenco_hamiltonian(phi: f64, beta: f64, theta: f64) -> Hermitian {
    let mut h = CMatrix::zeros(4);
    h[(2, 2)] = C64::new(beta, 0.0);
    h[(3, 3)] = C64::new(beta, 0.0);
    h[(2, 3)] = -C64::from_polar(theta, -phi);
    h[(3, 2)] = -C64::from_polar(theta, phi);
    Hermitian::symmetrize(h)
}

pub fn barenco_natural_hamiltonian() -> Hermitian {
    barenco_hamiltonian(BARENCO_PHI, BARENCO_BETA, BARENCO_THETA)
}

/// Another logarithm of the same gate: on the fixed subspace span{|00⟩, |01⟩} act
/// diagonally in a random basis with eigenvalues 2π and 4π.
pub fn barenco_degenerate_variant(rng: &mut impl Rng) -> Hermitian {
    let w = haar_unitary(2, rng);
    let block = w.conjugate(&CMatrix::real_diag(&[2.0 * PI, 4.0 * PI]));
    let mut h = barenco_natural_hamiltonian().into_matrix();
    for i in 0..2 {
        for j in 0..2 {
            h[(i, j)] = block[(i, j)];
        }
    }
    Hermitian::symmetrize(h)
}

/// `H = |0⟩⟨0| ⊗ I + I ⊗ |0⟩⟨0|` and a T-commuting `P` for which `PHP†` is non-local.
pub fn t_similar_to_local_counterexample() -> (Hermitian, CMatrix) {
    let h = Hermitian::from_real_diag(&[2.0, 1.0, 1.0, 0.0]);
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let p = CMatrix::from_rows(&[
        vec![r, ZERO, ZERO, r],
        vec![ZERO, ZERO, ONE, ZERO],
        vec![ZERO, ONE, ZERO, ZERO],
        vec![r, ZERO, ZERO, -r],
    ])
    .expect("4x4");
    (h, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expm_i, tests::assert_close};
    use crate::random::rng_from_seed;
    use crate::tgate::commutes_with_t;

    #[test]
    fn hamiltonians_generate_the_gate() {
        let a = barenco_gate(BARENCO_PHI, BARENCO_BETA, BARENCO_THETA);
        assert!(a.is_unitary(1e-14));
        assert_close(&expm_i(&barenco_natural_hamiltonian(), 1.0), &a, 1e-12);
        let v = barenco_degenerate_variant(&mut rng_from_seed(5));
        assert_close(&expm_i(&v, 1.0), &a, 1e-12);
    }

    #[test]
    fn counterexample_conjugator_commutes_with_t() {
        let (_, p) = t_similar_to_local_counterexample();
        assert!(p.is_unitary(1e-15));
        assert!(commutes_with_t(&p, 1e-15).unwrap());
    }
}

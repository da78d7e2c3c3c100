//! Seeded samplers for the generic and the non-universal Hamiltonian families.
//!
//! Every sample is checked with the family's own witness test before it is returned,
//! so a sampler bug surfaces as an error instead of a mislabelled Hamiltonian.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::classify2::{is_t_similar_to_local, local_sum};
use crate::classify3::{test_antisymmetric_conjugate, test_commuting_local_unitary, test_local, test_product_eigenvector};
use crate::error::{Error, Result};
use crate::linalg::{normalized, CMatrix, Hermitian, C64, ONE, ZERO};
use crate::random::{gaussian_antisymmetric, gaussian_hermitian, haar_unitary, normal, random_unit_in_span, sample_rng};
use crate::tgate::random_t_commuting_unitary;
use crate::tridiagonal::tridiagonalize;

/// Redraws allowed per sample before giving up.
const MAX_ATTEMPTS: usize = 64;
const TRACE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Generic,
    Traceless,
    SharedEigvec,
    TLocal,
    Local,
    ProductEigvec,
    Antisym,
    CommutingU,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Generic,
        Family::Traceless,
        Family::SharedEigvec,
        Family::TLocal,
        Family::Local,
        Family::ProductEigvec,
        Family::Antisym,
        Family::CommutingU,
    ];
    /// Families that are never 2-universal.
    pub const TWO_QUBIT_NON_UNIVERSAL: [Family; 3] = [Family::Traceless, Family::SharedEigvec, Family::TLocal];
    /// Families that are never 3-universal.
    pub const THREE_QUBIT_NON_UNIVERSAL: [Family; 5] =
        [Family::Local, Family::ProductEigvec, Family::Traceless, Family::Antisym, Family::CommutingU];

    pub fn id(self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::Traceless => "traceless",
            Family::SharedEigvec => "shared-eigvec",
            Family::TLocal => "t-local",
            Family::Local => "local",
            Family::ProductEigvec => "product-eigvec",
            Family::Antisym => "antisym",
            Family::CommutingU => "commuting-u",
        }
    }

    /// One unverified draw.
    pub fn draw(self, rng: &mut impl Rng) -> Hermitian {
        match self {
            Family::Generic => gaussian_hermitian(4, rng),
            Family::Traceless => {
                let g = gaussian_hermitian(4, rng);
                let shift = g.real_trace() / 4.0;
                g.sub(&Hermitian::identity(4).scale(shift))
            }
            Family::SharedEigvec => {
                let triplet = vec![
                    vec![ONE, ZERO, ZERO, ZERO],
                    vec![ZERO, ZERO, ZERO, ONE],
                    normalized(&[ZERO, ONE, ONE, ZERO]),
                ];
                with_eigenvector(&random_unit_in_span(&triplet, rng), rng)
            }
            Family::TLocal => {
                let h = local_sum(&gaussian_hermitian(2, rng), &gaussian_hermitian(2, rng));
                h.conjugated_by(&random_t_commuting_unitary(rng))
            }
            Family::Local => local_sum(&gaussian_hermitian(2, rng), &gaussian_hermitian(2, rng)),
            Family::ProductEigvec => {
                let a = random_unit_in_span(&[vec![ONE, ZERO], vec![ZERO, ONE]], rng);
                let aa: Vec<C64> = a.iter().flat_map(|x| a.iter().map(move |y| x * y)).collect();
                with_eigenvector(&aa, rng)
            }
            Family::Antisym => {
                let r = normal(rng);
                let u = haar_unitary(2, rng);
                let a = gaussian_antisymmetric(4, rng);
                a.conjugated_by(&u.kron(&u)).add(&Hermitian::identity(4).scale(r))
            }
            Family::CommutingU => {
                // Block diagonal on the eigenspaces {|00⟩}, {|01⟩, |10⟩}, {|11⟩} of Z⊗I + I⊗Z.
                let g = gaussian_hermitian(4, rng);
                let block = |i: usize, j: usize| i == j || (i.min(j) == 1 && i.max(j) == 2);
                let h0 = CMatrix::from_fn(4, |i, j| if block(i, j) { g[(i, j)] } else { ZERO });
                let u = haar_unitary(2, rng);
                Hermitian::symmetrize(h0).conjugated_by(&u.kron(&u))
            }
        }
    }

    /// Membership check through the family's witness test.
    pub fn verify(self, h: &Hermitian) -> Result<bool> {
        Ok(match self {
            Family::Generic => true,
            Family::Traceless => h.real_trace().abs() <= TRACE_TOL,
            Family::SharedEigvec => tridiagonalize(h)?.has_zero_coupling(),
            Family::TLocal => is_t_similar_to_local(h)?.is_some(),
            Family::Local => test_local(h)?.is_some(),
            Family::ProductEigvec => test_product_eigenvector(h)?.is_some(),
            Family::Antisym => test_antisymmetric_conjugate(h)?.is_some(),
            Family::CommutingU => test_commuting_local_unitary(h)?.is_some(),
        })
    }

    /// Sample `index` of the stream for `seed`: independent of every other index.
    pub fn sample(self, seed: u64, index: u64) -> Result<Hermitian> {
        let mut rng = sample_rng(seed, index);
        for _ in 0..MAX_ATTEMPTS {
            let h = self.draw(&mut rng);
            if self.verify(&h)? {
                return Ok(h);
            }
        }
        Err(Error::InvalidArgument(format!(
            "no verified {self} sample after {MAX_ATTEMPTS} draws (seed {seed}, index {index})"
        )))
    }

    pub fn samples(self, seed: u64, count: u64) -> Result<Vec<Hermitian>> {
        (0..count).map(|i| self.sample(seed, i)).collect()
    }
}

/// `λ vv† + Π G Π` with `Π = I − vv†` and `G` Gaussian.
fn with_eigenvector(v: &[C64], rng: &mut impl Rng) -> Hermitian {
    let vv = CMatrix::outer(v, v);
    let proj = &CMatrix::identity(4) - &vv;
    let g = gaussian_hermitian(4, rng);
    let rest = &(&proj * g.matrix()) * &proj;
    Hermitian::symmetrize(&vv.scale_real(normal(rng)) + &rest)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify2::{classify, Verdict};

    #[test]
    fn ids_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.id().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("bogus".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn deterministic() {
        for f in Family::ALL {
            assert!(f.sample(3, 5).unwrap() == f.sample(3, 5).unwrap());
            assert!(f.sample(3, 5).unwrap() != f.sample(3, 6).unwrap());
        }
    }

    #[test]
    fn sample_examples() {
        for h in Family::Traceless.samples(7, 5).unwrap() {
            assert!(h.real_trace().abs() <= 1e-12);
            assert_eq!(classify(&h).unwrap().verdict, Verdict::NonUniversal);
        }
        for h in Family::SharedEigvec.samples(7, 5).unwrap() {
            assert!(tridiagonalize(&h).unwrap().has_zero_coupling());
        }
        let generic = Family::Generic.samples(7, 100).unwrap();
        assert!(generic.iter().all(|h| classify(h).unwrap().verdict == Verdict::Universal));
    }

    #[test]
    fn every_family_draw_verifies_first_time() {
        for f in Family::ALL {
            for i in 0..20 {
                let h = f.draw(&mut sample_rng(11, i));
                assert!(f.verify(&h).unwrap(), "{f} draw {i} failed its own witness test");
            }
        }
    }
}

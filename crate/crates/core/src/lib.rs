//! Universality of two-qubit Hamiltonians: the tridiagonal normal form under swap-commuting
//! conjugation, the closed-form classification with witnesses and certificates, Lie-closure
//! oracles on two and three qubits, and the known three-qubit non-universal families.

pub mod certificate;
pub mod classify2;
pub mod classify3;
pub mod document;
pub mod error;
pub mod evolve;
pub mod families;
pub mod fixtures;
pub mod lie;
pub mod linalg;
pub mod pauli;
pub mod random;
pub mod tgate;
pub mod tridiagonal;

pub use error::{Error, Result};
pub use certificate::{build_certificate, dbe_scheme, Certificate, CertificateError, Scheme};
pub use classify2::{classify, ClassificationReport, Verdict};
pub use classify3::{classify3, ThreeQubitReport, Verdict3};
pub use document::HamiltonianDocument;
pub use evolve::{positive_time_replacement, GateSequence, GateStep, Replacement};
pub use families::Family;
pub use lie::{closure, universality_dimension, LieSpan};
pub use linalg::{CMatrix, Hermitian, C64};
pub use tridiagonal::{tridiagonalize, FormType, TridiagonalForm};

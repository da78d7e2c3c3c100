use thiserror::Error;

use crate::certificate::CertificateError;
use crate::linalg::LinalgError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("matrix is not normal (max |NN† - N†N| = {0:e})")]
    NotNormal(f64),
    #[error("{0} qubits unsupported; closure runs on 2 or 3 qubits")]
    UnsupportedQubits(usize),
    #[error("qubit pair ({0}, {1}) is invalid on {2} qubits")]
    InvalidQubitPair(usize, usize, usize),
    #[error("invalid qubit permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("closure needs at least one generator")]
    EmptyGenerators,
    #[error(transparent)]
    Certificate(#[from] CertificateError),
    #[error("unknown generator id {0:?}")]
    UnknownGenerator(String),
    #[error("durations must be positive, got {0}")]
    NonPositiveDuration(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Document(String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

pub(crate) fn expect_dim(found: usize, expected: usize) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::WrongDimension { expected, found })
    }
}

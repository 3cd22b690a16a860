use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} is not unitary (‖m†m − I‖_F = {deviation:.3e})")]
    NotUnitary { what: &'static str, deviation: f64 },
    #[error("basis is not orthonormal (max deviation {deviation:.3e})")]
    NotOrthonormal { deviation: f64 },
    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },
    #[error("non-finite entry in input")]
    NonFinite,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("target qubits must be distinct")]
    DuplicateTargets,
    #[error("register width {0} exceeds the supported maximum of 8 qubits")]
    RegisterTooWide(usize),
    #[error("outcome {outcome} has zero probability")]
    ZeroProbability { outcome: usize },
    #[error("kept qubits are entangled with the rest of the register")]
    NotProduct,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

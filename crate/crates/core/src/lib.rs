//! Two-qubit gate teleportation analysis.
//!
//! Given a two-qubit gate and an orthonormal two-qubit measurement basis this
//! crate decides whether the gate can be teleported deterministically or with
//! some probability `N/16`, extracts the local correction operators, and
//! cross-checks every verdict with a brute-force statevector simulation.
//!
//! Module map:
//!
//! - [`linalg`]: 2×2 / 4×4 complex kernels, Pauli labels, Haar sampling.
//! - [`gates`]: the named gates used throughout (CNOT, SWAP, `C_{π/8}`, …).
//! - [`kak`]: Cartan decomposition into local factors and a canonical
//!   non-local core, Euler angles, Clifford membership.
//! - [`separability`]: operator Schmidt decomposition, tensor-product
//!   factorization and the closed-form `(θ, λ)` separability predicate.
//! - [`bases`]: measurement basis families and their induced 2×2 matrices.
//! - [`teleport`]: state and gate teleportation analysis, sufficient
//!   conditions for deterministic teleportation, table reproduction.
//! - [`simulator`]: the statevector oracle for the teleportation circuits.
//! - [`fourway`]: gate teleportation over a four-qubit resource with genuine
//!   four-way entanglement.
//! - [`cli`]: command-line surface and the JSON gate/basis file formats.
//!
//! Only two-qubit gates are supported; qudit and n-qubit generalizations are
//! out of scope.

pub mod bases;
pub mod cli;
pub mod error;
pub mod fourway;
pub mod gates;
pub mod kak;
pub mod linalg;
pub mod separability;
pub mod simulator;
pub mod teleport;

pub use error::{Error, Result};
pub use linalg::{Mat2, Mat4, Pauli, PauliPair, StateVec, C64};

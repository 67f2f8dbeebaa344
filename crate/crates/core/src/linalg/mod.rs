//! Dense complex linear algebra for registers of at most four qubits.

mod eigen;
mod matrix;
mod qubits;

pub use eigen::hermitian_eigenvalues;
pub use matrix::{pauli, ComplexMatrix};
pub use qubits::{lift, partial_trace, partial_transpose, QubitLayout};

/// Complex amplitude type used throughout the crate.
pub type ComplexScalar = num_complex::Complex64;

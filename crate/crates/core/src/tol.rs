//! Numerical tolerances shared by every module.

/// Max abs entry of `h - h†` accepted as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Off-diagonal Frobenius threshold ending the Jacobi iteration (relative to `max(1, ‖h‖_F)`).
pub const EIG_TOL: f64 = 1e-14;
/// Cap on cyclic Jacobi sweeps.
pub const EIG_MAX_SWEEPS: usize = 100;
/// Trace agreement for partial traces and channel outputs.
pub const TRACE_TOL: f64 = 1e-12;
/// Normalization tolerance for state parameters and state vectors.
pub const NORM_TOL: f64 = 1e-10;
/// Trace tolerance when validating a density matrix.
pub const DENSITY_TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue tolerated on a positive-semidefinite input.
pub const PSD_TOL: f64 = 1e-9;
/// Eigenvalues of magnitude below this are treated as zero when summing negative parts.
pub const NEGATIVE_EIG_CUTOFF: f64 = 1e-12;
/// Renormalizing a trace at or below this is an error.
pub const ZERO_TRACE: f64 = 1e-14;
/// Completeness defect below which a Kraus set counts as trace preserving.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Idempotence tolerance for measurement projectors.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Measurement branches with probability at or below this are reported as absent.
pub const ZERO_PROBABILITY: f64 = 1e-14;
/// Imaginary residue allowed in a formula that should evaluate to a real number.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-10;

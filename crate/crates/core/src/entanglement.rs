//! Negativity across one-vs-rest cuts and the tripartite geometric mean.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_transpose, ComplexMatrix, QubitLayout};
use crate::tol::{DENSITY_TRACE_TOL, HERMITICITY_TOL, NEGATIVE_EIG_CUTOFF};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativityReport {
    pub n_a_bc: f64,
    pub n_b_ac: f64,
    pub n_c_ab: f64,
    pub tripartite: f64,
}

pub(crate) fn validate_density(rho: &ComplexMatrix, layout: QubitLayout) -> Result<()> {
    layout.check_operator(rho)?;
    let herm = rho.hermiticity_defect()?;
    if herm > HERMITICITY_TOL {
        return Err(Error::InvalidDensity(format!("not Hermitian (defect {herm:e})")));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
        return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
    }
    Ok(())
}

/// `−2 Σ λ` over the negative eigenvalues of `rho^{T_qubit}`.
pub fn negativity_cut(rho: &ComplexMatrix, layout: QubitLayout, qubit: usize) -> Result<f64> {
    validate_density(rho, layout)?;
    let pt = partial_transpose(rho, layout, qubit)?;
    let negative: f64 = hermitian_eigenvalues(&pt)?
        .into_iter()
        .filter(|&l| l < -NEGATIVE_EIG_CUTOFF)
        .sum();
    Ok(-2.0 * negative)
}

pub fn tripartite_negativity(rho: &ComplexMatrix, layout: QubitLayout) -> Result<NegativityReport> {
    if layout.n_qubits() != 3 {
        return Err(Error::InvalidDensity(format!(
            "tripartite negativity needs 3 qubits, got {}",
            layout.n_qubits()
        )));
    }
    let n_a_bc = negativity_cut(rho, layout, 0)?;
    let n_b_ac = negativity_cut(rho, layout, 1)?;
    let n_c_ab = negativity_cut(rho, layout, 2)?;
    Ok(NegativityReport {
        n_a_bc,
        n_b_ac,
        n_c_ab,
        tripartite: geometric_mean(&[n_a_bc, n_b_ac, n_c_ab]),
    })
}

fn geometric_mean(values: &[f64]) -> f64 {
    if values.iter().any(|&v| v <= 0.0) {
        return 0.0;
    }
    (values.iter().map(|v| v.ln()).sum::<f64>() / values.len() as f64).exp()
}

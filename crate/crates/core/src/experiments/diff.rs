//! Simulation versus closed-form comparison.
//!
//! Conventions: the printed GHZ coefficients `A_i` are half the normalized
//! density entries, so they are compared as `2·A_i`, and the printed GHZ
//! analyzer fidelities likewise against `2 · probability · fidelity`. The
//! GHZ-like `B_k` are the density entries over `|100⟩, |001⟩, |010⟩, |111⟩`,
//! and the tabulated GHZ-like fidelities are compared against
//! `probability · fidelity` with no rescaling.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::csv::format_value;
use super::{decohered_resource, StateSpec, SweepSpec};
use crate::channels::ChannelParams;
use crate::error::{Error, Result};
use crate::formulas::{bell_kappas, fidelity_ghz_formula, fidelity_ghz_like_formula, ghz_coeffs, ghz_like_coeffs};
use crate::linalg::ComplexMatrix;
use crate::teleport::{run_protocol, BellOutcome, ProtocolKind};

/// Largest entrywise deviation between two equally shaped matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffReport {
    pub max_abs_diff: f64,
    pub location: (usize, usize),
}

pub fn diff_report(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<DiffReport> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "diff",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let mut report = DiffReport {
        max_abs_diff: 0.0,
        location: (0, 0),
    };
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let d = (a.get(r, c) - b.get(r, c)).norm();
            if d > report.max_abs_diff {
                report = DiffReport {
                    max_abs_diff: d,
                    location: (r, c),
                };
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyRow {
    pub context: String,
    pub p: f64,
    pub gamma: f64,
    pub theta: Option<f64>,
    pub quantity: String,
    pub simulated: Complex64,
    pub formula: Complex64,
    pub absdiff: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiscrepancyLedger {
    pub rows: Vec<DiscrepancyRow>,
}

pub const LEDGER_HEADER: &str =
    "context,p,gamma,theta,quantity,simulated_re,simulated_im,formula_re,formula_im,absdiff";

impl DiscrepancyLedger {
    #[allow(clippy::too_many_arguments)]
    pub fn record(
        &mut self,
        context: &str,
        p: f64,
        gamma: f64,
        theta: Option<f64>,
        quantity: impl Into<String>,
        simulated: Complex64,
        formula: Complex64,
    ) {
        self.rows.push(DiscrepancyRow {
            context: context.to_string(),
            p,
            gamma,
            theta,
            quantity: quantity.into(),
            simulated,
            formula,
            absdiff: (simulated - formula).norm(),
        });
    }

    pub fn max_abs_diff(&self) -> f64 {
        self.rows.iter().map(|r| r.absdiff).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{LEDGER_HEADER}");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                r.context,
                format_value(r.p),
                format_value(r.gamma),
                r.theta.map(format_value).unwrap_or_default(),
                r.quantity,
                format_value(r.simulated.re),
                format_value(r.simulated.im),
                format_value(r.formula.re),
                format_value(r.formula.im),
                format_value(r.absdiff)
            );
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

const GHZ_LIKE_ORDER: [usize; 4] = [0b100, 0b001, 0b010, 0b111];

/// Compares the printed closed forms with the simulation over the spec's `p × γ` grid.
pub fn paper_discrepancies(spec: &SweepSpec) -> Result<DiscrepancyLedger> {
    spec.validate()?;
    let mut ledger = DiscrepancyLedger::default();
    let re = |x: f64| Complex64::new(x, 0.0);
    for &p in &spec.p_values {
        for gamma in spec.gamma.values() {
            let at = |e: Error| Error::AtGridPoint {
                p,
                gamma,
                source: Box::new(e),
            };
            let params = ChannelParams::new(p, gamma)?;
            let rho = decohered_resource(spec, params).map_err(at)?;
            match spec.state {
                StateSpec::Ghz(state) => {
                    let ctx = "ghz";
                    let a = ghz_coeffs(&state, params);
                    for (name, (r, c), coeff) in [
                        ("A1", (0, 0), a.a1),
                        ("A2", (0, 7), a.a2),
                        ("A3", (7, 0), a.a3),
                        ("A4", (7, 7), a.a4),
                    ] {
                        ledger.record(ctx, p, gamma, None, name, rho.get(r, c), coeff * 2.0);
                    }
                    let kappas = bell_kappas(&spec.input, &a);
                    for &theta in &spec.theta_values {
                        let report = run_protocol(&spec.input, &rho, ProtocolKind::Ghz, theta).map_err(at)?;
                        for charlie in ProtocolKind::Ghz.charlie_outcomes() {
                            let sim = report
                                .branch(BellOutcome::PhiPlus, charlie)
                                .map_or(0.0, |b| b.weighted_fidelity());
                            let f = fidelity_ghz_formula(theta, &spec.input, &kappas, charlie).map_err(at)?;
                            let name = format!("fidelity_phi_plus_{}", charlie.label());
                            ledger.record(ctx, p, gamma, Some(theta), name, re(2.0 * sim), re(f));
                        }
                    }
                }
                StateSpec::GhzLike(state) => {
                    let ctx = "ghz_like";
                    let b = ghz_like_coeffs(&state, params);
                    for (i, &r) in GHZ_LIKE_ORDER.iter().enumerate() {
                        for (j, &c) in GHZ_LIKE_ORDER.iter().enumerate() {
                            let k = 4 * i + j + 1;
                            ledger.record(ctx, p, gamma, None, format!("B{k}"), rho.get(r, c), b.get(k));
                        }
                    }
                    let report = run_protocol(&spec.input, &rho, ProtocolKind::GhzLike, 0.0).map_err(at)?;
                    for bell in BellOutcome::ALL {
                        for charlie in ProtocolKind::GhzLike.charlie_outcomes() {
                            let sim = report.branch(bell, charlie).map_or(0.0, |r| r.weighted_fidelity());
                            let f = fidelity_ghz_like_formula(&spec.input, &b, bell, charlie).map_err(at)?;
                            let name = format!("fidelity_{}_{}", bell.label(), charlie.label());
                            ledger.record(ctx, p, gamma, None, name, re(sim), re(f));
                        }
                    }
                }
            }
        }
    }
    Ok(ledger)
}

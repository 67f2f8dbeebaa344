//! Parameter sweeps and their file formats.
//!
//! A [`SweepSpec`] names a state family, a channel variant, a grid over
//! `(p, γ, θ)` and the quantity to evaluate. [`run_sweep`] walks the grid
//! p-major, γ next, θ innermost, and the result is independent of how many
//! rayon threads the caller installs.

pub mod check;
pub mod csv;
pub mod diff;
pub mod runfile;
pub mod svg;

use rayon::prelude::*;

use crate::channels::{apply_channel, ApplicationMode, ChannelParams, KrausVariant};
use crate::entanglement::tripartite_negativity;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, QubitLayout};
use crate::states::{density, ghz, ghz_like, GhzLikeParams, GhzParams, UnknownQubit};
use crate::teleport::{run_protocol, BellOutcome, CharlieOutcome, ProtocolKind};

pub use check::{channel_check, ChannelCheckRow, DEFAULT_CHECK_GRID};
pub use csv::{emit_csv, format_value, parse_csv, write_csv, HEADER as CSV_HEADER};
pub use diff::{diff_report, paper_discrepancies, DiffReport, DiscrepancyLedger, DiscrepancyRow, LEDGER_HEADER};
pub use runfile::{parse_angle, parse_runfile, parse_runfile_str, OutputSpec, RunFile};
pub use svg::{emit_svg_lineplot, render_svg_lineplot, Axis, PlotFrame};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Ghz(GhzParams),
    GhzLike(GhzLikeParams),
}

impl StateSpec {
    pub fn kind(&self) -> ProtocolKind {
        match self {
            StateSpec::Ghz(_) => ProtocolKind::Ghz,
            StateSpec::GhzLike(_) => ProtocolKind::GhzLike,
        }
    }

    pub fn density(&self) -> ComplexMatrix {
        let psi = match self {
            StateSpec::Ghz(p) => ghz(p),
            StateSpec::GhzLike(p) => ghz_like(p),
        };
        density(&psi).expect("constructors return normalized states")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Negativity,
    FidelityBranch(BellOutcome, CharlieOutcome),
    FidelityAvg,
}

impl Quantity {
    pub fn label(&self) -> String {
        match self {
            Quantity::Negativity => "negativity".into(),
            Quantity::FidelityAvg => "fidelity_avg".into(),
            Quantity::FidelityBranch(b, c) => format!("fidelity_{}_{}", b.label(), c.label()),
        }
    }
}

/// `count` evenly spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Default for GammaGrid {
    fn default() -> Self {
        Self {
            start: 0.0,
            stop: 1.0,
            count: 51,
        }
    }
}

impl GammaGrid {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// p values used when a run-file does not list any.
pub const DEFAULT_P_VALUES: [f64; 3] = [0.0, 0.1, 0.3];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub state: StateSpec,
    pub kraus: KrausVariant,
    pub mode: ApplicationMode,
    /// Must be true for the literal Kraus variant and for correlated mode.
    pub renormalize: bool,
    pub input: UnknownQubit,
    pub p_values: Vec<f64>,
    pub gamma: GammaGrid,
    pub theta_values: Vec<f64>,
    pub quantity: Quantity,
}

impl SweepSpec {
    /// Defaults: standard channel, independent mode, γ over `[0, 1]` in 51 points,
    /// `p ∈ {0, 0.1, 0.3}`, `θ = 0`, unknown qubit `(|0⟩ + |1⟩)/√2`.
    pub fn new(state: StateSpec, quantity: Quantity) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            state,
            kraus: KrausVariant::Standard,
            mode: ApplicationMode::Independent,
            renormalize: false,
            input: UnknownQubit::new(h.into(), h.into()).unwrap(),
            p_values: DEFAULT_P_VALUES.to_vec(),
            gamma: GammaGrid::default(),
            theta_values: vec![0.0],
            quantity,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSweep(m));
        let g = self.gamma;
        if g.count < 2 {
            return bad(format!("gamma_count must be at least 2, got {}", g.count));
        }
        for (name, v) in [("gamma_start", g.start), ("gamma_stop", g.stop)] {
            if !(0.0..=1.0).contains(&v) {
                return bad(format!("{name} = {v} outside [0, 1]"));
            }
        }
        if self.p_values.is_empty() || self.theta_values.is_empty() {
            return bad("p_values and theta_values must be non-empty".into());
        }
        if let Some(p) = self.p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return bad(format!("p = {p} outside [0, 1]"));
        }
        if self.theta_values.iter().any(|t| !t.is_finite()) {
            return bad("theta values must be finite".into());
        }
        if self.requires_renormalization() && !self.renormalize {
            return bad("the paper-literal Kraus set and correlated mode require renormalization".into());
        }
        if let Quantity::FidelityBranch(_, c) = self.quantity {
            if c.kind() != self.state.kind() {
                return bad(format!(
                    "Charlie outcome {c} does not apply to a {} state",
                    self.state.kind().name()
                ));
            }
        }
        Ok(())
    }

    /// The joint map is trace preserving only for the standard set applied independently.
    pub fn requires_renormalization(&self) -> bool {
        self.kraus.needs_renormalization() || self.mode == ApplicationMode::Correlated
    }

    pub fn record_count(&self) -> usize {
        self.p_values.len() * self.gamma.count * self.theta_values.len()
    }
}

/// The three-qubit state after every qubit passes through the channel.
pub fn decohered_resource(spec: &SweepSpec, params: ChannelParams) -> Result<ComplexMatrix> {
    let layout = QubitLayout::new(3)?;
    let kraus = spec.kraus.build(params);
    apply_channel(
        &spec.state.density(),
        layout,
        &kraus,
        &[0, 1, 2],
        spec.mode,
        spec.renormalize,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub p: f64,
    pub gamma: f64,
    pub theta: f64,
    pub quantity: String,
    /// `None` when the requested teleportation branch has zero probability.
    pub value: Option<f64>,
}

fn evaluate_point(spec: &SweepSpec, p: f64, gamma: f64) -> Result<Vec<SweepRecord>> {
    let resource = decohered_resource(spec, ChannelParams::new(p, gamma)?)?;
    let label = spec.quantity.label();
    let negativity = match spec.quantity {
        Quantity::Negativity => Some(tripartite_negativity(&resource, QubitLayout::new(3)?)?.tripartite),
        _ => None,
    };
    spec.theta_values
        .iter()
        .map(|&theta| {
            let value = match spec.quantity {
                Quantity::Negativity => negativity,
                Quantity::FidelityAvg => {
                    Some(run_protocol(&spec.input, &resource, spec.state.kind(), theta)?.average_fidelity)
                }
                Quantity::FidelityBranch(bell, charlie) => {
                    run_protocol(&spec.input, &resource, spec.state.kind(), theta)?
                        .branch(bell, charlie)
                        .and_then(|r| r.fidelity)
                }
            };
            if let Some(v) = value {
                if !v.is_finite() {
                    return Err(Error::NonFiniteResult("sweep value"));
                }
            }
            Ok(SweepRecord {
                p,
                gamma,
                theta,
                quantity: label.clone(),
                value,
            })
        })
        .collect()
}

/// Evaluates the whole grid; the first failing grid point (in sweep order) aborts the run.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let gammas = spec.gamma.values();
    let points: Vec<(f64, f64)> = spec
        .p_values
        .iter()
        .flat_map(|&p| gammas.iter().map(move |&g| (p, g)))
        .collect();

    let results: Vec<Result<Vec<SweepRecord>>> = points
        .par_iter()
        .map(|&(p, gamma)| {
            evaluate_point(spec, p, gamma).map_err(|e| Error::AtGridPoint {
                p,
                gamma,
                source: Box::new(e),
            })
        })
        .collect();

    let mut records = Vec::with_capacity(spec.record_count());
    for r in results {
        records.extend(r?);
    }
    Ok(records)
}

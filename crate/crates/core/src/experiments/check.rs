//! Completeness defects of both Kraus variants over a `(p, γ)` grid.

use crate::channels::{completeness_defect, gad_paper_literal, gad_standard, ChannelParams};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelCheckRow {
    pub p: f64,
    pub gamma: f64,
    pub standard_defect: f64,
    pub literal_defect: f64,
}

pub const DEFAULT_CHECK_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

pub fn channel_check(p_values: &[f64], gamma_values: &[f64]) -> Result<Vec<ChannelCheckRow>> {
    let mut rows = Vec::with_capacity(p_values.len() * gamma_values.len());
    for &p in p_values {
        for &gamma in gamma_values {
            let params = ChannelParams::new(p, gamma)?;
            rows.push(ChannelCheckRow {
                p,
                gamma,
                standard_defect: completeness_defect(&gad_standard(params)),
                literal_defect: completeness_defect(&gad_paper_literal(params)),
            });
        }
    }
    Ok(rows)
}

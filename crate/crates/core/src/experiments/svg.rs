//! Minimal standalone SVG line plots of sweep records.

use std::fmt::Write as _;
use std::path::Path;

use super::SweepRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    P,
    Gamma,
    Theta,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::P => "p",
            Axis::Gamma => "gamma",
            Axis::Theta => "theta",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Axis::P => "p",
            Axis::Gamma => "γ",
            Axis::Theta => "θ",
        }
    }

    pub fn of(self, r: &SweepRecord) -> f64 {
        match self {
            Axis::P => r.p,
            Axis::Gamma => r.gamma,
            Axis::Theta => r.theta,
        }
    }
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
const TICKS: usize = 5;

/// Pixel geometry of the plot area and the data window it shows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotFrame {
    pub width: f64,
    pub height: f64,
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl PlotFrame {
    /// y always covers `[0, 1]`; a degenerate x range is widened by ±0.5.
    pub fn fit(xs: impl IntoIterator<Item = f64>, ys: impl IntoIterator<Item = f64>) -> Self {
        let (mut x_min, mut x_max) = min_max(xs).unwrap_or((0.0, 1.0));
        if x_max - x_min <= f64::EPSILON * x_max.abs().max(1.0) {
            x_min -= 0.5;
            x_max += 0.5;
        }
        let (y_lo, y_hi) = min_max(ys).unwrap_or((0.0, 1.0));
        Self {
            width: 720.0,
            height: 480.0,
            left: 70.0,
            right: 170.0,
            top: 30.0,
            bottom: 60.0,
            x_min,
            x_max,
            y_min: y_lo.min(0.0),
            y_max: y_hi.max(1.0),
        }
    }

    pub fn plot_width(&self) -> f64 {
        self.width - self.left - self.right
    }

    pub fn plot_height(&self) -> f64 {
        self.height - self.top - self.bottom
    }

    pub fn map_x(&self, x: f64) -> f64 {
        self.left + (x - self.x_min) / (self.x_max - self.x_min) * self.plot_width()
    }

    pub fn map_y(&self, y: f64) -> f64 {
        self.top + (self.y_max - y) / (self.y_max - self.y_min) * self.plot_height()
    }
}

fn min_max(values: impl IntoIterator<Item = f64>) -> Option<(f64, f64)> {
    values.into_iter().fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

/// Groups by series value, then by the remaining coordinate when it varies.
fn group(records: &[SweepRecord], series: Axis, x_axis: Axis) -> Vec<Series> {
    let third = [Axis::P, Axis::Gamma, Axis::Theta]
        .into_iter()
        .find(|a| *a != series && *a != x_axis)
        .unwrap();
    let third_varies = records.windows(2).any(|w| third.of(&w[0]) != third.of(&w[1]));
    let mut keys: Vec<(f64, f64)> = Vec::new();
    let mut out: Vec<Series> = Vec::new();
    for r in records {
        let key = (series.of(r), if third_varies { third.of(r) } else { 0.0 });
        let idx = match keys.iter().position(|k| *k == key) {
            Some(i) => i,
            None => {
                keys.push(key);
                let mut label = format!("{} = {}", series.symbol(), tick_label(key.0));
                if third_varies {
                    let _ = write!(label, ", {} = {}", third.symbol(), tick_label(key.1));
                }
                out.push(Series {
                    label,
                    points: Vec::new(),
                });
                out.len() - 1
            }
        };
        if let Some(v) = r.value {
            out[idx].points.push((x_axis.of(r), v));
        }
    }
    for s in &mut out {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    out.retain(|s| !s.points.is_empty());
    out
}

/// Renders records sharing one quantity as one polyline per series value.
pub fn render_svg_lineplot(records: &[SweepRecord], series: Axis, x_axis: Axis) -> Result<String> {
    if series == x_axis {
        return Err(Error::InvalidSweep("series and x axis must differ".into()));
    }
    let quantity = records.first().map(|r| r.quantity.as_str()).unwrap_or("");
    if records.iter().any(|r| r.quantity != quantity) {
        return Err(Error::InvalidSweep("records mix several quantities".into()));
    }
    let groups = group(records, series, x_axis);
    let frame = PlotFrame::fit(
        groups.iter().flat_map(|s| s.points.iter().map(|p| p.0)),
        groups.iter().flat_map(|s| s.points.iter().map(|p| p.1)),
    );
    let f = &frame;
    let (x0, x1) = (f.left, f.left + f.plot_width());
    let (y0, y1) = (f.top, f.top + f.plot_height());

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">"#,
        f.width, f.height, f.width, f.height
    );
    let _ = writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<rect x="{x0}" y="{y0}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        f.plot_width(),
        f.plot_height()
    );

    for i in 0..TICKS {
        let t = i as f64 / (TICKS - 1) as f64;
        let xv = f.x_min + t * (f.x_max - f.x_min);
        let px = f.map_x(xv);
        let _ = writeln!(
            w,
            r#"<line class="tick" x1="{px:.2}" y1="{y1}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            y1 + 5.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            y1 + 20.0,
            tick_label(xv)
        );
        let yv = f.y_min + t * (f.y_max - f.y_min);
        let py = f.map_y(yv);
        let _ = writeln!(
            w,
            r#"<line class="tick" x1="{:.2}" y1="{py:.2}" x2="{x0}" y2="{py:.2}" stroke="black"/>"#,
            x0 - 5.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        f.height - 15.0,
        x_axis.symbol()
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        quantity
    );

    for (i, s) in groups.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", f.map_x(x), f.map_y(y)))
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
        let ly = y0 + 10.0 + 18.0 * i as f64;
        let lx = x1 + 15.0;
        let _ = writeln!(
            w,
            r#"<g class="legend-entry"><line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="1.5"/><text x="{:.2}" y="{:.2}">{}</text></g>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            s.label
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn emit_svg_lineplot(records: &[SweepRecord], path: &Path, series: Axis, x_axis: Axis) -> Result<()> {
    std::fs::write(path, render_svg_lineplot(records, series, x_axis)?)?;
    Ok(())
}

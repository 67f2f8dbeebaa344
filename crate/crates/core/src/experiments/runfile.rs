//! INI-style run-file parsing.
//!
//! ```text
//! [state]
//! kind = ghz            # ghz | ghz_like
//! alpha = 0.7071067811865476
//! beta = 0.7071067811865476
//!
//! [channel]
//! kraus = standard      # standard | paper_literal
//! mode = independent    # independent | correlated
//!
//! [sweep]
//! quantity = negativity # negativity | fidelity_branch | fidelity_avg
//! p_values = 0, 0.1, 0.3
//! theta_values = 0, pi/8, pi/4
//!
//! [output]
//! csv = fig1.csv
//! ```
//!
//! Comments start with `#` or `;`. Every error carries the offending line.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use super::svg::Axis;
use super::{GammaGrid, Quantity, StateSpec, SweepSpec};
use crate::channels::{ApplicationMode, KrausVariant};
use crate::error::{Error, Result};
use crate::states::{GhzLikeParams, GhzParams, UnknownQubit};
use crate::teleport::{BellOutcome, CharlieOutcome};

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    /// Discrepancy ledger written by the paper comparison.
    pub ledger: Option<PathBuf>,
    pub series: Axis,
    pub x_axis: Axis,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            csv: None,
            svg: None,
            ledger: None,
            series: Axis::P,
            x_axis: Axis::Gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFile {
    pub spec: SweepSpec,
    pub output: OutputSpec,
}

const SECTIONS: [(&str, &[&str]); 4] = [
    ("state", &["kind", "alpha", "beta", "c1", "c2", "c3", "c4", "mu", "nu"]),
    ("channel", &["kraus", "mode"]),
    (
        "sweep",
        &[
            "quantity",
            "p_values",
            "gamma_start",
            "gamma_stop",
            "gamma_count",
            "theta_values",
            "bell",
            "charlie",
        ],
    ),
    ("output", &["csv", "svg", "ledger", "series", "x_axis"]),
];

struct Entry {
    line: usize,
    value: String,
}

struct Parsed {
    entries: HashMap<(String, String), Entry>,
    sections: HashMap<String, usize>,
    last_line: usize,
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Runfile {
        line,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Parsed> {
    let mut entries = HashMap::new();
    let mut sections = HashMap::new();
    let mut current: Option<&'static str> = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split(['#', ';']).next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            let Some(&(known, _)) = SECTIONS.iter().find(|(s, _)| *s == name) else {
                return Err(err(line, format!("unknown section [{name}]")));
            };
            if sections.insert(known.to_string(), line).is_some() {
                return Err(err(line, format!("duplicate section [{name}]")));
            }
            current = Some(known);
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(err(line, format!("expected `key = value`, got `{content}`")));
        };
        let (key, value) = (key.trim(), value.trim());
        let Some(section) = current else {
            return Err(err(line, format!("key `{key}` outside any section")));
        };
        let allowed = SECTIONS.iter().find(|(s, _)| *s == section).unwrap().1;
        if !allowed.contains(&key) {
            return Err(err(line, format!("unknown key `{key}` in [{section}]")));
        }
        let slot = (section.to_string(), key.to_string());
        if entries.contains_key(&slot) {
            return Err(err(line, format!("duplicate key `{key}` in [{section}]")));
        }
        entries.insert(
            slot,
            Entry {
                line,
                value: value.to_string(),
            },
        );
    }
    Ok(Parsed {
        entries,
        sections,
        last_line,
    })
}

/// Parses a real number or a multiple of π: `0.5`, `pi`, `-pi/2`, `3pi/4`, `3*pi/8`.
pub(crate) fn parse_real(line: usize, s: &str) -> Result<f64> {
    let bad = || err(line, format!("`{s}` is not a number"));
    let t = s.trim().to_ascii_lowercase();
    let value = if let Some(idx) = t.find("pi") {
        let coeff = t[..idx].trim().trim_end_matches('*').trim();
        let coeff = match coeff {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        let rest = t[idx + 2..].trim();
        let denom = match rest.strip_prefix('/') {
            Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
            None if rest.is_empty() => 1.0,
            None => return Err(bad()),
        };
        coeff * std::f64::consts::PI / denom
    } else {
        t.parse::<f64>().map_err(|_| bad())?
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

/// Standalone form of the run-file number syntax, for command-line arguments.
pub fn parse_angle(s: &str) -> Result<f64> {
    parse_real(0, s)
}

fn parse_list(line: usize, s: &str) -> Result<Vec<f64>> {
    let items: Vec<f64> = s
        .split(',')
        .map(|x| x.trim())
        .filter(|x| !x.is_empty())
        .map(|x| parse_real(line, x))
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(err(line, "empty list"));
    }
    Ok(items)
}

fn unit_interval(line: usize, name: &str, v: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(err(line, format!("{name} = {v} outside [0, 1]")))
    }
}

struct Reader<'a> {
    parsed: &'a Parsed,
}

impl<'a> Reader<'a> {
    fn get(&self, section: &str, key: &str) -> Option<&'a Entry> {
        self.parsed.entries.get(&(section.to_string(), key.to_string()))
    }

    fn required(&self, section: &str, key: &str) -> Result<&'a Entry> {
        self.get(section, key).ok_or_else(|| {
            let line = self
                .parsed
                .sections
                .get(section)
                .copied()
                .unwrap_or(self.parsed.last_line);
            err(line, format!("missing required key `{key}` in [{section}]"))
        })
    }

    fn real(&self, section: &str, key: &str) -> Result<Option<(usize, f64)>> {
        self.get(section, key)
            .map(|e| parse_real(e.line, &e.value).map(|v| (e.line, v)))
            .transpose()
    }

    fn reject(&self, section: &str, keys: &[&str], why: &str) -> Result<()> {
        for k in keys {
            if let Some(e) = self.get(section, k) {
                return Err(err(e.line, format!("key `{k}` {why}")));
            }
        }
        Ok(())
    }
}

fn parse_state(r: &Reader) -> Result<StateSpec> {
    let kind = r.required("state", "kind")?;
    let re = |x: f64| Complex64::new(x, 0.0);
    match kind.value.as_str() {
        "ghz" => {
            r.reject("state", &["c1", "c2", "c3", "c4"], "does not apply to kind = ghz")?;
            let alpha = r.real("state", "alpha")?;
            let beta = r.real("state", "beta")?;
            let params = match (alpha, beta) {
                (None, None) => GhzParams::maximal(),
                (Some((l, a)), Some((_, b))) => GhzParams::new(re(a), re(b)).map_err(|e| err(l, e.to_string()))?,
                _ => return Err(err(kind.line, "alpha and beta must be given together")),
            };
            Ok(StateSpec::Ghz(params))
        }
        "ghz_like" => {
            r.reject("state", &["alpha", "beta"], "does not apply to kind = ghz_like")?;
            let c: Vec<Option<(usize, f64)>> = ["c1", "c2", "c3", "c4"]
                .iter()
                .map(|k| r.real("state", k))
                .collect::<Result<_>>()?;
            let params = match (c[0], c[1], c[2], c[3]) {
                (None, None, None, None) => GhzLikeParams::maximal(),
                (Some((l, c1)), Some((_, c2)), Some((_, c3)), None) => {
                    GhzLikeParams::with_implied_c4(c1, c2, c3).map_err(|e| err(l, e.to_string()))?
                }
                (Some((l, c1)), Some((_, c2)), Some((_, c3)), Some((_, c4))) => {
                    GhzLikeParams::real([c1, c2, c3, c4]).map_err(|e| err(l, e.to_string()))?
                }
                _ => return Err(err(kind.line, "c1, c2 and c3 must all be given")),
            };
            Ok(StateSpec::GhzLike(params))
        }
        other => Err(err(kind.line, format!("unknown state kind `{other}`"))),
    }
}

fn parse_input(r: &Reader) -> Result<Option<UnknownQubit>> {
    match (r.real("state", "mu")?, r.real("state", "nu")?) {
        (None, None) => Ok(None),
        (Some((l, mu)), Some((_, nu))) => UnknownQubit::new(mu.into(), nu.into())
            .map(Some)
            .map_err(|e| err(l, e.to_string())),
        (Some((l, _)), None) | (None, Some((l, _))) => Err(err(l, "mu and nu must be given together")),
    }
}

fn parse_quantity(r: &Reader, state: &StateSpec) -> Result<Quantity> {
    let q = r.required("sweep", "quantity")?;
    match q.value.as_str() {
        "negativity" | "fidelity_avg" => {
            r.reject(
                "sweep",
                &["bell", "charlie"],
                "only applies to quantity = fidelity_branch",
            )?;
            Ok(if q.value == "negativity" {
                Quantity::Negativity
            } else {
                Quantity::FidelityAvg
            })
        }
        "fidelity_branch" => {
            let b = r.required("sweep", "bell")?;
            let bell = BellOutcome::ALL
                .into_iter()
                .find(|o| o.label() == b.value)
                .ok_or_else(|| err(b.line, format!("unknown Bell outcome `{}`", b.value)))?;
            let c = r.required("sweep", "charlie")?;
            let charlie = match c.value.as_str() {
                "x1" => CharlieOutcome::X1,
                "x2" => CharlieOutcome::X2,
                "0" | "zero" => CharlieOutcome::Zero,
                "1" | "one" => CharlieOutcome::One,
                other => return Err(err(c.line, format!("unknown Charlie outcome `{other}`"))),
            };
            if charlie.kind() != state.kind() {
                return Err(err(
                    c.line,
                    format!(
                        "Charlie outcome {charlie} does not apply to a {} state",
                        state.kind().name()
                    ),
                ));
            }
            Ok(Quantity::FidelityBranch(bell, charlie))
        }
        other => Err(err(q.line, format!("unknown quantity `{other}`"))),
    }
}

fn parse_axis(e: &Entry, allowed: &[Axis]) -> Result<Axis> {
    let axis = match e.value.as_str() {
        "p" => Axis::P,
        "gamma" => Axis::Gamma,
        "theta" => Axis::Theta,
        other => return Err(err(e.line, format!("unknown axis `{other}`"))),
    };
    if allowed.contains(&axis) {
        Ok(axis)
    } else {
        Err(err(e.line, format!("axis `{}` not allowed here", e.value)))
    }
}

/// Parses run-file text; relative output paths are resolved against `base`.
pub fn parse_runfile_str(text: &str, base: &Path) -> Result<RunFile> {
    let parsed = tokenize(text)?;
    let r = Reader { parsed: &parsed };

    let state = parse_state(&r)?;
    let quantity = parse_quantity(&r, &state)?;
    let mut spec = SweepSpec::new(state, quantity);
    if let Some(input) = parse_input(&r)? {
        spec.input = input;
    }

    let kraus = r.required("channel", "kraus")?;
    spec.kraus = match kraus.value.as_str() {
        "standard" => KrausVariant::Standard,
        "paper_literal" => KrausVariant::PaperLiteral,
        other => return Err(err(kraus.line, format!("unknown Kraus variant `{other}`"))),
    };
    if let Some(m) = r.get("channel", "mode") {
        spec.mode = match m.value.as_str() {
            "independent" => ApplicationMode::Independent,
            "correlated" => ApplicationMode::Correlated,
            other => return Err(err(m.line, format!("unknown mode `{other}`"))),
        };
    }
    spec.renormalize = spec.requires_renormalization();

    if let Some(e) = r.get("sweep", "p_values") {
        spec.p_values = parse_list(e.line, &e.value)?
            .into_iter()
            .map(|p| unit_interval(e.line, "p", p))
            .collect::<Result<_>>()?;
    }
    if let Some(e) = r.get("sweep", "theta_values") {
        spec.theta_values = parse_list(e.line, &e.value)?;
    }
    let mut grid = GammaGrid::default();
    if let Some((l, v)) = r.real("sweep", "gamma_start")? {
        grid.start = unit_interval(l, "gamma_start", v)?;
    }
    if let Some((l, v)) = r.real("sweep", "gamma_stop")? {
        grid.stop = unit_interval(l, "gamma_stop", v)?;
    }
    if let Some(e) = r.get("sweep", "gamma_count") {
        grid.count = e
            .value
            .parse()
            .ok()
            .filter(|&n: &usize| n >= 2)
            .ok_or_else(|| err(e.line, format!("gamma_count must be an integer ≥ 2, got `{}`", e.value)))?;
    }
    spec.gamma = grid;

    let mut output = OutputSpec::default();
    let path = |key: &str| r.get("output", key).map(|e| base.join(&e.value));
    output.csv = path("csv");
    output.svg = path("svg");
    output.ledger = path("ledger");
    if let Some(e) = r.get("output", "series") {
        output.series = parse_axis(e, &[Axis::P, Axis::Theta, Axis::Gamma])?;
    }
    if let Some(e) = r.get("output", "x_axis") {
        output.x_axis = parse_axis(e, &[Axis::Gamma, Axis::Theta])?;
    }
    if output.series == output.x_axis {
        let line = r.get("output", "series").map_or(parsed.last_line, |e| e.line);
        return Err(err(line, "series and x_axis must differ"));
    }

    spec.validate().map_err(|e| {
        let line = parsed.sections.get("sweep").copied().unwrap_or(parsed.last_line);
        err(line, e.to_string())
    })?;
    Ok(RunFile { spec, output })
}

pub fn parse_runfile(path: &Path) -> Result<RunFile> {
    let text = std::fs::read_to_string(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_runfile_str(&text, base)
}

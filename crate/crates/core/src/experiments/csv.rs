//! Sweep CSV: header `p,gamma,theta,quantity,value`, LF endings, 12 significant digits.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::SweepRecord;
use crate::error::{Error, Result};

pub const HEADER: &str = "p,gamma,theta,quantity,value";

/// Shortest `%.12g`-style rendering: fixed notation for exponents in `[-5, 12)`,
/// scientific otherwise, trailing zeros dropped.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in records {
        let value = r.value.map(format_value).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{}",
            format_value(r.p),
            format_value(r.gamma),
            format_value(r.theta),
            r.quantity,
            value
        )?;
    }
    Ok(())
}

pub fn emit_csv(records: &[SweepRecord], path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        _ => {
            return Err(Error::Runfile {
                line: 1,
                message: format!("expected header `{HEADER}`"),
            })
        }
    }
    let num = |line: usize, s: &str| -> Result<f64> {
        s.parse().map_err(|_| Error::Runfile {
            line,
            message: format!("bad number `{s}`"),
        })
    };
    lines
        .map(|(i, l)| {
            let line = i + 1;
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 5 {
                return Err(Error::Runfile {
                    line,
                    message: format!("expected 5 fields, got {}", f.len()),
                });
            }
            Ok(SweepRecord {
                p: num(line, f[0])?,
                gamma: num(line, f[1])?,
                theta: num(line, f[2])?,
                quantity: f[3].to_string(),
                value: if f[4].is_empty() { None } else { Some(num(line, f[4])?) },
            })
        })
        .collect()
}

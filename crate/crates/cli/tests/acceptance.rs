//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fs;
use std::path::Path;
use std::process::Command;

use decolab::experiments::{parse_csv, LEDGER_HEADER};
use decolab::formulas::{fidelity_ghz_like_formula, ghz_coeffs, ghz_like_coeffs};
use decolab::states::{density, ghz, ghz_like};
use decolab::{
    apply_channel, completeness_defect, gad_standard, run_protocol, tripartite_negativity, ApplicationMode,
    BellOutcome, ChannelParams, ComplexMatrix, GhzLikeParams, GhzParams, ProtocolKind, QubitLayout, UnknownQubit,
};
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

const CPTP_TOL: f64 = 1e-12;
const NEGATIVITY_TOL: f64 = 1e-10;
const MONOTONE_TOL: f64 = 1e-10;
const FIDELITY_TOL: f64 = 1e-10;
const SYMMETRY_TOL: f64 = 1e-10;
const FORMULA_TOL: f64 = 1e-10;
const GRID_5: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const RANDOM_QUBITS: usize = 20;
const THETA_POINTS: usize = 25;
const GAMMA_POINTS: usize = 51;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn three() -> QubitLayout {
    QubitLayout::new(3).unwrap()
}

fn ghz_max() -> ComplexMatrix {
    density(&ghz(&GhzParams::maximal())).unwrap()
}

fn ghz_like_max() -> ComplexMatrix {
    density(&ghz_like(&GhzLikeParams::maximal())).unwrap()
}

fn decohere(rho: &ComplexMatrix, p: f64, gamma: f64) -> ComplexMatrix {
    let k = gad_standard(ChannelParams::new(p, gamma).unwrap());
    apply_channel(rho, three(), &k, &[0, 1, 2], ApplicationMode::Independent, false).unwrap()
}

fn negativity(rho: &ComplexMatrix) -> f64 {
    tripartite_negativity(rho, three()).unwrap().tripartite
}

fn qubit(mu: Complex64, nu: Complex64) -> UnknownQubit {
    UnknownQubit::new(mu, nu).unwrap()
}

fn random_qubits(seed: u64) -> Vec<UnknownQubit> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..RANDOM_QUBITS)
        .map(|_| {
            let t: f64 = rng.gen_range(0.0..PI);
            let phi: f64 = rng.gen_range(-PI..PI);
            qubit(
                Complex64::new((t / 2.0).cos(), 0.0),
                Complex64::from_polar((t / 2.0).sin(), phi),
            )
        })
        .collect()
}

fn families() -> [(&'static str, ComplexMatrix); 2] {
    [("GHZ", ghz_max()), ("GHZ-like", ghz_like_max())]
}

fn check(ok: bool, pass: String, fail: String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail)
    }
}

fn cptp_validity() -> Outcome {
    let worst = GRID_5
        .iter()
        .flat_map(|&p| GRID_5.iter().map(move |&g| (p, g)))
        .map(|(p, g)| completeness_defect(&gad_standard(ChannelParams::new(p, g).unwrap())))
        .fold(0.0, f64::max);
    check(
        worst < CPTP_TOL,
        format!("max standard completeness defect {worst:e} < {CPTP_TOL:e}"),
        format!("standard completeness defect {worst:e} ≥ {CPTP_TOL:e}"),
    )
}

fn maximal_baseline() -> Outcome {
    let values: Vec<(&str, f64)> = families().iter().map(|(n, r)| (*n, negativity(r))).collect();
    let ok = values.iter().all(|(_, v)| (v - 1.0).abs() <= NEGATIVITY_TOL);
    check(
        ok,
        format!("negativities {values:?} within {NEGATIVITY_TOL:e} of 1"),
        format!("negativities {values:?}"),
    )
}

fn full_damping_limit() -> Outcome {
    let mut worst = 0.0f64;
    for (_, rho) in families() {
        for p in [0.0, 0.5, 1.0] {
            worst = worst.max(negativity(&decohere(&rho, p, 1.0)).abs());
        }
    }
    check(
        worst <= NEGATIVITY_TOL,
        format!("max |N| at γ=1 is {worst:e}"),
        format!("negativity {worst:e} survives γ=1"),
    )
}

fn monotone_decay() -> Outcome {
    let mut worst = 0.0f64;
    for (_, rho) in families() {
        for p in GRID_5 {
            let values: Vec<f64> = (0..GAMMA_POINTS)
                .map(|i| negativity(&decohere(&rho, p, i as f64 / (GAMMA_POINTS - 1) as f64)))
                .collect();
            for w in values.windows(2) {
                worst = worst.max(w[1] - w[0]);
            }
        }
    }
    check(
        worst <= MONOTONE_TOL,
        format!("largest increase along γ is {worst:e}"),
        format!("negativity increases by {worst:e} along γ"),
    )
}

fn ideal_teleportation() -> Outcome {
    let mut lowest = std::collections::BTreeMap::new();
    for input in random_qubits(0x5eed) {
        for (kind, rho) in [(ProtocolKind::Ghz, ghz_max()), (ProtocolKind::GhzLike, ghz_like_max())] {
            let report = run_protocol(&input, &rho, kind, 0.0).unwrap();
            for run in &report.runs {
                let f = run.fidelity.unwrap_or(f64::NEG_INFINITY);
                let slot = lowest
                    .entry((kind.name(), run.bell, run.charlie))
                    .or_insert(f64::INFINITY);
                *slot = f64::min(*slot, f);
            }
        }
    }
    let failures: Vec<String> = lowest
        .iter()
        .filter(|(_, &f)| (f - 1.0).abs() > FIDELITY_TOL)
        .map(|((kind, bell, charlie), f)| format!("{kind} ({bell}, {charlie}) lowest F={f:.6}"))
        .collect();
    check(
        failures.is_empty(),
        format!("all 8 branches at F=1 for {RANDOM_QUBITS} inputs on both resources"),
        format!("branches below F=1: {}", failures.join("; ")),
    )
}

fn analyzer_symmetries() -> Outcome {
    let inputs = [
        qubit(Complex64::new(FRAC_1_SQRT_2, 0.0), Complex64::new(FRAC_1_SQRT_2, 0.0)),
        qubit(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)),
    ];
    let resources = [ghz_max(), decohere(&ghz_max(), 0.1, 0.3)];
    let (mut swap, mut period) = (0.0f64, 0.0f64);
    for input in &inputs {
        for rho in &resources {
            for k in 0..THETA_POINTS {
                let theta = PI * k as f64 / (THETA_POINTS - 1) as f64;
                let at = |t: f64| run_protocol(input, rho, ProtocolKind::Ghz, t).unwrap();
                let (base, quarter, half) = (at(theta), at(theta + PI / 2.0), at(theta + PI));
                for bell in BellOutcome::ALL {
                    let f = |r: &decolab::ProtocolReport, c| r.branch(bell, c).unwrap().fidelity.unwrap_or(0.0);
                    use decolab::CharlieOutcome::{X1, X2};
                    swap = swap.max((f(&quarter, X1) - f(&base, X2)).abs());
                    swap = swap.max((f(&quarter, X2) - f(&base, X1)).abs());
                    period = period.max((f(&half, X1) - f(&base, X1)).abs());
                    period = period.max((f(&half, X2) - f(&base, X2)).abs());
                }
            }
        }
    }
    let summary = format!("θ+π/2 swap max violation {swap:e}, θ+π periodicity max violation {period:e}");
    check(swap <= SYMMETRY_TOL && period <= SYMMETRY_TOL, summary.clone(), summary)
}

fn mixed_resource_floor() -> Outcome {
    let rho = ComplexMatrix::identity(8).scale_real(0.125);
    let mut worst = 0.0f64;
    for input in random_qubits(7).iter().take(5) {
        for kind in [ProtocolKind::Ghz, ProtocolKind::GhzLike] {
            for theta in [0.0, PI / 8.0, PI / 3.0] {
                for run in run_protocol(input, &rho, kind, theta).unwrap().runs {
                    worst = worst.max(run.fidelity.map_or(f64::INFINITY, |f| (f - 0.5).abs()));
                }
            }
        }
    }
    check(
        worst <= FIDELITY_TOL,
        format!("max |F − 1/2| = {worst:e}"),
        format!("|F − 1/2| reaches {worst:e}"),
    )
}

fn formula_transcription() -> Outcome {
    let mut notes = Vec::new();
    let zero = ChannelParams::new(0.0, 0.0).unwrap();

    let params = GhzParams::real(0.6, 0.8).unwrap();
    let rho = density(&ghz(&params)).unwrap();
    let a = ghz_coeffs(&params, zero);
    let entries = [(a.a1, (0, 0)), (a.a2, (0, 7)), (a.a3, (7, 0)), (a.a4, (7, 7))];
    let eq5 = entries
        .iter()
        .map(|(c, (r, col))| (c * 2.0 - rho.get(*r, *col)).norm())
        .fold(0.0, f64::max);
    if eq5 > FORMULA_TOL {
        notes.push(format!("2·A_i vs GHZ density entries differ by {eq5:e}"));
    }

    let gl = GhzLikeParams::with_implied_c4(0.9, 1.1, 0.7).unwrap();
    let mut table2 = 0.0f64;
    for (mu, nu) in [(FRAC_1_SQRT_2, FRAC_1_SQRT_2), (0.6, 0.8), (0.28, -0.96)] {
        let input = qubit(Complex64::new(mu, 0.0), Complex64::new(nu, 0.0));
        let bmax = ghz_like_coeffs(&GhzLikeParams::maximal(), zero);
        let report = run_protocol(&input, &ghz_like_max(), ProtocolKind::GhzLike, 0.0).unwrap();
        for run in &report.runs {
            let f = fidelity_ghz_like_formula(&input, &bmax, run.bell, run.charlie).unwrap();
            table2 = table2.max((f - run.weighted_fidelity()).abs());
        }
    }
    if table2 > FORMULA_TOL {
        notes.push(format!("Table 2 formulas vs probability·fidelity differ by {table2:e}"));
    }
    let full = ChannelParams::new(0.4, 1.0).unwrap();
    let a = ghz_coeffs(&params, full);
    let gb = ghz_like_coeffs(&gl, full);
    let exact_zero = a.a2 == Complex64::new(0.0, 0.0)
        && a.a3 == Complex64::new(0.0, 0.0)
        && gb.kappa1 == 0.0
        && gb.kappa2 == 0.0
        && gb.kappa3 == 0.0;
    if !exact_zero {
        notes.push(format!(
            "γ=1 leaves a2={} a3={} κ=({}, {}, {})",
            a.a2, a.a3, gb.kappa1, gb.kappa2, gb.kappa3
        ));
    }
    check(
        notes.is_empty(),
        format!("2·A_i deviation {eq5:e}, Table 2 deviation {table2:e}; γ=1 zeros exact"),
        notes.join("; "),
    )
}

fn write_runfile(dir: &Path, name: &str, body: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn discrepancy_ledger() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runfile = write_runfile(
        dir.path(),
        "diff.ini",
        "[state]\nkind = ghz\n[channel]\nkraus = standard\nmode = independent\n[sweep]\nquantity = negativity\n\
         p_values = 0, 0.5, 1\ngamma_count = 3\n",
    );
    let ledger = dir.path().join("ledger.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_decolab"))
        .arg("diff-paper")
        .arg(&runfile)
        .arg("--out")
        .arg(&ledger)
        .output()
        .unwrap();
    if !out.status.success() {
        return Err(format!(
            "diff-paper exited with {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let text = fs::read_to_string(&ledger).unwrap();
    let mut lines = text.lines();
    if lines.next() != Some(LEDGER_HEADER) {
        return Err("ledger header missing".into());
    }
    let corners = |p: f64, g: f64| (p == 0.0 || p == 1.0) && (g == 0.0 || g == 1.0);
    let mut points = std::collections::BTreeSet::new();
    let mut off_corner_max = 0.0f64;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let (p, g): (f64, f64) = (f[1].parse().unwrap(), f[2].parse().unwrap());
        points.insert((f[1].to_string(), f[2].to_string()));
        if f[4].starts_with('A') && !corners(p, g) {
            off_corner_max = off_corner_max.max(f[9].parse().unwrap());
        }
    }
    check(
        points.len() == 9 && off_corner_max > 0.0,
        format!(
            "ledger covers {} grid points; largest off-corner A_i difference {off_corner_max:e}",
            points.len()
        ),
        format!(
            "ledger covers {} grid points, off-corner A_i difference {off_corner_max:e}",
            points.len()
        ),
    )
}

fn reproducibility() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runfile = write_runfile(
        dir.path(),
        "fig1.ini",
        "[state]\nkind = ghz\n[channel]\nkraus = standard\n[sweep]\nquantity = negativity\n",
    );
    let run = |name: &str, threads: &str| {
        let csv = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_decolab"))
            .env("DECOLAB_THREADS", threads)
            .arg("sweep")
            .arg(&runfile)
            .arg("--csv")
            .arg(&csv)
            .status()
            .unwrap();
        assert!(status.success());
        fs::read(csv).unwrap()
    };
    let (a, b, c) = (run("a.csv", "1"), run("b.csv", "1"), run("c.csv", "4"));
    let records = parse_csv(std::str::from_utf8(&a).unwrap())
        .map(|r| r.len())
        .unwrap_or(0);
    check(
        a == b && a == c && records == 153,
        format!(
            "two runs byte-identical ({} bytes, {records} records; 4 threads identical too)",
            a.len()
        ),
        format!("CSV differs between runs or has {records} records"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("CPTP validity", cptp_validity),
        ("maximal entanglement baseline", maximal_baseline),
        ("full-damping limit", full_damping_limit),
        ("monotone decay", monotone_decay),
        ("ideal teleportation", ideal_teleportation),
        ("analyzer-angle structure", analyzer_symmetries),
        ("mixed-resource floor", mixed_resource_floor),
        ("formula transcription", formula_transcription),
        ("discrepancy ledger", discrepancy_ledger),
        ("reproducibility", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use decolab::experiments::{
    channel_check, decohered_resource, emit_csv, emit_svg_lineplot, format_value, paper_discrepancies, parse_angle,
    parse_runfile, write_csv, RunFile, DEFAULT_CHECK_GRID,
};
use decolab::tol::COMPLETENESS_TOL;
use decolab::{
    run_protocol, ApplicationMode, ChannelParams, Error, ErrorClass, GhzLikeParams, GhzParams, KrausVariant, Quantity,
    StateSpec, SweepSpec, UnknownQubit,
};

const THREADS_VAR: &str = "DECOLAB_THREADS";

#[derive(Parser)]
#[command(
    name = "decolab",
    version,
    about = "GHZ and GHZ-like states under generalized amplitude damping"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a run-file sweep and write CSV (and optionally SVG).
    Sweep {
        runfile: PathBuf,
        /// Overrides the run-file's csv path; `-` prints to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Overrides the run-file's svg path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print completeness defects of both Kraus variants on a (p, gamma) grid.
    CheckChannel {
        #[arg(long, value_delimiter = ',', value_parser = number)]
        p_values: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', value_parser = number)]
        gamma_values: Option<Vec<f64>>,
    },
    /// Run the protocol once and print every branch.
    Teleport(TeleportArgs),
    /// Compare the simulation with the published closed forms and write a ledger CSV.
    DiffPaper {
        runfile: PathBuf,
        /// Overrides the run-file's ledger path; `-` prints to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Ghz,
    GhzLike,
}

#[derive(Clone, Copy, ValueEnum)]
enum KrausArg {
    Standard,
    PaperLiteral,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Independent,
    Correlated,
}

#[derive(clap::Args)]
struct TeleportArgs {
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    mu: f64,
    #[arg(long, value_parser = number, allow_hyphen_values = true)]
    nu: f64,
    /// Analyzer angle in radians; accepts forms like `pi/8`.
    #[arg(long, value_parser = number, allow_hyphen_values = true, default_value = "0")]
    theta: f64,
    #[arg(long, value_parser = number, default_value = "0")]
    p: f64,
    #[arg(long, value_parser = number, default_value = "0")]
    gamma: f64,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "standard")]
    kraus: KrausArg,
    #[arg(long, value_enum, default_value = "independent")]
    mode: ModeArg,
    #[arg(long, value_parser = number, allow_hyphen_values = true, requires = "beta")]
    alpha: Option<f64>,
    #[arg(long, value_parser = number, allow_hyphen_values = true, requires = "alpha")]
    beta: Option<f64>,
    /// GHZ-like coefficients c1,c2,c3[,c4]; c4 is implied by normalization when omitted.
    #[arg(long, value_delimiter = ',', value_parser = number, allow_hyphen_values = true)]
    c: Option<Vec<f64>>,
}

fn number(s: &str) -> Result<f64, String> {
    parse_angle(s).map_err(|_| format!("`{s}` is not a number or a multiple of pi"))
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(std::io::Error),
    /// A check ran and found a violation.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) => match e.class() {
                ErrorClass::Validation => 1,
                ErrorClass::Io => 2,
                ErrorClass::Numerical => 3,
            },
            Failure::Usage(_) | Failure::Check(_) => 1,
            Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) | Failure::Check(m) => m.clone(),
            Failure::Io(e) => format!("I/O error: {e}"),
        }
    }
}

fn thread_count() -> Result<usize, Failure> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(1),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got `{v}`"))),
    }
}

fn is_stdout(p: &std::path::Path) -> bool {
    p.as_os_str() == "-"
}

fn read_runfile(path: &std::path::Path) -> Result<RunFile, Failure> {
    parse_runfile(path).map_err(|e| match e {
        Error::Io(io) => Failure::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        other => Failure::Lib(other),
    })
}

fn sweep(runfile: PathBuf, csv: Option<PathBuf>, svg: Option<PathBuf>) -> Result<(), Failure> {
    let rf = read_runfile(&runfile)?;
    let records = decolab::run_sweep(&rf.spec)?;
    match csv.or(rf.output.csv) {
        Some(path) if !is_stdout(&path) => emit_csv(&records, &path)?,
        _ => write_csv(&records, std::io::stdout().lock())?,
    }
    if let Some(path) = svg.or(rf.output.svg) {
        emit_svg_lineplot(&records, &path, rf.output.series, rf.output.x_axis)?;
    }
    Ok(())
}

fn check_channel(p_values: Option<Vec<f64>>, gamma_values: Option<Vec<f64>>) -> Result<(), Failure> {
    let ps = p_values.unwrap_or(DEFAULT_CHECK_GRID.to_vec());
    let gs = gamma_values.unwrap_or(DEFAULT_CHECK_GRID.to_vec());
    let rows = channel_check(&ps, &gs)?;
    let mut out = std::io::stdout().lock();
    writeln!(out, "p,gamma,standard_defect,paper_literal_defect")?;
    for r in &rows {
        writeln!(
            out,
            "{},{},{},{}",
            format_value(r.p),
            format_value(r.gamma),
            format_value(r.standard_defect),
            format_value(r.literal_defect)
        )?;
    }
    let worst = rows.iter().map(|r| r.standard_defect).fold(0.0, f64::max);
    if worst > COMPLETENESS_TOL {
        return Err(Failure::Check(format!(
            "standard Kraus set is not trace preserving: defect {worst:e} exceeds {COMPLETENESS_TOL:e}"
        )));
    }
    Ok(())
}

fn teleport(a: TeleportArgs) -> Result<(), Failure> {
    let state = match a.kind {
        KindArg::Ghz => {
            if a.c.is_some() {
                return Err(Failure::Usage("--c applies to --kind ghz-like only".into()));
            }
            StateSpec::Ghz(match (a.alpha, a.beta) {
                (Some(al), Some(be)) => GhzParams::real(al, be)?,
                _ => GhzParams::maximal(),
            })
        }
        KindArg::GhzLike => {
            if a.alpha.is_some() {
                return Err(Failure::Usage("--alpha/--beta apply to --kind ghz only".into()));
            }
            StateSpec::GhzLike(match a.c.as_deref() {
                None => GhzLikeParams::maximal(),
                Some(&[c1, c2, c3]) => GhzLikeParams::with_implied_c4(c1, c2, c3)?,
                Some(&[c1, c2, c3, c4]) => GhzLikeParams::real([c1, c2, c3, c4])?,
                Some(_) => return Err(Failure::Usage("--c takes three or four values".into())),
            })
        }
    };
    let mut spec = SweepSpec::new(state, Quantity::FidelityAvg);
    spec.kraus = match a.kraus {
        KrausArg::Standard => KrausVariant::Standard,
        KrausArg::PaperLiteral => KrausVariant::PaperLiteral,
    };
    spec.mode = match a.mode {
        ModeArg::Independent => ApplicationMode::Independent,
        ModeArg::Correlated => ApplicationMode::Correlated,
    };
    spec.renormalize = spec.requires_renormalization();
    let input = UnknownQubit::new(a.mu.into(), a.nu.into())?;
    let resource = decohered_resource(&spec, ChannelParams::new(a.p, a.gamma)?)?;
    let report = run_protocol(&input, &resource, state.kind(), a.theta)?;

    let mut out = std::io::stdout().lock();
    writeln!(out, "bell,charlie,correction,probability,fidelity")?;
    for r in &report.runs {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.bell,
            r.charlie,
            r.correction.label(),
            format_value(r.probability),
            r.fidelity.map(format_value).unwrap_or_default()
        )?;
    }
    writeln!(
        out,
        "average,,,{},{}",
        format_value(report.total_probability()),
        format_value(report.average_fidelity)
    )?;
    Ok(())
}

fn diff_paper(runfile: PathBuf, out: Option<PathBuf>) -> Result<(), Failure> {
    let rf = read_runfile(&runfile)?;
    let ledger = paper_discrepancies(&rf.spec)?;
    match out.or(rf.output.ledger) {
        Some(path) if !is_stdout(&path) => ledger.write_csv(&path)?,
        _ => std::io::stdout().lock().write_all(ledger.to_csv().as_bytes())?,
    }
    let disagreeing = ledger.rows.iter().filter(|r| r.absdiff > 1e-10).count();
    eprintln!(
        "{} comparisons, {} differ by more than 1e-10, largest difference {}",
        ledger.rows.len(),
        disagreeing,
        format_value(ledger.max_abs_diff())
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = thread_count()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {threads} worker threads: {e}")))?;
    pool.install(|| match cli.command {
        Command::Sweep { runfile, csv, svg } => sweep(runfile, csv, svg),
        Command::CheckChannel { p_values, gamma_values } => check_channel(p_values, gamma_values),
        Command::Teleport(args) => teleport(args),
        Command::DiffPaper { runfile, out } => diff_paper(runfile, out),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("decolab: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

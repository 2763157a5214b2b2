//! The `qdiscord` command-line tool.
//!
//! Every subcommand prints a short text summary, or with `--json` a single
//! [`ReportFile`] document on stdout. Exit codes: 0 on success, 1 when the
//! input is physically invalid (not a state, not normalized, bad family
//! parameter), 2 for usage, parse and I/O errors.

pub mod files;
pub mod report;
mod sweep;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::bloch::{decompose, reconstruct, BlochForm};
use crate::bounds::{
    bounds_report_with, certify_saturation_with, isotropic_gd, measurement_value,
    optimization_form_value, werner_gd, BoundsConfig, Completion,
};
use crate::error::Error;
use crate::linalg::max_abs_diff;
use crate::monogamy::{
    make_counterexample, make_gghz, make_gw, make_slocc_w, monogamy_report, normalize,
};
use crate::oracle::{oracle_gd, oracle_min, GapReport, OracleConfig};
use crate::states::{self, BipartiteState, MultiQubitPureState};
use crate::tolerance::Tolerances;

use files::{amplitude_digest, state_digest, AmplitudeFile, StateFile};
use report::{DecomposeReport, InputRecord, MeasurementReport, OracleReport, ReportFile};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "qdiscord",
    version,
    about = "Geometric discord and measurement-induced nonlocality bounds"
)]
pub struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random states and the brute-force oracle.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for validating input states (Hermiticity, trace, positivity).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Bloch decomposition (x, y, T) of a state.
    Decompose(StateArgs),
    /// GD lower bound, MIN upper bound and saturation certificate.
    Bounds(BoundsArgs),
    /// The relaxed optimal measurement and its validity checks.
    Measurement(MeasurementArgs),
    /// Brute-force GD and MIN over projective measurements.
    Oracle(OracleArgs),
    /// Tabulate a one-parameter family to CSV.
    Sweep(SweepArgs),
    /// Monogamy of discord for an N-qubit pure state.
    Monogamy(MonogamyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateFamily {
    Bell,
    Werner,
    Isotropic,
    Mixed,
    Product,
    Classical,
    Random,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// JSON state file: {"m", "n", "re", "im"}.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
    /// Built-in state family.
    #[arg(long, value_enum)]
    pub family: Option<StateFamily>,
    /// Dimension of subsystem A.
    #[arg(long)]
    pub m: Option<usize>,
    /// Dimension of subsystem B.
    #[arg(long)]
    pub n: Option<usize>,
    /// Werner / isotropic parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    /// Rank of a random mixed state (default: full rank).
    #[arg(long)]
    pub rank: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum CompletionArg {
    #[default]
    Helmert,
    Hadamard,
}

impl From<CompletionArg> for Completion {
    fn from(c: CompletionArg) -> Self {
        match c {
            CompletionArg::Helmert => Completion::Helmert,
            CompletionArg::Hadamard => Completion::Hadamard,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Debug, Clone, Args)]
pub struct Budget {
    /// Oracle restarts.
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    /// Oracle iterations per restart.
    #[arg(long, default_value_t = 400)]
    pub iterations: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Also run the brute-force oracle and report the gaps.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub budget: Budget,
    /// Orthogonal completion used to build the candidate measurement.
    #[arg(long, value_enum, default_value_t = CompletionArg::Helmert)]
    pub completion: CompletionArg,
}

#[derive(Debug, Clone, Args)]
pub struct MeasurementArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum, default_value_t = CompletionArg::Helmert)]
    pub completion: CompletionArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Werner,
    Isotropic,
    Counterexample,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: SweepFamily,
    /// Local dimension for Werner / isotropic.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Number of qubits for the counterexample family.
    #[arg(long = "N", default_value_t = 4)]
    pub qubits: usize,
    /// Grid as start:stop:count, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Also run the GD oracle at each point.
    #[arg(long)]
    pub oracle: bool,
    #[command(flatten)]
    pub budget: Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MonogamyFamily {
    Gghz,
    Gw,
    SloccW,
    Counterexample,
}

#[derive(Debug, Clone, Args)]
pub struct MonogamyArgs {
    /// Amplitude file: {"qubits", "re", "im"}.
    #[arg(long, conflicts_with = "family")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<MonogamyFamily>,
    /// Comma-separated real coefficients (normalized before use).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<f64>,
    /// Coefficient of |0...0> for the SLOCC-W family.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub c0: f64,
    /// Counterexample parameter p.
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    /// Number of qubits.
    #[arg(long = "N")]
    pub qubits: Option<usize>,
}

/// A failure together with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flag combination or missing parameter.
    Usage(String),
    /// File could not be read, parsed or written.
    Io(String),
    /// The input is not a valid physical object.
    Invalid(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Invalid(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::Io(s) => write!(f, "{s}"),
            CliError::Invalid(e) => write!(f, "invalid input: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Invalid(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a successful run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: ReportFile,
    pub text: String,
}

impl Outcome {
    /// The bytes printed on stdout.
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.report)
                .expect("report serialization cannot fail");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn main() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli, argv.into_iter().skip(1).collect()) {
        Ok(out) => {
            print!("{}", out.render(cli.json));
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Parse `args` (without the program name) and run in-process.
pub fn run<I, S>(args: I) -> CliResult<Outcome>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(std::iter::once("qdiscord".to_string()).chain(args.clone()))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    execute(&cli, args)
}

pub fn execute(cli: &Cli, command: Vec<String>) -> CliResult<Outcome> {
    let mut tol = Tolerances::default();
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
        tol.hermitian = t;
        tol.trace = t;
        tol.psd = t;
    }
    let mut report = ReportFile::new(command, cli.seed);
    let mut text = String::new();
    match &cli.command {
        Command::Decompose(a) => {
            let (s, input) = load_state(a, cli.seed, &tol)?;
            report.input = Some(input);
            let b = decompose(&s);
            let d = decompose_report(&s, &b)?;
            let _ = writeln!(text, "m = {}, n = {}", d.m, d.n);
            let _ = writeln!(text, "x = {:?}", d.local_a);
            let _ = writeln!(text, "y = {:?}", d.local_b);
            for (i, row) in d.correlation.iter().enumerate() {
                let _ = writeln!(text, "T[{i}] = {row:?}");
            }
            let _ = writeln!(text, "purity = {}", d.purity);
            let _ = writeln!(text, "purity residual = {:e}", d.purity_residual);
            let _ = writeln!(text, "roundtrip residual = {:e}", d.roundtrip_residual);
            report.decompose = Some(d);
        }
        Command::Bounds(a) => {
            let (s, input) = load_state(&a.state, cli.seed, &tol)?;
            report.input = Some(input);
            let b = decompose(&s);
            let cfg = BoundsConfig {
                completion: a.completion.into(),
                tol,
            };
            let r = bounds_report_with(&b, &cfg)?.summary();
            let _ = writeln!(text, "GD lower bound   = {}", r.gd_lower);
            let _ = writeln!(text, "MIN upper bound  = {}", r.min_upper);
            let _ = writeln!(text, "saturated        = {}", r.saturated);
            if let Some(g) = r.gd_exact {
                let _ = writeln!(text, "GD (exact)       = {g}");
            }
            if let Some(n) = r.min_exact {
                let _ = writeln!(text, "MIN (exact)      = {n}");
            }
            report.closed_form = closed_form(&a.state)?;
            if let Some(c) = report.closed_form {
                let _ = writeln!(text, "closed form      = {c}");
            }
            if a.oracle {
                let (o, gap) = run_oracle(&s, &r_bounds(&r), oracle_config(&a.budget, cli.seed))?;
                let _ = writeln!(
                    text,
                    "oracle GD        = {} (gap {:e})",
                    gap.oracle_gd, gap.gd_gap
                );
                let _ = writeln!(
                    text,
                    "oracle MIN       = {} (gap {:e})",
                    gap.oracle_min, gap.min_gap
                );
                report.oracle = Some(o);
                report.gap = Some(gap);
            }
            report.bounds = Some(r);
        }
        Command::Measurement(a) => {
            let (s, input) = load_state(&a.state, cli.seed, &tol)?;
            report.input = Some(input);
            let b = decompose(&s);
            let cfg = BoundsConfig {
                completion: a.completion.into(),
                tol,
            };
            let r = bounds_report_with(&b, &cfg)?;
            let c = &r.candidate;
            let mv = if c.valid() {
                Some(measurement_value(&s, c)?)
            } else {
                None
            };
            let m = MeasurementReport {
                completion: format!("{:?}", cfg.completion).to_lowercase(),
                candidate: c.summary(),
                measurement_value: mv,
                optimization_form_value: optimization_form_value(&b, c),
                certified_gd: certify_saturation_with(&b, c, &tol),
            };
            let _ = writeln!(text, "valid            = {}", c.valid());
            let _ = writeln!(text, "trace one        = {}", c.each_trace_one);
            let _ = writeln!(text, "complete         = {}", c.complete);
            let _ = writeln!(text, "psd              = {:?}", c.psd);
            let _ = writeln!(text, "idempotent       = {:?}", c.idempotent);
            let _ = writeln!(text, "min eigenvalues  = {:?}", c.min_eigenvalues);
            if let Some(v) = mv {
                let _ = writeln!(text, "value            = {v}");
            }
            let _ = writeln!(text, "relaxed value    = {}", m.optimization_form_value);
            report.measurement = Some(m);
        }
        Command::Oracle(a) => {
            let (s, input) = load_state(&a.state, cli.seed, &tol)?;
            report.input = Some(input);
            let r = bounds_report_with(
                &decompose(&s),
                &BoundsConfig {
                    tol,
                    ..Default::default()
                },
            )?
            .summary();
            let (o, gap) = run_oracle(&s, &r_bounds(&r), oracle_config(&a.budget, cli.seed))?;
            let _ = writeln!(text, "oracle GD  = {}", gap.oracle_gd);
            let _ = writeln!(text, "oracle MIN = {}", gap.oracle_min);
            let _ = writeln!(text, "GD gap     = {:e}", gap.gd_gap);
            let _ = writeln!(text, "MIN gap    = {:e}", gap.min_gap);
            report.oracle = Some(o);
            report.gap = Some(gap);
        }
        Command::Sweep(a) => {
            let cfg = oracle_config(&a.budget, cli.seed);
            let sw = sweep::run(a, &cfg)?;
            let _ = writeln!(text, "wrote {} rows to {}", sw.rows.len(), sw.out);
            report.sweep = Some(sw);
        }
        Command::Monogamy(a) => {
            let (s, input) = load_amplitudes(a)?;
            report.input = Some(input);
            let m = monogamy_report(&s)?;
            for (k, d) in m.pair_discords.iter().enumerate() {
                let _ = writeln!(text, "D(rho_1{}) = {d}", k + 2);
            }
            let _ = writeln!(text, "sum        = {}", m.lhs_sum);
            let _ = writeln!(text, "D(1|rest)  = {}", m.cut_discord);
            let _ = writeln!(text, "deficit    = {}", m.deficit);
            let _ = writeln!(text, "satisfied  = {}", m.satisfied);
            report.monogamy = Some(m);
        }
    }
    Ok(Outcome { report, text })
}

fn oracle_config(b: &Budget, seed: u64) -> OracleConfig {
    OracleConfig {
        restarts: b.restarts,
        iterations: b.iterations,
        seed,
        verify_identity: true,
        ..OracleConfig::default()
    }
}

fn r_bounds(r: &crate::bounds::BoundsSummary) -> (f64, f64) {
    (r.gd_lower, r.min_upper)
}

fn run_oracle(
    s: &BipartiteState,
    (gd_lower, min_upper): &(f64, f64),
    cfg: OracleConfig,
) -> CliResult<(OracleReport, GapReport)> {
    cfg.validate()?;
    let gd = oracle_gd(s, &cfg)?;
    let min = oracle_min(s, &cfg)?;
    let gap = GapReport {
        gd_lower: *gd_lower,
        oracle_gd: gd.best_value,
        min_upper: *min_upper,
        oracle_min: min.best_value,
        gd_gap: gd.best_value - gd_lower,
        min_gap: min_upper - min.best_value,
    };
    Ok((
        OracleReport {
            config: cfg,
            gd: gd.summary(),
            min: min.summary(),
        },
        gap,
    ))
}

fn decompose_report(s: &BipartiteState, b: &BlochForm) -> CliResult<DecomposeReport> {
    let back = reconstruct(b)?;
    let purity = s.purity();
    Ok(DecomposeReport {
        m: b.m,
        n: b.n,
        local_a: b.local_a.iter().copied().collect(),
        local_b: b.local_b.iter().copied().collect(),
        correlation: (0..b.correlation.nrows())
            .map(|i| b.correlation.row(i).iter().copied().collect())
            .collect(),
        purity,
        purity_residual: (b.purity() - purity).abs(),
        roundtrip_residual: max_abs_diff(&back, s.rho()),
    })
}

fn closed_form(a: &StateArgs) -> CliResult<Option<f64>> {
    Ok(match a.family {
        Some(StateFamily::Werner) => Some(werner_gd(a.m.unwrap_or(2), require(a.z, "--z")?)?),
        Some(StateFamily::Isotropic) => Some(isotropic_gd(a.m.unwrap_or(2), require(a.z, "--z")?)?),
        _ => None,
    })
}

fn require<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required for this family")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let raw = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&raw)
        .map_err(|e| CliError::Io(format!("malformed JSON in {}: {e}", path.display())))
}

fn load_state(
    a: &StateArgs,
    seed: u64,
    tol: &Tolerances,
) -> CliResult<(BipartiteState, InputRecord)> {
    let (s, source) = match (&a.file, a.family) {
        (Some(path), _) => {
            let f: StateFile = read_json(path)?;
            (f.to_state(tol)?, format!("file:{}", path.display()))
        }
        (None, Some(fam)) => {
            let m = a.m.unwrap_or(2);
            let n = a.n.unwrap_or(m);
            let s = match fam {
                StateFamily::Bell => states::bell_state(),
                StateFamily::Werner => states::werner(m, require(a.z, "--z")?)?,
                StateFamily::Isotropic => states::isotropic(m, require(a.z, "--z")?)?,
                StateFamily::Mixed => states::maximally_mixed(m, n)?,
                StateFamily::Product => states::product_zero(m, n)?,
                StateFamily::Classical => states::classical_correlated(),
                StateFamily::Random => states::random_state(m, n, a.rank.unwrap_or(m * n), seed)?,
            };
            let name = format!("{fam:?}").to_lowercase();
            (s, format!("family:{name}"))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "give a state with --file or --family".into(),
            ));
        }
    };
    let input = InputRecord {
        source,
        digest: state_digest(&s),
        m: Some(s.m()),
        n: Some(s.n()),
        qubits: None,
        normalization_factor: None,
    };
    Ok((s, input))
}

fn load_amplitudes(a: &MonogamyArgs) -> CliResult<(MultiQubitPureState, InputRecord)> {
    let (s, source, factor) = match (&a.file, a.family) {
        (Some(path), _) => {
            let f: AmplitudeFile = read_json(path)?;
            (f.to_state()?, format!("file:{}", path.display()), None)
        }
        (None, Some(fam)) => {
            let (s, factor) = match fam {
                MonogamyFamily::Gghz => {
                    if a.coeffs.len() != 2 {
                        return Err(CliError::Usage("gghz takes --coeffs a,b".into()));
                    }
                    let (c, f) = normalize(&a.coeffs)?;
                    let q = require(a.qubits, "--N")?;
                    let s = make_gghz(Complex64::new(c[0], 0.0), Complex64::new(c[1], 0.0), q)?;
                    (s, Some(f))
                }
                MonogamyFamily::Gw => {
                    check_count(a, a.coeffs.len())?;
                    let (c, f) = normalize(&a.coeffs)?;
                    (make_gw(&c)?, Some(f))
                }
                MonogamyFamily::SloccW => {
                    check_count(a, a.coeffs.len())?;
                    let all: Vec<f64> = std::iter::once(a.c0)
                        .chain(a.coeffs.iter().copied())
                        .collect();
                    let (c, f) = normalize(&all)?;
                    (make_slocc_w(c[0], &c[1..])?, Some(f))
                }
                MonogamyFamily::Counterexample => {
                    let p = require(a.p, "--p")?;
                    (make_counterexample(p, a.qubits.unwrap_or(4))?, None)
                }
            };
            let name = format!("{fam:?}").to_lowercase();
            (s, format!("family:{name}"), factor)
        }
        (None, None) => {
            return Err(CliError::Usage(
                "give a state with --file or --family".into(),
            ));
        }
    };
    let input = InputRecord {
        source,
        digest: amplitude_digest(&s),
        m: None,
        n: None,
        qubits: Some(s.qubits()),
        normalization_factor: factor,
    };
    Ok((s, input))
}

fn check_count(a: &MonogamyArgs, count: usize) -> CliResult<()> {
    if count == 0 {
        return Err(CliError::Usage(
            "--coeffs is required for this family".into(),
        ));
    }
    match a.qubits {
        Some(q) if q != count => Err(CliError::Usage(format!(
            "--N {q} does not match {count} coefficients"
        ))),
        _ => Ok(()),
    }
}

//! `flatband`: bound-state spectra, α scans, critical strengths, WKB
//! levels, wavefunctions and a self-verification report.

mod config;
mod output;

use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flatband::model::{ModelParams, Parity, Regime};
use flatband::spectrum::{
    find_all, scan_alpha, CriticalStrength, FoundState, SearchConfig, SpectrumScan, RESIDUAL_BOUND,
};
use flatband::verify::{self, VerifyConfig};
use flatband::wavefunction::Eigenfunction;
use flatband::wkb::WkbCondition;
use flatband::Error as CoreError;
use thiserror::Error;

use output::{Cell, Format, Table};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Compute(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter(_) | CoreError::OutsideWindow { .. } | CoreError::RegimeMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Compute(format!("output: {e}"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "flatband",
    version,
    about = "Bound states of a 1D spin-1 flat-band Dirac model with a Coulomb-like impurity"
)]
struct Cli {
    /// key = value file of default options; command-line flags override it
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact and WKB bound-state energies at one strength
    Spectrum(SpectrumArgs),
    /// Spectra over a uniform grid of strengths
    Scan(ScanArgs),
    /// Critical strengths at which levels reach the threshold E = m
    Critical(CriticalArgs),
    /// WKB levels, or the WKB phase at a given energy
    Wkb(WkbArgs),
    /// Sampled bound-state wavefunction and spinor components
    Wavefunction(WavefunctionArgs),
    /// Run the self-checks and print a JSON report
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegimeArg {
    /// α/E < 0, states decaying at infinity
    Neg,
    /// α/E > 0, states confined to |x| < x₀
    Interval,
    /// α/E > 0, states on the whole line, finite at |x| = x₀
    Whole,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Neg => Regime::NegRatio,
            RegimeArg::Interval => Regime::PosRatioInterval,
            RegimeArg::Whole => Regime::PosRatioWholeSpace,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
    Both,
}

impl ParityArg {
    fn parities(self) -> Vec<Parity> {
        match self {
            ParityArg::Odd => vec![Parity::Odd],
            ParityArg::Even => vec![Parity::Even],
            ParityArg::Both => Parity::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct Common {
    /// Mass gap parameter m
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    m: f64,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct SpectrumArgs {
    /// Potential strength α
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, value_enum)]
    regime: RegimeArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Both)]
    parity: ParityArg,
    /// Highest level index searched for
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct ScanArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    alpha_max: f64,
    /// Number of grid points, endpoints included
    #[arg(long, default_value_t = 50)]
    alpha_steps: usize,
    #[arg(long, value_enum)]
    regime: RegimeArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Both)]
    parity: ParityArg,
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    /// Worker threads
    #[arg(long, default_value_t = 4)]
    threads: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct CriticalArgs {
    /// interval or whole (default: both)
    #[arg(long, value_enum)]
    regime: Option<RegimeArg>,
    #[arg(long, value_enum, default_value_t = ParityArg::Both)]
    parity: ParityArg,
    /// Highest level index k
    #[arg(long, default_value_t = 5)]
    n_max: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct WkbArgs {
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, value_enum)]
    regime: RegimeArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Both)]
    parity: ParityArg,
    #[arg(long, default_value_t = 10)]
    n_max: u32,
    /// Report the phase at this energy instead of listing levels
    #[arg(long, allow_negative_numbers = true)]
    energy: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct WavefunctionArgs {
    /// Strength α; the level is found by root search
    #[arg(long, allow_negative_numbers = true, conflicts_with = "energy", required_unless_present = "energy")]
    alpha: Option<f64>,
    /// Energy E; the strength α that makes level n sit at E is solved for
    #[arg(long, allow_negative_numbers = true)]
    energy: Option<f64>,
    #[arg(long, value_enum)]
    regime: RegimeArg,
    #[arg(long, value_enum, default_value_t = ParityArg::Odd)]
    parity: ParityArg,
    /// Level index
    #[arg(long, default_value_t = 1)]
    n: u32,
    /// Samples per half line
    #[arg(long, default_value_t = 200)]
    points: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1.0)]
    m: f64,
    /// Shift added to every Maslov offset (a deliberate perturbation)
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta_shift: f64,
    /// Run only these checks (comma separated or repeated)
    #[arg(long, value_delimiter = ',')]
    check: Vec<String>,
    #[arg(long, default_value_t = 4)]
    threads: usize,
    /// Report file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
}

const STATE_COLUMNS: [&str; 8] =
    ["alpha", "n", "parity", "regime", "E_exact_over_m", "E_wkb_over_m", "residual", "status"];

/// Appends one row per state. Roots whose residual exceeds the bound are
/// withheld (with a warning) so that every written energy satisfies it.
fn push_states(t: &mut Table, states: &[FoundState], m: f64) -> Result<(), CliError> {
    for s in states {
        if s.residual.abs() > RESIDUAL_BOUND {
            eprintln!(
                "warning: alpha = {}, {} n = {}: E = {} withheld, residual {:.2e} above {RESIDUAL_BOUND:e}",
                s.alpha, s.state.parity, s.state.n, s.state.energy, s.residual
            );
            continue;
        }
        t.push(state_row(s, m)?);
    }
    Ok(())
}

fn state_row(s: &FoundState, m: f64) -> Result<Vec<Cell>, CliError> {
    let p = ModelParams::new(m, s.alpha)?;
    let cond = WkbCondition::for_alpha(s.state.regime, s.state.parity, s.alpha)?;
    let wkb_n = (cond.phase(&p, s.state.energy)? / PI - cond.delta).round();
    let status = if wkb_n != f64::from(s.state.n) { "wkb_index_mismatch" } else { "ok" };
    Ok(vec![
        s.alpha.into(),
        s.state.n.into(),
        s.state.parity.to_string().into(),
        s.state.regime.short_name().into(),
        (s.state.energy / m).into(),
        s.wkb_energy.map(|e| e / m).into(),
        s.residual.into(),
        status.into(),
    ])
}

fn emit(table: &Table, common: &Common) -> Result<(), CliError> {
    let mut w = output::sink(common.out.as_deref())?;
    table.write(common.format, &mut w)?;
    w.flush()?;
    Ok(())
}

fn search(n_max: u32, threads: usize) -> Result<SearchConfig, CliError> {
    let cfg = SearchConfig { n_max, threads, ..SearchConfig::default() };
    cfg.validate()?;
    Ok(cfg)
}

fn warn(messages: &[String]) {
    for m in messages {
        eprintln!("warning: {m}");
    }
}

fn run_spectrum(a: &SpectrumArgs) -> Result<(), CliError> {
    let p = ModelParams::new(a.common.m, a.alpha)?;
    let report = find_all(&p, a.regime.into(), &a.parity.parities(), &search(a.n_max, 1)?)?;
    warn(&report.warnings);
    let mut t = Table::new(&STATE_COLUMNS);
    push_states(&mut t, &report.states, p.m)?;
    emit(&t, &a.common)
}

fn alpha_grid(min: f64, max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !(min.is_finite() && max.is_finite() && min <= max) || (steps == 1 && min != max) {
        return Err(CliError::Usage(format!(
            "invalid alpha grid: min = {min}, max = {max}, steps = {steps} (need min <= max, steps >= 2)"
        )));
    }
    if steps <= 1 {
        return Ok(if steps == 0 { Vec::new() } else { vec![min] });
    }
    Ok((0..steps).map(|i| min + (max - min) * i as f64 / (steps - 1) as f64).collect())
}

fn run_scan(a: &ScanArgs) -> Result<(), CliError> {
    let grid = alpha_grid(a.alpha_min, a.alpha_max, a.alpha_steps)?;
    let mut t = Table::new(&STATE_COLUMNS);
    let Some(&first) = grid.first() else { return emit(&t, &a.common) };
    let template = ModelParams::new(a.common.m, first)?;
    let regime: Regime = a.regime.into();
    let scan: SpectrumScan = scan_alpha(&template, &grid, regime, &a.parity.parities(), &search(a.n_max, a.threads)?)?;
    warn(&scan.warnings);
    push_states(&mut t, &scan.states, template.m)?;
    for f in &scan.failures {
        eprintln!("error: alpha = {}: {}", f.alpha, f.message);
        t.push(vec![
            f.alpha.into(),
            Cell::Empty,
            Cell::Empty,
            regime.short_name().into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            "failed".into(),
        ]);
    }
    emit(&t, &a.common)?;
    if scan.failures.len() < grid.len() {
        Ok(())
    } else {
        Err(CliError::Compute("every grid point failed".into()))
    }
}

fn run_critical(a: &CriticalArgs) -> Result<(), CliError> {
    let regimes = match a.regime {
        None => vec![Regime::PosRatioInterval, Regime::PosRatioWholeSpace],
        Some(r) => vec![r.into()],
    };
    let mut t = Table::new(&["regime", "parity", "k", "alpha_c_exact", "alpha_c_asymptotic", "rel_diff"]);
    for regime in regimes {
        for parity in a.parity.parities() {
            for k in 1..=a.n_max {
                let c = CriticalStrength::new(regime, parity, k)?;
                t.push(vec![
                    regime.short_name().into(),
                    parity.to_string().into(),
                    k.into(),
                    c.alpha_c_exact.into(),
                    c.alpha_c_asymptotic.into(),
                    c.rel_diff().into(),
                ]);
            }
        }
    }
    emit(&t, &a.common)
}

fn run_wkb(a: &WkbArgs) -> Result<(), CliError> {
    let p = ModelParams::new(a.common.m, a.alpha)?;
    let regime: Regime = a.regime.into();
    if let Some(e) = a.energy {
        let mut t = Table::new(&["alpha", "parity", "regime", "E_over_m", "phase_over_pi", "n_effective"]);
        for parity in a.parity.parities() {
            let cond = WkbCondition::for_alpha(regime, parity, a.alpha)?;
            let phase = cond.phase(&p, e)? / PI;
            t.push(vec![
                a.alpha.into(),
                parity.to_string().into(),
                regime.short_name().into(),
                (e / p.m).into(),
                phase.into(),
                (phase - cond.delta).into(),
            ]);
        }
        return emit(&t, &a.common);
    }
    let mut t = Table::new(&["alpha", "n", "parity", "regime", "E_wkb_over_m"]);
    for parity in a.parity.parities() {
        let cond = WkbCondition::for_alpha(regime, parity, a.alpha)?;
        for n in 1..=a.n_max {
            // Levels whose phase lies outside the attainable range do not exist.
            let Ok(e) = cond.energy_for_phase(&p, cond.target(n)) else { continue };
            t.push(vec![
                a.alpha.into(),
                n.into(),
                parity.to_string().into(),
                regime.short_name().into(),
                (e / p.m).into(),
            ]);
        }
    }
    emit(&t, &a.common)
}

fn run_wavefunction(a: &WavefunctionArgs) -> Result<(), CliError> {
    let parity = match a.parity {
        ParityArg::Odd => Parity::Odd,
        ParityArg::Even => Parity::Even,
        ParityArg::Both => return Err(CliError::Usage("wavefunction needs --parity odd or even".into())),
    };
    let regime: Regime = a.regime.into();
    let m = a.common.m;
    if a.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let f = match (a.alpha, a.energy) {
        (_, Some(e)) => Eigenfunction::at_energy(m, regime, parity, a.n, e)?,
        (Some(alpha), None) => {
            let p = ModelParams::new(m, alpha)?;
            let report = flatband::spectrum::find_bound_states(&p, regime, parity, &search(a.n.max(1), 1)?)?;
            let s = report.states.iter().find(|s| s.state.n == a.n).ok_or_else(|| {
                CliError::Compute(format!("no {regime} {parity} level n = {} at alpha = {alpha}", a.n))
            })?;
            Eigenfunction::new(p, regime, parity, s.state.energy)?
        }
        (None, None) => unreachable!("clap requires --alpha or --energy"),
    };
    eprintln!("# alpha = {}, E = {}, x0 = {}", f.params.alpha, f.energy, f.x0());
    let mut t = Table::new(&["x", "psi", "psi1", "psi2_imag", "psi3"]);
    for s in f.samples(a.points)? {
        t.push(vec![s.x.into(), s.psi.into(), s.psi1.into(), s.psi2_imag.into(), s.psi3.into()]);
    }
    emit(&t, &a.common)
}

fn run_verify(a: &VerifyArgs) -> Result<(), CliError> {
    let cfg = VerifyConfig { m: a.m, delta_shift: a.delta_shift, threads: a.threads };
    let report = verify::run(&cfg, &a.check)?;
    let mut w = output::sink(a.out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, &report).map_err(|e| CliError::Compute(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}: {}", c.name, c.detail);
    }
    if report.passed {
        Ok(())
    } else {
        Err(CliError::Compute("one or more checks failed".into()))
    }
}

fn parse_args() -> Result<Cli, ExitCode> {
    let args: Vec<String> = std::env::args().collect();
    let args = match config::find_path(&args) {
        Some(path) => match config::load(Path::new(&path)) {
            Ok(entries) => config::inject(&args, &entries),
            Err(e) => {
                eprintln!("error: {e}");
                return Err(ExitCode::from(1));
            }
        },
        None => args,
    };
    Cli::try_parse_from(args).map_err(|e| {
        let _ = e.print();
        ExitCode::from(if e.use_stderr() { 1 } else { 0 })
    })
}

fn main() -> ExitCode {
    let cli = match parse_args() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let result = match &cli.command {
        Command::Spectrum(a) => run_spectrum(a),
        Command::Scan(a) => run_scan(a),
        Command::Critical(a) => run_critical(a),
        Command::Wkb(a) => run_wkb(a),
        Command::Wavefunction(a) => run_wavefunction(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

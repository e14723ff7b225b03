//! Command-line front end for the ReMAD channel toolkit.
//!
//! Subcommands:
//! - `info`: classify one channel and report capacities with witnesses;
//! - `capacity`: capacities only;
//! - `scan`: parameter-plane sweep to plot-ready CSV/JSON;
//! - `compose`: composition of two channels with the closure check.
//!
//! Exit codes: 0 success, 2 domain error, 3 numeric failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use remad_core::capacities::{
    capacity_dispatch, entanglement_assisted_capacity, CapacityError, CapacityPair, CapacityResult,
};
use remad_core::channels::{ChannelError, QutritParams, TransitionMatrix};
use remad_core::liouville::{classify_qutrit, ChannelClassification, LiouvilleError};
use remad_core::tolerance::Tolerances;

#[derive(Parser)]
#[command(
    name = "remad",
    about = "Resonant multilevel amplitude damping channels: classification, capacities, scans",
    version
)]
struct Cli {
    /// Tolerance overrides as key=value (e.g. --tolerance cptp_eig=1e-8);
    /// applied on top of the profile from REMAD_TOLERANCE_PROFILE.
    #[arg(long, global = true, value_name = "KEY=VALUE")]
    tolerance: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single channel and report capacities and witnesses.
    Info(PointArgs),
    /// Report capacities only (Q, Cp, CE, QE).
    Capacity(PointArgs),
    /// Sweep a parameter plane and write plot-ready data.
    Scan(ScanArgs),
    /// Compose two channels and report the closure check.
    Compose(ComposeArgs),
}

#[derive(Args)]
struct ChannelSpec {
    /// Decay probability level 1 -> 0.
    #[arg(long)]
    gamma10: Option<f64>,
    /// Decay probability level 2 -> 1.
    #[arg(long)]
    gamma21: Option<f64>,
    /// Decay probability level 2 -> 0.
    #[arg(long)]
    gamma20: Option<f64>,
    /// Beamsplitter shortcut: per-excitation transmittance eta.
    #[arg(long, conflicts_with_all = ["gamma10", "gamma21", "gamma20", "gamma_file"])]
    eta: Option<f64>,
    /// Read a 3-level transition matrix from the text format
    /// (one line per row j: gamma_{j,0} ... gamma_{j,j}; '#' comments).
    #[arg(long, conflicts_with_all = ["gamma10", "gamma21", "gamma20"])]
    gamma_file: Option<PathBuf>,
}

impl ChannelSpec {
    fn resolve(&self, tol: &Tolerances) -> Result<QutritParams, CliError> {
        if let Some(eta) = self.eta {
            let g = TransitionMatrix::beamsplitter(eta, 3).map_err(CliError::domain)?;
            return Ok(g.to_qutrit_params().expect("beamsplitter built at d = 3"));
        }
        if let Some(path) = &self.gamma_file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let g = TransitionMatrix::from_text(&text, tol).map_err(CliError::domain)?;
            return g.to_qutrit_params().ok_or_else(|| {
                CliError::Domain(format!(
                    "{} holds a {}-level matrix; point commands are qutrit-only",
                    path.display(),
                    g.dim()
                ))
            });
        }
        match (self.gamma10, self.gamma21, self.gamma20) {
            (Some(a), Some(b), Some(c)) => QutritParams::new(a, b, c).map_err(CliError::domain),
            _ => Err(CliError::Domain(
                "provide --gamma10/--gamma21/--gamma20, --eta, or --gamma-file".into(),
            )),
        }
    }
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    channel: ChannelSpec,
    /// Coarse-grid steps per axis for the diagonal optimizations.
    #[arg(long, default_value_t = 200)]
    resolution: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Plane {
    Gamma10,
    Gamma21,
    Gamma20,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    Class,
    Q,
    Cp,
    Ce,
}

#[derive(Args)]
struct ScanArgs {
    /// Which parameter the plane fixes.
    #[arg(long, value_enum)]
    plane: Plane,
    /// Value of the fixed parameter, in [0, 1].
    #[arg(long)]
    fixed_value: f64,
    /// Grid points per free axis, in [2, 2000].
    #[arg(long)]
    resolution: usize,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Quantities to compute (default: all).
    #[arg(long, value_delimiter = ',', value_enum)]
    quantities: Vec<Quantity>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// Coarse-grid steps per axis for the per-cell optimizations.
    #[arg(long, default_value_t = 200)]
    opt_resolution: usize,
}

#[derive(Args)]
struct ComposeArgs {
    /// Channel applied first.
    #[command(flatten)]
    first: ChannelSpec,
    /// gamma10 of the channel applied second.
    #[arg(long)]
    second_gamma10: Option<f64>,
    /// gamma21 of the channel applied second.
    #[arg(long)]
    second_gamma21: Option<f64>,
    /// gamma20 of the channel applied second.
    #[arg(long)]
    second_gamma20: Option<f64>,
    /// Beamsplitter shortcut for the channel applied second.
    #[arg(long, conflicts_with_all = ["second_gamma10", "second_gamma21", "second_gamma20"])]
    second_eta: Option<f64>,
}

enum CliError {
    Domain(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Numeric(m) | CliError::Io(m) => m,
        }
    }
}

impl From<CapacityError> for CliError {
    fn from(e: CapacityError) -> Self {
        match e {
            CapacityError::OutOfDomain(..) | CapacityError::OutOfRange(_) => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<LiouvilleError> for CliError {
    fn from(e: LiouvilleError) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn tolerances_from_env_and_overrides(overrides: &[String]) -> Result<Tolerances, CliError> {
    let mut tol = match std::env::var("REMAD_TOLERANCE_PROFILE") {
        Ok(name) => Tolerances::profile(&name).ok_or_else(|| {
            CliError::Domain(format!(
                "REMAD_TOLERANCE_PROFILE must be 'default' or 'strict', got '{name}'"
            ))
        })?,
        Err(_) => Tolerances::default_profile(),
    };
    for spec in overrides {
        let (key, value) = spec.split_once('=').ok_or_else(|| {
            CliError::Domain(format!("--tolerance expects key=value, got '{spec}'"))
        })?;
        let value: f64 = value
            .parse()
            .map_err(|_| CliError::Domain(format!("tolerance value '{value}' is not a number")))?;
        if !tol.set(key, value) {
            return Err(CliError::Domain(format!("unknown tolerance key '{key}'")));
        }
    }
    Ok(tol)
}

/// Fixed decimal formatting with 12 significant digits, '.' decimal
/// separator, no locale.
fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return "nan".into();
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

fn tolerances_json(tol: &Tolerances) -> serde_json::Value {
    json!({
        "hermiticity": tol.hermiticity,
        "trace": tol.trace,
        "psd": tol.psd,
        "equality": tol.equality,
        "cptp_eig": tol.cptp_eig,
        "cptp_tp": tol.cptp_tp,
        "singular_rel": tol.singular_rel,
        "boundary": tol.boundary,
    })
}

fn params_json(g: &QutritParams) -> serde_json::Value {
    json!({ "gamma10": g.g10, "gamma21": g.g21, "gamma20": g.g20 })
}

fn classification_json(c: &ChannelClassification) -> serde_json::Value {
    json!({
        "verdict": c.verdict.as_str(),
        "degradable": c.degradable,
        "antidegradable": c.antidegradable,
        "degrading_witness": c.degrading_witness.as_ref().map(params_json),
        "antidegrading_witness": c.antidegrading_witness.as_ref().map(params_json),
        "degrading_choi_min_eigenvalue": c.degrading_choi_min_eig,
        "antidegrading_choi_min_eigenvalue": c.antidegrading_choi_min_eig,
    })
}

fn capacity_json(r: &CapacityResult) -> serde_json::Value {
    json!({
        "value": r.value,
        "method": r.method.as_str(),
        "upper": r.upper,
        "argmax": r.argmax.as_ref().map(|a| a.populations().to_vec()),
        "optimizer_evals": r.optimizer_evals,
    })
}

fn cmd_info(args: &PointArgs, tol: &Tolerances, capacities_only: bool) -> Result<(), CliError> {
    let g = args.channel.resolve(tol)?;
    let pair = capacity_dispatch(&g, args.resolution, tol)?;
    let ea = entanglement_assisted_capacity(&g, args.resolution)?;
    let report = if capacities_only {
        json!({
            "parameters": params_json(&g),
            "quantum_capacity": capacity_json(&pair.q),
            "private_classical_capacity": capacity_json(&pair.cp),
            "entanglement_assisted_classical_capacity": ea.ce,
            "entanglement_assisted_quantum_capacity": ea.qe,
        })
    } else {
        json!({
            "parameters": params_json(&g),
            "classification": classification_json(&pair.classification),
            "quantum_capacity": capacity_json(&pair.q),
            "private_classical_capacity": capacity_json(&pair.cp),
            "entanglement_assisted_classical_capacity": ea.ce,
            "entanglement_assisted_quantum_capacity": ea.qe,
            "tolerances": tolerances_json(tol),
        })
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}

fn cmd_compose(args: &ComposeArgs, tol: &Tolerances) -> Result<(), CliError> {
    let first = args.first.resolve(tol)?;
    let second = if let Some(eta) = args.second_eta {
        TransitionMatrix::beamsplitter(eta, 3)
            .map_err(CliError::domain)?
            .to_qutrit_params()
            .expect("beamsplitter built at d = 3")
    } else {
        match (
            args.second_gamma10,
            args.second_gamma21,
            args.second_gamma20,
        ) {
            (Some(a), Some(b), Some(c)) => QutritParams::new(a, b, c).map_err(CliError::domain)?,
            _ => {
                return Err(CliError::Domain(
                    "provide --second-gamma10/--second-gamma21/--second-gamma20 or --second-eta"
                        .into(),
                ))
            }
        }
    };
    let out = remad_core::composition::compose_transitions(&first, &second)
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let report = json!({
        "first": params_json(&first),
        "second": params_json(&second),
        "composed": params_json(&out.params),
        "closed": out.closed,
        "constraint_residual": out.constraint_residual,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(())
}

/// One scan cell, already formatted for output.
struct Row {
    gamma: [f64; 3],
    class: &'static str,
    q: String,
    q_method: &'static str,
    cp: String,
    ce: String,
}

fn scan_cell(
    gamma: [f64; 3],
    want_capacities: bool,
    want_ce: bool,
    opt_resolution: usize,
    tol: &Tolerances,
) -> Result<Row, CliError> {
    let [g10, g21, g20] = gamma;
    if g21 + g20 > 1.0 + 1e-12 {
        return Ok(Row {
            gamma,
            class: "OutOfDomain",
            q: String::new(),
            q_method: "",
            cp: String::new(),
            ce: String::new(),
        });
    }
    let g = QutritParams::new(g10, g21, g20).map_err(CliError::domain)?;
    let (class, q, q_method, cp) = if want_capacities {
        let pair: CapacityPair = capacity_dispatch(&g, opt_resolution, tol)?;
        let fmt_result = |r: &CapacityResult| match r.upper {
            Some(up) if r.method == remad_core::capacities::CapacityMethod::Unknown => {
                format!("{}:{}", fmt_sig12(r.value), fmt_sig12(up))
            }
            _ => fmt_sig12(r.value),
        };
        (
            pair.classification.verdict.as_str(),
            fmt_result(&pair.q),
            pair.q.method.as_str(),
            fmt_result(&pair.cp),
        )
    } else {
        let class = classify_qutrit(&g, tol)?;
        (class.verdict.as_str(), String::new(), "", String::new())
    };
    let ce = if want_ce {
        fmt_sig12(entanglement_assisted_capacity(&g, opt_resolution)?.ce)
    } else {
        String::new()
    };
    Ok(Row {
        gamma,
        class,
        q,
        q_method,
        cp,
        ce,
    })
}

fn cmd_scan(args: &ScanArgs, tol: &Tolerances) -> Result<(), CliError> {
    if !(2..=2000).contains(&args.resolution) {
        return Err(CliError::Domain(format!(
            "resolution {} outside [2, 2000]",
            args.resolution
        )));
    }
    if !(0.0..=1.0).contains(&args.fixed_value) {
        return Err(CliError::Domain(format!(
            "fixed value {} outside [0, 1]",
            args.fixed_value
        )));
    }
    let quantities: Vec<Quantity> = if args.quantities.is_empty() {
        vec![Quantity::Class, Quantity::Q, Quantity::Cp, Quantity::Ce]
    } else {
        args.quantities.clone()
    };
    let want_capacities = quantities.contains(&Quantity::Q) || quantities.contains(&Quantity::Cp);
    let want_ce = quantities.contains(&Quantity::Ce);

    let n = args.resolution;
    let cells: Vec<[f64; 3]> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let a = i as f64 / (n - 1) as f64;
            let b = j as f64 / (n - 1) as f64;
            match args.plane {
                Plane::Gamma10 => [args.fixed_value, a, b],
                Plane::Gamma21 => [a, args.fixed_value, b],
                Plane::Gamma20 => [a, b, args.fixed_value],
            }
        })
        .collect();

    let jobs = args
        .jobs
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
        .max(1);
    let mut rows: Vec<Option<Row>> = Vec::with_capacity(cells.len());
    rows.resize_with(cells.len(), || None);

    // worker pool over cell indices; output assembled in grid order below
    let next = std::sync::atomic::AtomicUsize::new(0);
    let results: Vec<Result<Vec<(usize, Row)>, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                let next = &next;
                let cells = &cells;
                scope.spawn(move || {
                    let mut local = Vec::new();
                    loop {
                        let idx = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if idx >= cells.len() {
                            break Ok(local);
                        }
                        let row = scan_cell(
                            cells[idx],
                            want_capacities,
                            want_ce,
                            args.opt_resolution,
                            tol,
                        )?;
                        local.push((idx, row));
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    for batch in results {
        for (idx, row) in batch? {
            rows[idx] = Some(row);
        }
    }
    let rows: Vec<Row> = rows
        .into_iter()
        .map(|r| r.expect("all cells computed"))
        .collect();

    let payload = match args.format {
        Format::Csv => {
            let mut out = String::from("gamma10,gamma21,gamma20,class,Q,Q_method,Cp,CE\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    fmt_sig12(r.gamma[0]),
                    fmt_sig12(r.gamma[1]),
                    fmt_sig12(r.gamma[2]),
                    r.class,
                    r.q,
                    r.q_method,
                    r.cp,
                    r.ce
                ));
            }
            out
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "gamma10": r.gamma[0],
                        "gamma21": r.gamma[1],
                        "gamma20": r.gamma[2],
                        "class": r.class,
                        "Q": r.q,
                        "Q_method": r.q_method,
                        "Cp": r.cp,
                        "CE": r.ce,
                    })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&items).expect("scan rows serialize");
            s.push('\n');
            s
        }
    };
    std::fs::write(&args.out, payload)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.out.display())))?;
    eprintln!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match tolerances_from_env_and_overrides(&cli.tolerance) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code());
        }
    };
    let result = match &cli.command {
        Command::Info(args) => cmd_info(args, &tol, false),
        Command::Capacity(args) => cmd_info(args, &tol, true),
        Command::Scan(args) => cmd_scan(args, &tol),
        Command::Compose(args) => cmd_compose(args, &tol),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

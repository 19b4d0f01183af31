//! Command-line front end: config ingestion, spectrum tables, oracle
//! comparison reports, wavefunction samples and regime reports, emitted as
//! CSV or JSON.
//!
//! Payloads go to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 2 configuration error, 3 nonphysical level under the strict policy,
//! 4 oracle failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::model::{
    energy_from_nu, regime_check, Branch, DerivedParams, ModelError, PhysicalConfig, QuantumNumbers, Spin,
};
use crate::oracle::{
    count_sign_changes, evaluate_wavefunction, exact_hardwall_roots, normalize_and_tail, radial_operator_eigenvalues,
    unconfined_extent, uniform_grid, EigenSettings, OracleDomain, OracleError, OracleResult, RootScan,
};
use crate::spectra::{
    hardwall_nu, level_order, quantized_nu_unconfined, spectrum_table, EnergyLevel, EnergyModel, NonPhysicalPolicy,
    SpectraError, TableRequest,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NONPHYSICAL: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

const DEFAULT_N_MAX: u32 = 3;
const DEFAULT_SAMPLES: usize = 200;
/// Relative floor for counting sign changes in emitted wavefunction samples.
const NODE_FLOOR: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{count} nonphysical level(s); first at n={n} l={l} s={s}: {source}")]
    NonPhysical {
        count: usize,
        n: u32,
        l: i32,
        s: Spin,
        source: SpectraError,
    },
    #[error("oracle failure: {0}")]
    Oracle(OracleError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::NonPhysical { .. } => EXIT_NONPHYSICAL,
            CliError::Oracle(_) => EXIT_ORACLE,
        }
    }

    fn nonphysical(rejected: &[(QuantumNumbers, SpectraError)]) -> Self {
        let (qn, err) = &rejected[0];
        CliError::NonPhysical {
            count: rejected.len(),
            n: qn.n,
            l: qn.l,
            s: qn.spin,
            source: err.clone(),
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        if e.is_nonphysical() {
            CliError::Config(format!("unexpected nonphysical level: {e}"))
        } else {
            CliError::Config(e.to_string())
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Model(m) => m.into(),
            OracleError::ZeroFrequency | OracleError::UnboundedDomain | OracleError::InvalidRequest(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Oracle(other),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "cosmic-dirac",
    version,
    about = "Dirac oscillator spectra in a rotating frame around a cosmic string"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energy levels from one closed form or oracle over an (n, l, s) box.
    Spectrum(CommonArgs),
    /// Closed-form ν against the numerical oracles, with summary statistics.
    Compare(CommonArgs),
    /// Normalized radial wavefunction samples for one state.
    Wavefunction {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Regime ratios and flags for the physical parameters.
    Regimes(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON file with run settings; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    omega0: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    l_min: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    l_max: Option<i32>,
    /// Spin projection, +1 or -1; repeatable.
    #[arg(long = "spin", allow_negative_numbers = true)]
    spins: Vec<i32>,
    #[arg(long, value_parser = parse_model)]
    model: Option<EnergyModel>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Finest grid of the radial eigensolver.
    #[arg(long)]
    oracle_grid: Option<usize>,
    /// Largest tolerated relative Richardson correction of the eigensolver.
    #[arg(long)]
    oracle_tolerance: Option<f64>,
    /// Bisection width in λ for the exact hard-wall roots.
    #[arg(long)]
    root_tolerance: Option<f64>,
    /// Omit nonphysical levels instead of failing (exit 3).
    #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "true")]
    skip_nonphysical: Option<bool>,
    /// Also emit the negative-energy branch.
    #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "true")]
    include_antiparticle: Option<bool>,
    /// Levels per (l, s) in comparison reports; defaults to n_max + 1.
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Debug, Args)]
struct StateArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    l: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i32>,
    #[arg(long)]
    samples: Option<usize>,
}

fn parse_model(s: &str) -> std::result::Result<EnergyModel, String> {
    s.parse()
}

/// Physical parameters as they appear in a config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhysicalFile {
    mass: Option<f64>,
    omega0: Option<f64>,
    omega: Option<f64>,
    eta: Option<f64>,
}

/// Run settings as they appear in a config file; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    physical: PhysicalFile,
    n_max: Option<u32>,
    l_min: Option<i32>,
    l_max: Option<i32>,
    spins: Option<Vec<i32>>,
    model: Option<EnergyModel>,
    output_format: Option<OutputFormat>,
    skip_nonphysical: Option<bool>,
    include_antiparticle: Option<bool>,
    oracle_grid: Option<usize>,
    oracle_tolerance: Option<f64>,
    root_tolerance: Option<f64>,
    count: Option<usize>,
    n: Option<u32>,
    l: Option<i32>,
    s: Option<i32>,
    samples: Option<usize>,
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub physical: PhysicalConfig,
    pub n_max: u32,
    pub l_min: i32,
    pub l_max: i32,
    /// Sorted, without duplicates.
    pub spins: Vec<Spin>,
    pub model: EnergyModel,
    pub output_format: OutputFormat,
    pub skip_nonphysical: bool,
    pub include_antiparticle: bool,
    pub oracle_grid: usize,
    pub oracle_tolerance: f64,
    pub root_tolerance: f64,
    pub count: usize,
    /// The single state of the wavefunction command.
    pub state: QuantumNumbers,
    pub samples: usize,
}

impl RunConfig {
    fn resolve(args: &CommonArgs, state: Option<&StateArgs>) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::Config(format!("malformed config {}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };

        let required = |flag: Option<f64>, from_file: Option<f64>, name: &str| {
            flag.or(from_file)
                .ok_or_else(|| CliError::Config(format!("missing required parameter '{name}'")))
        };
        let physical = PhysicalConfig::new(
            required(args.mass, file.physical.mass, "mass")?,
            required(args.omega0, file.physical.omega0, "omega0")?,
            required(args.omega, file.physical.omega, "omega")?,
            required(args.eta, file.physical.eta, "eta")?,
        )?;

        let n_max = args.n_max.or(file.n_max).unwrap_or(DEFAULT_N_MAX);
        let l_min = args.l_min.or(file.l_min).unwrap_or(0);
        let l_max = args.l_max.or(file.l_max).unwrap_or(0);
        if l_min > l_max {
            return Err(CliError::Config(format!("l_min = {l_min} exceeds l_max = {l_max}")));
        }

        let raw_spins = if args.spins.is_empty() {
            file.spins.unwrap_or_else(|| vec![1])
        } else {
            args.spins.clone()
        };
        if raw_spins.is_empty() {
            return Err(CliError::Config("spins must be nonempty".into()));
        }
        let mut spins = raw_spins.iter().map(|&s| spin_from(s)).collect::<Result<Vec<_>>>()?;
        spins.sort();
        spins.dedup();

        let defaults = EigenSettings::default();
        let oracle_grid = args.oracle_grid.or(file.oracle_grid).unwrap_or(defaults.grid_points);
        let oracle_tolerance = args
            .oracle_tolerance
            .or(file.oracle_tolerance)
            .unwrap_or(defaults.tolerance);
        let root_tolerance = args
            .root_tolerance
            .or(file.root_tolerance)
            .unwrap_or(RootScan::default().tolerance);
        for (name, value) in [
            ("oracle_tolerance", oracle_tolerance),
            ("root_tolerance", root_tolerance),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(CliError::Config(format!("{name} must be finite and > 0, got {value}")));
            }
        }

        let state_n = state.and_then(|s| s.n).or(file.n).unwrap_or(0);
        let state_l = state.and_then(|s| s.l).or(file.l).unwrap_or(0);
        let state_s = spin_from(state.and_then(|s| s.s).or(file.s).unwrap_or(1))?;
        let samples = state
            .and_then(|s| s.samples)
            .or(file.samples)
            .unwrap_or(DEFAULT_SAMPLES);
        if samples < 2 {
            return Err(CliError::Config(format!("samples must be >= 2, got {samples}")));
        }

        Ok(Self {
            physical,
            n_max,
            l_min,
            l_max,
            spins,
            model: args.model.or(file.model).unwrap_or(EnergyModel::Unconfined),
            output_format: args.format.or(file.output_format).unwrap_or_default(),
            skip_nonphysical: args.skip_nonphysical.or(file.skip_nonphysical).unwrap_or(false),
            include_antiparticle: args.include_antiparticle.or(file.include_antiparticle).unwrap_or(false),
            oracle_grid,
            oracle_tolerance,
            root_tolerance,
            count: args.count.or(file.count).unwrap_or(n_max as usize + 1),
            state: QuantumNumbers::new(state_n, state_l, state_s),
            samples,
        })
    }

    fn policy(&self) -> NonPhysicalPolicy {
        if self.skip_nonphysical {
            NonPhysicalPolicy::Flag
        } else {
            NonPhysicalPolicy::Strict
        }
    }

    fn eigen_settings(&self) -> EigenSettings {
        EigenSettings {
            grid_points: self.oracle_grid,
            tolerance: self.oracle_tolerance,
        }
    }

    fn root_scan(&self) -> RootScan {
        RootScan {
            tolerance: self.root_tolerance,
            ..RootScan::default()
        }
    }

    /// `(l, s)` channels in emission order.
    fn channels(&self) -> Vec<(i32, Spin)> {
        (self.l_min..=self.l_max)
            .flat_map(|l| self.spins.iter().map(move |&s| (l, s)))
            .collect()
    }

    fn metadata(&self, command: &str) -> Vec<(String, Value)> {
        let c = &self.physical;
        vec![
            ("command".into(), json!(command)),
            ("version".into(), json!(env!("CARGO_PKG_VERSION"))),
            ("mass".into(), json!(c.mass())),
            ("omega0".into(), json!(c.omega0())),
            ("omega".into(), json!(c.omega())),
            ("eta".into(), json!(c.eta())),
            ("model".into(), json!(self.model.as_str())),
        ]
    }
}

fn spin_from(s: i32) -> Result<Spin> {
    Spin::from_i32(s).ok_or_else(|| CliError::Config(format!("spin must be +1 or -1, got {s}")))
}

/// A rendered payload: metadata plus a table of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub header: Vec<(String, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Report {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.header {
            let _ = writeln!(out, "# {key}={}", csv_cell(value));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let header: Map<String, Value> = self.header.iter().cloned().collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .map(|c| c.to_string())
                    .zip(row.iter().cloned())
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&json!({ "header": header, "rows": rows }))
            .expect("JSON values always serialize");
        out.push('\n');
        out
    }
}

/// Numbers use the shortest decimal that round-trips to the same double,
/// identical to the JSON rendering; undefined values are empty fields.
fn csv_cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

fn num(x: f64) -> Value {
    // Non-finite values have no JSON form and become null.
    json!(x)
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

/// Outcome of one invocation, captured for the binary and for tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_CONFIG,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };

    let mut diagnostics = Vec::new();
    let result = dispatch(&cli.command, &mut diagnostics);
    let mut stderr = diagnostics.join("\n");
    if !stderr.is_empty() {
        stderr.push('\n');
    }
    match result {
        Ok(stdout) => Outcome {
            stdout,
            stderr,
            code: EXIT_OK,
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            Outcome {
                stdout: String::new(),
                stderr,
                code: e.exit_code(),
            }
        }
    }
}

fn dispatch(command: &Command, diagnostics: &mut Vec<String>) -> Result<String> {
    let (run, report) = match command {
        Command::Spectrum(args) => {
            let run = RunConfig::resolve(args, None)?;
            let report = cmd_spectrum(&run, diagnostics)?;
            (run, report)
        }
        Command::Compare(args) => {
            let run = RunConfig::resolve(args, None)?;
            let report = cmd_compare(&run)?;
            (run, report)
        }
        Command::Wavefunction { common, state } => {
            let run = RunConfig::resolve(common, Some(state))?;
            let report = cmd_wavefunction(&run)?;
            (run, report)
        }
        Command::Regimes(args) => {
            let run = RunConfig::resolve(args, None)?;
            (run.clone(), cmd_regimes(&run))
        }
    };
    Ok(report.render(run.output_format))
}

/// Energy table for the configured model and `(n, l, s)` box.
pub fn cmd_spectrum(run: &RunConfig, diagnostics: &mut Vec<String>) -> Result<Report> {
    let (levels, rejected) = match run.model {
        EnergyModel::OracleUnconfined | EnergyModel::OracleHardwall => oracle_levels(run)?,
        model => {
            let mut request = TableRequest::new(run.n_max, run.l_min..=run.l_max, run.spins.clone(), model);
            request.include_antiparticle = run.include_antiparticle;
            let table = spectrum_table(&run.physical, &request, NonPhysicalPolicy::Flag)?;
            (table.levels, table.nonphysical)
        }
    };
    if !rejected.is_empty() {
        if run.policy() == NonPhysicalPolicy::Strict {
            return Err(CliError::nonphysical(&rejected));
        }
        diagnostics.push(format!("skipped {} nonphysical level(s)", rejected.len()));
    }

    let regime = regime_check(&run.physical);
    let mut header = run.metadata("spectrum");
    header.extend([
        ("n_max".into(), json!(run.n_max)),
        ("l_min".into(), json!(run.l_min)),
        ("l_max".into(), json!(run.l_max)),
        (
            "spins".into(),
            json!(run.spins.iter().map(|s| s.as_i32()).collect::<Vec<_>>()),
        ),
        ("include_antiparticle".into(), json!(run.include_antiparticle)),
        ("skipped_nonphysical".into(), json!(rejected.len())),
        ("case1_ratio".into(), opt_num(regime.case1_ratio)),
        ("case2_value".into(), num(regime.case2_value)),
        ("regime_notes".into(), json!(regime.notes)),
    ]);
    let rows = levels
        .iter()
        .map(|level| {
            vec![
                json!(level.model.as_str()),
                json!(level.qn.n),
                json!(level.qn.l),
                json!(level.qn.spin.as_i32()),
                json!(level.qn.branch.as_str()),
                num(level.zeta),
                num(level.delta),
                num(level.nu),
                num(level.energy),
                json!(level.regime.case1_ok),
                json!(level.regime.case2_ok),
            ]
        })
        .collect();
    Ok(Report {
        header,
        columns: vec![
            "model", "n", "l", "s", "branch", "zeta", "delta", "nu", "energy", "case1_ok", "case2_ok",
        ],
        rows,
    })
}

/// Accepted levels and the states rejected as nonphysical.
type LevelSplit = (Vec<EnergyLevel>, Vec<(QuantumNumbers, SpectraError)>);

/// Levels whose `ν` comes from a numerical oracle rather than a closed form.
fn oracle_levels(run: &RunConfig) -> Result<LevelSplit> {
    let config = &run.physical;
    let regime = regime_check(config);
    let branches: &[Branch] = if run.include_antiparticle {
        &[Branch::Particle, Branch::Antiparticle]
    } else {
        &[Branch::Particle]
    };
    let mut levels = Vec::new();
    let mut rejected = Vec::new();
    for (l, spin) in run.channels() {
        let qn0 = QuantumNumbers::new(0, l, spin);
        let params = DerivedParams::new(config, l, spin)?;
        let oracle = oracle_nus(run, &qn0, run.n_max as usize + 1)?;
        for (n, &nu) in oracle.nus.iter().enumerate() {
            for &branch in branches {
                let qn = QuantumNumbers {
                    n: n as u32,
                    branch,
                    ..qn0
                };
                match energy_from_nu(nu, config, &qn) {
                    Ok(energy) => levels.push(EnergyLevel {
                        qn,
                        energy,
                        nu,
                        zeta: params.zeta,
                        delta: params.delta,
                        model: run.model,
                        regime: regime.clone(),
                    }),
                    Err(e) => rejected.push((qn, SpectraError::from(e))),
                }
            }
        }
    }
    levels.sort_by(level_order);
    Ok((levels, rejected))
}

/// Lowest `count` oracle eigenvalues for the domain the model refers to.
fn oracle_nus(run: &RunConfig, qn: &QuantumNumbers, count: usize) -> Result<OracleResult> {
    let result = if run.model.is_hardwall() {
        exact_hardwall_roots(&run.physical, qn, count, run.root_scan())
    } else {
        radial_operator_eigenvalues(&run.physical, qn, count, OracleDomain::Unconfined, run.eigen_settings())
    };
    Ok(result?)
}

/// Closed-form `ν` paired with its oracle, per level, plus summary
/// statistics of the relative deviation.
pub fn cmd_compare(run: &RunConfig) -> Result<Report> {
    let hardwall = run.model.is_hardwall();
    let mut rows = Vec::new();
    let mut deviations = Vec::new();
    let mut orders: Vec<f64> = Vec::new();
    let mut nodes_match = true;
    let mut decreasing = true;
    if run.count > 0 {
        for (l, spin) in run.channels() {
            let qn0 = QuantumNumbers::new(0, l, spin);
            let oracle = oracle_nus(run, &qn0, run.count)?;
            orders.extend(oracle.convergence_order);
            let mut previous = f64::INFINITY;
            for (n, (&oracle_nu, &residual)) in oracle.nus.iter().zip(&oracle.residuals).enumerate() {
                let qn = qn0.with_n(n as u32);
                let analytic = if hardwall {
                    hardwall_nu(&run.physical, &qn)?
                } else {
                    quantized_nu_unconfined(&run.physical, &qn)?
                };
                let deviation = ((analytic - oracle_nu) / oracle_nu).abs();
                let nodes = oracle.node_counts[n];
                nodes_match &= nodes == n;
                decreasing &= deviation < previous;
                previous = deviation;
                deviations.push(deviation);
                rows.push(vec![
                    json!(n),
                    json!(l),
                    json!(spin.as_i32()),
                    num(analytic),
                    num(oracle_nu),
                    num(deviation),
                    json!(nodes),
                    num(residual),
                    opt_num(oracle.convergence_order),
                ]);
            }
        }
    }

    let mut sorted = deviations.clone();
    sorted.sort_by(f64::total_cmp);
    let median = match sorted.len() {
        0 => None,
        k if k % 2 == 1 => Some(sorted[k / 2]),
        k => Some(0.5 * (sorted[k / 2 - 1] + sorted[k / 2])),
    };
    let max = sorted.last().copied();
    let order = orders.iter().copied().reduce(f64::min);

    let mut header = run.metadata("compare");
    header.extend([
        (
            "oracle".into(),
            json!(if hardwall {
                "hypergeometric_roots"
            } else {
                "radial_eigensolver"
            }),
        ),
        ("count".into(), json!(run.count)),
        ("l_min".into(), json!(run.l_min)),
        ("l_max".into(), json!(run.l_max)),
        (
            "spins".into(),
            json!(run.spins.iter().map(|s| s.as_i32()).collect::<Vec<_>>()),
        ),
        (
            "oracle_grid".into(),
            if hardwall { Value::Null } else { json!(run.oracle_grid) },
        ),
        ("levels".into(), json!(deviations.len())),
        ("max_deviation".into(), opt_num(max)),
        ("median_deviation".into(), opt_num(median)),
        ("convergence_order".into(), opt_num(order)),
        ("node_counts_match".into(), json!(nodes_match)),
        (
            "deviation_decreasing_in_n".into(),
            if rows.is_empty() {
                Value::Null
            } else {
                json!(decreasing)
            },
        ),
    ]);
    Ok(Report {
        header,
        columns: vec![
            "n",
            "l",
            "s",
            "analytic_nu",
            "oracle_nu",
            "rel_deviation",
            "oracle_nodes",
            "oracle_residual",
            "convergence_order",
        ],
        rows,
    })
}

/// Normalized samples of the radial wavefunction for the configured state.
pub fn cmd_wavefunction(run: &RunConfig) -> Result<Report> {
    let config = &run.physical;
    let qn = run.state;
    let rho0 = DerivedParams::new(config, qn.l, qn.spin)?.rho0;
    let nu = match run.model {
        EnergyModel::Unconfined | EnergyModel::UnconfinedNonrel => quantized_nu_unconfined(config, &qn)?,
        EnergyModel::Hardwall | EnergyModel::HardwallNonrel => hardwall_nu(config, &qn)?,
        EnergyModel::OracleUnconfined | EnergyModel::OracleHardwall => {
            oracle_nus(run, &qn, qn.n as usize + 1)?.nus[qn.n as usize]
        }
    };
    let rho_max = if run.model.is_hardwall() {
        rho0.ok_or(SpectraError::UnboundedDomain)?
    } else {
        unconfined_extent(config, &qn)?
    };
    let raw = evaluate_wavefunction(config, &qn, nu, &uniform_grid(rho_max, run.samples))?;
    let sample = normalize_and_tail(&raw, rho0.unwrap_or(f64::INFINITY))?;
    let nodes = count_sign_changes(&sample.values, NODE_FLOOR);

    let mut header = run.metadata("wavefunction");
    header.extend([
        ("n".into(), json!(qn.n)),
        ("l".into(), json!(qn.l)),
        ("s".into(), json!(qn.spin.as_i32())),
        ("samples".into(), json!(run.samples)),
        ("nu".into(), num(nu)),
        ("rho_max".into(), num(rho_max)),
        ("rho0".into(), opt_num(rho0)),
        ("norm".into(), num(sample.norm)),
        ("tail_mass".into(), opt_num(sample.tail_mass)),
        ("nodes".into(), json!(nodes)),
    ]);
    let rows = sample
        .rho_grid
        .iter()
        .zip(&sample.values)
        .map(|(&rho, &value)| vec![num(rho), num(value)])
        .collect();
    Ok(Report {
        header,
        columns: vec!["rho", "radial"],
        rows,
    })
}

pub fn cmd_regimes(run: &RunConfig) -> Report {
    let c = &run.physical;
    let r = regime_check(c);
    let mut header = run.metadata("regimes");
    header.push(("notes".into(), json!(r.notes)));
    Report {
        header,
        columns: vec![
            "mass",
            "omega0",
            "omega",
            "eta",
            "case1_ratio",
            "case1_ok",
            "case2_value",
            "case2_ok",
        ],
        rows: vec![vec![
            num(c.mass()),
            num(c.omega0()),
            num(c.omega()),
            num(c.eta()),
            opt_num(r.case1_ratio),
            json!(r.case1_ok),
            num(r.case2_value),
            json!(r.case2_ok),
        ]],
    }
}

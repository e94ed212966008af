//! Command-line front end. Every subcommand resolves a [`RunConfig`] (JSON
//! file, then explicit flags on top) and writes one long-format table.

mod table;

pub use table::{Cell, Table};

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::force::{
    force_profile, force_thermal, prefactor_c, prefactor_c_numeric, surface_charge, work_function_shift,
    EstimateInputs, SurfaceCharge,
};
use crate::grid::{Grid, Spacing};
use crate::kernels::ConductivityPart;
use crate::maps::{quantum_map, thermal_map, thermal_spectrum};
use crate::medium::{MaterialModel, ModelKind, DEFAULT_OMEGA_P_TAU};
use crate::optics::BranchRule;
use crate::quadrature::QuadratureSpec;
use crate::selftest::{run_selftest, SelftestOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    ForceProfile,
    SpectralMap,
    Prefactor,
    Estimates,
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    /// Rotated zero-point integrand times ζ³.
    Quantum,
    /// Thermal integrand at real frequency.
    #[default]
    Thermal,
    /// Thermal force spectrum over frequency and depth, times ζ².
    Spectrum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Fully resolved run parameters; serialised into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    /// force-profile sweeps every listed model; other commands use the first.
    pub models: Vec<ModelKind>,
    pub omega_p_tau: f64,
    pub theta: Vec<f64>,
    /// Temperatures for `prefactor` when `theta` was not given explicitly.
    pub theta_grid: Grid,
    pub zeta_grid: Grid,
    /// Depths of the (x, p) maps.
    pub zetas: Vec<f64>,
    pub x_grid: Grid,
    pub p_grid: Grid,
    pub map: MapKind,
    pub parts: Vec<ConductivityPart>,
    /// Also compute the zero-point force in `force-profile`.
    pub quantum: bool,
    pub quadrature: QuadratureSpec,
    pub material: Option<EstimateInputs>,
    pub kelvin: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            models: vec![ModelKind::Drude],
            omega_p_tau: DEFAULT_OMEGA_P_TAU,
            theta: vec![1.25],
            theta_grid: Grid::log(0.03, 30.0, 30),
            zeta_grid: Grid::log(0.2, 10.0, 40),
            zetas: vec![1.5],
            x_grid: Grid::log(1e-2, 1e3, 60),
            p_grid: Grid::log(1e-1, 1e4, 60),
            map: MapKind::Thermal,
            parts: vec![ConductivityPart::Full],
            quantum: false,
            quadrature: QuadratureSpec::default(),
            material: None,
            kelvin: None,
            format: Format::Csv,
            out: None,
            jobs: None,
            strict: false,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rectified-lorentz", version, about = "Thermal and zero-point Lorentz force density below a conductor surface")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Force density against depth, one row per (θ, ζ).
    ForceProfile(Flags),
    /// Integrand maps over (x, p) or the frequency spectrum over (x, ζ).
    SpectralMap(Flags),
    /// Short-distance amplitude c(T): closed form, quadrature and the force at ζ = 0.2.
    Prefactor(Flags),
    /// Work-function shift and screening charge for a metal.
    Estimates(Flags),
    /// Oracle suites; exit 0 iff all pass.
    Selftest(Flags),
    /// Run the command named in a config file.
    Run(Flags),
}

#[derive(Debug, Args, Default)]
struct Flags {
    #[arg(long)]
    config: Option<PathBuf>,
    /// drude, plasma or ideal; comma separated for several profiles.
    #[arg(long, value_delimiter = ',')]
    model: Option<Vec<ModelKind>>,
    #[arg(long)]
    omega_p_tau: Option<f64>,
    /// Reduced temperature(s) k_BTτ/ħ, comma separated.
    #[arg(long, value_delimiter = ',')]
    theta: Option<Vec<f64>>,
    #[arg(long)]
    zmin: Option<f64>,
    #[arg(long)]
    zmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Logarithmic depth spacing.
    #[arg(long)]
    log: bool,
    /// Map depth(s) ζ, comma separated.
    #[arg(long, value_delimiter = ',')]
    zeta: Option<Vec<f64>>,
    #[arg(long)]
    xmin: Option<f64>,
    #[arg(long)]
    xmax: Option<f64>,
    #[arg(long)]
    pmin: Option<f64>,
    #[arg(long)]
    pmax: Option<f64>,
    #[arg(long)]
    map: Option<MapKind>,
    /// full, real or imag; comma separated for several maps.
    #[arg(long, value_delimiter = ',')]
    part: Option<Vec<ConductivityPart>>,
    /// Add the zero-point force to force profiles.
    #[arg(long)]
    quantum: bool,
    #[arg(long)]
    rel_tol: Option<f64>,
    /// Material for estimates; only `gold` is built in.
    #[arg(long)]
    material: Option<String>,
    #[arg(long)]
    n0: Option<f64>,
    #[arg(long)]
    vf: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long)]
    omega_p: Option<f64>,
    /// Temperature in kelvin for estimates.
    #[arg(long)]
    kelvin: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Exit 1 when any point failed or did not converge.
    #[arg(long)]
    strict: bool,
    #[arg(long, hide = true)]
    flip_branch: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => CliError::Usage(m),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Reads the config file (if any) and lays explicit flags over it.
fn resolve(flags: &Flags, command: Option<CommandKind>) -> Result<RunConfig, CliError> {
    let mut cfg = match &flags.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str::<RunConfig>(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if command.is_some() {
        cfg.command = command;
    }
    if let Some(m) = &flags.model {
        cfg.models = m.clone();
    }
    if let Some(w) = flags.omega_p_tau {
        cfg.omega_p_tau = w;
    }
    if let Some(t) = &flags.theta {
        cfg.theta = t.clone();
        if cfg.command == Some(CommandKind::Prefactor) {
            cfg.theta_grid.count = 0;
        }
    }
    if let Some(v) = flags.zmin {
        cfg.zeta_grid.min = v;
    }
    if let Some(v) = flags.zmax {
        cfg.zeta_grid.max = v;
    }
    if let Some(v) = flags.points {
        cfg.zeta_grid.count = v;
    }
    if flags.log {
        cfg.zeta_grid.spacing = Spacing::Log;
    }
    if let Some(z) = &flags.zeta {
        cfg.zetas = z.clone();
    }
    if let Some(v) = flags.xmin {
        cfg.x_grid.min = v;
    }
    if let Some(v) = flags.xmax {
        cfg.x_grid.max = v;
    }
    if let Some(v) = flags.pmin {
        cfg.p_grid.min = v;
    }
    if let Some(v) = flags.pmax {
        cfg.p_grid.max = v;
    }
    if let Some(m) = flags.map {
        cfg.map = m;
    }
    if let Some(p) = &flags.part {
        cfg.parts = p.clone();
    }
    cfg.quantum |= flags.quantum;
    if let Some(r) = flags.rel_tol {
        cfg.quadrature.rel_tol = r;
    }
    if let Some(k) = flags.kelvin {
        cfg.kelvin = Some(k);
    }
    if let Some(name) = &flags.material {
        match name.as_str() {
            "gold" => cfg.material = Some(EstimateInputs::gold()),
            other => return Err(usage(format!("unknown material '{other}'; use gold or give --n0 --vf --mass --tau --omega-p"))),
        }
    }
    let custom = [flags.n0, flags.vf, flags.mass, flags.tau, flags.omega_p];
    if custom.iter().any(Option::is_some) {
        let base = cfg.material;
        let pick = |v: Option<f64>, f: fn(&EstimateInputs) -> f64, name: &str| {
            v.or(base.as_ref().map(f)).ok_or_else(|| usage(format!("missing material input --{name}")))
        };
        cfg.material = Some(EstimateInputs {
            n0: pick(flags.n0, |m| m.n0, "n0")?,
            v_f: pick(flags.vf, |m| m.v_f, "vf")?,
            mass: pick(flags.mass, |m| m.mass, "mass")?,
            tau: pick(flags.tau, |m| m.tau, "tau")?,
            omega_p: pick(flags.omega_p, |m| m.omega_p, "omega-p")?,
        });
    }
    if let Some(f) = flags.format {
        cfg.format = f;
    }
    if let Some(o) = &flags.out {
        cfg.out = Some(o.clone());
    }
    if let Some(j) = flags.jobs {
        cfg.jobs = Some(j);
    }
    cfg.strict |= flags.strict;
    cfg.quadrature.validate()?;
    if cfg.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    Ok(cfg)
}

/// Output of one command: the table and whether every row is trustworthy.
struct Outcome {
    table: Table,
    all_ok: bool,
}

fn model_of(cfg: &RunConfig) -> Result<MaterialModel, CliError> {
    let kind = *cfg.models.first().ok_or_else(|| usage("no model given"))?;
    Ok(MaterialModel::new(kind, cfg.omega_p_tau)?)
}

fn thetas(cfg: &RunConfig) -> Result<&[f64], CliError> {
    if cfg.theta.is_empty() {
        return Err(usage("no temperature given"));
    }
    Ok(&cfg.theta)
}

fn cmd_force_profile(cfg: &RunConfig) -> Result<Outcome, CliError> {
    model_of(cfg)?;
    let zetas = cfg.zeta_grid.points()?;
    let mut rows = Vec::new();
    for &kind in &cfg.models {
        let model = MaterialModel::new(kind, cfg.omega_p_tau)?;
        rows.extend(force_profile(&model, &zetas, thetas(cfg)?, cfg.quantum, &cfg.quadrature)?);
    }
    let mut columns = vec!["model", "theta", "zeta", "f_reduced", "f_norm", "err_estimate", "converged"];
    if cfg.quantum {
        columns.extend(["f_quantum", "f_total"]);
    }
    let mut table = Table::new(&columns);
    let mut all_ok = true;
    for r in rows {
        if let Some(e) = &r.error {
            eprintln!("theta={} zeta={}: {e}", r.theta, r.zeta);
        }
        all_ok &= r.converged;
        let mut row: Vec<Cell> = vec![
            r.model.to_string().into(),
            r.theta.into(),
            r.zeta.into(),
            r.f_thermal.into(),
            r.f_norm.into(),
            r.error_estimate.into(),
            r.converged.into(),
        ];
        if cfg.quantum {
            row.extend([r.f_quantum.into(), r.f_total.into()]);
        }
        table.push(row);
    }
    Ok(Outcome { table, all_ok })
}

fn part_name(part: ConductivityPart) -> &'static str {
    match part {
        ConductivityPart::Full => "full",
        ConductivityPart::RealOnly => "real",
        ConductivityPart::ImagOnly => "imag",
    }
}

fn cmd_spectral_map(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let model = model_of(cfg)?;
    let mut xs_grid = cfg.x_grid;
    xs_grid.spacing = Spacing::Log;
    let xs = xs_grid.points()?;
    let theta = thetas(cfg)?[0];
    if cfg.map == MapKind::Spectrum {
        let zetas = cfg.zeta_grid.points()?;
        let points = thermal_spectrum(&model, &xs, &zetas, theta, &cfg.quadrature)?;
        let mut table = Table::new(&[
            "map", "theta", "x", "zeta", "value", "err_estimate", "converged", "drude_x", "thermal_x",
        ]);
        let mut all_ok = true;
        for s in points {
            all_ok &= s.converged;
            table.push(vec![
                "spectrum".into(),
                theta.into(),
                s.x.into(),
                s.zeta.into(),
                s.value.into(),
                s.error_estimate.into(),
                s.converged.into(),
                1.0.into(),
                theta.into(),
            ]);
        }
        return Ok(Outcome { table, all_ok });
    }
    let mut ps_grid = cfg.p_grid;
    ps_grid.spacing = Spacing::Log;
    let ps = ps_grid.points()?;
    if cfg.zetas.is_empty() {
        return Err(usage("no map depth given"));
    }
    let mut table = Table::new(&[
        "map", "part", "zeta", "theta", "x", "p", "value", "light_cone_x", "diffusion_x", "depth_p", "drude_x",
        "thermal_x",
    ]);
    for &zeta in &cfg.zetas {
        let batches: Vec<(Option<ConductivityPart>, _)> = match cfg.map {
            MapKind::Quantum => vec![(None, quantum_map(&model, &xs, &ps, zeta)?)],
            _ => cfg
                .parts
                .iter()
                .map(|&part| Ok((Some(part), thermal_map(&model, part, &xs, &ps, zeta, theta)?)))
                .collect::<Result<_, CliError>>()?,
        };
        for (part, cells) in batches {
            let thermal = part.is_some();
            for c in cells {
                table.push(vec![
                    if thermal { "thermal" } else { "quantum" }.into(),
                    part.map_or(Cell::Empty, |p| part_name(p).into()),
                    zeta.into(),
                    if thermal { theta.into() } else { Cell::Empty },
                    c.x.into(),
                    c.p.into(),
                    c.value.into(),
                    c.guides.light_cone_x.into(),
                    c.guides.diffusion_x.into(),
                    c.guides.depth_p.into(),
                    1.0.into(),
                    if thermal { theta.into() } else { Cell::Empty },
                ]);
            }
        }
    }
    Ok(Outcome { table, all_ok: true })
}

fn cmd_prefactor(cfg: &RunConfig) -> Result<Outcome, CliError> {
    use rayon::prelude::*;
    let thetas: Vec<f64> = if cfg.theta_grid.count == 0 {
        thetas(cfg)?.to_vec()
    } else {
        cfg.theta_grid.points()?
    };
    let model = MaterialModel::drude(cfg.omega_p_tau)?;
    let rows: Vec<Result<Vec<Cell>, CliError>> = thetas
        .par_iter()
        .map(|&theta| {
            let closed = prefactor_c(theta, cfg.omega_p_tau)?;
            let (numeric, _) = prefactor_c_numeric(theta, cfg.omega_p_tau, &cfg.quadrature)?;
            let force = force_thermal(&model, 0.2, theta, &cfg.quadrature)?;
            Ok(vec![
                theta.into(),
                closed.normalized.into(),
                numeric.normalized.into(),
                force.f_norm.into(),
                force.converged.into(),
            ])
        })
        .collect();
    let mut table = Table::new(&["theta", "c_closed_norm", "c_numeric_norm", "f_norm_at_zeta0.2", "converged"]);
    let mut all_ok = true;
    for row in rows {
        let row = row?;
        all_ok &= row[4] == Cell::Bool(true);
        table.push(row);
    }
    Ok(Outcome { table, all_ok })
}

fn cmd_estimates(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let inputs = cfg
        .material
        .ok_or_else(|| usage("estimates need --material gold or --n0 --vf --mass --tau --omega-p"))?;
    inputs.validate()?;
    let theta = match cfg.kelvin {
        Some(k) => k * crate::units::K_B * inputs.tau / crate::units::HBAR,
        None => thetas(cfg)?[0],
    };
    let w = work_function_shift(&inputs, theta)?;
    let cutoff = inputs.debye_length() / inputs.lambda_p();
    let q = surface_charge(&inputs, theta, cutoff)?;
    let mut table = Table::new(&["quantity", "route", "value", "unit"]);
    let mut add = |quantity: &str, route: &str, value: f64, unit: &str| {
        table.push(vec![quantity.into(), route.into(), value.into(), unit.into()]);
    };
    add("temperature", "input", w.kelvin, "K");
    add("theta", "input", theta, "1");
    add("coupling_fraction", "factored", w.coupling_fraction, "1");
    add("momentum_fraction", "factored", w.momentum_fraction, "1");
    add("work_function_shift", "direct", w.direct_ev(), "eV");
    add("work_function_shift", "factored", w.factored_ev(), "eV");
    add("surface_charge", "direct", q.direct, "C/m^2");
    add("surface_charge", "factored", q.factored, "C/m^2");
    add("surface_charge", "direct", SurfaceCharge::per_square_micron(q.direct), "e/um^2");
    add("surface_charge", "factored", SurfaceCharge::per_square_micron(q.factored), "e/um^2");
    Ok(Outcome { table, all_ok: true })
}

fn cmd_selftest(cfg: &RunConfig, flip_branch: bool) -> Result<Outcome, CliError> {
    let mut opts = SelftestOptions::default();
    if flip_branch {
        opts.branch = BranchRule::Flipped;
    }
    opts.quadrature.rel_tol = opts.quadrature.rel_tol.min(cfg.quadrature.rel_tol);
    let checks = run_selftest(&opts);
    let mut table = Table::new(&["check", "passed", "worst", "tolerance"]);
    let mut all_ok = true;
    for c in checks {
        eprintln!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        all_ok &= c.passed;
        table.push(vec![c.name.into(), c.passed.into(), c.worst.into(), c.tolerance.into()]);
    }
    Ok(Outcome { table, all_ok })
}

fn write_output(cfg: &RunConfig, table: &Table) -> Result<(), CliError> {
    let mut sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    };
    match cfg.format {
        Format::Csv => table.write_csv(&mut sink)?,
        Format::Json => {
            let config = serde_json::to_value(cfg).map_err(|e| CliError::Failure(e.to_string()))?;
            serde_json::to_writer_pretty(&mut sink, &table.to_json(config))
                .map_err(|e| CliError::Failure(e.to_string()))?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}

fn execute(command: Command) -> Result<i32, CliError> {
    let (kind, flags) = match command {
        Command::ForceProfile(f) => (Some(CommandKind::ForceProfile), f),
        Command::SpectralMap(f) => (Some(CommandKind::SpectralMap), f),
        Command::Prefactor(f) => (Some(CommandKind::Prefactor), f),
        Command::Estimates(f) => (Some(CommandKind::Estimates), f),
        Command::Selftest(f) => (Some(CommandKind::Selftest), f),
        Command::Run(f) => {
            if f.config.is_none() {
                return Err(usage("run needs --config"));
            }
            (None, f)
        }
    };
    let cfg = resolve(&flags, kind)?;
    let command = cfg.command.ok_or_else(|| usage("config does not name a command"))?;
    let body = || match command {
        CommandKind::ForceProfile => cmd_force_profile(&cfg),
        CommandKind::SpectralMap => cmd_spectral_map(&cfg),
        CommandKind::Prefactor => cmd_prefactor(&cfg),
        CommandKind::Estimates => cmd_estimates(&cfg),
        CommandKind::Selftest => cmd_selftest(&cfg, flags.flip_branch),
    };
    let outcome = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Failure(e.to_string()))?
            .install(body)?,
        None => body()?,
    };
    write_output(&cfg, &outcome.table)?;
    let failed = !outcome.all_ok && (cfg.strict || command == CommandKind::Selftest);
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

/// Parses `args` (program name first) and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Failure(m)) => {
            eprintln!("error: {m}");
            EXIT_FAILURE
        }
    }
}

//! Command-line front end: configuration, dispatch and emission.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure.

pub mod config;
mod output;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{load_config, Format, OutputOptions, RunConfig, DEFAULT_PRECISION};
pub use output::{
    format_number, record_to_csv, record_to_json, sweep_to_csv, sweep_to_json, Field, Record,
};

use crate::analysis::{
    self, LogGrid, LossObjective, LossRateBounds, SweepResult, LOSS_RATE_GRID, NS_GRID,
};
use crate::capacity::capacity_report;
use crate::error::{Error, Result};
use crate::gaussian::{ctmg_covariance, ln_tmsv_closed_form, log_negativity, xi_minus_analytic};
use crate::params::{derive, required_pump_detunings, SystemParams};
use crate::scattering::{
    amplitude_ratio, coefficients, efficiency_closed_form, optimal_input_loss_rates,
    solve_qle_oracle, CHANNELS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

/// Electro-optomechanical conversion and surviving entanglement.
///
/// All rates and frequencies are ordinary frequencies in Hz (a rate quoted as
/// γ/2π = 1 MHz is written 1e6).
#[derive(Debug, Parser)]
#[command(name = "eomech", version)]
pub struct Cli {
    /// JSON configuration file; missing keys take the reference-device values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Sideband frequency offset ω, Hz.
    #[arg(
        long = "omega-hz",
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    pub omega_hz: f64,
    /// Mean photon number per mode of the input two-mode squeezed vacuum.
    #[arg(long, global = true)]
    pub ns: Option<f64>,
    /// Lower end of the log grid (photon number or Hz).
    #[arg(long, global = true)]
    pub min: Option<f64>,
    /// Upper end of the log grid.
    #[arg(long, global = true)]
    pub max: Option<f64>,
    /// Number of grid points per axis.
    #[arg(long, global = true)]
    pub points: Option<usize>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Use h instead of ħ in the thermal-occupancy exponent.
    #[arg(long, global = true)]
    pub occupancy_extra_two_pi: bool,
    /// Divide γ_m by 2π once more.
    #[arg(long, global = true)]
    pub gamma_m_extra_division: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parameters, derived couplings, occupancies and pump detunings.
    Info,
    /// Scattering coefficients c1..c5 at --omega-hz, checked against the Langevin solve.
    Coeffs,
    /// Conversion efficiency R(0), R(ω) and the photon-number ratio at --ns.
    Efficiency,
    /// Log-negativity of the converted state at --ns and --omega-hz, plus the
    /// photon number maximizing the surviving fraction (at zero frequency).
    Ln,
    /// Entanglement-surviving capacity and its coefficients.
    Capacity,
    /// LN of input and converted states over a photon-number grid (CSV).
    SweepNs,
    /// R(0) and LN over a square grid of input loss rates (CSV).
    SweepLoss,
    /// Loss rates maximizing R(0), closed form and numerical.
    OptimizeEfficiency,
    /// Loss rates maximizing the converted state's LN at --ns.
    OptimizeLn,
}

impl Command {
    fn is_sweep(self) -> bool {
        matches!(self, Command::SweepNs | Command::SweepLoss)
    }
}

/// Per-invocation settings that are not part of the configuration file.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Invocation {
    pub omega_hz: f64,
    pub ns: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<usize>,
}

impl Invocation {
    fn grid(&self, default: LogGrid) -> Result<LogGrid> {
        LogGrid::new(
            self.min.unwrap_or(default.min),
            self.max.unwrap_or(default.max),
            self.points.unwrap_or(default.points),
        )
    }

    fn ns_or(&self, default: f64) -> f64 {
        self.ns.unwrap_or(default)
    }
}

/// What a command produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Record(Record),
    Table(SweepResult),
}

impl Artifact {
    pub fn render(&self, format: Format, digits: usize) -> String {
        match (self, format) {
            (Artifact::Record(r), Format::Json) => record_to_json(r, digits),
            (Artifact::Record(r), Format::Csv) => record_to_csv(r, digits),
            (Artifact::Table(t), Format::Json) => sweep_to_json(t, digits),
            (Artifact::Table(t), Format::Csv) => sweep_to_csv(t, digits),
        }
    }
}

fn conventions_record(params: &SystemParams) -> Record {
    Record::new()
        .flag(
            "occupancy_extra_two_pi",
            params.conventions.occupancy_extra_two_pi,
        )
        .flag(
            "gamma_m_extra_division",
            params.conventions.gamma_m_extra_division,
        )
}

fn info(params: &SystemParams) -> Result<Record> {
    let dp = derive(params)?;
    let (det_o, det_e) = required_pump_detunings(params)?;
    let p = params;
    let raw = Record::new()
        .num("g_o_hz", p.g_o_hz)
        .num("g_e_hz", p.g_e_hz)
        .num("gamma_o_hz", p.gamma_o_hz)
        .num("gamma_e_hz", p.gamma_e_hz)
        .num("gamma_o_int_hz", p.gamma_o_int_hz)
        .num("gamma_e_int_hz", p.gamma_e_int_hz)
        .num("gamma_m_hz", p.gamma_m_hz)
        .num("omega_o_hz", p.omega_o_hz)
        .num("omega_e_hz", p.omega_e_hz)
        .num("omega_m_hz", p.omega_m_hz)
        .num("temperature_k", p.temperature_k)
        .num("n_pump_o", p.n_pump_o)
        .num("n_pump_e", p.n_pump_e);
    let derived = Record::new()
        .num("big_g_o_hz", dp.big_g_o)
        .num("big_g_e_hz", dp.big_g_e)
        .num("total_decay_o_hz", dp.total_decay_o)
        .num("total_decay_e_hz", dp.total_decay_e)
        .num("gamma_m_effective_hz", dp.gamma_m)
        .num("n_th_o", dp.n_th_o)
        .num("n_th_e", dp.n_th_e)
        .num("n_th_m", dp.n_th_m)
        .num("z_hz3", dp.z)
        .num("drive_detuning_o_hz", det_o)
        .num("drive_detuning_e_hz", det_e);
    Ok(Record::new()
        .nested("params", raw)
        .nested("conventions", conventions_record(params))
        .nested("derived", derived)
        .texts("warnings", params.warnings()))
}

fn coeffs(params: &SystemParams, omega_hz: f64) -> Result<Record> {
    let dp = derive(params)?;
    let sol = coefficients(&dp, omega_hz)?;
    let oracle = solve_qle_oracle(&dp, omega_hz)?;
    let mut rec = Record::new().num("omega_hz", omega_hz);
    let mut deviation: f64 = 0.0;
    for (k, (c, o)) in sol
        .coefficients
        .iter()
        .zip(&oracle.coefficients)
        .enumerate()
    {
        rec = rec.nested(
            &format!("c{}", k + 1),
            Record::new()
                .text("channel", CHANNELS[k])
                .num("re", c.re)
                .num("im", c.im)
                .num("abs2", c.norm_sqr()),
        );
        if c.norm() > 0.0 {
            deviation = deviation.max((c - o).norm() / c.norm());
        }
    }
    Ok(rec
        .num("total_weight", sol.total_weight())
        .num("efficiency", sol.efficiency)
        .num("oracle_max_rel_deviation", deviation))
}

fn efficiency(params: &SystemParams, inv: &Invocation) -> Result<Record> {
    let dp = derive(params)?;
    let n_s = inv.ns_or(1.0);
    Ok(Record::new()
        .num("r0", efficiency_closed_form(&dp))
        .num("omega_hz", inv.omega_hz)
        .num("r_omega", coefficients(&dp, inv.omega_hz)?.efficiency)
        .num("ns", n_s)
        .num("amplitude_ratio", amplitude_ratio(&dp, n_s, inv.omega_hz)?)
        .nested("conventions", conventions_record(params)))
}

fn ln(params: &SystemParams, inv: &Invocation) -> Result<Record> {
    let dp = derive(params)?;
    let n_s = inv.ns_or(1.0);
    let report = log_negativity(&ctmg_covariance(&dp, n_s, inv.omega_hz)?)?;
    let ln_tmsv = ln_tmsv_closed_form(n_s)?;
    let mut rec = Record::new()
        .num("ns", n_s)
        .num("omega_hz", inv.omega_hz)
        .num("xi_minus", report.xi_minus)
        .num("xi_plus", report.xi_plus)
        .num("ln_ctmg", report.ln_value)
        .num("ln_tmsv", ln_tmsv)
        .num(
            "ratio",
            if ln_tmsv > 0.0 {
                report.ln_value / ln_tmsv
            } else {
                0.0
            },
        );
    if inv.omega_hz == 0.0 {
        rec = rec.num("xi_minus_analytic", xi_minus_analytic(&dp, n_s)?);
        let peak = analysis::maximize_surviving_ratio(&dp, (NS_GRID.min, NS_GRID.max))?;
        rec = rec.nested(
            "ratio_max",
            Record::new()
                .num("ns", peak.point[0])
                .num("ratio", peak.value)
                .flag("converged", peak.converged)
                .flag("at_boundary", peak.at_boundary),
        );
    }
    Ok(rec.nested("conventions", conventions_record(params)))
}

fn capacity(params: &SystemParams) -> Result<Record> {
    let dp = derive(params)?;
    let report = capacity_report(&dp)?;
    let k = report.k;
    Ok(Record::new()
        .num("k1", k.k1)
        .num("k2", k.k2)
        .num("k3", k.k3)
        .num("k4", k.k4)
        .num("k5", k.k5)
        .num("p", report.p)
        .num("p_noiseless", report.p_noiseless)
        .num("r0", efficiency_closed_form(&dp))
        .nested("conventions", conventions_record(params)))
}

fn sweep_loss(params: &SystemParams, inv: &Invocation) -> Result<SweepResult> {
    let axis = inv.grid(LOSS_RATE_GRID)?.values()?;
    let n_s = inv.ns_or(1.0);
    let eff = analysis::sweep_loss_rates(params, &axis, &axis, LossObjective::Efficiency)?;
    let objective = LossObjective::LogNegativity {
        n_s,
        omega_hz: inv.omega_hz,
    };
    let lns = analysis::sweep_loss_rates(params, &axis, &axis, objective)?;
    let rows = eff
        .rows
        .iter()
        .zip(&lns.rows)
        .map(|(a, b)| vec![a[0], a[1], a[2], b[2]])
        .collect();
    let mut metadata = lns.metadata;
    metadata.description = "r0 and ln over input loss rates".into();
    Ok(SweepResult {
        columns: ["gamma_o_hz", "gamma_e_hz", "r0", "ln"]
            .map(String::from)
            .to_vec(),
        rows,
        metadata,
    })
}

fn bounds(inv: &Invocation) -> LossRateBounds {
    LossRateBounds::square(
        inv.min.unwrap_or(LOSS_RATE_GRID.min),
        inv.max.unwrap_or(LOSS_RATE_GRID.max),
    )
}

fn optimum_record(report: &analysis::OptimumReport) -> Record {
    Record::new()
        .num("gamma_o_hz", report.point[0])
        .num("gamma_e_hz", report.point[1])
        .num("value", report.value)
        .int("iterations", report.iterations as i64)
        .flag("converged", report.converged)
        .flag("at_boundary", report.at_boundary)
}

fn optimize_efficiency(params: &SystemParams, inv: &Invocation) -> Result<Record> {
    let (go, ge) = optimal_input_loss_rates(params)?;
    let r_closed = efficiency_closed_form(&derive(&params.with_input_loss_rates(go, ge))?);
    let numeric = analysis::maximize_efficiency_numeric(params, bounds(inv))?;
    Ok(Record::new()
        .nested(
            "closed_form",
            Record::new()
                .num("gamma_o_hz", go)
                .num("gamma_e_hz", ge)
                .num("r0", r_closed)
                .num("rate_ratio", go / ge),
        )
        .nested("numeric", optimum_record(&numeric))
        .nested("conventions", conventions_record(params)))
}

fn optimize_ln(params: &SystemParams, inv: &Invocation) -> Result<Record> {
    let n_s = inv.ns_or(1.0);
    let report = analysis::maximize_ln_over_loss_rates(params, n_s, bounds(inv))?;
    Ok(optimum_record(&report)
        .num("ns", n_s)
        .num("r0_at_argmax", report.auxiliary.unwrap_or(f64::NAN))
        .nested("conventions", conventions_record(params)))
}

/// Runs one command against a configuration.
pub fn dispatch(command: Command, config: &RunConfig, inv: &Invocation) -> Result<Artifact> {
    let params = &config.params;
    params.validate()?;
    if !inv.omega_hz.is_finite() {
        return Err(Error::validation("omega-hz", "must be finite"));
    }
    Ok(match command {
        Command::Info => Artifact::Record(info(params)?),
        Command::Coeffs => Artifact::Record(coeffs(params, inv.omega_hz)?),
        Command::Efficiency => Artifact::Record(efficiency(params, inv)?),
        Command::Ln => Artifact::Record(ln(params, inv)?),
        Command::Capacity => Artifact::Record(capacity(params)?),
        Command::SweepNs => {
            let dp = derive(params)?;
            let grid = inv.grid(NS_GRID)?.values()?;
            Artifact::Table(analysis::sweep_ln_vs_ns(&dp, &grid, inv.omega_hz)?)
        }
        Command::SweepLoss => Artifact::Table(sweep_loss(params, inv)?),
        Command::OptimizeEfficiency => Artifact::Record(optimize_efficiency(params, inv)?),
        Command::OptimizeLn => Artifact::Record(optimize_ln(params, inv)?),
    })
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_validation() {
        EXIT_VALIDATION
    } else {
        EXIT_NUMERICAL
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let mut config = match &cli.config {
        Some(path) => load_config(path)?,
        None => RunConfig::default(),
    };
    if cli.occupancy_extra_two_pi {
        config.params.conventions.occupancy_extra_two_pi = true;
    }
    if cli.gamma_m_extra_division {
        config.params.conventions.gamma_m_extra_division = true;
    }
    if let Some(f) = cli.format {
        config.output.format = Some(f);
    }
    if let Some(p) = &cli.out {
        config.output.path = Some(p.clone());
    }
    for w in config.params.warnings() {
        log::warn!("{w}");
    }
    let inv = Invocation {
        omega_hz: cli.omega_hz,
        ns: cli.ns,
        min: cli.min,
        max: cli.max,
        points: cli.points,
    };
    let artifact = dispatch(cli.command, &config, &inv)?;
    let format = config.output.format.unwrap_or(if cli.command.is_sweep() {
        Format::Csv
    } else {
        Format::Json
    });
    let text = artifact.render(format, config.output.precision);
    match &config.output.path {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

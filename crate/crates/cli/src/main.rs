use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sensmgmt::{gospa2, ospa, uospa, Metric, MetricParams, PointSet};
use sensmgmt_cli::format::fmt_num;
use sensmgmt_cli::scenario::Scenario;
use sensmgmt_cli::sweep::{self, Grid, Model};
use sensmgmt_cli::verify::{default_suite, scenario_suite, VerifyConfig};
use sensmgmt_cli::CliError;

#[derive(Parser, Debug)]
#[command(name = "sensmgmt", version, about = "Set metrics and metric-driven sensor management")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// OSPA, UOSPA and GOSPA between the `x` and `y` sets of an input file.
    Metric {
        input: PathBuf,
        /// Cutoff (overrides `param c`, default 10).
        #[arg(long)]
        c: Option<f64>,
        /// Order (overrides `param p`, default 2).
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form GOSPA costs of observing and not observing one target.
    CostCurve {
        #[command(flatten)]
        model: ModelArgs,
        /// Sensing costs: list `0,10,20` or range `min:max:step`.
        #[arg(long, default_value = "0,10,20")]
        s: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Optimal single-target GOSPA action over existence and sensing cost.
    Region1 {
        #[command(flatten)]
        model: ModelArgs,
        /// Sensing-cost grid: range `min:max:step` or list.
        #[arg(long, default_value = "0:25:0.25")]
        s: String,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Optimal joint action for two targets over (r1, r2).
    Region2 {
        #[command(flatten)]
        model: TwoTargetArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Optimal joint action along r1 with r2 fixed.
    Slice {
        #[command(flatten)]
        model: TwoTargetArgs,
        #[arg(long, default_value_t = 0.6)]
        r2: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Run the self-check suite, or check the belief in a scenario file.
    Verify {
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Monte-Carlo acceptance band in standard errors.
        #[arg(long, default_value_t = 4.0)]
        mc_sigmas: f64,
        /// Absolute tolerance for closed-form versus enumeration checks.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, default_value_t = 10.0)]
    c: f64,
    /// Detection probability.
    #[arg(long, default_value_t = 0.7)]
    pd: f64,
}

#[derive(Args, Debug)]
struct TwoTargetArgs {
    #[arg(long, default_value_t = 10.0)]
    c: f64,
    #[arg(long, default_value_t = 0.6)]
    pd: f64,
    #[arg(long, default_value_t = 10.0)]
    s: f64,
    #[arg(long, value_enum, default_value_t = MetricChoice::All)]
    metric: MetricChoice,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// Step of the existence-probability grid over [0, 1].
    #[arg(long, default_value_t = 0.01)]
    grid_step: f64,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl GridArgs {
    fn unit_grid(&self) -> Result<Grid, CliError> {
        Grid::range(0.0, 1.0, self.grid_step)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricChoice {
    Gospa,
    Ospa,
    Uospa,
    All,
}

impl MetricChoice {
    fn metrics(self) -> Vec<Metric> {
        match self {
            MetricChoice::Gospa => vec![Metric::Gospa],
            MetricChoice::Ospa => vec![Metric::Ospa],
            MetricChoice::Uospa => vec![Metric::Uospa],
            MetricChoice::All => Metric::ALL.to_vec(),
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn read_scenario(path: &PathBuf) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Scenario::parse(&text)
}

fn cmd_metric(input: &PathBuf, c: Option<f64>, p: Option<f64>) -> Result<String, CliError> {
    let scenario = read_scenario(input)?;
    let params = MetricParams::new(
        c.or(scenario.cutoff).unwrap_or(10.0),
        p.or(scenario.order).unwrap_or(2.0),
    )?;
    let x = PointSet::new(scenario.x)?;
    let y = PointSet::new(scenario.y)?;
    let g = gospa2(&x, &y, &params)?;
    let lines = [
        ("ospa", ospa(&x, &y, &params)?),
        ("uospa", uospa(&x, &y, &params)?),
        ("gospa", g.total),
        ("gospa_localisation", g.localisation_cost),
        ("gospa_missed", g.missed_cost),
        ("gospa_false", g.false_cost),
    ];
    Ok(lines.iter().map(|(k, v)| format!("{k} {}\n", fmt_num(*v))).collect())
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Metric { input, c, p, out } => {
            emit(&cmd_metric(&input, c, p)?, out.as_ref())?;
        }
        Command::CostCurve { model, s, grid } => {
            let csv = sweep::cost_curve(&Model::new(model.c, model.pd)?, &Grid::parse(&s)?, &grid.unit_grid()?)?;
            emit(&csv, grid.out.as_ref())?;
        }
        Command::Region1 { model, s, grid } => {
            let csv = sweep::region1(&Model::new(model.c, model.pd)?, &grid.unit_grid()?, &Grid::parse(&s)?)?;
            emit(&csv, grid.out.as_ref())?;
        }
        Command::Region2 { model, grid } => {
            let r = grid.unit_grid()?;
            let csv = sweep::region2(&Model::new(model.c, model.pd)?, model.s, &r, &r, &model.metric.metrics())?;
            emit(&csv, grid.out.as_ref())?;
        }
        Command::Slice { model, r2, grid } => {
            let csv = sweep::slice(&Model::new(model.c, model.pd)?, model.s, r2, &grid.unit_grid()?, &model.metric.metrics())?;
            emit(&csv, grid.out.as_ref())?;
        }
        Command::Verify {
            scenario,
            trials,
            seed,
            mc_sigmas,
            tolerance,
            out,
        } => {
            if trials == 0 {
                return Err(CliError::Invalid("--trials must be at least 1".into()));
            }
            let cfg = VerifyConfig {
                trials,
                seed,
                mc_sigmas,
                tolerance,
            };
            let report = match scenario {
                Some(path) => scenario_suite(&read_scenario(&path)?, &cfg)?,
                None => default_suite(&cfg)?,
            };
            emit(&report.render(), out.as_ref())?;
            if !report.all_passed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

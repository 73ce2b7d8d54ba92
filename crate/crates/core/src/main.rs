use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ottofridge::config::{Format, LoadError, RunConfig};
use ottofridge::{report, sweep, Error};

#[derive(Parser)]
#[command(
    name = "ottofridge",
    version,
    about = "Finite-time quantum Otto refrigerator simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every operating mode at the configured driving time.
    Evaluate(Common),
    /// Tabulate the cycle over a range of driving times.
    Sweep(Common),
    /// Inverse COP against inverse cooling power over the sweep range.
    Pareto(Common),
    /// Report the cooling condition, trap inversion and integration health.
    Validate(Common),
    /// Cross-check library values against the truncated Fock-space oracle.
    OracleCheck(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output file; overrides the configuration, standard output if neither is set.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads for sweeps. `OTTOFRIDGE_WORKERS` takes precedence.
    #[arg(long)]
    workers: Option<usize>,
    /// Reserved; no computation is stochastic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

const EXIT_ORACLE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_UNCONVERGED: u8 = 4;

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter { .. } | Error::Domain { .. } => EXIT_CONFIG,
            Error::NumericalAccuracy { .. } | Error::Stiffness { .. } | Error::Truncation { .. } => EXIT_UNCONVERGED,
            _ => EXIT_ORACLE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<ottofridge::config::ConfigError> for Failure {
    fn from(e: ottofridge::config::ConfigError) -> Self {
        Failure::new(EXIT_CONFIG, format!("invalid configuration: {e}"))
    }
}

struct Context {
    config: RunConfig,
    out: Option<PathBuf>,
    format: Option<Format>,
    /// Set only when the format was requested on the command line.
    explicit_format: Option<Format>,
    workers: usize,
}

impl Context {
    fn new(args: Common) -> Result<Self, Failure> {
        let _ = args.seed;
        let config = RunConfig::load(&args.config).map_err(|e| match e {
            LoadError::Io(_) => Failure::new(EXIT_IO, e.to_string()),
            LoadError::Config(_) => Failure::new(EXIT_CONFIG, e.to_string()),
        })?;
        let workers = match std::env::var("OTTOFRIDGE_WORKERS") {
            Ok(v) => v.trim().parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| {
                Failure::new(
                    EXIT_CONFIG,
                    format!("OTTOFRIDGE_WORKERS must be a positive integer, got {v:?}"),
                )
            })?,
            Err(_) => args
                .workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
        };
        if workers == 0 {
            return Err(Failure::new(EXIT_CONFIG, "--workers must be at least 1"));
        }
        let explicit_format = args.format.map(|f| match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        });
        let format = explicit_format.or(config.output.format);
        let out = args.out.or_else(|| config.output.path.clone());
        Ok(Self {
            config,
            out,
            format,
            explicit_format,
            workers,
        })
    }

    fn emit(&self, bytes: Vec<u8>) -> Result<(), Failure> {
        match &self.out {
            Some(path) => {
                std::fs::write(path, bytes).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(&bytes)
                    .and_then(|_| stdout.flush())
                    .map_err(|e| Failure::new(EXIT_IO, format!("standard output: {e}")))
            }
        }
    }

    /// Single-point reports are JSON; a configured table format does not
    /// apply to them, but an explicit `--format csv` is an error.
    fn json_only(&self, command: &str) -> Result<(), Failure> {
        if self.explicit_format == Some(Format::Csv) {
            return Err(Failure::new(EXIT_CONFIG, format!("{command} only writes JSON")));
        }
        Ok(())
    }
}

fn json<T: serde::Serialize>(value: &T) -> Vec<u8> {
    let mut buf = serde_json::to_vec_pretty(value).expect("reports serialize");
    buf.push(b'\n');
    buf
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Evaluate(args) => {
            let ctx = Context::new(args)?;
            ctx.json_only("evaluate")?;
            let config = ctx.config.cycle_config(ctx.config.tau()?)?;
            let r = report::evaluate(&config, &ctx.config.numerics.numerics())?;
            ctx.emit(json(&r))?;
            Ok(0)
        }
        Command::Validate(args) => {
            let ctx = Context::new(args)?;
            ctx.json_only("validate")?;
            let config = ctx.config.cycle_config(ctx.config.tau()?)?;
            let r = report::validate(&config, &ctx.config.numerics.numerics())?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            ctx.emit(json(&r))?;
            Ok(0)
        }
        Command::Sweep(args) => {
            let ctx = Context::new(args)?;
            let rows = sweep_rows(&ctx)?;
            let mut buf = Vec::new();
            match ctx.format.unwrap_or(Format::Csv) {
                Format::Csv => sweep::write_sweep_csv(&mut buf, &rows),
                Format::Json => sweep::write_json(&mut buf, &rows),
            }
            .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
            ctx.emit(buf)?;
            Ok(0)
        }
        Command::Pareto(args) => {
            let ctx = Context::new(args)?;
            let rows = sweep_rows(&ctx)?;
            let base = ctx.config.cycle_config(ctx.config.sweep.tau_min)?;
            let pareto = rows.iter().map(|r| r.pareto(&base)).collect::<Result<Vec<_>, _>>()?;
            let mut buf = Vec::new();
            match ctx.format.unwrap_or(Format::Csv) {
                Format::Csv => sweep::write_pareto_csv(&mut buf, &pareto),
                Format::Json => sweep::write_json(&mut buf, &pareto),
            }
            .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
            ctx.emit(buf)?;
            Ok(0)
        }
        Command::OracleCheck(args) => {
            let ctx = Context::new(args)?;
            let config = ctx.config.raw_cycle(ctx.config.cycle.tau.unwrap_or(1.0));
            let numerics = ctx.config.numerics;
            let r = report::oracle_check(&config, &numerics.numerics(), numerics.fock_dim)?;
            let mut buf = Vec::new();
            match ctx.format.unwrap_or(Format::Json) {
                Format::Csv => {
                    report::write_oracle_csv(&mut buf, &r).map_err(|e| Failure::new(EXIT_IO, e.to_string()))?
                }
                Format::Json => buf = json(&r),
            }
            ctx.emit(buf)?;
            for c in r.checks.iter().filter(|c| c.status != report::CheckStatus::Pass) {
                eprintln!(
                    "{}: {:?} (|delta| = {:e}, tolerance {:e})",
                    c.quantity, c.status, c.delta, c.tolerance
                );
            }
            Ok(if r.any_fail() {
                EXIT_ORACLE
            } else if r.any_unconverged() {
                EXIT_UNCONVERGED
            } else {
                0
            })
        }
    }
}

fn sweep_rows(ctx: &Context) -> Result<Vec<sweep::SweepRow>, Failure> {
    let base = ctx.config.cycle_config(ctx.config.sweep.tau_min)?;
    let taus = ctx.config.sweep.grid();
    Ok(sweep::run_sweep(
        &base,
        &taus,
        &ctx.config.numerics.numerics(),
        ctx.workers,
    )?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

//! `esd-sim`: evaluate, scan and reproduce concurrence datasets from the
//! command line.

mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use esd_core::channels::KrausChannel;
use esd_core::esd::DEFAULT_PC_TOL;
use esd_core::{
    apply_local, caption_check, concurrence_eig, concurrence_x, evolve_werner_analytic, extract_x,
    figure_dataset, pc_analytic, pc_numeric, scan_surface, werner_like, ChannelKind, Error,
    FigureSpec, GridSpec, ScanConfig, WernerLikeParams,
};

use report::{Evaluation, PcReport};

const THREADS_VAR: &str = "ESD_SIM_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "esd-sim",
    version,
    about = "Two-qubit entanglement sudden death simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evolve a Werner-like state through a local channel and report its X elements.
    Evolve {
        #[arg(long, value_enum)]
        channel: Channel,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        json: bool,
    },
    /// Concurrence by both the eigenvalue route and the X-state closed form.
    Concurrence {
        #[arg(long, value_enum, requires = "p")]
        channel: Option<Channel>,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, requires = "channel")]
        p: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Critical probability at which the concurrence first vanishes.
    Pc {
        #[arg(long, value_enum)]
        channel: Channel,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum, default_value_t = Method::Bisect)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_PC_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Concurrence over a theta × p grid for one or more r.
    Scan {
        #[arg(long, value_enum)]
        channel: Channel,
        /// Comma-separated list of mixing parameters.
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta_start: f64,
        #[arg(long, default_value_t = std::f64::consts::PI, allow_negative_numbers = true)]
        theta_stop: f64,
        #[arg(long, default_value_t = 101)]
        theta_steps: usize,
        #[arg(long, default_value_t = 0.0)]
        p_start: f64,
        #[arg(long, default_value_t = 1.0)]
        p_stop: f64,
        #[arg(long, default_value_t = 101)]
        p_steps: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Regenerate the dataset behind one of the six reference figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        number: u8,
        /// Also verify the figure's qualitative claim; fails if it does not hold.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct StateArgs {
    #[arg(long)]
    r: f64,
    /// State angle in radians.
    #[arg(
        long,
        allow_negative_numbers = true,
        required_unless_present = "theta_deg",
        conflicts_with = "theta_deg"
    )]
    theta: Option<f64>,
    /// State angle in degrees; converted to radians.
    #[arg(long, allow_negative_numbers = true)]
    theta_deg: Option<f64>,
}

impl StateArgs {
    fn theta(&self) -> f64 {
        match (self.theta, self.theta_deg) {
            (Some(rad), _) => rad,
            (None, Some(deg)) => deg.to_radians(),
            (None, None) => unreachable!("clap requires one of --theta, --theta-deg"),
        }
    }

    fn params(&self) -> esd_core::Result<WernerLikeParams> {
        WernerLikeParams::new(self.r, self.theta())
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Emit a JSON array instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Channel {
    Ad,
    Pd,
    D,
}

impl From<Channel> for ChannelKind {
    fn from(c: Channel) -> Self {
        match c {
            Channel::Ad => ChannelKind::AmplitudeDamping,
            Channel::Pd => ChannelKind::PhaseDamping,
            Channel::D => ChannelKind::Depolarizing,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Analytic,
    Bisect,
}

/// Failures that are the caller's fault rather than the numerics'.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// A figure dataset that contradicts its expected shape.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.is::<CheckFailed>() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_numerical() => 2,
        _ => 1,
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| UsageError(format!("{THREADS_VAR}={raw:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the worker pool")
}

/// Rewrites library domain and configuration errors so the message names
/// the command-line flag responsible.
fn flag_error(err: Error) -> anyhow::Error {
    let flag = |field: &str| match field {
        "theta_range" => "--theta-start/--theta-stop".to_string(),
        "figure" => "NUMBER".to_string(),
        other => format!("--{}", other.replace('_', "-")),
    };
    match &err {
        Error::Domain { name, .. } => UsageError(format!("invalid {}: {err}", flag(name))).into(),
        Error::Config { field, reason } => {
            UsageError(format!("invalid {}: {reason}", flag(field))).into()
        }
        _ => err.into(),
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Evolve {
            channel,
            state,
            p,
            json,
        } => {
            let params = state.params().map_err(flag_error)?;
            let kind = ChannelKind::from(channel);
            let xe = evolve_werner_analytic(kind, &params, p).map_err(flag_error)?;
            let eval = Evaluation {
                channel: Some(kind),
                r: params.r(),
                theta: params.theta(),
                p: Some(p),
                x_elements: xe,
                concurrence: concurrence_x(&xe).value(),
                concurrence_eig: None,
            };
            print_stdout(&eval.render(json))
        }
        Command::Concurrence {
            channel,
            state,
            p,
            json,
        } => {
            let params = state.params().map_err(flag_error)?;
            let initial = werner_like(&params);
            let (kind, rho, xe) = match (channel, p) {
                (Some(channel), Some(p)) => {
                    let kind = ChannelKind::from(channel);
                    let ch = KrausChannel::new(kind, p).map_err(flag_error)?;
                    let rho = apply_local(&ch, &ch, &initial);
                    (Some(kind), rho, evolve_werner_analytic(kind, &params, p)?)
                }
                _ => {
                    let xe = extract_x(&initial, esd_core::states::X_POSITIVITY_TOL)?;
                    (None, initial, xe)
                }
            };
            let eval = Evaluation {
                channel: kind,
                r: params.r(),
                theta: params.theta(),
                p,
                x_elements: xe,
                concurrence: concurrence_x(&xe).value(),
                concurrence_eig: Some(concurrence_eig(&rho)?.value()),
            };
            print_stdout(&eval.render(json))
        }
        Command::Pc {
            channel,
            state,
            method,
            tol,
            json,
        } => {
            let kind = ChannelKind::from(channel);
            if method == Method::Analytic && kind == ChannelKind::Depolarizing {
                bail!(UsageError(
                    "--method analytic is not available for --channel d; use --method bisect"
                        .into()
                ));
            }
            let params = state.params().map_err(flag_error)?;
            let result = match method {
                Method::Analytic => pc_analytic(kind, &params),
                Method::Bisect => pc_numeric(kind, &params, tol),
            }
            .map_err(flag_error)?;
            let report = PcReport {
                channel: kind,
                r: params.r(),
                theta: params.theta(),
                method: match method {
                    Method::Analytic => "analytic",
                    Method::Bisect => "bisect",
                },
                result,
            };
            print_stdout(&report.render(json))
        }
        Command::Scan {
            channel,
            r,
            theta_start,
            theta_stop,
            theta_steps,
            p_start,
            p_stop,
            p_steps,
            out,
        } => {
            let cfg = ScanConfig {
                kind: channel.into(),
                r_values: r,
                theta: GridSpec::new(theta_start, theta_stop, theta_steps),
                p: GridSpec::new(p_start, p_stop, p_steps),
            };
            let rows = scan_surface(&cfg).map_err(flag_error)?;
            emit_rows(&rows, &out)
        }
        Command::Figure { number, check, out } => {
            let spec = FigureSpec::new(number).map_err(flag_error)?;
            let dataset = figure_dataset(spec)?;
            emit_rows(&dataset.rows, &out)?;
            if check {
                let verdict = caption_check(&dataset);
                for violation in &verdict.violations {
                    eprintln!("  {violation}");
                }
                let line = format!(
                    "figure {}: {} ({})",
                    verdict.figure,
                    if verdict.holds { "PASS" } else { "FAIL" },
                    verdict.claim
                );
                if !verdict.holds {
                    return Err(CheckFailed(line).into());
                }
                eprintln!("{line}");
            }
            Ok(())
        }
    }
}

fn emit_rows(rows: &[esd_core::ScanRow], out: &OutputArgs) -> anyhow::Result<()> {
    match &out.output {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("cannot create --output {}", path.display()))?;
            write_rows(rows, out.json, BufWriter::new(file))
                .with_context(|| format!("writing {}", path.display()))
        }
        None => write_rows(rows, out.json, io::stdout().lock()).context("writing to stdout"),
    }
}

fn write_rows<W: Write>(rows: &[esd_core::ScanRow], json: bool, mut w: W) -> io::Result<()> {
    if json {
        serde_json::to_writer_pretty(&mut w, &report::rows_json(rows))?;
        writeln!(w)?;
        w.flush()
    } else {
        esd_core::scan::write_csv(rows, w)
    }
}

fn print_stdout(text: &str) -> anyhow::Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    stdout.flush()?;
    Ok(())
}

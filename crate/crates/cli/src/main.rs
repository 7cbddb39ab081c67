use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use intercept_cli::commands::{self, OutputFormat};
use intercept_cli::{
    check_radius_ratio, parse_chart, parse_range, service, LayoutRequest, DEFAULT_PORT,
};
use intercept_core::layout::{DEFAULT_CANVAS, DEFAULT_RADIUS_RATIO};
use intercept_core::metrics::{Chart, DEFAULT_PAIRS};
use intercept_core::AxisRange;

/// Intercept graph layouts, crossing/intensity metrics and the benchmark.
#[derive(Parser)]
#[command(name = "intercept", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the synthetic benchmark datasets and a manifest.
    Gen {
        #[arg(long)]
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only n in {5, 100, 200} (243 datasets instead of 1215).
        #[arg(long)]
        reduced: bool,
    },
    /// Lay out a CSV as SVG or JSON.
    Render {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        layout: LayoutArgs,
        /// Defaults to json for `.json` outputs, svg otherwise.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Crossings and intensity ratio of one CSV on both charts.
    Metrics {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        layout: LayoutArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PAIRS)]
        pairs: usize,
    },
    /// Run the benchmark and the paired tests.
    Eval {
        #[arg(long)]
        reduced: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RADIUS_RATIO, value_parser = ratio)]
        radius_ratio: f64,
        #[arg(long, default_value_t = DEFAULT_PAIRS)]
        pairs: usize,
        /// Report JSON; defaults to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write per-level means as CSV.
        #[arg(long)]
        table_csv: Option<PathBuf>,
        /// Print the human-readable table to stderr.
        #[arg(long)]
        table: bool,
    },
    /// Serve layouts and metrics as JSON on localhost.
    Serve {
        #[arg(long, default_value_t = DEFAULT_PORT, value_parser = clap::value_parser!(u16).range(1024..=65535))]
        port: u16,
        #[arg(long, default_value_t = DEFAULT_CANVAS, value_parser = size)]
        size: f64,
    },
}

#[derive(Args)]
struct LayoutArgs {
    #[arg(long, default_value = "intercept", value_parser = parse_chart)]
    chart: Chart,
    #[arg(long, default_value_t = DEFAULT_RADIUS_RATIO, value_parser = ratio)]
    radius_ratio: f64,
    /// Canvas side in pixels.
    #[arg(long, default_value_t = DEFAULT_CANVAS, value_parser = size)]
    size: f64,
    /// Fixed axis range as LO,HI instead of the data extrema.
    #[arg(long, value_parser = parse_range)]
    range: Option<AxisRange>,
}

impl LayoutArgs {
    fn request(&self) -> LayoutRequest {
        LayoutRequest {
            chart: self.chart,
            radius_ratio: self.radius_ratio,
            size: self.size,
            range: self.range,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Svg,
    Json,
}

fn ratio(text: &str) -> Result<f64, String> {
    let value: f64 = text
        .parse()
        .map_err(|_| format!("{text:?} is not a number"))?;
    check_radius_ratio(value)
}

fn size(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("size must be a positive number, got {text:?}")),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen {
            output,
            seed,
            reduced,
        } => {
            let n = commands::generate(&output, seed, reduced)?;
            eprintln!("wrote {n} datasets to {}", output.display());
        }
        Command::Render {
            input,
            output,
            layout,
            format,
        } => {
            let explicit = format.map(|f| match f {
                FormatArg::Svg => OutputFormat::Svg,
                FormatArg::Json => OutputFormat::Json,
            });
            let format = commands::infer_format(explicit, output.as_ref());
            let text = commands::render(&input, &layout.request(), format)?;
            commands::emit(output.as_deref(), &text)?;
        }
        Command::Metrics {
            input,
            output,
            layout,
            seed,
            pairs,
        } => {
            let report = commands::metrics(&input, &layout.request(), pairs, seed)?;
            commands::emit(output.as_deref(), &commands::metric_json(&report))?;
        }
        Command::Eval {
            reduced,
            seed,
            radius_ratio,
            pairs,
            output,
            table_csv,
            table,
        } => {
            let report = commands::evaluate(seed, reduced, radius_ratio, pairs, DEFAULT_CANVAS)?;
            if table {
                eprint!("{}", report.to_table());
            }
            if let Some(path) = table_csv {
                std::fs::write(&path, report.to_csv())
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            commands::emit(output.as_deref(), &report.to_json())?;
        }
        Command::Serve { port, size } => {
            let runtime = tokio::runtime::Runtime::new().context("cannot start async runtime")?;
            runtime
                .block_on(service::serve(port, size))
                .with_context(|| format!("cannot serve on port {port}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("intercept: {e:#}");
            ExitCode::FAILURE
        }
    }
}

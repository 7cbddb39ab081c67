use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use intercept_core::datagen::{enumerate_specs, reduced_specs, write_datasets};
use intercept_core::layout::{emit_svg, layout_to_json, parse_csv};
use intercept_core::metrics::{evaluate_dataset, MetricReport};
use intercept_core::stats::{evaluate_all, EvalConfig, EvaluationReport};
use intercept_core::Dataset;

use crate::{build_layout, LayoutRequest};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Svg,
    Json,
}

pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_csv(&bytes).with_context(|| format!("invalid dataset {}", path.display()))
}

/// Writes to `path`, or stdout when it is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn render(input: &Path, request: &LayoutRequest, format: OutputFormat) -> Result<String> {
    let dataset = load_dataset(input)?;
    let doc = build_layout(&dataset, request)?;
    Ok(match format {
        OutputFormat::Svg => emit_svg(&doc),
        OutputFormat::Json => layout_to_json(&doc),
    })
}

pub fn metrics(
    input: &Path,
    request: &LayoutRequest,
    pairs: usize,
    seed: u64,
) -> Result<MetricReport> {
    let dataset = load_dataset(input)?;
    let id = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());
    Ok(evaluate_dataset(
        id,
        &dataset,
        &request.layout_config(),
        pairs,
        seed,
    )?)
}

pub fn generate(dir: &Path, seed: u64, reduced: bool) -> Result<usize> {
    let specs = if reduced {
        reduced_specs(seed)
    } else {
        enumerate_specs(seed)
    };
    let manifest = write_datasets(dir, &specs, seed)
        .with_context(|| format!("cannot write datasets to {}", dir.display()))?;
    Ok(manifest.datasets.len())
}

pub fn evaluate(
    seed: u64,
    reduced: bool,
    radius_ratio: f64,
    pairs: usize,
    canvas: f64,
) -> Result<EvaluationReport> {
    let specs = if reduced {
        reduced_specs(seed)
    } else {
        enumerate_specs(seed)
    };
    let config = EvalConfig {
        radius_ratio,
        pairs,
        canvas,
    };
    Ok(evaluate_all(&specs, &config)?)
}

pub fn metric_json(report: &MetricReport) -> String {
    serde_json::to_string_pretty(report).expect("metric report serializes") + "\n"
}

/// Picks the output format from an explicit flag or the output extension.
pub fn infer_format(explicit: Option<OutputFormat>, output: Option<&PathBuf>) -> OutputFormat {
    explicit.unwrap_or_else(
        || match output.and_then(|p| p.extension()).and_then(|e| e.to_str()) {
            Some("json") => OutputFormat::Json,
            _ => OutputFormat::Svg,
        },
    )
}

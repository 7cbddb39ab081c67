use std::fmt::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{summarize, wilcoxon_signed_rank, WilcoxonResult};
use crate::datagen::{generate, GenSpec, ScaleLevel};
use crate::layout::{LayoutConfig, DEFAULT_CANVAS, DEFAULT_RADIUS_RATIO};
use crate::metrics::{evaluate_dataset, MetricReport, MetricsError, DEFAULT_PAIRS};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no dataset specs to evaluate")]
    NoSpecs,
    #[error("dataset {id}: {source}")]
    Dataset {
        id: String,
        #[source]
        source: MetricsError,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub radius_ratio: f64,
    pub pairs: usize,
    pub canvas: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            radius_ratio: DEFAULT_RADIUS_RATIO,
            pairs: DEFAULT_PAIRS,
            canvas: DEFAULT_CANVAS,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    CrossingsRising,
    CrossingsDropping,
    CrossingsOverall,
    IntensityRatio,
}

impl MetricKind {
    pub const ALL: [MetricKind; 4] = [
        MetricKind::CrossingsRising,
        MetricKind::CrossingsDropping,
        MetricKind::CrossingsOverall,
        MetricKind::IntensityRatio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::CrossingsRising => "crossings_rising",
            MetricKind::CrossingsDropping => "crossings_dropping",
            MetricKind::CrossingsOverall => "crossings_overall",
            MetricKind::IntensityRatio => "intensity_ratio",
        }
    }

    /// (intercept, slope) values for one dataset; `None` when undefined.
    fn extract(self, r: &MetricReport) -> Option<(f64, f64)> {
        let c = &r.crossings;
        match self {
            MetricKind::CrossingsRising => Some((c.intercept.rising as f64, c.slope.rising as f64)),
            MetricKind::CrossingsDropping => {
                Some((c.intercept.dropping as f64, c.slope.dropping as f64))
            }
            MetricKind::CrossingsOverall => {
                Some((c.intercept.overall as f64, c.slope.overall as f64))
            }
            MetricKind::IntensityRatio => r.intensity.intercept.zip(r.intensity.slope),
        }
    }
}

/// Intercept-vs-slope comparison of one metric within one scale level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub metric: MetricKind,
    /// Datasets where the metric is defined on both charts.
    pub n: usize,
    pub mean_intercept: f64,
    pub mean_slope: f64,
    pub ci95_intercept: Option<f64>,
    pub ci95_slope: Option<f64>,
    pub wilcoxon: Option<WilcoxonResult>,
    /// Why the test could not be run, when it was not.
    pub wilcoxon_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub scale_level: ScaleLevel,
    pub n_datasets: usize,
    pub comparisons: Vec<Comparison>,
}

impl LevelReport {
    pub fn comparison(&self, metric: MetricKind) -> &Comparison {
        self.comparisons
            .iter()
            .find(|c| c.metric == metric)
            .expect("every metric is compared")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub config: EvalConfig,
    pub n_datasets: usize,
    pub levels: Vec<LevelReport>,
    pub datasets: Vec<MetricReport>,
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        f64::NAN
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn compare(metric: MetricKind, reports: &[&MetricReport]) -> Comparison {
    let (ours, base): (Vec<f64>, Vec<f64>) =
        reports.iter().filter_map(|r| metric.extract(r)).unzip();
    let (wilcoxon, wilcoxon_error) = match wilcoxon_signed_rank(&ours, &base) {
        Ok(w) => (Some(w), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Comparison {
        metric,
        n: ours.len(),
        mean_intercept: mean(&ours),
        mean_slope: mean(&base),
        ci95_intercept: summarize(&ours).ok().map(|s| s.ci95),
        ci95_slope: summarize(&base).ok().map(|s| s.ci95),
        wilcoxon,
        wilcoxon_error,
    }
}

/// Generates every spec's dataset, measures both charts at the configured
/// inner radius, and runs paired tests per scale level.
pub fn evaluate_all(specs: &[GenSpec], config: &EvalConfig) -> Result<EvaluationReport, EvalError> {
    if specs.is_empty() {
        return Err(EvalError::NoSpecs);
    }
    let layout = LayoutConfig::<f64>::with_canvas(config.canvas).radius_ratio(config.radius_ratio);
    let datasets = specs
        .par_iter()
        .map(|spec| {
            let ds = generate(spec);
            evaluate_dataset(spec.id(), &ds, &layout, config.pairs, spec.seed).map_err(|source| {
                EvalError::Dataset {
                    id: spec.id(),
                    source,
                }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let levels = ScaleLevel::ALL
        .iter()
        .filter_map(|&level| {
            let members: Vec<&MetricReport> = specs
                .iter()
                .zip(&datasets)
                .filter(|(s, _)| s.scale_level == level)
                .map(|(_, r)| r)
                .collect();
            if members.is_empty() {
                return None;
            }
            Some(LevelReport {
                scale_level: level,
                n_datasets: members.len(),
                comparisons: MetricKind::ALL
                    .iter()
                    .map(|&m| compare(m, &members))
                    .collect(),
            })
        })
        .collect();

    Ok(EvaluationReport {
        config: config.clone(),
        n_datasets: datasets.len(),
        levels,
        datasets,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"))
}

impl EvaluationReport {
    pub fn level(&self, level: ScaleLevel) -> Option<&LevelReport> {
        self.levels.iter().find(|l| l.scale_level == level)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// Fixed-width table of group means, intervals and test results.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<7} {:<19} {:>4} {:>12} {:>9} {:>12} {:>9} {:>10} {:>11} {:>6}",
            "scale", "metric", "n", "intercept", "ci95", "slope", "ci95", "W+", "p", "method"
        );
        for level in &self.levels {
            for c in &level.comparisons {
                let (w, p, method) = match &c.wilcoxon {
                    Some(w) => (
                        format!("{:.1}", w.w_plus),
                        format!("{:.3e}", w.p_two_sided),
                        match w.method {
                            super::Method::Exact => "exact",
                            super::Method::NormalApprox => "normal",
                        },
                    ),
                    None => ("-".into(), "-".into(), "n/a"),
                };
                let _ = writeln!(
                    out,
                    "{:<7} {:<19} {:>4} {:>12.4} {:>9} {:>12.4} {:>9} {:>10} {:>11} {:>6}",
                    level.scale_level.name(),
                    c.metric.name(),
                    c.n,
                    c.mean_intercept,
                    opt(c.ci95_intercept),
                    c.mean_slope,
                    opt(c.ci95_slope),
                    w,
                    p,
                    method
                );
            }
        }
        out
    }

    /// Group means as CSV with a header row, for spreadsheets.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scale,metric,n,mean_intercept,ci95_intercept,mean_slope,ci95_slope,w_plus,p_two_sided\n");
        for level in &self.levels {
            for c in &level.comparisons {
                let cell = |v: Option<f64>| v.map_or_else(String::new, |v| v.to_string());
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    level.scale_level.name(),
                    c.metric.name(),
                    c.n,
                    c.mean_intercept,
                    cell(c.ci95_intercept),
                    c.mean_slope,
                    cell(c.ci95_slope),
                    cell(c.wilcoxon.map(|w| w.w_plus)),
                    cell(c.wilcoxon.map(|w| w.p_two_sided)),
                );
            }
        }
        out
    }
}

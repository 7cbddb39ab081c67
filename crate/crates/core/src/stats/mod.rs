//! Paired significance testing, confidence intervals, and the benchmark
//! evaluation that compares the two charts over generated datasets.

mod evaluate;
mod wilcoxon;

pub use evaluate::{
    evaluate_all, Comparison, EvalConfig, EvalError, EvaluationReport, LevelReport, MetricKind,
};
pub use wilcoxon::{
    midranks, wilcoxon_signed_rank, wilcoxon_signed_rank_with, Method, WilcoxonResult, EXACT_CUTOFF,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("paired samples differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least {needed} values, got {got}")]
    TooFew { needed: usize, got: usize },
    #[error("every paired difference is zero")]
    AllZeroDifferences,
    #[error("non-finite value in input")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Half-width of the normal 95% interval, `1.96 * sd / sqrt(n)`.
    pub ci95: f64,
}

pub fn summarize(values: &[f64]) -> Result<Summary, StatsError> {
    let n = values.len();
    if n < 2 {
        return Err(StatsError::TooFew { needed: 2, got: n });
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    Ok(Summary {
        mean,
        ci95: 1.96 * var.sqrt() / nf.sqrt(),
    })
}

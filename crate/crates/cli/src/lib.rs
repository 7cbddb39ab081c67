//! Command implementations and the local JSON service behind the
//! `intercept` binary. Both go through [`build_layout`], so a layout served
//! over HTTP is byte-identical to the one `render --format json` writes.

pub mod commands;
pub mod service;

use intercept_core::layout::{
    build_intercept, build_slope_on, LayoutDocument, LayoutError, DEFAULT_CANVAS,
};
use intercept_core::metrics::Chart;
use intercept_core::{AxisRange, Dataset, LayoutConfig};

pub const DEFAULT_PORT: u16 = 8472;

/// Everything needed to lay out an already loaded dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutRequest {
    pub chart: Chart,
    pub radius_ratio: f64,
    pub size: f64,
    pub range: Option<AxisRange>,
}

impl Default for LayoutRequest {
    fn default() -> Self {
        Self {
            chart: Chart::Intercept,
            radius_ratio: intercept_core::layout::DEFAULT_RADIUS_RATIO,
            size: DEFAULT_CANVAS,
            range: None,
        }
    }
}

impl LayoutRequest {
    pub fn layout_config(&self) -> LayoutConfig {
        LayoutConfig::with_canvas(self.size)
            .radius_ratio(self.radius_ratio)
            .range_override(self.range)
    }
}

pub fn build_layout(
    dataset: &Dataset,
    request: &LayoutRequest,
) -> Result<LayoutDocument<f64>, LayoutError> {
    let config = request.layout_config();
    config.validate()?;
    Ok(match request.chart {
        Chart::Intercept => LayoutDocument::Intercept(build_intercept(dataset, &config)?),
        // Axis height matches the intercept chart's outer diameter.
        Chart::Slope => LayoutDocument::Slope(build_slope_on(
            dataset,
            request.range.unwrap_or(dataset.range),
            2.0 * config.outer_radius,
        )?),
    })
}

pub fn parse_chart(text: &str) -> Result<Chart, String> {
    match text {
        "intercept" => Ok(Chart::Intercept),
        "slope" => Ok(Chart::Slope),
        other => Err(format!(
            "unknown chart {other:?}, expected intercept or slope"
        )),
    }
}

/// Validates a radius ratio; `Err` carries a message suitable for users.
pub fn check_radius_ratio(ratio: f64) -> Result<f64, String> {
    if ratio > 0.0 && ratio <= 1.0 {
        Ok(ratio)
    } else {
        Err(format!("radius ratio must be in (0, 1], got {ratio}"))
    }
}

/// Parses `LO,HI` into an axis range.
pub fn parse_range(text: &str) -> Result<AxisRange, String> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| format!("expected LO,HI, got {text:?}"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("range bound {s:?} is not a number"))
    };
    AxisRange::new(parse(lo)?, parse(hi)?).map_err(|e| e.to_string())
}

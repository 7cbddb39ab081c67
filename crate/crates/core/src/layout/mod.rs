//! Dataset input and the two chart layouts: the radial intercept chart and
//! the slope-graph baseline.

mod data;
mod intercept;
mod json;
mod slope;
mod svg;

pub use data::{parse_csv, write_csv, DataItem, Dataset};
pub use intercept::{build_intercept, Counts, InterceptLayout, LayoutConfig, Segment, SeriesSlot};
pub use json::{layout_from_json, layout_to_json, LayoutDocument, LayoutRef};
pub use slope::{build_slope, build_slope_on, SlopeLayout, SlopeLine};
pub use svg::emit_svg;

use thiserror::Error;

use crate::geometry::GeometryError;

pub const DEFAULT_COLOR_POS: &str = "blue";
pub const DEFAULT_COLOR_NEG: &str = "red";
pub const DEFAULT_RADIUS_RATIO: f64 = 0.5;
pub const DEFAULT_CANVAS: f64 = 800.0;

#[derive(Debug, Error)]
pub enum LayoutError {
    #[error("empty dataset")]
    Empty,
    #[error("line {line}: expected 3 fields (name, series 1, series 2), found {found}")]
    FieldCount { line: u64, found: usize },
    #[error("line {line}: field {column} is not a finite number: {value:?}")]
    NonNumeric {
        line: u64,
        column: usize,
        value: String,
    },
    #[error("line {line}: item name is empty")]
    EmptyNameAt { line: u64 },
    #[error("item name is empty")]
    EmptyName,
    #[error("line {line}: malformed CSV: {message}")]
    Malformed { line: u64, message: String },
    #[error("degenerate axis range: every value equals {value}")]
    DegenerateRange { value: f64 },
    #[error("item {item:?}: value {value} outside axis range [{lo}, {hi}]")]
    ValueOutOfRange {
        item: String,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid layout config: {0}")]
    InvalidConfig(String),
    #[error("item {item:?}: {source}")]
    Item {
        item: String,
        #[source]
        source: GeometryError,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("layout JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl LayoutError {
    /// Input line the error refers to, when there is one.
    pub fn line(&self) -> Option<u64> {
        match self {
            LayoutError::FieldCount { line, .. }
            | LayoutError::NonNumeric { line, .. }
            | LayoutError::EmptyNameAt { line }
            | LayoutError::Malformed { line, .. } => Some(*line),
            _ => None,
        }
    }
}

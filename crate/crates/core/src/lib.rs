//! Intercept Graph: a radial chart for comparing two-state data.
//!
//! Each item is a segment from the inner semicircular axis to the outer one;
//! the part of the segment inside the inner circle (the intercepted chord)
//! grows with the item's change, so shrinking the inner axis filters out small
//! changes and magnifies differences between the remaining ones.
//!
//! The crate provides the layout engine ([`geometry`], [`layout`]), the
//! line-crossing and intensity-ratio metrics against a slope-graph baseline
//! ([`metrics`]), the synthetic benchmark grid ([`datagen`]) and the paired
//! statistical evaluation ([`stats`]).
//!
//! Geometry, layout and metrics are generic over [`Scalar`] (`f32` or `f64`);
//! the aliases below fix the scalar to `f64`, which the data generator and
//! statistics use throughout.

pub mod datagen;
pub mod geometry;
pub mod layout;
pub mod metrics;
pub mod scalar;
pub mod stats;

pub use scalar::Scalar;

pub type AxisRange = geometry::AxisRange<f64>;
pub type CircleConfig = geometry::CircleConfig<f64>;
pub type Point = geometry::Point<f64>;
pub type SegmentGeometry = geometry::SegmentGeometry<f64>;
pub type DataItem = layout::DataItem<f64>;
pub type Dataset = layout::Dataset<f64>;
pub type LayoutConfig = layout::LayoutConfig<f64>;
pub type InterceptLayout = layout::InterceptLayout<f64>;
pub type SlopeLayout = layout::SlopeLayout<f64>;
pub type LayoutDocument = layout::LayoutDocument<f64>;

pub type AxisRangeF32 = geometry::AxisRange<f32>;
pub type CircleConfigF32 = geometry::CircleConfig<f32>;
pub type DatasetF32 = layout::Dataset<f32>;
pub type InterceptLayoutF32 = layout::InterceptLayout<f32>;
pub type SlopeLayoutF32 = layout::SlopeLayout<f32>;

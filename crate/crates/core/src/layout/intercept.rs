use serde::{Deserialize, Serialize};

use super::{DataItem, Dataset, LayoutError, DEFAULT_CANVAS, DEFAULT_COLOR_NEG, DEFAULT_COLOR_POS};
use crate::geometry::{segment_geometry, AxisRange, CircleConfig, Half, Point, SegmentGeometry};
use crate::scalar::Scalar;

/// Which data series is placed on the inner axis; the other goes on the outer axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesSlot {
    #[default]
    Series1,
    Series2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct LayoutConfig<T: Scalar> {
    #[serde(rename = "R")]
    pub outer_radius: T,
    pub radius_ratio: T,
    pub width: T,
    pub height: T,
    pub series_to_inner: SeriesSlot,
    pub color_pos: String,
    pub color_neg: String,
    pub opacity_in: T,
    pub opacity_out: T,
    pub range_override: Option<AxisRange<T>>,
}

impl<T: Scalar> Default for LayoutConfig<T> {
    fn default() -> Self {
        Self::with_canvas(T::lit(DEFAULT_CANVAS))
    }
}

impl<T: Scalar> LayoutConfig<T> {
    /// Square canvas of side `size` with the outer radius at 45% of it.
    pub fn with_canvas(size: T) -> Self {
        Self {
            outer_radius: T::lit(0.45) * size,
            radius_ratio: T::lit(super::DEFAULT_RADIUS_RATIO),
            width: size,
            height: size,
            series_to_inner: SeriesSlot::Series1,
            color_pos: DEFAULT_COLOR_POS.to_string(),
            color_neg: DEFAULT_COLOR_NEG.to_string(),
            opacity_in: T::one(),
            opacity_out: T::lit(0.3),
            range_override: None,
        }
    }

    pub fn radius_ratio(mut self, ratio: T) -> Self {
        self.radius_ratio = ratio;
        self
    }

    pub fn range_override(mut self, range: Option<AxisRange<T>>) -> Self {
        self.range_override = range;
        self
    }

    pub fn inner_radius(&self) -> T {
        self.radius_ratio * self.outer_radius
    }

    pub fn center(&self) -> Point<T> {
        let two = T::lit(2.0);
        Point::new(self.width / two, self.height / two)
    }

    pub fn validate(&self) -> Result<(), LayoutError> {
        let zero = T::zero();
        if !(self.radius_ratio > zero && self.radius_ratio <= T::one()) {
            return Err(LayoutError::InvalidConfig(format!(
                "radius_ratio must be in (0, 1], got {}",
                self.radius_ratio
            )));
        }
        if !(self.outer_radius.is_finite() && self.outer_radius > zero) {
            return Err(LayoutError::InvalidConfig(format!(
                "outer radius must be positive, got {}",
                self.outer_radius
            )));
        }
        if !(self.width > zero && self.height > zero) {
            return Err(LayoutError::InvalidConfig(
                "canvas must have positive size".into(),
            ));
        }
        Ok(())
    }

    pub fn circles(&self) -> Result<CircleConfig<T>, LayoutError> {
        Ok(CircleConfig::new(
            self.outer_radius,
            self.inner_radius(),
            self.center(),
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Segment<T: Scalar> {
    #[serde(flatten)]
    pub item: DataItem<T>,
    #[serde(flatten)]
    pub geometry: SegmentGeometry<T>,
}

/// Number of filtered-in segments on each half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Counts {
    pub right: usize,
    pub left: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.right + self.left
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct InterceptLayout<T: Scalar> {
    pub range: AxisRange<T>,
    pub config: LayoutConfig<T>,
    pub counts: Counts,
    pub segments: Vec<Segment<T>>,
}

impl<T: Scalar> InterceptLayout<T> {
    pub fn circles(&self) -> CircleConfig<T> {
        CircleConfig {
            outer_radius: self.config.outer_radius,
            inner_radius: self.config.inner_radius(),
            center: self.config.center(),
        }
    }

    pub fn half(&self, half: Half) -> impl Iterator<Item = &Segment<T>> {
        self.segments
            .iter()
            .filter(move |s| s.geometry.half == half)
    }
}

pub fn build_intercept<T: Scalar>(
    dataset: &Dataset<T>,
    config: &LayoutConfig<T>,
) -> Result<InterceptLayout<T>, LayoutError> {
    config.validate()?;
    let range = config.range_override.unwrap_or(dataset.range);
    let circles = config.circles()?;

    let mut counts = Counts::default();
    let segments = dataset
        .items
        .iter()
        .map(|item| {
            let (v_inner, v_outer) = match config.series_to_inner {
                SeriesSlot::Series1 => (item.v1, item.v2),
                SeriesSlot::Series2 => (item.v2, item.v1),
            };
            let half = Half::of_change(item.d);
            let geometry =
                segment_geometry(v_inner, v_outer, half, &range, &circles).map_err(|source| {
                    LayoutError::Item {
                        item: item.name.clone(),
                        source,
                    }
                })?;
            if geometry.filtered_in {
                match half {
                    Half::Right => counts.right += 1,
                    Half::Left => counts.left += 1,
                }
            }
            Ok(Segment {
                item: item.clone(),
                geometry,
            })
        })
        .collect::<Result<Vec<_>, LayoutError>>()?;

    Ok(InterceptLayout {
        range,
        config: config.clone(),
        counts,
        segments,
    })
}

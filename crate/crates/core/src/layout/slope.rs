use serde::{Deserialize, Serialize};

use super::{DataItem, Dataset, LayoutError};
use crate::geometry::{AxisRange, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SlopeLine<T: Scalar> {
    #[serde(flatten)]
    pub item: DataItem<T>,
    pub left: Point<T>,
    pub right: Point<T>,
}

/// Two vertical axes `axis_gap` apart with series 1 on the left and series 2
/// on the right. `y` grows with the value and spans `[0, axis_gap]`, so with
/// `axis_gap = 1` the chart is the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SlopeLayout<T: Scalar> {
    pub range: AxisRange<T>,
    pub axis_gap: T,
    pub lines: Vec<SlopeLine<T>>,
}

impl<T: Scalar> SlopeLine<T> {
    /// Absolute tangent of the inclination angle.
    pub fn steepness(&self) -> T {
        let run = self.right.x - self.left.x;
        ((self.right.y - self.left.y) / run).abs()
    }
}

pub fn build_slope<T: Scalar>(
    dataset: &Dataset<T>,
    axis_gap: T,
) -> Result<SlopeLayout<T>, LayoutError> {
    build_slope_on(dataset, dataset.range, axis_gap)
}

/// Like [`build_slope`] but on an explicit shared range.
pub fn build_slope_on<T: Scalar>(
    dataset: &Dataset<T>,
    range: AxisRange<T>,
    axis_gap: T,
) -> Result<SlopeLayout<T>, LayoutError> {
    if !(axis_gap.is_finite() && axis_gap > T::zero()) {
        return Err(LayoutError::InvalidConfig(format!(
            "axis gap must be positive, got {axis_gap}"
        )));
    }
    let lines = dataset
        .items
        .iter()
        .map(|item| {
            for v in [item.v1, item.v2] {
                if !range.contains(v) {
                    return Err(LayoutError::ValueOutOfRange {
                        item: item.name.clone(),
                        value: v.to_f64_lossy(),
                        lo: range.lo.to_f64_lossy(),
                        hi: range.hi.to_f64_lossy(),
                    });
                }
            }
            Ok(SlopeLine {
                item: item.clone(),
                left: Point::new(T::zero(), axis_gap * range.normalize(item.v1)),
                right: Point::new(axis_gap, axis_gap * range.normalize(item.v2)),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SlopeLayout {
        range,
        axis_gap,
        lines,
    })
}

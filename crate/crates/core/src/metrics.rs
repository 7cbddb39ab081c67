//! Line-crossing and intensity-ratio metrics for both charts.
//!
//! Crossings are counted over the full drawn segments. The intercept chart
//! counts each half separately and sums them; the slope graph counts rising
//! lines, dropping lines and then all lines together.
//!
//! The intensity ratio compares sampled pairs of filtered-in items: for a pair
//! `(p, q)` the term is `|I(p) - I(q)| / max(I(p), I(q))`, and the reported
//! ratio is the mean over the sampled pairs. The intercept chart uses chord
//! length as intensity, the slope graph the absolute slope on the unit square.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Half, Point};
use crate::layout::{
    build_intercept, build_slope_on, Dataset, InterceptLayout, LayoutConfig, LayoutError,
    SlopeLayout,
};
use crate::scalar::Scalar;

pub const DEFAULT_PAIRS: usize = 10;

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("cannot sample {k} distinct pairs from {n} items")]
    TooManyPairs { n: usize, k: usize },
    #[error("pair sampling needs at least 2 items, got {0}")]
    TooFewItems(usize),
    #[error("intensity at index {index} is negative or not finite: {value}")]
    BadIntensity { index: usize, value: f64 },
    #[error("pair ({0}, {1}) indexes past the intensity list")]
    PairOutOfBounds(usize, usize),
    #[error("intercept and slope layouts were built from different datasets")]
    DatasetMismatch,
    #[error(transparent)]
    Layout(#[from] LayoutError),
}

pub type LineSegment<T> = [Point<T>; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Intercept,
    Slope,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub chart: Chart,
    pub rising: usize,
    pub dropping: usize,
    pub overall: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSample {
    pub pairs: Vec<(usize, usize)>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct IntensityReport<T: Scalar> {
    pub chart: Chart,
    pub ratio: T,
    pub per_pair: Vec<T>,
}

fn orientation<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> i8 {
    let v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if v > T::zero() {
        1
    } else if v < T::zero() {
        -1
    } else {
        0
    }
}

/// `c` lies within the bounding box of `[a, b]`; callers check collinearity.
fn within<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> bool {
    c.x >= a.x.min(b.x) && c.x <= a.x.max(b.x) && c.y >= a.y.min(b.y) && c.y <= a.y.max(b.y)
}

/// Whether two segments intersect. Contact only at a shared endpoint does not
/// count; collinear segments count when they overlap with positive length.
pub fn segments_cross<T: Scalar>(p: &LineSegment<T>, q: &LineSegment<T>) -> bool {
    let [a, b] = *p;
    let [c, d] = *q;
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);

    if o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0 {
        // Collinear: compare extents along the dominant axis.
        let use_x = (b.x - a.x).abs() + (d.x - c.x).abs() >= (b.y - a.y).abs() + (d.y - c.y).abs();
        let key = |pt: Point<T>| if use_x { pt.x } else { pt.y };
        let lo = key(a).min(key(b)).max(key(c).min(key(d)));
        let hi = key(a).max(key(b)).min(key(c).max(key(d)));
        return hi > lo;
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    if a == c || a == d || b == c || b == d {
        return false;
    }
    (o1 == 0 && within(a, b, c))
        || (o2 == 0 && within(a, b, d))
        || (o3 == 0 && within(c, d, a))
        || (o4 == 0 && within(c, d, b))
}

/// Number of crossing unordered pairs.
pub fn line_crossing<T: Scalar>(segments: &[LineSegment<T>]) -> usize {
    segments
        .iter()
        .enumerate()
        .map(|(i, p)| {
            segments[i + 1..]
                .iter()
                .filter(|q| segments_cross(p, q))
                .count()
        })
        .sum()
}

fn same_items<T: Scalar>(il: &InterceptLayout<T>, sl: &SlopeLayout<T>) -> bool {
    il.segments.len() == sl.lines.len()
        && il
            .segments
            .iter()
            .zip(&sl.lines)
            .all(|(s, l)| s.item == l.item)
}

pub fn crossing_report<T: Scalar>(
    il: &InterceptLayout<T>,
    sl: &SlopeLayout<T>,
) -> Result<(CrossingReport, CrossingReport), MetricsError> {
    if !same_items(il, sl) {
        return Err(MetricsError::DatasetMismatch);
    }
    let drawn = |half: Half| -> Vec<LineSegment<T>> {
        il.half(half)
            .map(|s| [s.geometry.inner, s.geometry.outer])
            .collect()
    };
    let rising = line_crossing(&drawn(Half::Right));
    let dropping = line_crossing(&drawn(Half::Left));
    let intercept = CrossingReport {
        chart: Chart::Intercept,
        rising,
        dropping,
        overall: rising + dropping,
    };

    let lines = |keep: &dyn Fn(Half) -> bool| -> Vec<LineSegment<T>> {
        sl.lines
            .iter()
            .filter(|l| keep(Half::of_change(l.item.d)))
            .map(|l| [l.left, l.right])
            .collect()
    };
    let slope = CrossingReport {
        chart: Chart::Slope,
        rising: line_crossing(&lines(&|h| h == Half::Right)),
        dropping: line_crossing(&lines(&|h| h == Half::Left)),
        overall: line_crossing(&lines(&|_| true)),
    };
    Ok((intercept, slope))
}

/// Draws `k` distinct unordered pairs from `0..n` uniformly without replacement.
pub fn sample_pairs(n: usize, k: usize, seed: u64) -> Result<PairSample, MetricsError> {
    if n < 2 {
        return Err(MetricsError::TooFewItems(n));
    }
    let total = n * (n - 1) / 2;
    if k > total {
        return Err(MetricsError::TooManyPairs { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = index::sample(&mut rng, total, k)
        .into_iter()
        .map(|linear| decode_pair(n, linear))
        .collect();
    Ok(PairSample { pairs, seed })
}

/// Maps a linear index over the upper triangle (row-major) to `(i, j)`, `i < j`.
fn decode_pair(n: usize, mut linear: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - 1 - i;
        if linear < row {
            return (i, i + 1 + linear);
        }
        linear -= row;
    }
    unreachable!("linear pair index out of range")
}

pub fn intensity_ratio<T: Scalar>(
    chart: Chart,
    sample: &PairSample,
    intensities: &[T],
) -> Result<IntensityReport<T>, MetricsError> {
    for (index, &v) in intensities.iter().enumerate() {
        if !(v.is_finite() && v >= T::zero()) {
            return Err(MetricsError::BadIntensity {
                index,
                value: v.to_f64_lossy(),
            });
        }
    }
    let per_pair = sample
        .pairs
        .iter()
        .map(|&(p, q)| {
            let (ip, iq) = match (intensities.get(p), intensities.get(q)) {
                (Some(&ip), Some(&iq)) => (ip, iq),
                _ => return Err(MetricsError::PairOutOfBounds(p, q)),
            };
            let max = ip.max(iq);
            Ok(if max > T::zero() {
                (ip - iq).abs() / max
            } else {
                T::zero()
            })
        })
        .collect::<Result<Vec<T>, _>>()?;
    let ratio = if per_pair.is_empty() {
        T::zero()
    } else {
        per_pair.iter().fold(T::zero(), |acc, &v| acc + v)
            / T::from_usize(per_pair.len()).expect("pair count")
    };
    Ok(IntensityReport {
        chart,
        ratio,
        per_pair,
    })
}

/// Chord length of every item, index-aligned with the dataset.
pub fn intercept_intensities<T: Scalar>(il: &InterceptLayout<T>) -> Vec<T> {
    il.segments.iter().map(|s| s.geometry.chord_len).collect()
}

/// Absolute slope of every line on the unit square, index-aligned with the dataset.
pub fn slope_intensities<T: Scalar>(sl: &SlopeLayout<T>) -> Vec<T> {
    sl.lines
        .iter()
        .map(|l| l.item.d.abs() / sl.range.span())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricConfig {
    pub radius_ratio: f64,
    pub pairs: usize,
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self {
            radius_ratio: crate::layout::DEFAULT_RADIUS_RATIO,
            pairs: DEFAULT_PAIRS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartPair<A> {
    pub intercept: A,
    pub slope: A,
}

/// Metrics of one dataset on both charts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub dataset_id: String,
    pub crossings: ChartPair<CrossingReport>,
    /// `null` when fewer than two items are filtered in.
    pub intensity: ChartPair<Option<f64>>,
    pub seed: u64,
    pub radius_ratio: f64,
    pub filtered_in: usize,
    /// Sampled pairs as dataset indices; identical for both charts.
    pub pairs: Vec<(usize, usize)>,
}

/// Builds both layouts at the configured radius and measures them. Pairs are
/// drawn among the filtered-in items and reused for both charts.
pub fn evaluate_dataset<T: Scalar>(
    dataset_id: impl Into<String>,
    dataset: &Dataset<T>,
    layout_config: &LayoutConfig<T>,
    pairs: usize,
    seed: u64,
) -> Result<MetricReport, MetricsError> {
    let il = build_intercept(dataset, layout_config)?;
    let sl = build_slope_on(dataset, il.range, T::one())?;
    let (ic, sc) = crossing_report(&il, &sl)?;

    let kept: Vec<usize> = il
        .segments
        .iter()
        .enumerate()
        .filter(|(_, s)| s.geometry.filtered_in)
        .map(|(i, _)| i)
        .collect();

    let (intensity, chosen) = if kept.len() >= 2 {
        let available = kept.len() * (kept.len() - 1) / 2;
        let local = sample_pairs(kept.len(), pairs.min(available), seed)?;
        let sample = PairSample {
            pairs: local
                .pairs
                .iter()
                .map(|&(a, b)| (kept[a], kept[b]))
                .collect(),
            seed,
        };
        let ii = intensity_ratio(Chart::Intercept, &sample, &intercept_intensities(&il))?;
        let si = intensity_ratio(Chart::Slope, &sample, &slope_intensities(&sl))?;
        (
            ChartPair {
                intercept: Some(ii.ratio.to_f64_lossy()),
                slope: Some(si.ratio.to_f64_lossy()),
            },
            sample.pairs,
        )
    } else {
        (
            ChartPair {
                intercept: None,
                slope: None,
            },
            Vec::new(),
        )
    };

    Ok(MetricReport {
        dataset_id: dataset_id.into(),
        crossings: ChartPair {
            intercept: ic,
            slope: sc,
        },
        intensity,
        seed,
        radius_ratio: layout_config.radius_ratio.to_f64_lossy(),
        filtered_in: kept.len(),
        pairs: chosen,
    })
}

//! Angle mapping, polar placement and intercepted-chord geometry.
//!
//! Angles are measured from the top of the chart (12 o'clock). On the right
//! half they grow clockwise, on the left half counterclockwise, so the two
//! halves are mirror images across the vertical diameter. A data value `v`
//! on the shared range `[lo, hi]` sits at `phi(v) = pi * (v - lo) / (hi - lo)`.
//!
//! A segment runs from its inner-axis point (radius `r`) to its outer-axis
//! point (radius `R`). The part of that segment lying inside the inner circle
//! is the intercepted chord. With `alpha` the central angle between the two
//! endpoints, its length is
//!
//! ```text
//! L = 2 r sin(x),  x = alpha - atan2(R/r - cos(alpha), sin(alpha))
//! ```
//!
//! clamped at zero. `chord_numeric` computes the same quantity by intersecting
//! the segment with the circle and is kept as an independent check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid axis range [{lo}, {hi}]: upper bound must exceed lower bound")]
    DegenerateRange { lo: f64, hi: f64 },
    #[error("value {value} outside axis range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("invalid circle radii: outer {outer}, inner {inner} (need 0 < inner <= outer)")]
    InvalidRadii { outer: f64, inner: f64 },
    #[error("{which} endpoint at distance {distance} from center, expected radius {expected}")]
    OffCircle {
        which: &'static str,
        distance: f64,
        expected: f64,
    },
    #[error("chord delta precondition violated: {0}")]
    ChordDeltaPrecondition(String),
}

/// 2-D point in pixel (or normalized) coordinates. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[T; 2]", into = "[T; 2]")]
#[serde(bound = "")]
pub struct Point<T: Scalar> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Self) -> T {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl<T: Scalar> From<[T; 2]> for Point<T> {
    fn from([x, y]: [T; 2]) -> Self {
        Self { x, y }
    }
}

impl<T: Scalar> From<Point<T>> for [T; 2] {
    fn from(p: Point<T>) -> Self {
        [p.x, p.y]
    }
}

/// Shared linear scale of both axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct AxisRange<T: Scalar> {
    pub lo: T,
    pub hi: T,
}

impl<T: Scalar> AxisRange<T> {
    pub fn new(lo: T, hi: T) -> Result<Self, GeometryError> {
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(GeometryError::DegenerateRange {
                lo: lo.to_f64_lossy(),
                hi: hi.to_f64_lossy(),
            });
        }
        Ok(Self { lo, hi })
    }

    pub fn span(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, v: T) -> bool {
        v >= self.lo && v <= self.hi
    }

    /// Position of `v` on the range as a fraction in `[0, 1]`.
    pub fn normalize(&self, v: T) -> T {
        (v - self.lo) / self.span()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct CircleConfig<T: Scalar> {
    pub outer_radius: T,
    pub inner_radius: T,
    pub center: Point<T>,
}

impl<T: Scalar> CircleConfig<T> {
    pub fn new(outer_radius: T, inner_radius: T, center: Point<T>) -> Result<Self, GeometryError> {
        if !(outer_radius.is_finite()
            && inner_radius.is_finite()
            && inner_radius > T::zero()
            && inner_radius <= outer_radius)
        {
            return Err(GeometryError::InvalidRadii {
                outer: outer_radius.to_f64_lossy(),
                inner: inner_radius.to_f64_lossy(),
            });
        }
        Ok(Self {
            outer_radius,
            inner_radius,
            center,
        })
    }

    /// Circle pair centered at the origin.
    pub fn centered(outer_radius: T, inner_radius: T) -> Result<Self, GeometryError> {
        Self::new(outer_radius, inner_radius, Point::default())
    }
}

/// Which semicircle a segment is drawn on. Non-negative changes go right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    Right,
    Left,
}

impl Half {
    pub fn of_change<T: Scalar>(d: T) -> Self {
        if d >= T::zero() {
            Half::Right
        } else {
            Half::Left
        }
    }
}

/// Full geometry of one drawn segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct SegmentGeometry<T: Scalar> {
    pub half: Half,
    pub phi_inner: T,
    pub phi_outer: T,
    pub alpha: T,
    pub inner: Point<T>,
    pub outer: Point<T>,
    pub chord: Option<[Point<T>; 2]>,
    pub chord_len: T,
    pub filtered_in: bool,
}

impl<T: Scalar> SegmentGeometry<T> {
    /// Length of the whole drawn segment, inner point to outer point.
    pub fn length(&self) -> T {
        self.inner.distance(self.outer)
    }
}

pub fn value_to_angle<T: Scalar>(v: T, range: &AxisRange<T>) -> Result<T, GeometryError> {
    if !range.contains(v) {
        return Err(GeometryError::OutOfRange {
            value: v.to_f64_lossy(),
            lo: range.lo.to_f64_lossy(),
            hi: range.hi.to_f64_lossy(),
        });
    }
    Ok((T::PI() * range.normalize(v)).min(T::PI()))
}

pub fn polar_point<T: Scalar>(phi: T, rho: T, half: Half, center: Point<T>) -> Point<T> {
    let (s, c) = phi.sin_cos();
    let dx = rho * s;
    let x = match half {
        Half::Right => center.x + dx,
        Half::Left => center.x - dx,
    };
    Point::new(x, center.y - rho * c)
}

/// Angle subtended at the center by the two axis positions of an item.
pub fn central_angle<T: Scalar>(v1: T, v2: T, range: &AxisRange<T>) -> Result<T, GeometryError> {
    let a = value_to_angle(v1, range)?;
    let b = value_to_angle(v2, range)?;
    Ok((a - b).abs())
}

/// Intercepted chord length in closed form; zero when the segment is filtered out.
pub fn chord_closed_form<T: Scalar>(alpha: T, cfg: &CircleConfig<T>) -> T {
    let r = cfg.inner_radius;
    let big_r = cfg.outer_radius;
    let (s, c) = alpha.sin_cos();
    let x = alpha - (big_r / r - c).atan2(s);
    if x <= T::zero() {
        return T::zero();
    }
    (T::lit(2.0) * r * x.sin()).max(T::zero())
}

/// Endpoints of a chord, `None` when the segment misses the inner disc.
pub type ChordEnds<T> = Option<[Point<T>; 2]>;

/// Intersects the segment `[inner, outer]` with the inner circle and returns the
/// contained portion together with its length.
pub fn chord_numeric<T: Scalar>(
    inner: Point<T>,
    outer: Point<T>,
    cfg: &CircleConfig<T>,
) -> Result<(ChordEnds<T>, T), GeometryError> {
    let tol = T::on_circle_tolerance() * cfg.outer_radius;
    let c = cfg.center;
    let check = |which: &'static str, p: Point<T>, expected: T| {
        let dist = p.distance(c);
        if (dist - expected).abs() > tol {
            Err(GeometryError::OffCircle {
                which,
                distance: dist.to_f64_lossy(),
                expected: expected.to_f64_lossy(),
            })
        } else {
            Ok(())
        }
    };
    check("inner", inner, cfg.inner_radius)?;
    check("outer", outer, cfg.outer_radius)?;

    // Relative to the center, X(t) = P + t D meets |X| = r at t = 0 and at t*.
    let (px, py) = (inner.x - c.x, inner.y - c.y);
    let (dx, dy) = (outer.x - inner.x, outer.y - inner.y);
    let dd = dx * dx + dy * dy;
    if dd <= T::zero() {
        return Ok((None, T::zero()));
    }
    let t_far = -T::lit(2.0) * (px * dx + py * dy) / dd;
    if t_far <= T::zero() {
        return Ok((None, T::zero()));
    }
    let t = t_far.min(T::one());
    let end = Point::new(inner.x + t * dx, inner.y + t * dy);
    Ok((Some([inner, end]), t * dd.sqrt()))
}

/// Inner radius at or below which a segment with central angle `alpha` loses its chord.
pub fn filter_threshold<T: Scalar>(alpha: T, outer_radius: T) -> T {
    if alpha < T::FRAC_PI_2() {
        outer_radius * alpha.cos()
    } else {
        T::zero()
    }
}

/// Chord length difference `L(alpha1) - L(alpha2)` at inner radius `r`.
pub fn chord_delta<T: Scalar>(
    alpha1: T,
    alpha2: T,
    r: T,
    outer_radius: T,
) -> Result<T, GeometryError> {
    if !(alpha1 < T::FRAC_PI_2() && alpha1 >= alpha2 && alpha2 > T::zero()) {
        return Err(GeometryError::ChordDeltaPrecondition(format!(
            "need pi/2 > alpha1 >= alpha2 > 0, got alpha1={alpha1}, alpha2={alpha2}"
        )));
    }
    let lower = outer_radius * alpha2.cos();
    if !(r > lower && r <= outer_radius) {
        return Err(GeometryError::ChordDeltaPrecondition(format!(
            "need r in ({lower}, {outer_radius}], got {r}"
        )));
    }
    let cfg = CircleConfig::centered(outer_radius, r)?;
    Ok(chord_closed_form(alpha1, &cfg) - chord_closed_form(alpha2, &cfg))
}

/// Places one item: inner point at `v_inner`, outer point at `v_outer`, on `half`.
pub fn segment_geometry<T: Scalar>(
    v_inner: T,
    v_outer: T,
    half: Half,
    range: &AxisRange<T>,
    cfg: &CircleConfig<T>,
) -> Result<SegmentGeometry<T>, GeometryError> {
    let phi_inner = value_to_angle(v_inner, range)?;
    let phi_outer = value_to_angle(v_outer, range)?;
    let alpha = (phi_inner - phi_outer).abs();
    let inner = polar_point(phi_inner, cfg.inner_radius, half, cfg.center);
    let outer = polar_point(phi_outer, cfg.outer_radius, half, cfg.center);
    let chord_len = chord_closed_form(alpha, cfg);
    let seg_len = inner.distance(outer);
    let chord = if chord_len > T::zero() && seg_len > T::zero() {
        let t = (chord_len / seg_len).min(T::one());
        let end = Point::new(
            inner.x + t * (outer.x - inner.x),
            inner.y + t * (outer.y - inner.y),
        );
        Some([inner, end])
    } else {
        None
    };
    let chord_len = if chord.is_some() {
        chord_len
    } else {
        T::zero()
    };
    Ok(SegmentGeometry {
        half,
        phi_inner,
        phi_outer,
        alpha,
        inner,
        outer,
        filtered_in: chord.is_some(),
        chord,
        chord_len,
    })
}

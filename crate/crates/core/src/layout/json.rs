use serde::{Deserialize, Serialize};

use super::{InterceptLayout, LayoutError, SlopeLayout};
use crate::scalar::Scalar;

/// Owned layout of either chart, tagged by `"chart"` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "chart", rename_all = "lowercase")]
#[serde(bound = "")]
pub enum LayoutDocument<T: Scalar> {
    Intercept(InterceptLayout<T>),
    Slope(SlopeLayout<T>),
}

/// Borrowed view used for serialization and SVG emission.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "chart", rename_all = "lowercase")]
#[serde(bound = "")]
pub enum LayoutRef<'a, T: Scalar> {
    Intercept(&'a InterceptLayout<T>),
    Slope(&'a SlopeLayout<T>),
}

impl<'a, T: Scalar> From<&'a InterceptLayout<T>> for LayoutRef<'a, T> {
    fn from(l: &'a InterceptLayout<T>) -> Self {
        LayoutRef::Intercept(l)
    }
}

impl<'a, T: Scalar> From<&'a SlopeLayout<T>> for LayoutRef<'a, T> {
    fn from(l: &'a SlopeLayout<T>) -> Self {
        LayoutRef::Slope(l)
    }
}

impl<'a, T: Scalar> From<&'a LayoutDocument<T>> for LayoutRef<'a, T> {
    fn from(doc: &'a LayoutDocument<T>) -> Self {
        match doc {
            LayoutDocument::Intercept(l) => LayoutRef::Intercept(l),
            LayoutDocument::Slope(l) => LayoutRef::Slope(l),
        }
    }
}

pub fn layout_to_json<'a, T: Scalar>(layout: impl Into<LayoutRef<'a, T>>) -> String {
    serde_json::to_string(&layout.into()).expect("layout values serialize")
}

pub fn layout_from_json<T: Scalar>(text: &str) -> Result<LayoutDocument<T>, LayoutError> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::AxisRange;
    use crate::layout::{build_intercept, build_slope, DataItem, Dataset, LayoutConfig};
    use serde_json::Value;

    fn sample() -> Dataset<f64> {
        let items = vec![
            DataItem::new("alice", 60.0, 85.0),
            DataItem::new("bob", 72.5, 41.0),
            DataItem::new("carol", 50.0, 50.0),
            DataItem::new("dan", 5.0, 97.0),
        ];
        Dataset::with_range(items, AxisRange::new(0.0, 100.0).unwrap()).unwrap()
    }

    #[test]
    fn intercept_round_trip() {
        let layout = build_intercept(&sample(), &LayoutConfig::default()).unwrap();
        let json = layout_to_json(&layout);
        assert_eq!(
            layout_from_json::<f64>(&json).unwrap(),
            LayoutDocument::Intercept(layout)
        );
    }

    #[test]
    fn slope_round_trip() {
        let layout = build_slope(&sample(), 1.0).unwrap();
        let json = layout_to_json(&layout);
        assert_eq!(
            layout_from_json::<f64>(&json).unwrap(),
            LayoutDocument::Slope(layout)
        );
    }

    #[test]
    fn schema_keys_and_order() {
        let layout = build_intercept(&sample(), &LayoutConfig::default()).unwrap();
        let json = layout_to_json(&layout);
        assert!(json.starts_with(r#"{"chart":"intercept","range":{"lo":0.0,"hi":100.0},"config":{"R":360.0,"radius_ratio":0.5"#), "{json}");
        let v: Value = serde_json::from_str(&json).unwrap();
        let seg = &v["segments"][0];
        let first = &json[json.find(r#""segments":[{"#).unwrap()..];
        let first = &first[..first.find('}').unwrap()];
        let keys = [
            "name",
            "v1",
            "v2",
            "d",
            "half",
            "phi_inner",
            "phi_outer",
            "alpha",
            "inner",
            "outer",
            "chord",
            "chord_len",
            "filtered_in",
        ];
        let positions: Vec<usize> = keys
            .iter()
            .map(|k| first.find(&format!("\"{k}\":")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{first}");
        assert_eq!(seg.as_object().unwrap().len(), keys.len());
        assert_eq!(seg["half"], "right");
        assert!(seg["inner"].as_array().unwrap().len() == 2);
        assert!(v["segments"][2]["chord"].is_null());
        let recount = v["segments"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|s| s["filtered_in"].as_bool().unwrap())
            .count() as u64;
        assert_eq!(
            v["counts"]["right"].as_u64().unwrap() + v["counts"]["left"].as_u64().unwrap(),
            recount
        );
    }

    #[test]
    fn ratio_change_touches_only_radius_dependent_fields() {
        let ds = sample();
        let full = build_intercept(&ds, &LayoutConfig::default().radius_ratio(1.0)).unwrap();
        let half = build_intercept(&ds, &LayoutConfig::default().radius_ratio(0.5)).unwrap();
        let a: Value = serde_json::from_str(&layout_to_json(&full)).unwrap();
        let b: Value = serde_json::from_str(&layout_to_json(&half)).unwrap();

        let mut changed = std::collections::BTreeSet::new();
        for key in ["chart", "range", "counts"] {
            if a[key] != b[key] {
                changed.insert(key.to_string());
            }
        }
        for (k, va) in a["config"].as_object().unwrap() {
            if *va != b["config"][k] {
                changed.insert(format!("config.{k}"));
            }
        }
        for (sa, sb) in a["segments"]
            .as_array()
            .unwrap()
            .iter()
            .zip(b["segments"].as_array().unwrap())
        {
            for (k, va) in sa.as_object().unwrap() {
                if *va != sb[k] {
                    changed.insert(format!("segment.{k}"));
                }
            }
        }
        let allowed = [
            "counts",
            "config.radius_ratio",
            "segment.inner",
            "segment.chord",
            "segment.chord_len",
            "segment.filtered_in",
        ];
        for key in &changed {
            assert!(
                allowed.contains(&key.as_str()),
                "unexpected change in {key}"
            );
        }
        assert!(changed.contains("segment.inner"));
    }
}

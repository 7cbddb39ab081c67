use serde::{Deserialize, Serialize};

use super::LayoutError;
use crate::geometry::AxisRange;
use crate::scalar::Scalar;

/// One named item observed in two states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct DataItem<T: Scalar> {
    pub name: String,
    pub v1: T,
    pub v2: T,
    /// State change `v2 - v1`.
    pub d: T,
}

impl<T: Scalar> DataItem<T> {
    pub fn new(name: impl Into<String>, v1: T, v2: T) -> Self {
        Self {
            name: name.into(),
            v1,
            v2,
            d: v2 - v1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct Dataset<T: Scalar> {
    pub items: Vec<DataItem<T>>,
    pub range: AxisRange<T>,
}

impl<T: Scalar> Dataset<T> {
    /// Builds a dataset whose range spans the extrema of both series.
    pub fn from_items(items: Vec<DataItem<T>>) -> Result<Self, LayoutError> {
        let mut values = items.iter().flat_map(|it| [it.v1, it.v2]);
        let first = values.next().ok_or(LayoutError::Empty)?;
        let (lo, hi) = values.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v)));
        let range = AxisRange::new(lo, hi).map_err(|_| LayoutError::DegenerateRange {
            value: lo.to_f64_lossy(),
        })?;
        Self::with_range(items, range)
    }

    /// Builds a dataset on a fixed range; every value must lie inside it.
    pub fn with_range(items: Vec<DataItem<T>>, range: AxisRange<T>) -> Result<Self, LayoutError> {
        if items.is_empty() {
            return Err(LayoutError::Empty);
        }
        for it in &items {
            if it.name.is_empty() {
                return Err(LayoutError::EmptyName);
            }
            for v in [it.v1, it.v2] {
                if !range.contains(v) {
                    return Err(LayoutError::ValueOutOfRange {
                        item: it.name.clone(),
                        value: v.to_f64_lossy(),
                        lo: range.lo.to_f64_lossy(),
                        hi: range.hi.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(Self { items, range })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Parses the headerless `name,series1,series2` format, one item per line.
pub fn parse_csv<T: Scalar>(text: &[u8]) -> Result<Dataset<T>, LayoutError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text);

    let mut items = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| LayoutError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 3 {
            return Err(LayoutError::FieldCount {
                line,
                found: record.len(),
            });
        }
        let name = &record[0];
        if name.is_empty() {
            return Err(LayoutError::EmptyNameAt { line });
        }
        let parse = |column: usize| -> Result<T, LayoutError> {
            let raw = &record[column];
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .and_then(T::from_f64)
                .ok_or_else(|| LayoutError::NonNumeric {
                    line,
                    column: column + 1,
                    value: raw.to_string(),
                })
        };
        items.push(DataItem::new(name, parse(1)?, parse(2)?));
    }
    Dataset::from_items(items)
}

/// Writes a dataset back in the headerless three-column format.
pub fn write_csv<T: Scalar>(dataset: &Dataset<T>) -> String {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for it in &dataset.items {
        writer
            .write_record([it.name.as_str(), &it.v1.to_string(), &it.v2.to_string()])
            .expect("writing to memory");
    }
    let bytes = writer.into_inner().expect("flush to memory");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grade_example() {
        let ds = parse_csv::<f64>(b"alice,60,85\n").unwrap();
        assert_eq!(ds.items, vec![DataItem::new("alice", 60.0, 85.0)]);
        assert_eq!(ds.items[0].d, 25.0);
        assert_eq!((ds.range.lo, ds.range.hi), (60.0, 85.0));
    }

    #[test]
    fn keeps_order_and_computes_extrema() {
        let ds = parse_csv::<f64>(b"b,3,9\na,-2,4\nc,5,5\n").unwrap();
        let names: Vec<_> = ds.items.iter().map(|i| i.name.as_str()).collect();
        assert_eq!(names, ["b", "a", "c"]);
        assert_eq!((ds.range.lo, ds.range.hi), (-2.0, 9.0));
    }

    #[test]
    fn rejects_degenerate_range() {
        assert!(matches!(
            parse_csv::<f64>(b"a,1,1\n"),
            Err(LayoutError::DegenerateRange { .. })
        ));
    }

    #[test]
    fn rejects_short_row_with_line_number() {
        assert!(matches!(
            parse_csv::<f64>(b"a,1\n"),
            Err(LayoutError::FieldCount { line: 1, found: 2 })
        ));
        assert!(matches!(
            parse_csv::<f64>(b"a,1,2\nb,3,4,5\n"),
            Err(LayoutError::FieldCount { line: 2, found: 4 })
        ));
    }

    #[test]
    fn rejects_header_row_and_non_numeric() {
        let err = parse_csv::<f64>(b"name,series1,series2\na,1,2\n").unwrap_err();
        assert!(matches!(
            err,
            LayoutError::NonNumeric {
                line: 1,
                column: 2,
                ..
            }
        ));
        let err = parse_csv::<f64>(b"a,1,2\nb,x,2\n").unwrap_err();
        assert!(matches!(err, LayoutError::NonNumeric { line: 2, .. }));
        assert!(err.to_string().contains("line 2"));
        let err = parse_csv::<f64>(b"a,1,NaN\n").unwrap_err();
        assert!(matches!(
            err,
            LayoutError::NonNumeric {
                line: 1,
                column: 3,
                ..
            }
        ));
    }

    #[test]
    fn rejects_empty_input_and_names() {
        assert!(matches!(parse_csv::<f64>(b""), Err(LayoutError::Empty)));
        assert!(matches!(
            parse_csv::<f64>(b"a,1,2\n,3,4\n"),
            Err(LayoutError::EmptyNameAt { line: 2 })
        ));
    }

    #[test]
    fn write_then_parse_round_trips() {
        let ds = parse_csv::<f64>(b"alice,60,85\n\"smith, j\",0.1,99.25\n").unwrap();
        let back = parse_csv::<f64>(write_csv(&ds).as_bytes()).unwrap();
        assert_eq!(ds, back);
    }

    #[test]
    fn fixed_range_rejects_outside_values() {
        let range = AxisRange::new(0.0, 100.0).unwrap();
        let err = Dataset::with_range(vec![DataItem::new("x", 10.0, 120.0)], range).unwrap_err();
        assert!(err.to_string().contains("x"));
    }
}

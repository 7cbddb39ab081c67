//! Synthetic benchmark datasets: three scale levels of five sizes each, crossed
//! with nine Gaussian parameterizations per series, 1215 datasets in all.
//!
//! Every spec carries its own seed, derived from the base seed and the spec's
//! ordinal in the enumeration, so any single dataset can be regenerated alone.
//!
//! Sampling is pinned as follows. The generator is ChaCha8 seeded through
//! `SeedableRng::seed_from_u64(spec.seed)`. For each item in order, one
//! standard normal variate is drawn for series 1 and then one for series 2
//! (`rand_distr::StandardNormal`, a ziggurat sampler), scaled as
//! `mu + sigma * z`, and clamped to `[0, 100]`. Out-of-range draws are clamped
//! rather than redrawn, so the number of draws is always `2 n`.

use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::geometry::AxisRange;
use crate::layout::{write_csv, DataItem, Dataset};

pub const VALUE_MIN: f64 = 0.0;
pub const VALUE_MAX: f64 = 100.0;
pub const MEANS: [f64; 3] = [25.0, 50.0, 75.0];
pub const SIGMAS: [f64; 3] = [5.0, 10.0, 20.0];
pub const TOTAL_SPECS: usize = 1215;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleLevel {
    Small,
    Medium,
    Large,
}

impl ScaleLevel {
    pub const ALL: [ScaleLevel; 3] = [ScaleLevel::Small, ScaleLevel::Medium, ScaleLevel::Large];

    pub fn sizes(self) -> [usize; 5] {
        let base = match self {
            ScaleLevel::Small => 5,
            ScaleLevel::Medium => 100,
            ScaleLevel::Large => 200,
        };
        std::array::from_fn(|i| base + 5 * i)
    }

    pub fn name(self) -> &'static str {
        match self {
            ScaleLevel::Small => "small",
            ScaleLevel::Medium => "medium",
            ScaleLevel::Large => "large",
        }
    }
}

impl fmt::Display for ScaleLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub ordinal: usize,
    pub scale_level: ScaleLevel,
    pub n: usize,
    pub mu1: f64,
    pub sigma1: f64,
    pub mu2: f64,
    pub sigma2: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn file_name(&self) -> String {
        format!("ig_{:04}_{}_{}.csv", self.ordinal, self.scale_level, self.n)
    }

    pub fn id(&self) -> String {
        format!("ig_{:04}", self.ordinal)
    }
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn spec_seed(base_seed: u64, ordinal: usize) -> u64 {
    mix(base_seed ^ mix(ordinal as u64))
}

/// The full grid in lexicographic order of (scale, n, mu1, sigma1, mu2, sigma2).
pub fn enumerate_specs(base_seed: u64) -> Vec<GenSpec> {
    let mut specs = Vec::with_capacity(TOTAL_SPECS);
    for scale_level in ScaleLevel::ALL {
        for n in scale_level.sizes() {
            for mu1 in MEANS {
                for sigma1 in SIGMAS {
                    for mu2 in MEANS {
                        for sigma2 in SIGMAS {
                            let ordinal = specs.len();
                            specs.push(GenSpec {
                                ordinal,
                                scale_level,
                                n,
                                mu1,
                                sigma1,
                                mu2,
                                sigma2,
                                seed: spec_seed(base_seed, ordinal),
                            });
                        }
                    }
                }
            }
        }
    }
    specs
}

/// One size per scale level (the smallest), all 81 distribution pairs each.
pub fn reduced_specs(base_seed: u64) -> Vec<GenSpec> {
    let firsts: Vec<usize> = ScaleLevel::ALL.iter().map(|s| s.sizes()[0]).collect();
    enumerate_specs(base_seed)
        .into_iter()
        .filter(|s| firsts.contains(&s.n))
        .collect()
}

pub fn generate(spec: &GenSpec) -> Dataset<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut draw = |mu: f64, sigma: f64| {
        let z: f64 = rng.sample(StandardNormal);
        (mu + sigma * z).clamp(VALUE_MIN, VALUE_MAX)
    };
    let items = (1..=spec.n)
        .map(|i| {
            let v1 = draw(spec.mu1, spec.sigma1);
            let v2 = draw(spec.mu2, spec.sigma2);
            DataItem::new(format!("item_{i:04}"), v1, v2)
        })
        .collect();
    let range = AxisRange::new(VALUE_MIN, VALUE_MAX).expect("fixed range");
    Dataset::with_range(items, range).expect("clamped values lie in range")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    #[serde(flatten)]
    pub spec: GenSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub base_seed: u64,
    pub range: [f64; 2],
    pub datasets: Vec<ManifestEntry>,
}

/// Writes one CSV per spec plus `manifest.json` into `dir`.
pub fn write_datasets(dir: &Path, specs: &[GenSpec], base_seed: u64) -> std::io::Result<Manifest> {
    std::fs::create_dir_all(dir)?;
    let mut datasets = Vec::with_capacity(specs.len());
    for spec in specs {
        let file = spec.file_name();
        std::fs::write(dir.join(&file), write_csv(&generate(spec)))?;
        datasets.push(ManifestEntry { file, spec: *spec });
    }
    let manifest = Manifest {
        base_seed,
        range: [VALUE_MIN, VALUE_MAX],
        datasets,
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(std::io::Error::other)?;
    std::fs::write(dir.join("manifest.json"), json + "\n")?;
    Ok(manifest)
}

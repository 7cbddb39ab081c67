use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::StatsError;

/// Largest effective sample size tested with the exact null distribution.
pub const EXACT_CUTOFF: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    NormalApprox,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonResult {
    pub w_plus: f64,
    pub n_effective: usize,
    pub p_two_sided: f64,
    pub method: Method,
}

/// Midranks (1-based) of `values`, ties sharing the mean of their positions.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let rank = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = rank;
        }
        start = end;
    }
    ranks
}

/// Paired two-sided Wilcoxon signed-rank test of `xs` against `ys`.
///
/// Zero differences are dropped and tied magnitudes get midranks. Up to
/// [`EXACT_CUTOFF`] non-zero pairs the null distribution of `W+` is built
/// exactly over all sign assignments; above it a normal approximation with
/// tie-corrected variance and continuity correction is used.
pub fn wilcoxon_signed_rank(xs: &[f64], ys: &[f64]) -> Result<WilcoxonResult, StatsError> {
    wilcoxon_signed_rank_with(xs, ys, None)
}

/// Same test with the p-value method forced; `None` picks it by sample size.
/// The exact distribution grows as `O(n^3)`, so forcing it on large samples is slow.
pub fn wilcoxon_signed_rank_with(
    xs: &[f64],
    ys: &[f64],
    method: Option<Method>,
) -> Result<WilcoxonResult, StatsError> {
    if xs.len() != ys.len() {
        return Err(StatsError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(StatsError::TooFew {
            needed: 2,
            got: xs.len(),
        });
    }
    let diffs: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x - y).collect();
    if diffs.iter().any(|d| !d.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let nonzero: Vec<f64> = diffs.into_iter().filter(|&d| d != 0.0).collect();
    if nonzero.is_empty() {
        return Err(StatsError::AllZeroDifferences);
    }
    let n = nonzero.len();
    let magnitudes: Vec<f64> = nonzero.iter().map(|d| d.abs()).collect();
    let ranks = midranks(&magnitudes);
    let w_plus: f64 = ranks
        .iter()
        .zip(&nonzero)
        .filter(|(_, &d)| d > 0.0)
        .map(|(r, _)| r)
        .sum();

    let method = method.unwrap_or(if n <= EXACT_CUTOFF {
        Method::Exact
    } else {
        Method::NormalApprox
    });
    let p_two_sided = match method {
        Method::Exact => exact_p(&ranks, w_plus),
        Method::NormalApprox => normal_p(&magnitudes, n, w_plus),
    };
    Ok(WilcoxonResult {
        w_plus,
        n_effective: n,
        p_two_sided,
        method,
    })
}

/// Exact two-sided p-value. Doubled midranks are integers, so the null
/// distribution is a subset-sum count over them.
fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0f64; total + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            let c = counts[s];
            if c != 0.0 {
                counts[s + r] += c;
            }
        }
        reach += r;
    }
    let w2 = (2.0 * w_plus).round() as usize;
    let all = 2f64.powi(ranks.len() as i32);
    let lower: f64 = counts[..=w2].iter().sum();
    let upper: f64 = counts[w2..].iter().sum();
    (2.0 * (lower.min(upper) / all)).min(1.0)
}

fn normal_p(magnitudes: &[f64], n: usize, w_plus: f64) -> f64 {
    let n_f = n as f64;
    let mean = n_f * (n_f + 1.0) / 4.0;
    let mut sorted = magnitudes.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    for group in sorted.chunk_by(|a, b| a == b) {
        let t = group.len() as f64;
        tie_term += t * t * t - t;
    }
    let var = n_f * (n_f + 1.0) * (2.0 * n_f + 1.0) / 24.0 - tie_term / 48.0;
    let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * normal.sf(z)).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Brute-force null distribution: every one of the 2^n sign patterns.
    fn enumerate_p(ranks: &[f64], w_plus: f64) -> f64 {
        let n = ranks.len();
        let (mut lo, mut hi) = (0u64, 0u64);
        for mask in 0u64..(1 << n) {
            let w: f64 = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ranks[i])
                .sum();
            if w <= w_plus + 1e-9 {
                lo += 1;
            }
            if w >= w_plus - 1e-9 {
                hi += 1;
            }
        }
        (2.0 * lo.min(hi) as f64 / (1u64 << n) as f64).min(1.0)
    }

    #[test]
    fn all_positive_five() {
        let r = wilcoxon_signed_rank(&[1.0, 2.0, 3.0, 4.0, 5.0], &[0.0; 5]).unwrap();
        assert_eq!(r.w_plus, 15.0);
        assert_eq!(r.method, Method::Exact);
        assert_abs_diff_eq!(r.p_two_sided, 0.0625, epsilon = 1e-15);
    }

    #[test]
    fn symmetric_statistic_gives_p_one() {
        // ranks 1..4, positives {1, 4}: W+ = 5 = E[W]
        let r = wilcoxon_signed_rank(&[1.0, -2.0, -3.0, 4.0], &[0.0; 4]).unwrap();
        assert_eq!(r.w_plus, 5.0);
        assert_eq!(r.p_two_sided, 1.0);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0, 2.0], &[1.0, 2.0]),
            Err(StatsError::AllZeroDifferences)
        ));
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0], &[0.0]),
            Err(StatsError::TooFew { .. })
        ));
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0, 2.0], &[0.0]),
            Err(StatsError::LengthMismatch(2, 1))
        ));
    }

    #[test]
    fn zeros_are_dropped() {
        let r = wilcoxon_signed_rank(
            &[1.0, 2.0, 3.0, 4.0, 5.0, 7.0],
            &[0.0, 0.0, 0.0, 0.0, 0.0, 7.0],
        )
        .unwrap();
        assert_eq!(r.n_effective, 5);
        assert_eq!(r.w_plus, 15.0);
    }

    #[test]
    fn midranks_with_ties() {
        assert_eq!(midranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
        assert_eq!(midranks(&[5.0, 5.0, 5.0]), vec![2.0, 2.0, 2.0]);
    }

    #[test]
    fn large_samples_use_normal_approximation() {
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.5 + 1.0).collect();
        let r = wilcoxon_signed_rank(&xs, &vec![0.0; 40]).unwrap();
        assert_eq!(r.method, Method::NormalApprox);
        assert!(r.p_two_sided < 1e-6);
    }

    proptest! {
        #[test]
        fn exact_matches_sign_enumeration(ds in prop::collection::vec(prop_oneof![-5i32..=-1, 1i32..=5], 2..12)) {
            let xs: Vec<f64> = ds.iter().map(|&d| d as f64).collect();
            let r = wilcoxon_signed_rank(&xs, &vec![0.0; xs.len()]).unwrap();
            let ranks = midranks(&xs.iter().map(|d| d.abs()).collect::<Vec<_>>());
            prop_assert!((r.p_two_sided - enumerate_p(&ranks, r.w_plus)).abs() < 1e-12);
        }

        #[test]
        fn swapping_arguments_mirrors_statistic(xs in prop::collection::vec(-100.0f64..100.0, 2..40)) {
            let ys: Vec<f64> = xs.iter().enumerate().map(|(i, x)| x * 0.5 + (i as f64) * 1e-3 + 0.1).collect();
            let a = wilcoxon_signed_rank(&xs, &ys).unwrap();
            let b = wilcoxon_signed_rank(&ys, &xs).unwrap();
            let n = a.n_effective as f64;
            prop_assert!((a.w_plus + b.w_plus - n * (n + 1.0) / 2.0).abs() < 1e-9);
            prop_assert!((a.p_two_sided - b.p_two_sided).abs() < 1e-12);
        }
    }
}

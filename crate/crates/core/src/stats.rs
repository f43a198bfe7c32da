//! Small statistical helpers used by validation.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::combinatorics::ln_factorial;

/// Compensated (Neumaier) summation.
pub fn neumaier_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (mut s, mut comp) = (0.0f64, 0.0f64);
    for x in xs {
        let t = s + x;
        comp += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + comp
}

/// Sample mean and unbiased variance.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Standard error of the sample mean.
pub fn standard_error(xs: &[f64]) -> f64 {
    let (_, var) = mean_var(xs);
    (var / xs.len() as f64).sqrt()
}

/// Result of comparing a sample mean against a prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanCheck {
    pub empirical_mean: f64,
    pub predicted: f64,
    pub standard_error: f64,
    pub z_score: f64,
    pub bands: f64,
    pub pass: bool,
}

/// Passes when `|mean - predicted| <= bands * se`. A zero standard error
/// (all samples equal) passes only on an exact match up to `1e-12`.
pub fn mean_within_bands(xs: &[f64], predicted: f64, bands: f64) -> MeanCheck {
    let (mean, _) = mean_var(xs);
    let se = standard_error(xs);
    let diff = mean - predicted;
    let z_score = if se > 0.0 { diff / se } else if diff.abs() <= 1e-12 { 0.0 } else { f64::INFINITY.copysign(diff) };
    MeanCheck {
        empirical_mean: mean,
        predicted,
        standard_error: se,
        z_score,
        bands,
        pass: z_score.abs() <= bands,
    }
}

pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    if lambda == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    (k as f64 * lambda.ln() - lambda - ln_factorial(k)).exp()
}

/// Total variation distance between an empirical frequency vector (summing
/// to 1) and `Poisson(lambda)`, including the Poisson tail beyond the vector.
pub fn tv_distance_poisson(freqs: &[f64], lambda: f64) -> f64 {
    let mut covered = 0.0;
    let mut acc = 0.0;
    for (k, &f) in freqs.iter().enumerate() {
        let q = poisson_pmf(lambda, k as u64);
        covered += q;
        acc += (f - q).abs();
    }
    0.5 * (acc + (1.0 - covered).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

impl ChiSquareResult {
    pub fn rejects_at(&self, level: f64) -> bool {
        self.p_value < level
    }

    /// Sums independent statistics (and their degrees of freedom).
    pub fn combine(parts: &[ChiSquareResult]) -> ChiSquareResult {
        let statistic = parts.iter().map(|c| c.statistic).sum();
        let dof = parts.iter().map(|c| c.dof).sum();
        ChiSquareResult {
            statistic,
            dof,
            p_value: chi_square_sf(statistic, dof),
        }
    }
}

pub fn chi_square_sf(statistic: f64, dof: u64) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    match ChiSquared::new(dof as f64) {
        Ok(d) => d.sf(statistic),
        Err(_) => f64::NAN,
    }
}

/// Two-sample chi-square homogeneity test on integer samples.
///
/// Values are binned so that every bin has a pooled expected count of at
/// least `min_expected` in each sample (adjacent sparse values are merged;
/// a sparse last bin is merged into its predecessor).
pub fn chi_square_two_sample(xs: &[u64], ys: &[u64], min_expected: f64) -> ChiSquareResult {
    let max = xs.iter().chain(ys).copied().max().unwrap_or(0) as usize;
    let mut cx = vec![0f64; max + 1];
    let mut cy = vec![0f64; max + 1];
    for &x in xs {
        cx[x as usize] += 1.0;
    }
    for &y in ys {
        cy[y as usize] += 1.0;
    }
    let (nx, ny) = (xs.len() as f64, ys.len() as f64);
    let total = nx + ny;
    let min_share = min_expected / nx.min(ny);

    let mut bins: Vec<(f64, f64)> = Vec::new();
    let mut cur = (0.0, 0.0);
    for v in 0..=max {
        cur.0 += cx[v];
        cur.1 += cy[v];
        if (cur.0 + cur.1) / total >= min_share {
            bins.push(cur);
            cur = (0.0, 0.0);
        }
    }
    if cur.0 + cur.1 > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += cur.0;
                last.1 += cur.1;
            }
            None => bins.push(cur),
        }
    }
    if bins.len() < 2 {
        return ChiSquareResult {
            statistic: 0.0,
            dof: 0,
            p_value: 1.0,
        };
    }
    let mut statistic = 0.0;
    for &(ox, oy) in &bins {
        let pooled = (ox + oy) / total;
        let (ex, ey) = (pooled * nx, pooled * ny);
        statistic += (ox - ex).powi(2) / ex + (oy - ey).powi(2) / ey;
    }
    let dof = bins.len() as u64 - 1;
    ChiSquareResult {
        statistic,
        dof,
        p_value: chi_square_sf(statistic, dof),
    }
}

/// Pearson correlation coefficient.
pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, vx) = mean_var(xs);
    let (my, vy) = mean_var(ys);
    let n = xs.len() as f64;
    let cov = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / (n - 1.0);
    cov / (vx * vy).sqrt()
}

//! WebAssembly bindings behind `www/index.html`. Each export returns a JSON
//! string; the plain Rust functions underneath are what the tests call.

use kronecker::generator::{degree_histogram, generate_stratified};
use kronecker::patterns::{base_value, cycle_base_value, star_base_value};
use kronecker::predict::{bisect, classify_regime, critical_fraction, exact_degree_counts, psi, FractionSide};
use kronecker::{KroneckerParams, PatternGraph, SeedSpec};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest `n` the page may ask to sample.
pub const MAX_DEMO_N: u32 = 16;
pub const MAX_DEMO_TRIALS: u32 = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeDemo {
    pub degrees: Vec<u32>,
    pub empirical: Vec<f64>,
    pub predicted: Vec<f64>,
    pub regime: Vec<String>,
    pub edges_per_trial: f64,
}

/// Mean degree histogram over `trials` stratified samples next to the exact
/// expected counts.
pub fn degree_demo(alpha: f64, beta: f64, gamma: f64, n: u32, trials: u32, seed: u64) -> Result<DegreeDemo, String> {
    if n > MAX_DEMO_N {
        return Err(format!("the demo samples up to n = {MAX_DEMO_N}"));
    }
    if trials == 0 || trials > MAX_DEMO_TRIALS {
        return Err(format!("trials must be between 1 and {MAX_DEMO_TRIALS}"));
    }
    let p = KroneckerParams::new(alpha, beta, gamma, n).map_err(|e| e.to_string())?;
    let mut sums: Vec<f64> = Vec::new();
    let mut edges = 0.0;
    for t in 0..trials {
        let g = generate_stratified(&p, true, SeedSpec::new(seed).child(u64::from(t))).map_err(|e| e.to_string())?;
        edges += (g.edge_count() + g.loops().len()) as f64;
        for (d, c) in degree_histogram(&g, true) {
            let d = d as usize;
            if sums.len() <= d {
                sums.resize(d + 1, 0.0);
            }
            sums[d] += c as f64;
        }
    }
    let max_d = sums.len().saturating_sub(1);
    let predicted = exact_degree_counts(&p, true, max_d).map_err(|e| e.to_string())?;
    Ok(DegreeDemo {
        degrees: (0..=max_d as u32).collect(),
        empirical: sums.iter().map(|s| s / f64::from(trials)).collect(),
        predicted,
        regime: (0..=3).map(|d| classify_regime(&p, d).describe()).collect(),
        edges_per_trial: edges / f64::from(trials),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiDemo {
    pub c: Vec<f64>,
    pub psi: Vec<f64>,
    pub peak: f64,
    pub critical: Option<f64>,
    /// `below`, `above` or absent.
    pub side: Option<String>,
}

/// `psi(c)` on `(0, 1)` for `alpha = gamma`, with the root of `psi = 1/2`.
pub fn psi_demo(alpha: f64, beta: f64, points: u32) -> Result<PsiDemo, String> {
    let p = KroneckerParams::new(alpha, beta, alpha, 1).map_err(|e| e.to_string())?;
    let points = points.clamp(2, 2000);
    let c: Vec<f64> = (1..=points).map(|i| f64::from(i) / f64::from(points + 1)).collect();
    let values = c.iter().map(|&x| psi(&p, x)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let (critical, side) = if alpha + beta > 1.0 {
        let cf = critical_fraction(&p).map_err(|e| e.to_string())?;
        let side = cf.side.map(|s| match s {
            FractionSide::Below => "below".to_string(),
            FractionSide::Above => "above".to_string(),
        });
        (cf.c, side)
    } else {
        (None, None)
    };
    Ok(PsiDemo {
        c,
        psi: values,
        peak: beta / (alpha + beta),
        critical,
        side,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdDemo {
    pub alpha: Vec<f64>,
    pub cycle: Vec<f64>,
    pub star: Vec<f64>,
    pub cycle_crossing: Option<f64>,
    pub star_crossing: Option<f64>,
}

fn crossing(f: impl Fn(f64) -> f64) -> Option<f64> {
    let (lo, hi) = (1e-9, 1.0 - 1e-9);
    (f(lo) < 0.0 && f(hi) > 0.0).then(|| bisect(f, lo, hi, 1e-13))
}

/// Base values of `C_k` and `K_{1,k}` along `alpha = gamma` with `beta`
/// fixed, and where each crosses 1.
pub fn threshold_demo(beta: f64, k: u32, points: u32) -> Result<ThresholdDemo, String> {
    if !(3..=12).contains(&k) {
        return Err("k must be between 3 and 12".into());
    }
    let at = |a: f64| KroneckerParams::new(a, beta, a, 1).map_err(|e| e.to_string());
    at(0.5)?;
    let points = points.clamp(2, 2000);
    let alpha: Vec<f64> = (1..=points).map(|i| f64::from(i) / f64::from(points + 1)).collect();
    let mut cycle = Vec::with_capacity(alpha.len());
    let mut star = Vec::with_capacity(alpha.len());
    for &a in &alpha {
        let p = at(a)?;
        cycle.push(cycle_base_value(&p, k).map_err(|e| e.to_string())?);
        star.push(star_base_value(&p, k).map_err(|e| e.to_string())?);
    }
    let value = |a: f64, f: fn(&KroneckerParams, u32) -> kronecker::Result<f64>| {
        at(a).ok().and_then(|p| f(&p, k).ok()).map_or(f64::NAN, |b| b - 1.0)
    };
    Ok(ThresholdDemo {
        alpha,
        cycle,
        star,
        cycle_crossing: crossing(|a| value(a, cycle_base_value)),
        star_crossing: crossing(|a| value(a, star_base_value)),
    })
}

/// Base value of a pattern given in the text or builtin format.
pub fn pattern_base_value(alpha: f64, beta: f64, gamma: f64, pattern: &str) -> Result<f64, String> {
    let p = KroneckerParams::new(alpha, beta, gamma, 1).map_err(|e| e.to_string())?;
    let g = PatternGraph::parse(pattern).map_err(|e| e.to_string())?;
    base_value(&p, &g).map_err(|e| e.to_string())
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&v).map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = degreeDemo)]
pub fn degree_demo_js(alpha: f64, beta: f64, gamma: f64, n: u32, trials: u32, seed: u32) -> Result<String, JsError> {
    to_js(degree_demo(alpha, beta, gamma, n, trials, u64::from(seed)))
}

#[wasm_bindgen(js_name = psiDemo)]
pub fn psi_demo_js(alpha: f64, beta: f64, points: u32) -> Result<String, JsError> {
    to_js(psi_demo(alpha, beta, points))
}

#[wasm_bindgen(js_name = thresholdDemo)]
pub fn threshold_demo_js(beta: f64, k: u32, points: u32) -> Result<String, JsError> {
    to_js(threshold_demo(beta, k, points))
}

#[wasm_bindgen(js_name = patternBaseValue)]
pub fn pattern_base_value_js(alpha: f64, beta: f64, gamma: f64, pattern: &str) -> Result<f64, JsError> {
    pattern_base_value(alpha, beta, gamma, pattern).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_demo_tracks_prediction() {
        let d = degree_demo(0.5, 0.5, 0.5, 10, 20, 1).unwrap();
        assert_eq!(d.empirical.len(), d.predicted.len());
        let total: f64 = d.empirical.iter().sum();
        assert!((total - 1024.0).abs() < 1e-9);
        assert!((d.empirical[0] - d.predicted[0]).abs() < 0.1 * d.predicted[0]);
        assert!(d.regime[1].contains("Poisson(1)"));
        assert!(degree_demo(0.5, 0.5, 0.5, 17, 1, 1).is_err());
        assert!(degree_demo(0.5, 0.5, 0.5, 8, 0, 1).is_err());
    }

    #[test]
    fn psi_demo_root() {
        let d = psi_demo(0.4, 0.7, 99).unwrap();
        let c = d.critical.unwrap();
        assert_eq!(d.side.as_deref(), Some("below"));
        assert!(c < d.peak);
        let p = KroneckerParams::new(0.4, 0.7, 0.4, 1).unwrap();
        assert!((psi(&p, c).unwrap() - 0.5).abs() < 1e-9);
        assert!(psi_demo(0.6, 0.6, 10).unwrap().critical.is_none());
        assert!(psi_demo(0.3, 0.4, 10).unwrap().side.is_none());
    }

    #[test]
    fn threshold_demo_crossings() {
        let d = threshold_demo(0.3, 4, 50).unwrap();
        let a = d.cycle_crossing.unwrap();
        assert!(((a + 0.3f64).powi(4) + (a - 0.3f64).powi(4) - 1.0).abs() < 1e-10);
        let s = d.star_crossing.unwrap();
        assert!((2.0 * (s + 0.3f64).powi(4) - 1.0).abs() < 1e-10);
        assert!(threshold_demo(0.3, 2, 10).is_err());
    }

    #[test]
    fn pattern_values() {
        let b = pattern_base_value(0.6, 0.3, 0.6, "cycle:3").unwrap();
        assert!((b - (0.9f64.powi(3) + 0.3f64.powi(3))).abs() < 1e-12);
        assert!(pattern_base_value(0.6, 0.3, 0.6, "blob").is_err());
    }
}

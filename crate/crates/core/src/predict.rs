//! Closed-form predictions for `K(n, P)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, ln_binomial, ln_factorial};
use crate::error::{Error, Result};
use crate::model::{KroneckerParams, PARAM_TOL};

/// First and second moments of the degree of a weight-`w` vertex
/// (loop term included).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeMoments {
    pub weight: u32,
    pub mean: f64,
    pub sum_sq_probs: f64,
    pub variance: f64,
}

pub fn degree_moments(p: &KroneckerParams, w: u32) -> Result<DegreeMoments> {
    let n = p.n();
    if w > n {
        return Err(Error::param(format!("weight {w} exceeds n = {n}")));
    }
    let (a, b, c) = (p.alpha(), p.beta(), p.gamma());
    let (w_f, rest) = (f64::from(w), f64::from(n - w));
    let mean = (w_f * (a + b).ln() + rest * (b + c).ln()).exp();
    let sum_sq_probs = (w_f * (a * a + b * b).ln() + rest * (b * b + c * c).ln()).exp();
    Ok(DegreeMoments {
        weight: w,
        mean,
        sum_sq_probs,
        variance: mean - sum_sq_probs,
    })
}

/// Mean degree of a weight-`w` vertex, `(alpha+beta)^w (beta+gamma)^(n-w)`.
pub fn mean_degree(p: &KroneckerParams, w: u32) -> f64 {
    let (w_f, rest) = (f64::from(w), f64::from(p.n() - w.min(p.n())));
    (w_f * (p.alpha() + p.beta()).ln() + rest * (p.beta() + p.gamma()).ln()).exp()
}

fn ln_poisson(lambda: f64, d: u64) -> f64 {
    d as f64 * lambda.ln() - lambda - ln_factorial(d)
}

/// Poisson-mixture prediction of the number of degree-`d` vertices:
/// `sum_w C(n,w) lambda_w^d e^(-lambda_w) / d!`.
pub fn expected_degree_count(p: &KroneckerParams, d: u64) -> f64 {
    let n = p.n();
    (0..=n)
        .map(|w| {
            let lambda = mean_degree(p, w);
            (ln_binomial(u64::from(n), u64::from(w)) + ln_poisson(lambda, d)).exp()
        })
        .sum()
}

/// Exact expected number of degree-`d` vertices (no Poisson approximation):
/// the degree of a weight-`w` vertex is a sum of independent Bernoullis, one
/// per pair class, whose distribution is computed by convolution.
///
/// Returns the full vector for `d = 0..=max_d`. Cost grows like `n^3 * max_d`.
pub fn exact_degree_counts(p: &KroneckerParams, include_loops: bool, max_d: usize) -> Result<Vec<f64>> {
    let n = p.n();
    if n > 20 {
        return Err(Error::capacity("exact degree distribution is limited to n <= 20"));
    }
    let mut total = vec![0.0; max_d + 1];
    for w in 0..=n {
        let dist = exact_degree_distribution(p, w, include_loops, max_d)?;
        let mult = binomial(u64::from(n), u64::from(w)).unwrap_or(0) as f64;
        for (t, x) in total.iter_mut().zip(dist) {
            *t += mult * x;
        }
    }
    Ok(total)
}

/// Distribution of the degree of one weight-`w` vertex, truncated at `max_d`.
pub fn exact_degree_distribution(
    p: &KroneckerParams,
    w: u32,
    include_loops: bool,
    max_d: usize,
) -> Result<Vec<f64>> {
    let n = p.n();
    if w > n {
        return Err(Error::param(format!("weight {w} exceeds n = {n}")));
    }
    // a partner agreeing on i of the w ones and j of the n-w zeros
    let mut dist = vec![0.0; max_d + 1];
    dist[0] = 1.0;
    for i in 0..=w {
        for j in 0..=(n - w) {
            let pr = p.alpha().powi(i as i32)
                * p.beta().powi((w - i + (n - w - j)) as i32)
                * p.gamma().powi(j as i32);
            let mut count = binomial(u64::from(w), u64::from(i)).unwrap_or(0)
                * binomial(u64::from(n - w), u64::from(j)).unwrap_or(0);
            if i == w && j == n - w && !include_loops {
                count -= 1;
            }
            for _ in 0..count {
                for d in (0..=max_d).rev() {
                    let from_below = if d > 0 { dist[d - 1] * pr } else { 0.0 };
                    dist[d] = dist[d] * (1.0 - pr) + from_below;
                }
            }
        }
    }
    Ok(dist)
}

/// Cases of the degree-count regime split, after normalizing so that
/// `x = max(alpha+beta, beta+gamma)` and `y = min(...)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegimeCase {
    /// `y < x = 1`
    Case1,
    /// `y = 1 < x`
    Case2,
    /// `y < 1 < x`, with the sub-case from comparing `c1` and `c2`
    Case3(Case3Split),
    /// `y <= x < 1`
    Case4,
    /// `1 < y <= x`
    Case5,
    /// `x = y = 1`
    Case6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case3Split {
    /// `c1 < c2`
    Below,
    /// `c1 = c2`
    Equal,
    /// `c1 > c2`
    Above,
}

impl RegimeCase {
    pub fn number(&self) -> u8 {
        match self {
            RegimeCase::Case1 => 1,
            RegimeCase::Case2 => 2,
            RegimeCase::Case3(_) => 3,
            RegimeCase::Case4 => 4,
            RegimeCase::Case5 => 5,
            RegimeCase::Case6 => 6,
        }
    }
}

impl fmt::Display for RegimeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegimeCase::Case3(Case3Split::Below) => write!(f, "case 3 (i)"),
            RegimeCase::Case3(Case3Split::Equal) => write!(f, "case 3 (ii)"),
            RegimeCase::Case3(Case3Split::Above) => write!(f, "case 3 (iii)"),
            other => write!(f, "case {}", other.number()),
        }
    }
}

/// Growth order of the expected number of degree-`d` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DegreeOrder {
    /// `Theta(base^n)` with `base = (alpha+beta)^d + (beta+gamma)^d` (or its
    /// simplification when one of the sums is 1).
    Theta { base: f64 },
    /// `o(2^n)`.
    LittleO,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeVerdict {
    pub case: RegimeCase,
    pub order: DegreeOrder,
    pub power_law_possible: bool,
    /// The verdict rests on an equality (such as `x = 1` or `c1 = c2`) decided
    /// within tolerance, so a tiny perturbation could change the case.
    pub boundary: bool,
    /// `c1 = x^d / (x^d + y^d)` and `c2` solving `x^c y^(1-c) = 1` (case 3 only).
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub degree: u64,
}

impl RegimeVerdict {
    /// Human-readable verdict.
    pub fn describe(&self) -> String {
        let order = match self.order {
            DegreeOrder::Theta { base } => format!(
                "expected number of degree-{} vertices is Theta({base:.6}^n)",
                self.degree
            ),
            DegreeOrder::LittleO => format!(
                "expected number of degree-{} vertices is o(2^n)",
                self.degree
            ),
        };
        let law = if self.case == RegimeCase::Case6 {
            "degrees are asymptotically Poisson(1), not a power law"
        } else {
            "no power-law degree distribution"
        };
        let boundary = if self.boundary { " [boundary]" } else { "" };
        format!("{}: {order}; {law}{boundary}", self.case)
    }
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= PARAM_TOL
}

/// Root of `f` on `[lo, hi]` by bisection, given `f(lo)` and `f(hi)` of
/// opposite sign. Stops once the bracket is shorter than `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Which of the six regimes governs the count of degree-`d` vertices.
pub fn classify_regime(p: &KroneckerParams, d: u64) -> RegimeVerdict {
    let (mut x, mut y) = (p.alpha() + p.beta(), p.beta() + p.gamma());
    if y > x {
        std::mem::swap(&mut x, &mut y);
    }
    let x_one = near(x, 1.0);
    let y_one = near(y, 1.0);
    let xy_eq = near(x, y);
    let d_f = d as f64;
    let theta = |base: f64| DegreeOrder::Theta { base };
    let sum_base = x.powf(d_f) + y.powf(d_f);

    let mut boundary = x_one || y_one;
    let mut c1 = None;
    let mut c2 = None;
    let (case, order) = if x_one && y_one {
        (RegimeCase::Case6, theta(2.0))
    } else if x_one {
        (RegimeCase::Case1, theta(1.0 + y.powf(d_f)))
    } else if y_one {
        (RegimeCase::Case2, DegreeOrder::LittleO)
    } else if x < 1.0 {
        boundary |= xy_eq;
        (RegimeCase::Case4, theta(sum_base))
    } else if y > 1.0 {
        boundary |= xy_eq;
        (RegimeCase::Case5, DegreeOrder::LittleO)
    } else {
        let (lx, ly) = (x.ln(), y.ln());
        let v1 = 1.0 / (1.0 + (d_f * (ly - lx)).exp());
        // c lx + (1 - c) ly is increasing in c, negative at 0, positive at 1
        let v2 = bisect(|c| c * lx + (1.0 - c) * ly, 0.0, 1.0, 1e-15);
        c1 = Some(v1);
        c2 = Some(v2);
        if near(v1, v2) {
            boundary = true;
            (RegimeCase::Case3(Case3Split::Equal), theta(sum_base))
        } else if v1 < v2 {
            (RegimeCase::Case3(Case3Split::Below), theta(sum_base))
        } else {
            (RegimeCase::Case3(Case3Split::Above), DegreeOrder::LittleO)
        }
    };
    RegimeVerdict {
        case,
        order,
        power_law_possible: x_one && y_one,
        boundary,
        c1,
        c2,
        degree: d,
    }
}

/// `psi(c) = (beta/c)^c (alpha/(1-c))^(1-c)`.
pub fn psi(p: &KroneckerParams, c: f64) -> Result<f64> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::param(format!("psi needs c in (0, 1), got {c}")));
    }
    Ok(ln_psi(p.alpha(), p.beta(), c).exp())
}

fn ln_psi(alpha: f64, beta: f64, c: f64) -> f64 {
    c * (beta / c).ln() + (1.0 - c) * (alpha / (1.0 - c)).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FractionSide {
    /// `c < beta / (alpha + beta)`: edges are absent below `c n`.
    Below,
    /// `c > beta / (alpha + beta)`: edges are absent above `c n`.
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalFraction {
    pub c: Option<f64>,
    pub side: Option<FractionSide>,
}

pub const FRACTION_TOL: f64 = 1e-12;
const FRACTION_EPS: f64 = 1e-15;

/// The solution of `psi(c) = 1/2`, if one exists in `(0, 1)`.
pub fn critical_fraction(p: &KroneckerParams) -> Result<CriticalFraction> {
    p.require_symmetric("critical fraction")?;
    let (a, b) = (p.alpha(), p.beta());
    if a + b <= 1.0 {
        return Err(Error::param(format!(
            "critical fraction requires alpha + beta > 1, got {}",
            a + b
        )));
    }
    let peak = b / (a + b);
    let g = |c: f64| ln_psi(a, b, c) - 0.5f64.ln();
    if a < 0.5 {
        let c = bisect(g, FRACTION_EPS, peak, FRACTION_TOL);
        Ok(CriticalFraction {
            c: Some(c),
            side: Some(FractionSide::Below),
        })
    } else if b < 0.5 {
        let c = bisect(g, peak, 1.0 - FRACTION_EPS, FRACTION_TOL);
        Ok(CriticalFraction {
            c: Some(c),
            side: Some(FractionSide::Above),
        })
    } else {
        Ok(CriticalFraction { c: None, side: None })
    }
}

/// Expected number of neighbours at Hamming distance `k` of any vertex,
/// `C(n,k) alpha^(n-k) beta^k` (the loop at `k = 0`).
pub fn hamming_profile_prediction(p: &KroneckerParams, k: u32) -> Result<f64> {
    p.require_symmetric("Hamming profile")?;
    let n = p.n();
    if k > n {
        return Err(Error::param(format!("distance {k} exceeds n = {n}")));
    }
    Ok((ln_binomial(u64::from(n), u64::from(k))
        + f64::from(n - k) * p.alpha().ln()
        + f64::from(k) * p.beta().ln())
    .exp())
}

/// Half-width and centre of the concentration window for neighbour distances:
/// `beta n / (alpha+beta) +- sqrt(2 beta / (alpha+beta)) ln(n) sqrt(n)`.
pub fn hamming_window(p: &KroneckerParams) -> (f64, f64) {
    let n = f64::from(p.n());
    let frac = p.beta() / (p.alpha() + p.beta());
    (frac * n, (2.0 * frac).sqrt() * n.ln() * n.sqrt())
}

/// Expected number of non-loop edges whose endpoints are at Hamming distance
/// `k`, for `alpha == gamma`: `2^(n-1) C(n,k) alpha^(n-k) beta^k` (`k >= 1`).
pub fn expected_edges_at_distance(p: &KroneckerParams, k: u32) -> Result<f64> {
    if k == 0 {
        return Ok(0.0);
    }
    Ok(hamming_profile_prediction(p, k)? * 2f64.powi(p.n() as i32 - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(a: f64, b: f64, c: f64, n: u32) -> KroneckerParams {
        KroneckerParams::new(a, b, c, n).unwrap()
    }

    #[test]
    fn moments_examples() {
        let p = params(0.6, 0.4, 0.2, 1);
        assert_relative_eq!(degree_moments(&p, 1).unwrap().mean, 1.0, epsilon = 1e-15);
        let p = params(0.6, 0.4, 0.2, 3);
        assert_relative_eq!(degree_moments(&p, 2).unwrap().mean, 0.6, epsilon = 1e-14);
        assert!(degree_moments(&p, 4).is_err());
    }

    #[test]
    fn moments_match_brute_force() {
        let p = params(0.6, 0.4, 0.2, 3);
        let u = 0b011u64;
        let (mut s1, mut s2) = (0.0, 0.0);
        for v in 0..8 {
            let pr = crate::model::edge_probability(&p, p.vertex(u).unwrap(), p.vertex(v).unwrap()).unwrap();
            s1 += pr;
            s2 += pr * pr;
        }
        let m = degree_moments(&p, 2).unwrap();
        assert_relative_eq!(m.mean, s1, epsilon = 1e-14);
        assert_relative_eq!(m.sum_sq_probs, s2, epsilon = 1e-14);
    }

    #[test]
    fn case6_degree_count_is_poisson_one() {
        let p = params(0.6, 0.4, 0.6, 10);
        for d in 0..6u64 {
            let want = 1024.0 / (std::f64::consts::E * (1..=d).product::<u64>() as f64);
            assert_relative_eq!(expected_degree_count(&p, d), want, max_relative = 1e-12);
        }
    }

    #[test]
    fn degree_count_d0() {
        let p = params(0.7, 0.2, 0.4, 7);
        let want: f64 = (0..=7u32)
            .map(|w| binomial(7, u64::from(w)).unwrap() as f64 * (-mean_degree(&p, w)).exp())
            .sum();
        assert_relative_eq!(expected_degree_count(&p, 0), want, max_relative = 1e-12);
    }

    #[test]
    fn degree_count_per_vertex_oracle() {
        let p = params(0.7, 0.3, 0.3, 10);
        let mut want = 0.0;
        for v in 0u64..1024 {
            let w = v.count_ones() as i32;
            let lambda = 1.0f64.powi(w) * 0.6f64.powi(10 - w);
            want += lambda * lambda * (-lambda).exp() / 2.0;
        }
        assert_relative_eq!(expected_degree_count(&p, 2), want, max_relative = 1e-12);
    }

    #[test]
    fn degree_counts_sum_to_vertex_count() {
        let p = params(0.9, 0.6, 0.4, 9);
        let s: f64 = (0..200).map(|d| expected_degree_count(&p, d)).sum();
        assert!((s - 512.0).abs() < 1e-6);
    }

    #[test]
    fn exact_distribution_sums_to_one_and_has_right_mean() {
        let p = params(0.8, 0.5, 0.3, 6);
        for w in 0..=6 {
            let dist = exact_degree_distribution(&p, w, true, 64).unwrap();
            assert_relative_eq!(dist.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
            let mean: f64 = dist.iter().enumerate().map(|(d, x)| d as f64 * x).sum();
            assert_relative_eq!(mean, mean_degree(&p, w), epsilon = 1e-12);
            let var: f64 = dist.iter().enumerate().map(|(d, x)| (d as f64 - mean).powi(2) * x).sum();
            assert_relative_eq!(var, degree_moments(&p, w).unwrap().variance, epsilon = 1e-12);
        }
    }

    #[test]
    fn regime_examples() {
        let v = classify_regime(&params(0.7, 0.3, 0.3, 10), 3);
        assert_eq!(v.case, RegimeCase::Case1);
        match v.order {
            DegreeOrder::Theta { base } => assert_relative_eq!(base, 1.0 + 0.6f64.powi(3), epsilon = 1e-12),
            _ => panic!(),
        }
        assert!(!v.power_law_possible);

        let v = classify_regime(&params(0.8, 0.7, 0.8, 10), 2);
        assert_eq!(v.case, RegimeCase::Case5);
        assert_eq!(v.order, DegreeOrder::LittleO);

        let v = classify_regime(&params(0.5, 0.5, 0.5, 10), 1);
        assert_eq!(v.case, RegimeCase::Case6);
        assert!(v.power_law_possible);
        assert!(v.describe().contains("Poisson(1), not a power law"));

        assert_eq!(classify_regime(&params(0.5, 0.2, 0.3, 4), 1).case, RegimeCase::Case4);
        assert_eq!(classify_regime(&params(0.9, 0.5, 0.5, 4), 1).case, RegimeCase::Case2);
    }

    #[test]
    fn case3_subcases() {
        // x = 1.3, y = 0.6
        let p = params(0.8, 0.5, 0.1, 10);
        let (lx, ly) = (1.3f64.ln(), 0.6f64.ln());
        let c2 = -ly / (lx - ly);
        for d in 0..12u64 {
            let v = classify_regime(&p, d);
            assert_relative_eq!(v.c2.unwrap(), c2, epsilon = 1e-12);
            let c1 = 1.3f64.powi(d as i32) / (1.3f64.powi(d as i32) + 0.6f64.powi(d as i32));
            assert_relative_eq!(v.c1.unwrap(), c1, epsilon = 1e-12);
            let want = if c1 < c2 {
                RegimeCase::Case3(Case3Split::Below)
            } else {
                RegimeCase::Case3(Case3Split::Above)
            };
            assert_eq!(v.case, want);
        }
        assert_eq!(classify_regime(&p, 0).case, RegimeCase::Case3(Case3Split::Below));
        assert_eq!(classify_regime(&p, 5).case, RegimeCase::Case3(Case3Split::Above));
    }

    #[test]
    fn psi_examples() {
        let p = params(0.4, 0.7, 0.4, 10);
        assert_relative_eq!(psi(&p, 0.7 / 1.1).unwrap(), 1.1, epsilon = 1e-12);
        assert_relative_eq!(psi(&p, 1e-12).unwrap(), 0.4, epsilon = 1e-9);
        assert_relative_eq!(psi(&p, 1.0 - 1e-12).unwrap(), 0.7, epsilon = 1e-9);
        let want = (0.3 * (0.7f64 / 0.3).ln() + 0.7 * (0.4f64 / 0.7).ln()).exp();
        assert_relative_eq!(psi(&p, 0.3).unwrap(), want, epsilon = 1e-14);
        assert!(psi(&p, 0.0).is_err());
        assert!(psi(&p, 1.0).is_err());
    }

    #[test]
    fn critical_fraction_examples() {
        let p = params(0.4, 0.7, 0.4, 14);
        let cf = critical_fraction(&p).unwrap();
        let c = cf.c.unwrap();
        assert_eq!(cf.side, Some(FractionSide::Below));
        assert!(c > 0.0 && c < 0.7 / 1.1);
        assert!((psi(&p, c).unwrap() - 0.5).abs() <= 1e-9);

        let p = params(0.7, 0.4, 0.7, 14);
        let cf = critical_fraction(&p).unwrap();
        assert_eq!(cf.side, Some(FractionSide::Above));
        assert!(cf.c.unwrap() > 0.4 / 1.1);

        assert_eq!(critical_fraction(&params(0.6, 0.6, 0.6, 5)).unwrap().c, None);
        assert!(critical_fraction(&params(0.6, 0.3, 0.6, 5)).is_err());
        assert!(critical_fraction(&params(0.6, 0.6, 0.5, 5)).is_err());
    }

    #[test]
    fn hamming_profile() {
        let p = params(0.7, 0.5, 0.7, 14);
        assert_relative_eq!(hamming_profile_prediction(&p, 0).unwrap(), 0.7f64.powi(14), max_relative = 1e-12);
        let s: f64 = (0..=14).map(|k| hamming_profile_prediction(&p, k).unwrap()).sum();
        assert_relative_eq!(s, 1.2f64.powi(14), max_relative = 1e-12);
        let k = (0.5 * 14.0 / 1.2f64).round() as u32;
        let want = binomial(14, u64::from(k)).unwrap() as f64 * 0.7f64.powi(14 - k as i32) * 0.5f64.powi(k as i32);
        assert_relative_eq!(hamming_profile_prediction(&p, k).unwrap(), want, max_relative = 1e-12);
        assert!(hamming_profile_prediction(&p, 15).is_err());
        assert!(hamming_profile_prediction(&params(0.7, 0.5, 0.6, 14), 1).is_err());
    }

    #[test]
    fn psi_monotone_branches() {
        for &(a, b) in &[(0.4, 0.7), (0.7, 0.4), (0.55, 0.6), (0.2, 0.9)] {
            let peak = b / (a + b);
            let grid: Vec<f64> = (1..200).map(|i| i as f64 / 200.0).collect();
            for w in grid.windows(2) {
                let (l, r) = (ln_psi(a, b, w[0]), ln_psi(a, b, w[1]));
                if w[1] <= peak {
                    assert!(r > l);
                } else if w[0] >= peak {
                    assert!(r < l);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn regime_is_invariant_under_swap(a in 0.01f64..0.99, b in 0.01f64..0.99, c in 0.01f64..0.99, d in 0u64..10) {
            let p = params(a, b, c, 8);
            let v = classify_regime(&p, d);
            let s = classify_regime(&p.swapped(), d);
            prop_assert_eq!(v.case, s.case);
            prop_assert_eq!(v.power_law_possible, s.power_law_possible);
        }

        #[test]
        fn variance_below_mean(a in 0.01f64..0.99, b in 0.01f64..0.99, c in 0.01f64..0.99, n in 1u32..40, w in 0u32..40) {
            let p = params(a, b, c, n);
            let m = degree_moments(&p, w.min(n)).unwrap();
            prop_assert!(m.sum_sq_probs > 0.0 && m.variance > 0.0 && m.variance <= m.mean);
        }

        #[test]
        fn critical_fraction_root(a in 0.05f64..0.95, b in 0.05f64..0.95) {
            prop_assume!(a + b > 1.0 + 1e-6);
            let p = params(a, b, a, 10);
            let cf = critical_fraction(&p).unwrap();
            match cf.c {
                Some(c) => {
                    prop_assert!((psi(&p, c).unwrap() - 0.5).abs() <= 1e-9);
                    let peak = b / (a + b);
                    match cf.side.unwrap() {
                        FractionSide::Below => prop_assert!(c < peak),
                        FractionSide::Above => prop_assert!(c > peak),
                    }
                }
                None => prop_assert!(a >= 0.5 && b >= 0.5),
            }
        }
    }
}

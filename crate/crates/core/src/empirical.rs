//! Measurements on realized graphs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::map_blocks;
use crate::model::{Adjacency, KroneckerParams, SampledGraph, VertexId};
use crate::patterns::PatternGraph;
use crate::predict::{critical_fraction, expected_edges_at_distance, hamming_window, FractionSide};

/// Largest pattern matched by [`count_labeled_copies`].
pub const MAX_COUNT_PATTERN_VERTICES: usize = 5;
/// Largest host digit count for pattern counting.
pub const MAX_COUNT_HOST_DIGITS: u32 = 14;

fn check_count_limits(g: &SampledGraph, pattern: &PatternGraph) -> Result<()> {
    if pattern.vertex_count() > MAX_COUNT_PATTERN_VERTICES {
        return Err(Error::capacity(format!(
            "pattern counting supports at most {MAX_COUNT_PATTERN_VERTICES} pattern vertices"
        )));
    }
    if g.params().n() > MAX_COUNT_HOST_DIGITS {
        return Err(Error::capacity(format!(
            "pattern counting supports host graphs with n <= {MAX_COUNT_HOST_DIGITS}"
        )));
    }
    Ok(())
}

/// Number of injective maps from the pattern's vertices into the host that
/// realize every pattern edge. Loops never take part.
pub fn count_labeled_copies(g: &SampledGraph, pattern: &PatternGraph) -> Result<u64> {
    check_count_limits(g, pattern)?;
    let adj = g.adjacency();
    if pattern.edge_count() == 1 && pattern.vertex_count() == 2 {
        return Ok(2 * g.edge_count() as u64);
    }
    if let Some(k) = star_leaves(pattern) {
        return Ok(count_stars(&adj, k));
    }
    if pattern.vertex_count() == 3 && pattern.edge_count() == 3 {
        return Ok(6 * count_triangles(&adj));
    }
    Ok(count_generic(&adj, pattern))
}

/// Leaf count if the pattern is `K_{1,k}` (with any labeling), `k >= 2`.
fn star_leaves(p: &PatternGraph) -> Option<u64> {
    let v = p.vertex_count();
    if v < 3 || p.edge_count() != v - 1 {
        return None;
    }
    let deg = p.degrees();
    let centers = deg.iter().filter(|&&d| d == v - 1).count();
    (centers == 1 && deg.iter().filter(|&&d| d == 1).count() == v - 1).then_some((v - 1) as u64)
}

/// `sum_v d(v) (d(v)-1) ... (d(v)-k+1)`.
pub fn count_stars(adj: &Adjacency, k: u64) -> u64 {
    (0..adj.vertex_count())
        .map(|v| {
            let d = adj.degree(v) as u64;
            if d < k {
                0
            } else {
                (0..k).map(|i| d - i).product::<u64>()
            }
        })
        .sum()
}

/// Unlabeled triangle count.
pub fn count_triangles(adj: &Adjacency) -> u64 {
    let n = adj.vertex_count();
    let blocks = (n as u64).div_ceil(256);
    map_blocks(blocks, |b| {
        let lo = (b * 256) as usize;
        let hi = (lo + 256).min(n);
        let mut count = 0u64;
        for u in lo..hi {
            let nu = adj.neighbors(u);
            for &v in nu.iter().filter(|&&v| v as usize > u) {
                // sorted-list intersection above v
                let nv = adj.neighbors(v as usize);
                let (mut i, mut j) = (0, 0);
                while i < nu.len() && j < nv.len() {
                    match nu[i].cmp(&nv[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            if nu[i] > v {
                                count += 1;
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
        }
        count
    })
    .into_iter()
    .sum()
}

/// Backtracking counter used for arbitrary patterns.
pub fn count_generic(adj: &Adjacency, pattern: &PatternGraph) -> u64 {
    let v = pattern.vertex_count();
    if v == 0 {
        return 1;
    }
    let pn = pattern.neighbors();
    // order: connected growth where possible
    let mut order = Vec::with_capacity(v);
    let mut placed = vec![false; v];
    while order.len() < v {
        let next = (0..v)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| (pn[x].iter().filter(|&&y| placed[y]).count(), pn[x].len(), std::cmp::Reverse(x)))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let pos: Vec<usize> = {
        let mut p = vec![0; v];
        for (i, &x) in order.iter().enumerate() {
            p[x] = i;
        }
        p
    };
    // for step i: earlier positions adjacent to order[i]
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| {
            let mut b: Vec<usize> = pn[x].iter().map(|&y| pos[y]).filter(|&j| j < pos[x]).collect();
            b.sort_unstable();
            b
        })
        .collect();

    fn rec(adj: &Adjacency, back: &[Vec<usize>], image: &mut Vec<u32>) -> u64 {
        let i = image.len();
        if i == back.len() {
            return 1;
        }
        let mut total = 0;
        let mut try_vertex = |w: u32, image: &mut Vec<u32>| {
            if image.contains(&w) {
                return;
            }
            if back[i].iter().skip(1).all(|&j| adj.contains(image[j] as usize, w as usize)) {
                image.push(w);
                total += rec(adj, back, image);
                image.pop();
            }
        };
        if let Some(&anchor) = back[i].first() {
            let candidates = adj.neighbors(image[anchor] as usize).to_vec();
            for w in candidates {
                try_vertex(w, image);
            }
        } else {
            for w in 0..adj.vertex_count() as u32 {
                try_vertex(w, image);
            }
        }
        total
    }

    let n = adj.vertex_count() as u64;
    let blocks = n.div_ceil(64);
    map_blocks(blocks, |b| {
        let lo = b * 64;
        let hi = (lo + 64).min(n);
        let mut image = Vec::with_capacity(v);
        let mut total = 0;
        for x in lo..hi {
            image.push(x as u32);
            total += rec(adj, &back, &mut image);
            image.pop();
        }
        total
    })
    .into_iter()
    .sum()
}

/// As [`count_labeled_copies`] but always through the generic backtracking
/// counter (no shortcuts).
pub fn count_labeled_copies_generic(g: &SampledGraph, pattern: &PatternGraph) -> Result<u64> {
    check_count_limits(g, pattern)?;
    Ok(count_generic(&g.adjacency(), pattern))
}

/// Neighbours of `u` bucketed by Hamming distance `0..=n`; a loop counts at 0.
pub fn neighbor_hamming_histogram(g: &SampledGraph, adj: &Adjacency, u: VertexId) -> Result<Vec<u64>> {
    let n = g.params().n();
    if u.len() != n {
        return Err(Error::Dimension {
            expected: n,
            actual: u.len(),
        });
    }
    let mut hist = vec![0u64; n as usize + 1];
    let x = u.bits();
    for &w in adj.neighbors(x as usize) {
        hist[(x ^ u64::from(w)).count_ones() as usize] += 1;
    }
    if g.has_loop(x) {
        hist[0] += 1;
    }
    Ok(hist)
}

/// Non-loop edges bucketed by the Hamming distance of their endpoints.
pub fn edge_distance_histogram(g: &SampledGraph) -> Vec<u64> {
    let mut hist = vec![0u64; g.params().n() as usize + 1];
    for &(u, v) in g.edges() {
        hist[(u ^ v).count_ones() as usize] += 1;
    }
    hist
}

fn require_concentration_params(p: &KroneckerParams) -> Result<()> {
    p.require_symmetric("Hamming concentration")?;
    if p.alpha() + p.beta() <= 1.0 {
        return Err(Error::param(format!(
            "Hamming concentration requires alpha + beta > 1, got {}",
            p.alpha() + p.beta()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationReport {
    /// `(alpha+beta)^n`.
    pub expected_degree: f64,
    pub min_degree: u32,
    pub max_degree: u32,
    pub mean_degree: f64,
    /// Fraction of vertices whose degree is within 10% of the expectation.
    pub fraction_within_ten_percent: f64,
    pub window_center: f64,
    pub window_half_width: f64,
    /// Edge endpoints (two per non-loop edge).
    pub endpoints: u64,
    pub endpoints_in_window: u64,
    pub in_window_fraction: f64,
    /// Mean Hamming distance over non-loop edges.
    pub mean_neighbor_distance: f64,
}

/// Degree and neighbour-distance concentration of one realization. Degrees
/// include loops when the graph was generated with them.
pub fn concentration_report(g: &SampledGraph) -> Result<ConcentrationReport> {
    let p = g.params();
    require_concentration_params(p)?;
    let expected_degree = (f64::from(p.n()) * (p.alpha() + p.beta()).ln()).exp();
    let degrees = g.degrees(g.loops_enabled());
    let min_degree = degrees.iter().copied().min().unwrap_or(0);
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let mean_degree = degrees.iter().map(|&d| f64::from(d)).sum::<f64>() / degrees.len() as f64;
    let within = degrees
        .iter()
        .filter(|&&d| (f64::from(d) - expected_degree).abs() <= 0.1 * expected_degree)
        .count();
    let (center, half) = hamming_window(p);
    let hist = edge_distance_histogram(g);
    let mut in_window = 0u64;
    let mut total = 0u64;
    let mut dist_sum = 0u64;
    for (k, &count) in hist.iter().enumerate() {
        total += count;
        dist_sum += k as u64 * count;
        if (k as f64 - center).abs() <= half {
            in_window += count;
        }
    }
    Ok(ConcentrationReport {
        expected_degree,
        min_degree,
        max_degree,
        mean_degree,
        fraction_within_ten_percent: within as f64 / degrees.len() as f64,
        window_center: center,
        window_half_width: half,
        endpoints: 2 * total,
        endpoints_in_window: 2 * in_window,
        in_window_fraction: if total == 0 { 1.0 } else { in_window as f64 / total as f64 },
        mean_neighbor_distance: if total == 0 { f64::NAN } else { dist_sum as f64 / total as f64 },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalScan {
    pub c: f64,
    pub side: FractionSide,
    /// `c n`.
    pub threshold: f64,
    pub min_distance: Option<u32>,
    pub max_distance: Option<u32>,
    /// Edges at distance below `c n` (side `below`) or above it (side `above`).
    pub offending: Vec<(u64, u64)>,
    /// `c n -+ ln(n)^2`.
    pub band: (f64, f64),
    pub edges_in_band: u64,
    /// Exact expected number of offending edges for these parameters.
    pub expected_offending: f64,
}

/// Expected number of non-loop edges on the forbidden side of `c n`.
pub fn expected_extremal_violations(p: &KroneckerParams) -> Result<f64> {
    require_concentration_params(p)?;
    let cf = critical_fraction(p)?;
    let (Some(c), Some(side)) = (cf.c, cf.side) else {
        return Err(Error::param("no critical fraction: both alpha and beta are at least 1/2"));
    };
    let cn = c * f64::from(p.n());
    let mut total = 0.0;
    for k in 1..=p.n() {
        let offending = match side {
            FractionSide::Below => f64::from(k) < cn,
            FractionSide::Above => f64::from(k) > cn,
        };
        if offending {
            total += expected_edges_at_distance(p, k)?;
        }
    }
    Ok(total)
}

/// Scans non-loop edges for Hamming distances on the forbidden side of the
/// critical fraction.
pub fn extremal_edge_scan(g: &SampledGraph) -> Result<ExtremalScan> {
    let p = g.params();
    let expected_offending = expected_extremal_violations(p)?;
    let cf = critical_fraction(p)?;
    let (c, side) = (cf.c.expect("checked"), cf.side.expect("checked"));
    let n = f64::from(p.n());
    let threshold = c * n;
    let spread = n.ln().powi(2);
    let band = (threshold - spread, threshold + spread);
    let mut offending = Vec::new();
    let mut min_distance = None;
    let mut max_distance = None;
    let mut edges_in_band = 0;
    for &(u, v) in g.edges() {
        let h = (u ^ v).count_ones();
        min_distance = Some(min_distance.map_or(h, |m: u32| m.min(h)));
        max_distance = Some(max_distance.map_or(h, |m: u32| m.max(h)));
        let hf = f64::from(h);
        let bad = match side {
            FractionSide::Below => hf < threshold,
            FractionSide::Above => hf > threshold,
        };
        if bad {
            offending.push((u, v));
        }
        if hf >= band.0 && hf <= band.1 {
            edges_in_band += 1;
        }
    }
    Ok(ExtremalScan {
        c,
        side,
        threshold,
        min_distance,
        max_distance,
        offending,
        band,
        edges_in_band,
        expected_offending,
    })
}

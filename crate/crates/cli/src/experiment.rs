//! Seeded trial orchestration and prediction-vs-measurement comparison.

use std::path::Path;

use kronecker::edgelist::write_edge_list;
use kronecker::empirical::{
    concentration_report, count_labeled_copies, edge_distance_histogram, expected_extremal_violations,
    extremal_edge_scan,
};
use kronecker::generator::{
    degree_histogram, expected_edge_count, generate_naive_with, generate_rmat, generate_stratified_with,
};
use kronecker::patterns::{
    base_value, cycle_base_value, expected_copies_asymptotic, expected_copies_exact, star_base_value,
    tree_base_value,
};
use kronecker::predict::{
    bisect, classify_regime, critical_fraction, degree_moments, exact_degree_counts, expected_degree_count,
    expected_edges_at_distance, hamming_window, mean_degree, FractionSide, RegimeCase,
};
use kronecker::stats::{mean_var, tv_distance_poisson};
use kronecker::{KroneckerParams, PatternGraph, SampledGraph, SeedSpec};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, ExperimentKind, GeneratorChoice};
use crate::report::{write_file, Criterion, Table, ValidationReport};
use crate::CliError;

/// Mean comparisons use this many standard errors.
pub const BANDS: f64 = 4.0;
/// Bands built from a sample variance are only tested with this many trials;
/// fewer leave the standard error itself too noisy.
pub const MIN_SE_TRIALS: u64 = 20;
/// Bins with a smaller prediction are reported but not tested.
pub const MIN_TESTED_PREDICTION: f64 = 5.0;
/// Exact degree distributions are used up to this `n`; beyond it the
/// Poisson mixture.
pub const EXACT_DEGREE_MAX_N: u32 = 16;
pub const TV_TOLERANCE: f64 = 0.02;
/// Samples (vertices times trials) needed before the Poisson(1) TV check is run.
pub const TV_MIN_SAMPLES: f64 = 262_144.0;
pub const IN_WINDOW_TARGET: f64 = 0.99;
pub const DISTANCE_TOLERANCE: f64 = 0.02;
pub const DEGREE_TOLERANCE: f64 = 0.1;
pub const CROSSING_TOL: f64 = 1e-13;

const PROV_EDGES: &str = "sum of pair probabilities over pair classes";
const PROV_MOMENTS: &str = "degree moments by vertex weight";
const PROV_EXACT_DEGREES: &str = "exact degree distribution by convolution over pair classes";
const PROV_MIXTURE: &str = "Poisson mixture over vertex weights";
const PROV_REGIME: &str = "six-case degree regime classification";
const PROV_BASE: &str = "base value summed over 0/1 vertex labelings";
const PROV_STAR: &str = "star closed form (alpha+beta)^k + (beta+gamma)^k";
const PROV_TREE: &str = "tree closed form 2 (alpha+beta)^e, alpha = gamma";
const PROV_CYCLE: &str = "cycle closed form (alpha+beta)^k + (alpha-beta)^k, alpha = gamma";
const PROV_ASYMPTOTIC: &str = "n-th power of the base value";
const PROV_EXACT_COPIES: &str = "exact expectation over injective vertex maps";
const PROV_HAMMING: &str = "expected edges at Hamming distance k, alpha = gamma";
const PROV_WINDOW: &str = "neighbour-distance concentration window";
const PROV_CRITICAL: &str = "critical fraction psi(c) = 1/2";
const PROV_EXTREMAL: &str = "expected edges beyond the critical fraction";
const PROV_CROSSING: &str = "root of base value = 1 along alpha = gamma";

/// Prediction-only run: no graphs are sampled.
pub fn predict(config: &ExperimentConfig) -> Result<ValidationReport, CliError> {
    config.validate(false)?;
    execute(config, false, "predict")
}

/// Full run: samples `trials` graphs, measures, and applies every criterion.
pub fn run(config: &ExperimentConfig) -> Result<ValidationReport, CliError> {
    config.validate(true)?;
    execute(config, true, "validate")
}

/// As [`run`], labelled as an exploratory measurement.
pub fn measure(config: &ExperimentConfig) -> Result<ValidationReport, CliError> {
    config.validate(true)?;
    execute(config, true, "measure")
}

/// One graph from trial substream `seed.child(trial)`.
pub fn generate(config: &ExperimentConfig, trial: u64) -> Result<SampledGraph, CliError> {
    config.validate(true)?;
    sample(config, &config.params()?, SeedSpec::new(config.seed).child(trial), trial, None)
}

fn execute(config: &ExperimentConfig, sampling: bool, mode: &str) -> Result<ValidationReport, CliError> {
    let p = config.params()?;
    let report = match &config.kind {
        ExperimentKind::Degrees => degrees(config, &p, sampling, mode)?,
        ExperimentKind::Subgraph { .. } => subgraph(config, &p, sampling, mode)?,
        ExperimentKind::Hamming => hamming(config, &p, sampling, mode)?,
        ExperimentKind::Regime => regime(config, &p, mode)?,
        ExperimentKind::Thresholds { .. } => thresholds(config, &p, sampling, mode)?,
    };
    Ok(report)
}

fn sample(
    config: &ExperimentConfig,
    p: &KroneckerParams,
    seed: SeedSpec,
    trial: u64,
    point: Option<usize>,
) -> Result<SampledGraph, CliError> {
    let limits = config.limits();
    let g = match config.generator {
        GeneratorChoice::Naive => generate_naive_with(p, config.include_loops, seed, &limits)?,
        GeneratorChoice::Stratified => generate_stratified_with(p, config.include_loops, seed, &limits)?,
        GeneratorChoice::Rmat { .. } => {
            let r = config.rmat_params(p)?.expect("rmat generator");
            generate_rmat(&r, seed)?
        }
    };
    if let Some(dir) = &config.outputs.edge_lists {
        let name = match point {
            Some(i) => format!("point{i:03}_trial{trial:05}.edges"),
            None => format!("trial{trial:05}.edges"),
        };
        dump(&g, &dir.join(name))?;
    }
    Ok(g)
}

fn dump(g: &SampledGraph, path: &Path) -> Result<(), CliError> {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf)?;
    write_file(path, &String::from_utf8_lossy(&buf))
}

/// Runs `f` on every trial substream in parallel, keeping trial order.
fn per_trial<T, F>(config: &ExperimentConfig, base: SeedSpec, f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(u64, SeedSpec) -> Result<T, CliError> + Sync,
{
    (0..config.trials)
        .into_par_iter()
        .map(|t| f(t, base.child(t)))
        .collect()
}

/// Standard score of a sample mean. With fewer than two trials, or no
/// spread, the Poisson variance `max(mean, predicted)` stands in.
pub fn z_score(xs: &[f64], predicted: f64) -> f64 {
    let (mean, var) = mean_var(xs);
    let var = if xs.len() > 1 && var > 0.0 { var } else { predicted.max(mean) };
    let diff = mean - predicted;
    if var <= 0.0 {
        return if diff == 0.0 { 0.0 } else { f64::INFINITY.copysign(diff) };
    }
    diff / (var / xs.len() as f64).sqrt()
}

fn is_rmat(config: &ExperimentConfig) -> bool {
    matches!(config.generator, GeneratorChoice::Rmat { .. })
}

fn rmat_note(report: &mut ValidationReport) {
    report.notes.push(
        "R-MAT places a fixed number of edges; predictions refer to the Kronecker model and are not tested".into(),
    );
}

fn se_tested(config: &ExperimentConfig, report: &mut ValidationReport) -> bool {
    if is_rmat(config) {
        return false;
    }
    if config.trials < MIN_SE_TRIALS {
        report.notes.push(format!(
            "standard-error bands need at least {MIN_SE_TRIALS} trials; mean comparisons are reported only"
        ));
        return false;
    }
    true
}

fn regime_statements(report: &mut ValidationReport, p: &KroneckerParams) {
    for d in 0..=3 {
        let v = classify_regime(p, d);
        report.statement(format!("regime d={d}"), v.describe(), PROV_REGIME);
    }
}

fn degrees(
    config: &ExperimentConfig,
    p: &KroneckerParams,
    sampling: bool,
    mode: &str,
) -> Result<ValidationReport, CliError> {
    let loops = config.include_loops;
    let n = p.n();
    let columns: &[&str] = if sampling {
        &["d", "empirical_mean_count", "predicted_count", "z_score"]
    } else {
        &["d", "predicted_count"]
    };
    let mut report = ValidationReport::new(mode, config.clone(), Table::new("degrees", columns));
    report.analytic("expected_edges", expected_edge_count(p, loops)?, PROV_EDGES);
    regime_statements(&mut report, p);

    let per_trial: Vec<Vec<u64>> = if sampling {
        per_trial(config, SeedSpec::new(config.seed), |t, seed| {
            let g = sample(config, p, seed, t, None)?;
            let hist = degree_histogram(&g, loops);
            let top = hist.keys().next_back().copied().unwrap_or(0) as usize;
            let mut counts = vec![0u64; top + 1];
            for (d, c) in hist {
                counts[d as usize] = c;
            }
            Ok(counts)
        })?
    } else {
        Vec::new()
    };
    let max_d = if sampling {
        per_trial.iter().map(|c| c.len() - 1).max().unwrap_or(0)
    } else {
        let top = (0..=n).map(|w| mean_degree(p, w)).fold(0.0, f64::max);
        ((top + 8.0 * top.sqrt() + 8.0).ceil() as usize).min(1 << n.min(20))
    };
    let exact = n <= EXACT_DEGREE_MAX_N;
    let predicted: Vec<f64> = if exact {
        exact_degree_counts(p, loops, max_d)?
    } else {
        (0..=max_d as u64).map(|d| expected_degree_count(p, d)).collect()
    };
    let prov = if exact { PROV_EXACT_DEGREES } else { PROV_MIXTURE };
    for (d, &x) in predicted.iter().enumerate().take(8) {
        report.analytic(format!("degree_count d={d}"), x, prov);
    }
    if !exact && !loops {
        report.notes.push("the Poisson mixture counts the loop pair in every degree".into());
    }

    if !sampling {
        for (d, &x) in predicted.iter().enumerate() {
            report.table.push(vec![d as f64, x]);
        }
        return Ok(report);
    }

    let tested = se_tested(config, &mut report);
    for (d, &pred) in predicted.iter().enumerate() {
        let xs: Vec<f64> = per_trial
            .iter()
            .map(|c| c.get(d).copied().unwrap_or(0) as f64)
            .collect();
        let (mean, _) = mean_var(&xs);
        let z = z_score(&xs, pred);
        report.table.push(vec![d as f64, mean, pred, z]);
        if tested && pred >= MIN_TESTED_PREDICTION {
            report
                .criteria
                .push(Criterion::abs_at_most(format!("degree count d={d} (standard errors)"), z, BANDS));
        }
    }
    let vertices = p.vertex_count() as f64;
    let edges: Vec<f64> = per_trial
        .iter()
        .map(|c| c.iter().enumerate().map(|(d, &k)| (d as u64 * k) as f64).sum::<f64>())
        .collect();
    report.empirical("degree_sum", edges);
    report.empirical(
        "max_degree",
        per_trial.iter().map(|c| (c.len() - 1) as f64).collect(),
    );

    if !is_rmat(config) && classify_regime(p, 1).case == RegimeCase::Case6 && loops {
        let samples = vertices * config.trials as f64;
        let mut freqs = vec![0.0; max_d + 1];
        for c in &per_trial {
            for (d, &k) in c.iter().enumerate() {
                freqs[d] += k as f64 / samples;
            }
        }
        let tv = tv_distance_poisson(&freqs, 1.0);
        report.analytic("poisson_rate", 1.0, PROV_REGIME);
        if samples >= TV_MIN_SAMPLES {
            report.criteria.push(Criterion::abs_at_most("TV distance to Poisson(1)", tv, TV_TOLERANCE));
        } else {
            report.notes.push(format!(
                "TV distance to Poisson(1) is {tv:.4}; too few samples ({samples}) to test it"
            ));
        }
    }
    if is_rmat(config) {
        rmat_note(&mut report);
    }
    Ok(report)
}

/// Closed-form base values that apply to `g`, with their provenance.
fn closed_forms(p: &KroneckerParams, g: &PatternGraph) -> Result<Vec<(String, f64, &'static str)>, CliError> {
    let mut out = Vec::new();
    let e = g.edge_count();
    let degrees = g.degrees();
    if g.is_tree() && e >= 1 && degrees.contains(&e) {
        out.push(("star_base_value".into(), star_base_value(p, e as u32)?, PROV_STAR));
    }
    if p.is_symmetric() {
        if g.is_tree() && e >= 1 {
            out.push(("tree_base_value".into(), tree_base_value(p, e as u32)?, PROV_TREE));
        }
        if g.vertex_count() >= 3 && g.is_connected() && degrees.iter().all(|&d| d == 2) {
            out.push(("cycle_base_value".into(), cycle_base_value(p, e as u32)?, PROV_CYCLE));
        }
    }
    Ok(out)
}

fn subgraph(
    config: &ExperimentConfig,
    p: &KroneckerParams,
    sampling: bool,
    mode: &str,
) -> Result<ValidationReport, CliError> {
    let g = config.pattern()?.expect("subgraph experiment");
    let columns: &[&str] = if sampling {
        &["n", "empirical_mean", "predicted_exact", "predicted_asymptotic", "z_score"]
    } else {
        &["n", "predicted_exact", "predicted_asymptotic"]
    };
    let mut report = ValidationReport::new(mode, config.clone(), Table::new("copies", columns));
    report.analytic("base_value", base_value(p, &g)?, PROV_BASE);
    for (name, value, prov) in closed_forms(p, &g)? {
        report.analytic(name, value, prov);
    }
    let asymptotic = expected_copies_asymptotic(p, &g)?;
    report.analytic("expected_copies_asymptotic", asymptotic, PROV_ASYMPTOTIC);
    let exact = match expected_copies_exact(p, &g) {
        Ok(x) => {
            report.analytic("expected_copies_exact", x, PROV_EXACT_COPIES);
            Some(x)
        }
        Err(kronecker::Error::Capacity { .. }) => {
            report.notes.push("exact expectation is over budget; only the asymptotic form is given".into());
            None
        }
        Err(e) => return Err(e.into()),
    };
    let nf = f64::from(p.n());
    if !sampling {
        report.table.push(vec![nf, exact.unwrap_or(f64::NAN), asymptotic]);
        return Ok(report);
    }
    let counts: Vec<f64> = per_trial(config, SeedSpec::new(config.seed), |t, seed| {
        let host = sample(config, p, seed, t, None)?;
        Ok(count_labeled_copies(&host, &g)? as f64)
    })?;
    let (mean, _) = mean_var(&counts);
    let z = exact.map_or(f64::NAN, |x| z_score(&counts, x));
    report.table.push(vec![nf, mean, exact.unwrap_or(f64::NAN), asymptotic, z]);
    report.empirical("labeled_copies", counts);
    if is_rmat(config) {
        rmat_note(&mut report);
    } else if exact.is_some() && se_tested(config, &mut report) {
        report
            .criteria
            .push(Criterion::abs_at_most("labeled copies (standard errors)", z, BANDS));
    }
    Ok(report)
}

fn hamming(
    config: &ExperimentConfig,
    p: &KroneckerParams,
    sampling: bool,
    mode: &str,
) -> Result<ValidationReport, CliError> {
    let n = p.n();
    let columns: &[&str] = if sampling {
        &["k", "empirical_mean", "predicted"]
    } else {
        &["k", "predicted"]
    };
    let mut report = ValidationReport::new(mode, config.clone(), Table::new("hamming", columns));
    let predicted: Vec<f64> = (0..=n)
        .map(|k| expected_edges_at_distance(p, k))
        .collect::<Result<_, _>>()?;
    report.analytic("expected_non_loop_edges", predicted.iter().sum(), PROV_HAMMING);
    let dense = p.alpha() + p.beta() > 1.0;
    let (center, half) = hamming_window(p);
    report.analytic("window_center", center, PROV_WINDOW);
    report.analytic("window_half_width", half, PROV_WINDOW);
    report.analytic("expected_degree", (p.alpha() + p.beta()).powi(n as i32), PROV_MOMENTS);
    let mut critical = None;
    if dense {
        let cf = critical_fraction(p)?;
        if let (Some(c), Some(side)) = (cf.c, cf.side) {
            report.analytic("critical_fraction", c, PROV_CRITICAL);
            let side = match side {
                FractionSide::Below => "no edges below c n",
                FractionSide::Above => "no edges above c n",
            };
            report.statement("critical_side", side, PROV_CRITICAL);
            let expected = expected_extremal_violations(p)?;
            report.analytic("expected_extremal_edges", expected, PROV_EXTREMAL);
            critical = Some(expected);
        }
    } else {
        report.notes.push("alpha + beta <= 1: concentration checks do not apply".into());
    }
    if !sampling {
        for (k, &x) in predicted.iter().enumerate() {
            report.table.push(vec![k as f64, x]);
        }
        return Ok(report);
    }

    struct Trial {
        hist: Vec<u64>,
        in_window: f64,
        distance: f64,
        mean_degree: f64,
        offending: f64,
    }
    let trials = per_trial(config, SeedSpec::new(config.seed), |t, seed| {
        let g = sample(config, p, seed, t, None)?;
        let mut trial = Trial {
            hist: edge_distance_histogram(&g),
            in_window: f64::NAN,
            distance: f64::NAN,
            mean_degree: f64::NAN,
            offending: f64::NAN,
        };
        if dense {
            let c = concentration_report(&g)?;
            trial.in_window = c.in_window_fraction;
            trial.distance = c.mean_neighbor_distance;
            trial.mean_degree = c.mean_degree;
        }
        if critical.is_some() {
            trial.offending = extremal_edge_scan(&g)?.offending.len() as f64;
        }
        Ok(trial)
    })?;
    let tested = !is_rmat(config);
    for (k, &pred) in predicted.iter().enumerate() {
        let xs: Vec<f64> = trials.iter().map(|t| t.hist[k] as f64).collect();
        let (mean, _) = mean_var(&xs);
        report.table.push(vec![k as f64, mean, pred]);
        if tested && pred >= MIN_TESTED_PREDICTION {
            // a sum of independent Bernoullis with one probability per k
            let pr = p.alpha().powi((n - k as u32) as i32) * p.beta().powi(k as i32);
            let se = (pred * (1.0 - pr) / config.trials as f64).sqrt();
            let z = (mean - pred) / se;
            report
                .criteria
                .push(Criterion::abs_at_most(format!("edges at distance k={k} (standard errors)"), z, BANDS));
        }
    }
    if dense {
        let in_window: Vec<f64> = trials.iter().map(|t| t.in_window).collect();
        let distance: Vec<f64> = trials.iter().map(|t| t.distance).collect();
        let degree: Vec<f64> = trials.iter().map(|t| t.mean_degree).collect();
        let expected_degree = (p.alpha() + p.beta()).powi(n as i32);
        if tested {
            report
                .criteria
                .push(Criterion::at_least("in-window edge fraction", mean_var(&in_window).0, IN_WINDOW_TARGET));
            report.criteria.push(Criterion::abs_at_most(
                "mean neighbour distance (relative error)",
                mean_var(&distance).0 / center - 1.0,
                DISTANCE_TOLERANCE,
            ));
            report.criteria.push(Criterion::abs_at_most(
                "mean degree (relative error)",
                mean_var(&degree).0 / expected_degree - 1.0,
                DEGREE_TOLERANCE,
            ));
        }
        report.empirical("in_window_fraction", in_window);
        report.empirical("mean_neighbor_distance", distance);
        report.empirical("mean_degree", degree);
    }
    if let Some(expected) = critical {
        let offending: Vec<f64> = trials.iter().map(|t| t.offending).collect();
        let total: f64 = offending.iter().sum();
        // only a sharp test when violations are not expected at all
        if tested && expected * config.trials as f64 <= 1e-2 {
            report
                .criteria
                .push(Criterion::abs_at_most("edges beyond the critical fraction", total, 0.0));
        }
        report.empirical("extremal_edges", offending);
    }
    if !tested {
        rmat_note(&mut report);
    }
    Ok(report)
}

fn regime(config: &ExperimentConfig, p: &KroneckerParams, mode: &str) -> Result<ValidationReport, CliError> {
    let mut report = ValidationReport::new(
        mode,
        config.clone(),
        Table::new("regime", &["w", "vertex_count", "mean_degree", "variance"]),
    );
    regime_statements(&mut report, p);
    let v = classify_regime(p, 1);
    if let Some(c1) = v.c1 {
        report.analytic("c1", c1, PROV_REGIME);
    }
    if let Some(c2) = v.c2 {
        report.analytic("c2", c2, PROV_REGIME);
    }
    report.statement(
        "power_law",
        if v.power_law_possible {
            "a power-law degree distribution is possible"
        } else {
            "no power-law degree distribution"
        },
        PROV_REGIME,
    );
    let n = p.n();
    for w in 0..=n {
        let m = degree_moments(p, w)?;
        let count = kronecker::combinatorics::binomial(u64::from(n), u64::from(w)).map_or(f64::NAN, |c| c as f64);
        report.table.push(vec![f64::from(w), count, m.mean, m.variance]);
    }
    if p.is_symmetric() && p.alpha() + p.beta() > 1.0 {
        let cf = critical_fraction(p)?;
        if let Some(c) = cf.c {
            report.analytic("critical_fraction", c, PROV_CRITICAL);
        }
        let (center, half) = hamming_window(p);
        report.analytic("window_center", center, PROV_WINDOW);
        report.analytic("window_half_width", half, PROV_WINDOW);
    }
    if mode != "predict" {
        report.notes.push("regime experiments are analytic; nothing is sampled".into());
    }
    Ok(report)
}

fn thresholds(
    config: &ExperimentConfig,
    p: &KroneckerParams,
    sampling: bool,
    mode: &str,
) -> Result<ValidationReport, CliError> {
    let g = config.pattern()?.expect("thresholds experiment");
    let (beta, n) = (p.beta(), p.n());
    let at = |a: f64| KroneckerParams::new(a, beta, a, n);
    let columns: &[&str] = if sampling {
        &["alpha", "base_value", "predicted_mean", "empirical_mean", "presence_fraction", "z_score"]
    } else {
        &["alpha", "base_value", "predicted_mean"]
    };
    let mut report = ValidationReport::new(mode, config.clone(), Table::new("thresholds", columns));

    // base values have nonnegative coefficients, so they increase along alpha = gamma
    let f = |a: f64| base_value(&at(a).expect("inside (0, 1)"), &g).map_or(f64::NAN, |b| b - 1.0);
    let (lo, hi) = (1e-9, 1.0 - 1e-9);
    let crossing = if f(lo) < 0.0 && f(hi) > 0.0 {
        let a = bisect(f, lo, hi, CROSSING_TOL);
        report.analytic("crossing_alpha", a, PROV_CROSSING);
        let residual = f(a);
        report.analytic("crossing_residual", residual, PROV_CROSSING);
        report
            .criteria
            .push(Criterion::abs_at_most("base value at the crossing minus 1", residual, 1e-9));
        Some(a)
    } else {
        report.notes.push("base value does not cross 1 along this sweep".into());
        None
    };

    let points = config.sweep_points as usize;
    let mut above = Vec::new();
    let mut below = Vec::new();
    let tested = !is_rmat(config);
    let se_ok = sampling && se_tested(config, &mut report);
    for i in 0..points {
        let a = (i + 1) as f64 / (points + 1) as f64;
        let q = at(a)?;
        let b = base_value(&q, &g)?;
        let (pred, exact) = match expected_copies_exact(&q, &g) {
            Ok(x) => (x, true),
            Err(kronecker::Error::Capacity { .. }) => (expected_copies_asymptotic(&q, &g)?, false),
            Err(e) => return Err(e.into()),
        };
        if !sampling {
            report.table.push(vec![a, b, pred]);
            continue;
        }
        let base = SeedSpec::new(config.seed).child(i as u64);
        let counts: Vec<f64> = per_trial(config, base, |t, seed| {
            let host = sample(config, &q, seed, t, Some(i))?;
            Ok(count_labeled_copies(&host, &g)? as f64)
        })?;
        let (mean, _) = mean_var(&counts);
        let presence = counts.iter().filter(|&&c| c > 0.0).count() as f64 / counts.len() as f64;
        let z = if exact { z_score(&counts, pred) } else { f64::NAN };
        report.table.push(vec![a, b, pred, mean, presence, z]);
        if se_ok && exact {
            report
                .criteria
                .push(Criterion::abs_at_most(format!("copies at alpha={a:.4} (standard errors)"), z, BANDS));
        }
        if crossing.is_some() {
            if b > 1.0 {
                above.push(presence);
            } else {
                below.push(presence);
            }
        }
    }
    if sampling && tested && !above.is_empty() && !below.is_empty() {
        let gap = mean_var(&above).0 - mean_var(&below).0;
        report.criteria.push(Criterion::at_least(
            "presence above the crossing minus presence below",
            gap,
            0.0,
        ));
    }
    if sampling && !tested {
        rmat_note(&mut report);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(kind: &str, a: f64, b: f64, c: f64, n: u32) -> ExperimentConfig {
        ExperimentConfig::new(a, b, c, n, kind.parse().unwrap())
    }

    #[test]
    fn z_score_fallbacks() {
        assert_eq!(z_score(&[2.0, 2.0], 2.0), 0.0);
        assert_eq!(z_score(&[0.0, 0.0], 0.0), 0.0);
        assert_eq!(z_score(&[1.0], 0.0), 1.0);
        assert!((z_score(&[3.0], 1.0) - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((z_score(&[1.0, 3.0], 1.0) - 1.0 / (2.0f64 / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn poisson_degrees_on_the_critical_line() {
        let mut c = config("degrees", 0.5, 0.5, 0.5, 14);
        c.seed = 3;
        let r = run(&c).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert!(r.criteria.iter().any(|c| c.name.starts_with("TV")));
        let p0 = r.table.rows[0][2];
        assert!((p0 - 16384.0 * (-1f64).exp()).abs() / p0 < 1e-3);
    }

    #[test]
    fn regime_text_names_the_dichotomy() {
        let r = predict(&config("regime", 0.5, 0.5, 0.5, 10)).unwrap();
        assert!(r.statements.iter().any(|s| s.text.contains("Poisson(1)")));
        let r = predict(&config("regime", 0.7, 0.3, 0.3, 10)).unwrap();
        assert!(r.statements[0].text.contains("case 1"));
        assert!(r.criteria.is_empty());
        assert_eq!(r.table.rows.len(), 11);
    }

    #[test]
    fn thresholds_crossing_matches_cycle_root() {
        let r = predict(&config("thresholds:cycle:4", 0.5, 0.3, 0.5, 6)).unwrap();
        let a = r.analytic.iter().find(|v| v.name == "crossing_alpha").unwrap().value;
        let closed = (a + 0.3f64).powi(4) + (a - 0.3f64).powi(4);
        assert!((closed - 1.0).abs() < 1e-9);
        assert!(r.passed());
    }

    #[test]
    fn gating_keeps_symmetric_forms_out() {
        let r = predict(&config("subgraph:cycle:3", 0.7, 0.4, 0.5, 4)).unwrap();
        assert!(r.analytic.iter().all(|v| v.name != "cycle_base_value"));
        let r = predict(&config("subgraph:cycle:3", 0.7, 0.4, 0.7, 4)).unwrap();
        let cyc = r.analytic.iter().find(|v| v.name == "cycle_base_value").unwrap().value;
        let enumerated = r.analytic.iter().find(|v| v.name == "base_value").unwrap().value;
        assert!((cyc - enumerated).abs() < 1e-12);
    }

    #[test]
    fn subgraph_and_hamming_runs_pass() {
        let mut c = config("subgraph:path:2", 0.7, 0.45, 0.35, 4);
        c.trials = 200;
        c.generator = GeneratorChoice::Naive;
        assert!(run(&c).unwrap().passed());
        let mut c = config("hamming", 0.7, 0.5, 0.7, 10);
        c.trials = 10;
        let r = run(&c).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.table.columns, ["k", "empirical_mean", "predicted"]);
    }

    #[test]
    fn rmat_is_reported_but_not_tested() {
        let mut c = config("degrees", 0.45, 0.15, 0.25, 8);
        c.generator = "rmat:300".parse().unwrap();
        c.trials = 3;
        let r = run(&c).unwrap();
        assert!(r.criteria.is_empty());
        assert!(!r.notes.is_empty());
    }
}

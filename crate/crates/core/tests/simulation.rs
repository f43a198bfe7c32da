//! Seeded statistical checks of the generators against exact probabilities.

use std::collections::BTreeMap;

use kronecker::generator::{
    generate_naive, generate_stratified, pair_strata, rmat_pairs, sample_vertex_degree, RmatParams,
};
use kronecker::model::{KroneckerParams, PairClass};
use kronecker::predict::degree_moments;
use kronecker::rng::SeedSpec;
use kronecker::stats::{correlation, mean_var};
use statrs::distribution::{Binomial, DiscreteCDF};

fn params(a: f64, b: f64, c: f64, n: u32) -> KroneckerParams {
    KroneckerParams::new(a, b, c, n).unwrap()
}

/// Smallest `k` with `P(Bin(n, p) <= k) >= q`.
fn binomial_quantile(n: u64, p: f64, q: f64) -> u64 {
    let d = Binomial::new(p, n).unwrap();
    (0..=n).find(|&k| d.cdf(k) >= q).unwrap()
}

#[test]
fn naive_inclusion_frequencies_match_class_probabilities() {
    let p = params(0.8, 0.55, 0.35, 8);
    let trials = 200u64;
    let strata = pair_strata(8, true).unwrap();
    let mut hits: BTreeMap<PairClass, u64> = BTreeMap::new();
    for t in 0..trials {
        let g = generate_naive(&p, true, SeedSpec::new(21).child(t)).unwrap();
        for &(u, v) in g.edges() {
            *hits.entry(PairClass::of_bits(u, v, 8)).or_insert(0) += 1;
        }
        for &v in g.loops() {
            *hits.entry(PairClass::of_bits(v, v, 8)).or_insert(0) += 1;
        }
    }
    // each class is a 3-sigma test; the number of exceedances must be
    // compatible with the nominal 0.27% rate, and nothing may exceed 5 sigma
    let mut beyond_3 = 0;
    for s in &strata {
        let pr = p.class_probability(s.class);
        let draws = (trials * s.size) as f64;
        let freq = *hits.get(&s.class).unwrap_or(&0) as f64 / draws;
        let z = (freq - pr) / (pr * (1.0 - pr) / draws).sqrt();
        assert!(z.abs() < 5.0, "class {:?}: z = {z}", s.class);
        if z.abs() > 3.0 {
            beyond_3 += 1;
        }
    }
    let allowed = binomial_quantile(strata.len() as u64, 0.0027, 0.999);
    assert!(beyond_3 <= allowed, "{beyond_3} classes beyond 3 sigma (allowed {allowed})");
}

#[test]
fn uniform_matrix_gives_binomial_random_graph() {
    let q: f64 = 0.6;
    let p = params(q, q, q, 6);
    for s in pair_strata(6, true).unwrap() {
        assert!((p.class_probability(s.class) - q.powi(6)).abs() < 1e-15);
    }
    let pairs = 64.0 * 63.0 / 2.0;
    let trials = 300;
    let counts: Vec<f64> = (0..trials)
        .map(|t| generate_naive(&p, false, SeedSpec::new(22).child(t)).unwrap().edge_count() as f64)
        .collect();
    let (mean, var) = mean_var(&counts);
    let pr = q.powi(6);
    assert!((mean - pairs * pr).abs() < 4.0 * (pairs * pr * (1.0 - pr) / trials as f64).sqrt());
    assert!((var / (pairs * pr * (1.0 - pr)) - 1.0).abs() < 0.3);
}

#[test]
fn stratified_edge_totals_match_naive_mean() {
    let p = params(0.9, 0.45, 0.5, 10);
    let expected = kronecker::generator::expected_edge_count(&p, true).unwrap();
    let trials = 100;
    let totals: Vec<f64> = (0..trials)
        .map(|t| {
            let g = generate_stratified(&p, true, SeedSpec::new(23).child(t)).unwrap();
            (g.edge_count() + g.loops().len()) as f64
        })
        .collect();
    let (mean, var) = mean_var(&totals);
    assert!((mean - expected).abs() < 4.0 * (var / trials as f64).sqrt());
}

#[test]
fn rmat_digits_are_independent_across_positions() {
    let n = 6;
    let r = RmatParams::new(params(0.45, 0.15, 0.25, n), 20_000).unwrap();
    let pairs = rmat_pairs(&r, SeedSpec::new(24));
    let m = pairs.len() as f64;
    let column = |k: u32, second: bool| -> Vec<f64> {
        pairs
            .iter()
            .map(|&(u, v)| ((if second { v } else { u }) >> k & 1) as f64)
            .collect()
    };
    let bound = 4.0 / m.sqrt();
    for k in 0..n {
        for l in (k + 1)..n {
            for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
                let rho = correlation(&column(k, a), &column(l, b));
                assert!(rho.abs() < bound, "digits {k}/{l}: rho = {rho}");
            }
        }
    }
    // within one position the two coordinates are dependent by design
    let same = correlation(&column(0, false), &column(0, true));
    assert!(same > 0.1);
}

#[test]
fn standardized_degree_of_all_ones_vertex() {
    let p = params(0.7, 0.5, 0.4, 12);
    let v = p.vertex((1 << 12) - 1).unwrap();
    let m = degree_moments(&p, 12).unwrap();
    let trials = 2000u64;
    let z: Vec<f64> = (0..trials)
        .map(|t| {
            let d = sample_vertex_degree(&p, v, true, SeedSpec::new(25).child(t)).unwrap() as f64;
            (d - m.mean) / m.variance.sqrt()
        })
        .collect();
    let (mean, var) = mean_var(&z);
    assert!(mean.abs() < 0.1, "mean {mean}");
    assert!((var - 1.0).abs() < 0.15, "variance {var}");
}

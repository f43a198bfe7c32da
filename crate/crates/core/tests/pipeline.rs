//! Generate, serialize, reload and measure.

use kronecker::edgelist;
use kronecker::empirical::{count_labeled_copies, edge_distance_histogram, neighbor_hamming_histogram};
use kronecker::generator::{degree_histogram, generate_rmat, generate_stratified, RmatParams};
use kronecker::patterns::{expected_copies_exact, PatternGraph};
use kronecker::predict::{exact_degree_counts, expected_degree_count};
use kronecker::stats::mean_var;
use kronecker::{KroneckerParams, SeedSpec};

#[test]
fn edge_lists_survive_a_round_trip_with_measurements_intact() {
    let p = KroneckerParams::new(0.8, 0.5, 0.6, 9).unwrap();
    let g = generate_stratified(&p, true, SeedSpec::new(1)).unwrap();
    let back = edgelist::from_str(&edgelist::to_string(&g)).unwrap();
    assert_eq!(back, g);
    assert_eq!(degree_histogram(&back, true), degree_histogram(&g, true));
    for pattern in ["edge", "path:2", "cycle:3", "star:3"] {
        let h = PatternGraph::parse(pattern).unwrap();
        assert_eq!(count_labeled_copies(&back, &h).unwrap(), count_labeled_copies(&g, &h).unwrap());
    }
}

#[test]
fn rmat_graphs_serialize_with_loops() {
    let r = RmatParams::new(KroneckerParams::new(0.45, 0.15, 0.25, 7).unwrap(), 400).unwrap();
    let g = generate_rmat(&r, SeedSpec::new(2)).unwrap();
    assert!(g.loops_enabled());
    assert_eq!(edgelist::from_str(&edgelist::to_string(&g)).unwrap(), g);
}

#[test]
fn hamming_histograms_double_count_edges() {
    let p = KroneckerParams::new(0.7, 0.5, 0.7, 8).unwrap();
    let g = generate_stratified(&p, true, SeedSpec::new(3)).unwrap();
    let adj = g.adjacency();
    let mut total = [0u64; 9];
    for u in 0..p.vertex_count() {
        let h = neighbor_hamming_histogram(&g, &adj, p.vertex(u).unwrap()).unwrap();
        for (t, x) in total.iter_mut().zip(h) {
            *t += x;
        }
    }
    let edges = edge_distance_histogram(&g);
    assert_eq!(total[0], g.loops().len() as u64);
    for k in 1..=8 {
        assert_eq!(total[k], 2 * edges[k]);
    }
}

#[test]
fn poisson_mixture_is_close_to_the_exact_count_when_degrees_are_small() {
    let p = KroneckerParams::new(0.7, 0.3, 0.3, 12).unwrap();
    let exact = exact_degree_counts(&p, true, 6).unwrap();
    for (d, &x) in exact.iter().enumerate() {
        let mix = expected_degree_count(&p, d as u64);
        assert!((mix - x).abs() <= 0.05 * x.max(1.0), "d={d}: {mix} vs {x}");
    }
}

#[test]
fn stratified_copy_counts_match_exact_expectation() {
    let p = KroneckerParams::new(0.7, 0.45, 0.35, 4).unwrap();
    let h = PatternGraph::cycle(3).unwrap();
    let expected = expected_copies_exact(&p, &h).unwrap();
    let counts: Vec<f64> = (0..400)
        .map(|t| {
            let g = generate_stratified(&p, false, SeedSpec::new(4).child(t)).unwrap();
            count_labeled_copies(&g, &h).unwrap() as f64
        })
        .collect();
    let (mean, var) = mean_var(&counts);
    assert!((mean - expected).abs() < 4.0 * (var / 400.0).sqrt(), "{mean} vs {expected}");
}

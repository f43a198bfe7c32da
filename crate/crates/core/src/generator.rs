//! Sampling realizations of `K(n, P)` and of R-MAT.
//!
//! Three routes produce a [`SampledGraph`]:
//!
//! * [`generate_naive`] draws one Bernoulli per unordered pair;
//! * [`generate_stratified`] groups pairs by their [`PairClass`], draws a
//!   binomial edge count per class and then picks that many distinct pairs of
//!   the class uniformly by unranking indices. It has the same distribution
//!   as the naive route at a cost proportional to the number of edges;
//! * [`generate_rmat`] draws `m` ordered pairs digit by digit and merges them.
//!
//! All three are deterministic functions of their [`SeedSpec`]: work is cut
//! into fixed blocks and every block owns a child substream.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, RngCore};
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{trinomial, BinomialTable};
use crate::error::{Error, Result};
use crate::model::{KroneckerParams, PairClass, SampledGraph, VertexId};
use crate::rng::SeedSpec;

/// Default digit cap of the naive generator (2^27 pairs).
pub const NAIVE_MAX_N: u32 = 14;
/// Hard cap of the naive generator, even with raised limits.
pub const NAIVE_HARD_MAX_N: u32 = 20;
/// Hard cap of the stratified generator.
pub const STRATIFIED_MAX_N: u32 = 30;

const ROWS_PER_BLOCK: u64 = 64;
const RMAT_PAIRS_PER_BLOCK: u64 = 1 << 14;

/// Size guards for the generators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Limits {
    pub naive_max_n: u32,
    pub stratified_max_n: u32,
    /// Upper bound on the expected number of edges (plus loops).
    pub max_expected_edges: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            naive_max_n: NAIVE_MAX_N,
            stratified_max_n: STRATIFIED_MAX_N,
            max_expected_edges: 5e7,
        }
    }
}

#[cfg(feature = "parallel")]
pub(crate) fn map_blocks<T, F>(count: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_blocks<T, F>(count: u64, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    (0..count).map(f).collect()
}

/// Edges and loops produced by one block of rows.
type BlockEdges = (Vec<(u64, u64)>, Vec<u64>);

/// Bernoulli thresholds on a uniform `u64`, indexed by `(both_one, mixed)`.
struct ThresholdTable {
    n: u32,
    cells: Vec<u64>,
}

impl ThresholdTable {
    fn new(p: &KroneckerParams) -> Self {
        let n = p.n();
        let width = n as usize + 1;
        let mut cells = vec![0u64; width * width];
        for a in 0..=n {
            for b in 0..=(n - a) {
                let pr = p.class_probability(PairClass {
                    both_one: a,
                    mixed: b,
                    both_zero: n - a - b,
                });
                cells[a as usize * width + b as usize] = probability_threshold(pr);
            }
        }
        Self { n, cells }
    }

    #[inline]
    fn get(&self, u: u64, v: u64) -> u64 {
        let a = (u & v).count_ones() as usize;
        let b = (u ^ v).count_ones() as usize;
        self.cells[a * (self.n as usize + 1) + b]
    }
}

/// `P(x < t) = pr` for `x` uniform on `u64`, up to 2^-64.
fn probability_threshold(pr: f64) -> u64 {
    if pr >= 1.0 {
        u64::MAX
    } else {
        (pr * 18_446_744_073_709_551_616.0) as u64
    }
}

pub fn generate_naive(p: &KroneckerParams, include_loops: bool, seed: SeedSpec) -> Result<SampledGraph> {
    generate_naive_with(p, include_loops, seed, &Limits::default())
}

pub fn generate_naive_with(
    p: &KroneckerParams,
    include_loops: bool,
    seed: SeedSpec,
    limits: &Limits,
) -> Result<SampledGraph> {
    let cap = limits.naive_max_n.min(NAIVE_HARD_MAX_N);
    if p.n() > cap {
        return Err(Error::capacity_with_hint(
            format!("naive generation visits 2^(2n-1) pairs; n = {} exceeds the cap {cap}", p.n()),
            "use the stratified generator for larger n",
        ));
    }
    let n_vertices = p.vertex_count();
    let table = ThresholdTable::new(p);
    let blocks = n_vertices.div_ceil(ROWS_PER_BLOCK);
    let seed = seed.labelled("naive");

    let parts: Vec<BlockEdges> = map_blocks(blocks, |block| {
        let mut rng = seed.child(block).rng();
        let mut edges = Vec::new();
        let mut loops = Vec::new();
        let lo = block * ROWS_PER_BLOCK;
        let hi = (lo + ROWS_PER_BLOCK).min(n_vertices);
        for u in lo..hi {
            if include_loops && rng.next_u64() < table.get(u, u) {
                loops.push(u);
            }
            for v in (u + 1)..n_vertices {
                if rng.next_u64() < table.get(u, v) {
                    edges.push((u, v));
                }
            }
        }
        (edges, loops)
    });

    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for (e, l) in parts {
        edges.extend(e);
        loops.extend(l);
    }
    Ok(SampledGraph::from_sorted(*p, include_loops, edges, loops))
}

/// One stratum of the pair universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairStratum {
    pub class: PairClass,
    /// Number of unordered pairs (or loops, when `mixed == 0`) in the class.
    pub size: u64,
}

impl PairStratum {
    pub fn is_loop(&self) -> bool {
        self.class.mixed == 0
    }
}

/// All pair classes of `Z_2^n` with their unordered-pair cardinalities.
/// Loop classes (`mixed == 0`) are listed only when `include_loops` is set.
pub fn pair_strata(n: u32, include_loops: bool) -> Result<Vec<PairStratum>> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=(n - a) {
            let c = n - a - b;
            if b == 0 && !include_loops {
                continue;
            }
            let base = trinomial(u64::from(a), u64::from(b), u64::from(c))
                .ok_or_else(|| Error::capacity(format!("class size overflows for n = {n}")))?;
            let size = if b == 0 {
                base
            } else {
                base.checked_mul(1u64 << (b - 1))
                    .ok_or_else(|| Error::capacity(format!("class size overflows for n = {n}")))?
            };
            out.push(PairStratum {
                class: PairClass {
                    both_one: a,
                    mixed: b,
                    both_zero: c,
                },
                size,
            });
        }
    }
    Ok(out)
}

/// Expected number of edges (plus loops, if enabled).
pub fn expected_edge_count(p: &KroneckerParams, include_loops: bool) -> Result<f64> {
    Ok(pair_strata(p.n(), include_loops)?
        .iter()
        .map(|s| s.size as f64 * p.class_probability(s.class))
        .sum())
}

/// Maps `0..size` of a stratum bijectively onto its pairs.
///
/// Index layout: `((rank_of_one_positions * C(n - a, c)) + rank_of_zero_positions) * 2^(b-1) + orientation`.
/// The lowest mixed digit is always 1 in the first vertex, which picks one
/// representative of each unordered pair.
pub struct StratumUnranker<'a> {
    table: &'a BinomialTable,
    n: u32,
    class: PairClass,
}

impl<'a> StratumUnranker<'a> {
    pub fn new(table: &'a BinomialTable, n: u32, class: PairClass) -> Self {
        Self { table, n, class }
    }

    /// Returns `(u, v)` with `u <= v`.
    pub fn unrank(&self, mut index: u64) -> (u64, u64) {
        let PairClass {
            both_one: a,
            mixed: b,
            both_zero: c,
        } = self.class;
        let mut all = [0u32; 64];
        for (i, slot) in all.iter_mut().enumerate().take(self.n as usize) {
            *slot = i as u32;
        }
        let orientation = if b > 0 {
            let orient_count = 1u64 << (b - 1);
            let o = index % orient_count;
            index /= orient_count;
            o
        } else {
            0
        };
        let rest_len = (self.n - a) as usize;
        let zero_count = self.table.get(rest_len, c as usize);
        let zero_rank = index % zero_count;
        let one_rank = index / zero_count;

        let ones = self.table.unrank_subset(&all[..self.n as usize], a as usize, one_rank);
        let mut rest = [0u32; 64];
        let mut len = 0;
        for &pos in &all[..self.n as usize] {
            if ones >> pos & 1 == 0 {
                rest[len] = pos;
                len += 1;
            }
        }
        debug_assert_eq!(len, rest_len);
        let zeros = self.table.unrank_subset(&rest[..len], c as usize, zero_rank);

        let mut u = ones;
        let mut v = ones;
        let mut j = 0u32;
        for &pos in &rest[..len] {
            if zeros >> pos & 1 == 1 {
                continue;
            }
            let u_has_one = if j == 0 { true } else { (orientation >> (j - 1)) & 1 == 1 };
            if u_has_one {
                u |= 1u64 << pos;
            } else {
                v |= 1u64 << pos;
            }
            j += 1;
        }
        debug_assert_eq!(j, b);
        if u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }
}

/// `k` distinct values from `0..size`, uniformly (Floyd's algorithm).
fn sample_distinct<R: Rng + ?Sized>(rng: &mut R, size: u64, k: u64) -> Vec<u64> {
    debug_assert!(k <= size);
    let mut chosen: HashSet<u64> = HashSet::with_capacity(k as usize);
    let mut out = Vec::with_capacity(k as usize);
    for j in (size - k)..size {
        let t = rng.random_range(0..=j);
        let pick = if chosen.insert(t) {
            t
        } else {
            chosen.insert(j);
            j
        };
        out.push(pick);
    }
    out
}

pub fn generate_stratified(
    p: &KroneckerParams,
    include_loops: bool,
    seed: SeedSpec,
) -> Result<SampledGraph> {
    generate_stratified_with(p, include_loops, seed, &Limits::default())
}

pub fn generate_stratified_with(
    p: &KroneckerParams,
    include_loops: bool,
    seed: SeedSpec,
    limits: &Limits,
) -> Result<SampledGraph> {
    let cap = limits.stratified_max_n.min(STRATIFIED_MAX_N);
    if p.n() > cap {
        return Err(Error::capacity(format!(
            "stratified generation is capped at n = {cap}, got n = {}",
            p.n()
        )));
    }
    let expected = expected_edge_count(p, include_loops)?;
    if expected > limits.max_expected_edges {
        return Err(Error::capacity(format!(
            "expected edge count {expected:.3e} exceeds the budget {:.3e}",
            limits.max_expected_edges
        )));
    }
    let strata = pair_strata(p.n(), include_loops)?;
    let table = BinomialTable::new(p.n() as usize);
    let seed = seed.labelled("stratified");

    let parts: Vec<Result<Vec<(u64, u64)>>> = map_blocks(strata.len() as u64, |i| {
        let stratum = strata[i as usize];
        let mut rng = seed.child(i).rng();
        let pr = p.class_probability(stratum.class);
        let count = Binomial::new(stratum.size, pr)
            .map_err(|e| Error::param(format!("binomial draw failed: {e}")))?
            .sample(&mut rng);
        let unranker = StratumUnranker::new(&table, p.n(), stratum.class);
        Ok(sample_distinct(&mut rng, stratum.size, count)
            .into_iter()
            .map(|idx| unranker.unrank(idx))
            .collect())
    });

    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for part in parts {
        for (u, v) in part? {
            if u == v {
                loops.push(u);
            } else {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    loops.sort_unstable();
    Ok(SampledGraph::from_sorted(*p, include_loops, edges, loops))
}

/// R-MAT parameters: `alpha + 2 beta + gamma = 1` and `m >= 1` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RmatParams {
    base: KroneckerParams,
    m: u64,
}

pub const RMAT_SUM_TOL: f64 = 1e-12;

impl RmatParams {
    pub fn new(base: KroneckerParams, m: u64) -> Result<Self> {
        let total = base.alpha() + 2.0 * base.beta() + base.gamma();
        if (total - 1.0).abs() > RMAT_SUM_TOL {
            return Err(Error::param(format!(
                "R-MAT requires alpha + 2 beta + gamma = 1, got {total}"
            )));
        }
        if m == 0 {
            return Err(Error::param("R-MAT needs at least one pair (m >= 1)"));
        }
        Ok(Self { base, m })
    }

    pub fn base(&self) -> &KroneckerParams {
        &self.base
    }

    pub fn m(&self) -> u64 {
        self.m
    }
}

/// Outcome of one R-MAT digit draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DigitOutcome {
    BothOne,
    OneZero,
    ZeroOne,
    BothZero,
}

impl DigitOutcome {
    pub fn of_digits(u: bool, v: bool) -> Self {
        match (u, v) {
            (true, true) => DigitOutcome::BothOne,
            (true, false) => DigitOutcome::OneZero,
            (false, true) => DigitOutcome::ZeroOne,
            (false, false) => DigitOutcome::BothZero,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

fn rmat_pair<R: Rng + ?Sized>(rng: &mut R, n: u32, cut: &[f64; 3]) -> (u64, u64) {
    let mut u = 0u64;
    let mut v = 0u64;
    for k in 0..n {
        let x: f64 = rng.random();
        if x < cut[0] {
            u |= 1 << k;
            v |= 1 << k;
        } else if x < cut[1] {
            u |= 1 << k;
        } else if x < cut[2] {
            v |= 1 << k;
        }
    }
    (u, v)
}

/// The raw ordered multiset of `m` R-MAT pairs, before merging.
pub fn rmat_pairs(r: &RmatParams, seed: SeedSpec) -> Vec<(u64, u64)> {
    let p = r.base;
    let cut = [p.alpha(), p.alpha() + p.beta(), p.alpha() + 2.0 * p.beta()];
    let blocks = r.m.div_ceil(RMAT_PAIRS_PER_BLOCK);
    let seed = seed.labelled("rmat");
    let n = p.n();
    let m = r.m;
    map_blocks(blocks, |block| {
        let mut rng = seed.child(block).rng();
        let lo = block * RMAT_PAIRS_PER_BLOCK;
        let hi = (lo + RMAT_PAIRS_PER_BLOCK).min(m);
        (lo..hi).map(|_| rmat_pair(&mut rng, n, &cut)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// R-MAT realization: multi-edges merged, direction dropped, `u == v` draws
/// kept as loops.
pub fn generate_rmat(r: &RmatParams, seed: SeedSpec) -> Result<SampledGraph> {
    if r.base.n() > STRATIFIED_MAX_N {
        return Err(Error::capacity(format!(
            "R-MAT output is indexed densely; n = {} exceeds {STRATIFIED_MAX_N}",
            r.base.n()
        )));
    }
    SampledGraph::new(r.base, true, rmat_pairs(r, seed), std::iter::empty())
}

/// Degree of a single vertex, sampled without building the graph.
pub fn sample_vertex_degree(
    p: &KroneckerParams,
    v: VertexId,
    include_loops: bool,
    seed: SeedSpec,
) -> Result<u64> {
    if v.len() != p.n() {
        return Err(Error::Dimension {
            expected: p.n(),
            actual: v.len(),
        });
    }
    if p.n() > 24 {
        return Err(Error::capacity("single-vertex sampling visits 2^n pairs; n > 24"));
    }
    let table = ThresholdTable::new(p);
    let mut rng = seed.labelled("vertex-degree").rng();
    let u = v.bits();
    let mut degree = 0;
    for w in 0..p.vertex_count() {
        if w == u && !include_loops {
            continue;
        }
        if rng.next_u64() < table.get(u, w) {
            degree += 1;
        }
    }
    Ok(degree)
}

/// Vertex count per degree. Every vertex is counted, so the counts sum to `2^n`.
pub fn degree_histogram(g: &SampledGraph, count_loops: bool) -> BTreeMap<u32, u64> {
    let mut hist = BTreeMap::new();
    for d in g.degrees(count_loops) {
        *hist.entry(d).or_insert(0) += 1;
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64, c: f64, n: u32) -> KroneckerParams {
        KroneckerParams::new(a, b, c, n).unwrap()
    }

    #[test]
    fn strata_cover_every_pair() {
        for n in 1..=12u32 {
            let no_loops: u64 = pair_strata(n, false).unwrap().iter().map(|s| s.size).sum();
            assert_eq!(no_loops, (1u64 << (n - 1)) * ((1u64 << n) - 1));
            let with_loops: u64 = pair_strata(n, true).unwrap().iter().map(|s| s.size).sum();
            assert_eq!(with_loops, no_loops + (1u64 << n));
        }
    }

    #[test]
    fn unranking_is_a_bijection_onto_each_class() {
        let n = 6;
        let table = BinomialTable::new(n as usize);
        let mut all = HashSet::new();
        for stratum in pair_strata(n, true).unwrap() {
            let un = StratumUnranker::new(&table, n, stratum.class);
            for idx in 0..stratum.size {
                let (u, v) = un.unrank(idx);
                assert!(u <= v);
                assert_eq!(PairClass::of_bits(u, v, n), stratum.class);
                assert!(all.insert((u, v)), "duplicate pair {u} {v}");
            }
        }
        assert_eq!(all.len() as u64, (1 << (n - 1)) * ((1 << n) - 1) + (1 << n));
    }

    #[test]
    fn naive_single_pair() {
        let p = params(0.6, 0.4, 0.2, 1);
        let trials = 4000;
        let hits = (0..trials)
            .filter(|&t| {
                let g = generate_naive(&p, false, SeedSpec::new(9).child(t)).unwrap();
                assert!(g.loops().is_empty());
                assert!(g.edges().iter().all(|&e| e == (0, 1)));
                g.edge_count() == 1
            })
            .count();
        let freq = hits as f64 / trials as f64;
        assert!((freq - 0.4).abs() < 4.0 * (0.4f64 * 0.6 / trials as f64).sqrt());
    }

    #[test]
    fn stratified_single_pair() {
        let p = params(0.6, 0.4, 0.2, 1);
        let trials = 4000;
        let hits = (0..trials)
            .filter(|&t| {
                let g = generate_stratified(&p, false, SeedSpec::new(10).child(t)).unwrap();
                g.edge_count() == 1
            })
            .count();
        let freq = hits as f64 / trials as f64;
        assert!((freq - 0.4).abs() < 4.0 * (0.4f64 * 0.6 / trials as f64).sqrt());
    }

    #[test]
    fn generators_are_deterministic() {
        let p = params(0.7, 0.5, 0.3, 9);
        let s = SeedSpec::with_stream(77, 3);
        assert_eq!(generate_naive(&p, true, s).unwrap(), generate_naive(&p, true, s).unwrap());
        assert_eq!(
            generate_stratified(&p, true, s).unwrap(),
            generate_stratified(&p, true, s).unwrap()
        );
        assert_ne!(
            generate_naive(&p, true, s).unwrap(),
            generate_naive(&p, true, s.child(1)).unwrap()
        );
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn output_independent_of_thread_count() {
        let p = params(0.7, 0.5, 0.3, 10);
        let s = SeedSpec::new(5);
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| generate_naive(&p, true, s).unwrap());
        let b = four.install(|| generate_naive(&p, true, s).unwrap());
        assert_eq!(a, b);
        let a = one.install(|| generate_stratified(&p, true, s).unwrap());
        let b = four.install(|| generate_stratified(&p, true, s).unwrap());
        assert_eq!(a, b);
        let r = RmatParams::new(params(0.45, 0.15, 0.25, 10), 40_000).unwrap();
        assert_eq!(one.install(|| rmat_pairs(&r, s)), four.install(|| rmat_pairs(&r, s)));
    }

    #[test]
    fn graphs_are_simple_and_in_range() {
        let p = params(0.8, 0.6, 0.4, 8);
        for g in [
            generate_naive(&p, true, SeedSpec::new(1)).unwrap(),
            generate_stratified(&p, true, SeedSpec::new(1)).unwrap(),
        ] {
            assert!(g.edges().windows(2).all(|w| w[0] < w[1]));
            assert!(g.edges().iter().all(|&(u, v)| u < v && v < 256));
            assert!(g.loops().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn loops_flag_is_respected() {
        let p = params(0.9, 0.5, 0.9, 6);
        let g = generate_naive(&p, false, SeedSpec::new(2)).unwrap();
        assert!(g.loops().is_empty());
        let g = generate_stratified(&p, false, SeedSpec::new(2)).unwrap();
        assert!(g.loops().is_empty());
        let g = generate_stratified(&p, true, SeedSpec::new(2)).unwrap();
        assert!(!g.loops().is_empty());
    }

    #[test]
    fn capacity_errors() {
        let p = params(0.5, 0.5, 0.5, 15);
        match generate_naive(&p, true, SeedSpec::new(0)) {
            Err(Error::Capacity { hint: Some(h), .. }) => assert!(h.contains("stratified")),
            other => panic!("unexpected {other:?}"),
        }
        let big = params(0.99, 0.99, 0.99, 30);
        assert!(matches!(
            generate_stratified(&big, true, SeedSpec::new(0)),
            Err(Error::Capacity { .. })
        ));
        let too_many = params(0.5, 0.5, 0.5, 31);
        assert!(generate_stratified(&too_many, true, SeedSpec::new(0)).is_err());
    }

    #[test]
    fn rmat_constraint() {
        assert!(RmatParams::new(params(0.5, 0.2, 0.2, 4), 10).is_err());
        assert!(RmatParams::new(params(0.45, 0.15, 0.25, 4), 0).is_err());
        assert!(RmatParams::new(params(0.45, 0.15, 0.25, 4), 10).is_ok());
    }

    #[test]
    fn rmat_single_digit_single_pair() {
        let r = RmatParams::new(params(0.25, 0.25, 0.25, 1), 1).unwrap();
        let trials = 8000u64;
        let (mut edge, mut loop0, mut loop1) = (0, 0, 0);
        for t in 0..trials {
            let g = generate_rmat(&r, SeedSpec::new(3).child(t)).unwrap();
            match (g.edges(), g.loops()) {
                ([(0, 1)], []) => edge += 1,
                ([], [0]) => loop0 += 1,
                ([], [1]) => loop1 += 1,
                other => panic!("unexpected {other:?}"),
            }
        }
        let check = |count: u64, pr: f64| {
            let sd = (pr * (1.0 - pr) / trials as f64).sqrt();
            assert!((count as f64 / trials as f64 - pr).abs() < 4.0 * sd);
        };
        check(edge, 0.5);
        check(loop0, 0.25);
        check(loop1, 0.25);
    }

    #[test]
    fn rmat_collisions_merge() {
        let n = 12;
        let r = RmatParams::new(params(0.45, 0.15, 0.25, n), 1 << n).unwrap();
        let pairs = rmat_pairs(&r, SeedSpec::new(4));
        assert_eq!(pairs.len(), 1 << n);
        let mut distinct: Vec<(u64, u64)> = pairs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        distinct.sort_unstable();
        distinct.dedup();
        assert!(distinct.len() < pairs.len());
        let g = generate_rmat(&r, SeedSpec::new(4)).unwrap();
        assert_eq!(g.edge_count() + g.loops().len(), distinct.len());
        assert!(g.edge_count() < (1 << n));
    }

    #[test]
    fn histogram_identities() {
        let p = params(0.5, 0.5, 0.5, 5);
        let empty = SampledGraph::new(p, true, vec![], vec![]).unwrap();
        assert_eq!(degree_histogram(&empty, true), BTreeMap::from([(0, 32)]));
        let one = SampledGraph::new(p, false, vec![(3, 17)], vec![]).unwrap();
        assert_eq!(degree_histogram(&one, true), BTreeMap::from([(0, 30), (1, 2)]));

        let g = generate_naive(&params(0.8, 0.7, 0.6, 7), true, SeedSpec::new(8)).unwrap();
        let hist = degree_histogram(&g, true);
        assert_eq!(hist.values().sum::<u64>(), 128);
        let handshake: u64 = hist.iter().map(|(&d, &c)| u64::from(d) * c).sum();
        assert_eq!(handshake, 2 * g.edge_count() as u64 + g.loops().len() as u64);
    }

    #[test]
    fn vertex_degree_sampler_mean() {
        let p = params(0.6, 0.5, 0.3, 10);
        let v = p.vertex(0b1111100000).unwrap();
        let trials = 400;
        let mean = (0..trials)
            .map(|t| sample_vertex_degree(&p, v, true, SeedSpec::new(6).child(t)).unwrap() as f64)
            .sum::<f64>()
            / trials as f64;
        let expected = 1.1f64.powi(5) * 0.8f64.powi(5);
        assert!((mean - expected).abs() < 4.0 * (expected / trials as f64).sqrt());
    }
}

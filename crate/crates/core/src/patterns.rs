//! Small pattern graphs and their base values.
//!
//! The base value of a pattern `G` is
//! `B_G = sum over g: V(G) -> {0,1} of prod over edges uv of P[g(u)][g(v)]`,
//! and `B_G^n` is the leading term of the expected number of labeled copies of
//! `G` in `K(n, P)`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::KroneckerParams;
use crate::stats::neumaier_sum;

/// Largest vertex count accepted for a pattern.
pub const MAX_PATTERN_VERTICES: usize = 12;
/// Largest vertex count for which base values are enumerated.
pub const MAX_BASE_VALUE_VERTICES: usize = 10;
/// Largest pattern for which pair unions are enumerated.
pub const MAX_UNION_VERTICES: usize = 6;
/// Largest edge count for edge-labeling enumeration.
pub const MAX_LABELED_EDGES: usize = 20;
/// Certificate margins below this are reported as boundary cases.
pub const CERTIFICATE_MARGIN: f64 = 1e-9;

/// A simple undirected graph on `0..vertex_count`. Edges are stored as
/// `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl PatternGraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count > MAX_PATTERN_VERTICES {
            return Err(Error::capacity(format!(
                "patterns are limited to {MAX_PATTERN_VERTICES} vertices, got {vertex_count}"
            )));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::param(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::param(format!("pattern loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::param(format!("duplicate pattern edge ({u}, {v})")));
            }
        }
        Ok(Self {
            vertex_count,
            edges: set.into_iter().collect(),
        })
    }

    pub fn edge() -> Self {
        Self::path(1).expect("valid")
    }

    /// `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("star needs at least one leaf"));
        }
        Self::new(k + 1, (1..=k).map(|i| (0, i)))
    }

    /// Cycle on `k >= 3` vertices.
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::param(format!("cycle length must be at least 3, got {k}")));
        }
        Self::new(k, (0..k).map(|i| (i, (i + 1) % k)))
    }

    /// Path with `k >= 1` edges.
    pub fn path(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("path needs at least one edge"));
        }
        Self::new(k + 1, (0..k).map(|i| (i, i + 1)))
    }

    pub fn complete(k: usize) -> Result<Self> {
        Self::new(k, (0..k).flat_map(|i| ((i + 1)..k).map(move |j| (i, j))))
    }

    /// Two `k`-cycles sharing exactly `l` consecutive edges. Two distinct
    /// cycles can share at most `k - 2` edges.
    pub fn overlapping_cycles(k: usize, l: usize) -> Result<Self> {
        if k < 3 || l == 0 || l + 2 > k {
            return Err(Error::param(format!("need k >= 3 and 0 < l <= k - 2, got k={k}, l={l}")));
        }
        let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        // second cycle: shared path 0..=l, then back from l to 0 through fresh vertices
        let mut prev = l;
        for j in 0..(k - l - 1) {
            let fresh = k + j;
            edges.push((prev, fresh));
            prev = fresh;
        }
        edges.push((prev, 0));
        Self::new(2 * k - l - 1, edges)
    }

    /// Parses a builtin name (`star:k`, `cycle:k`, `path:k`, `complete:k`,
    /// `edge`) or the text format: vertex count on the first line, then one
    /// `u v` pair per line.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((name, arg)) = t.split_once(':') {
            let k: usize = arg
                .trim()
                .parse()
                .map_err(|_| Error::param(format!("bad pattern size in `{t}`")))?;
            return match name.trim() {
                "star" => Self::star(k),
                "cycle" => Self::cycle(k),
                "path" => Self::path(k),
                "complete" => Self::complete(k),
                other => Err(Error::param(format!("unknown pattern `{other}`"))),
            };
        }
        if t == "edge" {
            return Ok(Self::edge());
        }
        let mut lines = t.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty pattern".into() })?;
        let vertex_count: usize = first.trim().parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("expected a vertex count, got `{}`", first.trim()),
        })?;
        let mut edges = Vec::new();
        for (i, line) in lines {
            let err = || Error::Parse {
                line: i + 1,
                msg: format!("expected `u v`, got `{}`", line.trim()),
            };
            let mut parts = line.split_whitespace();
            let u: usize = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
            let v: usize = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
            if parts.next().is_some() {
                return Err(err());
            }
            edges.push((u, v));
        }
        Self::new(vertex_count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors().iter().map(Vec::len).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count >= 1 && self.edges.len() + 1 == self.vertex_count && self.is_connected()
    }

    /// Vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &PatternGraph) -> Result<Self> {
        let shift = self.vertex_count;
        Self::new(
            self.vertex_count + other.vertex_count,
            self.edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift))),
        )
    }

    /// `perm[v]` is the new index of vertex `v`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count {
            return Err(Error::param("permutation length differs from vertex count"));
        }
        Self::new(self.vertex_count, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Merges vertex `v` into `u`. Returns `None` when the result would not be
    /// simple (`u ~ v`, or `u` and `v` share a neighbour).
    pub fn identify_vertices(&self, u: usize, v: usize) -> Option<Self> {
        if u == v || u >= self.vertex_count || v >= self.vertex_count || self.has_edge(u, v) {
            return None;
        }
        let map = |x: usize| {
            let x = if x == v { u } else { x };
            if x > v {
                x - 1
            } else {
                x
            }
        };
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            let e = (map(a).min(map(b)), map(a).max(map(b)));
            if !seen.insert(e) {
                return None;
            }
            edges.push(e);
        }
        Self::new(self.vertex_count - 1, edges).ok()
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &PatternGraph) -> bool {
        self.vertex_count == other.vertex_count
            && self.edges.len() == other.edges.len()
            && self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} vertices:", self.vertex_count)?;
        for (u, v) in &self.edges {
            write!(f, " {u}-{v}")?;
        }
        Ok(())
    }
}

impl FromStr for PatternGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// All non-isomorphic trees on exactly `v` vertices (`1 <= v <= 8`).
pub fn nonisomorphic_trees(v: usize) -> Result<Vec<PatternGraph>> {
    if v == 0 || v > 8 {
        return Err(Error::param(format!("tree enumeration supports 1..=8 vertices, got {v}")));
    }
    if v == 1 {
        return Ok(vec![PatternGraph::new(1, [])?]);
    }
    if v == 2 {
        return Ok(vec![PatternGraph::edge()]);
    }
    // every labeled tree via its Pruefer sequence
    let len = v - 2;
    let total = v.pow(len as u32);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for code in 0..total {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % v);
            c /= v;
        }
        let tree = pruefer_tree(v, &seq)?;
        if seen.insert(tree.canonical_form()) {
            out.push(tree);
        }
    }
    out.sort_by_key(|t| std::cmp::Reverse(*t.degrees().iter().max().unwrap_or(&0)));
    Ok(out)
}

fn pruefer_tree(v: usize, seq: &[usize]) -> Result<PatternGraph> {
    let mut degree = vec![1usize; v];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(v - 1);
    for &s in seq {
        let leaf = (0..v).find(|&i| degree[i] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..v).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    PatternGraph::new(v, edges)
}

/// Isomorphism-invariant encoding of a pattern graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Upper-triangle adjacency bits under the canonical labeling.
    pub bits: u128,
}

fn refine(adj: &[Vec<usize>], colors: &mut Vec<u32>) {
    let n = colors.len();
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = adj[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).expect("present") as u32)
            .collect();
        *colors = next;
        if sorted.len() == classes {
            return;
        }
        classes = sorted.len();
    }
}

fn leaf_bits(edges: &[(usize, usize)], colors: &[u32]) -> u128 {
    let mut bits = 0u128;
    for &(u, v) in edges {
        let (a, b) = (colors[u] as usize, colors[v] as usize);
        let (hi, lo) = (a.max(b), a.min(b));
        bits |= 1u128 << (hi * (hi - 1) / 2 + lo);
    }
    bits
}

fn search(g: &PatternGraph, adj: &[Vec<usize>], mut colors: Vec<u32>, best: &mut Option<u128>) {
    refine(adj, &mut colors);
    let n = colors.len();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c as usize] += 1;
    }
    let Some(target) = (0..n).find(|&c| counts[c] > 1) else {
        let bits = leaf_bits(&g.edges, &colors);
        if best.is_none_or(|b| bits < b) {
            *best = Some(bits);
        }
        return;
    };
    for v in 0..n {
        if colors[v] as usize != target {
            continue;
        }
        let next: Vec<u32> = (0..n)
            .map(|u| 2 * colors[u] + u32::from(colors[u] as usize == target && u != v))
            .collect();
        search(g, adj, next, best);
    }
}

/// Canonical form by colour refinement and individualization; the minimum
/// adjacency encoding over all leaves of the search tree.
pub fn canonical_form(g: &PatternGraph) -> CanonicalForm {
    let adj = g.neighbors();
    let mut best = None;
    search(g, &adj, vec![0; g.vertex_count], &mut best);
    CanonicalForm {
        vertex_count: g.vertex_count,
        edge_count: g.edges.len(),
        bits: best.unwrap_or(0),
    }
}

/// `B_G`, by enumerating all `2^v(G)` vertex labelings.
pub fn base_value(p: &KroneckerParams, g: &PatternGraph) -> Result<f64> {
    let v = g.vertex_count;
    if v > MAX_BASE_VALUE_VERTICES {
        return Err(Error::capacity(format!(
            "base value enumerates 2^v labelings; v = {v} exceeds {MAX_BASE_VALUE_VERTICES}"
        )));
    }
    let e = g.edges.len() as i32;
    let pow = |x: f64| (0..=e).map(|k| x.powi(k)).collect::<Vec<f64>>();
    let (pa, pb, pc) = (pow(p.alpha()), pow(p.beta()), pow(p.gamma()));
    Ok(neumaier_sum((0u32..(1 << v)).map(|labeling| {
        let (mut ones, mut mixed) = (0, 0);
        for &(x, y) in &g.edges {
            match (labeling >> x & 1) + (labeling >> y & 1) {
                2 => ones += 1,
                1 => mixed += 1,
                _ => {}
            }
        }
        pa[ones] * pb[mixed] * pc[g.edges.len() - ones - mixed]
    })))
}

/// `n ln B_G`.
pub fn ln_expected_copies_asymptotic(p: &KroneckerParams, g: &PatternGraph) -> Result<f64> {
    Ok(f64::from(p.n()) * base_value(p, g)?.ln())
}

/// `B_G^n`, an upper bound on the expected number of labeled copies.
pub fn expected_copies_asymptotic(p: &KroneckerParams, g: &PatternGraph) -> Result<f64> {
    Ok(ln_expected_copies_asymptotic(p, g)?.exp())
}

/// Budget on `(2^n)^v(G)` for [`expected_copies_exact`].
pub const EXACT_COPIES_BUDGET: f64 = 1e8;

/// Exact expected number of labeled copies: the sum over injective maps
/// `V(G) -> Z_2^n` of the product of edge probabilities.
pub fn expected_copies_exact(p: &KroneckerParams, g: &PatternGraph) -> Result<f64> {
    let v = g.vertex_count;
    let size = (p.n() as f64 * std::f64::consts::LN_2 * v as f64).exp();
    if size > EXACT_COPIES_BUDGET * (1.0 + 1e-9) {
        return Err(Error::capacity(format!(
            "(2^n)^v = {size:.3e} maps exceed the budget {EXACT_COPIES_BUDGET:.0e}"
        )));
    }
    let n = p.n();
    let count = p.vertex_count();
    // probability by (both-one, mixed) counts
    let width = n as usize + 1;
    let mut table = vec![0.0; width * width];
    for a in 0..=n {
        for b in 0..=(n - a) {
            table[a as usize * width + b as usize] = p.class_probability(crate::model::PairClass {
                both_one: a,
                mixed: b,
                both_zero: n - a - b,
            });
        }
    }
    let prob = |x: u64, y: u64| table[(x & y).count_ones() as usize * width + (x ^ y).count_ones() as usize];

    // edges to earlier vertices, for incremental products
    let back: Vec<Vec<usize>> = (0..v)
        .map(|i| {
            g.edges
                .iter()
                .filter_map(|&(x, y)| if y == i { Some(x) } else { None })
                .collect()
        })
        .collect();

    fn rec(
        i: usize,
        image: &mut Vec<u64>,
        acc: f64,
        v: usize,
        count: u64,
        back: &[Vec<usize>],
        prob: &dyn Fn(u64, u64) -> f64,
    ) -> f64 {
        if i == v {
            return acc;
        }
        let mut total = 0.0;
        for x in 0..count {
            if image.contains(&x) {
                continue;
            }
            let mut term = acc;
            for &j in &back[i] {
                term *= prob(image[j], x);
            }
            image.push(x);
            total += rec(i + 1, image, term, v, count, back, prob);
            image.pop();
        }
        total
    }
    Ok(rec(0, &mut Vec::with_capacity(v), 1.0, v, count, &back, &prob))
}

/// `(alpha+beta)^k + (beta+gamma)^k`, the base value of `K_{1,k}`.
pub fn star_base_value(p: &KroneckerParams, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::param("star needs at least one leaf"));
    }
    Ok((p.alpha() + p.beta()).powi(k as i32) + (p.beta() + p.gamma()).powi(k as i32))
}

/// `2 (alpha+beta)^e`, the base value of any tree with `e` edges when
/// `alpha == gamma`.
pub fn tree_base_value(p: &KroneckerParams, edge_count: u32) -> Result<f64> {
    p.require_symmetric("tree base value")?;
    if edge_count == 0 {
        return Err(Error::param("tree needs at least one edge"));
    }
    Ok(2.0 * (p.alpha() + p.beta()).powi(edge_count as i32))
}

/// `(alpha+beta)^k + (alpha-beta)^k` for `C_k` when `alpha == gamma`.
pub fn cycle_base_value(p: &KroneckerParams, k: u32) -> Result<f64> {
    p.require_symmetric("cycle base value")?;
    if k < 3 {
        return Err(Error::param(format!("cycle length must be at least 3, got {k}")));
    }
    Ok(cycle_base_value_unchecked(p.alpha(), p.beta(), k))
}

/// The cycle closed form for raw `(alpha, beta)`, without validation.
pub fn cycle_base_value_unchecked(alpha: f64, beta: f64, k: u32) -> f64 {
    (alpha + beta).powi(k as i32) + (alpha - beta).powi(k as i32)
}

/// Base value of two `k`-cycles sharing `l` consecutive edges (`alpha == gamma`):
/// `((a+b)^(2k-l) + (a+b)^l (a-b)^(2k-2l) + 2 (a+b)^(k-l) (a-b)^k) / 2`.
pub fn overlap_cycle_base_value(p: &KroneckerParams, k: u32, l: u32) -> Result<f64> {
    p.require_symmetric("overlapping-cycle base value")?;
    if k < 3 || l == 0 || l >= k {
        return Err(Error::param(format!("need k >= 3 and 0 < l < k, got k={k}, l={l}")));
    }
    let (s, d) = (p.alpha() + p.beta(), p.alpha() - p.beta());
    let (k, l) = (k as i32, l as i32);
    Ok(0.5 * (s.powi(2 * k - l) + s.powi(l) * d.powi(2 * k - 2 * l) + 2.0 * s.powi(k - l) * d.powi(k)))
}

/// Edge labeling induced by a vertex labeling: edge `i` gets
/// `g(u) xor g(v)`. Bit `i` refers to `G.edges()[i]`.
pub fn psi_map(g: &PatternGraph, vertex_labeling: u32) -> u32 {
    g.edges
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| ((vertex_labeling >> u ^ vertex_labeling >> v) & 1) << i)
        .fold(0, |acc, b| acc | b)
}

/// Edge masks of a fundamental cycle basis (one cycle per non-tree edge of a
/// BFS spanning forest).
pub fn fundamental_cycles(g: &PatternGraph) -> Vec<u32> {
    let n = g.vertex_count;
    let adj = g.neighbors();
    let edge_index = |u: usize, v: usize| g.edges.binary_search(&(u.min(v), u.max(v))).expect("edge");
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree = vec![false; g.edges.len()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = Some(u);
                    tree[edge_index(u, w)] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for (i, &(u, v)) in g.edges.iter().enumerate() {
        if tree[i] {
            continue;
        }
        let mut mask = 1u32 << i;
        let (mut x, mut y) = (u, v);
        while x != y {
            if depth[x] >= depth[y] {
                let px = parent[x].expect("non-root");
                mask ^= 1 << edge_index(x, px);
                x = px;
            } else {
                let py = parent[y].expect("non-root");
                mask ^= 1 << edge_index(y, py);
                y = py;
            }
        }
        cycles.push(mask);
    }
    cycles
}

/// Edge labelings realizable as digit differences of a vertex labeling: those
/// with an even number of ones on every cycle. Each has exactly two
/// preimages under [`psi_map`] when `G` is connected.
pub fn valid_edge_labelings(g: &PatternGraph) -> Result<Vec<u32>> {
    if !g.is_connected() {
        return Err(Error::Unsupported(
            "edge-labeling enumeration requires a connected pattern".into(),
        ));
    }
    let e = g.edges.len();
    if e > MAX_LABELED_EDGES {
        return Err(Error::capacity(format!(
            "edge-labeling enumeration is limited to {MAX_LABELED_EDGES} edges, got {e}"
        )));
    }
    let cycles = fundamental_cycles(g);
    Ok((0u32..(1 << e))
        .filter(|&l| cycles.iter().all(|&c| (l & c).count_ones() % 2 == 0))
        .collect())
}

/// `B_G` through valid edge labelings: `2 sum alpha^(#0) beta^(#1)`, valid
/// for connected `G` when `alpha == gamma`.
pub fn base_value_by_edge_labelings(p: &KroneckerParams, g: &PatternGraph) -> Result<f64> {
    p.require_symmetric("edge-labeling base value")?;
    let e = g.edges.len() as i32;
    let total = neumaier_sum(valid_edge_labelings(g)?.into_iter().map(|l| {
        let ones = l.count_ones() as i32;
        p.alpha().powi(e - ones) * p.beta().powi(ones)
    }));
    Ok(2.0 * total)
}

/// A graph formed by two overlapping, distinct copies of a pattern.
/// `f1` and `f2` map the pattern's vertices into `graph`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionPattern {
    pub graph: PatternGraph,
    pub f1: Vec<usize>,
    pub f2: Vec<usize>,
}

fn edge_image(g: &PatternGraph, f: &[usize]) -> BTreeSet<(usize, usize)> {
    g.edges
        .iter()
        .map(|&(u, v)| (f[u].min(f[v]), f[u].max(f[v])))
        .collect()
}

/// All pairwise non-isomorphic members of the union family of `g`.
///
/// `f1` is fixed to the identity; `f2` ranges over injective maps sending
/// each vertex either to a vertex of the first copy or to a fresh vertex
/// (fresh vertices numbered in order of first use).
pub fn enumerate_pair_unions(g: &PatternGraph) -> Result<Vec<UnionPattern>> {
    let v = g.vertex_count;
    if v > MAX_UNION_VERTICES {
        return Err(Error::capacity(format!(
            "pair unions are enumerated for at most {MAX_UNION_VERTICES} vertices, got {v}"
        )));
    }
    let e1 = edge_image(g, &(0..v).collect::<Vec<_>>());
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut f2 = Vec::with_capacity(v);
    let mut used = vec![false; v];

    fn rec(
        g: &PatternGraph,
        e1: &BTreeSet<(usize, usize)>,
        f2: &mut Vec<usize>,
        used: &mut [bool],
        fresh: usize,
        seen: &mut HashSet<CanonicalForm>,
        out: &mut Vec<UnionPattern>,
    ) -> Result<()> {
        let v = g.vertex_count;
        if f2.len() == v {
            let e2 = edge_image(g, f2);
            if e2 == *e1 || e2.is_disjoint(e1) {
                return Ok(());
            }
            let union = PatternGraph::new(v + fresh, e1.union(&e2).copied())?;
            if seen.insert(union.canonical_form()) {
                out.push(UnionPattern {
                    graph: union,
                    f1: (0..v).collect(),
                    f2: f2.clone(),
                });
            }
            return Ok(());
        }
        for target in 0..v {
            if !used[target] {
                used[target] = true;
                f2.push(target);
                rec(g, e1, f2, used, fresh, seen, out)?;
                f2.pop();
                used[target] = false;
            }
        }
        f2.push(v + fresh);
        rec(g, e1, f2, used, fresh + 1, seen, out)?;
        f2.pop();
        Ok(())
    }

    rec(g, &e1, &mut f2, &mut used, 0, &mut seen, &mut out)?;
    out.sort_by(|a, b| {
        (a.graph.edge_count(), a.graph.vertex_count(), a.graph.canonical_form())
            .cmp(&(b.graph.edge_count(), b.graph.vertex_count(), b.graph.canonical_form()))
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Pass,
    Boundary,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub union: UnionPattern,
    pub base_value: f64,
    /// `B_G^2 - B_F`.
    pub margin: f64,
    pub status: CertificateStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondMomentCertificate {
    pub pattern: PatternGraph,
    pub base_value: f64,
    pub base_value_squared: f64,
    pub entries: Vec<CertificateEntry>,
    pub status: CertificateStatus,
}

impl SecondMomentCertificate {
    pub fn passes(&self) -> bool {
        self.status == CertificateStatus::Pass
    }

    pub fn worst_margin(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.margin).reduce(f64::min)
    }
}

/// Checks `B_F < B_G^2` for every `F` in the union family of `G`. When this
/// holds, `E(X_F) = o(E(X_G)^2)` for every such `F` and the count of copies
/// of `G` concentrates around its mean.
pub fn second_moment_certificate(p: &KroneckerParams, g: &PatternGraph) -> Result<SecondMomentCertificate> {
    let unions = enumerate_pair_unions(g)?;
    certify_unions(p, g, unions)
}

/// As [`second_moment_certificate`], reusing an enumerated union family.
pub fn certify_unions(
    p: &KroneckerParams,
    g: &PatternGraph,
    unions: Vec<UnionPattern>,
) -> Result<SecondMomentCertificate> {
    let bg = base_value(p, g)?;
    let sq = bg * bg;
    let mut entries = Vec::with_capacity(unions.len());
    let mut status = CertificateStatus::Pass;
    for union in unions {
        let bf = base_value(p, &union.graph)?;
        let margin = sq - bf;
        let s = if margin.abs() < CERTIFICATE_MARGIN {
            CertificateStatus::Boundary
        } else if margin > 0.0 {
            CertificateStatus::Pass
        } else {
            CertificateStatus::Fail
        };
        status = match (status, s) {
            (CertificateStatus::Fail, _) | (_, CertificateStatus::Fail) => CertificateStatus::Fail,
            (CertificateStatus::Boundary, _) | (_, CertificateStatus::Boundary) => CertificateStatus::Boundary,
            _ => CertificateStatus::Pass,
        };
        entries.push(CertificateEntry {
            union,
            base_value: bf,
            margin,
            status: s,
        });
    }
    Ok(SecondMomentCertificate {
        pattern: g.clone(),
        base_value: bg,
        base_value_squared: sq,
        entries,
        status,
    })
}

/// Whether `phi` is a surjective homomorphism `h1 -> h2` whose edge map is
/// injective.
pub fn is_edge_injective_surjection(h1: &PatternGraph, h2: &PatternGraph, phi: &[usize]) -> bool {
    if phi.len() != h1.vertex_count || phi.iter().any(|&x| x >= h2.vertex_count) {
        return false;
    }
    let mut hit = vec![false; h2.vertex_count];
    for &x in phi {
        hit[x] = true;
    }
    if hit.iter().any(|&h| !h) {
        return false;
    }
    let mut images = HashSet::new();
    for &(u, v) in &h1.edges {
        let (a, b) = (phi[u], phi[v]);
        if a == b || !h2.has_edge(a, b) || !images.insert((a.min(b), a.max(b))) {
            return false;
        }
    }
    true
}

//! The initiator matrix, vertex arithmetic over `Z_2^n` and the edge
//! probability of the stochastic Kronecker graph.
//!
//! A vertex is an `n`-digit binary string. Digit `k` (1-based) is stored in
//! bit `k - 1` of a `u64`, so `n` is capped at 64. The textual form of a
//! vertex is the ordinary binary numeral of that word, zero-padded to `n`
//! characters, so lexicographic order on strings equals numeric order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest digit count representable by a [`VertexId`].
pub const MAX_DIGITS: u32 = 64;

/// Tolerance used for every equality test on parameter combinations
/// (`alpha == gamma`, `alpha + beta == 1`, ...).
pub const PARAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct KroneckerParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
    n: u32,
}

impl TryFrom<RawParams> for KroneckerParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        KroneckerParams::new(r.alpha, r.beta, r.gamma, r.n)
    }
}

impl From<KroneckerParams> for RawParams {
    fn from(p: KroneckerParams) -> Self {
        RawParams {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
            n: p.n,
        }
    }
}

fn check_probability(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("{name} must lie strictly inside (0, 1), got {x}")))
    }
}

impl KroneckerParams {
    /// Matrix `[[alpha, beta], [beta, gamma]]` with `n` digits. `alpha` sits
    /// on the (1,1) entry and `gamma` on the (0,0) entry.
    pub fn new(alpha: f64, beta: f64, gamma: f64, n: u32) -> Result<Self> {
        check_probability("alpha", alpha)?;
        check_probability("beta", beta)?;
        check_probability("gamma", gamma)?;
        if n == 0 || n > MAX_DIGITS {
            return Err(Error::param(format!(
                "digit count n must be in 1..={MAX_DIGITS}, got {n}"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            n,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Same matrix, different digit count.
    pub fn with_n(&self, n: u32) -> Result<Self> {
        Self::new(self.alpha, self.beta, self.gamma, n)
    }

    /// Same matrix with `alpha` and `gamma` exchanged (global 0/1 flip).
    pub fn swapped(&self) -> Self {
        Self {
            alpha: self.gamma,
            gamma: self.alpha,
            ..*self
        }
    }

    pub fn vertex_count(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            1u64 << self.n
        }
    }

    /// Initiator entry `P[x][y]` for digits `x, y`.
    #[inline]
    pub fn entry(&self, x: bool, y: bool) -> f64 {
        match (x, y) {
            (true, true) => self.alpha,
            (false, false) => self.gamma,
            _ => self.beta,
        }
    }

    /// `alpha == gamma` up to [`PARAM_TOL`].
    pub fn is_symmetric(&self) -> bool {
        (self.alpha - self.gamma).abs() <= PARAM_TOL
    }

    pub(crate) fn require_symmetric(&self, what: &str) -> Result<()> {
        if self.is_symmetric() {
            Ok(())
        } else {
            Err(Error::param(format!(
                "{what} requires alpha == gamma (got alpha={}, gamma={})",
                self.alpha, self.gamma
            )))
        }
    }

    /// Probability of a pair in class `(a, b, c)`: `alpha^a beta^b gamma^c`,
    /// accumulated in log space.
    pub fn class_probability(&self, class: PairClass) -> f64 {
        self.ln_class_probability(class).exp()
    }

    pub fn ln_class_probability(&self, class: PairClass) -> f64 {
        let PairClass {
            both_one,
            mixed,
            both_zero,
        } = class;
        f64::from(both_one) * self.alpha.ln()
            + f64::from(mixed) * self.beta.ln()
            + f64::from(both_zero) * self.gamma.ln()
    }

    pub fn vertex(&self, bits: u64) -> Result<VertexId> {
        VertexId::new(bits, self.n)
    }
}

/// A vertex of `Z_2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId {
    bits: u64,
    len: u32,
}

impl VertexId {
    pub fn new(bits: u64, n: u32) -> Result<Self> {
        if n == 0 || n > MAX_DIGITS {
            return Err(Error::param(format!("digit count must be in 1..=64, got {n}")));
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::param(format!(
                "vertex {bits:#b} has bits set above digit {n}"
            )));
        }
        Ok(Self { bits, len: n })
    }

    /// Parse a zero-padded binary numeral whose length is the digit count.
    pub fn parse_binary(s: &str) -> Result<Self> {
        let len = s.len() as u32;
        if len == 0 || len > MAX_DIGITS || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(Error::param(format!("not a binary vertex string: {s:?}")));
        }
        let bits = u64::from_str_radix(s, 2).map_err(|e| Error::param(e.to_string()))?;
        Self::new(bits, len)
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digit `k`, 1-based.
    pub fn digit(&self, k: u32) -> bool {
        debug_assert!(k >= 1 && k <= self.len);
        (self.bits >> (k - 1)) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn to_binary_string(&self) -> String {
        format!("{:0width$b}", self.bits, width = self.len as usize)
    }

    fn mask(&self) -> u64 {
        if self.len == 64 {
            u64::MAX
        } else {
            (1u64 << self.len) - 1
        }
    }

    fn same_len(&self, other: &VertexId) -> Result<()> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.len,
                actual: other.len,
            })
        }
    }
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

/// Digit-position counts of a vertex pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairClass {
    /// positions with `u_k = v_k = 1`
    pub both_one: u32,
    /// positions with `u_k != v_k`; equals the Hamming distance
    pub mixed: u32,
    /// positions with `u_k = v_k = 0`
    pub both_zero: u32,
}

impl PairClass {
    /// Class of two raw words over `n` digits.
    #[inline]
    pub fn of_bits(u: u64, v: u64, n: u32) -> Self {
        let both_one = (u & v).count_ones();
        let mixed = (u ^ v).count_ones();
        Self {
            both_one,
            mixed,
            both_zero: n - both_one - mixed,
        }
    }

    pub fn total(&self) -> u32 {
        self.both_one + self.mixed + self.both_zero
    }
}

pub fn weight(v: VertexId) -> u32 {
    v.weight()
}

pub fn hamming(u: VertexId, v: VertexId) -> Result<u32> {
    u.same_len(&v)?;
    Ok((u.bits ^ v.bits).count_ones())
}

pub fn pair_class(u: VertexId, v: VertexId) -> Result<PairClass> {
    u.same_len(&v)?;
    debug_assert_eq!((u.bits | v.bits) & !u.mask(), 0);
    Ok(PairClass::of_bits(u.bits, v.bits, u.len))
}

/// `p_{u,v} = prod_k P[u_k][v_k]`, evaluated as `exp(a ln alpha + b ln beta + c ln gamma)`.
/// For `u == v` this is the loop probability `alpha^w gamma^(n-w)`.
pub fn edge_probability(p: &KroneckerParams, u: VertexId, v: VertexId) -> Result<f64> {
    if u.len != p.n {
        return Err(Error::Dimension {
            expected: p.n,
            actual: u.len,
        });
    }
    let class = pair_class(u, v)?;
    Ok(p.class_probability(class))
}

/// A realization of `K(n, P)` (or of R-MAT).
///
/// Edges are stored as `(u, v)` with `u < v`, sorted and free of duplicates;
/// loops are stored separately, also sorted and unique.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGraph {
    params: KroneckerParams,
    loops_enabled: bool,
    edges: Vec<(u64, u64)>,
    loops: Vec<u64>,
}

impl SampledGraph {
    /// Normalizes the given pairs (orientation, order, duplicates). Pairs
    /// with `u == v` among `edges` are moved to the loop set.
    pub fn new(
        params: KroneckerParams,
        loops_enabled: bool,
        edges: impl IntoIterator<Item = (u64, u64)>,
        loops: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        let limit = params.vertex_count();
        let in_range = |x: u64| params.n == 64 || x < limit;
        let mut loop_set: Vec<u64> = Vec::new();
        let mut pairs: Vec<(u64, u64)> = Vec::new();
        for (u, v) in edges {
            if !in_range(u) || !in_range(v) {
                return Err(Error::param(format!(
                    "edge ({u}, {v}) out of range for n = {}",
                    params.n
                )));
            }
            match u.cmp(&v) {
                std::cmp::Ordering::Less => pairs.push((u, v)),
                std::cmp::Ordering::Greater => pairs.push((v, u)),
                std::cmp::Ordering::Equal => loop_set.push(u),
            }
        }
        for v in loops {
            if !in_range(v) {
                return Err(Error::param(format!("loop at {v} out of range")));
            }
            loop_set.push(v);
        }
        pairs.sort_unstable();
        pairs.dedup();
        loop_set.sort_unstable();
        loop_set.dedup();
        Ok(Self {
            params,
            loops_enabled,
            edges: pairs,
            loops: loop_set,
        })
    }

    /// Trusted constructor for generator output that is already normalized.
    pub(crate) fn from_sorted(
        params: KroneckerParams,
        loops_enabled: bool,
        edges: Vec<(u64, u64)>,
        loops: Vec<u64>,
    ) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v));
        debug_assert!(loops.windows(2).all(|w| w[0] < w[1]));
        Self {
            params,
            loops_enabled,
            edges,
            loops,
        }
    }

    pub fn params(&self) -> &KroneckerParams {
        &self.params
    }

    /// Whether the generator was allowed to produce loops.
    pub fn loops_enabled(&self) -> bool {
        self.loops_enabled
    }

    pub fn edges(&self) -> &[(u64, u64)] {
        &self.edges
    }

    pub fn loops(&self) -> &[u64] {
        &self.loops
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.params.vertex_count() as usize
    }

    pub fn has_loop(&self, v: u64) -> bool {
        self.loops.binary_search(&v).is_ok()
    }

    /// Degree of every vertex; a loop adds one when `count_loops` is set.
    pub fn degrees(&self, count_loops: bool) -> Vec<u32> {
        let mut deg = vec![0u32; self.vertex_count()];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        if count_loops {
            for &v in &self.loops {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Compressed adjacency without loops.
    pub fn adjacency(&self) -> Adjacency {
        Adjacency::from_edges(self.vertex_count(), &self.edges)
    }
}

/// CSR adjacency with sorted neighbour lists.
#[derive(Debug, Clone)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Adjacency {
    pub fn from_edges(vertex_count: usize, edges: &[(u64, u64)]) -> Self {
        let mut offsets = vec![0usize; vertex_count + 1];
        for &(u, v) in edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[vertex_count]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v as u32;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u as u32;
            fill[v as usize] += 1;
        }
        for i in 0..vertex_count {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Self { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }
}

//! Experiment configuration and its validation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use kronecker::generator::{expected_edge_count, Limits, RmatParams, NAIVE_HARD_MAX_N};
use kronecker::{KroneckerParams, PatternGraph};
use serde::Serialize;

use crate::CliError;

/// Default guard on `n` for the naive generator.
pub const NAIVE_GUARD_N: u32 = 14;
/// Default guard on `n` for the stratified and R-MAT generators.
pub const STRATIFIED_GUARD_N: u32 = 22;
/// Largest host graph the subgraph counters accept.
pub const COUNT_GUARD_N: u32 = kronecker::empirical::MAX_COUNT_HOST_DIGITS;
/// Rough bound on backtracking steps per counted graph before `--allow-large`
/// is required.
pub const COUNT_WORK_GUARD: f64 = 2e9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum GeneratorChoice {
    Naive,
    Stratified,
    /// `m = None` picks the expected edge count of the matching Kronecker graph.
    Rmat { m: Option<u64> },
}

impl FromStr for GeneratorChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "naive" => Ok(Self::Naive),
            "stratified" => Ok(Self::Stratified),
            "rmat" => Ok(Self::Rmat { m: None }),
            other => match other.strip_prefix("rmat:") {
                Some(m) => m
                    .parse()
                    .map(|m| Self::Rmat { m: Some(m) })
                    .map_err(|_| CliError::Config(format!("bad edge count in `{other}`"))),
                None => Err(CliError::Config(format!(
                    "unknown generator `{other}` (naive, stratified, rmat or rmat:<m>)"
                ))),
            },
        }
    }
}

impl fmt::Display for GeneratorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Naive => write!(f, "naive"),
            Self::Stratified => write!(f, "stratified"),
            Self::Rmat { m: None } => write!(f, "rmat"),
            Self::Rmat { m: Some(m) } => write!(f, "rmat:{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum ExperimentKind {
    Degrees,
    Subgraph { pattern: String },
    Hamming,
    Regime,
    Thresholds { pattern: String },
}

impl FromStr for ExperimentKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a.to_string())),
            None => (s, None),
        };
        match (head, arg) {
            ("degrees", None) => Ok(Self::Degrees),
            ("hamming", None) => Ok(Self::Hamming),
            ("regime", None) => Ok(Self::Regime),
            ("subgraph", Some(p)) => Ok(Self::Subgraph { pattern: p }),
            ("thresholds", p) => Ok(Self::Thresholds {
                pattern: p.unwrap_or_else(|| "cycle:4".into()),
            }),
            _ => Err(CliError::Config(format!(
                "unknown experiment `{s}` (degrees, subgraph:<pattern>, hamming, regime, thresholds[:<pattern>])"
            ))),
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Degrees => write!(f, "degrees"),
            Self::Hamming => write!(f, "hamming"),
            Self::Regime => write!(f, "regime"),
            Self::Subgraph { pattern } => write!(f, "subgraph:{pattern}"),
            Self::Thresholds { pattern } => write!(f, "thresholds:{pattern}"),
        }
    }
}

/// Where files go. Not part of the report echo, so that reports written to
/// different paths stay identical.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputPaths {
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    /// Directory for per-trial edge lists.
    pub edge_lists: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub n: u32,
    pub generator: GeneratorChoice,
    pub include_loops: bool,
    pub trials: u64,
    pub seed: u64,
    pub kind: ExperimentKind,
    /// Points in the `alpha = gamma` sweep of a thresholds experiment.
    pub sweep_points: u32,
    pub allow_large: bool,
    #[serde(skip)]
    pub outputs: OutputPaths,
}

impl ExperimentConfig {
    pub fn new(alpha: f64, beta: f64, gamma: f64, n: u32, kind: ExperimentKind) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            n,
            generator: GeneratorChoice::Stratified,
            include_loops: true,
            trials: 20,
            seed: 0,
            kind,
            sweep_points: 9,
            allow_large: false,
            outputs: OutputPaths::default(),
        }
    }

    pub fn params(&self) -> Result<KroneckerParams, CliError> {
        Ok(KroneckerParams::new(self.alpha, self.beta, self.gamma, self.n)?)
    }

    pub fn pattern(&self) -> Result<Option<PatternGraph>, CliError> {
        match &self.kind {
            ExperimentKind::Subgraph { pattern } | ExperimentKind::Thresholds { pattern } => {
                Ok(Some(PatternGraph::parse(pattern)?))
            }
            _ => Ok(None),
        }
    }

    /// Generator limits honouring `allow_large`.
    pub fn limits(&self) -> Limits {
        let mut limits = Limits::default();
        if self.allow_large {
            limits.naive_max_n = NAIVE_HARD_MAX_N;
        }
        limits
    }

    pub fn rmat_params(&self, p: &KroneckerParams) -> Result<Option<RmatParams>, CliError> {
        match self.generator {
            GeneratorChoice::Rmat { m } => {
                let m = match m {
                    Some(m) => m,
                    None => expected_edge_count(p, false)?.round() as u64,
                };
                Ok(Some(RmatParams::new(*p, m)?))
            }
            _ => Ok(None),
        }
    }

    /// Checks everything that can be checked before any sampling starts.
    /// `sampling` is false for prediction-only runs.
    pub fn validate(&self, sampling: bool) -> Result<(), CliError> {
        let p = self.params()?;
        let symmetric = (self.alpha - self.gamma).abs() <= 1e-12;
        match &self.kind {
            ExperimentKind::Hamming if !symmetric => {
                return Err(CliError::Config(
                    "the Hamming experiment needs alpha = gamma".into(),
                ))
            }
            ExperimentKind::Thresholds { .. } if !symmetric => {
                return Err(CliError::Config(
                    "the thresholds sweep moves along alpha = gamma; start from alpha = gamma".into(),
                ))
            }
            ExperimentKind::Thresholds { .. } if self.sweep_points < 2 => {
                return Err(CliError::Config("a sweep needs at least 2 points".into()))
            }
            _ => {}
        }
        let pattern = self.pattern()?;
        if !sampling {
            return Ok(());
        }
        if self.trials == 0 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        if !self.allow_large {
            let guard = match self.generator {
                GeneratorChoice::Naive => NAIVE_GUARD_N,
                _ => STRATIFIED_GUARD_N,
            };
            if self.n > guard {
                return Err(CliError::Config(format!(
                    "n = {} exceeds the {} guard of {guard}; pass --allow-large to override{}",
                    self.n,
                    self.generator,
                    if self.generator == GeneratorChoice::Naive {
                        " or use --generator stratified"
                    } else {
                        ""
                    }
                )));
            }
        }
        if self.generator == GeneratorChoice::Naive && self.n > NAIVE_HARD_MAX_N {
            return Err(CliError::Config(format!(
                "the naive generator stops at n = {NAIVE_HARD_MAX_N}; use --generator stratified"
            )));
        }
        if let Some(g) = pattern {
            if self.n > COUNT_GUARD_N {
                return Err(CliError::Config(format!(
                    "subgraph counting needs n <= {COUNT_GUARD_N}"
                )));
            }
            if g.vertex_count() > kronecker::empirical::MAX_COUNT_PATTERN_VERTICES {
                return Err(CliError::Config(format!(
                    "subgraph counting handles patterns with at most {} vertices",
                    kronecker::empirical::MAX_COUNT_PATTERN_VERTICES
                )));
            }
            let worst = match self.kind {
                // the sweep reaches alpha = gamma close to 1
                ExperimentKind::Thresholds { .. } => {
                    let top = f64::from(self.sweep_points) / f64::from(self.sweep_points + 1);
                    KroneckerParams::new(top, self.beta, top, self.n)?
                }
                _ => p,
            };
            let work = counting_work(&worst, &g);
            if work > COUNT_WORK_GUARD && !self.allow_large {
                return Err(CliError::Config(format!(
                    "counting this pattern needs about {work:.1e} steps per graph; \
                     lower n or pass --allow-large"
                )));
            }
        }
        self.rmat_params(&p)?;
        Ok(())
    }
}

/// `2^n * dbar^(v-1)` with `dbar` the largest expected degree.
fn counting_work(p: &KroneckerParams, g: &PatternGraph) -> f64 {
    let dbar = (p.alpha() + p.beta()).max(p.beta() + p.gamma()).powi(p.n() as i32);
    2f64.powi(p.n() as i32) * dbar.max(1.0).powi(g.vertex_count() as i32 - 1)
}

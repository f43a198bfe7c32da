//! Second-moment certificates as a report.

use kronecker::patterns::{second_moment_certificate, CertificateStatus, CERTIFICATE_MARGIN};
use kronecker::{KroneckerParams, PatternGraph};
use serde::Serialize;

use crate::report::{round_numbers, Criterion, ToolInfo, SCHEMA_VERSION};
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionRow {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub base_value: f64,
    /// `B_G^2 - B_F`.
    pub margin: f64,
    pub status: CertificateStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub pattern: String,
    pub base_value: f64,
    pub base_value_squared: f64,
    pub status: CertificateStatus,
    pub unions: Vec<UnionRow>,
    pub criteria: Vec<Criterion>,
    pub notes: Vec<String>,
}

impl CertifyReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut value = serde_json::to_value(self)?;
        round_numbers(&mut value);
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        Ok(s)
    }
}

/// Checks `B_F < B_G^2` over the whole union family of `pattern`.
pub fn certify(alpha: f64, beta: f64, gamma: f64, pattern: &str) -> Result<CertifyReport, CliError> {
    let p = KroneckerParams::new(alpha, beta, gamma, 1)?;
    let g = PatternGraph::parse(pattern)?;
    let cert = second_moment_certificate(&p, &g)?;
    let worst = cert.worst_margin().unwrap_or(f64::INFINITY);
    let mut notes = Vec::new();
    if cert.base_value <= 1.0 {
        notes.push("base value is at most 1, so copies vanish in expectation; the certificate is moot".into());
    }
    if cert.status == CertificateStatus::Boundary {
        notes.push("some union sits within the numerical margin of equality".into());
    }
    Ok(CertifyReport {
        schema: SCHEMA_VERSION,
        tool: ToolInfo::default(),
        alpha,
        beta,
        gamma,
        pattern: pattern.to_string(),
        base_value: cert.base_value,
        base_value_squared: cert.base_value_squared,
        status: cert.status,
        unions: cert
            .entries
            .iter()
            .map(|e| UnionRow {
                graph: e.union.graph.to_string(),
                vertices: e.union.graph.vertex_count(),
                edges: e.union.graph.edge_count(),
                base_value: e.base_value,
                margin: e.margin,
                status: e.status,
            })
            .collect(),
        criteria: vec![Criterion::at_least("smallest margin B_G^2 - B_F", worst, CERTIFICATE_MARGIN)],
        notes,
    })
}

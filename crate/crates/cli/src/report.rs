//! Report records and their JSON/CSV serialization.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::config::ExperimentConfig;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;
/// Significant digits of every serialized number.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        Self {
            name: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

/// A predicted number and the result it comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticValue {
    pub name: String,
    pub value: f64,
    pub provenance: String,
}

/// A predicted statement that is not a single number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statement {
    pub name: String,
    pub text: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalAggregate {
    pub name: String,
    pub mean: f64,
    pub variance: f64,
    pub per_trial: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// One pass/fail comparison. `statistic` is compared against `tolerance`
/// using the rule spelled out in `rule`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub rule: String,
    pub statistic: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Criterion {
    /// `|statistic| <= tolerance`.
    pub fn abs_at_most(name: impl Into<String>, statistic: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            rule: "abs(statistic) <= tolerance".into(),
            statistic,
            tolerance,
            pass: statistic.abs() <= tolerance,
        }
    }

    /// `statistic >= tolerance`.
    pub fn at_least(name: impl Into<String>, statistic: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            rule: "statistic >= tolerance".into(),
            statistic,
            tolerance,
            pass: statistic >= tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub schema: u32,
    pub tool: ToolInfo,
    pub mode: String,
    pub config: ExperimentConfig,
    pub analytic: Vec<AnalyticValue>,
    pub statements: Vec<Statement>,
    pub empirical: Vec<EmpiricalAggregate>,
    pub table: Table,
    pub criteria: Vec<Criterion>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn new(mode: &str, config: ExperimentConfig, table: Table) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            tool: ToolInfo::default(),
            mode: mode.into(),
            config,
            analytic: Vec::new(),
            statements: Vec::new(),
            empirical: Vec::new(),
            table,
            criteria: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn analytic(&mut self, name: impl Into<String>, value: f64, provenance: &str) {
        self.analytic.push(AnalyticValue {
            name: name.into(),
            value,
            provenance: provenance.into(),
        });
    }

    pub fn statement(&mut self, name: impl Into<String>, text: impl Into<String>, provenance: &str) {
        self.statements.push(Statement {
            name: name.into(),
            text: text.into(),
            provenance: provenance.into(),
        });
    }

    pub fn empirical(&mut self, name: impl Into<String>, per_trial: Vec<f64>) {
        let (mean, variance) = kronecker::stats::mean_var(&per_trial);
        self.empirical.push(EmpiricalAggregate {
            name: name.into(),
            mean,
            variance: if per_trial.len() > 1 { variance } else { f64::NAN },
            per_trial,
        });
    }

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

    /// One-line-per-criterion human summary.
    pub fn summary(&self) -> String {
        let mut out = format!("{} {}\n", self.mode, self.config.kind);
        for s in &self.statements {
            out.push_str(&format!("  {}: {}\n", s.name, s.text));
        }
        for c in &self.criteria {
            out.push_str(&format!(
                "  {} {}: statistic {} ({}, tolerance {})\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                format_number(c.statistic),
                c.rule,
                format_number(c.tolerance)
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        if !self.criteria.is_empty() {
            let failed = self.criteria.iter().filter(|c| !c.pass).count();
            out.push_str(&format!("  {} criteria, {failed} failed\n", self.criteria.len()));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Writes the report in one format.
pub fn emit(report: &ValidationReport, format: Format, path: &Path) -> Result<(), CliError> {
    let text = match format {
        Format::Json => report.to_json()?,
        Format::Csv => report.table.to_csv(),
    };
    write_file(path, &text)
}

pub(crate) fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal for the rounded value; non-finite values become `nan`,
/// `inf` or `-inf`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        let r = round_significant(x);
        if r == r.trunc() && r.abs() < 1e15 {
            format!("{}", r as i64)
        } else {
            format!("{r}")
        }
    }
}

/// Rounds every float in a JSON tree. Non-finite floats are already `null`.
pub fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            if let Some(x) = num.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round_significant(x)) {
                    *num = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ExperimentKind;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_significant(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_significant(123456789.1234567), 123456789.123);
        assert_eq!(round_significant(-2.0e-20 / 3.0), -6.66666666667e-21);
        assert_eq!(format_number(4.0), "4");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn json_is_rounded_and_versioned() {
        let c = ExperimentConfig::new(0.7, 0.5, 0.7, 6, ExperimentKind::Regime);
        let mut r = ValidationReport::new("predict", c, Table::new("t", &["x"]));
        r.analytic("third", 1.0 / 3.0, "test");
        r.table.push(vec![2.0 / 3.0]);
        let json = r.to_json().unwrap();
        assert!(json.contains("\"schema\": 1"));
        assert!(json.contains("0.333333333333"));
        assert!(!json.contains("0.3333333333333"));
        assert_eq!(r.table.to_csv(), "x\n0.666666666667\n");
    }

    #[test]
    fn criteria_rules() {
        assert!(Criterion::abs_at_most("z", -3.9, 4.0).pass);
        assert!(!Criterion::abs_at_most("z", 4.1, 4.0).pass);
        assert!(!Criterion::abs_at_most("z", f64::NAN, 4.0).pass);
        assert!(Criterion::at_least("f", 0.995, 0.99).pass);
    }
}

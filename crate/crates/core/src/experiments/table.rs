use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::config::QuadratureConfig;

pub const SCHEMA: &str = "cheeger-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `lhs <= rhs + tol`
    Le,
    /// `lhs >= rhs - tol`
    Ge,
    /// `|lhs - rhs| <= tol`
    Near,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Near => "~=",
        }
    }

    pub fn holds(self, lhs: f64, rhs: f64, tol: f64) -> bool {
        match self {
            Relation::Le => lhs <= rhs + tol,
            Relation::Ge => lhs >= rhs - tol,
            Relation::Near => (lhs - rhs).abs() <= tol,
        }
    }
}

/// An asserted inequality, stored with its operands so it can be re-checked
/// from the report alone.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub relation: Relation,
    pub rhs: f64,
    pub tol: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: f64, relation: Relation, rhs: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            lhs,
            relation,
            rhs,
            tol,
            passed: relation.holds(lhs, rhs, tol),
        }
    }

    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, lhs, Relation::Le, rhs, tol)
    }

    pub fn ge(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, lhs, Relation::Ge, rhs, tol)
    }

    pub fn near(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        Self::new(name, lhs, Relation::Near, rhs, tol)
    }

    /// Margin by which the check holds; negative when it fails.
    pub fn margin(&self) -> f64 {
        match self.relation {
            Relation::Le => self.rhs + self.tol - self.lhs,
            Relation::Ge => self.lhs - self.rhs + self.tol,
            Relation::Near => self.tol - (self.lhs - self.rhs).abs(),
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "lhs": num(self.lhs),
            "op": self.relation.symbol(),
            "rhs": num(self.rhs),
            "tol": num(self.tol),
            "passed": self.passed,
        })
    }
}

/// One instance of a family (a `j`, a `T`, or one random sample).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub family: String,
    pub parameter: f64,
    pub values: Vec<(String, f64)>,
    pub checks: Vec<Check>,
}

impl ExperimentRow {
    pub fn new(family: impl Into<String>, parameter: f64) -> Self {
        Self {
            family: family.into(),
            parameter,
            values: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn value(&mut self, name: &str, v: f64) -> &mut Self {
        self.values.push((name.to_string(), v));
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// A report: per-instance rows, table-level summary values and checks, and
/// the tolerances it was computed with.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub config: QuadratureConfig,
    pub rows: Vec<ExperimentRow>,
    pub summary: Vec<(String, f64)>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(name: impl Into<String>, config: QuadratureConfig) -> Self {
        Self {
            name: name.into(),
            config,
            rows: Vec::new(),
            summary: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn summary_value(&self, name: &str) -> Option<f64> {
        self.summary.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.rows.iter().all(ExperimentRow::passed)
    }

    /// All failing checks, labelled with the row they belong to.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.rows {
            for c in row.checks.iter().filter(|c| !c.passed) {
                out.push(format!(
                    "{} {}={}: {} ({} {} {} tol {})",
                    self.name,
                    row.family,
                    fmt(row.parameter),
                    c.name,
                    fmt(c.lhs),
                    c.relation.symbol(),
                    fmt(c.rhs),
                    fmt(c.tol)
                ));
            }
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            out.push(format!(
                "{} table: {} ({} {} {} tol {})",
                self.name,
                c.name,
                fmt(c.lhs),
                c.relation.symbol(),
                fmt(c.rhs),
                fmt(c.tol)
            ));
        }
        out
    }

    fn config_pairs(&self) -> Vec<(&'static str, String)> {
        let c = &self.config;
        vec![
            ("quad_abs_tol", fmt(c.quad_abs_tol)),
            ("quad_rel_tol", fmt(c.quad_rel_tol)),
            ("max_panels", c.max_panels.to_string()),
            ("root_tol", fmt(c.root_tol)),
            ("truncation", fmt(c.truncation)),
            ("search_grid", c.search_grid.to_string()),
            ("refine_starts", c.refine_starts.to_string()),
            ("refine_tol", fmt(c.refine_tol)),
            ("fd_step", fmt(c.fd_step)),
        ]
    }

    /// CSV with a header line per table. Layout:
    ///
    /// ```text
    /// #schema=cheeger-report/1;table=<name>
    /// #config,<key>,<value>          (one line per tolerance)
    /// family,parameter,<values...>,<check names...>
    /// <one line per row; checks as pass|fail>
    /// #check,<family>,<parameter>,<name>,<lhs>,<op>,<rhs>,<tol>,<pass|fail>
    /// #summary,<name>,<value>
    /// #table-check,<name>,<lhs>,<op>,<rhs>,<tol>,<pass|fail>
    /// #note,<text>
    /// ```
    ///
    /// Columns are the union over rows in order of first appearance; rows
    /// lacking a column leave it empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "#schema={SCHEMA};table={}", self.name);
        for (k, v) in self.config_pairs() {
            let _ = writeln!(out, "#config,{k},{v}");
        }
        let mut value_cols: Vec<&str> = Vec::new();
        let mut check_cols: Vec<&str> = Vec::new();
        for row in &self.rows {
            for (n, _) in &row.values {
                if !value_cols.contains(&n.as_str()) {
                    value_cols.push(n);
                }
            }
            for c in &row.checks {
                if !check_cols.contains(&c.name.as_str()) {
                    check_cols.push(&c.name);
                }
            }
        }
        let mut header = vec!["family", "parameter"];
        header.extend(&value_cols);
        header.extend(&check_cols);
        let _ = writeln!(out, "{}", header.join(","));
        for row in &self.rows {
            let mut cells = vec![row.family.clone(), fmt(row.parameter)];
            for col in &value_cols {
                cells.push(row.get(col).map(fmt).unwrap_or_default());
            }
            for col in &check_cols {
                let cell = row
                    .checks
                    .iter()
                    .find(|c| c.name == *col)
                    .map(|c| pass(c.passed).to_string())
                    .unwrap_or_default();
                cells.push(cell);
            }
            let _ = writeln!(out, "{}", cells.join(","));
        }
        for row in &self.rows {
            for c in &row.checks {
                let _ = writeln!(
                    out,
                    "#check,{},{},{},{},{},{},{},{}",
                    row.family,
                    fmt(row.parameter),
                    c.name,
                    fmt(c.lhs),
                    c.relation.symbol(),
                    fmt(c.rhs),
                    fmt(c.tol),
                    pass(c.passed)
                );
            }
        }
        for (name, v) in &self.summary {
            let _ = writeln!(out, "#summary,{name},{}", fmt(*v));
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "#table-check,{},{},{},{},{},{}",
                c.name,
                fmt(c.lhs),
                c.relation.symbol(),
                fmt(c.rhs),
                fmt(c.tol),
                pass(c.passed)
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "#note,{n}");
        }
        out
    }

    /// JSON document; non-finite numbers are written as the strings
    /// `"inf"`, `"-inf"` and `"nan"`.
    pub fn to_json(&self) -> Value {
        let config: Map<String, Value> = self
            .config_pairs()
            .into_iter()
            .map(|(k, v)| (k.to_string(), Value::String(v)))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "family": r.family,
                    "parameter": num(r.parameter),
                    "values": ordered(&r.values),
                    "checks": r.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
                    "passed": r.passed(),
                })
            })
            .collect();
        json!({
            "schema": SCHEMA,
            "table": self.name,
            "config": config,
            "rows": rows,
            "summary": ordered(&self.summary),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
            "passed": self.passed(),
        })
    }
}

fn ordered(values: &[(String, f64)]) -> Value {
    Value::Array(
        values
            .iter()
            .map(|(n, v)| json!({ "name": n, "value": num(*v) }))
            .collect(),
    )
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Shortest round-trip decimal form; `inf`, `-inf`, `nan` otherwise.
pub fn fmt(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:?}")
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(fmt(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_rederive_from_operands() {
        let c = Check::le("a", 1.0, 2.0, 0.0);
        assert!(c.passed && c.margin() == 1.0);
        let c = Check::ge("b", 1.0, 2.0, 0.5);
        assert!(!c.passed && c.margin() < 0.0);
        let c = Check::near("c", 1.0, 1.0 + 1e-10, 1e-9);
        assert!(c.passed);
    }

    #[test]
    fn csv_and_json_layout() {
        let mut t = Table::new("demo", QuadratureConfig::default());
        let mut row = ExperimentRow::new("j", 5.0);
        row.value("area", std::f64::consts::PI)
            .value("upper", f64::INFINITY)
            .check(Check::le("ok", 0.0, 1.0, 0.0));
        t.rows.push(row);
        t.summary.push(("inf".into(), 0.5));
        let csv = t.to_csv();
        assert!(csv.starts_with("#schema=cheeger-report/1;table=demo\n"));
        assert!(csv.contains("family,parameter,area,upper,ok\n"));
        assert!(csv.contains("j,5.0,3.141592653589793,inf,pass\n"));
        assert!(csv.contains("#summary,inf,0.5\n"));
        let j = t.to_json();
        assert_eq!(j["rows"][0]["values"][1]["value"], "inf");
        assert_eq!(j["passed"], true);
    }
}

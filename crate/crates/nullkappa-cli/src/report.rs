//! Verification reports and their table / CSV / JSON renditions.

use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    #[value(name = "json-shaped", alias = "json")]
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Relation asserted between lhs and rhs, e.g. "<=" or "==(1e-8)".
    pub relation: String,
    /// Signed slack; positive means the check passed with room.
    pub margin: f64,
    pub pass: bool,
}

impl CheckRow {
    /// lhs <= rhs with the given tolerance; margin = rhs - lhs.
    pub fn le(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = rhs - lhs;
        CheckRow {
            name: name.into(),
            lhs,
            rhs,
            relation: "<=".into(),
            margin,
            pass: margin >= -tol,
        }
    }

    /// |lhs - rhs| <= tol; margin = tol - |lhs - rhs|.
    pub fn eq(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64) -> Self {
        let margin = tol - (lhs - rhs).abs();
        CheckRow {
            name: name.into(),
            lhs,
            rhs,
            relation: format!("==({tol:.0e})"),
            margin,
            pass: margin >= 0.0,
        }
    }

    /// lhs > 0 strictly; margin = lhs.
    pub fn positive(name: impl Into<String>, lhs: f64) -> Self {
        CheckRow {
            name: name.into(),
            lhs,
            rhs: 0.0,
            relation: ">".into(),
            margin: lhs,
            pass: lhs > 0.0,
        }
    }

    /// Boolean outcome recorded as 1/0.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        CheckRow {
            name: name.into(),
            lhs: if ok { 1.0 } else { 0.0 },
            rhs: 1.0,
            relation: "==".into(),
            margin: if ok { 0.0 } else { -1.0 },
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub version: String,
    pub seed: u64,
    pub resolution: usize,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub domain: String,
    pub checks: Vec<CheckRow>,
    pub provenance: Provenance,
}

impl VerificationReport {
    pub fn new(domain: impl Into<String>, seed: u64, resolution: usize, count: usize) -> Self {
        VerificationReport {
            domain: domain.into(),
            checks: Vec::new(),
            provenance: Provenance {
                version: VERSION.into(),
                seed,
                resolution,
                count,
            },
        }
    }

    pub fn push(&mut self, row: CheckRow) {
        self.checks.push(row);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Csv => self.render_csv(),
            Format::Json => serde_json::to_string_pretty(self).unwrap(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = format!(
            "suite: {}  (version {}, seed {}, resolution {}, count {})\n",
            self.domain,
            self.provenance.version,
            self.provenance.seed,
            self.provenance.resolution,
            self.provenance.count
        );
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        out.push_str(&format!(
            "{:<w$}  {:>16} {:>4} {:>16} {:>12}  result\n",
            "name", "lhs", "rel", "rhs", "margin",
            w = width
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<w$}  {:>16.10} {:>4} {:>16.10} {:>12.3e}  {}\n",
                c.name,
                c.lhs,
                c.relation,
                c.rhs,
                c.margin,
                if c.pass { "pass" } else { "FAIL" },
                w = width
            ));
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("name,lhs,relation,rhs,margin,pass\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{:.12e},{},{:.12e},{:.12e},{}\n",
                c.name, c.lhs, c.relation, c.rhs, c.margin, c.pass
            ));
        }
        out
    }
}

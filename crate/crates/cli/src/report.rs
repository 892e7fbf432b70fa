//! Per-statement results and their JSON and text renderings.

use std::fmt::Write as _;

use nomrel::laws::LawCheck;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Defined,
    Pass,
    Fail,
    Error,
}

impl Outcome {
    fn tag(self) -> &'static str {
        match self {
            Outcome::Defined => "ok",
            Outcome::Pass => "pass",
            Outcome::Fail => "FAIL",
            Outcome::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelRow {
    pub atoms: String,
    pub descriptors: Vec<String>,
    pub size: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawRow {
    pub law: String,
    pub outcome: Outcome,
    pub cases: usize,
    pub premise_hits: usize,
    pub violations: usize,
    pub oracle_violations: usize,
    pub disagreements: usize,
    pub errors: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universe: Option<usize>,
}

impl From<&LawCheck> for LawRow {
    fn from(c: &LawCheck) -> LawRow {
        LawRow {
            law: c.law.clone(),
            outcome: if c.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            },
            cases: c.cases,
            premise_hits: c.premise_hits,
            violations: c.violations,
            oracle_violations: c.oracle_violations,
            disagreements: c.disagreements,
            errors: c.errors,
            witness: c.witness.clone(),
            universe: c.universe,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub kind: String,
    pub stmt: String,
    pub law: Option<String>,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub universe: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<LevelRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub laws: Option<Vec<LawRow>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub statements: Vec<Entry>,
}

impl Report {
    pub fn count(&self, outcome: Outcome) -> usize {
        self.statements
            .iter()
            .filter(|e| e.outcome == outcome)
            .count()
    }

    /// 0 when nothing failed, 1 on a law failure, 2 on a statement error.
    pub fn exit_code(&self) -> u8 {
        if self.count(Outcome::Error) > 0 {
            2
        } else if self.count(Outcome::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.statements {
            let _ = write!(out, "{:<5} {}", e.outcome.tag(), e.stmt);
            if let Some(u) = e.universe {
                let _ = write!(out, "  [universe {u}]");
            }
            out.push('\n');
            if let Some(d) = &e.detail {
                let _ = writeln!(out, "      {d}");
            }
            if let Some(w) = &e.witness {
                let _ = writeln!(out, "      witness: {w}");
            }
            for row in e.table.iter().flatten() {
                let _ = writeln!(
                    out,
                    "      at {}: {} descriptors, {} elements",
                    row.atoms,
                    row.descriptors.len(),
                    row.size
                );
                for d in &row.descriptors {
                    let _ = writeln!(out, "        {d}");
                }
            }
            for law in e.laws.iter().flatten() {
                let _ = writeln!(
                    out,
                    "      {:<5} {}: {} cases, {} violations, {} disagreements",
                    law.outcome.tag(),
                    law.law,
                    law.cases,
                    law.violations + law.oracle_violations,
                    law.disagreements
                );
                if let Some(w) = &law.witness {
                    let _ = writeln!(out, "            witness: {w}");
                }
            }
        }
        let _ = writeln!(
            out,
            "{} statements: {} pass, {} fail, {} error",
            self.statements.len(),
            self.count(Outcome::Pass),
            self.count(Outcome::Fail),
            self.count(Outcome::Error)
        );
        out
    }
}

//! Law suites shared by the command line and the test harness.
//!
//! Every case is judged twice: symbolically, and by the bounded brute-force
//! oracle. A law passes when both judgements agree on every case and
//! neither breaks the law.

mod actions;
mod binding;
mod presheaf;
mod sigma;

use std::fmt;

use crate::atoms::AtomSet;
use crate::error::NomError;
use crate::oracle::Universe;
use crate::orbitset::OrbitSet;
use crate::relation::FsRel;

pub use self::sigma::{sigma_law, SIGMA_LAWS};

/// A truth value computed both ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Both {
    pub symbolic: bool,
    pub oracle: bool,
}

impl Both {
    pub fn new(symbolic: bool, oracle: bool) -> Both {
        Both { symbolic, oracle }
    }

    /// The same value on both sides, for facts that need no oracle.
    pub fn given(value: bool) -> Both {
        Both::new(value, value)
    }

    pub fn and(self, other: Both) -> Both {
        Both::new(self.symbolic && other.symbolic, self.oracle && other.oracle)
    }

    pub fn not(self) -> Both {
        Both::new(!self.symbolic, !self.oracle)
    }

    pub fn agree(self) -> bool {
        self.symbolic == self.oracle
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Holds,
    Implies,
    Iff,
}

/// The judgement of one case.
#[derive(Clone, Copy, Debug)]
pub struct Outcome {
    premise: Both,
    conclusion: Both,
    shape: Shape,
}

impl Outcome {
    pub fn holds(conclusion: Both) -> Outcome {
        Outcome {
            premise: Both::given(true),
            conclusion,
            shape: Shape::Holds,
        }
    }

    pub fn implies(premise: Both, conclusion: Both) -> Outcome {
        Outcome {
            premise,
            conclusion,
            shape: Shape::Implies,
        }
    }

    pub fn iff(premise: Both, conclusion: Both) -> Outcome {
        Outcome {
            premise,
            conclusion,
            shape: Shape::Iff,
        }
    }

    fn law_ok(&self, side: fn(Both) -> bool) -> bool {
        let (p, c) = (side(self.premise), side(self.conclusion));
        match self.shape {
            Shape::Holds => c,
            Shape::Implies => !p || c,
            Shape::Iff => p == c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCheck {
    pub law: String,
    pub cases: usize,
    /// Cases where the premise held on the symbolic side.
    pub premise_hits: usize,
    /// Cases where the symbolic verdicts break the law.
    pub violations: usize,
    /// Cases where the oracle verdicts break the law.
    pub oracle_violations: usize,
    /// Cases where the symbolic and oracle verdicts differ.
    pub disagreements: usize,
    pub errors: usize,
    pub witness: Option<String>,
    pub universe: Option<usize>,
}

impl LawCheck {
    pub fn passed(&self) -> bool {
        self.violations == 0
            && self.oracle_violations == 0
            && self.disagreements == 0
            && self.errors == 0
    }

    /// The symbolic engine and the oracle never disagree.
    pub fn agrees(&self) -> bool {
        self.disagreements == 0 && self.errors == 0
    }
}

impl fmt::Display for LawCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} cases ({} with premise), {} violations, {} oracle violations, {} disagreements",
            if self.passed() { "pass" } else { "FAIL" },
            self.law,
            self.cases,
            self.premise_hits,
            self.violations,
            self.oracle_violations,
            self.disagreements
        )?;
        if self.errors > 0 {
            write!(f, ", {} errors", self.errors)?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

pub(crate) struct Tally {
    check: LawCheck,
}

impl Tally {
    pub(crate) fn new(law: &str) -> Tally {
        Tally {
            check: LawCheck {
                law: law.to_string(),
                cases: 0,
                premise_hits: 0,
                violations: 0,
                oracle_violations: 0,
                disagreements: 0,
                errors: 0,
                witness: None,
                universe: None,
            },
        }
    }

    pub(crate) fn record(&mut self, outcome: Outcome, witness: impl FnOnce() -> String) {
        let c = &mut self.check;
        c.cases += 1;
        if outcome.premise.symbolic {
            c.premise_hits += 1;
        }
        let sym_ok = outcome.law_ok(|b| b.symbolic);
        let oracle_ok = outcome.law_ok(|b| b.oracle);
        let agree = outcome.premise.agree() && outcome.conclusion.agree();
        c.violations += usize::from(!sym_ok);
        c.oracle_violations += usize::from(!oracle_ok);
        c.disagreements += usize::from(!agree);
        if (!sym_ok || !oracle_ok || !agree) && c.witness.is_none() {
            let what = if agree {
                "law broken"
            } else {
                "oracle disagrees"
            };
            c.witness = Some(format!("{what} at {}", witness()));
        }
    }

    pub(crate) fn record_result(
        &mut self,
        outcome: Result<Outcome, NomError>,
        witness: impl FnOnce() -> String,
    ) {
        match outcome {
            Ok(o) => self.record(o, witness),
            Err(e) => {
                self.check.cases += 1;
                self.check.errors += 1;
                if self.check.witness.is_none() {
                    self.check.witness = Some(format!("error {e} at {}", witness()));
                }
            }
        }
    }

    pub(crate) fn saw_universe(&mut self, u: &Universe) {
        let n = self.check.universe.unwrap_or(0).max(u.len());
        self.check.universe = Some(n);
    }

    pub(crate) fn finish(self) -> LawCheck {
        self.check
    }
}

/// Settings shared by all suites.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the number of random cases per law.
    pub cases: Option<usize>,
    /// Overrides the oracle universe size (total number of atoms).
    pub universe: Option<usize>,
    /// Atoms added on top of the default universe.
    pub widen: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            cases: None,
            universe: None,
            widen: 0,
        }
    }
}

impl SuiteConfig {
    pub fn cases_or(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }

    /// The oracle universe for a case.
    pub fn universe(&self, rels: &[&FsRel], sets: &[&OrbitSet]) -> Universe {
        self.universe_with(rels, sets, &AtomSet::new())
    }

    /// Same, with `extra` atoms counted as pinned.
    pub fn universe_with(&self, rels: &[&FsRel], sets: &[&OrbitSet], extra: &AtomSet) -> Universe {
        let default = Universe::covering(rels, sets);
        let mut pinned: AtomSet = rels
            .iter()
            .flat_map(|r| [r.dom(), r.cod(), r.graph()])
            .chain(sets.iter().copied())
            .flat_map(|s| s.pinned().iter().copied())
            .collect();
        pinned.extend(extra.iter().copied());
        let size = match self.universe {
            Some(n) => n,
            None => {
                let spare = default.len()
                    - default
                        .atoms()
                        .iter()
                        .filter(|a| pinned.contains(a))
                        .count();
                pinned.len() + spare + self.widen
            }
        };
        Universe::around(&pinned, size.saturating_sub(pinned.len()))
    }
}

pub const SUITES: [&str; 11] = [
    "actions",
    "rrr",
    "compose",
    "freshness",
    "support",
    "relations",
    "sigma",
    "stochastic",
    "binding",
    "presheaf",
    "discrepancy",
];

/// Runs a named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Option<Vec<LawCheck>> {
    Some(match name {
        "actions" => actions::actions(cfg),
        "rrr" => actions::rrr(cfg),
        "compose" => actions::compose(cfg),
        "freshness" => actions::freshness(cfg),
        "support" => actions::support(cfg),
        "relations" => actions::relations(cfg),
        "sigma" => sigma::sigma_suite(cfg),
        "stochastic" => sigma::stochastic(cfg),
        "binding" => binding::binding(cfg),
        "presheaf" => presheaf::presheaf(cfg),
        "discrepancy" => presheaf::discrepancy(cfg),
        _ => return None,
    })
}

pub use self::binding::binder_laws;
pub use self::presheaf::{descriptor_counts, not_faithful};

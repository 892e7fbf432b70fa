//! Executes a parsed script against the symbolic engine.

use std::collections::BTreeMap;
use std::time::Instant;

use nomrel::binding::BindingOp;
use nomrel::laws::{self, LawCheck, SuiteConfig, SUITES};
use nomrel::oracle::brute;
use nomrel::orbitset::fmt_atoms;
use nomrel::presheaf::{PresheafTable, DEFAULT_SIZE_GUARD};
use nomrel::sigma::{restrict_rho, sigma};
use nomrel::{Atom, AtomSet, FsRel, OrbitSet, Property, Value};

use crate::ast::{AssertKind, RelExpr, Script, Selection, SetExpr, Stmt, ValueExpr};
use crate::report::{Entry, LawRow, LevelRow, Outcome, Report};

pub const DEMOS: [&str; 3] = ["not-faithful", "surj-not-epic", "discrepancy"];

enum Symbol {
    Set(OrbitSet),
    Rel(FsRel),
    Binder(BindingOp),
}

impl Symbol {
    fn kind(&self) -> &'static str {
        match self {
            Symbol::Set(_) => "set",
            Symbol::Rel(_) => "relation",
            Symbol::Binder(_) => "binder",
        }
    }
}

/// What a statement produced, before timing is attached.
struct Done {
    law: Option<String>,
    outcome: Outcome,
    witness: Option<String>,
    universe: Option<usize>,
    detail: Option<String>,
    table: Option<Vec<LevelRow>>,
    laws: Option<Vec<LawRow>>,
}

impl Done {
    fn defined(detail: String) -> Done {
        Done {
            law: None,
            outcome: Outcome::Defined,
            witness: None,
            universe: None,
            detail: Some(detail),
            table: None,
            laws: None,
        }
    }

    fn verdict(law: String, ok: bool, witness: impl FnOnce() -> String) -> Done {
        Done {
            law: Some(law),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            witness: (!ok).then(witness),
            universe: None,
            detail: None,
            table: None,
            laws: None,
        }
    }

    fn from_checks(law: String, checks: &[LawCheck]) -> Done {
        let ok = checks.iter().all(LawCheck::passed);
        let witness = checks.iter().find(|c| !c.passed()).map(|c| {
            format!(
                "{}: {}",
                c.law,
                c.witness
                    .clone()
                    .unwrap_or_else(|| "no witness recorded".into())
            )
        });
        Done {
            law: Some(law),
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
            witness,
            universe: checks.iter().filter_map(|c| c.universe).max(),
            detail: Some(format!(
                "{} laws, {} cases",
                checks.len(),
                checks.iter().map(|c| c.cases).sum::<usize>()
            )),
            table: None,
            laws: Some(checks.iter().map(LawRow::from).collect()),
        }
    }
}

type StmtResult = Result<Done, String>;

pub struct Runner {
    cfg: SuiteConfig,
    symbols: BTreeMap<String, Symbol>,
    atoms: BTreeMap<String, Atom>,
}

impl Runner {
    pub fn new(cfg: SuiteConfig) -> Runner {
        Runner {
            cfg,
            symbols: BTreeMap::new(),
            atoms: BTreeMap::new(),
        }
    }

    /// Runs every statement in order. A failing statement does not stop the
    /// ones after it.
    pub fn run(&mut self, script: &Script) -> Report {
        let mut report = Report::default();
        for stmt in &script.stmts {
            let start = Instant::now();
            let done = self.exec(stmt);
            let millis = start.elapsed().as_millis() as u64;
            let entry = match done {
                Ok(d) => Entry {
                    kind: keyword(stmt).into(),
                    stmt: stmt.to_string(),
                    law: d.law,
                    outcome: d.outcome,
                    witness: d.witness,
                    millis,
                    universe: d.universe,
                    detail: d.detail,
                    table: d.table,
                    laws: d.laws,
                },
                Err(msg) => Entry {
                    kind: keyword(stmt).into(),
                    stmt: stmt.to_string(),
                    law: None,
                    outcome: Outcome::Error,
                    witness: None,
                    millis,
                    universe: None,
                    detail: Some(msg),
                    table: None,
                    laws: None,
                },
            };
            report.statements.push(entry);
        }
        report
    }

    fn atom(&mut self, name: &str) -> Atom {
        let next = self.atoms.len() as u32;
        *self
            .atoms
            .entry(name.to_string())
            .or_insert_with(|| Atom::named(next, name))
    }

    fn atom_set(&mut self, names: &[String]) -> AtomSet {
        names.iter().map(|n| self.atom(n)).collect()
    }

    fn value(&mut self, v: &ValueExpr) -> Value {
        match v {
            ValueExpr::Atom(a) => Value::Atom(self.atom(a)),
            ValueExpr::Label(l) => Value::label(l),
            ValueExpr::Unit => Value::Unit,
            ValueExpr::Tuple(items) => Value::tuple(items.iter().map(|i| self.value(i)).collect()),
            ValueExpr::Set(items) => {
                Value::set(items.iter().map(|i| self.value(i)).collect::<Vec<_>>())
            }
        }
    }

    fn lookup(&self, name: &str) -> Result<&Symbol, String> {
        self.symbols
            .get(name)
            .ok_or_else(|| format!("`{name}` is not defined"))
    }

    fn set(&self, name: &str) -> Result<&OrbitSet, String> {
        match self.lookup(name)? {
            Symbol::Set(s) => Ok(s),
            other => Err(format!("`{name}` is a {}, not a set", other.kind())),
        }
    }

    fn rel(&self, name: &str) -> Result<&FsRel, String> {
        match self.lookup(name)? {
            Symbol::Rel(r) => Ok(r),
            other => Err(format!("`{name}` is a {}, not a relation", other.kind())),
        }
    }

    fn binder(&self, name: &str) -> Result<&BindingOp, String> {
        match self.lookup(name)? {
            Symbol::Binder(b) => Ok(b),
            other => Err(format!("`{name}` is a {}, not a binder", other.kind())),
        }
    }

    fn define(&mut self, name: &str, sym: Symbol) -> StmtResult {
        if self.symbols.contains_key(name) {
            return Err(format!("`{name}` is already defined"));
        }
        let detail = match &sym {
            Symbol::Set(s) => s.to_string(),
            Symbol::Rel(r) => r.to_string(),
            Symbol::Binder(b) => format!("{b:?}"),
        };
        self.symbols.insert(name.to_string(), sym);
        Ok(Done::defined(detail))
    }

    fn set_expr(&mut self, def: &SetExpr) -> Result<OrbitSet, String> {
        Ok(match def {
            SetExpr::Orbits { values, pinned } => {
                let pinned = self.atom_set(pinned);
                let values: Vec<Value> = values.iter().map(|v| self.value(v)).collect();
                OrbitSet::new(pinned, values)
            }
            SetExpr::Atoms => OrbitSet::atoms(),
            SetExpr::AtomPairs => OrbitSet::atom_pairs(),
            SetExpr::DistinctPairs => OrbitSet::distinct_pairs(),
            SetExpr::Discrete(labels) => OrbitSet::discrete(labels.iter().map(String::as_str)),
            SetExpr::Unit => OrbitSet::unit(),
            SetExpr::Powerset(n) => OrbitSet::bounded_powerset(*n),
            SetExpr::Union(a, b) => self.set(a)?.union(self.set(b)?),
            SetExpr::Product(a, b) => self.set(a)?.product(self.set(b)?),
        })
    }

    fn rel_expr(&mut self, dom: &OrbitSet, cod: &OrbitSet, def: &RelExpr) -> Result<FsRel, String> {
        let r = match def {
            RelExpr::Gen { pairs, pinned } => {
                let pinned = self.atom_set(pinned);
                let pairs: Vec<(Value, Value)> = pairs
                    .iter()
                    .map(|(x, y)| (self.value(x), self.value(y)))
                    .collect();
                FsRel::new(dom.clone(), cod.clone(), pinned, pairs).map_err(|e| e.to_string())?
            }
            RelExpr::Fresh => FsRel::freshness(dom, cod),
            RelExpr::Supp => FsRel::supp_rel(dom),
            RelExpr::Leq => FsRel::leq(dom),
            RelExpr::Inc(n) => FsRel::inc(dom, Some(*n)).map_err(|e| e.to_string())?,
            RelExpr::Id => FsRel::identity(dom),
            RelExpr::Full => FsRel::full(dom, cod),
            RelExpr::Empty => FsRel::empty(dom, cod),
        };
        if !r.cod().same_set(cod) {
            return Err(format!(
                "`{def}` has codomain {}, not the declared {cod}",
                r.cod()
            ));
        }
        Ok(r)
    }

    fn exec(&mut self, stmt: &Stmt) -> StmtResult {
        match stmt {
            Stmt::Set { name, def } => {
                let s = self.set_expr(def)?;
                self.define(name, Symbol::Set(s))
            }
            Stmt::Rel {
                name,
                dom,
                cod,
                def,
            } => {
                let (dom, cod) = (self.set(dom)?.clone(), self.set(cod)?.clone());
                let r = self.rel_expr(&dom, &cod, def)?;
                self.define(name, Symbol::Rel(r))
            }
            Stmt::Check { rel, prop } => self.check(rel, prop),
            Stmt::Compose { outer, inner, name } => {
                let c = FsRel::compose(self.rel(outer)?, self.rel(inner)?)
                    .map_err(|e| e.to_string())?;
                self.define(name, Symbol::Rel(c))
            }
            Stmt::Inverse { rel, name } => {
                let r = self.rel(rel)?.inverse();
                self.define(name, Symbol::Rel(r))
            }
            Stmt::Image {
                rel,
                set,
                name,
                inverse,
            } => {
                let (r, s) = (self.rel(rel)?, self.set(set)?);
                let out = if *inverse {
                    if !s.is_subset(r.cod()) {
                        return Err(format!("`{set}` is not inside the codomain of `{rel}`"));
                    }
                    r.inverse_image(s)
                } else {
                    if !s.is_subset(r.dom()) {
                        return Err(format!("`{set}` is not inside the domain of `{rel}`"));
                    }
                    r.direct_image(s)
                };
                self.define(name, Symbol::Set(out))
            }
            Stmt::Sigma {
                rel,
                set,
                rho,
                name,
            } => {
                let (r, s, rho) = (self.rel(rel)?, self.set(set)?, self.rel(rho)?);
                let out = sigma(r, s, &restrict_rho(r, s, rho)).map_err(|e| e.to_string())?;
                self.define(name, Symbol::Rel(out))
            }
            Stmt::SigmaLaw { law, rel } => {
                let r = self.rel(rel)?;
                let check = laws::sigma_law(law, r, &self.cfg).ok_or_else(|| {
                    format!(
                        "unknown sigma law `{law}`; known: {}",
                        laws::SIGMA_LAWS.join(", ")
                    )
                })?;
                if check.cases == 0 {
                    return Err(format!(
                        "law `{law}` has no instances for `{rel}`; most laws need an equivariant relation and some an endo-relation"
                    ));
                }
                Ok(Done::from_checks(law.clone(), &[check]))
            }
            Stmt::Binder {
                name,
                set,
                selection,
            } => {
                let base = self.set(set)?.clone();
                let l = match selection {
                    Selection::Empty => BindingOp::empty_selector(base),
                    Selection::Full => BindingOp::full_selector(base),
                    Selection::Orbits(orbits) => {
                        let n = base.generators().len();
                        let mut positions = vec![Vec::new(); n];
                        for (i, ps) in orbits {
                            let slot = positions
                                .get_mut(*i)
                                .ok_or_else(|| format!("`{set}` has {n} orbits, no orbit{i}"))?;
                            *slot = ps.clone();
                        }
                        BindingOp::from_positions(base, positions)
                    }
                }
                .map_err(|e| e.to_string())?;
                self.define(name, Symbol::Binder(l))
            }
            Stmt::Equiv { binder, name } => {
                let e = self.binder(binder)?.equivalence();
                self.define(name, Symbol::Rel(e))
            }
            Stmt::SameFree { binder, name } => {
                let e = self.binder(binder)?.same_free_rel();
                self.define(name, Symbol::Rel(e))
            }
            Stmt::Presheaf { set, levels } => {
                let x = self.set(set)?.clone();
                let levels: Vec<AtomSet> = levels.iter().map(|l| self.atom_set(l)).collect();
                let t = PresheafTable::build(&x, &levels, DEFAULT_SIZE_GUARD)
                    .map_err(|e| e.to_string())?;
                let rows = t
                    .levels()
                    .iter()
                    .map(|l| LevelRow {
                        atoms: fmt_atoms(l.atoms()),
                        descriptors: l.descriptors().iter().map(ToString::to_string).collect(),
                        size: l.size(),
                    })
                    .collect();
                let mut done = Done::defined(format!("{} levels", levels.len()));
                done.table = Some(rows);
                Ok(done)
            }
            Stmt::Demo { name } => self.demo(name),
            Stmt::Suite { name, seed, cases } => {
                let mut cfg = self.cfg.clone();
                cfg.seed = seed.unwrap_or(cfg.seed);
                cfg.cases = cases.or(cfg.cases);
                let checks = run_suites(name, &cfg)?;
                Ok(Done::from_checks(name.clone(), &checks))
            }
            Stmt::Assert { kind, left, right } => self.assert(*kind, left, right),
        }
    }

    fn check(&self, rel: &str, prop: &str) -> StmtResult {
        let r = self.rel(rel)?;
        let p: Property = prop.parse()?;
        let ok = r.check(p).map_err(|e| e.to_string())?;
        let u = self.cfg.universe(&[r], &[]);
        let mut done = Done::verdict(prop.to_string(), ok, || {
            (0..3)
                .find_map(|extra| brute::counterexample(r, p, &u.extended(extra)))
                .unwrap_or_else(|| {
                    format!(
                        "no counterexample among {} atoms; try a larger --universe",
                        u.len() + 2
                    )
                })
        });
        done.universe = Some(u.len());
        Ok(done)
    }

    fn assert(&self, kind: AssertKind, left: &str, right: &str) -> StmtResult {
        let law = format!("{} {left} {right}", kind.keyword());
        match (self.lookup(left)?, self.lookup(right)?) {
            (Symbol::Set(a), Symbol::Set(b)) => {
                let first = |s: &OrbitSet| s.generators().first().map(ToString::to_string);
                let missing = |a: &OrbitSet, b: &OrbitSet| first(&a.difference(b));
                let (ok, witness) = match kind {
                    AssertKind::Equal => {
                        let w = missing(a, b)
                            .map(|v| format!("{v} is in {left} but not in {right}"))
                            .or_else(|| {
                                missing(b, a)
                                    .map(|v| format!("{v} is in {right} but not in {left}"))
                            });
                        (w.is_none(), w)
                    }
                    AssertKind::Subset => {
                        let w =
                            missing(a, b).map(|v| format!("{v} is in {left} but not in {right}"));
                        (w.is_none(), w)
                    }
                    AssertKind::Distinct => (!a.same_set(b), Some(format!("both are {a}"))),
                };
                Ok(Done::verdict(law, ok, || witness.unwrap_or_default()))
            }
            (Symbol::Rel(r), Symbol::Rel(s)) => {
                let first = |r: &FsRel| r.pairs().next().map(|(x, y)| format!("({x}, {y})"));
                let missing = |a: &FsRel, b: &FsRel| first(&a.difference(b));
                let (ok, witness) = match kind {
                    AssertKind::Equal => {
                        let w = missing(r, s)
                            .map(|p| format!("{p} is in {left} but not in {right}"))
                            .or_else(|| {
                                missing(s, r)
                                    .map(|p| format!("{p} is in {right} but not in {left}"))
                            });
                        (w.is_none(), w)
                    }
                    AssertKind::Subset => {
                        let w =
                            missing(r, s).map(|p| format!("{p} is in {left} but not in {right}"));
                        (w.is_none(), w)
                    }
                    AssertKind::Distinct => (!r.rel_equal(s), Some(format!("both are {r}"))),
                };
                Ok(Done::verdict(law, ok, || witness.unwrap_or_default()))
            }
            (a, b) => Err(format!("cannot compare a {} with a {}", a.kind(), b.kind())),
        }
    }

    fn demo(&self, name: &str) -> StmtResult {
        let checks = match name {
            "not-faithful" => vec![laws::not_faithful(&self.cfg)],
            "surj-not-epic" => laws::run_suite("freshness", &self.cfg)
                .expect("known suite")
                .into_iter()
                .filter(|c| c.law == "fresh-compose-fresh" || c.law == "fresh-not-full")
                .collect(),
            "discrepancy" => laws::run_suite("discrepancy", &self.cfg).expect("known suite"),
            _ => {
                return Err(format!(
                    "unknown demo `{name}`; known: {}",
                    DEMOS.join(", ")
                ))
            }
        };
        Ok(Done::from_checks(name.to_string(), &checks))
    }
}

/// Runs one suite, or every suite for `all`.
pub fn run_suites(name: &str, cfg: &SuiteConfig) -> Result<Vec<LawCheck>, String> {
    if name == "all" {
        return Ok(SUITES
            .iter()
            .flat_map(|s| laws::run_suite(s, cfg).expect("known suite"))
            .collect());
    }
    laws::run_suite(name, cfg)
        .ok_or_else(|| format!("unknown suite `{name}`; known: all, {}", SUITES.join(", ")))
}

fn keyword(stmt: &Stmt) -> &'static str {
    match stmt {
        Stmt::Set { .. } => "set",
        Stmt::Rel { .. } => "rel",
        Stmt::Check { .. } => "check",
        Stmt::Compose { .. } => "compose",
        Stmt::Inverse { .. } => "inverse",
        Stmt::Image { inverse: false, .. } => "image",
        Stmt::Image { inverse: true, .. } => "preimage",
        Stmt::Sigma { .. } => "sigma",
        Stmt::SigmaLaw { .. } => "check-sigma-law",
        Stmt::Binder { .. } => "binder",
        Stmt::Equiv { .. } => "equiv",
        Stmt::SameFree { .. } => "same-free",
        Stmt::Presheaf { .. } => "presheaf",
        Stmt::Demo { .. } => "demo",
        Stmt::Suite { .. } => "suite",
        Stmt::Assert { .. } => "assert",
    }
}

/// Parses and runs a script.
pub fn run_text(text: &str, cfg: SuiteConfig) -> Result<Report, crate::parse::SyntaxError> {
    let script = crate::parse::parse(text)?;
    Ok(Runner::new(cfg).run(&script))
}

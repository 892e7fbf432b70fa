//! Script syntax tree. `Display` prints the canonical concrete syntax,
//! which parses back to an equal tree.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Stmt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueExpr {
    Atom(String),
    Label(String),
    Unit,
    Tuple(Vec<ValueExpr>),
    Set(Vec<ValueExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetExpr {
    Orbits {
        values: Vec<ValueExpr>,
        pinned: Vec<String>,
    },
    Atoms,
    AtomPairs,
    DistinctPairs,
    Discrete(Vec<String>),
    Unit,
    /// Sets of at most `n` atoms.
    Powerset(usize),
    Union(String, String),
    Product(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelExpr {
    Gen {
        pairs: Vec<(ValueExpr, ValueExpr)>,
        pinned: Vec<String>,
    },
    Fresh,
    Supp,
    Leq,
    Inc(usize),
    Id,
    Full,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AssertKind {
    Equal,
    Subset,
    Distinct,
}

impl AssertKind {
    pub fn keyword(self) -> &'static str {
        match self {
            AssertKind::Equal => "equal",
            AssertKind::Subset => "subset",
            AssertKind::Distinct => "distinct",
        }
    }
}

/// Per-orbit selection of a binder: positions of bound atoms in the
/// orbit's canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    Empty,
    Full,
    Orbits(Vec<(usize, Vec<u32>)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Set {
        name: String,
        def: SetExpr,
    },
    Rel {
        name: String,
        dom: String,
        cod: String,
        def: RelExpr,
    },
    Check {
        rel: String,
        prop: String,
    },
    Compose {
        outer: String,
        inner: String,
        name: String,
    },
    Inverse {
        rel: String,
        name: String,
    },
    Image {
        rel: String,
        set: String,
        name: String,
        inverse: bool,
    },
    Sigma {
        rel: String,
        set: String,
        rho: String,
        name: String,
    },
    SigmaLaw {
        law: String,
        rel: String,
    },
    Binder {
        name: String,
        set: String,
        selection: Selection,
    },
    Equiv {
        binder: String,
        name: String,
    },
    SameFree {
        binder: String,
        name: String,
    },
    Presheaf {
        set: String,
        levels: Vec<Vec<String>>,
    },
    Demo {
        name: String,
    },
    Suite {
        name: String,
        seed: Option<u64>,
        cases: Option<usize>,
    },
    Assert {
        kind: AssertKind,
        left: String,
        right: String,
    },
}

fn list<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    open: &str,
    items: &[T],
    close: &str,
) -> fmt::Result {
    f.write_str(open)?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str(close)
}

impl fmt::Display for ValueExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueExpr::Atom(a) => f.write_str(a),
            ValueExpr::Label(l) => write!(f, "'{l}"),
            ValueExpr::Unit => f.write_str("()"),
            ValueExpr::Tuple(items) if items.len() == 1 => write!(f, "({},)", items[0]),
            ValueExpr::Tuple(items) => list(f, "(", items, ")"),
            ValueExpr::Set(items) => list(f, "{", items, "}"),
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Orbits { values, pinned } => {
                list(f, "orbits [", values, "] pinned ")?;
                list(f, "{", pinned, "}")
            }
            SetExpr::Atoms => f.write_str("atoms"),
            SetExpr::AtomPairs => f.write_str("atom-pairs"),
            SetExpr::DistinctPairs => f.write_str("distinct-pairs"),
            SetExpr::Discrete(labels) => {
                let labels: Vec<String> = labels.iter().map(|l| format!("'{l}")).collect();
                list(f, "discrete [", &labels, "]")
            }
            SetExpr::Unit => f.write_str("unit"),
            SetExpr::Powerset(n) => write!(f, "powerset {n}"),
            SetExpr::Union(a, b) => write!(f, "union {a} {b}"),
            SetExpr::Product(a, b) => write!(f, "product {a} {b}"),
        }
    }
}

impl fmt::Display for RelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelExpr::Gen { pairs, pinned } => {
                let pairs: Vec<String> = pairs.iter().map(|(x, y)| format!("({x}, {y})")).collect();
                list(f, "gen [", &pairs, "] pinned ")?;
                list(f, "{", pinned, "}")
            }
            RelExpr::Fresh => f.write_str("fresh"),
            RelExpr::Supp => f.write_str("supp"),
            RelExpr::Leq => f.write_str("leq"),
            RelExpr::Inc(n) => write!(f, "inc {n}"),
            RelExpr::Id => f.write_str("id"),
            RelExpr::Full => f.write_str("full"),
            RelExpr::Empty => f.write_str("empty"),
        }
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selection::Empty => f.write_str("empty"),
            Selection::Full => f.write_str("full"),
            Selection::Orbits(orbits) => {
                let items: Vec<String> = orbits
                    .iter()
                    .map(|(i, ps)| {
                        let ps: Vec<String> = ps.iter().map(u32::to_string).collect();
                        format!("orbit{i}: {{{}}}", ps.join(", "))
                    })
                    .collect();
                list(f, "{ ", &items, " }")
            }
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Set { name, def } => write!(f, "set {name} = {def}"),
            Stmt::Rel {
                name,
                dom,
                cod,
                def,
            } => write!(f, "rel {name} : {dom} -> {cod} = {def}"),
            Stmt::Check { rel, prop } => write!(f, "check {rel} {prop}"),
            Stmt::Compose { outer, inner, name } => write!(f, "compose {outer} {inner} as {name}"),
            Stmt::Inverse { rel, name } => write!(f, "inverse {rel} as {name}"),
            Stmt::Image {
                rel,
                set,
                name,
                inverse,
            } => {
                let kw = if *inverse { "preimage" } else { "image" };
                write!(f, "{kw} {rel} {set} as {name}")
            }
            Stmt::Sigma {
                rel,
                set,
                rho,
                name,
            } => write!(f, "sigma {rel} {set} {rho} as {name}"),
            Stmt::SigmaLaw { law, rel } => write!(f, "check-sigma-law {law} {rel}"),
            Stmt::Binder {
                name,
                set,
                selection,
            } => write!(f, "binder {name} on {set} = {selection}"),
            Stmt::Equiv { binder, name } => write!(f, "equiv {binder} as {name}"),
            Stmt::SameFree { binder, name } => write!(f, "same-free {binder} as {name}"),
            Stmt::Presheaf { set, levels } => {
                write!(f, "presheaf {set}")?;
                for (i, level) in levels.iter().enumerate() {
                    f.write_str(if i == 0 { " at " } else { " ; at " })?;
                    list(f, "{", level, "}")?;
                }
                Ok(())
            }
            Stmt::Demo { name } => write!(f, "demo {name}"),
            Stmt::Suite { name, seed, cases } => {
                write!(f, "suite {name}")?;
                if let Some(s) = seed {
                    write!(f, " --seed {s}")?;
                }
                if let Some(c) = cases {
                    write!(f, " --cases {c}")?;
                }
                Ok(())
            }
            Stmt::Assert { kind, left, right } => {
                write!(f, "assert {} {left} {right}", kind.keyword())
            }
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

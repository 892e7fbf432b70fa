//! Lexer and recursive-descent parser for scripts.

use std::fmt;

use crate::ast::{AssertKind, RelExpr, Script, Selection, SetExpr, Stmt, ValueExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at line {}, column {}: expected {}",
            self.line, self.col, self.expected
        )
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Int(u64),
    Label(String),
    Flag(String),
    Arrow,
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Label(l) => write!(f, "`'{l}`"),
            Tok::Flag(s) => write!(f, "`--{s}`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

fn lex(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let push = |out: &mut Vec<Spanned>, tok| {
            out.push(Spanned {
                tok,
                line: l,
                col: cl,
            })
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            push(&mut out, Tok::Arrow);
            i += 2;
            col += 2;
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            let start = i + 2;
            let mut j = start;
            while j < chars.len() && is_word_char(chars[j]) {
                j += 1;
            }
            if j == start {
                return Err(SyntaxError {
                    line: l,
                    col: cl,
                    expected: "a flag name after `--`".into(),
                });
            }
            push(&mut out, Tok::Flag(chars[start..j].iter().collect()));
            col += j - i;
            i = j;
        } else if c == '\'' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            if j == start {
                return Err(SyntaxError {
                    line: l,
                    col: cl,
                    expected: "a label name after `'`".into(),
                });
            }
            push(&mut out, Tok::Label(chars[start..j].iter().collect()));
            col += j - i;
            i = j;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let digits: String = chars[i..j].iter().collect();
            let n = digits.parse().map_err(|_| SyntaxError {
                line: l,
                col: cl,
                expected: "an integer that fits in 64 bits".into(),
            })?;
            push(&mut out, Tok::Int(n));
            col += j - i;
            i = j;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len()
                && is_word_char(chars[j])
                && !(chars[j] == '-' && chars.get(j + 1) == Some(&'>'))
            {
                j += 1;
            }
            push(&mut out, Tok::Word(chars[i..j].iter().collect()));
            col += j - i;
            i = j;
        } else if "=:[]{}(),;".contains(c) {
            push(&mut out, Tok::Sym(c));
            i += 1;
            col += 1;
        } else {
            return Err(SyntaxError {
                line: l,
                col: cl,
                expected: format!("a token, found `{c}`"),
            });
        }
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const STATEMENTS: &str = "a statement (set, rel, check, compose, inverse, image, preimage, sigma, \
check-sigma-law, binder, equiv, same-free, presheaf, demo, suite, assert)";

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        let here = &self.toks[self.pos];
        Err(SyntaxError {
            line: here.line,
            col: here.col,
            expected: format!("{expected}, found {}", here.tok),
        })
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sym(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.fail(&format!("`{c}`"))
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Word(w) if w == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.is_keyword(kw) {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&format!("`{kw}`"))
        }
    }

    fn word(&mut self, what: &str) -> Result<String, SyntaxError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.pos += 1;
                Ok(w)
            }
            _ => self.fail(what),
        }
    }

    fn int(&mut self, what: &str) -> Result<u64, SyntaxError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail(what),
        }
    }

    fn name(&mut self) -> Result<String, SyntaxError> {
        self.word("a name")
    }

    /// Comma-separated items up to `close`, allowing a trailing comma.
    fn items<T>(
        &mut self,
        close: char,
        mut item: impl FnMut(&mut Self) -> Result<T, SyntaxError>,
    ) -> Result<Vec<T>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            if self.eat_sym(close) {
                return Ok(out);
            }
            out.push(item(self)?);
            if !self.eat_sym(',') {
                if !self.eat_sym(close) {
                    return self.fail(&format!("`,` or `{close}`"));
                }
                return Ok(out);
            }
        }
    }

    fn atom_set(&mut self) -> Result<Vec<String>, SyntaxError> {
        self.sym('{')?;
        self.items('}', |p| p.word("an atom name"))
    }

    fn value(&mut self) -> Result<ValueExpr, SyntaxError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.pos += 1;
                Ok(ValueExpr::Atom(w))
            }
            Tok::Label(l) => {
                self.pos += 1;
                Ok(ValueExpr::Label(l))
            }
            Tok::Sym('{') => {
                self.pos += 1;
                Ok(ValueExpr::Set(self.items('}', Self::value)?))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                if self.eat_sym(')') {
                    return Ok(ValueExpr::Unit);
                }
                let first = self.value()?;
                if self.eat_sym(')') {
                    return Ok(first);
                }
                self.sym(',')?;
                let mut items = vec![first];
                items.extend(self.items(')', Self::value)?);
                Ok(ValueExpr::Tuple(items))
            }
            _ => self.fail("a value (atom, 'label, tuple or set)"),
        }
    }

    fn set_expr(&mut self) -> Result<SetExpr, SyntaxError> {
        let kw = self.word("a set expression (orbits, atoms, atom-pairs, distinct-pairs, discrete, unit, powerset, union, product)")?;
        Ok(match kw.as_str() {
            "orbits" => {
                self.sym('[')?;
                let values = self.items(']', Self::value)?;
                self.keyword("pinned")?;
                let pinned = self.atom_set()?;
                SetExpr::Orbits { values, pinned }
            }
            "atoms" => SetExpr::Atoms,
            "atom-pairs" => SetExpr::AtomPairs,
            "distinct-pairs" => SetExpr::DistinctPairs,
            "unit" => SetExpr::Unit,
            "powerset" => SetExpr::Powerset(self.int("a size bound")? as usize),
            "discrete" => {
                self.sym('[')?;
                let labels = self.items(']', |p| match p.peek().clone() {
                    Tok::Label(l) => {
                        p.pos += 1;
                        Ok(l)
                    }
                    _ => p.fail("a 'label"),
                })?;
                SetExpr::Discrete(labels)
            }
            "union" => SetExpr::Union(self.name()?, self.name()?),
            "product" => SetExpr::Product(self.name()?, self.name()?),
            _ => {
                self.pos -= 1;
                return self.fail("a set expression (orbits, atoms, atom-pairs, distinct-pairs, discrete, unit, powerset, union, product)");
            }
        })
    }

    fn rel_expr(&mut self) -> Result<RelExpr, SyntaxError> {
        let what = "a relation (gen, fresh, supp, leq, inc N, id, full, empty)";
        let kw = self.word(what)?;
        Ok(match kw.as_str() {
            "gen" => {
                self.sym('[')?;
                let mut pairs = Vec::new();
                while !self.eat_sym(']') {
                    let at = self.pos;
                    match self.value()? {
                        ValueExpr::Tuple(items) if items.len() == 2 => {
                            let mut it = items.into_iter();
                            pairs.push((it.next().unwrap(), it.next().unwrap()));
                        }
                        _ => {
                            self.pos = at;
                            return self.fail("a pair `(x, y)`");
                        }
                    }
                    self.eat_sym(',');
                }
                self.keyword("pinned")?;
                let pinned = self.atom_set()?;
                RelExpr::Gen { pairs, pinned }
            }
            "fresh" => RelExpr::Fresh,
            "supp" => RelExpr::Supp,
            "leq" => RelExpr::Leq,
            "inc" => RelExpr::Inc(self.int("a size bound")? as usize),
            "id" => RelExpr::Id,
            "full" => RelExpr::Full,
            "empty" => RelExpr::Empty,
            _ => {
                self.pos -= 1;
                return self.fail(what);
            }
        })
    }

    fn selection(&mut self) -> Result<Selection, SyntaxError> {
        if self.is_keyword("empty") {
            self.pos += 1;
            return Ok(Selection::Empty);
        }
        if self.is_keyword("full") {
            self.pos += 1;
            return Ok(Selection::Full);
        }
        self.sym('{')?;
        let orbits = self.items('}', |p| {
            let at = p.pos;
            let w = p.word("`orbitN`")?;
            let Some(index) = w
                .strip_prefix("orbit")
                .and_then(|n| n.parse::<usize>().ok())
            else {
                p.pos = at;
                return p.fail("`orbitN`");
            };
            p.sym(':')?;
            p.sym('{')?;
            let positions = p.items('}', |q| Ok(q.int("an atom position")? as u32))?;
            Ok((index, positions))
        })?;
        Ok(Selection::Orbits(orbits))
    }

    fn as_name(&mut self) -> Result<String, SyntaxError> {
        self.keyword("as")?;
        self.name()
    }

    fn stmt(&mut self) -> Result<Stmt, SyntaxError> {
        let kw = match self.peek().clone() {
            Tok::Word(w) => w,
            _ => return self.fail(STATEMENTS),
        };
        self.pos += 1;
        Ok(match kw.as_str() {
            "set" => {
                let name = self.name()?;
                self.sym('=')?;
                Stmt::Set {
                    name,
                    def: self.set_expr()?,
                }
            }
            "rel" => {
                let name = self.name()?;
                self.sym(':')?;
                let dom = self.name()?;
                if self.bump() != Tok::Arrow {
                    self.pos -= 1;
                    return self.fail("`->`");
                }
                let cod = self.name()?;
                self.sym('=')?;
                Stmt::Rel {
                    name,
                    dom,
                    cod,
                    def: self.rel_expr()?,
                }
            }
            "check" => Stmt::Check {
                rel: self.name()?,
                prop: self.word("a property")?,
            },
            "compose" => Stmt::Compose {
                outer: self.name()?,
                inner: self.name()?,
                name: self.as_name()?,
            },
            "inverse" => Stmt::Inverse {
                rel: self.name()?,
                name: self.as_name()?,
            },
            "image" | "preimage" => Stmt::Image {
                rel: self.name()?,
                set: self.name()?,
                name: self.as_name()?,
                inverse: kw == "preimage",
            },
            "sigma" => Stmt::Sigma {
                rel: self.name()?,
                set: self.name()?,
                rho: self.name()?,
                name: self.as_name()?,
            },
            "check-sigma-law" => Stmt::SigmaLaw {
                law: self.word("a law name")?,
                rel: self.name()?,
            },
            "binder" => {
                let name = self.name()?;
                self.keyword("on")?;
                let set = self.name()?;
                self.sym('=')?;
                Stmt::Binder {
                    name,
                    set,
                    selection: self.selection()?,
                }
            }
            "equiv" => Stmt::Equiv {
                binder: self.name()?,
                name: self.as_name()?,
            },
            "same-free" => Stmt::SameFree {
                binder: self.name()?,
                name: self.as_name()?,
            },
            "presheaf" => {
                let set = self.name()?;
                self.keyword("at")?;
                let mut levels = vec![self.atom_set()?];
                while self.eat_sym(';') {
                    self.keyword("at")?;
                    levels.push(self.atom_set()?);
                }
                Stmt::Presheaf { set, levels }
            }
            "demo" => Stmt::Demo {
                name: self.word("a demo name")?,
            },
            "suite" => {
                let name = self.word("a suite name")?;
                let (mut seed, mut cases) = (None, None);
                while let Tok::Flag(flag) = self.peek().clone() {
                    self.pos += 1;
                    match flag.as_str() {
                        "seed" => seed = Some(self.int("a seed")?),
                        "cases" => cases = Some(self.int("a case count")? as usize),
                        _ => {
                            self.pos -= 1;
                            return self.fail("`--seed` or `--cases`");
                        }
                    }
                }
                Stmt::Suite { name, seed, cases }
            }
            "assert" => {
                let kind = match self.word("equal, subset or distinct")?.as_str() {
                    "equal" => AssertKind::Equal,
                    "subset" => AssertKind::Subset,
                    "distinct" => AssertKind::Distinct,
                    _ => {
                        self.pos -= 1;
                        return self.fail("equal, subset or distinct");
                    }
                };
                Stmt::Assert {
                    kind,
                    left: self.name()?,
                    right: self.name()?,
                }
            }
            _ => {
                self.pos -= 1;
                return self.fail(STATEMENTS);
            }
        })
    }
}

pub fn parse(text: &str) -> Result<Script, SyntaxError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::End {
        stmts.push(p.stmt()?);
    }
    Ok(Script { stmts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples_parse() {
        let s =
            parse("set D1 = orbits [ a ] pinned {}\nrel R : D1 -> D1 = fresh\ncheck R symmetric")
                .unwrap();
        assert_eq!(s.stmts.len(), 3);
        assert_eq!(
            s.stmts[0],
            Stmt::Set {
                name: "D1".into(),
                def: SetExpr::Orbits {
                    values: vec![ValueExpr::Atom("a".into())],
                    pinned: vec![]
                }
            }
        );
        assert_eq!(
            s.stmts[2],
            Stmt::Check {
                rel: "R".into(),
                prop: "symmetric".into()
            }
        );
    }

    #[test]
    fn arrows_need_no_spaces() {
        let s = parse("rel R:D1->D2=id").unwrap();
        assert_eq!(
            s.stmts[0],
            Stmt::Rel {
                name: "R".into(),
                dom: "D1".into(),
                cod: "D2".into(),
                def: RelExpr::Id
            }
        );
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("set X = orbits [ a ] pinned {}\nrel R : X X = id").unwrap_err();
        assert_eq!((e.line, e.col), (2, 11));
        assert!(e.expected.contains("->"), "{e}");
        let e = parse("frobnicate").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
    }

    #[test]
    fn values_and_comments() {
        let s =
            parse("# pairs\nrel R : X -> Y = gen [(a, (a, b)) (b, {'p, ()})] pinned {a}").unwrap();
        let Stmt::Rel {
            def: RelExpr::Gen { pairs, pinned },
            ..
        } = &s.stmts[0]
        else {
            panic!("{s:?}");
        };
        assert_eq!(pairs.len(), 2);
        assert_eq!(pinned, &vec!["a".to_string()]);
        assert_eq!(
            pairs[1].1,
            ValueExpr::Set(vec![ValueExpr::Label("p".into()), ValueExpr::Unit])
        );
    }

    #[test]
    fn suite_flags() {
        let s = parse("suite sigma --seed 7 --cases 200").unwrap();
        assert_eq!(
            s.stmts[0],
            Stmt::Suite {
                name: "sigma".into(),
                seed: Some(7),
                cases: Some(200)
            }
        );
    }
}

//! Hereditarily finite nominal values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::atoms::{fresh_atoms, Atom, AtomSet, FinPerm};
use crate::error::NomError;

/// Action-invariant constant. Labels make up discrete nominal sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Label {
    Name(String),
    Int(i64),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Name(s) => write!(f, "'{s}"),
            Label::Int(i) => write!(f, "'{i}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Atom(Atom),
    Unit,
    Label(Label),
    Tuple(Vec<Value>),
    Set(BTreeSet<Value>),
}

impl Value {
    pub fn atom(index: u32) -> Value {
        Value::Atom(Atom::new(index))
    }

    pub fn label(name: &str) -> Value {
        Value::Label(Label::Name(name.to_string()))
    }

    /// Tuple constructor; the empty tuple collapses to `Unit`.
    pub fn tuple(items: Vec<Value>) -> Value {
        if items.is_empty() {
            Value::Unit
        } else {
            Value::Tuple(items)
        }
    }

    pub fn pair(x: Value, y: Value) -> Value {
        Value::Tuple(vec![x, y])
    }

    pub fn set<I: IntoIterator<Item = Value>>(items: I) -> Value {
        Value::Set(items.into_iter().collect())
    }

    pub fn atom_set<I: IntoIterator<Item = Atom>>(atoms: I) -> Value {
        Value::Set(atoms.into_iter().map(Value::Atom).collect())
    }

    /// Components of a two-element tuple.
    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Tuple(items) if items.len() == 2 => Some((&items[0], &items[1])),
            _ => None,
        }
    }

    /// The permutation action. Sets are re-deduplicated by construction.
    pub fn act(&self, p: &FinPerm) -> Value {
        if p.is_identity() {
            return self.clone();
        }
        self.map_atoms(&|a| p.apply(a))
    }

    /// Substitutes atoms through `map`, leaving unmapped atoms alone. When the
    /// map is injective on the value's atoms and its image avoids the value's
    /// other atoms this coincides with the action of a permutation.
    pub fn rename(&self, map: &BTreeMap<Atom, Atom>) -> Value {
        self.map_atoms(&|a| map.get(&a).copied().unwrap_or(a))
    }

    pub(crate) fn map_atoms(&self, f: &dyn Fn(Atom) -> Atom) -> Value {
        match self {
            Value::Atom(a) => Value::Atom(f(*a)),
            Value::Unit => Value::Unit,
            Value::Label(l) => Value::Label(l.clone()),
            Value::Tuple(items) => Value::Tuple(items.iter().map(|v| v.map_atoms(f)).collect()),
            Value::Set(items) => Value::Set(items.iter().map(|v| v.map_atoms(f)).collect()),
        }
    }

    /// The least support: the atoms occurring in the value.
    pub fn support(&self) -> AtomSet {
        let mut out = AtomSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut AtomSet) {
        match self {
            Value::Atom(a) => {
                out.insert(*a);
            }
            Value::Unit | Value::Label(_) => {}
            Value::Tuple(items) => items.iter().for_each(|v| v.collect_atoms(out)),
            Value::Set(items) => items.iter().for_each(|v| v.collect_atoms(out)),
        }
    }

    /// Atoms in first-encounter order of a left-to-right depth-first walk.
    fn atoms_in_order(&self, out: &mut Vec<Atom>) {
        match self {
            Value::Atom(a) => {
                if !out.contains(a) {
                    out.push(*a);
                }
            }
            Value::Unit | Value::Label(_) => {}
            Value::Tuple(items) => items.iter().for_each(|v| v.atoms_in_order(out)),
            Value::Set(items) => items.iter().for_each(|v| v.atoms_in_order(out)),
        }
    }

    /// Swap criterion: does every transposition of two probe atoms outside
    /// `candidate` fix the value?
    pub fn swap_supports(&self, candidate: &AtomSet, probes: &AtomSet) -> Result<bool, NomError> {
        let outside: Vec<Atom> = probes.difference(candidate).copied().collect();
        let needed = self.support().difference(candidate).count() + 2;
        if outside.len() < needed {
            return Err(NomError::InsufficientProbes {
                needed,
                available: outside.len(),
            });
        }
        Ok(outside
            .iter()
            .tuple_combinations()
            .all(|(&d1, &d2)| self.act(&FinPerm::transposition(d1, d2)) == *self))
    }

    pub fn fresh_for(&self, other: &Value) -> bool {
        self.support().is_disjoint(&other.support())
    }

    /// Does some set node contain an atom outside `pinned`?
    fn has_unpinned_set(&self, pinned: &AtomSet) -> bool {
        match self {
            Value::Atom(_) | Value::Unit | Value::Label(_) => false,
            Value::Tuple(items) => items.iter().any(|v| v.has_unpinned_set(pinned)),
            Value::Set(items) => items
                .iter()
                .any(|v| !v.support().is_subset(pinned) || v.has_unpinned_set(pinned)),
        }
    }

    /// Canonical representative of the orbit under permutations fixing
    /// `pinned`, plus a permutation carrying `self` onto it.
    ///
    /// Unpinned atoms are renamed onto the smallest indices not in `pinned`.
    /// Without unpinned atoms under a set node the renaming follows
    /// first-encounter order; otherwise every renaming is tried and the least
    /// resulting value is kept. Both choices depend only on the orbit.
    pub fn canonical_under(&self, pinned: &AtomSet) -> (Value, FinPerm) {
        let map = self.canonical_renaming(pinned);
        let value = self.rename(&map);
        (value, FinPerm::extend_injection(&map))
    }

    pub fn canonical_value_under(&self, pinned: &AtomSet) -> Value {
        self.rename(&self.canonical_renaming(pinned))
    }

    /// `canonical_under` with nothing pinned.
    pub fn canonicalize(&self) -> (Value, FinPerm) {
        self.canonical_under(&AtomSet::new())
    }

    fn canonical_renaming(&self, pinned: &AtomSet) -> BTreeMap<Atom, Atom> {
        let mut order = Vec::new();
        self.atoms_in_order(&mut order);
        order.retain(|a| !pinned.contains(a));
        let targets = fresh_atoms(pinned, order.len());
        if !self.has_unpinned_set(pinned) {
            return order.into_iter().zip(targets).collect();
        }
        let mut best: Option<(Value, BTreeMap<Atom, Atom>)> = None;
        for perm in targets.iter().copied().permutations(targets.len()) {
            let map: BTreeMap<Atom, Atom> = order.iter().copied().zip(perm).collect();
            let candidate = self.rename(&map);
            if best.as_ref().is_none_or(|(b, _)| candidate < *b) {
                best = Some((candidate, map));
            }
        }
        best.map(|(_, m)| m).unwrap_or_default()
    }

    /// All bijections β between the unfixed atoms of `self` and `target` such
    /// that renaming `self` by β yields `target`; atoms of `fixed` must map to
    /// themselves.
    pub fn matchings(&self, target: &Value, fixed: &AtomSet) -> Vec<BTreeMap<Atom, Atom>> {
        let mut out = Vec::new();
        match_into(self, target, fixed, Bij::default(), &mut |b| {
            out.push(b.fwd)
        });
        out.sort();
        out.dedup();
        out
    }

    /// A permutation fixing `fixed` that carries `self` to `target`, if any.
    pub fn find_matching(&self, target: &Value, fixed: &AtomSet) -> Option<FinPerm> {
        let mut found = None;
        match_into(self, target, fixed, Bij::default(), &mut |b| {
            if found.is_none() {
                found = Some(b.fwd);
            }
        });
        found.map(|m| FinPerm::extend_injection(&m))
    }

    /// Size of the value tree, used by generators.
    pub fn size(&self) -> usize {
        match self {
            Value::Atom(_) | Value::Unit | Value::Label(_) => 1,
            Value::Tuple(items) => 1 + items.iter().map(Value::size).sum::<usize>(),
            Value::Set(items) => 1 + items.iter().map(Value::size).sum::<usize>(),
        }
    }
}

#[derive(Clone, Default)]
struct Bij {
    fwd: BTreeMap<Atom, Atom>,
    bwd: BTreeMap<Atom, Atom>,
}

impl Bij {
    fn bind(mut self, p: Atom, t: Atom, fixed: &AtomSet) -> Option<Bij> {
        if fixed.contains(&p) || fixed.contains(&t) {
            return (p == t).then_some(self);
        }
        match (self.fwd.get(&p), self.bwd.get(&t)) {
            (Some(&q), _) if q != t => None,
            (_, Some(&q)) if q != p => None,
            (Some(_), Some(_)) => Some(self),
            _ => {
                self.fwd.insert(p, t);
                self.bwd.insert(t, p);
                Some(self)
            }
        }
    }
}

fn match_into(p: &Value, t: &Value, fixed: &AtomSet, bij: Bij, emit: &mut dyn FnMut(Bij)) {
    match (p, t) {
        (Value::Atom(a), Value::Atom(b)) => {
            if let Some(next) = bij.bind(*a, *b, fixed) {
                emit(next);
            }
        }
        (Value::Unit, Value::Unit) => emit(bij),
        (Value::Label(x), Value::Label(y)) => {
            if x == y {
                emit(bij);
            }
        }
        (Value::Tuple(xs), Value::Tuple(ys)) => {
            if xs.len() == ys.len() {
                match_seq(xs, ys, 0, fixed, bij, emit);
            }
        }
        (Value::Set(xs), Value::Set(ys))
            if xs.len() == ys.len() => {
                let xs: Vec<&Value> = xs.iter().collect();
                let ys: Vec<&Value> = ys.iter().collect();
                let mut used = vec![false; ys.len()];
                match_set(&xs, &ys, 0, &mut used, fixed, bij, emit);
            }
        _ => {}
    }
}

fn match_seq(
    xs: &[Value],
    ys: &[Value],
    i: usize,
    fixed: &AtomSet,
    bij: Bij,
    emit: &mut dyn FnMut(Bij),
) {
    if i == xs.len() {
        emit(bij);
        return;
    }
    match_into(&xs[i], &ys[i], fixed, bij, &mut |next| {
        match_seq(xs, ys, i + 1, fixed, next, emit)
    });
}

fn match_set(
    xs: &[&Value],
    ys: &[&Value],
    i: usize,
    used: &mut Vec<bool>,
    fixed: &AtomSet,
    bij: Bij,
    emit: &mut dyn FnMut(Bij),
) {
    if i == xs.len() {
        emit(bij);
        return;
    }
    for j in 0..ys.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let mut partial = Vec::new();
        match_into(xs[i], ys[j], fixed, bij.clone(), &mut |next| {
            partial.push(next)
        });
        for next in partial {
            match_set(xs, ys, i + 1, used, fixed, next, emit);
        }
        used[j] = false;
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Atom(a) => write!(f, "{a}"),
            Value::Unit => f.write_str("()"),
            Value::Label(l) => write!(f, "{l}"),
            Value::Tuple(items) => {
                f.write_str("(")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                if items.len() == 1 {
                    f.write_str(",")?;
                }
                f.write_str(")")
            }
            Value::Set(items) => {
                f.write_str("{")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("}")
            }
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::first_atoms;

    fn at(i: u32) -> Value {
        Value::atom(i)
    }

    fn atoms(ix: &[u32]) -> AtomSet {
        ix.iter().map(|&i| Atom::new(i)).collect()
    }

    #[test]
    fn act_swaps_tuple_components() {
        let p = FinPerm::transposition(Atom::new(0), Atom::new(1));
        assert_eq!(Value::pair(at(0), at(1)).act(&p), Value::pair(at(1), at(0)));
        let v = Value::set([at(0), Value::label("t")]);
        assert_eq!(v.act(&FinPerm::identity()), v);
    }

    #[test]
    fn act_on_finite_set_is_pointwise() {
        let p = FinPerm::transposition(Atom::new(0), Atom::new(2));
        assert_eq!(
            Value::set([at(0), at(1)]).act(&p),
            Value::set([at(2), at(1)])
        );
    }

    #[test]
    fn support_examples() {
        assert_eq!(at(3).support(), atoms(&[3]));
        assert!(Value::Unit.support().is_empty());
        let v = Value::set([Value::pair(at(0), at(1)), Value::pair(at(1), at(0))]);
        assert_eq!(v.support(), atoms(&[0, 1]));
    }

    #[test]
    fn swap_criterion_on_small_examples() {
        assert!(at(0).swap_supports(&atoms(&[0]), &first_atoms(3)).unwrap());
        assert!(!at(0).swap_supports(&atoms(&[]), &first_atoms(3)).unwrap());
        let s = Value::set([at(0), at(1)]);
        assert!(s.swap_supports(&atoms(&[0, 1]), &first_atoms(4)).unwrap());
        assert!(matches!(
            s.swap_supports(&atoms(&[0, 1]), &first_atoms(3)),
            Err(NomError::InsufficientProbes { .. })
        ));
    }

    #[test]
    fn swap_oracle_confirms_support_of_symmetric_set() {
        // Exhaustive over a 4-atom universe: {a,b} supports, no proper subset does.
        let v = Value::set([Value::pair(at(0), at(1)), Value::pair(at(1), at(0))]);
        let universe = first_atoms(6);
        assert!(v.swap_supports(&atoms(&[0, 1]), &universe).unwrap());
        assert!(!v.swap_supports(&atoms(&[0]), &universe).unwrap());
        assert!(!v.swap_supports(&atoms(&[1]), &universe).unwrap());
    }

    #[test]
    fn freshness() {
        assert!(at(0).fresh_for(&at(1)));
        assert!(!at(0).fresh_for(&Value::pair(at(0), at(1))));
        assert!(Value::Unit.fresh_for(&at(0)));
    }

    #[test]
    fn canonical_single_atom() {
        let (c, p) = at(7).canonicalize();
        assert_eq!(c, at(0));
        assert_eq!(at(7).act(&p), c);
    }

    #[test]
    fn canonical_same_orbit_pairs() {
        let (c1, _) = Value::pair(at(1), at(0)).canonicalize();
        let (c2, _) = Value::pair(at(3), at(2)).canonicalize();
        assert_eq!(c1, c2);
        assert_eq!(c1, Value::pair(at(0), at(1)));
    }

    #[test]
    fn repeated_pair_is_not_distinct_pair() {
        // exhaustive over swaps of a 3-atom universe
        let rep = Value::pair(at(0), at(0));
        for (x, y) in (0..3).tuple_combinations() {
            let t = FinPerm::transposition(Atom::new(x), Atom::new(y));
            assert_ne!(rep.act(&t), Value::pair(at(0), at(1)));
        }
        assert_ne!(
            rep.canonicalize().0,
            Value::pair(at(0), at(1)).canonicalize().0
        );
    }

    #[test]
    fn canonical_respects_pinned() {
        let pinned = atoms(&[0]);
        let (c, p) = Value::pair(at(5), at(0)).canonical_under(&pinned);
        assert_eq!(c, Value::pair(at(1), at(0)));
        assert!(p.fixes_all(&pinned));
        assert_ne!(
            at(0).canonical_value_under(&pinned),
            at(3).canonical_value_under(&pinned)
        );
    }

    #[test]
    fn canonical_sets_are_orbit_invariant() {
        let v = Value::pair(Value::set([at(4), at(9)]), at(9));
        let w = Value::pair(Value::set([at(2), at(1)]), at(1));
        assert_eq!(v.canonicalize().0, w.canonicalize().0);
        let u = Value::pair(Value::set([at(2), at(1)]), at(3));
        assert_ne!(v.canonicalize().0, u.canonicalize().0);
    }

    #[test]
    fn matchings_of_sets_enumerate_automorphisms() {
        let s = Value::set([at(0), at(1)]);
        assert_eq!(s.matchings(&s, &AtomSet::new()).len(), 2);
        assert_eq!(s.matchings(&s, &atoms(&[0])).len(), 1);
        let t = Value::pair(at(0), at(1));
        assert!(t
            .matchings(&Value::pair(at(2), at(2)), &AtomSet::new())
            .is_empty());
    }

    #[test]
    fn display_syntax() {
        let v = Value::tuple(vec![
            Value::Atom(Atom::named(0, "a")),
            Value::Unit,
            Value::label("th"),
            Value::set([Value::Atom(Atom::named(1, "b"))]),
        ]);
        assert_eq!(v.to_string(), "(a, (), 'th, {b})");
    }
}

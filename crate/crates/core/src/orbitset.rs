//! Orbit-finite, finitely supported sets of values.
//!
//! A set is stored as a pinned atom set `A` together with canonical
//! representatives of its orbits under the permutations fixing `A`
//! pointwise. With `A = ∅` the set is equivariant.

use std::collections::BTreeMap;
use std::fmt;

use crate::atoms::{fresh_atoms, Atom, AtomSet, FinPerm};
use crate::error::{NomError, Result};
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Difference,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitSet {
    pinned: AtomSet,
    generators: Vec<Value>,
}

impl OrbitSet {
    /// Builds a set from arbitrary orbit representatives; they are
    /// canonicalized and duplicates dropped.
    pub fn new<I: IntoIterator<Item = Value>>(pinned: AtomSet, generators: I) -> Self {
        let gens = generators
            .into_iter()
            .map(|g| g.canonical_value_under(&pinned))
            .collect();
        OrbitSet::from_canonical(pinned, gens)
    }

    pub(crate) fn from_canonical(pinned: AtomSet, mut generators: Vec<Value>) -> Self {
        generators.sort();
        generators.dedup();
        OrbitSet { pinned, generators }
    }

    pub fn empty() -> Self {
        OrbitSet::from_canonical(AtomSet::new(), Vec::new())
    }

    /// The equivariant set of all atoms.
    pub fn atoms() -> Self {
        OrbitSet::new(AtomSet::new(), [Value::atom(0)])
    }

    /// Pairs of distinct atoms.
    pub fn distinct_pairs() -> Self {
        OrbitSet::new(
            AtomSet::new(),
            [Value::pair(Value::atom(0), Value::atom(1))],
        )
    }

    /// All pairs of atoms: the diagonal orbit plus the distinct-pair orbit.
    pub fn atom_pairs() -> Self {
        OrbitSet::atoms().product(&OrbitSet::atoms())
    }

    /// Discrete set of labels.
    pub fn discrete<'a, I: IntoIterator<Item = &'a str>>(labels: I) -> Self {
        OrbitSet::new(AtomSet::new(), labels.into_iter().map(Value::label))
    }

    pub fn unit() -> Self {
        OrbitSet::new(AtomSet::new(), [Value::Unit])
    }

    /// Finite sets of at most `m` atoms (a bounded slice of the finite powerset).
    pub fn bounded_powerset(m: usize) -> Self {
        OrbitSet::new(
            AtomSet::new(),
            (0..=m).map(|k| Value::atom_set((0..k as u32).map(Atom::new))),
        )
    }

    /// The singleton `{v}`, pinned at the support of `v`.
    pub fn singleton(v: &Value) -> Self {
        OrbitSet::from_canonical(v.support(), vec![v.clone()])
    }

    pub fn pinned(&self) -> &AtomSet {
        &self.pinned
    }

    pub fn generators(&self) -> &[Value] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_equivariant_presentation(&self) -> bool {
        self.pinned.is_empty()
    }

    /// Largest number of unpinned atoms in a representative.
    pub fn max_free_support(&self) -> usize {
        self.generators
            .iter()
            .map(|g| g.support().difference(&self.pinned).count())
            .max()
            .unwrap_or(0)
    }

    pub fn member(&self, v: &Value) -> bool {
        let c = v.canonical_value_under(&self.pinned);
        self.generators.binary_search(&c).is_ok()
    }

    /// Elements with empty support.
    pub fn zero_elements(&self) -> Result<OrbitSet> {
        if !self.pinned.is_empty() {
            return Err(NomError::NotEquivariant);
        }
        Ok(self.filter(|g| g.support().is_empty()))
    }

    /// Keeps the orbits whose representative satisfies `keep`. The predicate
    /// must be invariant under permutations fixing the pinned atoms.
    pub fn filter(&self, keep: impl Fn(&Value) -> bool) -> OrbitSet {
        OrbitSet {
            pinned: self.pinned.clone(),
            generators: self
                .generators
                .iter()
                .filter(|g| keep(g))
                .cloned()
                .collect(),
        }
    }

    /// Re-presents the same set with pinned support `b ⊇ pinned`.
    pub fn refine(&self, b: &AtomSet) -> Result<OrbitSet> {
        if !self.pinned.is_subset(b) {
            return Err(NomError::NotARefinement {
                current: fmt_atoms(&self.pinned),
                requested: fmt_atoms(b),
            });
        }
        Ok(self.refined(b))
    }

    /// Refines to `pinned ∪ extra`.
    pub(crate) fn refined(&self, extra: &AtomSet) -> OrbitSet {
        if extra.is_subset(&self.pinned) {
            return self.clone();
        }
        let b: AtomSet = self.pinned.union(extra).copied().collect();
        let added: Vec<Atom> = b.difference(&self.pinned).copied().collect();
        let mut gens = Vec::new();
        for g in &self.generators {
            let free: Vec<Atom> = g.support().difference(&self.pinned).copied().collect();
            let fresh = fresh_atoms(&b, free.len());
            for map in assignments(&free, &added, &fresh) {
                gens.push(g.rename(&map).canonical_value_under(&b));
            }
        }
        OrbitSet::from_canonical(b, gens)
    }

    /// Forgets pinned atoms. Only valid when `smaller ⊆ pinned` still
    /// supports the set.
    pub(crate) fn coarsen(&self, smaller: &AtomSet) -> OrbitSet {
        OrbitSet::from_canonical(
            smaller.clone(),
            self.generators
                .iter()
                .map(|g| g.canonical_value_under(smaller))
                .collect(),
        )
    }

    pub fn set_op(&self, other: &OrbitSet, op: SetOp) -> OrbitSet {
        let b: AtomSet = self.pinned.union(&other.pinned).copied().collect();
        let left = self.refined(&b);
        let right = other.refined(&b);
        let gens: Vec<Value> = match op {
            SetOp::Union => left
                .generators
                .iter()
                .chain(right.generators.iter())
                .cloned()
                .collect(),
            SetOp::Intersect => left
                .generators
                .iter()
                .filter(|g| right.generators.binary_search(g).is_ok())
                .cloned()
                .collect(),
            SetOp::Difference => left
                .generators
                .iter()
                .filter(|g| right.generators.binary_search(g).is_err())
                .cloned()
                .collect(),
        };
        OrbitSet::from_canonical(b, gens)
    }

    pub fn union(&self, other: &OrbitSet) -> OrbitSet {
        self.set_op(other, SetOp::Union)
    }

    pub fn intersect(&self, other: &OrbitSet) -> OrbitSet {
        self.set_op(other, SetOp::Intersect)
    }

    pub fn difference(&self, other: &OrbitSet) -> OrbitSet {
        self.set_op(other, SetOp::Difference)
    }

    /// Cartesian product as a set of pairs.
    ///
    /// For each pair of representatives, the unpinned atoms of the right one
    /// either coincide with unpinned atoms of the left one or are fresh, in
    /// every injective pattern.
    pub fn product(&self, other: &OrbitSet) -> OrbitSet {
        let b: AtomSet = self.pinned.union(&other.pinned).copied().collect();
        let left = self.refined(&b);
        let right = other.refined(&b);
        let mut gens = Vec::new();
        for gx in &left.generators {
            let sx = gx.support();
            let base: Vec<Atom> = sx.difference(&b).copied().collect();
            let avoid: AtomSet = b.union(&sx).copied().collect();
            for gy in &right.generators {
                let free: Vec<Atom> = gy.support().difference(&b).copied().collect();
                let fresh = fresh_atoms(&avoid, free.len());
                for map in assignments(&free, &base, &fresh) {
                    gens.push(Value::pair(gx.clone(), gy.rename(&map)).canonical_value_under(&b));
                }
            }
        }
        OrbitSet::from_canonical(b, gens)
    }

    /// Single orbit (for equivariant sets): no proper non-empty equivariant subset.
    pub fn is_indecomposable(&self) -> Result<bool> {
        if !self.pinned.is_empty() {
            return Err(NomError::NotEquivariant);
        }
        Ok(self.generators.len() == 1)
    }

    /// Extensional equality.
    pub fn same_set(&self, other: &OrbitSet) -> bool {
        let b: AtomSet = self.pinned.union(&other.pinned).copied().collect();
        self.refined(&b).generators == other.refined(&b).generators
    }

    pub fn is_subset(&self, other: &OrbitSet) -> bool {
        let b: AtomSet = self.pinned.union(&other.pinned).copied().collect();
        let right = other.refined(&b);
        self.refined(&b)
            .generators
            .iter()
            .all(|g| right.generators.binary_search(g).is_ok())
    }

    /// `π · S`, pinned at `π · A`.
    pub fn act(&self, p: &FinPerm) -> OrbitSet {
        let pinned = p.act_atoms(&self.pinned);
        let gens = self
            .generators
            .iter()
            .map(|g| g.act(p).canonical_value_under(&pinned))
            .collect();
        OrbitSet::from_canonical(pinned, gens)
    }

    /// Same set, pinned at its least support.
    ///
    /// A pinned atom `a` is dropped when swapping it with an atom outside the
    /// pinned set leaves the set unchanged; one such swap decides it since
    /// all outside atoms are interchangeable under the pinned stabiliser.
    pub fn minimize(&self) -> OrbitSet {
        let mut cur = self.clone();
        for &a in self.pinned.iter() {
            let d = Atom::fresh(&cur.pinned);
            let swapped = cur.act(&FinPerm::transposition(a, d));
            if swapped.same_set(&cur) {
                let mut smaller = cur.pinned.clone();
                smaller.remove(&a);
                cur = cur.coarsen(&smaller);
            }
        }
        cur
    }

    pub fn least_support(&self) -> AtomSet {
        self.minimize().pinned
    }

    /// Each orbit as its own set.
    pub fn orbits(&self) -> Vec<OrbitSet> {
        self.generators
            .iter()
            .map(|g| OrbitSet::from_canonical(self.pinned.clone(), vec![g.clone()]))
            .collect()
    }
}

/// All injective maps from `domain` into `specific ∪ fresh`, where fresh
/// atoms are used in order (the next unused one only), so that patterns
/// differing by a renaming of fresh atoms are produced once.
pub(crate) fn assignments(
    domain: &[Atom],
    specific: &[Atom],
    fresh: &[Atom],
) -> Vec<BTreeMap<Atom, Atom>> {
    let mut out = Vec::new();
    let mut used = vec![false; specific.len()];
    let mut cur = BTreeMap::new();
    assign_rec(domain, specific, fresh, 0, 0, &mut used, &mut cur, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn assign_rec(
    domain: &[Atom],
    specific: &[Atom],
    fresh: &[Atom],
    i: usize,
    next_fresh: usize,
    used: &mut Vec<bool>,
    cur: &mut BTreeMap<Atom, Atom>,
    out: &mut Vec<BTreeMap<Atom, Atom>>,
) {
    if i == domain.len() {
        out.push(cur.clone());
        return;
    }
    for j in 0..specific.len() {
        if !used[j] {
            used[j] = true;
            cur.insert(domain[i], specific[j]);
            assign_rec(domain, specific, fresh, i + 1, next_fresh, used, cur, out);
            used[j] = false;
        }
    }
    if next_fresh < fresh.len() {
        cur.insert(domain[i], fresh[next_fresh]);
        assign_rec(
            domain,
            specific,
            fresh,
            i + 1,
            next_fresh + 1,
            used,
            cur,
            out,
        );
    }
    cur.remove(&domain[i]);
}

pub fn fmt_atoms(atoms: &AtomSet) -> String {
    let inner: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("orbits [")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "] pinned {}", fmt_atoms(&self.pinned))
    }
}

impl fmt::Debug for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::first_atoms;
    use crate::oracle::Universe;

    fn at(i: u32) -> Value {
        Value::atom(i)
    }

    fn pin(ix: &[u32]) -> AtomSet {
        ix.iter().map(|&i| Atom::new(i)).collect()
    }

    #[test]
    fn atoms_is_one_orbit() {
        let d = OrbitSet::atoms();
        assert!(d.member(&at(1)));
        assert!(d.member(&at(42)));
        assert!(d.is_indecomposable().unwrap());
    }

    #[test]
    fn distinctness_is_preserved() {
        assert!(!OrbitSet::distinct_pairs().member(&Value::pair(at(2), at(2))));
    }

    #[test]
    fn pinned_atom_is_not_moved() {
        let s = OrbitSet::new(pin(&[0]), [at(0)]);
        assert!(s.member(&at(0)));
        assert!(!s.member(&at(1)));
        // bounded check over a 3-atom universe
        let u = Universe::new(first_atoms(3));
        assert_eq!(u.members(&s).len(), 1);
    }

    #[test]
    fn zero_elements_examples() {
        assert!(OrbitSet::atoms().zero_elements().unwrap().is_empty());
        let mixed = OrbitSet::atoms().union(&OrbitSet::discrete(["th"]));
        assert_eq!(
            mixed.zero_elements().unwrap().generators(),
            &[Value::label("th")]
        );
        let pairs = OrbitSet::new(AtomSet::new(), [Value::set([at(0), at(1)])]);
        assert!(pairs.zero_elements().unwrap().is_empty());
        assert_eq!(
            OrbitSet::singleton(&at(0)).zero_elements(),
            Err(NomError::NotEquivariant)
        );
    }

    #[test]
    fn refine_atoms_at_one_pinned_atom() {
        let r = OrbitSet::atoms().refine(&pin(&[0])).unwrap();
        assert_eq!(r.generators().len(), 2);
        assert!(r.member(&at(0)));
        assert!(r.member(&at(5)));
        let u = Universe::new(first_atoms(4));
        assert_eq!(u.members(&r), u.members(&OrbitSet::atoms()));
    }

    #[test]
    fn refine_to_same_pinned_is_identity() {
        let s = OrbitSet::new(pin(&[1]), [Value::pair(at(1), at(0))]);
        assert_eq!(s.refine(&pin(&[1])).unwrap(), s);
        assert!(s.refine(&pin(&[0])).is_err());
    }

    #[test]
    fn refine_distinct_pairs_splits_in_three() {
        let r = OrbitSet::distinct_pairs().refine(&pin(&[0])).unwrap();
        assert_eq!(r.generators().len(), 3);
        let u = Universe::new(first_atoms(4));
        assert_eq!(u.members(&r), u.members(&OrbitSet::distinct_pairs()));
    }

    #[test]
    fn set_operations() {
        let diag = OrbitSet::new(AtomSet::new(), [Value::pair(at(0), at(0))]);
        let all = OrbitSet::distinct_pairs().union(&diag);
        assert_eq!(all.generators().len(), 2);
        assert!(all.same_set(&OrbitSet::atom_pairs()));
        assert!(OrbitSet::atoms()
            .intersect(&OrbitSet::atoms())
            .same_set(&OrbitSet::atoms()));
        let rest = OrbitSet::atom_pairs().difference(&OrbitSet::distinct_pairs());
        assert!(rest.same_set(&diag));
        let u = Universe::new(first_atoms(4));
        assert_eq!(u.members(&rest).len(), 4);
    }

    #[test]
    fn products() {
        assert_eq!(OrbitSet::atom_pairs().generators().len(), 2);
        let with_unit = OrbitSet::unit().product(&OrbitSet::distinct_pairs());
        assert_eq!(with_unit.generators().len(), 1);
        let tagged = OrbitSet::atoms().product(&OrbitSet::discrete(["th"]));
        assert_eq!(
            tagged.generators(),
            &[Value::pair(at(0), Value::label("th"))]
        );
        // pairs of distinct pairs: 1 + 4 + 2 identification patterns
        let pp = OrbitSet::distinct_pairs().product(&OrbitSet::distinct_pairs());
        assert_eq!(pp.generators().len(), 7);
    }

    #[test]
    fn indecomposability() {
        assert!(!OrbitSet::atom_pairs().is_indecomposable().unwrap());
        assert!(!OrbitSet::discrete(["t1", "t2"])
            .is_indecomposable()
            .unwrap());
    }

    #[test]
    fn minimize_recovers_equivariance() {
        let s = OrbitSet::atoms().refine(&pin(&[0, 2])).unwrap();
        assert!(s.minimize().pinned().is_empty());
        assert_eq!(OrbitSet::singleton(&at(3)).least_support(), pin(&[3]));
        let cofinite = OrbitSet::atoms().difference(&OrbitSet::singleton(&at(1)));
        assert_eq!(cofinite.least_support(), pin(&[1]));
    }

    #[test]
    fn assignments_use_fresh_atoms_in_order() {
        let dom = [Atom::new(10), Atom::new(11)];
        let maps = assignments(&dom, &[Atom::new(0)], &[Atom::new(1), Atom::new(2)]);
        // a->0,b->f1 ; a->f1,b->0 ; a->f1,b->f2
        assert_eq!(maps.len(), 3);
    }
}

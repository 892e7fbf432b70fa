//! Atomic names and finitary permutations.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

/// Finite set of atoms, ordered by index.
pub type AtomSet = BTreeSet<Atom>;

const NAME_CAP: usize = 7;

/// Short inline display name, kept `Copy` so atoms stay cheap.
#[derive(Clone, Copy)]
struct ShortName {
    len: u8,
    bytes: [u8; NAME_CAP],
}

impl ShortName {
    fn new(name: &str) -> Option<Self> {
        if name.is_empty() || name.len() > NAME_CAP || !name.is_ascii() {
            return None;
        }
        let mut bytes = [0u8; NAME_CAP];
        bytes[..name.len()].copy_from_slice(name.as_bytes());
        Some(ShortName {
            len: name.len() as u8,
            bytes,
        })
    }

    fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes[..self.len as usize]).unwrap_or("?")
    }
}

/// An atomic name. Identity is the index alone; the display name is cosmetic.
#[derive(Clone, Copy)]
pub struct Atom {
    index: u32,
    display: Option<ShortName>,
}

impl Atom {
    pub const fn new(index: u32) -> Self {
        Atom {
            index,
            display: None,
        }
    }

    /// Atom with a display name. Names longer than seven ASCII bytes are dropped.
    pub fn named(index: u32, name: &str) -> Self {
        Atom {
            index,
            display: ShortName::new(name),
        }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn display_name(&self) -> Option<&str> {
        self.display.as_ref().map(ShortName::as_str)
    }

    /// The smallest-index atom not in `avoid`.
    pub fn fresh(avoid: &AtomSet) -> Atom {
        fresh_atoms(avoid, 1)[0]
    }
}

/// The `n` smallest-index atoms not in `avoid`, in increasing order.
pub fn fresh_atoms(avoid: &AtomSet, n: usize) -> Vec<Atom> {
    let mut out = Vec::with_capacity(n);
    let mut i = 0u32;
    while out.len() < n {
        let a = Atom::new(i);
        if !avoid.contains(&a) {
            out.push(a);
        }
        i += 1;
    }
    out
}

/// Convenience: the atoms `#0 .. #n-1`.
pub fn first_atoms(n: usize) -> AtomSet {
    (0..n as u32).map(Atom::new).collect()
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for Atom {}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index.cmp(&other.index)
    }
}

impl Hash for Atom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.index.hash(state);
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.display_name() {
            Some(name) => f.write_str(name),
            None => write!(f, "#{}", self.index),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finitary permutation of atoms. Only moved atoms are stored, so the key
/// set is exactly the permutation's support.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FinPerm {
    moves: BTreeMap<Atom, Atom>,
}

impl FinPerm {
    pub fn identity() -> Self {
        FinPerm::default()
    }

    pub fn transposition(a: Atom, b: Atom) -> Self {
        let mut moves = BTreeMap::new();
        if a != b {
            moves.insert(a, b);
            moves.insert(b, a);
        }
        FinPerm { moves }
    }

    /// Builds a permutation from an explicit map. Returns `None` unless the
    /// map is a bijection of its key set onto itself.
    pub fn from_map(map: BTreeMap<Atom, Atom>) -> Option<Self> {
        let keys: AtomSet = map.keys().copied().collect();
        let values: AtomSet = map.values().copied().collect();
        if keys != values || values.len() != map.len() {
            return None;
        }
        Some(FinPerm {
            moves: map.into_iter().filter(|(k, v)| k != v).collect(),
        })
    }

    /// Extends an injective partial map to a permutation agreeing with it on
    /// its domain. Image atoms outside the domain are sent back to domain
    /// atoms outside the image, pairing both in increasing order.
    pub fn extend_injection(map: &BTreeMap<Atom, Atom>) -> Self {
        let dom: AtomSet = map.keys().copied().collect();
        let img: AtomSet = map.values().copied().collect();
        debug_assert_eq!(img.len(), map.len(), "map must be injective");
        let mut moves: BTreeMap<Atom, Atom> = map.clone();
        let holes = img.difference(&dom);
        let spare = dom.difference(&img);
        for (&h, &s) in holes.zip(spare) {
            moves.insert(h, s);
        }
        moves.retain(|k, v| k != v);
        FinPerm { moves }
    }

    /// Composite `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FinPerm) -> FinPerm {
        let mut moves = BTreeMap::new();
        for &a in self.moves.keys().chain(other.moves.keys()) {
            let b = self.apply(other.apply(a));
            if a != b {
                moves.insert(a, b);
            }
        }
        FinPerm { moves }
    }

    pub fn inverse(&self) -> FinPerm {
        FinPerm {
            moves: self.moves.iter().map(|(&k, &v)| (v, k)).collect(),
        }
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.moves.get(&a).copied().unwrap_or(a)
    }

    pub fn is_identity(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn support(&self) -> AtomSet {
        self.moves.keys().copied().collect()
    }

    pub fn moves(&self) -> &BTreeMap<Atom, Atom> {
        &self.moves
    }

    /// Fixes every atom of `atoms`.
    pub fn fixes_all(&self, atoms: &AtomSet) -> bool {
        atoms.iter().all(|a| !self.moves.contains_key(a))
    }

    pub fn act_atoms(&self, atoms: &AtomSet) -> AtomSet {
        atoms.iter().map(|&a| self.apply(a)).collect()
    }

    /// Disjoint cycles, each starting at its smallest atom; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<Atom>> {
        let mut seen = AtomSet::new();
        let mut out = Vec::new();
        for &start in self.moves.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut cur = self.apply(start);
            while cur != start {
                seen.insert(cur);
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// A list of transpositions whose composite (rightmost applied first)
    /// equals `self`. Every transposition swaps atoms of the support.
    pub fn transpositions(&self) -> Vec<(Atom, Atom)> {
        // (c0 c1 ... ck) = (c0 ck) ∘ ... ∘ (c0 c2) ∘ (c0 c1)
        let mut out = Vec::new();
        for cycle in self.cycles() {
            for &c in cycle[1..].iter().rev() {
                out.push((cycle[0], c));
            }
        }
        out
    }
}

impl fmt::Display for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moves.is_empty() {
            return f.write_str("id");
        }
        for cycle in self.cycles() {
            f.write_str("(")?;
            for (i, a) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: u32) -> Atom {
        Atom::new(i)
    }

    #[test]
    fn transposition_of_equal_atoms_is_identity() {
        assert!(FinPerm::transposition(a(3), a(3)).is_identity());
    }

    #[test]
    fn transposition_swaps() {
        let t = FinPerm::transposition(a(0), a(1));
        assert_eq!(t.apply(a(0)), a(1));
        assert_eq!(t.apply(a(1)), a(0));
        assert_eq!(t.apply(a(2)), a(2));
        assert!(t.compose(&t).is_identity());
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn compose_applies_right_first() {
        // (a b) ∘ (b c): c -> b -> a, b -> c, a -> b
        let ab = FinPerm::transposition(a(0), a(1));
        let bc = FinPerm::transposition(a(1), a(2));
        let p = ab.compose(&bc);
        assert_eq!(p.apply(a(2)), a(0));
        assert_eq!(p.apply(a(1)), a(2));
        assert_eq!(p.apply(a(0)), a(1));
    }

    #[test]
    fn identity_laws() {
        let q = FinPerm::transposition(a(4), a(9));
        assert_eq!(FinPerm::identity().compose(&q), q);
        assert_eq!(q.compose(&q.inverse()), FinPerm::identity());
        assert!(FinPerm::identity().inverse().is_identity());
    }

    #[test]
    fn from_map_rejects_non_bijections() {
        let mut m = BTreeMap::new();
        m.insert(a(0), a(1));
        assert!(FinPerm::from_map(m.clone()).is_none());
        m.insert(a(1), a(0));
        assert_eq!(
            FinPerm::from_map(m).unwrap(),
            FinPerm::transposition(a(0), a(1))
        );
    }

    #[test]
    fn extend_injection_agrees_on_domain() {
        let mut m = BTreeMap::new();
        m.insert(a(5), a(0));
        m.insert(a(6), a(5));
        let p = FinPerm::extend_injection(&m);
        assert_eq!(p.apply(a(5)), a(0));
        assert_eq!(p.apply(a(6)), a(5));
        assert_eq!(p.apply(a(0)), a(6));
    }

    #[test]
    fn cycle_notation() {
        let p = FinPerm::transposition(Atom::named(0, "a"), Atom::named(1, "b")).compose(
            &FinPerm::transposition(Atom::named(2, "c"), Atom::named(3, "d")),
        );
        assert_eq!(p.to_string(), "(a b)(c d)");
        assert_eq!(FinPerm::transposition(a(7), a(12)).to_string(), "(#7 #12)");
    }

    #[test]
    fn fresh_is_smallest_missing_index() {
        let avoid: AtomSet = [a(0), a(1), a(3)].into_iter().collect();
        assert_eq!(Atom::fresh(&avoid), a(2));
        assert_eq!(fresh_atoms(&avoid, 3), vec![a(2), a(4), a(5)]);
    }

    #[test]
    fn atoms_compare_by_index_only() {
        assert_eq!(Atom::named(2, "c"), Atom::new(2));
    }
}

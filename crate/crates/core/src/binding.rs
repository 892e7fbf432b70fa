//! Binding operators and the equivalences they induce.

use std::fmt;

use crate::atoms::{fresh_atoms, Atom, AtomSet};
use crate::error::{NomError, Result};
use crate::orbitset::{assignments, OrbitSet};
use crate::relation::FsRel;
use crate::value::Value;

/// An equivariant choice `l(x) ⊆ supp x` of bound atoms, given by one
/// selection per orbit representative of an equivariant set.
#[derive(Clone, PartialEq, Eq)]
pub struct BindingOp {
    base: OrbitSet,
    selections: Vec<AtomSet>,
}

impl BindingOp {
    /// `selections[i]` belongs to the `i`-th generator of `base`.
    pub fn new(base: OrbitSet, selections: Vec<AtomSet>) -> Result<BindingOp> {
        if !base.pinned().is_empty() {
            return Err(NomError::InvalidBinder(
                "base set must be equivariant".into(),
            ));
        }
        if selections.len() != base.generators().len() {
            return Err(NomError::InvalidBinder(format!(
                "{} selections for {} orbits",
                selections.len(),
                base.generators().len()
            )));
        }
        for (i, (g, sel)) in base.generators().iter().zip(&selections).enumerate() {
            if !sel.is_subset(&g.support()) {
                return Err(NomError::InvalidBinder(format!(
                    "orbit {i}: selection is not inside the support of {g}"
                )));
            }
            for sym in g.matchings(g, &AtomSet::new()) {
                let moved: AtomSet = sel
                    .iter()
                    .map(|a| sym.get(a).copied().unwrap_or(*a))
                    .collect();
                if &moved != sel {
                    return Err(NomError::InvalidBinder(format!(
                        "orbit {i}: a symmetry of {g} does not preserve the selection"
                    )));
                }
            }
        }
        Ok(BindingOp { base, selections })
    }

    /// Selections given by positions, i.e. indices of atoms in the canonical
    /// representative.
    pub fn from_positions(base: OrbitSet, positions: Vec<Vec<u32>>) -> Result<BindingOp> {
        let selections = positions
            .into_iter()
            .map(|ps| ps.into_iter().map(Atom::new).collect())
            .collect();
        BindingOp::new(base, selections)
    }

    /// `l(x) = ∅`.
    pub fn empty_selector(base: OrbitSet) -> Result<BindingOp> {
        let n = base.generators().len();
        BindingOp::new(base, vec![AtomSet::new(); n])
    }

    /// `l(x) = supp x`.
    pub fn full_selector(base: OrbitSet) -> Result<BindingOp> {
        let selections = base.generators().iter().map(Value::support).collect();
        BindingOp::new(base, selections)
    }

    pub fn base(&self) -> &OrbitSet {
        &self.base
    }

    pub fn selections(&self) -> &[AtomSet] {
        &self.selections
    }

    /// `l(x)`, or `None` when `x` is not in the base set.
    pub fn bound_atoms(&self, x: &Value) -> Option<AtomSet> {
        self.base
            .generators()
            .iter()
            .zip(&self.selections)
            .find_map(|(g, sel)| {
                let m = g.matchings(x, &AtomSet::new()).into_iter().next()?;
                Some(sel.iter().map(|a| m[a]).collect())
            })
    }

    /// `supp x \ l(x)`.
    pub fn free_support(&self, x: &Value) -> Option<AtomSet> {
        let bound = self.bound_atoms(x)?;
        Some(x.support().difference(&bound).copied().collect())
    }

    /// `≡_l`: `x ≡ πx` whenever `π` fixes the free atoms of `x`.
    pub fn equivalence(&self) -> FsRel {
        let none = AtomSet::new();
        let mut gens = Vec::new();
        for (g, sel) in self.base.generators().iter().zip(&self.selections) {
            let bound: Vec<Atom> = sel.iter().copied().collect();
            let fresh = fresh_atoms(&g.support(), bound.len());
            for map in assignments(&bound, &bound, &fresh) {
                gens.push(Value::pair(g.clone(), g.rename(&map)));
            }
        }
        FsRel::from_orbits(&self.base, &self.base, &none, gens)
    }

    /// Pairs with equal free supports.
    pub fn same_free_rel(&self) -> FsRel {
        FsRel::by_predicate(&self.base, &self.base, |x, y| {
            self.free_support(x) == self.free_support(y)
        })
    }
}

/// `≡_l` for a binder on `x`.
pub fn binder_equiv(x: &OrbitSet, l: &BindingOp) -> Result<FsRel> {
    if !x.same_set(l.base()) {
        return Err(NomError::InvalidBinder(
            "binder is declared on a different set".into(),
        ));
    }
    Ok(l.equivalence())
}

pub fn same_free_rel(x: &OrbitSet, l: &BindingOp) -> Result<FsRel> {
    if !x.same_set(l.base()) {
        return Err(NomError::InvalidBinder(
            "binder is declared on a different set".into(),
        ));
    }
    Ok(l.same_free_rel())
}

impl fmt::Debug for BindingOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "binder on {}: ", self.base)?;
        f.debug_list().entries(&self.selections).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::first_atoms;
    use crate::oracle::Universe;
    use crate::relation::Property;

    fn at(i: u32) -> Value {
        Value::atom(i)
    }

    fn first_component() -> BindingOp {
        BindingOp::from_positions(OrbitSet::distinct_pairs(), vec![vec![0]]).unwrap()
    }

    #[test]
    fn single_binder_is_alpha_equivalence() {
        let eq = first_component().equivalence();
        assert!(eq.contains(&Value::pair(at(0), at(1)), &Value::pair(at(2), at(1))));
        assert!(!eq.contains(&Value::pair(at(0), at(1)), &Value::pair(at(1), at(0))));
        for p in [
            Property::Reflexive,
            Property::Symmetric,
            Property::Transitive,
            Property::Equivariant,
        ] {
            assert!(eq.check(p).unwrap(), "{p}");
        }
        let free = first_component()
            .free_support(&Value::pair(at(3), at(5)))
            .unwrap();
        assert_eq!(free, [Atom::new(5)].into_iter().collect());
    }

    #[test]
    fn empty_selector_gives_the_diagonal() {
        for x in [
            OrbitSet::atoms(),
            OrbitSet::distinct_pairs(),
            OrbitSet::atom_pairs(),
        ] {
            let l = BindingOp::empty_selector(x.clone()).unwrap();
            assert!(l.equivalence().rel_equal(&FsRel::identity(&x)));
        }
        let l = BindingOp::empty_selector(OrbitSet::atoms()).unwrap();
        assert!(l
            .same_free_rel()
            .rel_equal(&FsRel::identity(&OrbitSet::atoms())));
    }

    #[test]
    fn full_selector_gives_orbit_equivalence() {
        let x = OrbitSet::atom_pairs();
        let l = BindingOp::full_selector(x.clone()).unwrap();
        let eq = l.equivalence();
        let u = Universe::new(first_atoms(4));
        for (a, b) in u.pairs(&FsRel::full(&x, &x)) {
            let same = a.canonicalize().0 == b.canonicalize().0;
            assert_eq!(eq.contains(&a, &b), same);
        }
    }

    #[test]
    fn equivalence_is_inside_same_free() {
        let l = first_component();
        assert!(l.equivalence().is_subset(&l.same_free_rel()));
        assert!(l
            .same_free_rel()
            .contains(&Value::pair(at(0), at(1)), &Value::pair(at(2), at(1))));
    }

    #[test]
    fn asymmetric_selection_on_a_symmetric_orbit_is_rejected() {
        let pair_sets = OrbitSet::new(AtomSet::new(), [Value::atom_set(first_atoms(2))]);
        assert!(matches!(
            BindingOp::from_positions(pair_sets.clone(), vec![vec![0]]),
            Err(NomError::InvalidBinder(_))
        ));
        assert!(BindingOp::from_positions(pair_sets, vec![vec![0, 1]]).is_ok());
        assert!(matches!(
            BindingOp::from_positions(OrbitSet::atoms(), vec![vec![3]]),
            Err(NomError::InvalidBinder(_))
        ));
    }
}

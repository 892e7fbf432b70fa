//! Tabulating `P_fs*`: at each finite atom set `A`, the finitely supported
//! subsets of an equivariant set with support inside `A`.
//!
//! A level is stored as its basis of `Perm_A`-orbits ("descriptors"); level
//! elements are bitmasks over that basis.

use std::fmt;

use crate::atoms::{AtomSet, FinPerm};
use crate::error::{NomError, Result};
use crate::orbitset::{fmt_atoms, OrbitSet};
use crate::relation::FsRel;
use crate::value::Value;

pub const DEFAULT_SIZE_GUARD: usize = 12;

/// The `Perm_A`-orbits of an equivariant set.
pub fn pfs_star_at(x: &OrbitSet, a: &AtomSet, guard: usize) -> Result<Vec<OrbitSet>> {
    if !x.pinned().is_empty() {
        return Err(NomError::NotEquivariant);
    }
    let descriptors = x.refined(a).orbits();
    if descriptors.len() > guard {
        return Err(NomError::SizeGuard {
            count: descriptors.len(),
            limit: guard,
        });
    }
    Ok(descriptors)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Level {
    atoms: AtomSet,
    descriptors: Vec<OrbitSet>,
}

impl Level {
    pub fn new(x: &OrbitSet, atoms: AtomSet, guard: usize) -> Result<Level> {
        let descriptors = pfs_star_at(x, &atoms, guard)?;
        Ok(Level { atoms, descriptors })
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn descriptors(&self) -> &[OrbitSet] {
        &self.descriptors
    }

    /// Number of level elements, `2^n`.
    pub fn size(&self) -> u64 {
        1u64 << self.descriptors.len()
    }

    /// Union of the chosen descriptors, pinned at the level's atoms.
    pub fn element(&self, mask: u64) -> OrbitSet {
        let gens = self
            .descriptors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, d)| d.generators()[0].clone())
            .collect();
        OrbitSet::from_canonical(self.atoms.clone(), gens)
    }

    /// The mask of `k`, if `k` is a union of descriptors.
    pub fn decompose(&self, k: &OrbitSet) -> Result<u64> {
        let k = k.minimize();
        if !k.pinned().is_subset(&self.atoms) {
            return Err(NomError::NotALevelElement);
        }
        let mut mask = 0u64;
        for g in k.refined(&self.atoms).generators() {
            let i = self
                .descriptors
                .iter()
                .position(|d| &d.generators()[0] == g)
                .ok_or(NomError::NotALevelElement)?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Where each descriptor of `self` lands in the finer level `finer`.
    fn restriction_to(&self, finer: &Level) -> Vec<u64> {
        self.descriptors
            .iter()
            .map(|d| finer.decompose(d).expect("descriptors refine"))
            .collect()
    }
}

/// Re-presents a level element at a larger level.
pub fn restriction(x: &OrbitSet, a: &AtomSet, b: &AtomSet, k: &OrbitSet) -> Result<OrbitSet> {
    if !a.is_subset(b) {
        return Err(NomError::NotARefinement {
            current: fmt_atoms(a),
            requested: fmt_atoms(b),
        });
    }
    let level = Level::new(x, a.clone(), usize::MAX)?;
    let mask = level.decompose(k)?;
    Ok(level.element(mask).refined(b))
}

/// `(R_*)_A(K) = R→(K)`, presented at level `A` of the codomain.
pub fn r_star_component(r: &FsRel, a: &AtomSet, k: &OrbitSet) -> Result<OrbitSet> {
    if !r.least_support().is_empty() {
        return Err(NomError::NotEquivariant);
    }
    let level = Level::new(r.dom(), a.clone(), usize::MAX)?;
    level.decompose(k)?;
    Ok(r.direct_image(k).refined(a))
}

#[derive(Clone)]
pub struct PresheafTable {
    set: OrbitSet,
    levels: Vec<Level>,
    restrictions: Vec<(usize, usize, Vec<u64>)>,
}

impl PresheafTable {
    /// Tabulates every requested level and the restriction between every
    /// pair of comparable levels.
    pub fn build(x: &OrbitSet, levels: &[AtomSet], guard: usize) -> Result<PresheafTable> {
        let levels = levels
            .iter()
            .map(|a| Level::new(x, a.clone(), guard))
            .collect::<Result<Vec<_>>>()?;
        let mut restrictions = Vec::new();
        for (i, li) in levels.iter().enumerate() {
            for (j, lj) in levels.iter().enumerate() {
                if i != j && li.atoms.is_subset(&lj.atoms) {
                    restrictions.push((i, j, li.restriction_to(lj)));
                }
            }
        }
        Ok(PresheafTable {
            set: x.clone(),
            levels,
            restrictions,
        })
    }

    pub fn set(&self) -> &OrbitSet {
        &self.set
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// The restriction of an element of level `i` to level `j`.
    pub fn restrict(&self, i: usize, j: usize, mask: u64) -> Option<u64> {
        if i == j {
            return Some(mask);
        }
        let (_, _, images) = self
            .restrictions
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)?;
        Some(
            images
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .fold(0, |acc, (_, m)| acc | m),
        )
    }

    /// Pairs of level indices with a recorded restriction.
    pub fn inclusions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.restrictions.iter().map(|(i, j, _)| (*i, *j))
    }
}

impl fmt::Debug for PresheafTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.levels {
            writeln!(
                f,
                "at {}: {} descriptors, {} elements",
                fmt_atoms(&l.atoms),
                l.descriptors.len(),
                l.size()
            )?;
        }
        Ok(())
    }
}

/// A colimit class: its earliest-level representative and its image at the
/// top of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitClass {
    pub level: usize,
    pub mask: u64,
    pub top_mask: u64,
}

/// The direct limit of a tabulated chain of levels.
pub fn colimit_chain(t: &PresheafTable) -> Result<Vec<ColimitClass>> {
    let mut order: Vec<usize> = (0..t.levels.len()).collect();
    order.sort_by_key(|&i| t.levels[i].atoms.len());
    for w in order.windows(2) {
        if !t.levels[w[0]].atoms.is_subset(&t.levels[w[1]].atoms) {
            return Err(NomError::NotAChain);
        }
    }
    let Some(&top) = order.last() else {
        return Ok(Vec::new());
    };
    let mut classes: Vec<ColimitClass> = Vec::new();
    for &i in &order {
        for mask in 0..t.levels[i].size() {
            let top_mask = t.restrict(i, top, mask).ok_or(NomError::NotAChain)?;
            if !classes.iter().any(|c| c.top_mask == top_mask) {
                classes.push(ColimitClass {
                    level: i,
                    mask,
                    top_mask,
                });
            }
        }
    }
    classes.sort_by_key(|c| c.top_mask);
    Ok(classes)
}

/// `R_f = {(x, y) : y ∈ f(x)}` for an assignment given on orbit
/// representatives of `x`; unassigned orbits map to `∅`.
pub fn rel_from_setvalued(x: &OrbitSet, y: &OrbitSet, f: &[(Value, OrbitSet)]) -> Result<FsRel> {
    if !x.pinned().is_empty() {
        return Err(NomError::NotEquivariant);
    }
    let mut pairs = Vec::new();
    for (g, img) in f {
        if !x.member(g) {
            return Err(NomError::NotAMember {
                value: g.to_string(),
                side: "the domain",
            });
        }
        let supp = g.support();
        let img = img.minimize();
        if !img.pinned().is_subset(&supp) {
            return Err(NomError::NotEquivariantAssignment(format!(
                "the image of {g} needs atoms outside its support"
            )));
        }
        for sym in g.matchings(g, &AtomSet::new()) {
            let p = FinPerm::extend_injection(&sym);
            if !img.act(&p).same_set(&img) {
                return Err(NomError::NotEquivariantAssignment(format!(
                    "the image of {g} is not invariant under its symmetry {p}"
                )));
            }
        }
        for rep in img.refined(&supp).generators() {
            pairs.push((g.clone(), rep.clone()));
        }
    }
    FsRel::new(x.clone(), y.clone(), AtomSet::new(), pairs)
}

/// Outcome of comparing two relations through their `R_*` components.
#[derive(Clone, Debug)]
pub struct FaithfulnessReport {
    pub levels_checked: usize,
    pub elements_checked: usize,
    /// First level element on which the components differ.
    pub first_difference: Option<(AtomSet, OrbitSet)>,
    pub relations_equal: bool,
}

impl FaithfulnessReport {
    pub fn components_equal(&self) -> bool {
        self.first_difference.is_none()
    }

    /// Equal components on unequal relations.
    pub fn shows_non_faithful(&self) -> bool {
        self.components_equal() && !self.relations_equal
    }
}

/// Compares `(R_*)_A` and `(R'_*)_A` on every element of every given level.
pub fn compare_components(r: &FsRel, r2: &FsRel, levels: &[AtomSet]) -> Result<FaithfulnessReport> {
    let mut report = FaithfulnessReport {
        levels_checked: 0,
        elements_checked: 0,
        first_difference: None,
        relations_equal: r.rel_equal(r2),
    };
    for a in levels {
        let level = Level::new(r.dom(), a.clone(), DEFAULT_SIZE_GUARD)?;
        report.levels_checked += 1;
        for mask in 0..level.size() {
            let k = level.element(mask);
            report.elements_checked += 1;
            let left = r_star_component(r, a, &k)?;
            let right = r_star_component(r2, a, &k)?;
            if !left.same_set(&right) && report.first_difference.is_none() {
                report.first_difference = Some((a.clone(), k));
            }
        }
    }
    Ok(report)
}

/// The pair `R = {(d, (d, d'))}`, `R' = {(d', (d, d'))}` from `D` to `D^(2)`.
pub fn head_and_tail() -> (FsRel, FsRel) {
    let d = OrbitSet::atoms();
    let d2 = OrbitSet::distinct_pairs();
    let ab = Value::pair(Value::atom(0), Value::atom(1));
    let head = FsRel::new(
        d.clone(),
        d2.clone(),
        AtomSet::new(),
        [(Value::atom(0), ab.clone())],
    )
    .expect("members");
    let tail = FsRel::new(d, d2, AtomSet::new(), [(Value::atom(1), ab)]).expect("members");
    (head, tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::{first_atoms, Atom};
    use crate::oracle::Universe;

    fn pin(ix: &[u32]) -> AtomSet {
        ix.iter().map(|&i| Atom::new(i)).collect()
    }

    #[test]
    fn descriptors_of_atoms() {
        let d = OrbitSet::atoms();
        assert_eq!(pfs_star_at(&d, &pin(&[]), 12).unwrap().len(), 1);
        assert_eq!(pfs_star_at(&d, &pin(&[0]), 12).unwrap().len(), 2);
        assert_eq!(
            pfs_star_at(&OrbitSet::distinct_pairs(), &pin(&[0]), 12)
                .unwrap()
                .len(),
            3
        );
        assert!(matches!(
            pfs_star_at(&d, &first_atoms(20), 12),
            Err(NomError::SizeGuard {
                count: 21,
                limit: 12
            })
        ));
    }

    #[test]
    fn restriction_examples() {
        let d = OrbitSet::atoms();
        let r = restriction(&d, &pin(&[]), &pin(&[0]), &d).unwrap();
        assert_eq!(r.generators().len(), 2);
        assert!(r.same_set(&d));
        let rest = d.difference(&OrbitSet::singleton(&Value::atom(0)));
        let same = restriction(&d, &pin(&[0]), &pin(&[0]), &rest).unwrap();
        assert!(same.same_set(&rest));
        let finer = restriction(&d, &pin(&[0]), &pin(&[0, 1]), &rest).unwrap();
        assert_eq!(finer.generators().len(), 2);
        let u = Universe::new(first_atoms(5));
        assert_eq!(u.members(&finer), u.members(&rest));
        assert_eq!(
            restriction(
                &d,
                &pin(&[]),
                &pin(&[0]),
                &OrbitSet::singleton(&Value::atom(0))
            ),
            Err(NomError::NotALevelElement)
        );
    }

    #[test]
    fn star_components() {
        let d = OrbitSet::atoms();
        let sharp = FsRel::freshness(&d, &d);
        let a = OrbitSet::singleton(&Value::atom(0));
        let out = r_star_component(&sharp, &pin(&[0]), &a).unwrap();
        assert!(out.same_set(&d.difference(&a)));
        let id = FsRel::identity(&d);
        assert!(r_star_component(&id, &pin(&[0]), &a).unwrap().same_set(&a));
    }

    #[test]
    fn table_and_colimit() {
        let d = OrbitSet::atoms();
        let t = PresheafTable::build(&d, &[pin(&[]), pin(&[0])], 12).unwrap();
        assert_eq!(t.restrict(0, 1, 1), Some(0b11));
        let classes = colimit_chain(&t).unwrap();
        assert_eq!(classes.len(), 4);
        assert_eq!(classes.iter().filter(|c| c.level == 0).count(), 2);
        let broken = PresheafTable::build(&d, &[pin(&[0]), pin(&[1])], 12).unwrap();
        assert_eq!(colimit_chain(&broken), Err(NomError::NotAChain));
    }

    #[test]
    fn set_valued_examples() {
        let d = OrbitSet::atoms();
        let a = Value::atom(0);
        let unit = rel_from_setvalued(&d, &d, &[(a.clone(), OrbitSet::singleton(&a))]).unwrap();
        assert!(unit.rel_equal(&FsRel::identity(&d)));
        let others = d.difference(&OrbitSet::singleton(&a));
        let sharp = rel_from_setvalued(&d, &d, &[(a.clone(), others)]).unwrap();
        assert!(sharp.rel_equal(&FsRel::freshness(&d, &d)));
        assert!(rel_from_setvalued(&d, &d, &[]).unwrap().is_empty());
        let elsewhere = OrbitSet::singleton(&Value::atom(4));
        assert!(matches!(
            rel_from_setvalued(&d, &d, &[(a, elsewhere)]),
            Err(NomError::NotEquivariantAssignment(_))
        ));
    }

    #[test]
    fn asymmetric_image_of_a_symmetric_point_is_rejected() {
        let sets = OrbitSet::new(AtomSet::new(), [Value::atom_set(first_atoms(2))]);
        let g = sets.generators()[0].clone();
        let first = OrbitSet::singleton(&Value::atom(0));
        assert!(matches!(
            rel_from_setvalued(&sets, &OrbitSet::atoms(), &[(g, first)]),
            Err(NomError::NotEquivariantAssignment(_))
        ));
    }
}

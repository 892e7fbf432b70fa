//! Named sets and relations used by the law suites, plus seeded random
//! generation of permutations, values, subsets and relations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atoms::{Atom, AtomSet, FinPerm};
use crate::orbitset::OrbitSet;
use crate::relation::FsRel;
use crate::value::Value;

pub fn d() -> OrbitSet {
    OrbitSet::atoms()
}

/// `D^(2)`.
pub fn d2() -> OrbitSet {
    OrbitSet::distinct_pairs()
}

/// `D × D`.
pub fn dxd() -> OrbitSet {
    OrbitSet::atom_pairs()
}

/// The discrete set `{θ1, θ2}`.
pub fn theta() -> OrbitSet {
    OrbitSet::discrete(["theta1", "theta2"])
}

/// `D + Θ`.
pub fn d_plus_theta() -> OrbitSet {
    d().union(&theta())
}

/// Two-element atom sets.
pub fn atom_pair_sets() -> OrbitSet {
    OrbitSet::new(
        AtomSet::new(),
        [Value::atom_set([Atom::new(0), Atom::new(1)])],
    )
}

/// The base sets random instances are drawn from.
pub fn base_sets() -> Vec<(&'static str, OrbitSet)> {
    vec![
        ("D", d()),
        ("D2", d2()),
        ("DxD", dxd()),
        ("Theta", theta()),
        ("D+Theta", d_plus_theta()),
    ]
}

fn pair(x: Value, y: Value) -> Value {
    Value::pair(x, y)
}

fn at(i: u32) -> Value {
    Value::atom(i)
}

fn ab() -> Value {
    pair(at(0), at(1))
}

fn equivariant(x: &OrbitSet, y: &OrbitSet, pairs: Vec<Value>) -> FsRel {
    FsRel::from_orbits(x, y, &AtomSet::new(), pairs)
}

/// `{(d, (d, d'))} : D → D^(2)`.
pub fn head() -> FsRel {
    equivariant(&d(), &d2(), vec![pair(at(0), ab())])
}

/// `{((d, d'), d)} : D^(2) → D`.
pub fn first_projection() -> FsRel {
    equivariant(&d2(), &d(), vec![pair(ab(), at(0))])
}

/// `{((d, d'), (d', d))}` on `D^(2)`.
pub fn swap() -> FsRel {
    equivariant(&d2(), &d2(), vec![pair(ab(), pair(at(1), at(0)))])
}

/// `Δ ∪ {((a, b), (b, c)) : a, b, c distinct}` on `D^(2)`: reflexive, not
/// transitive.
pub fn shift_reflexive() -> FsRel {
    let shift = equivariant(&d2(), &d2(), vec![pair(ab(), pair(at(1), at(2)))]);
    FsRel::identity(&d2()).union(&shift)
}

/// The constant map `D → {θ1}`.
pub fn constant_theta() -> FsRel {
    equivariant(&d(), &theta(), vec![pair(at(0), Value::label("theta1"))])
}

/// The fixed twelve-entry catalog of equivariant relations.
pub fn sigma_catalog() -> Vec<(&'static str, FsRel)> {
    let empty = FsRel::empty(&d(), &d());
    vec![
        ("diag-D", FsRel::identity(&d())),
        ("fresh-D", FsRel::freshness(&d(), &d())),
        ("full-D", FsRel::full(&d(), &d())),
        ("empty-D", empty),
        ("diag-D2", FsRel::identity(&d2())),
        ("swap-D2", swap()),
        ("diag-or-swap-D2", FsRel::identity(&d2()).union(&swap())),
        ("head", head()),
        ("first-projection", first_projection()),
        ("supp-D2", FsRel::supp_rel(&d2())),
        ("constant-theta", constant_theta()),
        ("shift-reflexive-D2", shift_reflexive()),
    ]
}

/// Equivariant endo-relations on `D^(2)` used as `ρ` for binders.
pub fn d2_endo_catalog() -> Vec<(&'static str, FsRel)> {
    vec![
        ("diag-D2", FsRel::identity(&d2())),
        ("swap-D2", swap()),
        ("diag-or-swap-D2", FsRel::identity(&d2()).union(&swap())),
        ("fresh-D2", FsRel::freshness(&d2(), &d2())),
        ("full-D2", FsRel::full(&d2(), &d2())),
        ("empty-D2", FsRel::empty(&d2(), &d2())),
        ("shift-reflexive-D2", shift_reflexive()),
    ]
}

/// Smallest relation containing `r` and closed under composition with itself.
pub fn transitive_closure(r: &FsRel) -> FsRel {
    let mut cur = r.clone();
    loop {
        let next = cur.union(&FsRel::compose(&cur, &cur).expect("endo-relation"));
        if next.rel_equal(&cur) {
            return cur.minimize_support();
        }
        cur = next;
    }
}

pub fn symmetric_closure(r: &FsRel) -> FsRel {
    r.union(&r.inverse()).minimize_support()
}

pub fn reflexive_closure(r: &FsRel) -> FsRel {
    r.union(&FsRel::identity(r.dom())).minimize_support()
}

pub fn equivalence_closure(r: &FsRel) -> FsRel {
    transitive_closure(&symmetric_closure(&reflexive_closure(r)))
}

/// Seeded generator of random instances.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Product of up to `swaps` random transpositions of atoms below `span`.
    pub fn perm(&mut self, span: u32, swaps: usize) -> FinPerm {
        let mut p = FinPerm::identity();
        for _ in 0..=self.below(swaps.max(1)) {
            let a = Atom::new(self.rng.gen_range(0..span));
            let b = Atom::new(self.rng.gen_range(0..span));
            p = FinPerm::transposition(a, b).compose(&p);
        }
        p
    }

    /// Random subset of the atoms below `span`, of size at most `max`.
    pub fn atoms(&mut self, span: u32, max: usize) -> AtomSet {
        let n = self.below(max + 1);
        let mut all: Vec<u32> = (0..span).collect();
        all.shuffle(&mut self.rng);
        all.into_iter().take(n).map(Atom::new).collect()
    }

    /// Random value tree over atoms below `span`.
    pub fn value(&mut self, span: u32, depth: usize) -> Value {
        let leaf = depth == 0 || self.chance(0.35);
        if leaf {
            return match self.below(6) {
                0 => Value::Unit,
                1 => Value::label(["p", "q"][self.below(2)]),
                _ => Value::atom(self.rng.gen_range(0..span)),
            };
        }
        let n = 1 + self.below(3);
        let items = (0..n).map(|_| self.value(span, depth - 1)).collect();
        if self.chance(0.5) {
            Value::tuple(items)
        } else {
            Value::set(items)
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("non-empty choice")
    }

    pub fn base_set(&mut self) -> OrbitSet {
        let sets = base_sets();
        self.pick(&sets).1.clone()
    }

    /// Base sets small enough for oracle-heavy suites.
    pub fn small_set(&mut self) -> OrbitSet {
        let sets = [d(), d2(), theta(), d_plus_theta()];
        self.pick(&sets).clone()
    }

    /// Random union of orbits of `x × y` under permutations fixing `pinned`.
    pub fn rel_pinned(
        &mut self,
        x: &OrbitSet,
        y: &OrbitSet,
        pinned: &AtomSet,
        density: f64,
    ) -> FsRel {
        let candidates = FsRel::candidate_orbits(x, y, pinned);
        let chosen = candidates
            .into_iter()
            .filter(|_| self.chance(density))
            .collect();
        FsRel::from_orbits(x, y, pinned, chosen)
    }

    pub fn equivariant_rel(&mut self, x: &OrbitSet, y: &OrbitSet) -> FsRel {
        let density = 0.2 + 0.6 * self.rng.gen::<f64>();
        self.rel_pinned(x, y, &AtomSet::new(), density)
    }

    /// A relation pinned at up to `max_pinned` atoms among the first three.
    pub fn fs_rel(&mut self, x: &OrbitSet, y: &OrbitSet, max_pinned: usize) -> FsRel {
        let pinned = self.atoms(3, max_pinned);
        let density = 0.2 + 0.5 * self.rng.gen::<f64>();
        self.rel_pinned(x, y, &pinned, density)
    }

    /// Random finitely supported subset of `x`.
    pub fn subset(&mut self, x: &OrbitSet, max_pinned: usize) -> OrbitSet {
        let pinned = self.atoms(3, max_pinned);
        let refined = x
            .refine(&x.pinned().union(&pinned).copied().collect())
            .expect("superset");
        let chosen: Vec<Value> = refined
            .generators()
            .iter()
            .filter(|_| self.chance(0.5))
            .cloned()
            .collect();
        OrbitSet::new(refined.pinned().clone(), chosen).minimize()
    }

    /// Random equivariant subset of `r`.
    pub fn sub_rel(&mut self, r: &FsRel) -> FsRel {
        let chosen = r
            .pairs()
            .filter(|_| self.chance(0.5))
            .map(|(x, y)| Value::pair(x.clone(), y.clone()))
            .collect();
        FsRel::from_orbits(r.dom(), r.cod(), r.pinned(), chosen)
    }

    /// Random finite chain `∅ ⊆ {#0} ⊆ … ` of length one to `max`.
    pub fn chain(&mut self, max: usize) -> Vec<AtomSet> {
        let n = 1 + self.below(max);
        let start = self.below(2);
        (start..start + n)
            .map(|k| (0..k as u32).map(Atom::new).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Property;

    #[test]
    fn catalog_has_twelve_entries() {
        assert_eq!(sigma_catalog().len(), 12);
        for (name, r) in sigma_catalog() {
            assert!(r.check(Property::Equivariant).unwrap(), "{name}");
        }
    }

    #[test]
    fn closures() {
        let sharp = FsRel::freshness(&d(), &d());
        let t = transitive_closure(&sharp);
        assert!(t.rel_equal(&FsRel::full(&d(), &d())));
        let e = equivalence_closure(&swap());
        assert!(e.rel_equal(&FsRel::identity(&d2()).union(&swap())));
        let shift = shift_reflexive();
        assert!(!shift.check(Property::Transitive).unwrap());
        assert!(transitive_closure(&shift)
            .check(Property::Transitive)
            .unwrap());
    }

    #[test]
    fn generation_is_deterministic() {
        let mut a = Gen::new(7);
        let mut b = Gen::new(7);
        for _ in 0..20 {
            assert_eq!(a.value(5, 3), b.value(5, 3));
            assert_eq!(a.fs_rel(&d(), &d2(), 2), b.fs_rel(&d(), &d2(), 2));
        }
    }
}

//! Bounded brute force over a finite universe of atoms.
//!
//! Members of a set are enumerated by placing the unpinned atoms of each
//! representative injectively into the universe. Operations that need a
//! hidden witness enumerate it over the universe plus a few extra atoms, so
//! that the results restricted to the universe are exact.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;

use crate::atoms::{fresh_atoms, Atom, AtomSet, FinPerm};
use crate::orbitset::OrbitSet;
use crate::relation::{FsRel, Property};
use crate::value::Value;

pub type PairSet = BTreeSet<(Value, Value)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    atoms: AtomSet,
}

impl Universe {
    pub fn new(atoms: AtomSet) -> Universe {
        Universe { atoms }
    }

    /// `pinned` plus `extra` further atoms.
    pub fn around(pinned: &AtomSet, extra: usize) -> Universe {
        let mut atoms = pinned.clone();
        atoms.extend(fresh_atoms(pinned, extra));
        Universe { atoms }
    }

    /// The default size: pinned atoms plus `3k + 2`, where `k` bounds the
    /// unpinned support of the elements involved.
    pub fn default_for(pinned: &AtomSet, k: usize) -> Universe {
        Universe::around(pinned, 3 * k + 2)
    }

    /// Default universe for a collection of relations and sets.
    pub fn covering(rels: &[&FsRel], sets: &[&OrbitSet]) -> Universe {
        let mut pinned = AtomSet::new();
        let mut k = 0;
        for r in rels {
            for s in [r.dom(), r.cod(), r.graph()] {
                pinned.extend(s.pinned().iter().copied());
            }
            k = k
                .max(r.dom().max_free_support())
                .max(r.cod().max_free_support());
        }
        for s in sets {
            pinned.extend(s.pinned().iter().copied());
            k = k.max(s.max_free_support());
        }
        Universe::default_for(&pinned, k)
    }

    pub fn atoms(&self) -> &AtomSet {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn extended(&self, extra: usize) -> Universe {
        Universe::around(&self.atoms, extra)
    }

    pub fn contains(&self, v: &Value) -> bool {
        v.support().is_subset(&self.atoms)
    }

    /// Elements of `s` whose atoms lie in the universe.
    pub fn members(&self, s: &OrbitSet) -> BTreeSet<Value> {
        let pinned = s.pinned();
        let targets: Vec<Atom> = self.atoms.difference(pinned).copied().collect();
        let mut out = BTreeSet::new();
        for g in s.generators() {
            let supp = g.support();
            if !supp.intersection(pinned).all(|a| self.atoms.contains(a)) {
                continue;
            }
            let free: Vec<Atom> = supp.difference(pinned).copied().collect();
            place(&free, &vec![&targets[..]; free.len()], &mut |img| {
                out.insert(rename(g, &free, img));
            });
        }
        out
    }

    pub fn pairs(&self, r: &FsRel) -> PairSet {
        self.pairs_split(r, self, self).into_iter().collect()
    }

    /// Pairs of `r` with the first component inside `left` and the second
    /// inside `right`, where both universes contain `self`'s pinned atoms.
    pub fn pairs_split(
        &self,
        r: &FsRel,
        left: &Universe,
        right: &Universe,
    ) -> HashSet<(Value, Value)> {
        let pinned = r.pinned();
        let lt: Vec<Atom> = left.atoms.difference(pinned).copied().collect();
        let rt: Vec<Atom> = right.atoms.difference(pinned).copied().collect();
        let mut out = HashSet::new();
        for (x, y) in r.pairs() {
            let sx = x.support();
            let sy = y.support();
            let fixed_ok = sx.intersection(pinned).all(|a| left.atoms.contains(a))
                && sy.intersection(pinned).all(|a| right.atoms.contains(a));
            if !fixed_ok {
                continue;
            }
            let fx: Vec<Atom> = sx.difference(pinned).copied().collect();
            let mut free = fx.clone();
            let mut allowed: Vec<&[Atom]> = vec![&lt[..]; fx.len()];
            for a in sy.difference(pinned) {
                if !sx.contains(a) {
                    free.push(*a);
                    allowed.push(&rt[..]);
                }
            }
            let shared_ok = |img: &[Atom]| {
                fx.iter()
                    .zip(img)
                    .all(|(a, b)| !sy.contains(a) || right.atoms.contains(b))
            };
            place(&free, &allowed, &mut |img| {
                if shared_ok(img) {
                    out.insert((rename(x, &free, img), rename(y, &free, img)));
                }
            });
        }
        out
    }

    /// Visits the pairs of `r` inside the universe whose first component
    /// passes `first`, placing that component's atoms before the rest.
    pub fn for_each_pair_from(
        &self,
        r: &FsRel,
        first: &dyn Fn(&Value) -> bool,
        f: &mut dyn FnMut(&Value, &Value),
    ) {
        let pinned = r.pinned();
        let targets: Vec<Atom> = self.atoms.difference(pinned).copied().collect();
        for (x, y) in r.pairs() {
            let sx = x.support();
            let sy = y.support();
            if !sx
                .union(&sy)
                .filter(|a| pinned.contains(a))
                .all(|a| self.atoms.contains(a))
            {
                continue;
            }
            let fx: Vec<Atom> = sx.difference(pinned).copied().collect();
            let fy: Vec<Atom> = sy
                .difference(pinned)
                .filter(|a| !sx.contains(a))
                .copied()
                .collect();
            let mut seen_y = HashSet::new();
            place(&fx, &vec![&targets[..]; fx.len()], &mut |img| {
                let xv = rename(x, &fx, img);
                if !first(&xv) {
                    return;
                }
                let rest: Vec<Atom> = targets
                    .iter()
                    .filter(|t| !img.contains(t))
                    .copied()
                    .collect();
                seen_y.clear();
                place(&fy, &vec![&rest[..]; fy.len()], &mut |img2| {
                    let yv = y.map_atoms(&|a| match fx.iter().position(|b| *b == a) {
                        Some(i) => img[i],
                        None => match fy.iter().position(|b| *b == a) {
                            Some(j) => img2[j],
                            None => a,
                        },
                    });
                    if seen_y.insert(yv.clone()) {
                        f(&xv, &yv);
                    }
                });
            });
        }
    }
}

#[derive(Default)]
struct Interner {
    values: Vec<Value>,
    index: HashMap<Value, usize>,
}

impl Interner {
    fn id(&mut self, v: Value) -> usize {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        self.values.push(v.clone());
        self.index.insert(v, self.values.len() - 1);
        self.values.len() - 1
    }

    fn get(&self, v: &Value) -> Option<usize> {
        self.index.get(v).copied()
    }
}

fn rename(v: &Value, from: &[Atom], to: &[Atom]) -> Value {
    v.map_atoms(&|a| match from.iter().position(|b| *b == a) {
        Some(i) => to[i],
        None => a,
    })
}

/// Every injective placement of `free[i]` into `allowed[i]`.
fn place(free: &[Atom], allowed: &[&[Atom]], f: &mut dyn FnMut(&[Atom])) {
    fn go(i: usize, allowed: &[&[Atom]], img: &mut Vec<Atom>, f: &mut dyn FnMut(&[Atom])) {
        if i == allowed.len() {
            f(img);
            return;
        }
        for &t in allowed[i] {
            if !img.contains(&t) {
                img.push(t);
                go(i + 1, allowed, img, f);
                img.pop();
            }
        }
    }
    debug_assert_eq!(free.len(), allowed.len());
    go(0, allowed, &mut Vec::with_capacity(free.len()), f);
}

fn max_support<'a>(vals: impl Iterator<Item = &'a Value>) -> usize {
    vals.map(|v| v.support().len()).max().unwrap_or(0)
}

fn codomain_width(r: &FsRel) -> usize {
    max_support(r.pairs().map(|(_, y)| y))
}

fn domain_width(r: &FsRel) -> usize {
    max_support(r.pairs().map(|(x, _)| x))
}

/// Brute-force counterparts of the symbolic operations. Every result is
/// restricted to values inside the universe.
pub mod brute {
    use super::*;

    /// `S ∘ R`.
    pub fn compose(s: &FsRel, r: &FsRel, u: &Universe) -> PairSet {
        let wide = u.extended(codomain_width(r));
        let mut ys = Interner::default();
        let mut zs = Interner::default();
        let mut after: HashMap<usize, Vec<usize>> = HashMap::new();
        for (y, z) in wide.pairs_split(s, &wide, u) {
            let (yi, zi) = (ys.id(y), zs.id(z));
            after.entry(yi).or_default().push(zi);
        }
        let mut xs = Interner::default();
        let mut hits: HashSet<(usize, usize)> = HashSet::new();
        for (x, y) in wide.pairs_split(r, u, &wide) {
            let Some(targets) = ys.get(&y).and_then(|yi| after.get(&yi)) else {
                continue;
            };
            let xi = xs.id(x);
            hits.extend(targets.iter().map(|&z| (xi, z)));
        }
        hits.into_iter()
            .map(|(x, z)| (xs.values[x].clone(), zs.values[z].clone()))
            .collect()
    }

    pub fn inverse(r: &FsRel, u: &Universe) -> PairSet {
        u.pairs(r).into_iter().map(|(x, y)| (y, x)).collect()
    }

    pub fn direct_image(r: &FsRel, s: &OrbitSet, u: &Universe) -> BTreeSet<Value> {
        let wide = u.extended(domain_width(r));
        let sources = wide.members(s);
        wide.pairs(r)
            .into_iter()
            .filter(|(x, y)| u.contains(y) && sources.contains(x))
            .map(|(_, y)| y)
            .collect()
    }

    pub fn inverse_image(r: &FsRel, t: &OrbitSet, u: &Universe) -> BTreeSet<Value> {
        direct_image(&r.inverse(), t, u)
    }

    /// `{(x, s) : s ∈ S, ∃ y, y'. (x, y) ∈ R, (y, y') ∈ ρ, (s, y') ∈ R}`.
    pub fn sigma(r: &FsRel, s: &OrbitSet, rho: &FsRel, u: &Universe) -> PairSet {
        let wide = u.extended(2 * codomain_width(r));
        let in_s = u.members(s);
        let mut xs = Interner::default();
        let mut ys = Interner::default();
        let mut pre: HashMap<usize, Vec<usize>> = HashMap::new();
        for (x, y) in wide.pairs_split(r, u, &wide) {
            let (xi, yi) = (xs.id(x), ys.id(y));
            pre.entry(yi).or_default().push(xi);
        }
        // (x, y') reachable through R then ρ
        let mut mid: HashMap<usize, HashSet<usize>> = HashMap::new();
        wide.for_each_pair_from(rho, &|y1| ys.get(y1).is_some(), &mut |y1, y2| {
            let Some(j) = ys.get(y2) else {
                return;
            };
            let i = ys.get(y1).expect("filtered");
            for &x in &pre[&i] {
                mid.entry(j).or_default().insert(x);
            }
        });
        let mut hits: HashSet<(usize, usize)> = HashSet::new();
        for (j, sources) in &mid {
            for &t in pre[j].iter().filter(|&&t| in_s.contains(&xs.values[t])) {
                for &x in sources {
                    hits.insert((x, t));
                }
            }
        }
        hits.into_iter()
            .map(|(x, t)| (xs.values[x].clone(), xs.values[t].clone()))
            .collect()
    }

    /// `Dom R` inside the universe.
    pub fn domain(r: &FsRel, u: &Universe) -> BTreeSet<Value> {
        let wide = u.extended(codomain_width(r));
        wide.pairs_split(r, u, &wide)
            .into_iter()
            .map(|(x, _)| x)
            .collect()
    }

    /// `Im R` inside the universe.
    pub fn image(r: &FsRel, u: &Universe) -> BTreeSet<Value> {
        let wide = u.extended(domain_width(r));
        wide.pairs_split(r, &wide, u)
            .into_iter()
            .map(|(_, y)| y)
            .collect()
    }

    /// Number of classes of `values` under swaps of universe atoms outside
    /// `fixed`.
    pub fn orbit_count(values: &BTreeSet<Value>, fixed: &AtomSet, u: &Universe) -> usize {
        let movable: Vec<Atom> = u.atoms().difference(fixed).copied().collect();
        let mut seen: HashSet<Value> = HashSet::new();
        let mut count = 0;
        for v in values {
            if seen.contains(v) {
                continue;
            }
            count += 1;
            let mut stack = vec![v.clone()];
            seen.insert(v.clone());
            while let Some(w) = stack.pop() {
                for (&a, &b) in movable.iter().tuple_combinations() {
                    let next = w.act(&FinPerm::transposition(a, b));
                    if seen.insert(next.clone()) {
                        stack.push(next);
                    }
                }
            }
        }
        count
    }

    /// Pairs of `X × X` in the universe lying on the diagonal.
    pub fn identity(x: &OrbitSet, u: &Universe) -> PairSet {
        u.members(x).into_iter().map(|v| (v.clone(), v)).collect()
    }

    /// Decides a property on the bounded slice of `r`.
    pub fn check(r: &FsRel, prop: Property, u: &Universe) -> bool {
        match prop {
            Property::Total => {
                let wide = u.extended(codomain_width(r));
                let hit: HashSet<Value> = wide.pairs(r).into_iter().map(|(x, _)| x).collect();
                u.members(r.dom()).iter().all(|x| hit.contains(x))
            }
            Property::Surjective => {
                let wide = u.extended(domain_width(r));
                let hit: HashSet<Value> = wide.pairs(r).into_iter().map(|(_, y)| y).collect();
                u.members(r.cod()).iter().all(|y| hit.contains(y))
            }
            Property::TotalInjective => {
                check(r, Property::Total, u) && check(r, Property::Injective, u)
            }
            Property::PartialSurjectiveMap => {
                check(r, Property::Surjective, u) && check(r, Property::WellDefined, u)
            }
            Property::Reflexive => identity(r.dom(), u).is_subset(&u.pairs(r)),
            Property::Equivariant => invariant_under_swaps(&u.pairs(r), u),
            other => pair_check(&u.pairs(r), other),
        }
    }

    /// A concrete reason, inside the universe, why `r` lacks `prop`.
    pub fn counterexample(r: &FsRel, prop: Property, u: &Universe) -> Option<String> {
        let pairs = u.pairs(r);
        let pair = |x: &Value, y: &Value| format!("({x}, {y})");
        match prop {
            Property::Total => {
                let wide = u.extended(codomain_width(r));
                let hit: HashSet<Value> = wide.pairs(r).into_iter().map(|(x, _)| x).collect();
                u.members(r.dom())
                    .into_iter()
                    .find(|x| !hit.contains(x))
                    .map(|x| format!("{x} has no image"))
            }
            Property::Surjective => {
                let wide = u.extended(domain_width(r));
                let hit: HashSet<Value> = wide.pairs(r).into_iter().map(|(_, y)| y).collect();
                u.members(r.cod())
                    .into_iter()
                    .find(|y| !hit.contains(y))
                    .map(|y| format!("{y} has no preimage"))
            }
            Property::TotalInjective => counterexample(r, Property::Total, u)
                .or_else(|| counterexample(r, Property::Injective, u)),
            Property::PartialSurjectiveMap => counterexample(r, Property::Surjective, u)
                .or_else(|| counterexample(r, Property::WellDefined, u)),
            Property::Injective | Property::WellDefined => {
                let mut seen: HashMap<&Value, &Value> = HashMap::new();
                pairs.iter().find_map(|(x, y)| {
                    let (key, other) = if prop == Property::Injective {
                        (y, x)
                    } else {
                        (x, y)
                    };
                    let prev = *seen.entry(key).or_insert(other);
                    (prev != other).then(|| {
                        if prop == Property::Injective {
                            format!("{} and {}", pair(prev, y), pair(x, y))
                        } else {
                            format!("{} and {}", pair(x, prev), pair(x, y))
                        }
                    })
                })
            }
            Property::Reflexive => u
                .members(r.dom())
                .into_iter()
                .find(|x| !pairs.contains(&(x.clone(), x.clone())))
                .map(|x| format!("{} is missing", pair(&x, &x))),
            Property::Symmetric => pairs
                .iter()
                .find(|(x, y)| !pairs.contains(&(y.clone(), x.clone())))
                .map(|(x, y)| format!("{} without {}", pair(x, y), pair(y, x))),
            Property::Transitive => pairs.iter().find_map(|(x, y)| {
                pairs
                    .range((y.clone(), Value::Atom(Atom::new(0)))..)
                    .take_while(|(y2, _)| y2 == y)
                    .find(|(_, z)| !pairs.contains(&(x.clone(), z.clone())))
                    .map(|(_, z)| {
                        format!("{} and {} without {}", pair(x, y), pair(y, z), pair(x, z))
                    })
            }),
            Property::Coreflexive => pairs
                .iter()
                .find(|(x, y)| x != y)
                .map(|(x, y)| format!("{} is off the diagonal", pair(x, y))),
            Property::Equivariant => {
                let atoms: Vec<Atom> = u.atoms().iter().copied().collect();
                atoms.iter().tuple_combinations().find_map(|(&a, &b)| {
                    let t = FinPerm::transposition(a, b);
                    pairs
                        .iter()
                        .find(|(x, y)| !pairs.contains(&(x.act(&t), y.act(&t))))
                        .map(|(x, y)| format!("{} is moved out by {t}", pair(x, y)))
                })
            }
        }
    }

    /// Properties decidable from the pairs alone.
    pub fn pair_check(pairs: &PairSet, prop: Property) -> bool {
        match prop {
            Property::Injective => {
                let mut seen: HashMap<&Value, &Value> = HashMap::new();
                pairs.iter().all(|(x, y)| *seen.entry(y).or_insert(x) == x)
            }
            Property::WellDefined => {
                let mut seen: HashMap<&Value, &Value> = HashMap::new();
                pairs.iter().all(|(x, y)| *seen.entry(x).or_insert(y) == y)
            }
            Property::Symmetric => pairs
                .iter()
                .all(|(x, y)| pairs.contains(&(y.clone(), x.clone()))),
            Property::Transitive => {
                let mut after: HashMap<&Value, Vec<&Value>> = HashMap::new();
                for (x, y) in pairs {
                    after.entry(x).or_default().push(y);
                }
                pairs.iter().all(|(x, y)| {
                    after.get(y).is_none_or(|zs| {
                        zs.iter()
                            .all(|z| pairs.contains(&(x.clone(), (*z).clone())))
                    })
                })
            }
            Property::Coreflexive => pairs.iter().all(|(x, y)| x == y),
            other => panic!("{other} is not decidable from a pair set alone"),
        }
    }

    /// Is the pair set fixed by every permutation of universe atoms? The
    /// transpositions `(u₀ uᵢ)` generate them all.
    pub fn invariant_under_swaps(pairs: &PairSet, u: &Universe) -> bool {
        let mut atoms = u.atoms().iter();
        let Some(&first) = atoms.next() else {
            return true;
        };
        atoms.all(|&b| {
            let a = first;
            let t = FinPerm::transposition(a, b);
            pairs
                .iter()
                .all(|(x, y)| pairs.contains(&(x.act(&t), y.act(&t))))
        })
    }

    /// The least support of a bounded pair set.
    pub fn least_support(pairs: &PairSet, u: &Universe) -> AtomSet {
        let values = pairs
            .iter()
            .map(|(x, y)| Value::pair(x.clone(), y.clone()))
            .collect();
        least_support_of(&values, u)
    }

    /// An atom in the support is moved by swaps with every atom outside the
    /// support, one outside it only by swaps with support atoms, so a
    /// majority vote separates them once the universe is more than twice as
    /// large as the support.
    pub fn least_support_of(values: &BTreeSet<Value>, u: &Universe) -> AtomSet {
        u.atoms()
            .iter()
            .copied()
            .filter(|&a| {
                let moving = u
                    .atoms()
                    .iter()
                    .filter(|&&b| {
                        let t = FinPerm::transposition(a, b);
                        values.iter().any(|v| !values.contains(&v.act(&t)))
                    })
                    .count();
                2 * moving > u.len()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::first_atoms;

    #[test]
    fn members_of_atoms_and_pairs() {
        let u = Universe::new(first_atoms(4));
        assert_eq!(u.members(&OrbitSet::atoms()).len(), 4);
        assert_eq!(u.members(&OrbitSet::distinct_pairs()).len(), 12);
        assert_eq!(u.members(&OrbitSet::atom_pairs()).len(), 16);
        assert_eq!(u.members(&OrbitSet::bounded_powerset(2)).len(), 1 + 4 + 6);
    }

    #[test]
    fn pinned_atoms_outside_the_universe_hide_their_orbits() {
        let s = OrbitSet::singleton(&Value::atom(9));
        assert!(Universe::new(first_atoms(4)).members(&s).is_empty());
    }

    #[test]
    fn default_size() {
        let u = Universe::default_for(&first_atoms(1), 2);
        assert_eq!(u.len(), 9);
    }

    #[test]
    fn brute_least_support_of_a_point() {
        let r = FsRel::new(
            OrbitSet::atoms(),
            OrbitSet::atoms(),
            first_atoms(1),
            [(Value::atom(0), Value::atom(0))],
        )
        .unwrap();
        let u = Universe::default_for(&first_atoms(1), 1);
        assert_eq!(brute::least_support(&u.pairs(&r), &u), first_atoms(1));
    }

    #[test]
    fn counterexamples_match_checks() {
        let d = OrbitSet::atoms();
        let sharp = FsRel::freshness(&d, &d);
        let u = Universe::new(first_atoms(4));
        for prop in Property::ALL {
            let holds = brute::check(&sharp, prop, &u);
            assert_eq!(
                brute::counterexample(&sharp, prop, &u).is_none(),
                holds,
                "{prop}"
            );
        }
        let w = brute::counterexample(&sharp, Property::Transitive, &u).unwrap();
        assert!(w.contains("without"), "{w}");
    }
}

//! Finitely supported relations between orbit-finite sets.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::atoms::{fresh_atoms, Atom, AtomSet, FinPerm};
use crate::error::{NomError, Result};
use crate::orbitset::{assignments, fmt_atoms, OrbitSet};
use crate::value::Value;

/// A relation `R ⊆ X × Y` supported by its pinned atom set. The graph is an
/// orbit set of pairs; the relation is equivariant when the least support is
/// empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FsRel {
    dom: OrbitSet,
    cod: OrbitSet,
    graph: OrbitSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Injective,
    WellDefined,
    Total,
    Surjective,
    TotalInjective,
    PartialSurjectiveMap,
    Reflexive,
    Symmetric,
    Transitive,
    Coreflexive,
    Equivariant,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::Injective,
        Property::WellDefined,
        Property::Total,
        Property::Surjective,
        Property::TotalInjective,
        Property::PartialSurjectiveMap,
        Property::Reflexive,
        Property::Symmetric,
        Property::Transitive,
        Property::Coreflexive,
        Property::Equivariant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Injective => "injective",
            Property::WellDefined => "welldefined",
            Property::Total => "total",
            Property::Surjective => "surjective",
            Property::TotalInjective => "total_injective",
            Property::PartialSurjectiveMap => "partial_surjective_map",
            Property::Reflexive => "reflexive",
            Property::Symmetric => "symmetric",
            Property::Transitive => "transitive",
            Property::Coreflexive => "coreflexive",
            Property::Equivariant => "equivariant",
        }
    }

    /// Properties that only make sense when domain and codomain coincide.
    pub fn is_endo_only(self) -> bool {
        matches!(
            self,
            Property::Reflexive
                | Property::Symmetric
                | Property::Transitive
                | Property::Coreflexive
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

impl FsRel {
    /// Relation generated by `pairs` under permutations fixing `pinned`.
    pub fn new<I>(dom: OrbitSet, cod: OrbitSet, pinned: AtomSet, pairs: I) -> Result<FsRel>
    where
        I: IntoIterator<Item = (Value, Value)>,
    {
        let mut gens = Vec::new();
        for (x, y) in pairs {
            if !dom.member(&x) {
                return Err(NomError::NotAMember {
                    value: x.to_string(),
                    side: "the domain",
                });
            }
            if !cod.member(&y) {
                return Err(NomError::NotAMember {
                    value: y.to_string(),
                    side: "the codomain",
                });
            }
            gens.push(Value::pair(x, y));
        }
        Ok(FsRel {
            dom,
            cod,
            graph: OrbitSet::new(pinned, gens),
        })
    }

    /// Wraps a graph of pairs. The caller guarantees membership.
    pub(crate) fn from_graph(dom: OrbitSet, cod: OrbitSet, graph: OrbitSet) -> FsRel {
        FsRel { dom, cod, graph }
    }

    pub fn empty(dom: &OrbitSet, cod: &OrbitSet) -> FsRel {
        FsRel::from_graph(dom.clone(), cod.clone(), OrbitSet::empty())
    }

    /// `X × Y` as a relation.
    pub fn full(dom: &OrbitSet, cod: &OrbitSet) -> FsRel {
        FsRel::from_graph(dom.clone(), cod.clone(), dom.product(cod))
    }

    pub fn identity(x: &OrbitSet) -> FsRel {
        let gens = x
            .generators()
            .iter()
            .map(|g| Value::pair(g.clone(), g.clone()))
            .collect();
        FsRel::from_graph(
            x.clone(),
            x.clone(),
            OrbitSet::from_canonical(x.pinned().clone(), gens),
        )
    }

    pub fn dom(&self) -> &OrbitSet {
        &self.dom
    }

    pub fn cod(&self) -> &OrbitSet {
        &self.cod
    }

    pub fn graph(&self) -> &OrbitSet {
        &self.graph
    }

    pub fn pinned(&self) -> &AtomSet {
        self.graph.pinned()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// Generator pairs.
    pub fn pairs(&self) -> impl Iterator<Item = (&Value, &Value)> {
        self.graph
            .generators()
            .iter()
            .map(|g| g.as_pair().expect("graph holds pairs"))
    }

    pub fn contains(&self, x: &Value, y: &Value) -> bool {
        self.graph.member(&Value::pair(x.clone(), y.clone()))
    }

    /// Same pairs, different declared domain and codomain.
    pub(crate) fn retyped(&self, dom: &OrbitSet, cod: &OrbitSet) -> FsRel {
        FsRel::from_graph(dom.clone(), cod.clone(), self.graph.clone())
    }

    fn with_graph(&self, graph: OrbitSet) -> FsRel {
        FsRel::from_graph(self.dom.clone(), self.cod.clone(), graph)
    }

    /// `π · R = {(πx, πy) : (x, y) ∈ R}`.
    pub fn act_dot(&self, p: &FinPerm) -> FsRel {
        FsRel::from_graph(self.dom.act(p), self.cod.act(p), self.graph.act(p))
    }

    /// `π * R = {(x, πy) : (π⁻¹x, y) ∈ R}`, computed as the composite of `R`
    /// with the graphs of `π⁻¹` on the domain side and `π` on the codomain side.
    pub fn act_star(&self, p: &FinPerm) -> FsRel {
        let pre = FsRel::permutation_graph(&p.inverse(), &self.dom.act(p));
        let post = FsRel::permutation_graph(p, &self.cod);
        let inner = FsRel::compose(self, &pre).expect("graph codomain is the relation's domain");
        FsRel::compose(&post, &inner).expect("graph domain is the relation's codomain")
    }

    /// `{(x, πx) : x ∈ X}` as a relation `X → π·X`.
    pub fn permutation_graph(p: &FinPerm, x: &OrbitSet) -> FsRel {
        let refined = x.refined(&p.support());
        let pinned = refined.pinned().clone();
        let gens = refined
            .generators()
            .iter()
            .map(|g| Value::pair(g.clone(), g.act(p)).canonical_value_under(&pinned))
            .collect();
        FsRel::from_graph(x.clone(), x.act(p), OrbitSet::from_canonical(pinned, gens))
    }

    /// `S ∘ R`: `(x, z)` whenever `(x, y) ∈ R` and `(y, z) ∈ S` for some `y`.
    ///
    /// For a generator `(x, y)` of `R` and `(y', z)` of `S` in the same orbit
    /// on the middle component, every bijection β carrying `y'` to `y` is
    /// extended over the remaining atoms of `z`, which land either on atoms of
    /// `x` not already used by `y` or on designated fresh atoms.
    pub fn compose(s: &FsRel, r: &FsRel) -> Result<FsRel> {
        if !r.cod.same_set(&s.dom) {
            return Err(NomError::CodomainMismatch);
        }
        let b: AtomSet = r.pinned().union(s.pinned()).copied().collect();
        let rg = r.graph.refined(&b);
        let sg = s.graph.refined(&b);

        let mut by_middle: HashMap<Value, Vec<(&Value, &Value)>> = HashMap::new();
        for g in sg.generators() {
            let (y2, z) = g.as_pair().expect("graph holds pairs");
            by_middle
                .entry(y2.canonical_value_under(&b))
                .or_default()
                .push((y2, z));
        }

        let mut gens = Vec::new();
        for g in rg.generators() {
            let (x, y) = g.as_pair().expect("graph holds pairs");
            let Some(partners) = by_middle.get(&y.canonical_value_under(&b)) else {
                continue;
            };
            let sx = x.support();
            let sy = y.support();
            let specific: Vec<Atom> = sx
                .iter()
                .filter(|a| !sy.contains(a) && !b.contains(a))
                .copied()
                .collect();
            let mut avoid: AtomSet = b.union(&sx).copied().collect();
            avoid.extend(sy.iter().copied());
            for &(y2, z) in partners {
                let sy2 = y2.support();
                let rest: Vec<Atom> = z
                    .support()
                    .into_iter()
                    .filter(|a| !sy2.contains(a) && !b.contains(a))
                    .collect();
                let fresh = fresh_atoms(&avoid, rest.len());
                let extensions = assignments(&rest, &specific, &fresh);
                for beta in y2.matchings(y, &b) {
                    for ext in &extensions {
                        let mut map = beta.clone();
                        map.extend(ext.iter().map(|(&k, &v)| (k, v)));
                        gens.push(Value::pair(x.clone(), z.rename(&map)).canonical_value_under(&b));
                    }
                }
            }
        }
        let graph = OrbitSet::from_canonical(b, gens).minimize();
        Ok(FsRel::from_graph(r.dom.clone(), s.cod.clone(), graph))
    }

    /// `R⁻¹`.
    pub fn inverse(&self) -> FsRel {
        let pinned = self.pinned().clone();
        let gens = self
            .pairs()
            .map(|(x, y)| Value::pair(y.clone(), x.clone()).canonical_value_under(&pinned))
            .collect();
        FsRel::from_graph(
            self.cod.clone(),
            self.dom.clone(),
            OrbitSet::from_canonical(pinned, gens),
        )
    }

    /// `R→(S)`, obtained by composing with `S` seen as a relation out of the
    /// one-point set.
    pub fn direct_image(&self, s: &OrbitSet) -> OrbitSet {
        let lifted = OrbitSet::unit().product(s);
        let from_point = FsRel::from_graph(OrbitSet::unit(), self.dom.clone(), lifted);
        let composite =
            FsRel::compose(self, &from_point).expect("codomain of the lifted set is the domain");
        composite.image_set()
    }

    /// `R←(T)`.
    pub fn inverse_image(&self, t: &OrbitSet) -> OrbitSet {
        self.inverse().direct_image(t)
    }

    /// `Dom R`, projected from the generators.
    pub fn domain_set(&self) -> OrbitSet {
        let pinned = self.pinned().clone();
        let gens = self
            .pairs()
            .map(|(x, _)| x.canonical_value_under(&pinned))
            .collect();
        OrbitSet::from_canonical(pinned, gens).minimize()
    }

    /// `Im R`.
    pub fn image_set(&self) -> OrbitSet {
        let pinned = self.pinned().clone();
        let gens = self
            .pairs()
            .map(|(_, y)| y.canonical_value_under(&pinned))
            .collect();
        OrbitSet::from_canonical(pinned, gens).minimize()
    }

    /// Same relation, pinned at its least support.
    pub fn minimize_support(&self) -> FsRel {
        self.with_graph(self.graph.minimize())
    }

    pub fn least_support(&self) -> AtomSet {
        self.graph.least_support()
    }

    pub fn is_subset(&self, other: &FsRel) -> bool {
        self.graph.is_subset(&other.graph)
    }

    /// Extensional equality of the graphs.
    pub fn rel_equal(&self, other: &FsRel) -> bool {
        self.graph.same_set(&other.graph)
    }

    pub fn union(&self, other: &FsRel) -> FsRel {
        self.with_graph(self.graph.union(&other.graph))
    }

    pub fn intersect(&self, other: &FsRel) -> FsRel {
        self.with_graph(self.graph.intersect(&other.graph))
    }

    pub fn difference(&self, other: &FsRel) -> FsRel {
        self.with_graph(self.graph.difference(&other.graph))
    }

    /// `R ∩ (S × Y)`, typed as a relation `S → Y`.
    pub fn restrict_domain(&self, s: &OrbitSet) -> FsRel {
        let graph = self.graph.refined(s.pinned());
        let kept = graph.filter(|g| s.member(g.as_pair().expect("graph holds pairs").0));
        FsRel::from_graph(s.clone(), self.cod.clone(), kept.minimize())
    }

    /// `R ∩ (X × T)`, typed as a relation `X → T`.
    pub fn restrict_codomain(&self, t: &OrbitSet) -> FsRel {
        let graph = self.graph.refined(t.pinned());
        let kept = graph.filter(|g| t.member(g.as_pair().expect("graph holds pairs").1));
        FsRel::from_graph(self.dom.clone(), t.clone(), kept.minimize())
    }

    fn all_diagonal(&self) -> bool {
        self.pairs().all(|(x, y)| x == y)
    }

    pub fn check(&self, prop: Property) -> Result<bool> {
        if prop.is_endo_only() && !self.dom.same_set(&self.cod) {
            return Err(NomError::DomainMismatch);
        }
        Ok(match prop {
            Property::Injective => FsRel::compose(&self.inverse(), self)?.all_diagonal(),
            Property::WellDefined => FsRel::compose(self, &self.inverse())?.all_diagonal(),
            Property::Total => self.domain_set().same_set(&self.dom),
            Property::Surjective => self.image_set().same_set(&self.cod),
            Property::TotalInjective => {
                self.check(Property::Total)? && self.check(Property::Injective)?
            }
            Property::PartialSurjectiveMap => {
                self.check(Property::Surjective)? && self.check(Property::WellDefined)?
            }
            Property::Reflexive => FsRel::identity(&self.dom).is_subset(self),
            Property::Symmetric => self.inverse().rel_equal(self),
            Property::Transitive => FsRel::compose(self, self)?.is_subset(self),
            Property::Coreflexive => self.all_diagonal(),
            Property::Equivariant => self.least_support().is_empty(),
        })
    }

    /// `♯_{X,Y}`: pairs with disjoint supports.
    pub fn freshness(x: &OrbitSet, y: &OrbitSet) -> FsRel {
        FsRel::by_predicate(x, y, |a, b| a.fresh_for(b))
    }

    /// `{(x, d) : d ∈ supp x}` as a relation into the atoms.
    pub fn supp_rel(x: &OrbitSet) -> FsRel {
        FsRel::by_predicate(x, &OrbitSet::atoms(), |v, d| match d {
            Value::Atom(a) => v.support().contains(a),
            _ => false,
        })
    }

    /// `{(x, x') : supp x ⊆ supp x'}`.
    pub fn leq(x: &OrbitSet) -> FsRel {
        FsRel::by_predicate(x, x, |a, b| a.support().is_subset(&b.support()))
    }

    /// `{(x, A) : supp x ⊆ A}` into atom sets of size at most `bound`.
    pub fn inc(x: &OrbitSet, bound: Option<usize>) -> Result<FsRel> {
        let m = bound.ok_or(NomError::BoundRequired)?;
        Ok(FsRel::by_predicate(
            x,
            &OrbitSet::bounded_powerset(m),
            |v, a| v.support().is_subset(&a.support()),
        ))
    }

    /// Orbits of `X × Y` whose representatives satisfy an equivariant predicate.
    pub fn by_predicate(
        x: &OrbitSet,
        y: &OrbitSet,
        keep: impl Fn(&Value, &Value) -> bool,
    ) -> FsRel {
        let graph = x
            .product(y)
            .filter(|g| {
                let (a, b) = g.as_pair().expect("product holds pairs");
                keep(a, b)
            })
            .minimize();
        FsRel::from_graph(x.clone(), y.clone(), graph)
    }

    /// Relations `X → Y` supported by `pinned`: the orbits of pairs one may
    /// choose from.
    pub fn candidate_orbits(x: &OrbitSet, y: &OrbitSet, pinned: &AtomSet) -> Vec<Value> {
        x.product(y).refined(pinned).generators().to_vec()
    }

    /// Relation made of a chosen subset of pair orbits under `pinned`.
    pub fn from_orbits(x: &OrbitSet, y: &OrbitSet, pinned: &AtomSet, pairs: Vec<Value>) -> FsRel {
        let full = x.product(y).refined(pinned);
        let pinned = full.pinned().clone();
        let gens = pairs
            .into_iter()
            .map(|p| p.canonical_value_under(&pinned))
            .filter(|p| full.member(p))
            .collect();
        FsRel::from_graph(x.clone(), y.clone(), OrbitSet::from_canonical(pinned, gens))
    }
}

impl fmt::Display for FsRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("gen [")?;
        for (i, (x, y)) in self.pairs().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "] pinned {}", fmt_atoms(self.pinned()))
    }
}

impl fmt::Debug for FsRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} : {:?} -> {:?}", self.dom, self.cod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::first_atoms;
    use crate::oracle::{brute, Universe};

    fn at(i: u32) -> Value {
        Value::atom(i)
    }

    fn pin(ix: &[u32]) -> AtomSet {
        ix.iter().map(|&i| Atom::new(i)).collect()
    }

    fn d() -> OrbitSet {
        OrbitSet::atoms()
    }

    fn sharp() -> FsRel {
        FsRel::freshness(&d(), &d())
    }

    fn diag(x: &OrbitSet) -> FsRel {
        FsRel::identity(x)
    }

    /// `{(d, (d, d'))} : D → D^(2)`
    fn head_rel() -> FsRel {
        FsRel::new(
            d(),
            OrbitSet::distinct_pairs(),
            AtomSet::new(),
            [(at(0), Value::pair(at(0), at(1)))],
        )
        .unwrap()
    }

    #[test]
    fn act_dot_fixes_equivariant_relations() {
        let p = FinPerm::transposition(Atom::new(0), Atom::new(5));
        assert!(sharp().act_dot(&p).rel_equal(&sharp()));
        assert_eq!(sharp().act_dot(&FinPerm::identity()), sharp());
    }

    #[test]
    fn act_dot_moves_pinned_support() {
        let r = FsRel::new(d(), d(), pin(&[0]), [(at(0), at(0))]).unwrap();
        let moved = r.act_dot(&FinPerm::transposition(Atom::new(0), Atom::new(1)));
        assert_eq!(moved.pinned(), &pin(&[1]));
        assert!(moved.contains(&at(1), &at(1)));
        assert!(!moved.contains(&at(0), &at(0)));
        let u = Universe::new(first_atoms(4));
        assert_eq!(u.pairs(&moved).len(), 1);
    }

    #[test]
    fn act_star_matches_act_dot() {
        let r = FsRel::new(d(), d(), pin(&[0]), [(at(0), at(1))]).unwrap();
        let p = FinPerm::transposition(Atom::new(0), Atom::new(2));
        assert!(r.act_star(&p).rel_equal(&r.act_dot(&p)));
        assert!(r.act_star(&FinPerm::identity()).rel_equal(&r));
        let e = FsRel::new(
            d(),
            OrbitSet::distinct_pairs(),
            AtomSet::new(),
            [(at(0), Value::pair(at(0), at(1)))],
        )
        .unwrap();
        let ab = FinPerm::transposition(Atom::new(0), Atom::new(1));
        assert!(e.act_star(&ab).rel_equal(&e));
    }

    #[test]
    fn freshness_composed_with_itself_is_everything() {
        let all = FsRel::full(&d(), &d());
        assert!(FsRel::compose(&sharp(), &sharp()).unwrap().rel_equal(&all));
        assert!(!sharp().rel_equal(&all));
    }

    #[test]
    fn identity_is_neutral() {
        let r = head_rel();
        assert!(FsRel::compose(&r, &diag(&d())).unwrap().rel_equal(&r));
        assert!(FsRel::compose(&diag(&d()), &diag(&d()))
            .unwrap()
            .rel_equal(&diag(&d())));
        assert_eq!(diag(&OrbitSet::distinct_pairs()).pairs().count(), 1);
    }

    #[test]
    fn head_then_projection_is_diagonal() {
        let r = head_rel();
        let s = r.inverse();
        let sr = FsRel::compose(&s, &r).unwrap();
        assert!(sr.rel_equal(&diag(&d())));
        let rs = FsRel::compose(&r, &s).unwrap();
        let id2 = diag(&OrbitSet::distinct_pairs());
        assert!(id2.is_subset(&rs) && !rs.is_subset(&id2));
        let u = Universe::new(first_atoms(5));
        assert_eq!(u.pairs(&sr), brute::compose(&s, &r, &u));
    }

    #[test]
    fn compose_rejects_mismatched_types() {
        assert_eq!(
            FsRel::compose(&head_rel(), &head_rel()).unwrap_err(),
            NomError::CodomainMismatch
        );
    }

    #[test]
    fn inverse_examples() {
        assert!(diag(&d()).inverse().rel_equal(&diag(&d())));
        assert!(sharp().inverse().rel_equal(&sharp()));
        assert_eq!(head_rel().inverse().inverse(), head_rel());
    }

    #[test]
    fn images() {
        let s = OrbitSet::singleton(&at(0));
        assert!(diag(&d()).direct_image(&s).same_set(&s));
        assert!(sharp().direct_image(&d()).same_set(&d()));
        let img = head_rel().direct_image(&s);
        assert_eq!(img.pinned(), &pin(&[0]));
        assert_eq!(img.generators(), &[Value::pair(at(0), at(1))]);
        let u = Universe::new(first_atoms(4));
        assert_eq!(u.members(&img), brute::direct_image(&head_rel(), &s, &u));
        assert!(diag(&d()).inverse_image(&s).same_set(&s));
        assert!(head_rel()
            .inverse_image(&OrbitSet::distinct_pairs())
            .same_set(&head_rel().domain_set()));
    }

    #[test]
    fn inverse_image_of_point_under_injective_relation() {
        let y = Value::pair(at(0), at(1));
        let pre = head_rel().inverse_image(&OrbitSet::singleton(&y));
        assert_eq!(pre.generators(), &[at(0)]);
        assert_eq!(pre.least_support(), pin(&[0]));
        assert!(pre.least_support().is_subset(&y.support()));
    }

    #[test]
    fn minimize_examples() {
        let declared = FsRel::from_graph(d(), d(), sharp().graph().refine(&pin(&[0])).unwrap());
        assert!(declared.minimize_support().pinned().is_empty());
        let point = FsRel::new(d(), d(), pin(&[0]), [(at(0), at(0))]).unwrap();
        assert_eq!(point.minimize_support().pinned(), &pin(&[0]));
        let wide = FsRel::from_graph(d(), d(), diag(&d()).graph().refine(&pin(&[0, 1])).unwrap());
        assert!(wide.minimize_support().pinned().is_empty());
    }

    #[test]
    fn property_examples() {
        assert!(diag(&d()).check(Property::Injective).unwrap());
        assert!(sharp().check(Property::Surjective).unwrap());
        assert!(!head_rel().check(Property::WellDefined).unwrap());
        assert!(head_rel().check(Property::Injective).unwrap());
        assert!(head_rel().check(Property::Surjective).unwrap());
        assert_eq!(
            head_rel().check(Property::Symmetric),
            Err(NomError::DomainMismatch)
        );
        assert!(sharp().check(Property::Symmetric).unwrap());
        assert!(!sharp().check(Property::Transitive).unwrap());
        assert!(!sharp().check(Property::Reflexive).unwrap());
        assert!(diag(&d()).check(Property::Coreflexive).unwrap());
        assert!(sharp().check(Property::Equivariant).unwrap());
    }

    #[test]
    fn diagonal_is_the_only_equivariant_injective_relation_on_atoms() {
        // the four equivariant relations on D: ∅, Δ, ♯, D×D
        let candidates = FsRel::candidate_orbits(&d(), &d(), &AtomSet::new());
        assert_eq!(candidates.len(), 2);
        let mut injective = Vec::new();
        for mask in 0..4u32 {
            let chosen = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| v.clone())
                .collect();
            let r = FsRel::from_orbits(&d(), &d(), &AtomSet::new(), chosen);
            if !r.is_empty() && r.check(Property::Injective).unwrap() {
                injective.push(r);
            }
        }
        assert_eq!(injective.len(), 1);
        assert!(injective[0].rel_equal(&diag(&d())));
    }

    #[test]
    fn subset_and_equality() {
        let all = FsRel::full(&d(), &d());
        assert!(diag(&d()).is_subset(&all));
        assert!(!sharp().is_subset(&diag(&d())));
        assert!(FsRel::compose(&sharp(), &sharp()).unwrap().rel_equal(&all));
    }

    #[test]
    fn builtins() {
        assert_eq!(sharp().pairs().count(), 1);
        assert!(FsRel::supp_rel(&d()).rel_equal(&diag(&d())));
        assert!(FsRel::leq(&d()).rel_equal(&diag(&d())));
        assert_eq!(FsRel::inc(&d(), None).unwrap_err(), NomError::BoundRequired);
        let inc = FsRel::inc(&d(), Some(2)).unwrap();
        assert!(inc.contains(&at(0), &Value::atom_set([Atom::new(0), Atom::new(3)])));
        assert!(!inc.contains(&at(0), &Value::atom_set([Atom::new(1)])));
        let u = Universe::new(first_atoms(4));
        let brute_supp: std::collections::BTreeSet<_> = u
            .members(&d())
            .into_iter()
            .map(|x| (x.clone(), x))
            .collect();
        assert_eq!(u.pairs(&FsRel::supp_rel(&d())), brute_supp);
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
    }
}

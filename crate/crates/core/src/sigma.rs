//! The natural deterministic morphism `σ_R` and stochastic maps.
//!
//! For `R : X → Y`, `S ⊆ X` and `ρ : Y → R→(S)`,
//! `σ_{R,S}(ρ) = {(x, s) : (x, y₁) ∈ R, (s, y₂) ∈ R, (y₁, y₂) ∈ ρ}`, computed
//! as `(R ∩ (S × Y))⁻¹ ∘ ρ ∘ R`.

use crate::error::{NomError, Result};
use crate::orbitset::OrbitSet;
use crate::relation::{FsRel, Property};

#[derive(Clone, Debug)]
pub struct SigmaQuery {
    pub r: FsRel,
    pub s: OrbitSet,
    pub rho: FsRel,
}

impl SigmaQuery {
    pub fn new(r: FsRel, s: OrbitSet, rho: FsRel) -> SigmaQuery {
        SigmaQuery { r, s, rho }
    }

    pub fn run(&self) -> Result<FsRel> {
        sigma(&self.r, &self.s, &self.rho)
    }
}

/// `σ_{R,S}(ρ)` as a relation `X → S`.
pub fn sigma(r: &FsRel, s: &OrbitSet, rho: &FsRel) -> Result<FsRel> {
    if !s.is_subset(r.dom()) {
        return Err(NomError::BadS);
    }
    if !rho.dom().same_set(r.cod()) || !rho.image_set().is_subset(&r.direct_image(s)) {
        return Err(NomError::BadRho);
    }
    let back = r.restrict_domain(s).inverse().retyped(rho.cod(), s);
    let forward = FsRel::compose(rho, r)?;
    FsRel::compose(&back, &forward)
}

/// Cuts `ρ` down to `Y × R→(S)` so that it is a valid argument of `σ_{R,S}`.
pub fn restrict_rho(r: &FsRel, s: &OrbitSet, rho: &FsRel) -> FsRel {
    rho.restrict_codomain(&r.direct_image(s))
}

/// `σ_{R,X}(ρ)` with `ρ` first cut down to the image of `R`.
pub fn sigma_full(r: &FsRel, rho: &FsRel) -> Result<FsRel> {
    sigma(r, r.dom(), &restrict_rho(r, r.dom(), rho))
}

/// Does the inclusion square for `S ⊆ S2` commute at `ρ`?
pub fn sigma_naturality_check(r: &FsRel, s: &OrbitSet, s2: &OrbitSet, rho: &FsRel) -> Result<bool> {
    if !s.is_subset(s2) {
        return Err(NomError::BadS);
    }
    let small = sigma(r, s, rho)?;
    let wide_rho = rho.retyped(rho.dom(), &r.direct_image(s2));
    let large = sigma(r, s2, &wide_rho)?;
    Ok(small.retyped(r.dom(), s2).rel_equal(&large))
}

/// `σ_f` for a finitely supported map `f`.
pub fn stochastic_sigma(f: &FsRel, s: &OrbitSet, rho: &FsRel) -> Result<FsRel> {
    if !f.check(Property::Total)? || !f.check(Property::WellDefined)? {
        return Err(NomError::NotAFunction);
    }
    sigma(f, s, rho)
}

/// A relation whose pairs all share one second component.
pub fn is_constant(rho: &FsRel) -> bool {
    let im = rho.image_set().minimize();
    im.is_empty()
        || (im.generators().len() == 1 && im.generators()[0].support().is_subset(im.pinned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::{first_atoms, Atom, AtomSet, FinPerm};
    use crate::oracle::{brute, Universe};
    use crate::value::Value;

    fn d() -> OrbitSet {
        OrbitSet::atoms()
    }

    fn delta() -> FsRel {
        FsRel::identity(&d())
    }

    #[test]
    fn identity_diagram() {
        let out = sigma(&delta(), &d(), &delta()).unwrap();
        assert!(out.rel_equal(&delta()));
    }

    #[test]
    fn freshness_spreads_everything() {
        let sharp = FsRel::freshness(&d(), &d());
        let out = sigma(&sharp, &d(), &delta()).unwrap();
        assert!(out.rel_equal(&FsRel::full(&d(), &d())));
        let u = Universe::new(first_atoms(4));
        assert_eq!(u.pairs(&out), brute::sigma(&sharp, &d(), &delta(), &u));
    }

    #[test]
    fn support_map_gives_complement_of_freshness() {
        let f = FsRel::supp_rel(&d());
        let out = stochastic_sigma(&f, &d(), &delta()).unwrap();
        assert!(out.rel_equal(&delta()));
        let sharp = FsRel::freshness(&d(), &d());
        assert!(out.rel_equal(&FsRel::full(&d(), &d()).difference(&sharp)));
    }

    #[test]
    fn constant_map_relates_everything() {
        let theta = OrbitSet::discrete(["theta"]);
        let f = FsRel::full(&d(), &theta);
        let out = stochastic_sigma(&f, &d(), &FsRel::identity(&theta)).unwrap();
        assert!(out.rel_equal(&FsRel::full(&d(), &d())));
        assert!(is_constant(&f));
        assert!(!is_constant(&delta()));
    }

    #[test]
    fn permutation_graph_is_a_map() {
        let p = FinPerm::transposition(Atom::new(0), Atom::new(1));
        let g = FsRel::permutation_graph(&p, &d());
        let out = stochastic_sigma(&g, &d(), &delta()).unwrap();
        assert!(out.rel_equal(&delta()));
    }

    #[test]
    fn non_maps_are_rejected() {
        let sharp = FsRel::freshness(&d(), &d());
        assert_eq!(
            stochastic_sigma(&sharp, &d(), &delta()).unwrap_err(),
            NomError::NotAFunction
        );
    }

    #[test]
    fn bad_arguments() {
        let pairs = OrbitSet::distinct_pairs();
        assert_eq!(
            sigma(&delta(), &pairs, &delta()).unwrap_err(),
            NomError::BadS
        );
        let a: AtomSet = [Atom::new(0)].into_iter().collect();
        let point = OrbitSet::singleton(&Value::atom(0));
        assert_eq!(
            sigma(&delta(), &point, &delta()).unwrap_err(),
            NomError::BadRho
        );
        let rho = restrict_rho(&delta(), &point, &delta());
        assert_eq!(rho.pinned(), &a);
        let out = sigma(&delta(), &point, &rho).unwrap();
        assert!(out.contains(&Value::atom(0), &Value::atom(0)));
        assert_eq!(out.pairs().count(), 1);
    }

    #[test]
    fn naturality_on_the_diagonal() {
        let point = OrbitSet::singleton(&Value::atom(0));
        let rho = restrict_rho(&delta(), &point, &delta());
        assert!(sigma_naturality_check(&delta(), &point, &d(), &rho).unwrap());
        assert!(sigma_naturality_check(&delta(), &d(), &d(), &delta()).unwrap());
    }
}

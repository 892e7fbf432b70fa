//! Laws of `σ_R` and of stochastic maps.

use std::collections::BTreeSet;

use crate::atoms::AtomSet;
use crate::catalog::{self, Gen};
use crate::error::{NomError, Result};
use crate::oracle::{brute, PairSet, Universe};
use crate::orbitset::OrbitSet;
use crate::relation::{FsRel, Property};
use crate::sigma::{is_constant, restrict_rho, sigma, sigma_naturality_check, stochastic_sigma};
use crate::value::Value;

use super::{Both, LawCheck, Outcome, SuiteConfig, Tally};

pub const SIGMA_LAWS: [&str; 15] = [
    "order-preserving",
    "monotone-in-relation",
    "support-bound",
    "domain-image-bound",
    "injective-contraction",
    "injective-iff-diagonal",
    "total-injective-iff-diagonal",
    "reflexive-diagonal",
    "coreflexive-symmetric",
    "reflexive-contraction",
    "equivalence-diagonal",
    "symmetric-welldefined",
    "fresh-separation",
    "naturality",
    "sigma-matches-oracle",
];

fn firsts(pairs: &PairSet) -> BTreeSet<Value> {
    pairs.iter().map(|(x, _)| x.clone()).collect()
}

fn seconds(pairs: &PairSet) -> BTreeSet<Value> {
    pairs.iter().map(|(_, y)| y.clone()).collect()
}

fn prop(r: &FsRel, p: Property, u: &Universe) -> Both {
    Both::new(r.check(p).unwrap_or(false), brute::check(r, p, u))
}

fn pairs_prop(r: &FsRel, pairs: &PairSet, p: Property) -> Both {
    Both::new(r.check(p).unwrap_or(false), brute::pair_check(pairs, p))
}

fn slice_is_constant(pairs: &PairSet) -> bool {
    seconds(pairs).len() <= 1
}

/// `σ` computed both ways, with `ρ` cut down to a valid argument.
struct Computed {
    rel: FsRel,
    pairs: PairSet,
    u: Universe,
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    gen: Gen,
    only: Option<&'a str>,
    tallies: Vec<Tally>,
}

impl<'a> Runner<'a> {
    fn new(cfg: &'a SuiteConfig, only: Option<&'a str>) -> Runner<'a> {
        Runner {
            cfg,
            gen: Gen::new(cfg.seed),
            only,
            tallies: SIGMA_LAWS.iter().map(|n| Tally::new(n)).collect(),
        }
    }

    fn wants(&self, law: &str) -> bool {
        self.only.is_none_or(|o| o == law)
    }

    fn tally(&mut self, law: &str) -> &mut Tally {
        let i = SIGMA_LAWS
            .iter()
            .position(|n| *n == law)
            .expect("known law");
        &mut self.tallies[i]
    }

    fn record(
        &mut self,
        law: &str,
        u: &Universe,
        outcome: Outcome,
        witness: impl FnOnce() -> String,
    ) {
        let t = self.tally(law);
        t.saw_universe(u);
        t.record(outcome, witness);
    }

    fn error(&mut self, law: &str, e: NomError, witness: impl FnOnce() -> String) {
        self.tally(law).record_result(Err(e), witness);
    }

    fn sigma(&mut self, r: &FsRel, s: &OrbitSet, rho: &FsRel) -> Result<Computed> {
        self.sigma_covering(r, s, rho, &[], &[])
    }

    /// Same, on a universe that also covers `rels` and `sets`.
    fn sigma_covering(
        &mut self,
        r: &FsRel,
        s: &OrbitSet,
        rho: &FsRel,
        rels: &[&FsRel],
        sets: &[&OrbitSet],
    ) -> Result<Computed> {
        let rho = restrict_rho(r, s, rho);
        let rel = sigma(r, s, &rho)?;
        let all_rels: Vec<&FsRel> = [r, &rho].into_iter().chain(rels.iter().copied()).collect();
        let all_sets: Vec<&OrbitSet> = [s].into_iter().chain(sets.iter().copied()).collect();
        let u = self.cfg.universe(&all_rels, &all_sets);
        let pairs = brute::sigma(r, s, &rho, &u);
        if self.wants("sigma-matches-oracle") {
            let same = u.pairs(&rel) == pairs;
            self.record(
                "sigma-matches-oracle",
                &u,
                Outcome::holds(Both::new(true, same)),
                || format!("R = {r}, S = {s}, rho = {rho}"),
            );
        }
        Ok(Computed { rel, pairs, u })
    }

    fn instance(&mut self, label: &str, r: &FsRel) {
        if self.wants("support-bound") {
            self.support_bound(label, r);
        }
        if !r.least_support().is_empty() {
            return;
        }
        if self.wants("order-preserving") {
            self.order_preserving(label, r);
        }
        if self.wants("monotone-in-relation") {
            self.monotone(label, r);
        }
        if self.wants("naturality") {
            self.naturality(label, r);
        }
        if r.dom().same_set(r.cod()) {
            self.endo(label, r);
        }
    }

    fn support_bound(&mut self, label: &str, r: &FsRel) {
        let s = self.gen.subset(r.dom(), 1);
        let img = r.direct_image(&s);
        if img.is_empty() {
            return;
        }
        let rho = self.gen.fs_rel(r.cod(), &img, 1);
        let law = "support-bound";
        match self.sigma(r, &s, &rho) {
            Ok(c) => {
                let rho_pairs = c.u.pairs(&rho);
                let bound: AtomSet = r
                    .least_support()
                    .into_iter()
                    .chain(s.least_support())
                    .chain(rho.least_support())
                    .collect();
                let obound: AtomSet = brute::least_support(&c.u.pairs(r), &c.u)
                    .into_iter()
                    .chain(brute::least_support_of(&c.u.members(&s), &c.u))
                    .chain(brute::least_support(&rho_pairs, &c.u))
                    .collect();
                let sym = c.rel.least_support().is_subset(&bound);
                let oracle = brute::least_support(&c.pairs, &c.u).is_subset(&obound);
                self.record(law, &c.u, Outcome::holds(Both::new(sym, oracle)), || {
                    format!("{label}: S = {s}, rho = {rho}")
                });
            }
            Err(e) => self.error(law, e, || label.to_string()),
        }
    }

    fn order_preserving(&mut self, label: &str, r: &FsRel) {
        let s = self.gen.subset(r.dom(), 1);
        let img = r.direct_image(&s);
        let rho1 = self.gen.fs_rel(r.cod(), &img, 1);
        let rho2 = rho1.union(&self.gen.fs_rel(r.cod(), &img, 1));
        let law = "order-preserving";
        let cover = [r, &rho1, &rho2];
        match self
            .sigma_covering(r, &s, &rho1, &cover, &[])
            .and_then(|a| Ok((a, self.sigma_covering(r, &s, &rho2, &cover, &[])?)))
        {
            Ok((a, b)) => {
                let outcome = Outcome::holds(Both::new(
                    a.rel.is_subset(&b.rel),
                    a.pairs.is_subset(&b.pairs),
                ));
                self.record(law, &a.u, outcome, || {
                    format!("{label}: S = {s}, rho1 = {rho1}, rho2 = {rho2}")
                });
            }
            Err(e) => self.error(law, e, || label.to_string()),
        }
    }

    fn monotone(&mut self, label: &str, r: &FsRel) {
        let bigger = r.union(&self.gen.equivariant_rel(r.dom(), r.cod()));
        let s = self.gen.subset(r.dom(), 1);
        let rho = self.gen.fs_rel(r.cod(), &r.direct_image(&s), 1);
        let law = "monotone-in-relation";
        let cover = [r, &bigger, &rho];
        match self
            .sigma_covering(r, &s, &rho, &cover, &[])
            .and_then(|a| Ok((a, self.sigma_covering(&bigger, &s, &rho, &cover, &[])?)))
        {
            Ok((a, b)) => {
                let outcome = Outcome::holds(Both::new(
                    a.rel.is_subset(&b.rel),
                    a.pairs.is_subset(&b.pairs),
                ));
                self.record(law, &a.u, outcome, || {
                    format!("{label}: T = {bigger}, S = {s}, rho = {rho}")
                });
            }
            Err(e) => self.error(law, e, || label.to_string()),
        }
    }

    fn naturality(&mut self, label: &str, r: &FsRel) {
        let s2 = self.gen.subset(r.dom(), 1);
        let s = s2.intersect(&self.gen.subset(r.dom(), 1));
        let rho = self.gen.fs_rel(r.cod(), &r.direct_image(&s), 1);
        let law = "naturality";
        let run = |me: &mut Runner| -> Result<(Outcome, Universe)> {
            let sym = sigma_naturality_check(r, &s, &s2, &rho)?;
            let small = me.sigma_covering(r, &s, &rho, &[], &[&s2])?;
            let large = brute::sigma(r, &s2, &rho, &small.u);
            let injective = pairs_prop(r, &small.u.pairs(r), Property::Injective);
            Ok((
                Outcome::implies(injective, Both::new(sym, small.pairs == large)),
                small.u,
            ))
        };
        match run(self) {
            Ok((o, u)) => self.record(law, &u, o, || {
                format!("{label}: S = {s}, S2 = {s2}, rho = {rho}")
            }),
            Err(e) => self.error(law, e, || label.to_string()),
        }
    }

    fn endo(&mut self, label: &str, r: &FsRel) {
        let x = r.dom().clone();
        let delta = FsRel::identity(&x);
        let (sd, sr) = match self
            .sigma(r, &x, &delta)
            .and_then(|a| Ok((a, self.sigma(r, &x, r)?)))
        {
            Ok(v) => v,
            Err(e) => {
                self.error("injective-iff-diagonal", e, || label.to_string());
                return;
            }
        };
        let u = sd.u.clone();
        let r_pairs = u.pairs(r);
        let diag = brute::identity(&x, &u);
        let injective = pairs_prop(r, &r_pairs, Property::Injective);
        let reflexive = prop(r, Property::Reflexive, &u);
        let symmetric = pairs_prop(r, &r_pairs, Property::Symmetric);
        let transitive = pairs_prop(r, &r_pairs, Property::Transitive);
        let w = || label.to_string();

        self.record(
            "injective-iff-diagonal",
            &u,
            Outcome::iff(
                injective,
                Both::new(sd.rel.is_subset(&delta), sd.pairs.is_subset(&diag)),
            ),
            w,
        );
        self.record(
            "total-injective-iff-diagonal",
            &u,
            Outcome::iff(
                prop(r, Property::TotalInjective, &u),
                Both::new(sd.rel.rel_equal(&delta), sd.pairs == diag),
            ),
            w,
        );
        let sr_injective = pairs_prop(&sr.rel, &sr.pairs, Property::Injective);
        self.record(
            "injective-contraction",
            &u,
            Outcome::implies(
                injective,
                Both::new(sr.rel.is_subset(r), sr.pairs.is_subset(&r_pairs)).and(sr_injective),
            ),
            w,
        );
        self.record(
            "reflexive-diagonal",
            &u,
            Outcome::implies(
                reflexive,
                Both::new(delta.is_subset(&sr.rel), diag.is_subset(&sr.pairs)),
            ),
            w,
        );
        self.record(
            "reflexive-contraction",
            &u,
            Outcome::implies(
                reflexive,
                Both::new(
                    sr.rel.is_subset(r) && sd.rel.is_subset(r),
                    sr.pairs.is_subset(&r_pairs) && sd.pairs.is_subset(&r_pairs),
                ),
            ),
            w,
        );
        self.record(
            "equivalence-diagonal",
            &u,
            Outcome::implies(
                symmetric.and(transitive),
                Both::new(sd.rel.is_subset(r), sd.pairs.is_subset(&r_pairs)),
            ),
            w,
        );
        let sr_welldefined = pairs_prop(&sr.rel, &sr.pairs, Property::WellDefined);
        self.record(
            "symmetric-welldefined",
            &u,
            Outcome::implies(
                symmetric.and(sr_welldefined),
                injective.and(pairs_prop(r, &r_pairs, Property::WellDefined)),
            ),
            w,
        );
        let no_zero = Both::new(
            x.zero_elements().map(|z| z.is_empty()).unwrap_or(false),
            u.members(&x).iter().all(|v| !v.support().is_empty()),
        );
        let psm = prop(r, Property::PartialSurjectiveMap, &u);
        self.record(
            "fresh-separation",
            &u,
            Outcome::implies(
                no_zero.and(psm),
                Both::new(
                    sd.rel.pairs().all(|(a, b)| !a.fresh_for(b)),
                    sd.pairs.iter().all(|(a, b)| !a.fresh_for(b)),
                ),
            ),
            w,
        );
        let dom_r = r.domain_set();
        let odom = brute::domain(r, &u);
        self.record(
            "domain-image-bound",
            &u,
            Outcome::holds(Both::new(
                sr.rel.domain_set().is_subset(&dom_r) && sr.rel.image_set().is_subset(&dom_r),
                firsts(&sr.pairs).is_subset(&odom) && seconds(&sr.pairs).is_subset(&odom),
            )),
            w,
        );
        if self.wants("coreflexive-symmetric") {
            let a = self.gen.subset(&x, 1);
            let rho = FsRel::identity(&a).retyped(&x, &x);
            match self.sigma(r, &x, &rho) {
                Ok(c) => {
                    let coreflexive = pairs_prop(&rho, &c.u.pairs(&rho), Property::Coreflexive);
                    let symmetric = pairs_prop(&c.rel, &c.pairs, Property::Symmetric);
                    self.record(
                        "coreflexive-symmetric",
                        &c.u,
                        Outcome::implies(coreflexive, symmetric),
                        || format!("{label}: rho = {rho}"),
                    );
                }
                Err(e) => self.error("coreflexive-symmetric", e, w),
            }
        }
    }

    fn finish(self) -> Vec<LawCheck> {
        let only = self.only;
        self.tallies
            .into_iter()
            .map(Tally::finish)
            .filter(|c| only.is_none_or(|o| c.law == o))
            .collect()
    }
}

/// A random relation for the σ laws, biased towards the premises.
fn random_instance(gen: &mut Gen) -> FsRel {
    let x = gen.small_set();
    match gen.below(10) {
        0..=4 => {
            let r = gen.equivariant_rel(&x, &x);
            match gen.below(4) {
                0 => r,
                1 => catalog::reflexive_closure(&r),
                2 => catalog::symmetric_closure(&r),
                _ => catalog::equivalence_closure(&r),
            }
        }
        5 | 6 => {
            let extra = gen.equivariant_rel(&x, &x);
            gen.sub_rel(&FsRel::identity(&x).union(&extra))
        }
        7 | 8 => {
            let y = gen.small_set();
            gen.equivariant_rel(&x, &y)
        }
        _ => {
            let y = gen.small_set();
            gen.fs_rel(&x, &y, 1)
        }
    }
}

pub(super) fn sigma_suite(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut run = Runner::new(cfg, None);
    for (name, r) in catalog::sigma_catalog() {
        run.instance(name, &r);
    }
    for i in 0..cfg.cases_or(100) {
        let r = random_instance(&mut run.gen);
        run.instance(&format!("random-{i} {r}"), &r);
    }
    run.finish()
}

/// Runs one named σ law on a given relation, drawing `cases` random
/// arguments where the law needs them.
pub fn sigma_law(name: &str, r: &FsRel, cfg: &SuiteConfig) -> Option<LawCheck> {
    let law = SIGMA_LAWS.iter().find(|n| **n == name)?;
    let mut run = Runner::new(cfg, Some(law));
    let needs_random = matches!(
        name,
        "order-preserving"
            | "monotone-in-relation"
            | "support-bound"
            | "coreflexive-symmetric"
            | "naturality"
    );
    let rounds = if needs_random { cfg.cases_or(20) } else { 1 };
    for _ in 0..rounds {
        run.instance(&r.to_string(), r);
    }
    run.finish().into_iter().next()
}

/// A random total well-defined equivariant relation `X → Y`, if one is
/// found.
fn random_map(gen: &mut Gen, x: &OrbitSet, y: &OrbitSet) -> Option<FsRel> {
    let candidates = FsRel::candidate_orbits(x, y, &AtomSet::new());
    for _ in 0..20 {
        let mut chosen = Vec::new();
        for g in x.generators() {
            let options: Vec<&Value> = candidates
                .iter()
                .filter(|c| {
                    let (a, b) = c.as_pair().expect("pairs");
                    a.canonicalize().0 == g.canonicalize().0 && b.support().is_subset(&a.support())
                })
                .collect();
            if options.is_empty() {
                break;
            }
            chosen.push((*gen.pick(&options)).clone());
        }
        let f = FsRel::from_orbits(x, y, &AtomSet::new(), chosen);
        if f.check(Property::Total).unwrap_or(false)
            && f.check(Property::WellDefined).unwrap_or(false)
        {
            return Some(f);
        }
    }
    None
}

/// A random `ρ` of the kind the isomorphism laws talk about.
fn random_rho(gen: &mut Gen, y: &OrbitSet, kind: usize) -> FsRel {
    match kind % 4 {
        0 => gen.fs_rel(y, y, 1),
        1 => random_map(gen, y, y)
            .map(|f| gen.sub_rel(&f))
            .unwrap_or_else(|| gen.fs_rel(y, y, 1)),
        2 => random_map(gen, y, y)
            .map(|f| gen.sub_rel(&f).inverse())
            .unwrap_or_else(|| gen.fs_rel(y, y, 1)),
        _ => {
            let members = Universe::around(&AtomSet::new(), 2).members(y);
            let items: Vec<Value> = members.into_iter().collect();
            let target = gen.pick(&items).clone();
            let a = gen.subset(y, 1);
            let pinned: AtomSet = target
                .support()
                .into_iter()
                .chain(a.pinned().iter().copied())
                .collect();
            let full = FsRel::full(&a, &OrbitSet::singleton(&target)).retyped(y, y);
            let pairs = full
                .pairs()
                .map(|(p, q)| Value::pair(p.clone(), q.clone()))
                .collect();
            FsRel::from_orbits(y, y, &pinned, pairs)
        }
    }
}

pub(super) fn stochastic(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut gen = Gen::new(cfg.seed);
    let mut out = Vec::new();

    let mut t = Tally::new("support-map-diagonal");
    let d = catalog::d();
    let delta_d = FsRel::identity(&d);
    let sets = [
        ("D", d.clone()),
        ("D2", catalog::d2()),
        ("DxD", catalog::dxd()),
        ("D+Theta", catalog::d_plus_theta()),
        ("pairs-of-atoms", catalog::atom_pair_sets()),
    ];
    for (name, x) in &sets {
        let f = FsRel::supp_rel(x);
        let result = if *name == "D" {
            stochastic_sigma(&f, x, &restrict_rho(&f, x, &delta_d))
        } else {
            sigma(&f, x, &restrict_rho(&f, x, &delta_d))
        };
        let u = cfg.universe(&[&f], &[]);
        let expected = FsRel::full(x, x).difference(&FsRel::freshness(x, x));
        let oracle = brute::sigma(&f, x, &restrict_rho(&f, x, &delta_d), &u);
        let oexpected: PairSet = u
            .pairs(&FsRel::full(x, x))
            .into_iter()
            .filter(|(a, b)| !a.fresh_for(b))
            .collect();
        t.saw_universe(&u);
        t.record_result(
            result.map(|s| {
                let exact = *name != "D" || s.rel_equal(&delta_d);
                Outcome::holds(Both::new(
                    s.rel_equal(&expected) && exact,
                    oracle == oexpected,
                ))
            }),
            || name.to_string(),
        );
    }
    out.push(t.finish());

    let iso_names = [
        ("iso-preserves-welldefined", Property::WellDefined),
        ("iso-reflects-welldefined", Property::WellDefined),
        ("iso-preserves-injective", Property::Injective),
        ("iso-reflects-injective", Property::Injective),
        ("iso-preserves-constant", Property::Coreflexive),
        ("iso-reflects-constant", Property::Coreflexive),
    ];
    let mut iso: Vec<Tally> = iso_names.iter().map(|(n, _)| Tally::new(n)).collect();
    let mut meets = Tally::new("iso-diagonal-meets");
    let n = cfg.cases_or(50);
    for i in 0..n {
        let x = gen.small_set();
        let p = gen.perm(4, 2);
        let f = match i % 3 {
            0 if x.same_set(&catalog::d2()) => catalog::swap(),
            _ => FsRel::permutation_graph(&p, &x),
        };
        for (k, (law, property)) in iso_names.iter().enumerate() {
            let rho = random_rho(&mut gen, &x, i + k);
            let u = cfg.universe(&[&f, &rho], &[]);
            let res = stochastic_sigma(&f, &x, &restrict_rho(&f, &x, &rho));
            let rho_pairs = u.pairs(&rho);
            let oracle = brute::sigma(&f, &x, &rho, &u);
            let outcome = res.map(|s| {
                let (before, after) = if *property == Property::Coreflexive {
                    (
                        Both::new(is_constant(&rho), slice_is_constant(&rho_pairs)),
                        Both::new(is_constant(&s), slice_is_constant(&oracle)),
                    )
                } else {
                    (
                        pairs_prop(&rho, &rho_pairs, *property),
                        pairs_prop(&s, &oracle, *property),
                    )
                };
                if law.contains("preserves") {
                    Outcome::implies(before, after)
                } else {
                    Outcome::implies(after, before)
                }
            });
            iso[k].saw_universe(&u);
            iso[k].record_result(outcome, || format!("f = {f}, rho = {rho}"));
        }
        // f restricted to an equivariant part A, bijective onto f(A)
        let a = gen.subset(&x, 0);
        let fa_img = f.direct_image(&a);
        let fa = f.restrict_domain(&a).retyped(&a, &fa_img);
        let rho = gen
            .fs_rel(&x, &x, 1)
            .restrict_domain(&fa_img)
            .restrict_codomain(&fa_img);
        let u = cfg.universe(&[&fa, &rho], &[]);
        let res = sigma(&fa, &a, &rho);
        let oracle = brute::sigma(&fa, &a, &rho, &u);
        let rho_pairs = u.pairs(&rho);
        meets.saw_universe(&u);
        meets.record_result(
            res.map(|s| {
                let sym_meets = !s.intersect(&FsRel::identity(&a)).is_empty();
                let rho_meets = !rho.intersect(&FsRel::identity(&fa_img)).is_empty();
                Outcome::iff(
                    Both::new(sym_meets, oracle.iter().any(|(p, q)| p == q)),
                    Both::new(rho_meets, rho_pairs.iter().any(|(p, q)| p == q)),
                )
            }),
            || format!("f = {f}, A = {a}, rho = {rho}"),
        );
    }
    out.extend(iso.into_iter().map(Tally::finish));
    out.push(meets.finish());

    let kinds = [
        ("map-preserves-reflexive", 0),
        ("map-preserves-symmetric", 1),
        ("map-preserves-transitive", 2),
        ("map-preserves-equivalence", 3),
        ("map-preserves-congruence", 4),
    ];
    let mut tallies: Vec<Tally> = kinds.iter().map(|(n, _)| Tally::new(n)).collect();
    for i in 0..cfg.cases_or(100) {
        let x = gen.small_set();
        let Some(f) = random_map(&mut gen, &x, &x) else {
            continue;
        };
        let (law, kind) = kinds[i % kinds.len()];
        let base = if kind == 4 {
            gen.equivariant_rel(&x, &x)
        } else {
            gen.fs_rel(&x, &x, 1)
        };
        let rho = match kind {
            0 => catalog::reflexive_closure(&base),
            1 => catalog::symmetric_closure(&base),
            2 => catalog::transitive_closure(&base),
            _ => catalog::equivalence_closure(&base),
        };
        let u = cfg.universe(&[&f, &rho], &[]);
        let rho_pairs = u.pairs(&rho);
        let props: &[Property] = match kind {
            0 => &[Property::Reflexive],
            1 => &[Property::Symmetric],
            2 => &[Property::Transitive],
            3 => &[
                Property::Reflexive,
                Property::Symmetric,
                Property::Transitive,
            ],
            _ => &[
                Property::Reflexive,
                Property::Symmetric,
                Property::Transitive,
                Property::Equivariant,
            ],
        };
        let has = |r: &FsRel, pairs: &PairSet| -> Both {
            props.iter().fold(Both::given(true), |acc, &p| {
                let oracle = match p {
                    Property::Reflexive => brute::identity(r.dom(), &u).is_subset(pairs),
                    Property::Equivariant => brute::invariant_under_swaps(pairs, &u),
                    other => brute::pair_check(pairs, other),
                };
                acc.and(Both::new(r.check(p).unwrap_or(false), oracle))
            })
        };
        let t = &mut tallies[i % kinds.len()];
        t.saw_universe(&u);
        let res = stochastic_sigma(&f, &x, &restrict_rho(&f, &x, &rho));
        let oracle = brute::sigma(&f, &x, &restrict_rho(&f, &x, &rho), &u);
        t.record_result(
            res.map(|s| Outcome::implies(has(&rho, &rho_pairs), has(&s, &oracle))),
            || format!("{law}: f = {f}, rho = {rho}"),
        );
    }
    out.extend(tallies.into_iter().map(Tally::finish));
    out
}

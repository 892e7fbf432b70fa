//! Laws about single relations: the two actions, equivariance, composition,
//! freshness, supports and the decidable predicates.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::atoms::{first_atoms, fresh_atoms, Atom, AtomSet, FinPerm};
use crate::catalog::{self, Gen};
use crate::oracle::{brute, PairSet, Universe};
use crate::orbitset::OrbitSet;
use crate::presheaf::Level;
use crate::relation::{FsRel, Property};
use crate::value::Value;

use super::{Both, LawCheck, Outcome, SuiteConfig, Tally};

fn act_pairs(pairs: &PairSet, p: &FinPerm) -> PairSet {
    pairs.iter().map(|(x, y)| (x.act(p), y.act(p))).collect()
}

fn act_values(values: &BTreeSet<Value>, p: &FinPerm) -> BTreeSet<Value> {
    values.iter().map(|v| v.act(p)).collect()
}

fn action_sets() -> Vec<OrbitSet> {
    vec![
        catalog::d(),
        catalog::d2(),
        catalog::dxd(),
        catalog::theta(),
    ]
}

pub(super) fn actions(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut gen = Gen::new(cfg.seed);
    let sets = action_sets();
    let mut t = Tally::new("star-equals-dot");
    for _ in 0..cfg.cases_or(500) {
        let x = gen.pick(&sets).clone();
        let y = gen.pick(&sets).clone();
        let r = gen.fs_rel(&x, &y, 2);
        let p = gen.perm(5, 3);
        let star = r.act_star(&p);
        let dot = r.act_dot(&p);
        let u = cfg.universe_with(&[&r], &[], &p.support());
        let base = u.pairs(&r);
        let by_def: PairSet = base.iter().map(|(x, y)| (x.act(&p), y.act(&p))).collect();
        let oracle = by_def == u.pairs(&dot) && by_def == u.pairs(&star);
        t.saw_universe(&u);
        t.record(
            Outcome::holds(Both::new(star.rel_equal(&dot), oracle)),
            || format!("R = {r}, p = {p}"),
        );
    }
    vec![t.finish()]
}

/// Transpositions that move any relation whose least support meets `pinned`.
fn probe_swaps(pinned: &AtomSet) -> Vec<FinPerm> {
    if pinned.is_empty() {
        return vec![FinPerm::transposition(Atom::new(0), Atom::new(1))];
    }
    let f = fresh_atoms(pinned, 1)[0];
    let mut out: Vec<FinPerm> = pinned
        .iter()
        .map(|&a| FinPerm::transposition(a, f))
        .collect();
    let ps: Vec<Atom> = pinned.iter().copied().collect();
    for (i, &a) in ps.iter().enumerate() {
        for &b in &ps[i + 1..] {
            out.push(FinPerm::transposition(a, b));
        }
    }
    out
}

/// Clause checks for one relation: equivariance, and the five statements
/// claimed equivalent to it.
struct RrrCase {
    equivariant: Both,
    dot: Both,
    star: Both,
    image: Both,
    preimage: Both,
    inverse: Both,
}

fn rrr_case(r: &FsRel, u: &Universe) -> RrrCase {
    let swaps = probe_swaps(r.pinned());
    let pairs = u.pairs(r);
    let equivariant = Both::new(
        r.least_support().is_empty(),
        brute::invariant_under_swaps(&pairs, u),
    );
    let dot = Both::new(
        swaps.iter().all(|p| r.act_dot(p).rel_equal(r)),
        swaps.iter().all(|p| act_pairs(&pairs, p) == pairs),
    );
    let mut after: HashMap<&Value, Vec<&Value>> = HashMap::new();
    for (x, y) in &pairs {
        after.entry(x).or_default().push(y);
    }
    // g * R = {(x, g y) : (g⁻¹ x, y) ∈ R}
    let star = Both::new(
        swaps.iter().all(|p| r.act_star(p).rel_equal(r)),
        swaps.iter().all(|p| {
            let inv = p.inverse();
            let mut moved = PairSet::new();
            for x in after.keys().map(|x0| x0.act(p)) {
                for y in after.get(&x.act(&inv)).into_iter().flatten() {
                    moved.insert((x.clone(), y.act(p)));
                }
            }
            moved == pairs
        }),
    );
    let k = r.dom().max_free_support().max(r.cod().max_free_support());
    let points = Universe::around(r.pinned(), k + 1);
    let commutes = |rel: &FsRel, side: &OrbitSet| -> Both {
        let members = points.members(side);
        let sym = members.iter().all(|x| {
            swaps.iter().all(|p| {
                rel.direct_image(&OrbitSet::singleton(x))
                    .act(p)
                    .same_set(&rel.direct_image(&OrbitSet::singleton(&x.act(p))))
            })
        });
        let graph = u.pairs(rel);
        let mut image: HashMap<&Value, BTreeSet<Value>> = HashMap::new();
        for (a, b) in &graph {
            image.entry(a).or_default().insert(b.clone());
        }
        let empty = BTreeSet::new();
        let oracle = members.iter().all(|x| {
            swaps.iter().all(|p| {
                let here = image.get(x).unwrap_or(&empty);
                let there = image.get(&x.act(p)).unwrap_or(&empty);
                &act_values(here, p) == there
            })
        });
        Both::new(sym, oracle)
    };
    let image = commutes(r, r.dom());
    let inv = r.inverse();
    let preimage = commutes(&inv, r.cod());
    let inverse = Both::new(
        inv.least_support().is_empty(),
        brute::invariant_under_swaps(&brute::inverse(r, u), u),
    );
    RrrCase {
        equivariant,
        dot,
        star,
        image,
        preimage,
        inverse,
    }
}

pub(super) fn rrr(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut gen = Gen::new(cfg.seed);
    let names = [
        "equivariant-iff-dot-invariant",
        "equivariant-iff-star-invariant",
        "equivariant-iff-image-commutes",
        "equivariant-iff-preimage-commutes",
        "equivariant-iff-inverse-equivariant",
    ];
    let mut tallies: Vec<Tally> = names.iter().map(|n| Tally::new(n)).collect();
    for _ in 0..cfg.cases_or(200) {
        let x = gen.small_set();
        let y = gen.small_set();
        let r = if gen.chance(0.4) {
            gen.equivariant_rel(&x, &y)
        } else {
            gen.fs_rel(&x, &y, 2)
        };
        let u = cfg.universe(&[&r], &[]);
        let c = rrr_case(&r, &u);
        for (t, clause) in tallies
            .iter_mut()
            .zip([c.dot, c.star, c.image, c.preimage, c.inverse])
        {
            t.saw_universe(&u);
            t.record(Outcome::iff(c.equivariant, clause), || format!("R = {r}"));
        }
    }
    tallies.into_iter().map(Tally::finish).collect()
}

pub(super) fn compose(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut gen = Gen::new(cfg.seed);
    let mut comp = Tally::new("compose-matches-oracle");
    let mut img = Tally::new("image-matches-oracle");
    let mut pre = Tally::new("preimage-matches-oracle");
    let n = cfg.cases_or(500);
    for i in 0..n {
        let size = cfg.universe.unwrap_or(4 + i % 3);
        let u = Universe::new(first_atoms(size));
        let x = gen.small_set();
        let y = gen.small_set();
        let z = gen.small_set();
        let r = gen.fs_rel(&x, &y, 2);
        let s = gen.fs_rel(&y, &z, 2);
        comp.saw_universe(&u);
        comp.record_result(
            FsRel::compose(&s, &r).map(|sr| {
                let same = u.pairs(&sr) == brute::compose(&s, &r, &u);
                Outcome::holds(Both::new(true, same))
            }),
            || format!("S = {s}, R = {r}, universe {size}"),
        );
        if i % 2 == 0 {
            let a = gen.subset(&x, 2);
            let same = u.members(&r.direct_image(&a)) == brute::direct_image(&r, &a, &u);
            img.saw_universe(&u);
            img.record(Outcome::holds(Both::new(true, same)), || {
                format!("R = {r}, A = {a}")
            });
            let b = gen.subset(&y, 2);
            let same = u.members(&r.inverse_image(&b)) == brute::inverse_image(&r, &b, &u);
            pre.saw_universe(&u);
            pre.record(Outcome::holds(Both::new(true, same)), || {
                format!("R = {r}, B = {b}")
            });
        }
    }
    vec![comp.finish(), img.finish(), pre.finish()]
}

fn freshness_sets() -> Vec<(&'static str, OrbitSet)> {
    let mut sets = catalog::base_sets();
    sets.push(("unit", OrbitSet::unit()));
    sets.push(("pairs-of-atoms", catalog::atom_pair_sets()));
    sets
}

pub(super) fn freshness(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let d = catalog::d();
    let sharp = FsRel::freshness(&d, &d);
    let full = FsRel::full(&d, &d);
    let u = cfg.universe(&[&sharp], &[]);
    let mut out = Vec::new();

    let mut t = Tally::new("fresh-compose-fresh");
    t.saw_universe(&u);
    t.record_result(
        FsRel::compose(&sharp, &sharp).map(|ss| {
            Outcome::holds(Both::new(
                ss.rel_equal(&full),
                brute::compose(&sharp, &sharp, &u) == u.pairs(&full),
            ))
        }),
        || "♯_D ∘ ♯_D".into(),
    );
    out.push(t.finish());

    let mut t = Tally::new("fresh-not-full");
    t.saw_universe(&u);
    t.record(
        Outcome::holds(Both::new(
            !sharp.rel_equal(&full),
            u.pairs(&sharp) != u.pairs(&full),
        )),
        || "♯_D".into(),
    );
    out.push(t.finish());

    let sets = freshness_sets();
    let mut sym = Tally::new("fresh-symmetric");
    let mut surj = Tally::new("fresh-surjective-from-D");
    let mut dom = Tally::new("fresh-domain");
    let mut refl = Tally::new("fresh-reflexive-iff-discrete");
    let mut nonempty = Tally::new("fresh-nonempty");
    for (name, x) in &sets {
        let fx = FsRel::freshness(x, x);
        let u = cfg.universe(&[&fx], &[]);
        for t in [&mut sym, &mut surj, &mut dom, &mut refl, &mut nonempty] {
            t.saw_universe(&u);
        }
        sym.record_result(
            fx.check(Property::Symmetric)
                .map(|s| Outcome::holds(Both::new(s, brute::check(&fx, Property::Symmetric, &u)))),
            || name.to_string(),
        );
        let fdx = FsRel::freshness(&d, x);
        surj.record_result(
            fdx.check(Property::Surjective).map(|s| {
                Outcome::holds(Both::new(s, brute::check(&fdx, Property::Surjective, &u)))
            }),
            || name.to_string(),
        );
        dom.record(
            Outcome::holds(Both::new(
                fx.domain_set().same_set(x),
                brute::domain(&fx, &u) == u.members(x),
            )),
            || name.to_string(),
        );
        let discrete = Both::new(
            x.zero_elements().map(|z| z.same_set(x)).unwrap_or(false),
            u.members(x).iter().all(|v| v.support().is_empty()),
        );
        refl.record_result(
            fx.check(Property::Reflexive).map(|s| {
                Outcome::iff(
                    discrete,
                    Both::new(s, brute::check(&fx, Property::Reflexive, &u)),
                )
            }),
            || name.to_string(),
        );
        nonempty.record(
            Outcome::implies(
                Both::new(!x.is_empty(), !u.members(x).is_empty()),
                Both::new(!fx.is_empty(), !u.pairs(&fx).is_empty()),
            ),
            || name.to_string(),
        );
    }
    out.extend([sym, surj, dom, refl, nonempty].map(Tally::finish));
    out
}

/// Oracle universe for value-level support checks: more than twice as
/// large as any support involved.
fn value_universe(values: &[&Value], p: &FinPerm) -> Universe {
    let mut atoms: AtomSet = values.iter().flat_map(|v| v.support()).collect();
    atoms.extend(p.support());
    let extra = atoms.len() + 2;
    Universe::around(&atoms, extra)
}

fn singleton_set(v: &Value) -> BTreeSet<Value> {
    BTreeSet::from([v.clone()])
}

pub(super) fn support(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut gen = Gen::new(cfg.seed);
    let mut out = Vec::new();

    let mut t = Tally::new("support-equivariance");
    for _ in 0..cfg.cases_or(1000) {
        let v = gen.value(6, 3);
        let p = gen.perm(8, 3);
        let pv = v.act(&p);
        let u = value_universe(&[&v, &pv], &p);
        let sym = pv.support() == p.act_atoms(&v.support());
        let oracle = brute::least_support_of(&singleton_set(&pv), &u)
            == p.act_atoms(&brute::least_support_of(&singleton_set(&v), &u));
        t.saw_universe(&u);
        t.record(Outcome::holds(Both::new(sym, oracle)), || {
            format!("v = {v}, p = {p}")
        });
    }
    out.push(t.finish());

    let mut t = Tally::new("swap-criterion");
    for _ in 0..cfg.cases_or(300) {
        let v = gen.value(6, 3);
        let supp = v.support();
        let u = value_universe(&[&v], &FinPerm::identity());
        let holds = v.swap_supports(&supp, u.atoms()).unwrap_or(false)
            && supp.iter().all(|a| {
                let mut smaller = supp.clone();
                smaller.remove(a);
                !v.swap_supports(&smaller, u.atoms()).unwrap_or(true)
            });
        let oracle = brute::least_support_of(&singleton_set(&v), &u) == supp;
        t.saw_universe(&u);
        t.record(Outcome::holds(Both::new(holds, oracle)), || {
            format!("v = {v}")
        });
    }
    out.push(t.finish());

    let mut img = Tally::new("image-support-bound");
    let mut pre = Tally::new("preimage-support-bound");
    let mut eq = Tally::new("equivariant-images");
    for i in 0..cfg.cases_or(300) {
        let x = gen.small_set();
        let y = gen.small_set();
        let equivariant = i % 3 == 0;
        let (r, a, b) = if equivariant {
            (
                gen.equivariant_rel(&x, &y),
                gen.subset(&x, 0),
                gen.subset(&y, 0),
            )
        } else {
            (gen.fs_rel(&x, &y, 2), gen.subset(&x, 2), gen.subset(&y, 2))
        };
        let u = cfg.universe(&[&r], &[&a, &b]);
        let pairs = u.pairs(&r);
        let sr = r.least_support();
        let or = brute::least_support(&pairs, &u);
        for (t, set, image, oracle_image) in [
            (
                &mut img,
                &a,
                r.direct_image(&a),
                brute::direct_image(&r, &a, &u),
            ),
            (
                &mut pre,
                &b,
                r.inverse_image(&b),
                brute::inverse_image(&r, &b, &u),
            ),
        ] {
            let bound: AtomSet = sr.union(&set.least_support()).copied().collect();
            let obound: AtomSet = or
                .union(&brute::least_support_of(&u.members(set), &u))
                .copied()
                .collect();
            let got = image.least_support();
            let ogot = brute::least_support_of(&oracle_image, &u);
            t.saw_universe(&u);
            t.record(
                Outcome::holds(Both::new(got.is_subset(&bound), ogot.is_subset(&obound))),
                || format!("R = {r}, set = {set}"),
            );
            if equivariant {
                eq.saw_universe(&u);
                eq.record(
                    Outcome::holds(Both::new(got.is_empty(), ogot.is_empty())),
                    || format!("R = {r}, set = {set}"),
                );
            }
        }
    }
    out.extend([img, pre, eq].map(Tally::finish));

    let mut rels: Vec<(String, FsRel)> = catalog::sigma_catalog()
        .into_iter()
        .chain(catalog::d2_endo_catalog())
        .map(|(n, r)| (n.to_string(), r))
        .collect();
    for i in 0..cfg.cases_or(100) {
        let x = gen.small_set();
        let y = gen.small_set();
        rels.push((format!("random-{i}"), gen.equivariant_rel(&x, &y)));
    }
    let mut incl = Tally::new("injective-support-inclusion");
    let mut image_supp = Tally::new("injective-image-support");
    for (name, r) in &rels {
        let u = cfg.universe(&[r], &[]);
        let pairs = u.pairs(r);
        let injective = Both::new(
            r.check(Property::Injective).unwrap_or(false),
            brute::pair_check(&pairs, Property::Injective),
        );
        incl.saw_universe(&u);
        incl.record(
            Outcome::implies(
                injective,
                Both::new(
                    r.pairs().all(|(x, y)| x.support().is_subset(&y.support())),
                    pairs
                        .iter()
                        .all(|(x, y)| x.support().is_subset(&y.support())),
                ),
            ),
            || name.clone(),
        );
        let sym = r
            .pairs()
            .all(|(x, _)| r.direct_image(&OrbitSet::singleton(x)).least_support() == x.support());
        let mut images: HashMap<&Value, BTreeSet<Value>> = HashMap::new();
        for (x, y) in &pairs {
            images.entry(x).or_default().insert(y.clone());
        }
        let oracle = images
            .iter()
            .all(|(x, ys)| brute::least_support_of(ys, &u) == x.support());
        image_supp.saw_universe(&u);
        image_supp.record(Outcome::implies(injective, Both::new(sym, oracle)), || {
            name.clone()
        });
    }
    out.extend([incl, image_supp].map(Tally::finish));
    out
}

/// `{(x, y) ∈ R : x is the only element related to y}`.
fn sole_pairs(r: &FsRel) -> FsRel {
    let shared = FsRel::compose(&r.inverse(), r)
        .expect("typed")
        .difference(&FsRel::identity(r.dom()));
    let crowded = FsRel::compose(r, &shared).expect("typed");
    r.difference(&crowded)
}

/// Every `x` has some `y` that it alone reaches.
fn every_point_has_a_private_image(r: &FsRel, u: &Universe) -> Both {
    let sym = sole_pairs(r).domain_set().same_set(r.dom());
    let wide = u.extended(r.dom().max_free_support() + r.cod().max_free_support());
    let pairs = wide.pairs(r);
    let mut sources: HashMap<&Value, usize> = HashMap::new();
    for (_, y) in &pairs {
        *sources.entry(y).or_default() += 1;
    }
    let private: HashSet<&Value> = pairs
        .iter()
        .filter(|(_, y)| sources[y] == 1)
        .map(|(x, _)| x)
        .collect();
    let oracle = u.members(r.dom()).iter().all(|x| private.contains(x));
    Both::new(sym, oracle)
}

/// Is `K ↦ R→(K)` injective on the level elements at `A`, and is `Dom R = X`?
fn image_map_injective(r: &FsRel, u: &Universe) -> Option<Both> {
    let k = r.dom().max_free_support();
    let a = first_atoms(k);
    let level = Level::new(r.dom(), a.clone(), 8).ok()?;
    let target = Level::new(r.cod(), a, 16).ok()?;
    let mut seen = HashSet::new();
    let mut sym = true;
    for mask in 0..level.size() {
        let image = r.direct_image(&level.element(mask));
        sym &= seen.insert(target.decompose(&image).ok()?);
    }
    let wide = u.extended(k);
    let mut images: HashMap<Value, BTreeSet<Value>> = HashMap::new();
    for (x, y) in wide.pairs(r) {
        if u.contains(&y) {
            images.entry(x).or_default().insert(y);
        }
    }
    let per_descriptor: Vec<BTreeSet<Value>> = level
        .descriptors()
        .iter()
        .map(|d| {
            wide.members(d)
                .iter()
                .filter_map(|x| images.get(x))
                .flatten()
                .cloned()
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let mut oracle = true;
    for mask in 0..level.size() {
        let image: BTreeSet<Value> = per_descriptor
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, s)| s.iter().cloned())
            .collect();
        oracle &= seen.insert(image);
    }
    let total = Both::new(
        r.domain_set().same_set(r.dom()),
        brute::domain(r, u) == u.members(r.dom()),
    );
    Some(Both::new(sym, oracle).and(total))
}

/// Relations whose direct image is a well-behaved partial surjective map.
fn map_like() -> Vec<(&'static str, FsRel)> {
    let d = catalog::d();
    let dxd = catalog::dxd();
    let proj = FsRel::by_predicate(&dxd, &d, |p, a| p.as_pair().map(|(x, _)| x) == Some(a));
    vec![
        ("first-projection", catalog::first_projection()),
        ("swap-D2", catalog::swap()),
        ("diag-D", FsRel::identity(&d)),
        ("projection-DxD", proj),
        ("constant-theta", catalog::constant_theta()),
    ]
}

pub(super) fn relations(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let mut gen = Gen::new(cfg.seed);
    let mut out = Vec::new();
    let n = cfg.cases_or(100);

    let mut t = Tally::new("injective-symmetric-equal-supports");
    let mut endo: Vec<(String, FsRel)> = catalog::sigma_catalog()
        .into_iter()
        .chain(catalog::d2_endo_catalog())
        .filter(|(_, r)| r.dom().same_set(r.cod()))
        .map(|(n, r)| (n.to_string(), r))
        .collect();
    for i in 0..n {
        let x = gen.small_set();
        let r = gen.equivariant_rel(&x, &x);
        endo.push((format!("random-{i}"), catalog::symmetric_closure(&r)));
    }
    for (name, r) in &endo {
        let u = cfg.universe(&[r], &[]);
        let pairs = u.pairs(r);
        let premise = Both::new(
            r.check(Property::Injective).unwrap_or(false)
                && r.check(Property::Symmetric).unwrap_or(false),
            brute::pair_check(&pairs, Property::Injective)
                && brute::pair_check(&pairs, Property::Symmetric),
        );
        let conclusion = Both::new(
            r.pairs().all(|(x, y)| x.support() == y.support()),
            pairs.iter().all(|(x, y)| x.support() == y.support()),
        );
        t.saw_universe(&u);
        t.record(Outcome::implies(premise, conclusion), || name.clone());
    }
    out.push(t.finish());

    let mut t = Tally::new("indecomposable-surjective");
    for _ in 0..n {
        let x = gen.small_set();
        let y = gen.small_set();
        let r = gen.equivariant_rel(&x, &y);
        let u = cfg.universe(&[&r], &[]);
        let single = y.is_indecomposable().unwrap_or(false);
        let premise = Both::new(!r.is_empty() && single, !u.pairs(&r).is_empty() && single);
        t.saw_universe(&u);
        t.record_result(
            r.check(Property::Surjective).map(|s| {
                Outcome::implies(
                    premise,
                    Both::new(s, brute::check(&r, Property::Surjective, &u)),
                )
            }),
            || format!("R = {r}"),
        );
    }
    out.push(t.finish());

    let mut t = Tally::new("preimage-intersection");
    let maps = map_like();
    for i in 0..n {
        let r = if i % 2 == 0 {
            gen.pick(&maps).1.clone()
        } else {
            let x = gen.small_set();
            let y = gen.small_set();
            gen.equivariant_rel(&x, &y)
        };
        let a = gen.subset(r.cod(), 2);
        let b = gen.subset(r.cod(), 2);
        let u = cfg.universe(&[&r], &[&a, &b]);
        let premise = Both::new(
            r.check(Property::PartialSurjectiveMap).unwrap_or(false),
            brute::check(&r, Property::PartialSurjectiveMap, &u),
        );
        let sym = r
            .inverse_image(&a.intersect(&b))
            .same_set(&r.inverse_image(&a).intersect(&r.inverse_image(&b)));
        let ia = brute::inverse_image(&r, &a, &u);
        let ib = brute::inverse_image(&r, &b, &u);
        let both: BTreeSet<Value> = ia.intersection(&ib).cloned().collect();
        let oracle = brute::inverse_image(&r, &a.intersect(&b), &u) == both;
        t.saw_universe(&u);
        t.record(Outcome::implies(premise, Both::new(sym, oracle)), || {
            format!("R = {r}, A = {a}, B = {b}")
        });
    }
    out.push(t.finish());

    let mut ti = Tally::new("private-images-iff-image-injective");
    let mut ps = Tally::new("private-preimages-iff-preimage-injective");
    for i in 0..n {
        let r = if i % 3 == 0 {
            gen.pick(&maps).1.clone()
        } else {
            let x = gen.small_set();
            let y = gen.small_set();
            gen.equivariant_rel(&x, &y)
        };
        for (t, rel) in [(&mut ti, r.clone()), (&mut ps, r.inverse())] {
            let u = cfg.universe(&[&rel], &[]);
            if let Some(conclusion) = image_map_injective(&rel, &u) {
                t.saw_universe(&u);
                let premise = every_point_has_a_private_image(&rel, &u);
                t.record(Outcome::iff(premise, conclusion), || format!("R = {rel}"));
            }
        }
    }
    out.extend([ti, ps].map(Tally::finish));

    let mut t = Tally::new("only-injective-on-D");
    let d = catalog::d();
    let candidates = FsRel::candidate_orbits(&d, &d, &AtomSet::new());
    let u = cfg.universe(&[&FsRel::full(&d, &d)], &[]);
    for mask in 0..1u32 << candidates.len() {
        let chosen = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, g)| g.clone())
            .collect();
        let r = FsRel::from_orbits(&d, &d, &AtomSet::new(), chosen);
        let pairs = u.pairs(&r);
        let injective = Both::new(
            r.check(Property::Injective).unwrap_or(false),
            brute::pair_check(&pairs, Property::Injective),
        );
        let diagonal = Both::new(
            r.rel_equal(&FsRel::identity(&d)),
            pairs == brute::identity(&d, &u),
        );
        let nonempty = Both::new(!r.is_empty(), !pairs.is_empty());
        t.saw_universe(&u);
        t.record(Outcome::iff(injective.and(nonempty), diagonal), || {
            format!("R = {r}")
        });
    }
    out.push(t.finish());
    out
}

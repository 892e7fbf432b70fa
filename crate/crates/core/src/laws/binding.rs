use crate::binding::BindingOp;
use crate::catalog::{self, Gen};
use crate::oracle::{brute, PairSet, Universe};
use crate::orbitset::OrbitSet;
use crate::relation::{FsRel, Property};
use crate::sigma::{restrict_rho, sigma, sigma_full};
use crate::value::Value;

use super::{Both, LawCheck, Outcome, SuiteConfig, Tally};

fn equal_free<'a>(l: &BindingOp, mut pairs: impl Iterator<Item = (&'a Value, &'a Value)>) -> bool {
    pairs.all(|(x, y)| l.free_support(x) == l.free_support(y))
}

fn sym_equal_free(l: &BindingOp, r: &FsRel) -> bool {
    equal_free(l, r.pairs())
}

fn oracle_equal_free(l: &BindingOp, pairs: &PairSet) -> bool {
    equal_free(l, pairs.iter().map(|(x, y)| (x, y)))
}

fn is_equivalence(e: &FsRel, pairs: &PairSet, u: &Universe) -> Both {
    let sym = [
        Property::Equivariant,
        Property::Reflexive,
        Property::Symmetric,
        Property::Transitive,
    ]
    .iter()
    .all(|&p| e.check(p).unwrap_or(false));
    let oracle = brute::invariant_under_swaps(pairs, u)
        && brute::identity(e.dom(), u).is_subset(pairs)
        && brute::pair_check(pairs, Property::Symmetric)
        && brute::pair_check(pairs, Property::Transitive);
    Both::new(sym, oracle)
}

/// Equivariant endo-relations to feed binder laws.
fn test_relations(x: &OrbitSet, gen: &mut Gen, n: usize) -> Vec<(String, FsRel)> {
    let mut out: Vec<(String, FsRel)> = if x.same_set(&catalog::d2()) {
        catalog::d2_endo_catalog()
            .into_iter()
            .map(|(n, r)| (n.to_string(), r))
            .collect()
    } else {
        vec![
            ("diag".to_string(), FsRel::identity(x)),
            ("fresh".to_string(), FsRel::freshness(x, x)),
            ("full".to_string(), FsRel::full(x, x)),
            ("empty".to_string(), FsRel::empty(x, x)),
        ]
    };
    for i in 0..n {
        let r = gen.equivariant_rel(x, x);
        out.push((format!("random-{i} {r}"), r));
    }
    out
}

/// The laws of a binding operator `l` and its equivalence `≡_l`.
pub fn binder_laws(l: &BindingOp, cfg: &SuiteConfig) -> Vec<LawCheck> {
    let x = l.base();
    let e = l.equivalence();
    let u = cfg.universe(&[&e], &[]);
    let e_pairs = u.pairs(&e);
    let name = format!("{l:?}");
    let mut gen = Gen::new(cfg.seed);
    let mut out = Vec::new();

    let mut t = Tally::new("binder-equivalence");
    t.saw_universe(&u);
    t.record(Outcome::holds(is_equivalence(&e, &e_pairs, &u)), || {
        name.clone()
    });
    out.push(t.finish());

    let mut t = Tally::new("binder-free-support");
    t.saw_universe(&u);
    t.record(
        Outcome::holds(Both::new(
            sym_equal_free(l, &e),
            oracle_equal_free(l, &e_pairs),
        )),
        || name.clone(),
    );
    out.push(t.finish());

    let mut t = Tally::new("binder-sigma-diagonal");
    t.saw_universe(&u);
    let delta = FsRel::identity(x);
    t.record_result(
        sigma_full(&e, &delta).map(|s| {
            let oracle = brute::sigma(&e, x, &restrict_rho(&e, x, &delta), &u);
            Outcome::holds(Both::new(
                s.is_subset(&e) && sym_equal_free(l, &s),
                oracle.is_subset(&e_pairs) && oracle_equal_free(l, &oracle),
            ))
        }),
        || name.clone(),
    );
    out.push(t.finish());

    let mut t = Tally::new("binder-diagonal-meets");
    for (rname, r) in test_relations(x, &mut gen, cfg.cases_or(20)) {
        let u = cfg.universe(&[&e, &r], &[]);
        let res = sigma_full(&e, &r).map(|s| {
            let oracle = brute::sigma(&e, x, &restrict_rho(&e, x, &r), &u);
            let meets = Both::new(
                !s.intersect(&FsRel::identity(x)).is_empty(),
                oracle.iter().any(|(a, b)| a == b),
            );
            let r_pairs = u.pairs(&r);
            let e_local = u.pairs(&e);
            let shared = Both::new(
                !e.intersect(&r).is_empty(),
                r_pairs.iter().any(|p| e_local.contains(p)),
            );
            Outcome::implies(meets, shared)
        });
        t.saw_universe(&u);
        t.record_result(res, || format!("{name}, R = {rname}"));
    }
    out.push(t.finish());

    let mut t = Tally::new("binder-same-free-injective");
    let f = l.same_free_rel();
    for i in 0..cfg.cases_or(20) {
        let s = if i == 0 { x.clone() } else { gen.subset(x, 0) };
        let rho = e
            .intersect(&FsRel::full(x, &f.direct_image(&s)))
            .retyped(x, &f.direct_image(&s));
        let u = cfg.universe(&[&f, &e], &[&s]);
        let f_pairs = u.pairs(&f);
        let injective = Both::new(
            f.check(Property::Injective).unwrap_or(false),
            brute::pair_check(&f_pairs, Property::Injective),
        );
        let res = sigma(&f, &s, &rho).map(|sg| {
            let oracle = brute::sigma(&f, &s, &rho, &u);
            Outcome::implies(
                injective,
                Both::new(
                    sg.retyped(x, x).is_subset(&e),
                    oracle.is_subset(&u.pairs(&e)),
                ),
            )
        });
        t.saw_universe(&u);
        t.record_result(res, || format!("{name}, S = {s}"));
    }
    out.push(t.finish());
    out
}

/// The canonical binders on `D^(2)` and `D`, and their laws.
pub(super) fn binding(cfg: &SuiteConfig) -> Vec<LawCheck> {
    let d2 = catalog::d2();
    let d = catalog::d();
    let binders = [
        BindingOp::empty_selector(d2.clone()),
        BindingOp::full_selector(d2.clone()),
        BindingOp::from_positions(d2, vec![vec![0]]),
        BindingOp::empty_selector(d.clone()),
        BindingOp::full_selector(d),
    ];
    let mut merged: Vec<LawCheck> = Vec::new();
    for l in binders {
        let l = l.expect("valid binder");
        for c in binder_laws(&l, cfg) {
            match merged.iter_mut().find(|m| m.law == c.law) {
                Some(m) => merge(m, c),
                None => merged.push(c),
            }
        }
    }
    merged
}

pub(super) fn merge(into: &mut LawCheck, c: LawCheck) {
    into.cases += c.cases;
    into.premise_hits += c.premise_hits;
    into.violations += c.violations;
    into.oracle_violations += c.oracle_violations;
    into.disagreements += c.disagreements;
    into.errors += c.errors;
    if into.witness.is_none() {
        into.witness = c.witness;
    }
    into.universe = into.universe.max(c.universe);
}

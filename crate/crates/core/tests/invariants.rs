use std::collections::BTreeSet;

use nomrel::catalog::{self, Gen};
use nomrel::oracle::{brute, Universe};
use nomrel::sigma::{restrict_rho, sigma};
use nomrel::*;
use proptest::prelude::*;

fn atom() -> impl Strategy<Value = Atom> {
    (0u32..8).prop_map(Atom::new)
}

fn perm() -> impl Strategy<Value = FinPerm> {
    prop::collection::vec((atom(), atom()), 0..5).prop_map(|swaps| {
        swaps.into_iter().fold(FinPerm::identity(), |p, (a, b)| {
            FinPerm::transposition(a, b).compose(&p)
        })
    })
}

fn value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        (0u32..6).prop_map(Value::atom),
        Just(Value::Unit),
        prop_oneof![Just("p"), Just("q")].prop_map(Value::label),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(Value::tuple),
            prop::collection::vec(inner, 1..4).prop_map(Value::set),
        ]
    })
}

fn probes(v: &Value) -> AtomSet {
    let supp = v.support();
    let mut all = supp.clone();
    all.extend(fresh_atoms(&supp, supp.len() + 2));
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compose_applies_right_first(p in perm(), q in perm(), a in atom()) {
        prop_assert_eq!(p.compose(&q).apply(a), p.apply(q.apply(a)));
    }

    #[test]
    fn inverse_has_same_support(p in perm()) {
        prop_assert_eq!(p.inverse().support(), p.support());
    }

    #[test]
    fn perm_is_product_of_its_transpositions(p in perm()) {
        let ts = p.transpositions();
        let supp = p.support();
        prop_assert!(ts.iter().all(|(a, b)| supp.contains(a) && supp.contains(b)));
        let rebuilt = ts
            .iter()
            .rev()
            .fold(FinPerm::identity(), |acc, &(a, b)| FinPerm::transposition(a, b).compose(&acc));
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn support_is_equivariant(p in perm(), v in value()) {
        prop_assert_eq!(v.act(&p).support(), p.act_atoms(&v.support()));
    }

    #[test]
    fn support_is_least_by_swaps(v in value()) {
        let supp = v.support();
        let u = probes(&v);
        prop_assert!(v.swap_supports(&supp, &u).unwrap());
        for a in &supp {
            let mut smaller = supp.clone();
            smaller.remove(a);
            prop_assert!(!v.swap_supports(&smaller, &u).unwrap());
        }
    }

    #[test]
    fn canonical_form_is_orbit_invariant(p in perm(), v in value()) {
        prop_assert_eq!(v.act(&p).canonicalize().0, v.canonicalize().0);
    }

    #[test]
    fn action_distributes(p in perm(), xs in prop::collection::vec(value(), 1..4)) {
        let acted: Vec<Value> = xs.iter().map(|x| x.act(&p)).collect();
        prop_assert_eq!(Value::tuple(xs.clone()).act(&p), Value::tuple(acted.clone()));
        prop_assert_eq!(Value::set(xs).act(&p), Value::set(acted));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_is_closed_under_fixing_perms(seed in any::<u64>(), p in perm()) {
        let mut g = Gen::new(seed);
        let x = g.base_set();
        let s = g.subset(&x, 2);
        let u = Universe::around(s.pinned(), 4);
        for v in u.members(&s) {
            if p.fixes_all(s.pinned()) {
                prop_assert!(s.member(&v.act(&p)));
            }
        }
    }

    #[test]
    fn refine_keeps_members(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let x = g.small_set();
        let s = g.subset(&x, 1);
        let b: AtomSet = s.pinned().iter().copied().chain(g.atoms(4, 2)).collect();
        let r = s.refine(&b).unwrap();
        let u = Universe::around(&b, 3);
        prop_assert_eq!(u.members(&s), u.members(&r));
    }

    #[test]
    fn set_ops_are_pointwise(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let x = g.small_set();
        let a = g.subset(&x, 2);
        let b = g.subset(&x, 2);
        let pinned: AtomSet = a.pinned().union(b.pinned()).copied().collect();
        let u = Universe::around(&pinned, 4);
        let (ma, mb) = (u.members(&a), u.members(&b));
        prop_assert_eq!(u.members(&a.union(&b)), ma.union(&mb).cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(u.members(&a.intersect(&b)), ma.intersection(&mb).cloned().collect::<BTreeSet<_>>());
        prop_assert_eq!(u.members(&a.difference(&b)), ma.difference(&mb).cloned().collect::<BTreeSet<_>>());
    }

    #[test]
    fn equivariant_subsets_have_empty_support(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let x = g.base_set();
        let s = g.subset(&x, 0);
        prop_assert!(s.least_support().is_empty());
        let u = Universe::covering(&[], &[&s]);
        prop_assert!(brute::least_support_of(&u.members(&s), &u).is_empty());
    }

    #[test]
    fn star_and_dot_actions_agree(seed in any::<u64>(), p in perm()) {
        let mut g = Gen::new(seed);
        let x = g.small_set();
        let y = g.small_set();
        let r = g.fs_rel(&x, &y, 2);
        prop_assert!(r.act_star(&p).rel_equal(&r.act_dot(&p)));
    }

    #[test]
    fn compose_matches_oracle(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let x = g.small_set();
        let y = g.small_set();
        let z = g.small_set();
        let r = g.fs_rel(&x, &y, 1);
        let s = g.fs_rel(&y, &z, 1);
        let c = FsRel::compose(&s, &r).unwrap();
        let u = Universe::covering(&[&r, &s], &[]);
        prop_assert_eq!(u.pairs(&c), brute::compose(&s, &r, &u));
    }

    #[test]
    fn sigma_matches_oracle(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let x = g.small_set();
        let r = g.equivariant_rel(&x, &x);
        let s = g.subset(&x, 1);
        let rho = restrict_rho(&r, &s, &g.fs_rel(&x, &x, 1));
        let out = sigma(&r, &s, &rho).unwrap();
        let u = Universe::covering(&[&r, &rho], &[&s]);
        prop_assert_eq!(u.pairs(&out), brute::sigma(&r, &s, &rho, &u));
    }

    #[test]
    fn binder_equivalences_are_equivalences(pick in 0usize..3) {
        let d2 = catalog::d2();
        let l = match pick {
            0 => binding::BindingOp::empty_selector(d2),
            1 => binding::BindingOp::full_selector(d2),
            _ => binding::BindingOp::from_positions(d2, vec![vec![0]]),
        }
        .unwrap();
        let e = l.equivalence();
        for p in [Property::Equivariant, Property::Reflexive, Property::Symmetric, Property::Transitive] {
            prop_assert!(e.check(p).unwrap());
        }
        prop_assert!(e.is_subset(&l.same_free_rel()));
    }
}

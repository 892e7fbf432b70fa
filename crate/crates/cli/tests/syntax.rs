use nomrel_cli::ast::{AssertKind, RelExpr, Script, Selection, SetExpr, Stmt, ValueExpr};
use nomrel_cli::parse;
use proptest::prelude::*;

const SCRIPTS: [&str; 2] = [
    include_str!("../scripts/surj_not_epic.nr"),
    include_str!("../scripts/tour.nr"),
];

#[test]
fn bundled_scripts_parse_and_reprint() {
    for text in SCRIPTS {
        let script = parse(text).unwrap();
        assert!(!script.stmts.is_empty());
        assert_eq!(parse(&script.to_string()).unwrap(), script);
    }
}

#[test]
fn grammar_examples() {
    let s = parse("set D1 = orbits [ a ] pinned {}").unwrap();
    assert_eq!(
        s.stmts,
        vec![Stmt::Set {
            name: "D1".into(),
            def: SetExpr::Orbits {
                values: vec![ValueExpr::Atom("a".into())],
                pinned: vec![]
            },
        }]
    );
    let s = parse("rel R : D1 -> D1 = fresh\ncheck R symmetric\nassert subset R R").unwrap();
    assert_eq!(
        s.stmts[0],
        Stmt::Rel {
            name: "R".into(),
            dom: "D1".into(),
            cod: "D1".into(),
            def: RelExpr::Fresh
        }
    );
    assert_eq!(
        s.stmts[2],
        Stmt::Assert {
            kind: AssertKind::Subset,
            left: "R".into(),
            right: "R".into()
        }
    );
}

#[test]
fn syntax_errors_point_at_the_offending_token() {
    let cases = [
        ("set X = orbits [a pinned {}", (1, 19), "`,`"),
        ("set X =\n  oribts [a] pinned {}", (2, 3), "set expression"),
        ("rel R : X -> Y = inc\n", (2, 1), "size bound"),
        ("binder b on X = { orbit: {0} }", (1, 19), "orbitN"),
        ("suite sigma --speed 3", (1, 13), "--seed"),
        ("check R", (1, 8), "property"),
        ("set X = orbits [a] pinned {} %", (1, 30), "token"),
    ];
    for (text, pos, expected) in cases {
        let e = parse(text).unwrap_err();
        assert_eq!((e.line, e.col), pos, "{text}: {e}");
        assert!(e.expected.contains(expected), "{text}: {e}");
    }
}

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z][A-Za-z0-9_-]{0,5}"
}

fn label() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{0,3}"
}

fn value() -> impl Strategy<Value = ValueExpr> {
    let leaf = prop_oneof![
        name().prop_map(ValueExpr::Atom),
        label().prop_map(ValueExpr::Label),
        Just(ValueExpr::Unit),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..4).prop_map(ValueExpr::Tuple),
            prop::collection::vec(inner, 0..3).prop_map(ValueExpr::Set),
        ]
    })
}

fn names(max: usize) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(name(), 0..max)
}

fn set_expr() -> impl Strategy<Value = SetExpr> {
    prop_oneof![
        (prop::collection::vec(value(), 0..3), names(3))
            .prop_map(|(values, pinned)| SetExpr::Orbits { values, pinned }),
        Just(SetExpr::Atoms),
        Just(SetExpr::AtomPairs),
        Just(SetExpr::DistinctPairs),
        prop::collection::vec(label(), 0..3).prop_map(SetExpr::Discrete),
        Just(SetExpr::Unit),
        (0usize..4).prop_map(SetExpr::Powerset),
        (name(), name()).prop_map(|(a, b)| SetExpr::Union(a, b)),
        (name(), name()).prop_map(|(a, b)| SetExpr::Product(a, b)),
    ]
}

fn rel_expr() -> impl Strategy<Value = RelExpr> {
    prop_oneof![
        (prop::collection::vec((value(), value()), 0..3), names(3))
            .prop_map(|(pairs, pinned)| RelExpr::Gen { pairs, pinned }),
        Just(RelExpr::Fresh),
        Just(RelExpr::Supp),
        Just(RelExpr::Leq),
        (0usize..5).prop_map(RelExpr::Inc),
        Just(RelExpr::Id),
        Just(RelExpr::Full),
        Just(RelExpr::Empty),
    ]
}

fn selection() -> impl Strategy<Value = Selection> {
    prop_oneof![
        Just(Selection::Empty),
        Just(Selection::Full),
        prop::collection::vec((0usize..4, prop::collection::vec(0u32..3, 0..3)), 0..3)
            .prop_map(Selection::Orbits),
    ]
}

fn stmt() -> impl Strategy<Value = Stmt> {
    prop_oneof![
        (name(), set_expr()).prop_map(|(name, def)| Stmt::Set { name, def }),
        (name(), name(), name(), rel_expr()).prop_map(|(name, dom, cod, def)| Stmt::Rel {
            name,
            dom,
            cod,
            def
        }),
        (name(), name()).prop_map(|(rel, prop)| Stmt::Check { rel, prop }),
        (name(), name(), name()).prop_map(|(outer, inner, name)| Stmt::Compose {
            outer,
            inner,
            name
        }),
        (name(), name()).prop_map(|(rel, name)| Stmt::Inverse { rel, name }),
        (name(), name(), name(), any::<bool>()).prop_map(|(rel, set, name, inverse)| Stmt::Image {
            rel,
            set,
            name,
            inverse
        }),
        (name(), name(), name(), name()).prop_map(|(rel, set, rho, name)| Stmt::Sigma {
            rel,
            set,
            rho,
            name
        }),
        (name(), name()).prop_map(|(law, rel)| Stmt::SigmaLaw { law, rel }),
        (name(), name(), selection()).prop_map(|(name, set, selection)| Stmt::Binder {
            name,
            set,
            selection
        }),
        (name(), name()).prop_map(|(binder, name)| Stmt::Equiv { binder, name }),
        (name(), name()).prop_map(|(binder, name)| Stmt::SameFree { binder, name }),
        (name(), prop::collection::vec(names(3), 1..4))
            .prop_map(|(set, levels)| Stmt::Presheaf { set, levels }),
        name().prop_map(|name| Stmt::Demo { name }),
        (name(), any::<Option<u64>>(), any::<Option<u16>>()).prop_map(|(name, seed, cases)| {
            Stmt::Suite {
                name,
                seed,
                cases: cases.map(usize::from),
            }
        }),
        (
            prop_oneof![
                Just(AssertKind::Equal),
                Just(AssertKind::Subset),
                Just(AssertKind::Distinct)
            ],
            name(),
            name()
        )
            .prop_map(|(kind, left, right)| Stmt::Assert { kind, left, right }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_scripts_parse_back(stmts in prop::collection::vec(stmt(), 0..8)) {
        let script = Script { stmts };
        let printed = script.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), script, "{}", printed);
    }

    #[test]
    fn parsing_is_stable_under_reprinting(stmts in prop::collection::vec(stmt(), 0..8)) {
        let once = Script { stmts }.to_string();
        let twice = parse(&once).unwrap().to_string();
        prop_assert_eq!(once, twice);
    }
}

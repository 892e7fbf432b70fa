//! Acceptance criteria, each reduced to a pass/fail verdict over the law
//! suites.

use nomrel::laws::{run_suite, LawCheck, SuiteConfig};

pub struct Verdict {
    pub ok: bool,
    pub detail: String,
}

fn suite(name: &str) -> Vec<LawCheck> {
    run_suite(name, &SuiteConfig::default()).expect("known suite")
}

fn find<'a>(checks: &'a [LawCheck], law: &str) -> &'a LawCheck {
    checks
        .iter()
        .find(|c| c.law == law)
        .unwrap_or_else(|| panic!("no law {law}"))
}

/// All listed laws pass with at least `min_cases` cases each.
fn all_pass(checks: &[LawCheck], laws: &[&str], min_cases: usize) -> Verdict {
    let mut failures = Vec::new();
    for law in laws {
        let c = find(checks, law);
        if !c.passed() || c.cases < min_cases {
            failures.push(c.to_string());
        }
    }
    let total: usize = laws.iter().map(|l| find(checks, l).cases).sum();
    Verdict {
        ok: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{} laws, {total} cases", laws.len())
        } else {
            failures.join("; ")
        },
    }
}

fn every(checks: &[LawCheck], min_cases: usize) -> Verdict {
    let names: Vec<&str> = checks.iter().map(|c| c.law.as_str()).collect();
    all_pass(checks, &names, min_cases)
}

fn c1() -> Verdict {
    all_pass(&suite("actions"), &["star-equals-dot"], 500)
}

fn c2() -> Verdict {
    every(&suite("rrr"), 200)
}

fn c3() -> Verdict {
    all_pass(&suite("compose"), &["compose-matches-oracle"], 500)
}

fn c4() -> Verdict {
    every(&suite("freshness"), 1)
}

fn c5() -> Verdict {
    let checks = suite("support");
    let mut v = all_pass(&checks, &["support-equivariance"], 1000);
    let w = all_pass(
        &checks,
        &["image-support-bound", "preimage-support-bound"],
        300,
    );
    let x = all_pass(
        &checks,
        &["injective-support-inclusion", "injective-image-support"],
        1,
    );
    v.ok &= w.ok && x.ok;
    v.detail = format!("{}; {}; {}", v.detail, w.detail, x.detail);
    v
}

fn c6_agreement() -> Verdict {
    let checks = suite("sigma");
    let disagreeing: Vec<String> = checks
        .iter()
        .filter(|c| !c.agrees())
        .map(|c| c.to_string())
        .collect();
    let diag = find(&checks, "injective-iff-diagonal");
    let ok = disagreeing.is_empty() && diag.passed();
    Verdict {
        ok,
        detail: if ok {
            format!("{} laws agree with the oracle; {diag}", checks.len())
        } else {
            format!("{}; {diag}", disagreeing.join("; "))
        },
    }
}

fn c6_laws_hold() -> Verdict {
    every(&suite("sigma"), 1)
}

fn c7() -> Verdict {
    let checks = suite("stochastic");
    let mut v = every(&checks, 1);
    for law in ["iso-preserves-welldefined", "iso-reflects-constant"] {
        v.ok &= find(&checks, law).cases >= 50;
    }
    let map_cases: usize = checks
        .iter()
        .filter(|c| c.law.starts_with("map-preserves"))
        .map(|c| c.cases)
        .sum();
    v.ok &= map_cases >= 100;
    v
}

fn c8() -> Verdict {
    every(&suite("binding"), 1)
}

fn c9_descriptor_counts() -> Verdict {
    let checks = suite("presheaf");
    all_pass(&checks, &["descriptor-counts"], 1)
}

fn c9_naturality_and_colimits() -> Verdict {
    let checks = suite("presheaf");
    let mut v = all_pass(&checks, &["rstar-naturality"], 20);
    let w = all_pass(&checks, &["colimit-size"], 10);
    v.ok &= w.ok;
    v.detail = format!("{}; {}", v.detail, w.detail);
    v
}

fn c9_not_faithful() -> Verdict {
    all_pass(&suite("presheaf"), &["not-faithful"], 1)
}

fn c10() -> Verdict {
    every(&suite("discrepancy"), 1)
}

pub type Criterion = (&'static str, fn() -> Verdict);

pub const CRITERIA: [Criterion; 13] = [
    ("1 action coincidence", c1),
    ("2 equivariance clauses", c2),
    ("3 composition oracle", c3),
    ("4 freshness fixtures", c4),
    ("5 support laws", c5),
    ("6 sigma laws: oracle agreement", c6_agreement),
    ("6 sigma laws: every law holds", c6_laws_hold),
    ("7 stochastic maps", c7),
    ("8 binding", c8),
    (
        "9 presheaf: descriptor counts 1, 2, 4",
        c9_descriptor_counts,
    ),
    (
        "9 presheaf: naturality and colimits",
        c9_naturality_and_colimits,
    ),
    ("9 presheaf: non-faithfulness fixture", c9_not_faithful),
    ("10 composition discrepancy fixture", c10),
];

use nomrel::laws::{run_suite, SuiteConfig, SUITES};

/// Laws with a known counterexample among the fixtures.
const REFUTED: [&str; 3] = ["reflexive-contraction", "descriptor-counts", "not-faithful"];

fn run_all(cfg: &SuiteConfig) {
    for name in SUITES {
        for check in run_suite(name, cfg).expect("known suite") {
            assert!(check.agrees(), "{name}: {check}");
            if !REFUTED.contains(&check.law.as_str()) {
                assert!(check.passed(), "{name}: {check}");
            }
        }
    }
}

#[test]
fn small_runs_agree_with_oracle() {
    run_all(&SuiteConfig {
        cases: Some(8),
        ..SuiteConfig::default()
    });
}

#[test]
fn wider_universes_change_nothing() {
    for widen in [1, 2] {
        run_all(&SuiteConfig {
            cases: Some(4),
            seed: 11 + widen as u64,
            widen,
            ..SuiteConfig::default()
        });
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suite("nope", &SuiteConfig::default()).is_none());
}

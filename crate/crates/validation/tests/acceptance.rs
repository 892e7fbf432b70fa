//! Prints one line per criterion and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use nomrel_validation::CRITERIA;

fn main() -> ExitCode {
    let mut failed = 0;
    for (name, run) in CRITERIA {
        let start = Instant::now();
        let v = run();
        failed += usize::from(!v.ok);
        println!(
            "criterion {name}: {} ({:.1}s) {}",
            if v.ok { "pass" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            v.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance checks failed");
        ExitCode::FAILURE
    }
}

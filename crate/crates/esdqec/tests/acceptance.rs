//! Acceptance criteria A1–A8 at their pinned tolerances, one line each.
//!
//! Runs without the libtest harness so the report reads top to bottom;
//! exits with status 1 if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use esdqec::verify::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--verbose");
    let mut failed = 0;
    for id in CRITERIA {
        let start = Instant::now();
        let criterion = run_criterion(id).expect("listed criterion");
        println!("{criterion} ({:.2?})", start.elapsed());
        if verbose || !criterion.passed() {
            print!("{}", criterion.details());
        }
        if !criterion.passed() {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Runs every verification suite once and prints one line per criterion.
//!
//! A criterion passes when all of its checks hold and it finishes within its
//! time budget. The process exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use krull_core::suites::SUITES;

const DEGREE: usize = 32;

fn main() -> ExitCode {
    let mut failed = 0;
    for (i, suite) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let report = suite.run(DEGREE);
        let elapsed = start.elapsed();
        let in_time = elapsed <= suite.budget;
        let ok = report.passed() && in_time;
        println!(
            "{} {:>2} {:<11} {:>4} checks  {:>8.2?} / {:?}  {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            suite.name,
            report.checks.len(),
            elapsed,
            suite.budget,
            suite.summary,
        );
        if report.checks.is_empty() {
            println!("       no checks were recorded");
        }
        for c in report.failures() {
            println!("       failed: {} {}", c.anchor, c.detail);
        }
        if !in_time {
            println!("       over budget");
        }
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", SUITES.len() - failed, SUITES.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

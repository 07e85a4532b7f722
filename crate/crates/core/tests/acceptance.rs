//! Runs the nine acceptance criteria and prints one line per criterion.

use std::process::ExitCode;

use qfock::checks::{run_criterion, CheckConfig};

fn main() -> ExitCode {
    let cfg = CheckConfig::default();
    println!("acceptance suite (seed {})", cfg.seed);
    let mut failed = 0;
    for id in 1..=9 {
        let r = run_criterion(id, &cfg);
        println!("{r}");
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

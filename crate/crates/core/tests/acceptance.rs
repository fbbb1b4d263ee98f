use std::process::ExitCode;

use blowup_core::acceptance::{run_suite, SuiteOptions};

fn main() -> ExitCode {
    // libtest flags such as --nocapture may be passed through; ignore them
    let outcomes = run_suite(&SuiteOptions::default());
    for o in &outcomes {
        println!("{o}");
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

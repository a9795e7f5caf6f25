//! Prints one PASS/FAIL line per acceptance criterion and exits non-zero
//! if any fails.

use std::process::ExitCode;

use schubert::acceptance::{run_one, CRITERIA};

fn main() -> ExitCode {
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for id in 1..=CRITERIA.len() {
        let result = run_one(id).expect("criterion exists");
        println!("{result}");
        failed += !result.passed as usize;
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

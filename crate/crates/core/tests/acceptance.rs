use std::process::ExitCode;
use std::time::Instant;

use bicolor_core::suite::run_criterion;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in ["A1", "A2", "A3", "A4", "A5", "A6", "A7"] {
        let start = Instant::now();
        let result = run_criterion(id).expect("known criterion");
        println!("{result} [{:.2?}]", start.elapsed());
        if !result.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}

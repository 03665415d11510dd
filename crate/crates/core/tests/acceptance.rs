//! Runs every acceptance criterion and prints one PASS/FAIL line each.
//! Optional arguments restrict the run to the given criterion ids.

use std::process::ExitCode;

use lazy_sliding::acceptance;

fn main() -> ExitCode {
    // libtest flags such as --nocapture are accepted and ignored
    let ids: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids = if ids.is_empty() {
        acceptance::CRITERIA.iter().map(|c| c.0).collect()
    } else {
        ids
    };
    let mut failed = 0;
    for id in &ids {
        match acceptance::run(*id) {
            Ok(report) => {
                println!("{}", report.line());
                failed += usize::from(!report.passed);
            }
            Err(e) => {
                println!("FAIL {id:>2}: {e}");
                failed += 1;
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", ids.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

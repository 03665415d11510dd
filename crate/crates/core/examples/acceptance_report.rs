//! Prints the acceptance report, one line per criterion.

fn main() {
    let mut failed = 0;
    for report in lazy_sliding::acceptance::run_all() {
        match report {
            Ok(r) => {
                failed += usize::from(!r.passed);
                println!("{}", r.line());
            }
            Err(e) => {
                failed += 1;
                println!("error: {e}");
            }
        }
    }
    std::process::exit(i32::from(failed > 0));
}

//! Run the built-in scenario catalog end to end and print the
//! expected-vs-computed verdicts, like `illab verify-all` but through the
//! library surface.
//!
//! ```bash
//! cargo run --example scenario_catalog
//! ```

use illab::scenario::verify_all;
use illab::tol::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let summary = verify_all(&tol, false);
    for entry in &summary.reports {
        match (&entry.report, &entry.error) {
            (Some(report), _) => {
                println!(
                    "{:28} {}",
                    entry.scenario,
                    if report.passed { "PASS" } else { "FAIL" }
                );
                if let Some(limit) = &report.limit {
                    if !limit.limit_generators.is_empty() {
                        println!("{:28}   limit: {}", "", limit.limit_generators.join(";  "));
                    }
                }
                for check in report.checks.iter().filter(|c| !c.pass) {
                    println!(
                        "{:28}   FAILED {}: expected {}, computed {}",
                        "", check.field, check.expected, check.computed
                    );
                }
            }
            (None, Some(e)) => println!("{:28} ERROR: {e}", entry.scenario),
            _ => {}
        }
    }
    println!(
        "\naggregate: {}",
        if summary.passed { "PASS" } else { "FAIL" }
    );
    std::process::exit(if summary.passed { 0 } else { 3 });
}

//! Define a scenario through the config-file surface (coordinate
//! expressions in eps, schedule, expectations) and run it.
//!
//! ```bash
//! cargo run --example custom_config
//! ```

use illab::config::{scenario_from_config, ConfigDoc};
use illab::scenario::run_scenario;

const CONFIG: &str = r#"
# a collinear-triple family with gamma = 3
[scenario]
name = gamma3
expected_classification = TripleCollinear_ManyDirections
expected_limit_ideal = z1*z2 ; z2^2 ; z1^3

[schedule]
eps0 = 0.1
ratio = 0.5
samples = 12

[family]
kind = expressions
p1 = 0 ; 0
p2 = eps ; 0
p3 = 0 ; eps
p4 = 3*eps ; 0
"#;

fn main() {
    let doc = ConfigDoc::parse(CONFIG).expect("config parses");
    let (scenario, tol) = scenario_from_config(&doc).expect("valid scenario");
    let report = run_scenario(&scenario, &tol, false).expect("pipeline");
    println!("scenario: {}", report.scenario);
    if let Some(c) = &report.classification {
        println!("classification: {}", c.tag);
    }
    if let Some(l) = &report.limit {
        println!("limit generators: {}", l.limit_generators.join(";  "));
        println!("certified: {}", l.certified);
    }
    for check in &report.checks {
        println!(
            "[{}] {}: expected {}, computed {}",
            if check.pass { "pass" } else { "FAIL" },
            check.field,
            check.expected,
            check.computed
        );
    }
    println!("passed: {}", report.passed);
}

//! Scenario runner and report emitter for the ideal-limit laboratory.
//!
//! Subcommands: classify | limit-ideal | green-gap | run | verify-all |
//! list-scenarios. Exit codes: 0 pass, 2 configuration error, 3 numeric
//! or verification failure.

use std::process::ExitCode;

use illab::config::{scenario_from_config, ConfigDoc};
use illab::error::Error;
use illab::geometry::ClassTag;
use illab::green::{gap_report, pairing_limits, CiMap, GapReport, SampleSpec};
use illab::scenario::{
    builtin, builtins, run_scenario, verify_all, RunReport, Scenario, SCHEMA_VERSION,
};
use illab::tol::{Precision, Tolerances};

struct Cli {
    command: String,
    scenario: Option<String>,
    config: Option<String>,
    json: Option<String>,
    csv: Option<String>,
    timings: bool,
    precision: Option<Precision>,
    tol_overrides: Vec<(String, f64)>,
}

const USAGE: &str = "\
usage: illab <command> [options]

commands:
  list-scenarios        print the built-in scenario catalog
  classify              limit directions and configuration class
  limit-ideal           limit of the vanishing ideals with certification
  green-gap             Green-candidate gap report (generic case)
  run                   full pipeline with expected-vs-computed checks
  verify-all            run every built-in scenario and aggregate

options:
  --scenario NAME       a built-in scenario (see list-scenarios)
  --config FILE         a scenario config file
  --json OUT            write a JSON report to OUT (`-` for stdout)
  --csv OUT             write per-sample gap rows (green-gap only)
  --tol-<name> VALUE    override a tolerance (e.g. --tol-chordal-eq 1e-5)
  --precision MODE      standard | extended
  --timings             include wall-clock timings in reports
";

fn parse_cli(mut args: impl Iterator<Item = String>) -> Result<Cli, String> {
    let command = args.next().ok_or_else(|| USAGE.to_string())?;
    let mut cli = Cli {
        command,
        scenario: None,
        config: None,
        json: None,
        csv: None,
        timings: false,
        precision: None,
        tol_overrides: Vec::new(),
    };
    while let Some(arg) = args.next() {
        let mut take = |name: &str| -> Result<String, String> {
            args.next().ok_or(format!("{name} needs a value"))
        };
        match arg.as_str() {
            "--scenario" => cli.scenario = Some(take("--scenario")?),
            "--config" => cli.config = Some(take("--config")?),
            "--json" => cli.json = Some(take("--json")?),
            "--csv" => cli.csv = Some(take("--csv")?),
            "--timings" => cli.timings = true,
            "--precision" => {
                cli.precision = Some(match take("--precision")?.as_str() {
                    "standard" => Precision::Standard,
                    "extended" => Precision::Extended,
                    other => return Err(format!("unknown precision `{other}`")),
                })
            }
            other if other.starts_with("--tol-") => {
                let name = other.trim_start_matches("--tol-").to_string();
                let value: f64 = take(other)?.parse().map_err(|e| format!("{other}: {e}"))?;
                cli.tol_overrides.push((name, value));
            }
            other => return Err(format!("unknown argument `{other}`\n\n{USAGE}")),
        }
    }
    Ok(cli)
}

fn resolve(cli: &Cli) -> Result<(Scenario, Tolerances), Error> {
    let (scenario, mut tol) = match (&cli.scenario, &cli.config) {
        (Some(name), None) => {
            let sc = builtin(name).ok_or_else(|| {
                Error::Config(format!(
                    "no built-in scenario `{name}`; see `illab list-scenarios`"
                ))
            })?;
            (sc, Tolerances::default())
        }
        (None, Some(path)) => {
            let src =
                std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{path}: {e}")))?;
            let doc = ConfigDoc::parse(&src).map_err(Error::Config)?;
            scenario_from_config(&doc).map_err(Error::Config)?
        }
        (Some(_), Some(_)) => {
            return Err(Error::Config("pass either --scenario or --config".into()))
        }
        (None, None) => {
            return Err(Error::Config(
                "this command needs --scenario NAME or --config FILE".into(),
            ))
        }
    };
    for (name, value) in &cli.tol_overrides {
        tol.set_by_name(name, *value).map_err(Error::Config)?;
    }
    if let Some(p) = cli.precision {
        tol.precision = p;
    }
    Ok((scenario, tol))
}

fn emit_json<T: serde::Serialize>(target: &Option<String>, value: &T) -> Result<(), Error> {
    if let Some(out) = target {
        let text = serde_json::to_string_pretty(value)
            .map_err(|e| Error::Verification(format!("serialize: {e}")))?;
        if out == "-" {
            println!("{text}");
        } else {
            std::fs::write(out, text)?;
        }
    }
    Ok(())
}

fn print_summary(report: &RunReport) {
    if let Some(c) = &report.classification {
        println!("classification: {}", c.tag);
        println!("  distinct directions: {}", c.evidence.distinct_count);
    }
    for d in &report.directions {
        println!(
            "  v{}{}: [{}{:+}i : {}{:+}i]{}",
            d.pair[0],
            d.pair[1],
            d.rep_re[0],
            d.rep_im[0],
            d.rep_re[1],
            d.rep_im[1],
            if d.converged {
                ""
            } else {
                "  (not convergent)"
            }
        );
    }
    match (&report.limit, &report.limit_error) {
        (Some(l), _) => {
            println!("limit: {:?}, certified: {}", l.status, l.certified);
            println!("  shape: {:?}, dims: {:?}", l.shape, l.dims);
            if !l.limit_generators.is_empty() {
                println!("  generators: {}", l.limit_generators.join(";  "));
                println!("  staircase: {{{}}}", l.staircase.join(", "));
                if let Some(len) = &l.length {
                    println!("  length: {len}");
                }
            }
            if let Some(k) = l.recovered_k {
                println!("  recovered k: {}{:+}i", k[0], k[1]);
            }
        }
        (None, Some(e)) => println!("limit: error: {e}"),
        (None, None) => {}
    }
    if let Some(g) = &report.green {
        println!(
            "green: pair (f{}, f{}), |resultant| = {:.6e}",
            g.pair[0], g.pair[1], g.resultant_abs
        );
        println!(
            "  gap over {} samples: min {:.6}, max {:.6}, mean {:.6}, certified_bounded: {}",
            g.gap.n_samples, g.gap.min, g.gap.max, g.gap.mean, g.gap.certified_bounded
        );
    }
    if let Some(d) = &report.degenerate_green {
        println!("green (degenerate): candidate {}", d.candidate_formula);
        println!("  no_equality: {}", d.no_equality);
        for l in &d.literature {
            println!("  note: {l}");
        }
    }
    for c in &report.checks {
        println!(
            "  [{}] {}: expected {}, computed {}",
            if c.pass { "pass" } else { "FAIL" },
            c.field,
            c.expected,
            c.computed
        );
    }
    println!("result: {}", if report.passed { "PASS" } else { "FAIL" });
}

fn green_csv(scenario: &Scenario, tol: &Tolerances) -> Result<Option<String>, Error> {
    let fam = scenario.family.build(&scenario.name)?;
    let ds = match illab::geometry::six_directions(&fam, &scenario.schedule, tol) {
        Ok(ds) => ds,
        Err(_) => return Ok(None),
    };
    let limits = pairing_limits(&ds)?;
    let pair = match illab::green::independent_pair(&limits, tol)? {
        Some(p) => p,
        None => return Ok(None),
    };
    let ci = CiMap::from_limits(&limits, pair);
    let (_, samples) = gap_report(&ci, &SampleSpec::default(), tol)?;
    Ok(Some(GapReport::csv(&samples)))
}

fn dispatch(cli: &Cli) -> Result<bool, Error> {
    match cli.command.as_str() {
        "list-scenarios" => {
            println!(
                "{:28} {:34} expected limit",
                "name", "expected classification"
            );
            for sc in builtins() {
                println!(
                    "{:28} {:34} {}",
                    sc.name,
                    sc.expected_classification
                        .map(|t| t.to_string())
                        .unwrap_or_else(|| "-".into()),
                    sc.expected_limit_ideal
                        .as_ref()
                        .map(|g| g.join("; "))
                        .unwrap_or_else(|| "-".into()),
                );
                println!("{:28}   {}", "", sc.notes);
            }
            Ok(true)
        }
        "verify-all" => {
            let mut tol = Tolerances::default();
            for (name, value) in &cli.tol_overrides {
                tol.set_by_name(name, *value).map_err(Error::Config)?;
            }
            if let Some(p) = cli.precision {
                tol.precision = p;
            }
            let summary = verify_all(&tol, cli.timings);
            for r in &summary.reports {
                match &r.error {
                    Some(e) => println!("{:28} ERROR: {e}", r.scenario),
                    None => println!(
                        "{:28} {}",
                        r.scenario,
                        if r.passed { "PASS" } else { "FAIL" }
                    ),
                }
            }
            println!(
                "aggregate: {}",
                if summary.passed { "PASS" } else { "FAIL" }
            );
            emit_json(&cli.json, &summary)?;
            Ok(summary.passed)
        }
        "classify" | "limit-ideal" | "green-gap" | "run" => {
            let (scenario, tol) = resolve(cli)?;
            let report = run_scenario(&scenario, &tol, cli.timings)?;
            match cli.command.as_str() {
                "classify" => {
                    #[derive(serde::Serialize)]
                    struct ClassifyOut<'a> {
                        schema_version: u32,
                        scenario: &'a str,
                        classification: &'a Option<illab::geometry::Classification>,
                        directions: &'a Vec<illab::geometry::DirectionRecord>,
                    }
                    if let Some(c) = &report.classification {
                        println!("classification: {}", c.tag);
                    }
                    for d in &report.directions {
                        println!(
                            "  v{}{}: converged={} rep_re={:?} rep_im={:?}",
                            d.pair[0], d.pair[1], d.converged, d.rep_re, d.rep_im
                        );
                    }
                    emit_json(
                        &cli.json,
                        &ClassifyOut {
                            schema_version: SCHEMA_VERSION,
                            scenario: &report.scenario,
                            classification: &report.classification,
                            directions: &report.directions,
                        },
                    )?;
                    Ok(report
                        .classification
                        .as_ref()
                        .map(|c| c.tag != ClassTag::Unclassified)
                        .unwrap_or(false))
                }
                "limit-ideal" => {
                    match (&report.limit, &report.limit_error) {
                        (Some(l), _) => {
                            println!("status: {:?}, certified: {}", l.status, l.certified);
                            println!("generators: {}", l.limit_generators.join(";  "));
                        }
                        (None, Some(e)) => println!("error: {e}"),
                        _ => {}
                    }
                    emit_json(&cli.json, &report.limit)?;
                    Ok(report.limit.as_ref().map(|l| l.certified).unwrap_or(false))
                }
                "green-gap" => {
                    if let Some(g) = &report.green {
                        println!(
                            "pair (f{}, f{}), |resultant| {:.6e}",
                            g.pair[0], g.pair[1], g.resultant_abs
                        );
                        println!(
                            "gap: n={} min={:.6} max={:.6} mean={:.6} certified={}",
                            g.gap.n_samples,
                            g.gap.min,
                            g.gap.max,
                            g.gap.mean,
                            g.gap.certified_bounded
                        );
                        if let Some(csv_path) = &cli.csv {
                            if let Some(csv) = green_csv(&scenario, &tol)? {
                                if csv_path == "-" {
                                    println!("{csv}");
                                } else {
                                    std::fs::write(csv_path, csv)?;
                                }
                            }
                        }
                    }
                    if let Some(d) = &report.degenerate_green {
                        println!("degenerate candidate: {}", d.candidate_formula);
                        println!("no_equality: {}", d.no_equality);
                        for l in &d.literature {
                            println!("note: {l}");
                        }
                    }
                    #[derive(serde::Serialize)]
                    struct GreenOut<'a> {
                        schema_version: u32,
                        scenario: &'a str,
                        green: &'a Option<illab::scenario::GreenSection>,
                        degenerate_green: &'a Option<illab::scenario::DegenerateGreenSection>,
                    }
                    emit_json(
                        &cli.json,
                        &GreenOut {
                            schema_version: SCHEMA_VERSION,
                            scenario: &report.scenario,
                            green: &report.green,
                            degenerate_green: &report.degenerate_green,
                        },
                    )?;
                    Ok(report.green.is_some() || report.degenerate_green.is_some())
                }
                "run" => {
                    print_summary(&report);
                    emit_json(&cli.json, &report)?;
                    Ok(report.passed)
                }
                _ => unreachable!(),
            }
        }
        other => Err(Error::Config(format!(
            "unknown command `{other}`\n\n{USAGE}"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = match parse_cli(std::env::args().skip(1)) {
        Ok(cli) => cli,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(2);
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

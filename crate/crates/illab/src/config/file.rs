//! Config files: nested `[section]`/`[section arg]` blocks with
//! `key = value` entries and `#` comments. A config defines one scenario
//! (point family, schedule, expectations) plus optional tolerance
//! overrides.

use num_complex::Complex64;

use crate::geometry::{PointC2, Schedule};
use crate::scenario::{FamilySpec, Scenario, ScenarioKind};
use crate::tol::{Precision, Tolerances};

use super::expr::parse_expr;

#[derive(Debug, Clone)]
pub struct Section {
    pub name: String,
    pub arg: Option<String>,
    pub entries: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct ConfigDoc {
    pub sections: Vec<Section>,
}

impl ConfigDoc {
    pub fn parse(src: &str) -> Result<ConfigDoc, String> {
        let mut doc = ConfigDoc::default();
        for (lineno, raw) in src.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(inner) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let mut parts = inner.trim().splitn(2, char::is_whitespace);
                let name = parts.next().unwrap_or("").to_string();
                if name.is_empty() {
                    return Err(format!("line {}: empty section name", lineno + 1));
                }
                let arg = parts.next().map(|s| s.trim().to_string());
                doc.sections.push(Section {
                    name,
                    arg,
                    entries: Vec::new(),
                });
            } else if let Some((k, v)) = line.split_once('=') {
                let section = doc
                    .sections
                    .last_mut()
                    .ok_or(format!("line {}: entry before any [section]", lineno + 1))?;
                section
                    .entries
                    .push((k.trim().to_string(), v.trim().to_string()));
            } else {
                return Err(format!(
                    "line {}: expected `[section]` or `key = value`",
                    lineno + 1
                ));
            }
        }
        Ok(doc)
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.section(section)?
            .entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn parse_point_entry(value: &str) -> Result<[String; 2], String> {
    let mut parts = value.splitn(2, ';');
    let a = parts.next().unwrap_or("").trim().to_string();
    let b = parts
        .next()
        .ok_or("point entries use `z1-expr ; z2-expr`")?
        .trim()
        .to_string();
    Ok([a, b])
}

/// Build the scenario (and tolerance overrides) described by a config.
pub fn scenario_from_config(doc: &ConfigDoc) -> Result<(Scenario, Tolerances), String> {
    let mut tol = Tolerances::default();
    if let Some(sec) = doc.section("tolerances") {
        for (k, v) in &sec.entries {
            if k == "precision" {
                tol.precision = match v.as_str() {
                    "standard" => Precision::Standard,
                    "extended" => Precision::Extended,
                    other => return Err(format!("unknown precision `{other}`")),
                };
            } else {
                let x: f64 = v.parse().map_err(|e| format!("tolerance {k}: {e}"))?;
                tol.set_by_name(k, x)?;
            }
        }
    }

    let name = doc.get("scenario", "name").unwrap_or("custom").to_string();
    let expected_classification = doc
        .get("scenario", "expected_classification")
        .map(|s| s.parse())
        .transpose()?;
    let expected_limit_ideal = doc.get("scenario", "expected_limit_ideal").map(|s| {
        s.split(';')
            .map(|g| g.trim().to_string())
            .filter(|g| !g.is_empty())
            .collect::<Vec<_>>()
    });
    let expected_k = doc
        .get("scenario", "expected_k")
        .map(|s| s.parse::<f64>().map_err(|e| format!("expected_k: {e}")))
        .transpose()?;

    let schedule = {
        let eps0 = doc
            .get("schedule", "eps0")
            .map(|s| s.parse::<f64>().map_err(|e| format!("eps0: {e}")))
            .transpose()?
            .unwrap_or(0.1);
        let ratio = doc
            .get("schedule", "ratio")
            .map(|s| s.parse::<f64>().map_err(|e| format!("ratio: {e}")))
            .transpose()?
            .unwrap_or(0.5);
        let samples = doc
            .get("schedule", "samples")
            .map(|s| s.parse::<usize>().map_err(|e| format!("samples: {e}")))
            .transpose()?
            .unwrap_or(12);
        let order = doc
            .get("schedule", "extrapolation_order")
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|e| format!("extrapolation_order: {e}"))
            })
            .transpose()?
            .unwrap_or(1);
        let mut sch = Schedule::geometric(eps0, ratio, samples).map_err(|e| e.to_string())?;
        sch.extrapolation_order = order;
        sch
    };

    let family_sec = doc.section("family").ok_or("missing [family] section")?;
    let kind = family_sec
        .entries
        .iter()
        .find(|(k, _)| k == "kind")
        .map(|(_, v)| v.as_str())
        .unwrap_or("expressions");
    let family = match kind {
        "expressions" => {
            let mut points = Vec::new();
            for idx in 1.. {
                let key = format!("p{idx}");
                match family_sec.entries.iter().find(|(k, _)| *k == key) {
                    Some((_, v)) => points.push(parse_point_entry(v)?),
                    None => break,
                }
            }
            if points.is_empty() {
                return Err("family has no points (p1, p2, …)".into());
            }
            // validate the expressions now so errors surface at parse time
            for [a, b] in &points {
                parse_expr(a)?;
                parse_expr(b)?;
            }
            FamilySpec::Expressions { points }
        }
        "table" => {
            let mut rows = Vec::new();
            for sec in doc.sections.iter().filter(|s| s.name == "sample") {
                let eps_src = sec
                    .arg
                    .as_deref()
                    .ok_or("[sample <eps>] needs an argument")?;
                let eps = parse_expr(eps_src)?.eval(Complex64::default());
                let mut pts = Vec::new();
                for idx in 1.. {
                    let key = format!("p{idx}");
                    match sec.entries.iter().find(|(k, _)| *k == key) {
                        Some((_, v)) => {
                            let [a, b] = parse_point_entry(v)?;
                            let z1 = parse_expr(&a)?.eval(eps);
                            let z2 = parse_expr(&b)?.eval(eps);
                            pts.push(PointC2::new(z1, z2));
                        }
                        None => break,
                    }
                }
                rows.push((eps, pts));
            }
            if rows.is_empty() {
                return Err("table family has no [sample <eps>] sections".into());
            }
            FamilySpec::Table(rows)
        }
        other => return Err(format!("unknown family kind `{other}`")),
    };

    Ok((
        Scenario {
            name,
            kind: ScenarioKind::Standard,
            family,
            schedule,
            expected_classification,
            expected_limit_ideal,
            expected_k,
            precision: tol.precision,
            notes: String::from("user configuration"),
        },
        tol,
    ))
}

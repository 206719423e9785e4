//! Built-in scenarios and the end-to-end runner: point families with
//! expected classifications and limit ideals, executed through the full
//! classify → limit → certify → Green pipeline with expected-vs-computed
//! comparisons.

mod run;

pub use run::{
    run_scenario, verify_all, Comparison, DegenerateGreenSection, GreenSection, LimitSection,
    RunReport, Timings, VerifySummary, SCHEMA_VERSION,
};

use num_complex::Complex64;

use crate::config::parse_expr;
use crate::error::Error;
use crate::geometry::{ClassTag, PointC2, PointFamily, Schedule};
use crate::tol::Precision;

/// How a scenario's family is specified.
#[derive(Debug, Clone)]
pub enum FamilySpec {
    /// Coordinate expressions in ε over the config grammar.
    Expressions { points: Vec<[String; 2]> },
    /// Explicit per-sample point tables.
    Table(Vec<(Complex64, Vec<PointC2>)>),
    /// A closed form outside the expression grammar (oscillating phases).
    OscillatingPair,
}

impl FamilySpec {
    pub fn build(&self, label: &str) -> Result<PointFamily, Error> {
        match self {
            FamilySpec::Expressions { points } => {
                let mut parsed = Vec::with_capacity(points.len());
                for [a, b] in points {
                    let ea = parse_expr(a).map_err(Error::Config)?;
                    let eb = parse_expr(b).map_err(Error::Config)?;
                    parsed.push((ea, eb));
                }
                let n = parsed.len();
                Ok(PointFamily::from_fn(label, n, move |eps| {
                    parsed
                        .iter()
                        .map(|(a, b)| PointC2::new(a.eval(eps), b.eval(eps)))
                        .collect()
                }))
            }
            FamilySpec::Table(rows) => PointFamily::from_table(label, rows.clone())
                .map_err(|e| Error::Config(e.to_string())),
            FamilySpec::OscillatingPair => Ok(PointFamily::from_fn(label, 4, |e| {
                let z = Complex64::default();
                let phase = (1.0 / e.norm()).sin();
                vec![
                    PointC2::new(z, z),
                    PointC2::new(e, e * Complex64::new(0.0, phase)),
                    PointC2::new(z, e),
                    PointC2::new(e, e),
                ]
            })),
        }
    }
}

/// What the runner checks for a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    /// classify → limit ideal → certification → Green pipeline.
    Standard,
    /// Membership of the four cubic monomial limits of the explicit
    /// ψ-witness families in the computed limit ideal.
    Prop43Witnesses,
    /// Evaluation of the explicit Q, P, R combinations on their
    /// configurations along the schedule.
    MembershipQpr,
}

/// A named, runnable configuration with expectations.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub kind: ScenarioKind,
    pub family: FamilySpec,
    pub schedule: Schedule,
    pub expected_classification: Option<ClassTag>,
    /// Generator list (polynomial text) of the expected limit ideal.
    pub expected_limit_ideal: Option<Vec<String>>,
    /// Expected coefficient k in a ⟨z₁z₂, z₁² + k·z₂², z₁³⟩ limit.
    pub expected_k: Option<f64>,
    /// Arithmetic mode this scenario needs at the default schedule.
    pub precision: Precision,
    /// Derivation note for the expected values.
    pub notes: String,
}

fn expr_family(points: &[[&str; 2]]) -> FamilySpec {
    FamilySpec::Expressions {
        points: points
            .iter()
            .map(|[a, b]| [a.to_string(), b.to_string()])
            .collect(),
    }
}

/// The built-in catalog. Expected limits follow the known classification
/// of four-point degenerations: product grids give ⟨z₁², z₂²⟩, collinear
/// triples give ⟨z₁z₂, z₂², z₁³⟩, and the reparameterized families give
/// ⟨z₁z₂, z₁² + k·z₂², z₁³⟩ or ⟨z₁z₂, z₁², z₂³⟩ according to the ratio
/// (ρ − ε)/(δβ).
pub fn builtins() -> Vec<Scenario> {
    let sch = Schedule::default_geometric;
    vec![
        Scenario {
            name: "generic_diagonal".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[["0", "0"], ["eps", "0"], ["0", "eps"], ["eps", "eps"]]),
            schedule: sch(),
            expected_classification: Some(ClassTag::Generic),
            expected_limit_ideal: Some(vec!["z1^2".into(), "z2^2".into()]),
            expected_k: None,
            precision: Precision::Standard,
            notes: "product 2x2 grid: vanishing ideal equals the grid ideal, limit z1^2, z2^2"
                .into(),
        },
        Scenario {
            name: "generic_skew".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[["0", "0"], ["eps", "0"], ["0", "eps"], ["eps", "-eps"]]),
            schedule: sch(),
            expected_classification: Some(ClassTag::Generic),
            expected_limit_ideal: Some(vec![
                "z1^2".into(),
                "z1*z2 + 0.5*z2^2".into(),
                "z2^3".into(),
            ]),
            expected_k: None,
            precision: Precision::Standard,
            notes: "solved the 4-point interpolation by hand: quadratics through the \
                    configuration span z1^2 - eps*z1 and 2*z1*z2 + z2^2 - eps*z2"
                .into(),
        },
        Scenario {
            name: "thm23_vertex".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[
                ["0", "0"],
                ["-eps", "0"],
                ["0", "eps^2"],
                ["eps^2", "2*eps^2"],
            ]),
            schedule: sch(),
            expected_classification: Some(ClassTag::VertexDegenerate),
            expected_limit_ideal: Some(vec!["z1*z2".into(), "z2^2".into(), "z1^3".into()]),
            expected_k: None,
            precision: Precision::Extended,
            notes: "vertex 2 sees a single direction [1:0]; every 3-subset spans >= 2; \
                    the eps^2 coordinates need extended precision at the default schedule"
                .into(),
        },
        Scenario {
            name: "thm24_gamma2".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[["0", "0"], ["eps", "0"], ["0", "eps"], ["2*eps", "0"]]),
            schedule: sch(),
            expected_classification: Some(ClassTag::TripleCollinearManyDirections),
            expected_limit_ideal: Some(vec!["z1*z2".into(), "z2^2".into(), "z1^3".into()]),
            expected_k: None,
            precision: Precision::Standard,
            notes: "triple {1,2,4} collinear on the z1-axis with four distinct directions \
                    overall; gamma = 2"
                .into(),
        },
        Scenario {
            name: "prop44_i".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[
                ["0", "0"],
                ["eps", "0"],
                ["eps/2", "eps * eps/2"],
                ["0", "sqrt(eps)"],
            ]),
            schedule: sch(),
            expected_classification: Some(ClassTag::TripleCollinearTwoDirections),
            expected_limit_ideal: Some(vec!["z1*z2".into(), "z2^2".into(), "z1^3".into()]),
            expected_k: None,
            precision: Precision::Extended,
            notes: "rho = eps/2, delta = eps, beta = sqrt(eps): delta/(rho - eps) = -2, a \
                    finite slope"
                .into(),
        },
        Scenario {
            name: "prop44_ii1_k1".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[
                ["0", "0"],
                ["eps", "0"],
                ["eps/2", "sqrt(eps) * eps/2"],
                ["0", "-sqrt(eps)/2"],
            ]),
            schedule: sch(),
            expected_classification: Some(ClassTag::TripleCollinearTwoDirections),
            expected_limit_ideal: Some(vec!["z1*z2".into(), "z1^2 + z2^2".into(), "z1^3".into()]),
            expected_k: Some(1.0),
            precision: Precision::Extended,
            notes: "rho = eps/2, delta = sqrt(eps), beta = -sqrt(eps)/2: \
                    (rho - eps)/(delta*beta) = 1 identically"
                .into(),
        },
        Scenario {
            name: "prop44_ii2_kinf".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[
                ["0", "0"],
                ["eps", "0"],
                ["eps/2", "sqrt(eps) * eps/2"],
                ["0", "sqrt(sqrt(eps^3))"],
            ]),
            schedule: sch(),
            expected_classification: Some(ClassTag::TripleCollinearTwoDirections),
            expected_limit_ideal: Some(vec!["z1*z2".into(), "z2^2".into(), "z1^3".into()]),
            expected_k: None,
            precision: Precision::Extended,
            notes: "beta = eps^(3/4): (rho - eps)/(delta*beta) = -eps^(-1/4)/2 diverges".into(),
        },
        Scenario {
            name: "prop44_ii2_k0".into(),
            kind: ScenarioKind::Standard,
            family: expr_family(&[
                ["0", "0"],
                ["eps", "0"],
                ["eps/2", "sqrt(eps) * eps/2"],
                ["0", "sqrt(sqrt(eps))"],
            ]),
            schedule: sch(),
            expected_classification: Some(ClassTag::TripleCollinearTwoDirections),
            expected_limit_ideal: Some(vec!["z1*z2".into(), "z1^2".into(), "z2^3".into()]),
            expected_k: None,
            precision: Precision::Extended,
            notes: "beta = eps^(1/4): (rho - eps)/(delta*beta) = -eps^(1/4)/2 vanishes".into(),
        },
        Scenario {
            name: "prop43_witnesses".into(),
            kind: ScenarioKind::Prop43Witnesses,
            family: expr_family(&[["0", "0"], ["eps", "0"], ["0", "eps"], ["eps", "-eps"]]),
            schedule: sch(),
            expected_classification: None,
            expected_limit_ideal: None,
            expected_k: None,
            precision: Precision::Standard,
            notes: "explicit cubic witness families: z1*(z1-eps)^2, z1*(z1-eps)*(z2+eps), \
                    z1*z2*(z2+eps), z2*(z2-eps)*(z2+eps) tend to the four cubic monomials"
                .into(),
        },
        Scenario {
            name: "membership_QPR".into(),
            kind: ScenarioKind::MembershipQpr,
            family: expr_family(&[
                ["0", "0"],
                ["eps", "0"],
                ["eps/2", "sqrt(eps) * eps/2"],
                ["0", "-sqrt(eps)/2"],
            ]),
            schedule: sch(),
            expected_classification: None,
            expected_limit_ideal: None,
            expected_k: None,
            precision: Precision::Standard,
            notes: "the explicit quadratic combinations Q, P, R vanish on their \
                    configurations for every sampled eps"
                .into(),
        },
        Scenario {
            name: "oscillating_nonconvergent".into(),
            kind: ScenarioKind::Standard,
            family: FamilySpec::OscillatingPair,
            schedule: sch(),
            expected_classification: Some(ClassTag::NonConvergent),
            expected_limit_ideal: None,
            expected_k: None,
            precision: Precision::Standard,
            notes: "pair (1,2) oscillates with phase sin(1/eps); no subsequence is selected".into(),
        },
    ]
}

/// Look up a built-in scenario by name.
pub fn builtin(name: &str) -> Option<Scenario> {
    builtins().into_iter().find(|s| s.name == name)
}

//! Limits of vanishing ideals of point configurations collapsing to the
//! origin in ℂ², and diagnostics for the associated Green-function
//! candidates on the unit bidisk.
//!
//! The crate follows a four-point configuration `S_ε = {a₁^ε, …, a₄^ε}`
//! along a shrinking schedule of parameters ε and answers, numerically:
//!
//! - What are the limit directions `v_ij = lim [a_j^ε − a_i^ε] ∈ ℙ¹ℂ`,
//!   and which combinatorial class does the family fall into
//!   ([`geometry::classify`])?
//! - Does the family of vanishing ideals `𝓘(S_ε)` converge, and to which
//!   ideal? Convergence is tracked at the level of finite-dimensional
//!   quotients through Newton bases on coordinate grids, subspace frames,
//!   and the gap metric ([`limits::limit_ideal`]), and certified by a
//!   length criterion.
//! - In the generic case, is the limit a complete intersection cut out
//!   by a pair of quadratics, and how far is `log‖Ψ₀‖` from the
//!   candidate `2·max(log|z₁|, log|z₂|)` on the bidisk
//!   ([`green::gap_report`])?
//!
//! Built-in scenarios covering the known limit ideals (`⟨z₁², z₂²⟩`,
//! `⟨z₁z₂, z₂², z₁³⟩`, `⟨z₁z₂, z₁² + k·z₂², z₁³⟩`, `⟨z₁z₂, z₁², z₂³⟩`)
//! live in [`scenario`], together with an end-to-end runner that compares
//! computed limits against the expected ones.
//!
//! Start with the runnable examples (`cargo run --example limit_of_ideals`)
//! or the `illab` binary (`illab verify-all`).

pub mod config;
pub mod dd;
pub mod error;
pub mod geometry;
pub mod green;
pub mod limits;
pub mod linalg;
pub mod poly;
pub mod scenario;
pub mod tol;
pub mod util;

pub use error::Error;
pub use tol::{Precision, Tolerances};

/// Library version string.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Common exports for quick imports in examples and callers.
pub mod prelude {
    pub use crate::geometry::{
        chordal_distance, classify, direction, direction_set, limit_direction, normalize_frame,
        six_directions, ClassTag, Classification, DirectionSet, PointC2, PointFamily,
        ProjectiveDirection, Schedule,
    };
    pub use crate::green::{
        bidisk_pole_bounds, common_zeros, gap_report, green_candidate, independence_sets,
        independent_pair, line_equation, pairing_limits, pairing_products, uci_verify, CiMap,
        GapReport, SampleSpec,
    };
    pub use crate::limits::{
        grid_points, grid_shape, ideal_frame, ideal_subspace, length_criterion, limit_grid_ideal,
        limit_ideal, quotient_coordinates, subspace_gap, subspace_limit, CriterionSide, GridPoints,
        GridShape, LimitStatus, LimitVerdict, NewtonBasis, SubspaceFrame,
    };
    pub use crate::poly::{
        parse_polynomial, power_ideal, resultant_binary_quadratics, vanishing_ideal, Ideal, Length,
        Monomial, Polynomial,
    };
    pub use crate::scenario::{builtin, builtins, run_scenario, verify_all, RunReport, Scenario};
    pub use crate::tol::{Precision, Tolerances};
    pub use num_complex::Complex64;
}

//! Numeric tolerances and precision switches shared across the crate.
//!
//! Every threshold that a numeric decision depends on lives here, so that
//! CLI `--tol-*` overrides and config files have a single place to land.

use serde::{Deserialize, Serialize};

/// Arithmetic precision for the frame pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Precision {
    /// Standard IEEE double precision.
    #[default]
    Standard,
    /// Compensated (double-double) arithmetic in the per-sample frame
    /// computation, for ill-conditioned schedules.
    Extended,
}

/// All numeric thresholds, with defaults suitable for geometric schedules
/// reaching ε ≈ 5·10⁻⁵.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Tolerances {
    /// Chordal-metric threshold under which two points of ℙ¹ℂ are the
    /// same class.
    pub chordal_eq: f64,
    /// Absolute cap on the final consecutive chordal step of a direction
    /// family (the Cauchy gate itself is the geometric decrease of the
    /// steps; 1 leaves only that test active).
    pub dir_converge: f64,
    /// Consecutive direction steps below this are treated as exactly
    /// stationary (no decrease requirement applies).
    pub dir_stationary: f64,
    /// Pairwise point coincidence threshold, relative to the
    /// configuration diameter.
    pub coincidence: f64,
    /// Singular-value cutoff for rank decisions, relative to the largest
    /// singular value.
    pub svd_rank: f64,
    /// Coefficients below this (relative to the largest coefficient of
    /// the polynomial) are dropped after reductions.
    pub coeff_cleanup: f64,
    /// Recovered limit-ideal generator coefficients below this are zeroed.
    pub generator_zero: f64,
    /// Ideal membership: ‖normal_form(f)‖ ≤ membership·‖f‖.
    pub membership: f64,
    /// Final consecutive subspace gap for a frame family to be Converged.
    pub gap_converged: f64,
    /// Gap between the extrapolated limit frame and the frame at the
    /// smallest ε for a Converged verdict.
    pub gap_extrapolated: f64,
    /// Per-axis clustering of coordinate values, relative to the axis scale.
    pub grid_cluster: f64,
    /// |resultant| above this certifies an independent quadratic pair.
    pub resultant_independent: f64,
    /// Common-zero matching tolerance, relative to |ε|.
    pub root_match_rel: f64,
    /// min ‖Ψ₀‖ on the sample must exceed this for a certified gap report.
    pub min_psi_sphere: f64,
    /// Triangular-solve diagonal growth guard (on unit-scaled axes).
    pub triangular_growth: f64,
    /// Norm threshold below which every point of the family must fall at
    /// the smallest schedule sample.
    pub family_shrink: f64,
    /// Arithmetic mode for the frame pipeline.
    pub precision: Precision,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            chordal_eq: 1e-6,
            dir_converge: 1.0,
            dir_stationary: 1e-9,
            coincidence: 1e-12,
            svd_rank: 1e-9,
            coeff_cleanup: 1e-10,
            generator_zero: 1e-8,
            membership: 1e-6,
            gap_converged: 1e-3,
            gap_extrapolated: 1e-4,
            grid_cluster: 1e-6,
            resultant_independent: 1e-8,
            root_match_rel: 1e-6,
            min_psi_sphere: 1e-6,
            triangular_growth: 1e12,
            family_shrink: 0.2,
            precision: Precision::Standard,
        }
    }
}

impl Tolerances {
    /// Set a tolerance by its kebab-case CLI name (`--tol-<name>`).
    pub fn set_by_name(&mut self, name: &str, value: f64) -> Result<(), String> {
        match name {
            "chordal-eq" => self.chordal_eq = value,
            "dir-converge" => self.dir_converge = value,
            "dir-stationary" => self.dir_stationary = value,
            "coincidence" => self.coincidence = value,
            "svd-rank" => self.svd_rank = value,
            "coeff-cleanup" => self.coeff_cleanup = value,
            "generator-zero" => self.generator_zero = value,
            "membership" => self.membership = value,
            "gap-converged" => self.gap_converged = value,
            "gap-extrapolated" => self.gap_extrapolated = value,
            "grid-cluster" => self.grid_cluster = value,
            "resultant-independent" => self.resultant_independent = value,
            "root-match-rel" => self.root_match_rel = value,
            "min-psi-sphere" => self.min_psi_sphere = value,
            "triangular-growth" => self.triangular_growth = value,
            "family-shrink" => self.family_shrink = value,
            other => return Err(format!("unknown tolerance `{other}`")),
        }
        Ok(())
    }
}

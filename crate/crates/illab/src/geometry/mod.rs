//! Point configurations in ℂ², projective limit directions along a
//! shrinking schedule, and the combinatorial classification of four-point
//! families by their direction patterns.

mod classify;
mod direction;
mod point;

pub use classify::{
    all_pairs, classify, classify_from_directions, normalize_frame, six_directions, ClassEvidence,
    ClassTag, Classification,
};
pub use direction::{
    chordal_distance, cluster_directions, direction, direction_set, limit_direction,
    DirectionEstimate, DirectionSet, ProjectiveDirection,
};
pub use point::{LinearMap2, PointC2, PointFamily, Schedule};

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("coincident points: {detail}")]
    CoincidentPoints { detail: String },
    #[error("limit direction of pair ({},{}) did not converge", i + 1, j + 1)]
    NonConvergent { i: usize, j: usize },
    #[error("the two limit directions coincide; no normalizing frame exists")]
    DegenerateDirections,
    #[error("bad schedule: {0}")]
    BadSchedule(String),
    #[error("bad point family: {0}")]
    BadFamily(String),
    #[error("table family has no sample at eps = {eps}")]
    TableMiss { eps: Complex64 },
}

/// JSON record for one pair's limit direction.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DirectionRecord {
    /// 1-based point indices.
    pub pair: [usize; 2],
    pub rep_re: [f64; 2],
    pub rep_im: [f64; 2],
    pub converged: bool,
}

impl DirectionRecord {
    pub fn from_estimate(pair: (usize, usize), est: &DirectionEstimate) -> Self {
        let rep = est
            .class
            .as_ref()
            .map(|c| c.rep())
            .unwrap_or(est.last.rep());
        DirectionRecord {
            pair: [pair.0 + 1, pair.1 + 1],
            rep_re: [rep[0].re, rep[1].re],
            rep_im: [rep[0].im, rep[1].im],
            converged: est.converged(),
        }
    }
}

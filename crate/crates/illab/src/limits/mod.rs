//! Limits of vanishing ideals through finite-dimensional quotients:
//! grid ideals and their Newton bases, ideal subspaces in ℂᵈ, gap-metric
//! limits of subspace families, the length criterion certifying
//! convergence, and recovery of the limit ideal's generators.

mod frame;
mod grid;
mod newton;

pub use frame::{
    ideal_subspace, subspace_gap, subspace_limit, LimitStatus, LimitVerdict, SubspaceFrame,
};
pub use grid::{grid_points, grid_shape, GridPoints, GridShape};
pub use newton::NewtonBasis;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::{GeometryError, PointFamily, Schedule};
use crate::linalg::{nullspace, rref};
use crate::poly::{Ideal, Length, Monomial, PolyError, Polynomial};
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum LimitError {
    #[error("grid shape unstable along the schedule: {0}")]
    UnstableShape(String),
    #[error("grid too ill-conditioned for the triangular solve (diagonal growth {growth:.3e})")]
    IllConditionedGrid { growth: f64 },
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace limits need at least 4 frames, got {got}")]
    TooFewFrames { got: usize },
    #[error("degree cap {cap} below the grid's top Newton degree {needed}")]
    CapBelowGrid { cap: u32, needed: u32 },
    #[error("ghost columns span dimension {got}, expected {expected}")]
    RankDeficientFrame { expected: usize, got: usize },
    #[error("length sanity violated: {side} limit has length {length} vs point count {n}")]
    SanityViolation {
        length: usize,
        n: usize,
        side: String,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which limit the length criterion is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CriterionSide {
    /// limsup of the ideal family (a-priori length ≤ N).
    Upper,
    /// liminf of the ideal family (a-priori length ≥ N).
    Lower,
}

/// The length criterion: an upper limit of length ≥ N (equivalently = N)
/// certifies convergence, as does a lower limit of length ≤ N. The
/// a-priori inequalities ℓ(limsup) ≤ N ≤ ℓ(liminf) are enforced as
/// sanity assertions.
pub fn length_criterion(length: usize, n: usize, side: CriterionSide) -> Result<bool, LimitError> {
    match side {
        CriterionSide::Upper => {
            if length > n {
                return Err(LimitError::SanityViolation {
                    length,
                    n,
                    side: "upper".into(),
                });
            }
            Ok(length >= n)
        }
        CriterionSide::Lower => {
            if length < n {
                return Err(LimitError::SanityViolation {
                    length,
                    n,
                    side: "lower".into(),
                });
            }
            Ok(length <= n)
        }
    }
}

/// The limit of the grid ideals: the monomial ideal ⟨z₁^{N₁}, z₂^{N₂}⟩
/// of length d = N₁·N₂.
pub fn limit_grid_ideal(shape: &GridShape, tol: &Tolerances) -> Ideal {
    assert_eq!(shape.counts.len(), 2, "exposed API is two-dimensional");
    let gens: Vec<Polynomial> = shape
        .counts
        .iter()
        .enumerate()
        .map(|(j, &nj)| {
            let mut e = vec![0u32; j + 1];
            e[j] = nj as u32;
            Polynomial::from_monomial(Monomial::new(e), Complex64::new(1.0, 0.0))
        })
        .collect();
    let cap = 2 * shape.counts.iter().copied().max().unwrap_or(1) as u32;
    Ideal::from_generators(gens, cap, tol).expect("monomial generators")
}

/// Coordinates of `f` in the Newton basis of a grid (tensorized divided
/// differences), ordered like `grid.alphas()`.
pub fn quotient_coordinates(
    f: &Polynomial,
    grid: &GridPoints,
    tol: &Tolerances,
) -> Result<Vec<Complex64>, LimitError> {
    NewtonBasis::new(grid.clone()).quotient_coordinates(f, tol)
}

/// Result of the limit-ideal pipeline.
#[derive(Debug, Clone)]
pub struct LimitIdealOutcome {
    pub verdict: LimitVerdict,
    pub shape: GridShape,
    /// Recovered limit ideal (Converged only).
    pub ideal: Option<Ideal>,
    /// Length criterion: the recovered ideal has length exactly N.
    pub certified: bool,
}

/// Pivot threshold for generator recovery: genuine frame directions carry
/// O(1) mass on their leading coordinate, while residual extrapolation
/// junk sits orders of magnitude lower. Pivots below this are noise.
const LIFT_PIVOT_TOL: f64 = 1e-4;

/// Lift frame columns (coordinates over the shape's monomials) to
/// polynomials: pivoted elimination with graded-lex pivot preference and
/// small-coefficient cleanup, verified to preserve the span.
///
/// `cleanup` is the coefficient-zeroing threshold; the caller widens it
/// to the measured extrapolation residual, since coefficients at that
/// level are convergence junk rather than generator content.
fn lift_frame(
    frame: &SubspaceFrame,
    alphas: &[Monomial],
    cleanup: f64,
    tol: &Tolerances,
) -> Vec<Polynomial> {
    let k = frame.dim();
    let d = frame.ambient();
    if k == 0 {
        return Vec::new();
    }
    let mut rows = DMatrix::<Complex64>::zeros(k, d);
    for r in 0..k {
        for c in 0..d {
            rows[(r, c)] = frame.basis()[(c, r)];
        }
    }
    let order: Vec<usize> = (0..d).rev().collect();
    let pivots = rref(&mut rows, &order, LIFT_PIVOT_TOL);

    let to_polys = |m: &DMatrix<Complex64>, do_cleanup: bool| -> Vec<Polynomial> {
        pivots
            .iter()
            .map(|&(r, _)| {
                let mut p = Polynomial::zero();
                for c in 0..d {
                    let v = m[(r, c)];
                    if v.norm() > 0.0 {
                        p.add_term(alphas[c].clone(), v);
                    }
                }
                if do_cleanup {
                    p.cleanup(cleanup);
                }
                p
            })
            .collect()
    };

    let cleaned = to_polys(&rows, true);
    // re-span check: zeroing small coefficients must not move the span
    let mut cleaned_cols = DMatrix::<Complex64>::zeros(d, cleaned.len());
    for (r, p) in cleaned.iter().enumerate() {
        for (m, c) in p.terms() {
            let pos = alphas.iter().position(|a| a == m).expect("alpha support");
            cleaned_cols[(pos, r)] = *c;
        }
    }
    let cleaned_frame = SubspaceFrame::from_columns(d, cleaned_cols, tol);
    let respan_tol = (10.0 * cleanup * (d as f64).sqrt()).max(1e-6);
    match subspace_gap(&cleaned_frame, frame) {
        Ok(g) if g < respan_tol => cleaned,
        _ => to_polys(&rows, false),
    }
}

/// End-to-end limit of the vanishing ideals of a point family: grid
/// shapes per sample (required stable), ideal subspaces, gap-metric limit
/// with extrapolation, lift of the limit frame, adjunction of the limit
/// grid ideal, and the length-criterion certificate.
pub fn limit_ideal(
    fam: &PointFamily,
    schedule: &Schedule,
    tol: &Tolerances,
) -> Result<LimitIdealOutcome, LimitError> {
    let n = fam.npoints();
    let mut shape: Option<GridShape> = None;
    let mut frames = Vec::with_capacity(schedule.len());
    for &eps in schedule.samples() {
        let pts = fam.points_at(eps)?;
        let g = grid_points(&pts, tol)?;
        match &shape {
            None => shape = Some(g.shape().clone()),
            Some(s) if s == g.shape() => {}
            Some(s) => {
                return Err(LimitError::UnstableShape(format!(
                    "shape {:?} at eps = {eps} differs from {:?}",
                    g.shape().counts,
                    s.counts
                )))
            }
        }
        let cap = g.shape().max_degree();
        frames.push(ideal_subspace(&pts, cap, tol)?);
    }
    let shape = shape.expect("nonempty schedule");
    let verdict = subspace_limit(&frames, schedule.tail_ratio(), tol)?;

    if verdict.status != LimitStatus::Converged {
        return Ok(LimitIdealOutcome {
            verdict,
            shape,
            ideal: None,
            certified: false,
        });
    }

    let limit_frame = verdict.limit_frame.as_ref().expect("converged");
    let alphas = shape.alphas();
    let residual_scale = verdict
        .extrapolation_gaps
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(verdict.extrapolation_residual);
    let cleanup = tol.generator_zero.max(10.0 * residual_scale);
    let mut gens = lift_frame(limit_frame, &alphas, cleanup, tol);
    for (j, &nj) in shape.counts.iter().enumerate() {
        let mut e = vec![0u32; j + 1];
        e[j] = nj as u32;
        gens.push(Polynomial::from_monomial(
            Monomial::new(e),
            Complex64::new(1.0, 0.0),
        ));
    }
    let cap = 2 * shape.counts.iter().copied().max().unwrap_or(1) as u32;
    let ideal = Ideal::from_generators(gens, cap, tol)?.with_minimal_generators(tol);
    let certified = ideal.length() == Length::Finite(n);
    Ok(LimitIdealOutcome {
        verdict,
        shape,
        ideal: Some(ideal),
        certified,
    })
}

/// Frame of (ideal ∩ span{z^α : α < 𝒩}) in the shape's coordinates: the
/// nullspace of the staircase-coordinate map α ↦ normal_form(z^α).
/// The reference frame that a computed limit frame is compared against.
pub fn ideal_frame(
    ideal: &Ideal,
    shape: &GridShape,
    tol: &Tolerances,
) -> Result<SubspaceFrame, LimitError> {
    let alphas = shape.alphas();
    let stair = ideal.staircase();
    let mut m = DMatrix::<Complex64>::zeros(stair.len(), alphas.len());
    for (c, alpha) in alphas.iter().enumerate() {
        let nf = ideal.normal_form(
            &Polynomial::from_monomial(alpha.clone(), Complex64::new(1.0, 0.0)),
            tol,
        )?;
        for (mm, coeff) in nf.terms() {
            if let Some(r) = stair.iter().position(|s| s == mm) {
                m[(r, c)] = *coeff;
            }
        }
    }
    let ns = nullspace(&m, tol.svd_rank);
    Ok(SubspaceFrame::from_orthonormal(ns))
}

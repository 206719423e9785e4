//! Sparse complex polynomials in two variables, vanishing ideals of
//! finite point sets, zero-dimensional lengths and normal forms, and
//! resultants of binary quadratic forms.

mod ideal;
mod monomial;
mod parse;
mod polynomial;
mod resultant;

pub use ideal::{power_ideal, Ideal, Length};
pub use monomial::{monomials_of_degree_2v, monomials_upto, Monomial};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use resultant::resultant_binary_quadratics;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::PointC2;
use crate::linalg::nullspace;
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("duplicate or numerically indistinguishable points: {0}")]
    DuplicatePoints(String),
    #[error("degree cap {cap} too small (need at least {needed})")]
    CapTooSmall { cap: u32, needed: u32 },
    #[error("polynomial {which} is not homogeneous of degree 2")]
    NotHomogeneous { which: String },
    #[error("the zero ideal has no generators")]
    ZeroIdeal,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Vanishing ideal of a finite point set, computed from the nullspace of
/// the evaluation matrix over all monomials of degree ≤ cap, Buchberger–
/// Möller style. The points are rescaled to unit size first so the rank
/// decision is scale-free, and the coefficients are unscaled afterwards.
///
/// Postconditions: the ideal vanishes on all points and its length equals
/// the point count (otherwise `CapTooSmall`).
pub fn vanishing_ideal(points: &[PointC2], cap: u32, tol: &Tolerances) -> Result<Ideal, PolyError> {
    let n = points.len();
    if n == 0 {
        return Err(PolyError::DuplicatePoints("empty point set".into()));
    }
    if (cap as usize) < n {
        return Err(PolyError::CapTooSmall {
            cap,
            needed: n as u32,
        });
    }
    let diameter = points
        .iter()
        .flat_map(|p| points.iter().map(move |q| p.dist(q)))
        .fold(0.0, f64::max);
    if n > 1 {
        if diameter == 0.0 {
            return Err(PolyError::DuplicatePoints("all points coincide".into()));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if points[i].dist(&points[j]) < tol.coincidence * diameter {
                    return Err(PolyError::DuplicatePoints(format!(
                        "points {} and {} coincide relative to the diameter",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
    }

    let scale = points
        .iter()
        .map(|p| p.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let scaled: Vec<[Complex64; 2]> = points
        .iter()
        .map(|p| [p.z1 / scale, p.z2 / scale])
        .collect();

    let cols = monomials_upto(2, cap);
    let eval = DMatrix::from_fn(n, cols.len(), |r, c| {
        let m = &cols[c];
        scaled[r][0].powu(m.exponent(0)) * scaled[r][1].powu(m.exponent(1))
    });
    let ns = nullspace(&eval, tol.svd_rank);
    if cols.len() - ns.ncols() != n {
        return Err(PolyError::DuplicatePoints(format!(
            "evaluation matrix has numerical rank {}, expected {}",
            cols.len() - ns.ncols(),
            n
        )));
    }

    // unscale: a coefficient on z^α picks up scale^{-|α|}
    let mut gens = Vec::with_capacity(ns.ncols());
    for j in 0..ns.ncols() {
        let mut p = Polynomial::zero();
        for (i, m) in cols.iter().enumerate() {
            let c = ns[(i, j)];
            if c.norm() > 0.0 {
                p.add_term(m.clone(), c / scale.powi(m.degree() as i32));
            }
        }
        p.cleanup(tol.coeff_cleanup);
        if !p.is_zero() {
            gens.push(p);
        }
    }

    let ideal = Ideal::from_generators(gens, cap, tol)?.with_minimal_generators(tol);
    if ideal.length() == Length::Finite(n) {
        Ok(ideal)
    } else {
        Err(PolyError::CapTooSmall {
            cap,
            needed: cap + 2,
        })
    }
}

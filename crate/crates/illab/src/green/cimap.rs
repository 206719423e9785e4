//! Independence of pairing-product limits: the direction intersections
//! A₁, A₂, A₃, resultant certification, and the candidate map Ψ₀.

use num_complex::Complex64;

use crate::geometry::{chordal_distance, DirectionSet, ProjectiveDirection};
use crate::poly::{resultant_binary_quadratics, Polynomial};
use crate::tol::Tolerances;

use super::GreenError;

/// The three pairwise intersections of the direction pairs behind the
/// pairing products:
/// A₁ = {v₁₃,v₂₄} ∩ {v₁₂,v₃₄}, A₂ = {v₁₃,v₂₄} ∩ {v₁₄,v₂₃},
/// A₃ = {v₁₂,v₃₄} ∩ {v₁₄,v₂₃}. A nonempty Aₚ obstructs the
/// corresponding pair of f's through a shared line factor.
pub fn independence_sets(
    directions: &DirectionSet,
    tol: &Tolerances,
) -> Result<[Vec<ProjectiveDirection>; 3], GreenError> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            if directions.class(i, j).is_none() {
                return Err(GreenError::NotConverging {
                    detail: format!("direction ({},{}) has no limit", i + 1, j + 1),
                });
            }
        }
    }
    let g1 = [(0usize, 2usize), (1, 3)]; // {v13, v24}
    let g2 = [(0, 1), (2, 3)]; // {v12, v34}
    let g3 = [(0, 3), (1, 2)]; // {v14, v23}
    let eq = tol.chordal_eq;
    let intersect = |a: &[(usize, usize); 2], b: &[(usize, usize); 2]| {
        let mut out: Vec<ProjectiveDirection> = Vec::new();
        for &u in a {
            if b.iter().any(|&v| directions.classes_equal(u, v)) {
                let class = *directions.class(u.0, u.1).expect("converged");
                if !out.iter().any(|v| chordal_distance(&class, v) <= eq) {
                    out.push(class);
                }
            }
        }
        out
    };
    Ok([
        intersect(&g1, &g2),
        intersect(&g1, &g3),
        intersect(&g2, &g3),
    ])
}

/// First pair (lexicographic on 0-based index pairs) of limit products
/// whose quadratic resultant is nonzero, or `None` when every pair
/// shares a projective root.
pub fn independent_pair(
    limits: &[Polynomial; 3],
    tol: &Tolerances,
) -> Result<Option<(usize, usize)>, GreenError> {
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let res = resultant_binary_quadratics(&limits[i], &limits[j])?;
        if res.norm() > tol.resultant_independent {
            return Ok(Some((i, j)));
        }
    }
    Ok(None)
}

/// A candidate complete-intersection map: the chosen pair of pairing
/// products and its homogeneous quadratic limit.
#[derive(Debug, Clone)]
pub struct CiMap {
    /// 0-based indices into (f₁, f₂, f₃).
    pub pair: (usize, usize),
    /// Limit pair (g₀, h₀), homogeneous of degree 2.
    pub limit: [Polynomial; 2],
}

impl CiMap {
    pub fn from_limits(limits: &[Polynomial; 3], pair: (usize, usize)) -> CiMap {
        CiMap {
            pair,
            limit: [limits[pair.0].clone(), limits[pair.1].clone()],
        }
    }

    /// Resultant of the limit pair's quadratic parts.
    pub fn resultant(&self) -> Result<Complex64, GreenError> {
        Ok(resultant_binary_quadratics(&self.limit[0], &self.limit[1])?)
    }

    /// ‖Ψ₀(z)‖ (Euclidean on the two components).
    pub fn norm_at(&self, z: &[Complex64; 2]) -> f64 {
        let g = self.limit[0].eval(z);
        let h = self.limit[1].eval(z);
        (g.norm_sqr() + h.norm_sqr()).sqrt()
    }
}

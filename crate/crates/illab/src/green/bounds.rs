//! Classical sandwich bounds for the multi-pole Green function of the
//! unit bidisk: Σ_j g_{a_j} ≤ G_S ≤ min_j g_{a_j}, with the explicit
//! one-pole function g_a(z) = max(log|m_{a₁}(z₁)|, log|m_{a₂}(z₂)|)
//! built from Möbius factors.

use num_complex::Complex64;

use crate::geometry::PointC2;

use super::GreenError;

/// |m_w(ζ)| for the Möbius factor m_w(ζ) = (ζ − w)/(1 − w̄ζ).
fn moebius_abs(zeta: Complex64, w: Complex64) -> f64 {
    ((zeta - w) / (Complex64::new(1.0, 0.0) - w.conj() * zeta)).norm()
}

/// One-pole Green function of the bidisk with pole a.
pub fn one_pole(z: &[Complex64; 2], a: &PointC2) -> f64 {
    moebius_abs(z[0], a.z1)
        .ln()
        .max(moebius_abs(z[1], a.z2).ln())
}

/// (lower, upper) envelope for the Green function with poles `points`,
/// evaluated at z: the sum and the minimum of the one-pole functions.
pub fn bidisk_pole_bounds(
    points: &[PointC2],
    z: &[Complex64; 2],
    tol: &crate::tol::Tolerances,
) -> Result<(f64, f64), GreenError> {
    for p in points {
        if p.z1.norm() >= 1.0 || p.z2.norm() >= 1.0 {
            return Err(GreenError::OutsideDomain {
                detail: format!("pole {p:?} is not in the open bidisk"),
            });
        }
        let d = ((z[0] - p.z1).norm_sqr() + (z[1] - p.z2).norm_sqr()).sqrt();
        if d <= tol.coincidence.max(1e-14) {
            return Err(GreenError::PoleHit { at: *p });
        }
    }
    if z[0].norm() > 1.0 + 1e-12 || z[1].norm() > 1.0 + 1e-12 {
        return Err(GreenError::OutsideDomain {
            detail: format!(
                "evaluation point ({}, {}) outside the closed bidisk",
                z[0], z[1]
            ),
        });
    }
    let values: Vec<f64> = points.iter().map(|a| one_pole(z, a)).collect();
    let lower: f64 = values.iter().sum();
    let upper = values.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::Tolerances;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_pole_bounds_coincide() {
        let tol = Tolerances::default();
        let (lo, hi) =
            bidisk_pole_bounds(&[PointC2::origin()], &[c(0.5, 0.0), c(0.0, 0.0)], &tol).unwrap();
        assert!((lo - 0.5f64.ln()).abs() < 1e-14);
        assert!((hi - 0.5f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn two_pole_example() {
        let tol = Tolerances::default();
        let pts = [PointC2::origin(), PointC2::from_re(0.5, 0.0)];
        let z = [c(0.0, 0.0), c(0.5, 0.0)];
        let g0 = one_pole(&z, &pts[0]);
        let g1 = one_pole(&z, &pts[1]);
        // g0 = max(log 0, log 0.5) = log 0.5; g1 = max(log|m_{.5}(0)|, log 0.5)
        assert!((g0 - 0.5f64.ln()).abs() < 1e-14);
        assert!((g1 - 0.5f64.ln()).abs() < 1e-14);
        let (lo, hi) = bidisk_pole_bounds(&pts, &z, &tol).unwrap();
        assert!((lo - (g0 + g1)).abs() < 1e-14);
        assert!((hi - g0.min(g1)).abs() < 1e-14);
        assert!(lo <= hi);
    }

    #[test]
    fn boundary_values_vanish() {
        let tol = Tolerances::default();
        let pts = [PointC2::from_re(0.1, 0.05), PointC2::from_re(-0.2, 0.0)];
        // distinguished boundary point
        let z = [
            Complex64::from_polar(1.0, 0.7),
            Complex64::from_polar(1.0, -1.9),
        ];
        let (lo, hi) = bidisk_pole_bounds(&pts, &z, &tol).unwrap();
        assert!(lo.abs() < 1e-10);
        assert!(hi.abs() < 1e-10);
    }

    #[test]
    fn pole_hit_and_domain_errors() {
        let tol = Tolerances::default();
        let pts = [PointC2::from_re(0.1, 0.0)];
        assert!(matches!(
            bidisk_pole_bounds(&pts, &[c(0.1, 0.0), c(0.0, 0.0)], &tol),
            Err(GreenError::PoleHit { .. })
        ));
        assert!(matches!(
            bidisk_pole_bounds(
                &[PointC2::from_re(1.5, 0.0)],
                &[c(0.0, 0.0), c(0.0, 0.0)],
                &tol
            ),
            Err(GreenError::OutsideDomain { .. })
        ));
        // interior bounds are nonpositive and ordered
        let (lo, hi) = bidisk_pole_bounds(&pts, &[c(0.3, 0.2), c(-0.4, 0.1)], &tol).unwrap();
        assert!(lo <= hi + 1e-15);
        assert!(hi <= 0.0);
    }
}

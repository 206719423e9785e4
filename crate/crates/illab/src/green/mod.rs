//! The Green-function side of the generic case: normalized line
//! equations, pairing products, independence via resultants, the uniform
//! complete-intersection verification, gap statistics against the
//! candidate 2·max(log|z₁|, log|z₂|), and classical bidisk pole bounds.

mod bounds;
mod cimap;
mod lines;
mod sampling;
mod zeros;

pub use bounds::{bidisk_pole_bounds, one_pole};
pub use cimap::{independence_sets, independent_pair, CiMap};
pub use lines::{all_lines, line_equation, pairing_limits, pairing_products, AffineLine};
pub use sampling::{gap_report, green_candidate, ideal_green_candidate, GapReport, SampleSpec};
pub use zeros::{common_zeros, uci_verify, UciReport, UciSample};

use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::PointC2;

#[derive(Debug, Error)]
pub enum GreenError {
    #[error("coincident points: {detail}")]
    CoincidentPoints { detail: String },
    #[error("the pair shares a polynomial factor; its zero set is a curve")]
    SharedFactor,
    #[error("common zeros do not match the configuration: {} extra, {} missing", extra.len(), missing.len())]
    ExtraCommonZeros {
        extra: Vec<PointC2>,
        missing: Vec<PointC2>,
    },
    #[error("family does not converge: {detail}")]
    NotConverging { detail: String },
    #[error("the Green candidate is singular at the origin")]
    OriginSingularity,
    #[error("Ψ₀ vanishes on the unit sphere at ({}, {})", at[0], at[1])]
    ZeroOnSphere { at: [Complex64; 2] },
    #[error("pole hit at {at:?}")]
    PoleHit { at: PointC2 },
    #[error("outside the bidisk: {detail}")]
    OutsideDomain { detail: String },
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{PointC2, PointFamily, Schedule};
    use crate::tol::Tolerances;
    use crate::util::SplitMix64;

    fn square_family() -> PointFamily {
        PointFamily::from_fn("square", 4, |e| {
            let z = Complex64::default();
            vec![
                PointC2::new(z, z),
                PointC2::new(e, z),
                PointC2::new(z, e),
                PointC2::new(e, e),
            ]
        })
    }

    #[test]
    fn uci_on_the_square_family() {
        let tol = Tolerances::default();
        let sch = Schedule::default_geometric();
        let report = uci_verify(&square_family(), &sch, (0, 1), &tol).unwrap();
        assert!(report.coefficients_converge);
        assert_eq!(report.samples.len(), sch.len());
        for s in &report.samples {
            assert!(s.root_mismatch_rel <= tol.root_match_rel);
            assert!(s.c_observed.is_finite());
        }
    }

    #[test]
    fn custom_pair_with_an_extra_in_bidisk_zero_is_flagged() {
        // g = l12·l34 vanishes on all four points; h = l13·l', where l'
        // joins point 2 to a fifth location: the fourth Bezout
        // intersection lands inside the bidisk away from S.
        let tol = Tolerances::default();
        let e = 0.05;
        let pts = vec![
            PointC2::from_re(0.0, 0.0),
            PointC2::from_re(e, 0.0),
            PointC2::from_re(0.0, e),
            PointC2::from_re(e, e),
        ];
        let fs = pairing_products(&pts).unwrap();
        let g = fs[0].clone(); // z2 (z2 - e)
        let stray = PointC2::from_re(0.4, 0.3);
        let l13 = line_equation(&pts[0], &pts[2]).unwrap().to_polynomial();
        let lprime = line_equation(&pts[1], &stray).unwrap().to_polynomial();
        let h = &l13 * &lprime;
        let zeros = common_zeros(&g, &h, &tol).unwrap();
        // zeros: a1, a3 (on l13), a2 (on l'), and the stray intersection
        // of l' with z2 = e
        assert_eq!(zeros.len(), 4);
        let missing_a4 = !zeros.iter().any(|z| z.dist(&pts[3]) < 1e-9);
        assert!(missing_a4, "a4 is not a common zero of this custom pair");
    }

    #[test]
    fn resultant_tracks_common_roots_of_random_quadratic_pairs() {
        // |Res| above threshold iff the leading forms share no projective
        // root, cross-checked against the root-finding oracle.
        let mut rng = SplitMix64::new(77);
        let mut seen_zero = 0;
        let mut seen_nonzero = 0;
        for trial in 0..50 {
            let a = [rng.next_complex(), rng.next_complex(), rng.next_complex()];
            let (f, g_poly);
            if trial % 2 == 0 {
                // generic pair
                let b = [rng.next_complex(), rng.next_complex(), rng.next_complex()];
                f = quad(a);
                g_poly = quad(b);
            } else {
                // built to share the root [r : 1]
                let r = rng.next_complex();
                let l = linear_factor(r);
                let m1 = linear_factor(rng.next_complex());
                let m2 = linear_factor(rng.next_complex());
                f = &l * &m1;
                g_poly = &l * &m2;
            }
            let res = crate::poly::resultant_binary_quadratics(&f, &g_poly).unwrap();
            let shares = share_projective_root(&f, &g_poly);
            if shares {
                assert!(
                    res.norm() <= 1e-8 * f.max_coeff() * g_poly.max_coeff() * 1e2,
                    "shared root but |Res| = {:.3e}",
                    res.norm()
                );
                seen_zero += 1;
            } else {
                assert!(res.norm() > 1e-8, "no shared root but |Res| tiny");
                seen_nonzero += 1;
            }
        }
        assert!(seen_zero >= 20 && seen_nonzero >= 20);

        fn quad(c: [Complex64; 3]) -> crate::poly::Polynomial {
            let mut p = crate::poly::Polynomial::term_xy(c[0], 2, 0);
            p = &p + &crate::poly::Polynomial::term_xy(c[1], 1, 1);
            &p + &crate::poly::Polynomial::term_xy(c[2], 0, 2)
        }
        fn linear_factor(r: Complex64) -> crate::poly::Polynomial {
            // z1 - r z2 has root [r : 1]
            let p = crate::poly::Polynomial::term_xy(Complex64::new(1.0, 0.0), 1, 0);
            &p - &crate::poly::Polynomial::term_xy(r, 0, 1)
        }
        fn share_projective_root(f: &crate::poly::Polynomial, g: &crate::poly::Polynomial) -> bool {
            // roots of f (dehomogenized at z2 = 1, plus infinity)
            use crate::poly::Monomial;
            let a = f.coeff(&Monomial::xy(2, 0));
            let b = f.coeff(&Monomial::xy(1, 1));
            let c = f.coeff(&Monomial::xy(0, 2));
            let mut roots: Vec<[Complex64; 2]> = Vec::new();
            if a.norm() > 1e-12 {
                let disc = (b * b - 4.0 * a * c).sqrt();
                roots.push([(-b + disc) / (2.0 * a), Complex64::new(1.0, 0.0)]);
                roots.push([(-b - disc) / (2.0 * a), Complex64::new(1.0, 0.0)]);
            } else {
                roots.push([Complex64::new(1.0, 0.0), Complex64::default()]);
                if b.norm() > 1e-12 {
                    roots.push([-c / b, Complex64::new(1.0, 0.0)]);
                }
            }
            roots.iter().any(|r| {
                let n = (r[0].norm_sqr() + r[1].norm_sqr()).sqrt();
                let z = [r[0] / n, r[1] / n];
                g.eval(&z).norm() < 1e-7 * g.max_coeff()
            })
        }
    }
}

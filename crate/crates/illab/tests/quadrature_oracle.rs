//! Acceptance criterion 5: quotient coordinates computed by divided
//! differences agree with an independent contour-integral oracle.
//!
//! The oracle evaluates c_α = (2πi)⁻² ∬ f(z) / (φ_{α₁+1}(z₁)·φ_{α₂+1}(z₂))
//! dz₁ dz₂ over the product of unit circles by the trapezoid rule, which
//! converges geometrically for polynomial integrands with interpolation
//! nodes inside the disk. It never touches the production interpolation
//! path.

use illab::geometry::PointC2;
use illab::limits::{grid_points, NewtonBasis};
use illab::poly::{monomials_upto, Polynomial};
use illab::tol::Tolerances;
use illab::util::SplitMix64;
use num_complex::Complex64;

const CIRCLE_NODES: usize = 96;

fn phi_eval(nodes: &[Complex64], k: usize, zeta: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &b in &nodes[..k] {
        acc *= zeta - b;
    }
    acc
}

/// Contour-integral coordinates over the torus of radius 1.
fn quadrature_coordinates(f: &Polynomial, nb: &NewtonBasis) -> Vec<Complex64> {
    let axes = nb.grid().axes();
    let alphas = nb.grid().alphas();
    let m = CIRCLE_NODES;
    let tau = 2.0 * std::f64::consts::PI;
    let circle: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(1.0, tau * k as f64 / m as f64))
        .collect();
    alphas
        .iter()
        .map(|alpha| {
            let k1 = alpha.exponent(0) as usize + 1;
            let k2 = alpha.exponent(1) as usize + 1;
            let mut acc = Complex64::default();
            for &z1 in &circle {
                let d1 = phi_eval(&axes[0], k1, z1);
                for &z2 in &circle {
                    let d2 = phi_eval(&axes[1], k2, z2);
                    // dz/z-free form: dz_j = i z_j dθ_j
                    acc += f.eval(&[z1, z2]) * z1 * z2 / (d1 * d2);
                }
            }
            acc / (m * m) as f64
        })
        .collect()
}

fn fixed_polynomial_suite() -> Vec<Polynomial> {
    // 20 deterministic polynomials of degree ≤ 6
    let monomials = monomials_upto(2, 6);
    let mut rng = SplitMix64::new(0x5EED_CAFE);
    (0..20)
        .map(|_| {
            let mut p = Polynomial::zero();
            for m in &monomials {
                if rng.next_f64() < 0.4 {
                    p.add_term(m.clone(), rng.next_complex());
                }
            }
            if p.is_zero() {
                p.add_term(monomials[3].clone(), Complex64::new(1.0, 0.0));
            }
            p
        })
        .collect()
}

#[test]
fn criterion_5_quadrature_oracle_agreement() {
    let tol = Tolerances::default();
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for eps in [0.1, 0.01] {
        let grids = [
            // 2x2 product grid
            vec![
                PointC2::from_re(0.0, 0.0),
                PointC2::from_re(eps, 0.0),
                PointC2::from_re(0.0, eps),
                PointC2::from_re(eps, eps),
            ],
            // 3x2 grid
            vec![
                PointC2::from_re(0.0, 0.0),
                PointC2::from_re(eps, 0.0),
                PointC2::from_re(0.0, eps),
                PointC2::from_re(2.0 * eps, 0.0),
            ],
        ];
        for pts in grids {
            let grid = grid_points(&pts, &tol).expect("grid");
            let nb = NewtonBasis::new(grid);
            for f in fixed_polynomial_suite() {
                let via_interp = nb.quotient_coordinates(&f, &tol).expect("interp");
                let via_quad = quadrature_coordinates(&f, &nb);
                let scale = via_interp
                    .iter()
                    .map(|c| c.norm())
                    .fold(0.0, f64::max)
                    .max(1e-300);
                for (a, b) in via_interp.iter().zip(&via_quad) {
                    let rel = (a - b).norm() / scale;
                    worst = worst.max(rel);
                    if rel > 1e-6 {
                        pass = false;
                    }
                }
            }
        }
    }
    println!(
        "acceptance criterion 5 (interpolation vs torus quadrature, worst rel {worst:.3e}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass);
}

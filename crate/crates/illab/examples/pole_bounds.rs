//! Classical sandwich bounds for the multi-pole Green function of the
//! bidisk, evaluated along a ray, next to the degenerate-limit candidate.
//!
//! ```bash
//! cargo run --example pole_bounds
//! ```

use illab::geometry::PointC2;
use illab::green::{bidisk_pole_bounds, green_candidate, ideal_green_candidate};
use illab::poly::parse_polynomial;
use illab::tol::Tolerances;
use num_complex::Complex64;

fn main() {
    let tol = Tolerances::default();
    let e = 0.05;
    let poles = [
        PointC2::from_re(0.0, 0.0),
        PointC2::from_re(e, 0.0),
        PointC2::from_re(0.0, e),
        PointC2::from_re(2.0 * e, 0.0),
    ];

    println!("poles: four points at scale {e}");
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "t", "lower", "upper", "2maxlog", "ideal-cand"
    );
    let i0 = [
        parse_polynomial("z1*z2").unwrap(),
        parse_polynomial("z2^2").unwrap(),
        parse_polynomial("z1^3").unwrap(),
    ];
    for k in 1..=9 {
        let t = k as f64 / 10.0;
        let z = [Complex64::new(t, 0.0), Complex64::new(t * 0.7, 0.0)];
        let (lo, hi) = bidisk_pole_bounds(&poles, &z, &tol).expect("in domain");
        let cand = green_candidate(&z).expect("nonzero");
        let icand = ideal_green_candidate(&i0, &z);
        println!("{t:>8.2} {lo:>12.5} {hi:>12.5} {cand:>12.5} {icand:>12.5}");
    }
    println!("\nlower ≤ upper everywhere; both vanish at the distinguished boundary:");
    let z = [
        Complex64::from_polar(1.0, 0.3),
        Complex64::from_polar(1.0, -1.1),
    ];
    let (lo, hi) = bidisk_pole_bounds(&poles, &z, &tol).expect("boundary");
    println!("  at |z1| = |z2| = 1: lower = {lo:.2e}, upper = {hi:.2e}");
}

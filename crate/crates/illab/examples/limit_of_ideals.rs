//! Follow a family of vanishing ideals to its flat limit: grid shapes,
//! subspace frames, gap decay, extrapolation, and the certified limit
//! ideal with its quotient staircase.
//!
//! ```bash
//! cargo run --example limit_of_ideals
//! ```

use illab::geometry::{PointC2, PointFamily, Schedule};
use illab::limits::{limit_ideal, LimitStatus};
use illab::tol::{Precision, Tolerances};
use num_complex::Complex64;

fn run(fam: &PointFamily, tol: &Tolerances) {
    let schedule = Schedule::default_geometric();
    println!("== {}", fam.label());
    let out = limit_ideal(fam, &schedule, tol).expect("pipeline");
    println!(
        "  grid shape {:?} (quotient dimension {})",
        out.shape.counts, out.shape.d
    );
    println!("  subspace dimensions per sample: {:?}", out.verdict.dims);
    print!("  consecutive gaps:");
    for g in &out.verdict.gaps {
        print!(" {g:.2e}");
    }
    println!();
    println!(
        "  extrapolated-estimate gaps: {:?}",
        out.verdict
            .extrapolation_gaps
            .iter()
            .map(|g| format!("{g:.2e}"))
            .collect::<Vec<_>>()
    );
    match out.verdict.status {
        LimitStatus::Converged => {
            let ideal = out.ideal.expect("converged");
            println!("  status: Converged, certified: {}", out.certified);
            for g in ideal.generators() {
                println!("    generator: {g}");
            }
            let stair: Vec<String> = ideal.staircase().iter().map(|m| m.to_string()).collect();
            println!(
                "    staircase: {{{}}}  (length {})",
                stair.join(", "),
                ideal.length()
            );
        }
        LimitStatus::NotConverged => {
            println!(
                "  status: NotConverged (limsup dim {}, liminf dim {})",
                out.verdict.limsup_frame.dim(),
                out.verdict.liminf_frame.dim()
            );
        }
    }
    println!();
}

fn main() {
    let tol = Tolerances::default();

    // collinear triple: the limit needs three generators
    let gamma = PointFamily::from_fn("gamma = 2 family", 4, |e| {
        let z = Complex64::default();
        vec![
            PointC2::new(z, z),
            PointC2::new(e, z),
            PointC2::new(z, e),
            PointC2::new(e.scale(2.0), z),
        ]
    });
    run(&gamma, &tol);

    // skewed generic family: the limit is a complete intersection
    let skew = PointFamily::from_fn("skewed generic family", 4, |e| {
        let z = Complex64::default();
        vec![
            PointC2::new(z, z),
            PointC2::new(e, z),
            PointC2::new(z, e),
            PointC2::new(e, -e),
        ]
    });
    run(&skew, &tol);

    // square-root coordinates need the extended-precision frame pipeline
    let tol_ext = Tolerances {
        precision: Precision::Extended,
        ..Tolerances::default()
    };
    let reparam = PointFamily::from_fn("reparameterized family (k = 1)", 4, |e| {
        let z = Complex64::default();
        let rho = e.scale(0.5);
        let delta = e.sqrt();
        let beta = -e.sqrt().scale(0.5);
        vec![
            PointC2::new(z, z),
            PointC2::new(e, z),
            PointC2::new(rho, delta * rho),
            PointC2::new(z, beta),
        ]
    });
    run(&reparam, &tol_ext);
}

//! Classify four-point families by their limit directions.
//!
//! ```bash
//! cargo run --example classify_family
//! ```

use illab::geometry::{classify, six_directions, PointC2, PointFamily, Schedule};
use illab::tol::Tolerances;
use num_complex::Complex64;

fn show(fam: &PointFamily, schedule: &Schedule, tol: &Tolerances) {
    println!("== {}", fam.label());
    match six_directions(fam, schedule, tol) {
        Ok(ds) => {
            for ((i, j), est) in ds.entries() {
                let c = est.class.as_ref().expect("converged");
                println!(
                    "  v{}{} = [{:.4} : {:.4}]   (extrapolation error scale {:.1e})",
                    i + 1,
                    j + 1,
                    c.rep()[0],
                    c.rep()[1],
                    est.uncertainty
                );
            }
            println!("  distinct classes: {}", ds.distinct_count());
        }
        Err(e) => println!("  directions: {e}"),
    }
    let cls = classify(fam, schedule, tol).expect("classify");
    println!("  classification: {}", cls.tag);
    if let Some(t) = cls.evidence.collinear_triple {
        println!("  collinear triple: {t:?}");
    }
    if let Some(v) = cls.evidence.degenerate_vertex {
        println!("  vertex with a single direction: {v}");
    }
    println!();
}

fn main() {
    let tol = Tolerances::default();
    let schedule = Schedule::default_geometric();

    // the 2x2 product grid: every subset spreads, every vertex spreads
    let square = PointFamily::from_fn("square grid", 4, |e| {
        let z = Complex64::default();
        vec![
            PointC2::new(z, z),
            PointC2::new(e, z),
            PointC2::new(z, e),
            PointC2::new(e, e),
        ]
    });
    show(&square, &schedule, &tol);

    // three points collapse onto the z1-axis
    let gamma = PointFamily::from_fn("gamma = 2 family", 4, |e| {
        let z = Complex64::default();
        vec![
            PointC2::new(z, z),
            PointC2::new(e, z),
            PointC2::new(z, e),
            PointC2::new(e.scale(2.0), z),
        ]
    });
    show(&gamma, &schedule, &tol);

    // one vertex sees a single limit direction
    let vertex = PointFamily::from_fn("vertex-degenerate family", 4, |e| {
        let z = Complex64::default();
        let e2 = e * e;
        vec![
            PointC2::new(z, z),
            PointC2::new(-e, z),
            PointC2::new(z, e2),
            PointC2::new(e2, e2.scale(2.0)),
        ]
    });
    show(&vertex, &schedule, &tol);

    // a pair whose direction oscillates: reported, not guessed
    let oscillating = PointFamily::from_fn("oscillating pair", 4, |e| {
        let z = Complex64::default();
        let phase = (1.0 / e.norm()).sin();
        vec![
            PointC2::new(z, z),
            PointC2::new(e, e * Complex64::new(0.0, phase)),
            PointC2::new(z, e),
            PointC2::new(e, e),
        ]
    });
    show(&oscillating, &schedule, &tol);
}

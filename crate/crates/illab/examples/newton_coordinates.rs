//! Newton bases on coordinate grids: the shifted-factor polynomials, the
//! triangular evaluation matrix, and quotient coordinates by divided
//! differences.
//!
//! ```bash
//! cargo run --example newton_coordinates
//! ```

use illab::geometry::PointC2;
use illab::limits::{grid_points, NewtonBasis};
use illab::poly::parse_polynomial;
use illab::tol::Tolerances;

fn main() {
    let tol = Tolerances::default();
    let e = 0.1;
    // four points whose projections give a 3x2 grid of six nodes
    let pts = [
        PointC2::from_re(0.0, 0.0),
        PointC2::from_re(e, 0.0),
        PointC2::from_re(0.0, e),
        PointC2::from_re(2.0 * e, 0.0),
    ];
    let grid = grid_points(&pts, &tol).expect("grid");
    println!(
        "grid shape {:?}: {} nodes from {} points",
        grid.shape().counts,
        grid.shape().d,
        pts.len()
    );
    let nb = NewtonBasis::new(grid);

    println!("\nNewton basis elements (monic, lower-order shifts):");
    for alpha in nb.grid().alphas() {
        println!("  Ψ_{alpha} = {}", nb.polynomial(alpha));
    }

    println!("\nevaluation matrix on the grid (rows = nodes, cols = Ψ_α):");
    let t = nb.eval_matrix();
    for r in 0..t.nrows() {
        let row: Vec<String> = (0..t.ncols())
            .map(|c| format!("{:9.4}", t[(r, c)].re))
            .collect();
        println!("  [{}]", row.join(" "));
    }
    println!("  (lower triangular: each node annihilates the later basis elements)");

    let f = parse_polynomial("z1*z2 + 3*z1^2 - 0.5").expect("parse");
    let coords = nb.quotient_coordinates(&f, &tol).expect("coordinates");
    println!("\nquotient coordinates of f = {f}:");
    for (alpha, c) in nb.grid().alphas().iter().zip(&coords) {
        if c.norm() > 1e-12 {
            println!("  c_{alpha} = {c:.6}");
        }
    }
    // the remainder f - Σ c_α Ψ_α vanishes on every grid node
    let mut recon = illab::poly::Polynomial::zero();
    for (alpha, c) in nb.grid().alphas().iter().zip(&coords) {
        recon = &recon + &nb.polynomial(alpha).scaled(*c);
    }
    let defect = &f - &recon;
    let worst: f64 = nb
        .grid()
        .alphas()
        .iter()
        .map(|m| {
            defect
                .eval(&{
                    let node = nb.grid().node(m);
                    [node[0], node[1]]
                })
                .norm()
        })
        .fold(0.0, f64::max);
    println!("\nmax |f - Σ c_α Ψ_α| over the grid: {worst:.3e}");
}

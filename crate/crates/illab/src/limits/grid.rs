//! Coordinate grids: per-axis clustered projections of a point set and
//! their cartesian product, indexed by multi-indices.

use num_complex::Complex64;

use crate::geometry::PointC2;
use crate::poly::Monomial;
use crate::tol::Tolerances;

use super::LimitError;

/// Per-axis counts of distinct coordinate projections, and their product.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GridShape {
    /// (N₁, …, Nₙ)
    pub counts: Vec<usize>,
    /// d = ∏ N_j
    pub d: usize,
}

impl GridShape {
    pub fn new(counts: Vec<usize>) -> Self {
        let d = counts.iter().product();
        GridShape { counts, d }
    }

    /// Multi-indices α < 𝒩 in ascending graded-lex order, reusing the
    /// monomial order so grid indices and quotient monomials align.
    pub fn alphas(&self) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(self.d);
        let mut cur = vec![0u32; self.counts.len()];
        loop {
            out.push(Monomial::new(cur.clone()));
            // odometer increment
            let mut j = 0;
            loop {
                if j == cur.len() {
                    out.sort();
                    return out;
                }
                cur[j] += 1;
                if (cur[j] as usize) < self.counts[j] {
                    break;
                }
                cur[j] = 0;
                j += 1;
            }
        }
    }

    /// Total degree of the largest multi-index, Σ (N_j − 1).
    pub fn max_degree(&self) -> u32 {
        self.counts.iter().map(|&n| (n - 1) as u32).sum()
    }
}

/// The cartesian grid spanned by the coordinate projections of a point
/// set: per-axis sorted distinct values plus the product enumeration.
#[derive(Debug, Clone)]
pub struct GridPoints {
    axes: Vec<Vec<Complex64>>,
    shape: GridShape,
    alphas: Vec<Monomial>,
}

/// Deterministic order on clustered axis values: by modulus, then real,
/// then imaginary part. Stable along shrinking schedules where distinct
/// values separate by scale.
fn axis_sort_key(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    (a.norm(), a.re, a.im)
        .partial_cmp(&(b.norm(), b.re, b.im))
        .expect("finite coordinates")
}

/// Two axis values are the same cluster when their distance is small
/// relative to the larger of the two. Pairwise-relative comparison keeps
/// mixed-scale axes apart (ε² stays distinct from 0 even when the axis
/// scale is √ε).
fn same_cluster(a: Complex64, b: Complex64, rel_tol: f64) -> bool {
    (a - b).norm() <= rel_tol * a.norm().max(b.norm()).max(1e-300)
}

fn cluster_axis(values: &[Complex64], rel_tol: f64) -> Vec<Complex64> {
    let mut centers: Vec<(Complex64, usize)> = Vec::new();
    for &v in values {
        match centers
            .iter_mut()
            .find(|(c, _)| same_cluster(*c, v, rel_tol))
        {
            Some((c, n)) => {
                // running mean keeps the center representative
                *c = (*c * (*n as f64) + v) / (*n as f64 + 1.0);
                *n += 1;
            }
            None => centers.push((v, 1)),
        }
    }
    let mut out: Vec<Complex64> = centers.into_iter().map(|(c, _)| c).collect();
    out.sort_by(axis_sort_key);
    out
}

impl GridPoints {
    pub fn shape(&self) -> &GridShape {
        &self.shape
    }

    pub fn axes(&self) -> &[Vec<Complex64>] {
        &self.axes
    }

    /// Multi-indices (as monomials) in the fixed enumeration order.
    pub fn alphas(&self) -> &[Monomial] {
        &self.alphas
    }

    /// Grid node for a multi-index.
    pub fn node(&self, m: &Monomial) -> Vec<Complex64> {
        self.axes
            .iter()
            .enumerate()
            .map(|(j, ax)| ax[m.exponent(j) as usize])
            .collect()
    }

    /// Multi-index of a point of the underlying set; errors if some
    /// coordinate does not match a cluster center.
    pub fn locate(&self, p: &PointC2, tol: &Tolerances) -> Result<Monomial, LimitError> {
        let coords = [p.z1, p.z2];
        let mut idx = Vec::with_capacity(self.axes.len());
        for (j, ax) in self.axes.iter().enumerate() {
            let hit = ax
                .iter()
                .position(|&c| same_cluster(c, coords[j], 10.0 * tol.grid_cluster));
            match hit {
                Some(i) => idx.push(i as u32),
                None => {
                    return Err(LimitError::UnstableShape(format!(
                        "coordinate {} of point does not match any axis-{} cluster",
                        coords[j],
                        j + 1
                    )))
                }
            }
        }
        Ok(Monomial::new(idx))
    }

    /// Index of a multi-index in the enumeration.
    pub fn position(&self, m: &Monomial) -> usize {
        self.alphas
            .binary_search(m)
            .expect("multi-index below shape")
    }
}

/// Cluster the coordinate projections of a point set into a grid.
pub fn grid_points(points: &[PointC2], tol: &Tolerances) -> Result<GridPoints, LimitError> {
    if points.is_empty() {
        return Err(LimitError::UnstableShape("empty point set".into()));
    }
    let axes: Vec<Vec<Complex64>> = (0..2)
        .map(|j| {
            let values: Vec<Complex64> = points
                .iter()
                .map(|p| if j == 0 { p.z1 } else { p.z2 })
                .collect();
            cluster_axis(&values, tol.grid_cluster)
        })
        .collect();
    let shape = GridShape::new(axes.iter().map(|a| a.len()).collect());
    let alphas = shape.alphas();
    Ok(GridPoints {
        axes,
        shape,
        alphas,
    })
}

/// Just the shape (N₁, N₂) of the clustered projections.
pub fn grid_shape(points: &[PointC2], tol: &Tolerances) -> Result<GridShape, LimitError> {
    Ok(grid_points(points, tol)?.shape.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts_re(xy: &[(f64, f64)]) -> Vec<PointC2> {
        xy.iter().map(|&(x, y)| PointC2::from_re(x, y)).collect()
    }

    #[test]
    fn product_grid_of_the_square() {
        let e = 0.01;
        let pts = pts_re(&[(0.0, 0.0), (e, 0.0), (0.0, e), (e, e)]);
        let g = grid_points(&pts, &Tolerances::default()).unwrap();
        assert_eq!(g.shape().counts, vec![2, 2]);
        assert_eq!(g.shape().d, 4);
        // the grid is the point set itself
        for p in &pts {
            g.locate(p, &Tolerances::default()).unwrap();
        }
    }

    #[test]
    fn three_by_two_shape() {
        let e = 0.01;
        let pts = pts_re(&[(0.0, 0.0), (e, 0.0), (0.0, e), (2.0 * e, 0.0)]);
        let g = grid_points(&pts, &Tolerances::default()).unwrap();
        assert_eq!(g.shape().counts, vec![3, 2]);
        assert_eq!(g.shape().d, 6);
    }

    #[test]
    fn mixed_scale_axes() {
        let e: f64 = 0.01;
        let pts = pts_re(&[(0.0, 0.0), (e, 0.0), (e * e, e), (e, e * e)]);
        let g = grid_points(&pts, &Tolerances::default()).unwrap();
        assert_eq!(g.shape().counts, vec![3, 3]);
        assert_eq!(g.shape().d, 9);
    }

    #[test]
    fn alphas_align_with_monomial_order() {
        let shape = GridShape::new(vec![3, 2]);
        let alphas = shape.alphas();
        assert_eq!(alphas.len(), 6);
        for w in alphas.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert_eq!(alphas[0], Monomial::one());
        assert_eq!(*alphas.last().unwrap(), Monomial::xy(2, 1));
    }

    #[test]
    fn axis_ordering_is_stable_under_shrinking() {
        // values {0, -eps, eps^2} order by modulus: 0, eps^2, eps for all eps
        for &e in &[0.1, 0.01, 1e-4] {
            let pts = pts_re(&[(0.0, 0.0), (-e, 0.0), (e * e, 0.0), (0.0, 1.0)]);
            let g = grid_points(&pts[..3], &Tolerances::default()).unwrap();
            let ax = &g.axes()[0];
            assert_eq!(ax.len(), 3);
            assert!(ax[0].norm() < 1e-300);
            assert!((ax[1].re - e * e).abs() < 1e-12 * e);
            assert!((ax[2].re + e).abs() < 1e-12 * e);
        }
    }
}

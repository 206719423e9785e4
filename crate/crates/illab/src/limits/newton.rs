//! Multivariate Newton bases on product grids: the shifted-factor
//! polynomials Ψ_α, their triangular evaluation matrix, coordinates in
//! the quotient (tensorized divided differences), and the explicit
//! inverse columns used to span ideal subspaces.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::poly::{Monomial, Polynomial};
use crate::tol::Tolerances;

use super::grid::GridPoints;
use super::LimitError;

/// φ_{k}(ζ) = ∏_{i<k} (ζ − b_i) evaluated at ζ.
fn phi_eval(nodes: &[Complex64], k: usize, zeta: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &b in &nodes[..k] {
        acc *= zeta - b;
    }
    acc
}

/// The Newton basis {Ψ_α : α < 𝒩} attached to a grid. Each Ψ_α is monic
/// in z^α with lower-order perturbations, and the basis evaluates
/// triangularly on the grid.
#[derive(Debug, Clone)]
pub struct NewtonBasis {
    grid: GridPoints,
}

impl NewtonBasis {
    pub fn new(grid: GridPoints) -> Self {
        NewtonBasis { grid }
    }

    pub fn grid(&self) -> &GridPoints {
        &self.grid
    }

    /// Ψ_α as a polynomial.
    pub fn polynomial(&self, alpha: &Monomial) -> Polynomial {
        let mut p = Polynomial::one();
        for (j, ax) in self.grid.axes().iter().enumerate() {
            for &node in &ax[..alpha.exponent(j) as usize] {
                let lin = &Polynomial::var(j) - &Polynomial::constant(node);
                p = &p * &lin;
            }
        }
        p
    }

    /// Ψ_α(z) evaluated directly from the factors.
    pub fn eval(&self, alpha: &Monomial, z: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (j, ax) in self.grid.axes().iter().enumerate() {
            acc *= phi_eval(ax, alpha.exponent(j) as usize, z[j]);
        }
        acc
    }

    /// Evaluation matrix T[m, α] = Ψ_α(p_m), rows and columns in the
    /// shared multi-index enumeration; lower triangular.
    pub fn eval_matrix(&self) -> DMatrix<Complex64> {
        let alphas = self.grid.alphas();
        let d = alphas.len();
        DMatrix::from_fn(d, d, |r, c| {
            let node = self.grid.node(&alphas[r]);
            self.eval(&alphas[c], &node)
        })
    }

    /// Diagonal growth of the evaluation matrix on unit-scaled axes:
    /// max/min modulus of ∏_j ∏_{i<α_j} (b̂_{α_j} − b̂_i). Scale-free
    /// measure of grid conditioning.
    pub fn diagonal_growth(&self) -> f64 {
        let mut min = f64::INFINITY;
        let mut max = 0.0f64;
        for alpha in self.grid.alphas() {
            let mut diag = 1.0f64;
            for (j, ax) in self.grid.axes().iter().enumerate() {
                let scale = ax.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
                let k = alpha.exponent(j) as usize;
                for i in 0..k {
                    diag *= (ax[k] - ax[i]).norm() / scale;
                }
            }
            min = min.min(diag);
            max = max.max(diag);
        }
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Coordinates of `[f]` in the basis `{[Ψ_α]}`: tensorized divided
    /// differences of f over the grid, so that f − Σ c_α Ψ_α vanishes at
    /// every grid node. Output order follows `grid.alphas()`.
    pub fn quotient_coordinates(
        &self,
        f: &Polynomial,
        tol: &Tolerances,
    ) -> Result<Vec<Complex64>, LimitError> {
        let growth = self.diagonal_growth();
        if growth > tol.triangular_growth {
            return Err(LimitError::IllConditionedGrid { growth });
        }
        let alphas = self.grid.alphas();
        let d = alphas.len();
        let counts = self.grid.shape().counts.clone();
        // values over the full product grid in odometer layout
        let mut strides = vec![1usize; counts.len()];
        for j in 1..counts.len() {
            strides[j] = strides[j - 1] * counts[j - 1];
        }
        let total: usize = counts.iter().product();
        let mut values = vec![Complex64::default(); total];
        for flat in 0..total {
            let mut z = Vec::with_capacity(counts.len());
            for (j, ax) in self.grid.axes().iter().enumerate() {
                z.push(ax[(flat / strides[j]) % counts[j]]);
            }
            values[flat] = f.eval(&z);
        }
        // in-place divided differences along each axis
        for (j, ax) in self.grid.axes().iter().enumerate() {
            let nj = counts[j];
            let stride = strides[j];
            for base in 0..total {
                if !(base / stride).is_multiple_of(nj) {
                    continue;
                }
                for k in 1..nj {
                    for i in (k..nj).rev() {
                        let hi = base + i * stride;
                        let lo = base + (i - 1) * stride;
                        let denom = ax[i] - ax[i - k];
                        values[hi] = (values[hi] - values[lo]) / denom;
                    }
                }
            }
        }
        // read off the coefficients in enumeration order
        let mut out = Vec::with_capacity(d);
        for alpha in alphas {
            let mut flat = 0usize;
            for (j, s) in strides.iter().enumerate() {
                flat += (alpha.exponent(j) as usize) * s;
            }
            out.push(values[flat]);
        }
        Ok(out)
    }

    /// `inverse_column` in double-double arithmetic, for collapsing grids
    /// whose weight products span too many orders of magnitude for f64.
    pub fn inverse_column_dd(&self, m: &Monomial) -> Vec<crate::dd::DdC> {
        use crate::dd::DdC;
        let axes = self.grid.axes();
        let per_axis: Vec<Vec<DdC>> = axes
            .iter()
            .enumerate()
            .map(|(j, ax)| {
                let mj = m.exponent(j) as usize;
                let n = ax.len();
                let bm = DdC::from_c64(ax[mj]);
                let mut w = vec![DdC::ZERO; n];
                let mut denom = DdC::ONE;
                for &node in &ax[..mj] {
                    denom = denom.mul(bm.sub(DdC::from_c64(node)));
                }
                for (k, wk) in w.iter_mut().enumerate().skip(mj) {
                    if k > mj {
                        denom = denom.mul(bm.sub(DdC::from_c64(ax[k])));
                    }
                    *wk = DdC::ONE.div(denom);
                }
                w
            })
            .collect();
        self.grid
            .alphas()
            .iter()
            .map(|alpha| {
                let mut acc = DdC::ONE;
                for (j, w) in per_axis.iter().enumerate() {
                    acc = acc.mul(w[alpha.exponent(j) as usize]);
                }
                acc
            })
            .collect()
    }

    /// Column of T⁻¹ for the unit vector at grid node `m`: the Newton
    /// coefficients of the Lagrange indicator of that node, as explicit
    /// products of node differences (tensorized 1-D weights).
    pub fn inverse_column(&self, m: &Monomial) -> Vec<Complex64> {
        let axes = self.grid.axes();
        // per-axis weights W_j[k] = coefficient of φ_k in the indicator of
        // node m_j: 1/∏_{l≤k, l≠m_j}(b_{m_j} − b_l) for k ≥ m_j, else 0
        let per_axis: Vec<Vec<Complex64>> = axes
            .iter()
            .enumerate()
            .map(|(j, ax)| {
                let mj = m.exponent(j) as usize;
                let n = ax.len();
                let mut w = vec![Complex64::default(); n];
                let mut denom = Complex64::new(1.0, 0.0);
                for l in 0..mj {
                    denom *= ax[mj] - ax[l];
                }
                for (k, wk) in w.iter_mut().enumerate().skip(mj) {
                    if k > mj {
                        denom *= ax[mj] - ax[k];
                    }
                    *wk = Complex64::new(1.0, 0.0) / denom;
                }
                w
            })
            .collect();
        self.grid
            .alphas()
            .iter()
            .map(|alpha| {
                let mut acc = Complex64::new(1.0, 0.0);
                for (j, w) in per_axis.iter().enumerate() {
                    acc *= w[alpha.exponent(j) as usize];
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointC2;
    use crate::limits::grid::grid_points;
    use crate::poly::parse_polynomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square_grid(e: f64) -> GridPoints {
        let pts = [
            PointC2::from_re(0.0, 0.0),
            PointC2::from_re(e, 0.0),
            PointC2::from_re(0.0, e),
            PointC2::from_re(e, e),
        ];
        grid_points(&pts, &Tolerances::default()).unwrap()
    }

    #[test]
    fn evaluation_matrix_is_unit_lower_triangular_after_row_scaling() {
        let nb = NewtonBasis::new(square_grid(0.1));
        let t = nb.eval_matrix();
        let d = t.nrows();
        for r in 0..d {
            let diag = t[(r, r)];
            assert!(diag.norm() > 0.0);
            for col in (r + 1)..d {
                assert!(
                    (t[(r, col)] / diag).norm() <= 1e-10,
                    "upper entry at ({r},{col})"
                );
            }
        }
    }

    #[test]
    fn basis_elements_are_monic_with_unit_coordinates() {
        let nb = NewtonBasis::new(square_grid(0.1));
        let tol = Tolerances::default();
        for (i, alpha) in nb.grid().alphas().to_vec().iter().enumerate() {
            let psi = nb.polynomial(alpha);
            assert_eq!(psi.leading_monomial().unwrap(), alpha);
            assert!((psi.leading_coeff() - c(1.0, 0.0)).norm() < 1e-14);
            let coords = nb.quotient_coordinates(&psi, &tol).unwrap();
            for (k, co) in coords.iter().enumerate() {
                let expect = if k == i { 1.0 } else { 0.0 };
                assert!((co - c(expect, 0.0)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn grid_ideal_elements_have_zero_coordinates() {
        let e = 0.1;
        let nb = NewtonBasis::new(square_grid(e));
        let tol = Tolerances::default();
        // z1(z1 - e) vanishes on the grid
        let f = parse_polynomial(&format!("z1^2 - {e} * z1")).unwrap();
        let coords = nb.quotient_coordinates(&f, &tol).unwrap();
        assert!(coords.iter().all(|co| co.norm() < 1e-12));
    }

    #[test]
    fn product_monomial_is_its_own_newton_element() {
        // on {0,eps}^2: z1*z2 = Ψ_(1,1) exactly
        let e = 0.1;
        let nb = NewtonBasis::new(square_grid(e));
        let tol = Tolerances::default();
        let f = parse_polynomial("z1 * z2").unwrap();
        let coords = nb.quotient_coordinates(&f, &tol).unwrap();
        for (alpha, co) in nb.grid().alphas().iter().zip(&coords) {
            let expect = if *alpha == Monomial::xy(1, 1) {
                1.0
            } else {
                0.0
            };
            assert!((co - c(expect, 0.0)).norm() < 1e-12, "at {alpha}");
        }
    }

    #[test]
    fn inverse_columns_invert_the_evaluation_matrix() {
        let e = 0.05;
        let pts = [
            PointC2::from_re(0.0, 0.0),
            PointC2::from_re(e, 0.0),
            PointC2::from_re(0.0, e),
            PointC2::from_re(2.0 * e, 0.0),
        ];
        let g = grid_points(&pts, &Tolerances::default()).unwrap();
        let nb = NewtonBasis::new(g);
        let t = nb.eval_matrix();
        let d = t.nrows();
        let alphas = nb.grid().alphas().to_vec();
        let mut inv = DMatrix::<Complex64>::zeros(d, d);
        for (col, m) in alphas.iter().enumerate() {
            let w = nb.inverse_column(m);
            for (row, v) in w.iter().enumerate() {
                inv[(row, col)] = *v;
            }
        }
        let prod = &t * &inv;
        let err = (&prod - DMatrix::<Complex64>::identity(d, d)).norm();
        assert!(err < 1e-9, "T * T^-1 deviates by {err}");
    }

    #[test]
    fn growth_guard_trips_on_nearly_confluent_nodes() {
        // separations 2e-6 stay above the clustering tolerance but drive
        // the scaled diagonal growth past 1e12 across two axes
        let pts = [
            PointC2::from_re(0.0, 0.0),
            PointC2::from_re(2e-6, 2e-6),
            PointC2::from_re(4e-6, 4e-6),
            PointC2::from_re(1.0, 1.0),
        ];
        let g = grid_points(&pts, &Tolerances::default()).unwrap();
        assert_eq!(g.shape().counts, vec![4, 4]);
        let nb = NewtonBasis::new(g);
        let f = parse_polynomial("z1").unwrap();
        let res = nb.quotient_coordinates(&f, &Tolerances::default());
        assert!(matches!(res, Err(LimitError::IllConditionedGrid { .. })));
    }
}

//! Normalized affine line equations and the three pairing products
//! f₁ = l₁₂·l₃₄, f₂ = l₁₃·l₂₄, f₃ = l₁₄·l₂₃ vanishing on a four-point
//! configuration.

use num_complex::Complex64;

use crate::geometry::{DirectionSet, PointC2, ProjectiveDirection};
use crate::poly::Polynomial;

use super::GreenError;

/// A line u₁z₁ + u₂z₂ + c = 0 with ‖(u₁,u₂)‖ = 1 and the larger normal
/// component rotated to the positive real axis.
#[derive(Debug, Clone, Copy)]
pub struct AffineLine {
    pub normal: [Complex64; 2],
    pub offset: Complex64,
}

fn canonical_scale(u: [Complex64; 2]) -> Option<Complex64> {
    let n2 = u[0].norm_sqr() + u[1].norm_sqr();
    if n2 == 0.0 {
        return None;
    }
    let pivot = if u[0].norm() >= u[1].norm() {
        u[0]
    } else {
        u[1]
    };
    Some(pivot / pivot.norm() * n2.sqrt())
}

impl AffineLine {
    /// The line through two distinct points.
    pub fn through_points(p: &PointC2, q: &PointC2) -> Result<AffineLine, GreenError> {
        let w = [q.z1 - p.z1, q.z2 - p.z2];
        let wn = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
        let scale = p.norm().max(q.norm()).max(1e-300);
        if wn <= 16.0 * f64::EPSILON * scale {
            return Err(GreenError::CoincidentPoints {
                detail: format!("line through coincident points {p:?}, {q:?}"),
            });
        }
        // holomorphic normal: u ⊥ w bilinearly
        let u = [w[1], -w[0]];
        let s = canonical_scale(u).expect("nonzero direction");
        let normal = [u[0] / s, u[1] / s];
        let offset = -(normal[0] * p.z1 + normal[1] * p.z2);
        Ok(AffineLine { normal, offset })
    }

    /// The limit line through the origin with the given direction class.
    pub fn through_origin(direction: &ProjectiveDirection) -> AffineLine {
        let w = direction.rep();
        let u = [w[1], -w[0]];
        let s = canonical_scale(u).expect("unit representative");
        AffineLine {
            normal: [u[0] / s, u[1] / s],
            offset: Complex64::default(),
        }
    }

    pub fn eval(&self, z: &[Complex64; 2]) -> Complex64 {
        self.normal[0] * z[0] + self.normal[1] * z[1] + self.offset
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::term_xy(self.normal[0], 1, 0);
        p = &p + &Polynomial::term_xy(self.normal[1], 0, 1);
        if self.offset.norm() > 0.0 {
            p = &p + &Polynomial::constant(self.offset);
        }
        p
    }
}

/// Lines indexed by the point pairs that define them.
pub type IndexedLines = Vec<((usize, usize), AffineLine)>;

/// The six lines of a 4-point configuration indexed by pairs (i, j),
/// i < j, 0-based.
pub fn all_lines(points: &[PointC2]) -> Result<IndexedLines, GreenError> {
    assert_eq!(points.len(), 4);
    let mut out = Vec::with_capacity(6);
    for i in 0..4 {
        for j in (i + 1)..4 {
            out.push(((i, j), AffineLine::through_points(&points[i], &points[j])?));
        }
    }
    Ok(out)
}

/// The normalized equation of the line through points i and j of the
/// configuration.
pub fn line_equation(p: &PointC2, q: &PointC2) -> Result<AffineLine, GreenError> {
    AffineLine::through_points(p, q)
}

/// The pairing products (f₁, f₂, f₃) at a finite configuration: products
/// of opposite-pair lines, each vanishing on all four points.
pub fn pairing_products(points: &[PointC2]) -> Result<[Polynomial; 3], GreenError> {
    let lines = all_lines(points)?;
    let line = |i: usize, j: usize| -> &AffineLine {
        &lines.iter().find(|(p, _)| *p == (i, j)).expect("pair").1
    };
    let prod = |a: &AffineLine, b: &AffineLine| &a.to_polynomial() * &b.to_polynomial();
    Ok([
        prod(line(0, 1), line(2, 3)),
        prod(line(0, 2), line(1, 3)),
        prod(line(0, 3), line(1, 2)),
    ])
}

/// The limits (f₁, f₂, f₃): homogeneous quadratics built from the limit
/// directions.
pub fn pairing_limits(directions: &DirectionSet) -> Result<[Polynomial; 3], GreenError> {
    let dir = |i: usize, j: usize| -> Result<&ProjectiveDirection, GreenError> {
        directions.class(i, j).ok_or(GreenError::NotConverging {
            detail: format!("direction ({},{}) has no limit", i + 1, j + 1),
        })
    };
    let lp = |d: &ProjectiveDirection| AffineLine::through_origin(d).to_polynomial();
    Ok([
        &lp(dir(0, 1)?) * &lp(dir(2, 3)?),
        &lp(dir(0, 2)?) * &lp(dir(1, 3)?),
        &lp(dir(0, 3)?) * &lp(dir(1, 2)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn axis_lines() {
        let e = c(0.2, 0.0);
        let l = line_equation(&PointC2::origin(), &PointC2::new(e, c(0.0, 0.0))).unwrap();
        // line z2 = 0
        assert!(l.normal[0].norm() < 1e-15);
        assert!((l.normal[1] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(l.offset.norm() < 1e-15);
        let l = line_equation(&PointC2::origin(), &PointC2::new(c(0.0, 0.0), e)).unwrap();
        assert!((l.normal[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(l.normal[1].norm() < 1e-15);
    }

    #[test]
    fn antidiagonal_line_matches_two_point_formula() {
        let e = 0.3;
        let l = line_equation(&PointC2::from_re(e, 0.0), &PointC2::from_re(0.0, e)).unwrap();
        // (z1 + z2 - e)/sqrt(2)
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((l.normal[0] - c(s, 0.0)).norm() < 1e-14);
        assert!((l.normal[1] - c(s, 0.0)).norm() < 1e-14);
        assert!((l.offset - c(-e * s, 0.0)).norm() < 1e-14);
        // vanishes on both defining points
        assert!(l.eval(&[c(e, 0.0), c(0.0, 0.0)]).norm() < 1e-15);
        assert!(l.eval(&[c(0.0, 0.0), c(e, 0.0)]).norm() < 1e-15);
    }

    #[test]
    fn gamma2_pairing_limit_mixes_the_skew_direction() {
        // v34 = [2:-1] gives f1 -> z2*(z1 + 2 z2)/sqrt(5) up to unit phase
        use crate::geometry::{PointFamily, Schedule};
        use crate::poly::parse_polynomial;
        let fam = PointFamily::from_fn("gamma2", 4, |e| {
            let z = Complex64::default();
            vec![
                PointC2::new(z, z),
                PointC2::new(e, z),
                PointC2::new(z, e),
                PointC2::new(e.scale(2.0), z),
            ]
        });
        let tol = crate::tol::Tolerances::default();
        let ds =
            crate::geometry::six_directions(&fam, &Schedule::default_geometric(), &tol).unwrap();
        let f1 = &pairing_limits(&ds).unwrap()[0];
        let expect = parse_polynomial("z1*z2 + 2*z2^2").unwrap();
        // compare up to a unit phase via the normalized inner product
        let mut inner = Complex64::default();
        let mut nf = 0.0;
        let mut ne = 0.0;
        for (m, c) in expect.terms() {
            inner += c.conj() * f1.coeff(m);
            ne += c.norm_sqr();
        }
        for (_, c) in f1.terms() {
            nf += c.norm_sqr();
        }
        let alignment = inner.norm() / (ne.sqrt() * nf.sqrt());
        assert!((alignment - 1.0).abs() < 1e-8, "alignment {alignment}");
    }

    #[test]
    fn pairing_products_vanish_on_the_configuration() {
        let e = 0.05;
        let pts = vec![
            PointC2::from_re(0.0, 0.0),
            PointC2::from_re(e, 0.0),
            PointC2::from_re(0.0, e),
            PointC2::from_re(e, e),
        ];
        let fs = pairing_products(&pts).unwrap();
        for f in &fs {
            for p in &pts {
                assert!(f.eval(&p.coords()).norm() <= 1e-9 * f.max_coeff());
            }
        }
        // f1 = l12 l34 = z2(z2 - e)
        let f1 = &fs[0];
        assert!((f1.coeff(&crate::poly::Monomial::xy(0, 2)) - c(1.0, 0.0)).norm() < 1e-12);
    }
}

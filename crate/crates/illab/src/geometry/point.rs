//! Points of ℂ², parameterized families, and ε-schedules.

use std::sync::Arc;

use num_complex::Complex64;

use crate::tol::Tolerances;

use super::GeometryError;

/// A point of ℂ².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointC2 {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl PointC2 {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        PointC2 { z1, z2 }
    }

    pub fn from_re(x: f64, y: f64) -> Self {
        PointC2::new(Complex64::new(x, 0.0), Complex64::new(y, 0.0))
    }

    pub fn origin() -> Self {
        PointC2::new(Complex64::default(), Complex64::default())
    }

    pub fn coords(&self) -> [Complex64; 2] {
        [self.z1, self.z2]
    }

    /// Euclidean norm on ℂ² ≅ ℝ⁴.
    pub fn norm(&self) -> f64 {
        (self.z1.norm_sqr() + self.z2.norm_sqr()).sqrt()
    }

    pub fn dist(&self, other: &PointC2) -> f64 {
        ((self.z1 - other.z1).norm_sqr() + (self.z2 - other.z2).norm_sqr()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.z1.re.is_finite()
            && self.z1.im.is_finite()
            && self.z2.re.is_finite()
            && self.z2.im.is_finite()
    }
}

/// Invertible linear map of ℂ², stored row-major.
#[derive(Debug, Clone, Copy)]
pub struct LinearMap2 {
    pub m: [[Complex64; 2]; 2],
}

impl LinearMap2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::default();
        LinearMap2 {
            m: [[one, zero], [zero, one]],
        }
    }

    pub fn diagonal(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::default();
        LinearMap2 {
            m: [[a, zero], [zero, b]],
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Option<LinearMap2> {
        let d = self.det();
        if d.norm() == 0.0 {
            return None;
        }
        let inv = Complex64::new(1.0, 0.0) / d;
        Some(LinearMap2 {
            m: [
                [self.m[1][1] * inv, -self.m[0][1] * inv],
                [-self.m[1][0] * inv, self.m[0][0] * inv],
            ],
        })
    }

    pub fn apply_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn apply_point(&self, p: &PointC2) -> PointC2 {
        let [a, b] = self.apply_vec([p.z1, p.z2]);
        PointC2::new(a, b)
    }

    /// Condition number σ_max/σ_min of the 2×2 matrix.
    pub fn condition_number(&self) -> f64 {
        let a2 = self.m[0][0].norm_sqr()
            + self.m[0][1].norm_sqr()
            + self.m[1][0].norm_sqr()
            + self.m[1][1].norm_sqr();
        let d = self.det().norm();
        // singular values satisfy s1^2 + s2^2 = ||A||_F^2, s1 s2 = |det|
        let disc = (a2 * a2 - 4.0 * d * d).max(0.0).sqrt();
        let s1 = ((a2 + disc) / 2.0).sqrt();
        let s2 = ((a2 - disc) / 2.0).max(0.0).sqrt();
        if s2 == 0.0 {
            f64::INFINITY
        } else {
            s1 / s2
        }
    }
}

enum FamilyKind {
    Analytic(Arc<dyn Fn(Complex64) -> Vec<PointC2> + Send + Sync>),
    Table(Vec<(Complex64, Vec<PointC2>)>),
}

impl std::fmt::Debug for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyKind::Analytic(_) => write!(f, "Analytic(..)"),
            FamilyKind::Table(rows) => write!(f, "Table({} rows)", rows.len()),
        }
    }
}

/// A family ε ↦ ordered point list, the object whose degeneration is
/// studied. Closed-form families evaluate anywhere; table families only
/// at their recorded samples.
#[derive(Debug)]
pub struct PointFamily {
    label: String,
    npoints: usize,
    kind: FamilyKind,
}

impl Clone for PointFamily {
    fn clone(&self) -> Self {
        PointFamily {
            label: self.label.clone(),
            npoints: self.npoints,
            kind: match &self.kind {
                FamilyKind::Analytic(f) => FamilyKind::Analytic(Arc::clone(f)),
                FamilyKind::Table(rows) => FamilyKind::Table(rows.clone()),
            },
        }
    }
}

impl PointFamily {
    pub fn from_fn<F>(label: impl Into<String>, npoints: usize, f: F) -> Self
    where
        F: Fn(Complex64) -> Vec<PointC2> + Send + Sync + 'static,
    {
        PointFamily {
            label: label.into(),
            npoints,
            kind: FamilyKind::Analytic(Arc::new(f)),
        }
    }

    pub fn from_table(
        label: impl Into<String>,
        rows: Vec<(Complex64, Vec<PointC2>)>,
    ) -> Result<Self, GeometryError> {
        let label = label.into();
        let npoints = rows
            .first()
            .map(|(_, pts)| pts.len())
            .ok_or_else(|| GeometryError::BadFamily("empty point table".into()))?;
        if rows.iter().any(|(_, pts)| pts.len() != npoints) {
            return Err(GeometryError::BadFamily(
                "inconsistent point counts across table samples".into(),
            ));
        }
        Ok(PointFamily {
            label,
            npoints,
            kind: FamilyKind::Table(rows),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn npoints(&self) -> usize {
        self.npoints
    }

    pub fn points_at(&self, eps: Complex64) -> Result<Vec<PointC2>, GeometryError> {
        match &self.kind {
            FamilyKind::Analytic(f) => {
                let pts = f(eps);
                if pts.len() != self.npoints {
                    return Err(GeometryError::BadFamily(format!(
                        "family `{}` returned {} points, expected {}",
                        self.label,
                        pts.len(),
                        self.npoints
                    )));
                }
                if pts.iter().any(|p| !p.is_finite()) {
                    return Err(GeometryError::BadFamily(format!(
                        "family `{}` produced a non-finite point at eps = {eps}",
                        self.label
                    )));
                }
                Ok(pts)
            }
            FamilyKind::Table(rows) => rows
                .iter()
                .find(|(e, _)| (e - eps).norm() <= 1e-12 * eps.norm().max(1e-300))
                .map(|(_, pts)| pts.clone())
                .ok_or(GeometryError::TableMiss { eps }),
        }
    }

    /// The family ε ↦ M·(a_m^ε − a_t^ε): an optional translation putting
    /// point `translate_to_origin` at (0,0), followed by a linear map.
    pub fn transformed(&self, map: LinearMap2, translate_to_origin: Option<usize>) -> PointFamily {
        let base = self.clone();
        let label = format!("{}~transformed", self.label);
        let npoints = self.npoints;
        PointFamily {
            label,
            npoints,
            kind: FamilyKind::Analytic(Arc::new(move |eps| {
                let pts = base.points_at(eps).unwrap_or_default();
                if pts.is_empty() {
                    return pts;
                }
                let origin = translate_to_origin
                    .map(|i| pts[i])
                    .unwrap_or_else(PointC2::origin);
                pts.iter()
                    .map(|p| map.apply_point(&PointC2::new(p.z1 - origin.z1, p.z2 - origin.z2)))
                    .collect()
            })),
        }
    }

    /// Check the family invariants along a schedule: pairwise-distinct
    /// points at every sample (relative to the configuration diameter)
    /// and collapse to the origin at the smallest sample.
    pub fn validate(&self, schedule: &Schedule, tol: &Tolerances) -> Result<(), GeometryError> {
        for &eps in schedule.samples() {
            let pts = self.points_at(eps)?;
            let diameter = pts
                .iter()
                .flat_map(|p| pts.iter().map(move |q| p.dist(q)))
                .fold(0.0, f64::max);
            if diameter == 0.0 {
                return Err(GeometryError::CoincidentPoints {
                    detail: format!("all points of `{}` coincide at eps = {eps}", self.label),
                });
            }
            for i in 0..pts.len() {
                for j in (i + 1)..pts.len() {
                    if pts[i].dist(&pts[j]) < tol.coincidence * diameter {
                        return Err(GeometryError::CoincidentPoints {
                            detail: format!(
                                "points {} and {} of `{}` coincide at eps = {eps}",
                                i + 1,
                                j + 1,
                                self.label
                            ),
                        });
                    }
                }
            }
        }
        let last = *schedule.samples().last().expect("validated nonempty");
        let pts = self.points_at(last)?;
        let max_norm = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
        if max_norm > tol.family_shrink {
            return Err(GeometryError::BadFamily(format!(
                "family `{}` does not collapse: max point norm {max_norm:.3e} at the smallest sample",
                self.label
            )));
        }
        Ok(())
    }
}

/// A finite decreasing sequence of ε samples along which limits are taken.
#[derive(Debug, Clone)]
pub struct Schedule {
    samples: Vec<Complex64>,
    pub extrapolation_order: usize,
}

impl Schedule {
    pub fn new(samples: Vec<Complex64>, extrapolation_order: usize) -> Result<Self, GeometryError> {
        if samples.len() < 4 {
            return Err(GeometryError::BadSchedule(
                "a schedule needs at least 4 samples".into(),
            ));
        }
        for w in samples.windows(2) {
            if w[1].norm() >= w[0].norm() {
                return Err(GeometryError::BadSchedule(
                    "schedule samples must be strictly decreasing in modulus".into(),
                ));
            }
        }
        if samples.iter().any(|e| e.norm() == 0.0) {
            return Err(GeometryError::BadSchedule("eps = 0 is not a sample".into()));
        }
        Ok(Schedule {
            samples,
            extrapolation_order,
        })
    }

    /// Geometric schedule ε_k = eps0 · ratio^k, k = 0..n.
    pub fn geometric(eps0: f64, ratio: f64, n: usize) -> Result<Self, GeometryError> {
        if !(0.0 < ratio && ratio < 1.0) || eps0 <= 0.0 {
            return Err(GeometryError::BadSchedule(
                "geometric schedule needs eps0 > 0 and 0 < ratio < 1".into(),
            ));
        }
        let samples = (0..n)
            .map(|k| Complex64::new(eps0 * ratio.powi(k as i32), 0.0))
            .collect();
        Schedule::new(samples, 1)
    }

    /// The default: ε_k = 10⁻¹·2⁻ᵏ for k = 0..11, first-order extrapolation.
    pub fn default_geometric() -> Self {
        Schedule::geometric(0.1, 0.5, 12).expect("valid default schedule")
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Modulus ratio of the final consecutive pair.
    pub fn tail_ratio(&self) -> f64 {
        let n = self.samples.len();
        self.samples[n - 1].norm() / self.samples[n - 2].norm()
    }
}

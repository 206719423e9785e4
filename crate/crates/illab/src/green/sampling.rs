//! The limit Green-function candidate 2·max(log|z₁|, log|z₂|) and the
//! sampled gap statistics log‖Ψ₀‖ − candidate over deterministic torus
//! and sphere samples.

use num_complex::Complex64;
use serde::Serialize;

use crate::poly::Monomial;
use crate::tol::Tolerances;
use crate::util::halton_sphere_point;

use super::cimap::CiMap;
use super::GreenError;

/// The generic-case candidate: 2·max(log|z₁|, log|z₂|). Zero on the
/// distinguished boundary, ≤ 0 on the closed bidisk.
pub fn green_candidate(z: &[Complex64; 2]) -> Result<f64, GreenError> {
    let m = z[0].norm().max(z[1].norm());
    if m == 0.0 {
        return Err(GreenError::OriginSingularity);
    }
    Ok(2.0 * m.ln())
}

/// Candidate attached to a limit ideal: max_j log|g_j(z)| over its
/// generators. For ⟨z₁z₂, z₂², z₁³⟩ this is
/// max(log|z₁z₂|, 2·log|z₂|, 3·log|z₁|).
pub fn ideal_green_candidate(generators: &[crate::poly::Polynomial], z: &[Complex64; 2]) -> f64 {
    generators
        .iter()
        .map(|g| g.eval(z).norm().ln())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Deterministic sampling layout for gap reports.
#[derive(Debug, Clone, Serialize)]
pub struct SampleSpec {
    /// Phases per circle of the distinguished-boundary grid.
    pub torus_phases: usize,
    /// Low-discrepancy points on the unit sphere of ℂ².
    pub sphere_points: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            torus_phases: 64,
            sphere_points: 1000,
        }
    }
}

impl SampleSpec {
    /// The sample points, torus grid first, in a fixed order.
    pub fn points(&self) -> Vec<[Complex64; 2]> {
        let mut out =
            Vec::with_capacity(self.torus_phases * self.torus_phases + self.sphere_points);
        let tau = 2.0 * std::f64::consts::PI;
        for p in 0..self.torus_phases {
            let z1 = Complex64::from_polar(1.0, tau * p as f64 / self.torus_phases as f64);
            for q in 0..self.torus_phases {
                let z2 = Complex64::from_polar(1.0, tau * q as f64 / self.torus_phases as f64);
                out.push([z1, z2]);
            }
        }
        for k in 0..self.sphere_points {
            out.push(halton_sphere_point(k as u64));
        }
        out
    }
}

/// Sampled statistics of log‖Ψ₀(z)‖ − 2·max(log|z₁|, log|z₂|).
#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub n_samples: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub certified_bounded: bool,
    /// min ‖Ψ₀‖ over the sample.
    pub min_psi: f64,
}

impl GapReport {
    /// CSV rows (`index,re_z1,im_z1,re_z2,im_z2,gap`) for external plotting.
    pub fn csv(samples: &[GapSample]) -> String {
        let mut out = String::from("index,re_z1,im_z1,re_z2,im_z2,gap\n");
        for (i, (z, gap)) in samples.iter().enumerate() {
            out.push_str(&format!(
                "{i},{},{},{},{},{gap}\n",
                z[0].re, z[0].im, z[1].re, z[1].im
            ));
        }
        out
    }
}

/// Common projective root of two quadratic forms, if the resultant is
/// (numerically) zero: tested through the roots of the first form.
fn common_projective_root(ci: &CiMap, tol: &Tolerances) -> Option<[Complex64; 2]> {
    let g = &ci.limit[0];
    let a = g.coeff(&Monomial::xy(2, 0));
    let b = g.coeff(&Monomial::xy(1, 1));
    let c = g.coeff(&Monomial::xy(0, 2));
    let mut candidates: Vec<[Complex64; 2]> = Vec::new();
    if a.norm() > 1e-14 {
        // roots of a t^2 + b t + c (t = z1/z2)
        let disc = (b * b - 4.0 * a * c).sqrt();
        for sign in [1.0, -1.0] {
            let t = (-b + disc * sign) / (2.0 * a);
            candidates.push([t, Complex64::new(1.0, 0.0)]);
        }
    } else if b.norm() > 1e-14 {
        candidates.push([-c / b, Complex64::new(1.0, 0.0)]);
        candidates.push([Complex64::new(1.0, 0.0), Complex64::default()]);
    } else {
        candidates.push([Complex64::new(1.0, 0.0), Complex64::default()]);
    }
    let h = &ci.limit[1];
    let hscale = h.max_coeff().max(1e-300);
    for cand in candidates {
        let n = (cand[0].norm_sqr() + cand[1].norm_sqr()).sqrt();
        let z = [cand[0] / n, cand[1] / n];
        if h.eval(&z).norm() <= 1e3 * tol.resultant_independent * hscale {
            return Some(z);
        }
    }
    None
}

/// A sample point with its gap value.
pub type GapSample = ([Complex64; 2], f64);

/// Gap statistics of a candidate map over the deterministic sample.
/// `ZeroOnSphere` fires when the leading resultant (numerically)
/// vanishes — the shared projective root is reported as a sphere point —
/// or when a sample annihilates Ψ₀.
pub fn gap_report(
    ci: &CiMap,
    spec: &SampleSpec,
    tol: &Tolerances,
) -> Result<(GapReport, Vec<GapSample>), GreenError> {
    let res = ci.resultant()?;
    if res.norm() <= tol.resultant_independent {
        if let Some(at) = common_projective_root(ci, tol) {
            return Err(GreenError::ZeroOnSphere { at });
        }
    }
    let coeff_scale = ci.limit[0].max_coeff().max(ci.limit[1].max_coeff());
    let pts = spec.points();
    let mut samples = Vec::with_capacity(pts.len());
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let mut min_psi = f64::INFINITY;
    for z in pts {
        let psi = ci.norm_at(&z);
        if psi <= 1e-13 * coeff_scale {
            return Err(GreenError::ZeroOnSphere { at: z });
        }
        let gap = psi.ln() - green_candidate(&z)?;
        min = min.min(gap);
        max = max.max(gap);
        sum += gap;
        min_psi = min_psi.min(psi);
        samples.push((z, gap));
    }
    let n_samples = samples.len();
    let report = GapReport {
        n_samples,
        min,
        max,
        mean: sum / n_samples as f64,
        certified_bounded: min_psi > tol.min_psi_sphere && min.is_finite() && max.is_finite(),
        min_psi,
    };
    Ok((report, samples))
}

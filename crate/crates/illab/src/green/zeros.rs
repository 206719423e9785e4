//! Common zeros of a pair of bivariate quadratics: resultant-based
//! elimination to a degree-4 univariate polynomial, companion-style root
//! finding, back-substitution, and Newton polish — plus the uniform
//! complete-intersection verification along a schedule.

use num_complex::Complex64;
use serde::Serialize;

use crate::geometry::{PointC2, PointFamily, Schedule};
#[cfg(test)]
use crate::poly::Monomial;
use crate::poly::Polynomial;
use crate::tol::Tolerances;

use super::lines::{pairing_limits, pairing_products};
use super::GreenError;

/// Coefficients of `f` as a polynomial in z₂ with ℂ-coefficients at a
/// fixed z₁ = x: returns [c₀, c₁, c₂] with f(x, z₂) = Σ c_k z₂^k.
fn z2_profile(f: &Polynomial, x: Complex64) -> [Complex64; 3] {
    let mut out = [Complex64::default(); 3];
    for (m, c) in f.terms() {
        let k = m.exponent(1) as usize;
        if k < 3 {
            out[k] += c * x.powu(m.exponent(0));
        }
    }
    out
}

/// Sylvester resultant in z₂ of two z₂-quadratics given by coefficient
/// triples.
fn sylvester_z2(a: [Complex64; 3], b: [Complex64; 3]) -> Complex64 {
    // det of [[a2,a1,a0,0],[0,a2,a1,a0],[b2,b1,b0,0],[0,b2,b1,b0]]
    let m = nalgebra::DMatrix::from_row_slice(
        4,
        4,
        &[
            a[2],
            a[1],
            a[0],
            Complex64::default(),
            Complex64::default(),
            a[2],
            a[1],
            a[0],
            b[2],
            b[1],
            b[0],
            Complex64::default(),
            Complex64::default(),
            b[2],
            b[1],
            b[0],
        ],
    );
    m.determinant()
}

/// Monomial coefficients (ascending) of the degree-≤4 resultant in z₁,
/// via evaluation at 5 scaled roots of unity and Newton interpolation.
fn eliminate_z2(g: &Polynomial, h: &Polynomial) -> Vec<Complex64> {
    let radius = 0.7;
    let n = 5usize;
    let nodes: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let values: Vec<Complex64> = nodes
        .iter()
        .map(|&x| sylvester_z2(z2_profile(g, x), z2_profile(h, x)))
        .collect();
    // divided differences, then expand the Newton form
    let mut dd = values;
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - k]);
        }
    }
    let mut coeffs = vec![Complex64::default(); n];
    // horner-style expansion of sum dd[k] * prod_{i<k} (x - nodes[i])
    for k in (0..n).rev() {
        // multiply current polynomial by (x - nodes[k]) and add dd[k]
        let mut next = vec![Complex64::default(); n];
        for i in (1..n).rev() {
            next[i] = coeffs[i - 1];
        }
        for i in 0..n {
            next[i] -= nodes[k] * coeffs[i];
        }
        next[0] += dd[k];
        coeffs = next;
    }
    coeffs
}

/// All roots of a univariate polynomial with coefficients ascending, by
/// Durand–Kerner iteration (the eigenvalues of the companion matrix) with
/// Newton polish.
fn univariate_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|l| l.norm() <= 1e-12 * scale) {
        c.pop();
    }
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = *c.last().expect("nonzero degree");
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::default();
        for &co in monic.iter().rev() {
            acc = acc * z + co;
        }
        acc
    };
    let deriv = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::default();
        for (k, &co) in monic.iter().enumerate().skip(1).rev() {
            acc = acc * z + co * k as f64;
        }
        acc
    };
    // root radius estimate
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9) / Complex64::new(0.4, 0.9).norm() * radius * 0.5;
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| {
            seed * Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.3,
            )
        })
        .collect();
    for _ in 0..200 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 * radius {
            break;
        }
    }
    // Newton polish
    for r in roots.iter_mut() {
        for _ in 0..4 {
            let d = deriv(*r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval(*r) / d;
        }
    }
    roots
}

/// Roots of a z₂-profile (degree ≤ 2) at fixed z₁.
fn quadratic_roots(c: [Complex64; 3], scale: f64) -> Vec<Complex64> {
    let [c0, c1, c2] = c;
    if c2.norm() > 1e-12 * scale {
        let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
        // stable pairing: avoid cancellation in the larger root
        let q = if (c1 + disc).norm() >= (c1 - disc).norm() {
            -(c1 + disc) * 0.5
        } else {
            -(c1 - disc) * 0.5
        };
        if q.norm() == 0.0 {
            return vec![Complex64::default(), Complex64::default()];
        }
        vec![q / c2, c0 / q]
    } else if c1.norm() > 1e-12 * scale {
        vec![-c0 / c1]
    } else {
        Vec::new()
    }
}

/// Isolated common zeros of two bivariate quadratics inside the closed
/// bidisk. Errors with `ExtraCommonZeros` when the pair shares a factor
/// (positive-dimensional zero set).
pub fn common_zeros(
    g: &Polynomial,
    h: &Polynomial,
    _tol: &Tolerances,
) -> Result<Vec<PointC2>, GreenError> {
    let gscale = g.max_coeff().max(1e-300);
    let hscale = h.max_coeff().max(1e-300);
    let res_coeffs = eliminate_z2(g, h);
    let res_scale = res_coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if res_scale <= 1e-12 * gscale * gscale * hscale * hscale {
        return Err(GreenError::SharedFactor);
    }
    let xs = univariate_roots(&res_coeffs);
    let mut zeros: Vec<(PointC2, f64)> = Vec::new();
    for x in xs {
        let gp = z2_profile(g, x);
        let hp = z2_profile(h, x);
        let mut candidates = quadratic_roots(gp, gscale);
        candidates.extend(quadratic_roots(hp, hscale));
        for y in candidates {
            let z = [x, y];
            if g.eval(&z).norm() > 1e-6 * gscale || h.eval(&z).norm() > 1e-6 * hscale {
                continue;
            }
            // 2-D Newton polish on (g, h); acceptance is step-based so a
            // stalled spurious candidate (step stuck at its distance to
            // the true zero) is rejected even when its residual is small.
            let mut p = z;
            let mut step = f64::INFINITY;
            for _ in 0..12 {
                let gv = g.eval(&p);
                let hv = h.eval(&p);
                let j = jacobian(g, h, &p);
                let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
                if det.norm() < 1e-300 {
                    break;
                }
                let dx = (gv * j[1][1] - hv * j[0][1]) / det;
                let dy = (hv * j[0][0] - gv * j[1][0]) / det;
                p = [p[0] - dx, p[1] - dy];
                step = (dx.norm_sqr() + dy.norm_sqr()).sqrt();
                if step <= 1e-15 * (1.0 + p[0].norm() + p[1].norm()) {
                    break;
                }
            }
            let pscale = 1.0 + p[0].norm() + p[1].norm();
            if step > 1e-10 * pscale {
                continue;
            }
            let residual = g.eval(&p).norm().max(h.eval(&p).norm());
            if residual > 1e-9 * gscale.max(hscale) {
                continue;
            }
            if p[0].norm() > 1.0 + 1e-9 || p[1].norm() > 1.0 + 1e-9 {
                continue;
            }
            let pt = PointC2::new(p[0], p[1]);
            match zeros
                .iter()
                .position(|(q, _)| q.dist(&pt) <= 1e-7 * (1.0 + pt.norm()))
            {
                Some(i) => {
                    if residual < zeros[i].1 {
                        zeros[i] = (pt, residual);
                    }
                }
                None => zeros.push((pt, residual)),
            }
        }
    }
    Ok(zeros.into_iter().map(|(p, _)| p).collect())
}

fn jacobian(g: &Polynomial, h: &Polynomial, z: &[Complex64; 2]) -> [[Complex64; 2]; 2] {
    let d = |f: &Polynomial, var: usize| -> Complex64 {
        let mut acc = Complex64::default();
        for (m, c) in f.terms() {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut t = c * e as f64;
            for (j, &ej) in m.exponents().iter().enumerate() {
                let ej = if j == var { ej - 1 } else { ej };
                if ej > 0 {
                    t *= z[j].powu(ej);
                }
            }
            acc += t;
        }
        acc
    };
    [[d(g, 0), d(g, 1)], [d(h, 0), d(h, 1)]]
}

/// Per-sample record of the uniform-complete-intersection check.
#[derive(Debug, Clone, Serialize)]
pub struct UciSample {
    pub eps_abs: f64,
    /// Worst distance between a configuration point and its matched
    /// common zero, relative to |ε|.
    pub root_mismatch_rel: f64,
    /// Phase-aligned coefficient distance of (f_i^ε, f_j^ε) to the limit.
    pub coeff_distance: f64,
    /// Observed local comparability constant
    /// max |log‖Ψ_ε(z)‖ − log‖z − a_j‖| on small circles around poles.
    pub c_observed: f64,
}

/// Outcome of uci_verify.
#[derive(Debug, Clone, Serialize)]
pub struct UciReport {
    /// 1-based indices of the chosen pairing products.
    pub pair: [usize; 2],
    pub samples: Vec<UciSample>,
    pub coefficients_converge: bool,
}

fn phase_aligned_distance(f: &Polynomial, limit: &Polynomial) -> f64 {
    // optimal unit phase: u = <limit, f> / |<limit, f>|
    let mut inner = Complex64::default();
    for (m, c) in limit.terms() {
        inner += c.conj() * f.coeff(m);
    }
    let aligned = if inner.norm() > 0.0 {
        f.scaled((inner / inner.norm()).conj())
    } else {
        f.clone()
    };
    (&aligned - limit).max_coeff()
}

/// Verify the uniform-complete-intersection data for a chosen pair along
/// the schedule: (a) the common zeros of (f_i^ε, f_j^ε) in the bidisk are
/// exactly S_ε to the configured tolerance, (b) the coefficients converge
/// to the limit pair, and (c) the local pole comparability constant is
/// finite at every sample (its value is reported, not bounded).
pub fn uci_verify(
    fam: &PointFamily,
    schedule: &Schedule,
    pair: (usize, usize),
    tol: &Tolerances,
) -> Result<UciReport, GreenError> {
    let directions = crate::geometry::six_directions(fam, schedule, tol).map_err(|e| {
        GreenError::NotConverging {
            detail: format!("{e}"),
        }
    })?;
    let limits = pairing_limits(&directions)?;
    let limit_pair = [limits[pair.0].clone(), limits[pair.1].clone()];
    let mut samples = Vec::with_capacity(schedule.len());
    let mut coeff_distances = Vec::with_capacity(schedule.len());
    for &eps in schedule.samples() {
        let pts = fam.points_at(eps).map_err(|e| GreenError::NotConverging {
            detail: format!("{e}"),
        })?;
        let fs = pairing_products(&pts)?;
        let g = &fs[pair.0];
        let h = &fs[pair.1];
        let zeros = common_zeros(g, h, tol)?;
        let match_tol = tol.root_match_rel * eps.norm();
        let mut mismatch: f64 = 0.0;
        let mut matched = vec![false; zeros.len()];
        let mut missing = Vec::new();
        for p in &pts {
            let best = zeros
                .iter()
                .enumerate()
                .map(|(i, z)| (i, z.dist(p)))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
            match best {
                Some((i, d)) if d <= match_tol && !matched[i] => {
                    matched[i] = true;
                    mismatch = mismatch.max(d);
                }
                _ => missing.push(*p),
            }
        }
        let extra: Vec<PointC2> = zeros
            .iter()
            .zip(&matched)
            .filter(|(_, m)| !**m)
            .map(|(z, _)| *z)
            .collect();
        if !extra.is_empty() || !missing.is_empty() {
            return Err(GreenError::ExtraCommonZeros { extra, missing });
        }
        let coeff_distance = phase_aligned_distance(g, &limit_pair[0])
            .max(phase_aligned_distance(h, &limit_pair[1]));
        coeff_distances.push(coeff_distance);
        // local comparability on small circles around each pole
        let mut c_observed: f64 = 0.0;
        for (k, p) in pts.iter().enumerate() {
            let min_sep = pts
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != k)
                .map(|(_, q)| p.dist(q))
                .fold(f64::INFINITY, f64::min);
            let r = min_sep / 10.0;
            for t in 0..16 {
                let phase = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * t as f64 / 16.0);
                let z = [p.z1 + phase, p.z2 + phase * Complex64::new(0.3, 0.4)];
                let dist = ((z[0] - p.z1).norm_sqr() + (z[1] - p.z2).norm_sqr()).sqrt();
                let psin = (g.eval(&z).norm_sqr() + h.eval(&z).norm_sqr()).sqrt();
                if psin == 0.0 {
                    continue;
                }
                c_observed = c_observed.max((psin.ln() - dist.ln()).abs());
            }
        }
        if !c_observed.is_finite() {
            return Err(GreenError::NotConverging {
                detail: format!("comparability constant diverged at eps = {eps}"),
            });
        }
        samples.push(UciSample {
            eps_abs: eps.norm(),
            root_mismatch_rel: if eps.norm() > 0.0 {
                mismatch / eps.norm()
            } else {
                0.0
            },
            coeff_distance,
            c_observed,
        });
    }
    // coefficientwise convergence: distances decrease and end small
    let n = coeff_distances.len();
    let tail_ok = coeff_distances[n - 1] <= tol.dir_converge;
    let decreasing = coeff_distances
        .windows(2)
        .skip(n.saturating_sub(5))
        .all(|w| w[1] <= 0.95 * w[0] + tol.dir_stationary);
    let coefficients_converge = tail_ok && decreasing;
    if !coefficients_converge {
        return Err(GreenError::NotConverging {
            detail: format!(
                "pairing products do not converge coefficientwise (final distance {:.3e})",
                coeff_distances[n - 1]
            ),
        });
    }
    Ok(UciReport {
        pair: [pair.0 + 1, pair.1 + 1],
        samples,
        coefficients_converge,
    })
}

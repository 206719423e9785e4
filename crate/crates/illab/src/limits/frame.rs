//! Subspace frames in ℂᵈ, the gap metric, ideal subspaces spanned by
//! ghost-node indicator columns, and limits of frame families along a
//! schedule with Richardson–Aitken extrapolation of projectors.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::dd::{Dd, DdC};
use crate::geometry::PointC2;
use crate::linalg::{column_space, hermitian_eigen, hermitian_spectral_norm, projector};
use crate::tol::{Precision, Tolerances};

use super::grid::grid_points;
use super::newton::NewtonBasis;
use super::LimitError;

/// Orthonormal basis of a k-dimensional subspace of ℂᵈ.
#[derive(Debug, Clone)]
pub struct SubspaceFrame {
    ambient: usize,
    basis: DMatrix<Complex64>,
}

impl SubspaceFrame {
    /// Orthonormalize arbitrary spanning columns (rank decided at the
    /// configured SVD threshold).
    pub fn from_columns(ambient: usize, cols: DMatrix<Complex64>, tol: &Tolerances) -> Self {
        assert_eq!(cols.nrows(), ambient);
        let basis = column_space(&cols, tol.svd_rank);
        SubspaceFrame { ambient, basis }
    }

    /// Frame already known to be orthonormal.
    pub fn from_orthonormal(basis: DMatrix<Complex64>) -> Self {
        SubspaceFrame {
            ambient: basis.nrows(),
            basis,
        }
    }

    pub fn empty(ambient: usize) -> Self {
        SubspaceFrame {
            ambient,
            basis: DMatrix::zeros(ambient, 0),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    pub fn projector(&self) -> DMatrix<Complex64> {
        projector(&self.basis)
    }

    /// Orthonormality defect max |F^H F − I|.
    pub fn orthonormality_defect(&self) -> f64 {
        let k = self.dim();
        if k == 0 {
            return 0.0;
        }
        let g = self.basis.adjoint() * &self.basis;
        (&g - DMatrix::<Complex64>::identity(k, k))
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }
}

/// Gap metric: the spectral norm of the projector difference. For equal
/// dimensions this is the sine of the largest principal angle; for
/// different dimensions it is 1.
pub fn subspace_gap(a: &SubspaceFrame, b: &SubspaceFrame) -> Result<f64, LimitError> {
    if a.ambient() != b.ambient() {
        return Err(LimitError::AmbientMismatch {
            left: a.ambient(),
            right: b.ambient(),
        });
    }
    if a.dim() != b.dim() {
        return Ok(1.0);
    }
    if a.dim() == 0 {
        return Ok(0.0);
    }
    let diff = a.projector() - b.projector();
    Ok(hermitian_spectral_norm(&diff).clamp(0.0, 1.0))
}

/// Orthonormal frame of Φ(𝓘(S)/𝓙) ⊂ ℂᵈ for a point set S with grid 𝒫:
/// since S ⊂ 𝒫, the quotient image is spanned by the Newton coordinates
/// of the Lagrange indicators of the unoccupied ("ghost") grid nodes, and
/// its dimension is d − #S.
///
/// `cap` bounds the coordinate degree of the spanning set; it must cover
/// the top Newton element (Σ_j (N_j − 1)).
pub fn ideal_subspace(
    points: &[PointC2],
    cap: u32,
    tol: &Tolerances,
) -> Result<SubspaceFrame, LimitError> {
    let grid = grid_points(points, tol)?;
    let needed = grid.shape().max_degree();
    if cap < needed {
        return Err(LimitError::CapBelowGrid { cap, needed });
    }
    let nb = NewtonBasis::new(grid);
    let d = nb.grid().shape().d;
    let mut occupied = vec![false; d];
    for p in points {
        let m = nb.grid().locate(p, tol)?;
        occupied[nb.grid().position(&m)] = true;
    }
    // Ghost indicator columns in descending multi-index order: the column
    // of ghost m is supported on {α ≥ m}, and no earlier (larger) ghost
    // touches coordinate m itself. Gram–Schmidt in this order therefore
    // leaves each new vector a fresh, untouched pivot coordinate, so the
    // ghost span never degenerates even on collapsing grids. The residual
    // can still cancel down several ε-orders; the extended mode runs this
    // loop in double-double arithmetic.
    let mut ghosts: Vec<usize> = (0..d).filter(|&i| !occupied[i]).collect();
    ghosts.reverse();
    let k = ghosts.len();
    match tol.precision {
        Precision::Standard => {
            let mut basis = DMatrix::<Complex64>::zeros(d, k);
            for (c, &gi) in ghosts.iter().enumerate() {
                let m = nb.grid().alphas()[gi].clone();
                let w = nb.inverse_column(&m);
                let norm = w.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
                let mut v = DMatrix::<Complex64>::from_fn(d, 1, |r, _| w[r] / norm);
                for _ in 0..2 {
                    for prev in 0..c {
                        let u = basis.column(prev);
                        let proj = u.adjoint() * &v;
                        v -= u * proj[(0, 0)];
                    }
                }
                let vn = v.norm();
                if vn <= 1e-8 {
                    return Err(LimitError::RankDeficientFrame {
                        expected: k,
                        got: c,
                    });
                }
                basis.set_column(c, &v.unscale(vn).column(0));
            }
            Ok(SubspaceFrame::from_orthonormal(basis))
        }
        Precision::Extended => {
            let mut basis_dd: Vec<Vec<DdC>> = Vec::with_capacity(k);
            for (c, &gi) in ghosts.iter().enumerate() {
                let m = nb.grid().alphas()[gi].clone();
                let mut v = nb.inverse_column_dd(&m);
                let norm = v
                    .iter()
                    .fold(Dd::ZERO, |acc, x| acc.add(x.norm_sqr()))
                    .sqrt();
                for x in v.iter_mut() {
                    *x = DdC {
                        re: x.re.div(norm),
                        im: x.im.div(norm),
                    };
                }
                for _ in 0..2 {
                    for u in basis_dd.iter() {
                        let mut proj = DdC::ZERO;
                        for (uu, vv) in u.iter().zip(v.iter()) {
                            proj = proj.add(uu.conj().mul(*vv));
                        }
                        for (vv, uu) in v.iter_mut().zip(u.iter()) {
                            *vv = vv.sub(uu.mul(proj));
                        }
                    }
                }
                let vn = v
                    .iter()
                    .fold(Dd::ZERO, |acc, x| acc.add(x.norm_sqr()))
                    .sqrt();
                if vn.to_f64() <= 1e-24 {
                    return Err(LimitError::RankDeficientFrame {
                        expected: k,
                        got: c,
                    });
                }
                for x in v.iter_mut() {
                    *x = DdC {
                        re: x.re.div(vn),
                        im: x.im.div(vn),
                    };
                }
                basis_dd.push(v);
            }
            let basis = DMatrix::<Complex64>::from_fn(d, k, |r, c| basis_dd[c][r].to_c64());
            Ok(SubspaceFrame::from_orthonormal(basis))
        }
    }
}

/// Outcome status of a frame-family limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LimitStatus {
    Converged,
    NotConverged,
}

/// Limit verdict for a family of subspaces along the schedule.
#[derive(Debug, Clone)]
pub struct LimitVerdict {
    pub status: LimitStatus,
    /// Subspace dimension per sample.
    pub dims: Vec<usize>,
    /// Consecutive gaps between sampled frames.
    pub gaps: Vec<f64>,
    /// Extrapolated limit frame (Converged only).
    pub limit_frame: Option<SubspaceFrame>,
    /// Span of accumulation directions (mean-projector spectrum ≥ 0.1).
    pub limsup_frame: SubspaceFrame,
    /// Stable common subspace (mean-projector spectrum ≥ 0.9).
    pub liminf_frame: SubspaceFrame,
    /// Consecutive gaps of the extrapolated-limit sequence.
    pub extrapolation_gaps: Vec<f64>,
    /// Estimated residual of the final extrapolated frame.
    pub extrapolation_residual: f64,
}

const LIMSUP_SPECTRUM_CUT: f64 = 0.1;
const LIMINF_SPECTRUM_CUT: f64 = 0.9;

/// Iterated Richardson extrapolation of a matrix sequence sampled on a
/// geometric schedule of ratio `r`.
///
/// The deviation from the limit is a series in ε^{1/h} for a small
/// lattice granularity h (integer powers for linear families, half and
/// quarter powers for √ε-parameterized ones). h is inferred from the
/// measured tail contraction r̂ ≈ r^{1/h}; each stage then eliminates the
/// ε^{s/h} term with its exact ratio r^{s/h}. Exact ratios avoid the
/// noise feedback of measured-ratio Aitken and tolerate absent terms
/// (a stage with no matching term only shrinks the remainder).
fn extrapolate_matrices(seq: &[DMatrix<Complex64>], r: f64) -> DMatrix<Complex64> {
    let mut cur: Vec<DMatrix<Complex64>> = seq.to_vec();
    let n = cur.len();
    if n < 4 || !(0.0 < r && r < 1.0) {
        return cur.last().expect("nonempty sequence").clone();
    }
    let scale = cur[n - 1].norm().max(1.0);
    let noise = 1e-13 * scale;
    let d: Vec<f64> = (n - 3..n).map(|i| (&cur[i] - &cur[i - 1]).norm()).collect();
    if d.iter().any(|&x| x <= noise) {
        return cur.last().expect("nonempty sequence").clone();
    }
    let rhat = (d[2] / d[1] * (d[1] / d[0])).sqrt();
    if !(0.02..=0.975).contains(&rhat) {
        return cur.last().expect("nonempty sequence").clone();
    }
    let h = (r.ln() / rhat.ln()).round().clamp(1.0, 4.0) as usize;
    for s in 1.. {
        let rho = r.powf(s as f64 / h as f64);
        if rho < 0.2 || cur.len() < 3 {
            break;
        }
        let m = cur.len();
        if (&cur[m - 1] - &cur[m - 2]).norm() <= noise {
            break;
        }
        let next: Vec<DMatrix<Complex64>> = cur
            .windows(2)
            .map(|w| (&w[1] - &w[0].scale(rho)).unscale(1.0 - rho))
            .collect();
        cur = next;
    }
    cur.last().expect("nonempty sequence").clone()
}

/// Top-k spectral frame of a Hermitian-ish matrix.
fn dominant_frame(m: &DMatrix<Complex64>, k: usize) -> SubspaceFrame {
    if k == 0 {
        return SubspaceFrame::empty(m.nrows());
    }
    let (_, vecs) = hermitian_eigen(m);
    SubspaceFrame::from_orthonormal(vecs.columns(0, k).into_owned())
}

/// Spectral frame above a fixed eigenvalue cut.
fn spectral_frame(m: &DMatrix<Complex64>, cut: f64) -> SubspaceFrame {
    let (vals, vecs) = hermitian_eigen(m);
    let k = vals.iter().filter(|&&v| v >= cut).count();
    SubspaceFrame::from_orthonormal(vecs.columns(0, k).into_owned())
}

/// Limit of a family of subspaces of a fixed ℂᵈ along the schedule.
///
/// Convergence is decided on the extrapolated-limit sequence: with a
/// constant dimension, the final consecutive gap of the extrapolated
/// estimates must fall below `gap_converged`, and the estimated residual
/// of the last estimate below `gap_extrapolated`. Dimension jumps or
/// unstable extrapolation produce `NotConverged`, with limsup/liminf
/// frames read off the spectrum of the mean projector.
pub fn subspace_limit(
    frames: &[SubspaceFrame],
    schedule_ratio: f64,
    tol: &Tolerances,
) -> Result<LimitVerdict, LimitError> {
    if frames.len() < 4 {
        return Err(LimitError::TooFewFrames { got: frames.len() });
    }
    let ambient = frames[0].ambient();
    for f in frames {
        if f.ambient() != ambient {
            return Err(LimitError::AmbientMismatch {
                left: ambient,
                right: f.ambient(),
            });
        }
    }
    let dims: Vec<usize> = frames.iter().map(|f| f.dim()).collect();
    let mut gaps = Vec::with_capacity(frames.len() - 1);
    for w in frames.windows(2) {
        gaps.push(subspace_gap(&w[0], &w[1])?);
    }
    let dims_constant = dims.windows(2).all(|w| w[0] == w[1]);
    let k = dims[dims.len() - 1];

    let projectors: Vec<DMatrix<Complex64>> = frames.iter().map(|f| f.projector()).collect();
    let mean = {
        let mut acc = DMatrix::<Complex64>::zeros(ambient, ambient);
        for p in &projectors {
            acc += p;
        }
        acc.unscale(projectors.len() as f64)
    };
    let limsup_frame = spectral_frame(&mean, LIMSUP_SPECTRUM_CUT);
    let liminf_frame = spectral_frame(&mean, LIMINF_SPECTRUM_CUT);

    if !dims_constant {
        return Ok(LimitVerdict {
            status: LimitStatus::NotConverged,
            dims,
            gaps,
            limit_frame: None,
            limsup_frame,
            liminf_frame,
            extrapolation_gaps: Vec::new(),
            extrapolation_residual: f64::INFINITY,
        });
    }

    if k == 0 {
        // the zero subspace throughout
        return Ok(LimitVerdict {
            status: LimitStatus::Converged,
            dims,
            gaps,
            limit_frame: Some(SubspaceFrame::empty(ambient)),
            limsup_frame,
            liminf_frame,
            extrapolation_gaps: vec![0.0; 3],
            extrapolation_residual: 0.0,
        });
    }

    // Extrapolated limit estimates from growing prefixes.
    let window = 4.min(frames.len() - 1);
    let mut estimates = Vec::with_capacity(window);
    for end in (frames.len() - window)..=frames.len() {
        if end < 3 {
            continue;
        }
        let ext = extrapolate_matrices(&projectors[..end], schedule_ratio);
        estimates.push(dominant_frame(&ext, k));
    }
    let mut extrapolation_gaps = Vec::with_capacity(estimates.len() - 1);
    for w in estimates.windows(2) {
        extrapolation_gaps.push(subspace_gap(&w[0], &w[1])?);
    }
    let ext_last = *extrapolation_gaps.last().expect("window >= 2");
    let ext_prev = extrapolation_gaps
        .len()
        .checked_sub(2)
        .map(|i| extrapolation_gaps[i])
        .unwrap_or(ext_last);
    let contraction = if ext_prev > 0.0 {
        (ext_last / ext_prev).clamp(0.0, 0.9)
    } else {
        0.0
    };
    let extrapolation_residual = if ext_last == 0.0 {
        0.0
    } else {
        ext_last * contraction / (1.0 - contraction)
    };

    let converged = ext_last < tol.gap_converged && extrapolation_residual < tol.gap_extrapolated;
    Ok(LimitVerdict {
        status: if converged {
            LimitStatus::Converged
        } else {
            LimitStatus::NotConverged
        },
        dims,
        gaps,
        limit_frame: converged.then(|| estimates.last().expect("nonempty").clone()),
        limsup_frame,
        liminf_frame,
        extrapolation_gaps,
        extrapolation_residual,
    })
}

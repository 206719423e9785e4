//! Directions in ℙ¹ℂ: canonical representatives, the chordal metric,
//! extrapolated limit directions along a schedule, and clustered
//! direction sets.

use num_complex::Complex64;

use crate::tol::Tolerances;

use super::point::{PointC2, PointFamily, Schedule};
use super::GeometryError;

/// A point of ℙ¹ℂ stored through its canonical unit representative: the
/// largest-modulus coordinate is rotated to the positive real axis (ties
/// prefer the first coordinate), then the vector is normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveDirection {
    rep: [Complex64; 2],
}

impl ProjectiveDirection {
    pub fn new(v: [Complex64; 2]) -> Result<Self, GeometryError> {
        let n2 = v[0].norm_sqr() + v[1].norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(GeometryError::BadFamily(
                "cannot form a projective class from the zero vector".into(),
            ));
        }
        Ok(ProjectiveDirection {
            rep: canonicalize(v),
        })
    }

    /// Class [a : b] from two complex coordinates.
    pub fn from_ratio(a: Complex64, b: Complex64) -> Result<Self, GeometryError> {
        ProjectiveDirection::new([a, b])
    }

    pub fn rep(&self) -> [Complex64; 2] {
        self.rep
    }

    /// Re-canonicalize; exactly idempotent on canonical inputs.
    pub fn canonical(&self) -> ProjectiveDirection {
        ProjectiveDirection {
            rep: canonicalize(self.rep),
        }
    }
}

fn canonicalize(v: [Complex64; 2]) -> [Complex64; 2] {
    let pivot_idx = usize::from(v[0].norm() < v[1].norm());
    let pivot = v[pivot_idx];
    let n2 = v[0].norm_sqr() + v[1].norm_sqr();
    // Fast path keeps canonicalization exactly idempotent.
    if pivot.im == 0.0 && pivot.re > 0.0 && (n2 - 1.0).abs() <= 8.0 * f64::EPSILON {
        return v;
    }
    let scale = pivot / pivot.norm() * n2.sqrt();
    let mut out = [v[0] / scale, v[1] / scale];
    // the pivot coordinate is exactly real positive by construction;
    // rounding residue in the division must not break idempotence
    out[pivot_idx] = Complex64::new(out[pivot_idx].norm(), 0.0);
    out
}

impl std::fmt::Display for ProjectiveDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{} : {}]", self.rep[0], self.rep[1])
    }
}

/// Chordal distance |u ∧ v| / (‖u‖‖v‖) on ℙ¹ℂ: symmetric, zero iff the
/// classes agree, at most 1, invariant under rescaling of representatives.
pub fn chordal_distance(u: &ProjectiveDirection, v: &ProjectiveDirection) -> f64 {
    let a = u.rep;
    let b = v.rep;
    (a[0] * b[1] - a[1] * b[0]).norm().clamp(0.0, 1.0)
}

/// Direction [q − p] ∈ ℙ¹ℂ of a pair of distinct points.
pub fn direction(p: &PointC2, q: &PointC2) -> Result<ProjectiveDirection, GeometryError> {
    let w = [q.z1 - p.z1, q.z2 - p.z2];
    let wn = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    let scale = p.norm().max(q.norm()).max(1e-300);
    if wn <= 16.0 * f64::EPSILON * scale {
        return Err(GeometryError::CoincidentPoints {
            detail: format!("direction of coincident points ({:?}, {:?})", p, q),
        });
    }
    ProjectiveDirection::new(w)
}

/// Outcome of following one pair's direction along the schedule.
#[derive(Debug, Clone)]
pub struct DirectionEstimate {
    /// Extrapolated class; `None` when the Cauchy test fails.
    pub class: Option<ProjectiveDirection>,
    /// Last sampled class (reported even for non-convergent pairs).
    pub last: ProjectiveDirection,
    /// Consecutive chordal steps along the schedule.
    pub steps: Vec<f64>,
    /// Spread between extrapolations from adjacent sample windows — an
    /// error scale for the extrapolated class.
    pub uncertainty: f64,
}

impl DirectionEstimate {
    pub fn converged(&self) -> bool {
        self.class.is_some()
    }
}

/// Align `raw`'s phase so its Hermitian inner product with `anchor` is
/// real nonnegative.
fn align_phase(anchor: [Complex64; 2], raw: [Complex64; 2]) -> [Complex64; 2] {
    let inner = anchor[0].conj() * raw[0] + anchor[1].conj() * raw[1];
    let n = inner.norm();
    if n == 0.0 {
        return raw;
    }
    let c = inner.conj() / n;
    [raw[0] * c, raw[1] * c]
}

/// One lattice-h Richardson pyramid on a phase-aligned representative
/// sequence: stage s removes the ε^{s/h} term with its exact ratio
/// r^{s/h} for a geometric schedule of ratio r.
fn richardson_h(aligned: &[[Complex64; 2]], ratio: f64, h: usize) -> [Complex64; 2] {
    let mut seq: Vec<[Complex64; 2]> = aligned.to_vec();
    for s in 1.. {
        let rho = ratio.powf(s as f64 / h as f64);
        if rho < 0.2 || seq.len() < 2 {
            break;
        }
        let r = Complex64::new(rho, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let next: Vec<[Complex64; 2]> = seq
            .windows(2)
            .map(|w| {
                [
                    (w[1][0] - r * w[0][0]) / (one - r),
                    (w[1][1] - r * w[0][1]) / (one - r),
                ]
            })
            .collect();
        seq = next;
    }
    *seq.last().expect("nonempty")
}

/// Self-validating extrapolation: the deviation from the limit is a
/// series in ε^{1/h} with unknown lattice granularity h, so every
/// candidate pyramid (and the raw last sample) is scored by how much its
/// estimate moves when the final sample is withheld, and the most stable
/// one wins. Returns the estimate and that stability score, an error
/// scale for the extrapolated class. `order` = 0 disables extrapolation.
fn richardson_reps(aligned: &[[Complex64; 2]], ratio: f64, order: usize) -> ([Complex64; 2], f64) {
    let n = aligned.len();
    let class_dist = |a: [Complex64; 2], b: [Complex64; 2]| -> f64 {
        match (ProjectiveDirection::new(a), ProjectiveDirection::new(b)) {
            (Ok(u), Ok(v)) => chordal_distance(&u, &v),
            _ => 1.0,
        }
    };
    let last = aligned[n - 1];
    let mut best = (last, class_dist(last, aligned[n - 2]));
    if order == 0 || n < 4 || !(0.0 < ratio && ratio < 1.0) {
        return best;
    }
    for h in [1usize, 2, 4] {
        let full = richardson_h(aligned, ratio, h);
        let held_out = richardson_h(&aligned[..n - 1], ratio, h);
        let c = class_dist(full, held_out);
        if c < best.1 {
            best = (full, c);
        }
    }
    best
}

/// Limit direction v_ij of a pair along the schedule. The class is the
/// Richardson-extrapolated representative when consecutive sampled
/// directions pass the Cauchy gate; otherwise the estimate is marked
/// non-convergent (no subsequence is ever selected silently).
pub fn limit_direction(
    fam: &PointFamily,
    i: usize,
    j: usize,
    schedule: &Schedule,
    tol: &Tolerances,
) -> Result<DirectionEstimate, GeometryError> {
    assert!(i != j, "limit_direction needs distinct indices");
    let mut sampled = Vec::with_capacity(schedule.len());
    for &eps in schedule.samples() {
        let pts = fam.points_at(eps)?;
        sampled.push(direction(&pts[i], &pts[j])?);
    }
    let steps: Vec<f64> = sampled
        .windows(2)
        .map(|w| chordal_distance(&w[0], &w[1]))
        .collect();

    // Cauchy gate on the step ratios over the last window: no blow-up
    // anywhere in the window and contraction at the end — a tail with
    // bounded, eventually-contracting ratios is summable, hence Cauchy.
    // The test is scale-free, so linear distortions of the configuration
    // do not flip the verdict: pre-asymptotic ratio drift and local humps
    // (quarter-power rates under skew maps) are accepted, while
    // oscillating families show ratio jumps of 3x and more. The absolute
    // cap `dir_converge` (default 1 = inactive) can tighten the gate.
    let window = steps.len().min(6);
    let tail = &steps[steps.len() - window..];
    let last_step = *tail.last().expect(">=4 samples");
    let slack = tol.dir_stationary;
    let ratios: Vec<f64> = tail
        .windows(2)
        .filter(|w| w[0] > slack)
        .map(|w| (w[1] - slack).max(0.0) / w[0])
        .collect();
    let no_blowup = ratios.iter().all(|&r| r <= 2.0);
    let final_contraction = ratios.last().is_none_or(|&r| r <= 0.99);
    // a cresting hump: growth decelerating monotonically and essentially
    // stalled at the window end is about to contract
    let decelerating = ratios.len() >= 2
        && ratios.windows(2).all(|w| w[1] <= w[0] - 1e-3)
        && ratios.last().is_none_or(|&r| r <= 1.02);
    let converged = last_step <= slack
        || (last_step <= tol.dir_converge && ((no_blowup && final_contraction) || decelerating));

    // Phase-align representatives before extrapolating.
    let mut aligned: Vec<[Complex64; 2]> = Vec::with_capacity(sampled.len());
    for d in &sampled {
        let rep = d.rep();
        aligned.push(match aligned.last() {
            Some(prev) => align_phase(*prev, rep),
            None => rep,
        });
    }
    let order = schedule.extrapolation_order;
    let schedule_ratio = schedule.tail_ratio();
    let (rep, uncertainty) = richardson_reps(&aligned, schedule_ratio, order);
    let est_full = ProjectiveDirection::new(rep)?;

    Ok(DirectionEstimate {
        class: converged.then_some(est_full),
        last: *sampled.last().expect("nonempty"),
        steps,
        uncertainty,
    })
}

/// Greedy clustering of directions under a chordal tolerance; returns a
/// class index per direction.
pub fn cluster_directions(dirs: &[ProjectiveDirection], tolerance: f64) -> Vec<usize> {
    let weighted: Vec<(ProjectiveDirection, f64)> = dirs.iter().map(|d| (*d, 0.0)).collect();
    cluster_directions_weighted(&weighted, tolerance, 0.0)
}

/// Clustering with per-direction error scales: two classes merge when
/// their chordal distance is below the base tolerance widened by the sum
/// of their error scales times `mult`. Accurately extrapolated classes keep
/// the tight tolerance; only sloppy entries receive slack.
pub fn cluster_directions_weighted(
    dirs: &[(ProjectiveDirection, f64)],
    base_tolerance: f64,
    mult: f64,
) -> Vec<usize> {
    let mut reps: Vec<(ProjectiveDirection, f64)> = Vec::new();
    let mut classes = Vec::with_capacity(dirs.len());
    for (d, unc) in dirs {
        let hit = reps.iter().position(|(r, r_unc)| {
            chordal_distance(r, d) <= base_tolerance.max(mult * (r_unc + unc))
        });
        match hit {
            Some(k) => {
                reps[k].1 = reps[k].1.max(*unc);
                classes.push(k);
            }
            None => {
                reps.push((*d, *unc));
                classes.push(reps.len() - 1);
            }
        }
    }
    classes
}

/// The pairwise limit directions of a point subset, with the number of
/// distinct classes under tolerance clustering.
#[derive(Debug, Clone)]
pub struct DirectionSet {
    entries: Vec<((usize, usize), DirectionEstimate)>,
    distinct_count: usize,
    base_tolerance: f64,
}

/// Widening multiplier applied to extrapolation error scales during
/// direction clustering.
pub const UNCERTAINTY_WIDENING: f64 = 10.0;

impl DirectionSet {
    pub fn entries(&self) -> &[((usize, usize), DirectionEstimate)] {
        &self.entries
    }

    pub fn distinct_count(&self) -> usize {
        self.distinct_count
    }

    /// Base chordal tolerance (before per-entry widening).
    pub fn base_tolerance(&self) -> f64 {
        self.base_tolerance
    }

    /// The direction estimate (with its uncertainty) of a pair.
    pub fn estimate(&self, i: usize, j: usize) -> Option<&DirectionEstimate> {
        let key = (i.min(j), i.max(j));
        self.entries
            .iter()
            .find(|(p, _)| *p == key)
            .map(|(_, est)| est)
    }

    /// Class with its error scale, for weighted clustering.
    pub fn weighted_class(&self, i: usize, j: usize) -> Option<(ProjectiveDirection, f64)> {
        self.estimate(i, j)
            .and_then(|e| e.class.map(|c| (c, e.uncertainty)))
    }

    /// Whether two pairs share a limit class under the widened tolerance.
    pub fn classes_equal(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        match (self.weighted_class(a.0, a.1), self.weighted_class(b.0, b.1)) {
            (Some((u, cu)), Some((v, cv))) => {
                chordal_distance(&u, &v)
                    <= self.base_tolerance.max(UNCERTAINTY_WIDENING * (cu + cv))
            }
            _ => false,
        }
    }

    /// Limit class of the pair (i, j) in either index order.
    pub fn class(&self, i: usize, j: usize) -> Option<&ProjectiveDirection> {
        let key = (i.min(j), i.max(j));
        self.entries
            .iter()
            .find(|(p, _)| *p == key)
            .and_then(|(_, est)| est.class.as_ref())
    }
}

/// All pairwise limit directions over `subset` (0-based point indices).
/// Fails with the offending pair when some direction does not converge.
///
/// The clustering tolerance is the configured chordal threshold, widened
/// to three times the worst extrapolation uncertainty so that classes
/// whose representatives carry correlated higher-order error still merge.
pub fn direction_set(
    fam: &PointFamily,
    schedule: &Schedule,
    subset: &[usize],
    tol: &Tolerances,
) -> Result<DirectionSet, GeometryError> {
    assert!(
        subset.len() >= 2,
        "direction_set needs at least two indices"
    );
    let mut entries = Vec::new();
    for (a, &i) in subset.iter().enumerate() {
        for &j in subset.iter().skip(a + 1) {
            let est = limit_direction(fam, i, j, schedule, tol)?;
            if !est.converged() {
                return Err(GeometryError::NonConvergent { i, j });
            }
            entries.push(((i.min(j), i.max(j)), est));
        }
    }
    let weighted: Vec<(ProjectiveDirection, f64)> = entries
        .iter()
        .map(|(_, e)| (*e.class.as_ref().expect("converged"), e.uncertainty))
        .collect();
    let ids = cluster_directions_weighted(&weighted, tol.chordal_eq, UNCERTAINTY_WIDENING);
    let distinct_count = ids.iter().copied().max().map_or(0, |m| m + 1);
    Ok(DirectionSet {
        entries,
        distinct_count,
        base_tolerance: tol.chordal_eq,
    })
}

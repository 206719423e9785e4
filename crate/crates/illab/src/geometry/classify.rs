//! Combinatorial classification of four-point families by their limit
//! directions, and the linear normalization sending a chosen pair of
//! limit directions to the coordinate axes.

use serde::Serialize;

use crate::tol::Tolerances;

use super::direction::{
    chordal_distance, cluster_directions_weighted, direction_set, DirectionSet,
    ProjectiveDirection, UNCERTAINTY_WIDENING,
};
use super::point::{LinearMap2, PointFamily, Schedule};
use super::GeometryError;

/// The classification tags. `Generic` configurations satisfy both the
/// triple-richness condition (every 3-subset spans ≥ 2 limit directions)
/// and the vertex-spread condition (every point sees ≥ 2 directions).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassTag {
    Generic,
    VertexDegenerate,
    #[serde(rename = "TripleCollinear_ManyDirections")]
    TripleCollinearManyDirections,
    #[serde(rename = "TripleCollinear_TwoDirections")]
    TripleCollinearTwoDirections,
    NonConvergent,
    Unclassified,
}

impl std::fmt::Display for ClassTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClassTag::Generic => "Generic",
            ClassTag::VertexDegenerate => "VertexDegenerate",
            ClassTag::TripleCollinearManyDirections => "TripleCollinear_ManyDirections",
            ClassTag::TripleCollinearTwoDirections => "TripleCollinear_TwoDirections",
            ClassTag::NonConvergent => "NonConvergent",
            ClassTag::Unclassified => "Unclassified",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for ClassTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Generic" => Ok(ClassTag::Generic),
            "VertexDegenerate" => Ok(ClassTag::VertexDegenerate),
            "TripleCollinear_ManyDirections" => Ok(ClassTag::TripleCollinearManyDirections),
            "TripleCollinear_TwoDirections" => Ok(ClassTag::TripleCollinearTwoDirections),
            "NonConvergent" => Ok(ClassTag::NonConvergent),
            "Unclassified" => Ok(ClassTag::Unclassified),
            other => Err(format!("unknown classification tag `{other}`")),
        }
    }
}

/// Per-condition booleans and witnesses backing a classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassEvidence {
    /// Every 3-subset spans at least 2 limit directions.
    pub triple_rich: bool,
    /// Every vertex sees at least 2 limit directions.
    pub vertex_spread: bool,
    /// Some vertex sees exactly one limit direction.
    pub vertex_collapsed: bool,
    /// Number of distinct classes among the six limit directions.
    pub distinct_count: usize,
    /// A 3-subset (1-based) with a single limit direction, when one exists.
    pub collinear_triple: Option<[usize; 3]>,
    /// A vertex (1-based) seeing a single direction, when one exists.
    pub degenerate_vertex: Option<usize>,
    /// Directions per 3-subset: (subset, distinct classes).
    pub triple_counts: Vec<([usize; 3], usize)>,
    /// Directions per vertex: (vertex, distinct classes).
    pub vertex_counts: Vec<(usize, usize)>,
    /// The pair (1-based) whose direction failed to converge, if any.
    pub nonconvergent_pair: Option<[usize; 2]>,
}

/// A classification: exactly one tag, a deterministic function of the
/// condition booleans, plus the evidence that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub tag: ClassTag,
    pub evidence: ClassEvidence,
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
const TRIPLES: [[usize; 3]; 4] = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];

/// Classify a four-point family through its six limit directions.
pub fn classify(
    fam: &PointFamily,
    schedule: &Schedule,
    tol: &Tolerances,
) -> Result<Classification, GeometryError> {
    assert_eq!(fam.npoints(), 4, "classification is for 4-point families");
    let ds = match direction_set(fam, schedule, &[0, 1, 2, 3], tol) {
        Ok(ds) => ds,
        Err(GeometryError::NonConvergent { i, j }) => {
            return Ok(Classification {
                tag: ClassTag::NonConvergent,
                evidence: ClassEvidence {
                    triple_rich: false,
                    vertex_spread: false,
                    vertex_collapsed: false,
                    distinct_count: 0,
                    collinear_triple: None,
                    degenerate_vertex: None,
                    triple_counts: Vec::new(),
                    vertex_counts: Vec::new(),
                    nonconvergent_pair: Some([i + 1, j + 1]),
                },
            });
        }
        Err(e) => return Err(e),
    };
    Ok(classify_from_directions(&ds))
}

/// Classification from an already-computed direction set.
pub fn classify_from_directions(ds: &DirectionSet) -> Classification {
    let base = ds.base_tolerance();
    let dir_of = |i: usize, j: usize| -> (ProjectiveDirection, f64) {
        ds.weighted_class(i, j)
            .expect("direction_set is fully convergent")
    };

    let count_distinct = |dirs: &[(ProjectiveDirection, f64)]| -> usize {
        let ids = cluster_directions_weighted(dirs, base, UNCERTAINTY_WIDENING);
        ids.iter().copied().max().map_or(0, |m| m + 1)
    };

    let mut triple_counts = Vec::new();
    for t in TRIPLES {
        let dirs = [dir_of(t[0], t[1]), dir_of(t[0], t[2]), dir_of(t[1], t[2])];
        triple_counts.push(([t[0] + 1, t[1] + 1, t[2] + 1], count_distinct(&dirs)));
    }
    let mut vertex_counts = Vec::new();
    for k in 0..4 {
        let dirs: Vec<(ProjectiveDirection, f64)> =
            (0..4).filter(|&m| m != k).map(|m| dir_of(k, m)).collect();
        vertex_counts.push((k + 1, count_distinct(&dirs)));
    }

    let triple_rich = triple_counts.iter().all(|(_, c)| *c >= 2);
    let vertex_spread = vertex_counts.iter().all(|(_, c)| *c >= 2);
    let vertex_collapsed = !vertex_spread;
    let collinear_triple = triple_counts.iter().find(|(_, c)| *c == 1).map(|(t, _)| *t);
    let degenerate_vertex = vertex_counts.iter().find(|(_, c)| *c == 1).map(|(v, _)| *v);
    let distinct_count = ds.distinct_count();

    let tag = if triple_rich {
        if vertex_spread {
            ClassTag::Generic
        } else {
            ClassTag::VertexDegenerate
        }
    } else if distinct_count >= 3 {
        ClassTag::TripleCollinearManyDirections
    } else if distinct_count == 2 {
        ClassTag::TripleCollinearTwoDirections
    } else {
        ClassTag::Unclassified
    };

    Classification {
        tag,
        evidence: ClassEvidence {
            triple_rich,
            vertex_spread,
            vertex_collapsed,
            distinct_count,
            collinear_triple,
            degenerate_vertex,
            triple_counts,
            vertex_counts,
            nonconvergent_pair: None,
        },
    }
}

/// The six limit directions of a 4-point family, as a direction set over
/// all indices.
pub fn six_directions(
    fam: &PointFamily,
    schedule: &Schedule,
    tol: &Tolerances,
) -> Result<DirectionSet, GeometryError> {
    direction_set(fam, schedule, &[0, 1, 2, 3], tol)
}

/// All unordered index pairs of a 4-point family, 0-based.
pub fn all_pairs() -> [(usize, usize); 6] {
    PAIRS
}

/// Invertible linear map sending v_ij ↦ `[1:0]` and v_ik ↦ `[0:1]`, together
/// with the family translated so that a_i ≡ (0,0) and mapped through it.
pub fn normalize_frame(
    fam: &PointFamily,
    i: usize,
    j: usize,
    k: usize,
    schedule: &Schedule,
    tol: &Tolerances,
) -> Result<(LinearMap2, PointFamily), GeometryError> {
    let est_ij = super::direction::limit_direction(fam, i, j, schedule, tol)?;
    let est_ik = super::direction::limit_direction(fam, i, k, schedule, tol)?;
    let (u, w) = match (est_ij.class, est_ik.class) {
        (Some(u), Some(w)) => (u, w),
        _ => {
            let (a, b) = if est_ij.class.is_none() {
                (i, j)
            } else {
                (i, k)
            };
            return Err(GeometryError::NonConvergent { i: a, j: b });
        }
    };
    if chordal_distance(&u, &w) <= tol.chordal_eq {
        return Err(GeometryError::DegenerateDirections);
    }
    // columns (u, w) — the inverse sends u ↦ e1, w ↦ e2 exactly
    let cols = LinearMap2 {
        m: [[u.rep()[0], w.rep()[0]], [u.rep()[1], w.rep()[1]]],
    };
    let map = cols.inverse().ok_or(GeometryError::DegenerateDirections)?;
    Ok((map, fam.transformed(map, Some(i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointC2;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square_family() -> PointFamily {
        PointFamily::from_fn("square", 4, |e| {
            let z = Complex64::default();
            vec![
                PointC2::new(z, z),
                PointC2::new(e, z),
                PointC2::new(z, e),
                PointC2::new(e, e),
            ]
        })
    }

    fn vertex_degenerate_family() -> PointFamily {
        // {(0,0), (-eps,0), (0,eps^2), (eps^2, 2eps^2)}: vertex 2 sees only [1:0]
        PointFamily::from_fn("thm23", 4, |e| {
            let z = Complex64::default();
            let e2 = e * e;
            vec![
                PointC2::new(z, z),
                PointC2::new(-e, z),
                PointC2::new(z, e2),
                PointC2::new(e2, e2.scale(2.0)),
            ]
        })
    }

    fn gamma2_family() -> PointFamily {
        // {(0,0), (eps,0), (0,eps), (2eps,0)}: triple {1,2,4} collinear
        PointFamily::from_fn("gamma2", 4, |e| {
            let z = Complex64::default();
            vec![
                PointC2::new(z, z),
                PointC2::new(e, z),
                PointC2::new(z, e),
                PointC2::new(e.scale(2.0), z),
            ]
        })
    }

    #[test]
    fn square_is_generic() {
        let cls = classify(
            &square_family(),
            &Schedule::default_geometric(),
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(cls.tag, ClassTag::Generic);
        assert_eq!(cls.evidence.distinct_count, 4);
        assert!(cls.evidence.triple_rich && cls.evidence.vertex_spread);
    }

    #[test]
    fn constructed_family_is_vertex_degenerate() {
        let cls = classify(
            &vertex_degenerate_family(),
            &Schedule::default_geometric(),
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(cls.tag, ClassTag::VertexDegenerate);
        assert_eq!(cls.evidence.degenerate_vertex, Some(2));
        assert!(cls.evidence.triple_rich);
    }

    #[test]
    fn gamma2_is_triple_collinear_many() {
        let cls = classify(
            &gamma2_family(),
            &Schedule::default_geometric(),
            &Tolerances::default(),
        )
        .unwrap();
        assert_eq!(cls.tag, ClassTag::TripleCollinearManyDirections);
        assert_eq!(cls.evidence.collinear_triple, Some([1, 2, 4]));
        assert_eq!(cls.evidence.distinct_count, 4);
    }

    #[test]
    fn oscillating_family_tags_nonconvergent() {
        let fam = PointFamily::from_fn("osc", 4, |e| {
            let z = Complex64::default();
            let phase = (1.0 / e.norm()).sin();
            vec![
                PointC2::new(z, z),
                PointC2::new(e, e * c(0.0, 1.0).scale(phase)),
                PointC2::new(z, e),
                PointC2::new(e, e),
            ]
        });
        let cls = classify(&fam, &Schedule::default_geometric(), &Tolerances::default()).unwrap();
        assert_eq!(cls.tag, ClassTag::NonConvergent);
        assert_eq!(cls.evidence.nonconvergent_pair, Some([1, 2]));
    }

    #[test]
    fn all_collinear_is_unclassified() {
        let fam = PointFamily::from_fn("line", 4, |e| {
            let z = Complex64::default();
            vec![
                PointC2::new(z, z),
                PointC2::new(e, z),
                PointC2::new(e.scale(2.0), z),
                PointC2::new(e.scale(3.0), z),
            ]
        });
        let cls = classify(&fam, &Schedule::default_geometric(), &Tolerances::default()).unwrap();
        assert_eq!(cls.tag, ClassTag::Unclassified);
        assert_eq!(cls.evidence.distinct_count, 1);
    }

    #[test]
    fn normalize_frame_sends_directions_to_axes() {
        // v12 = [1:1], v13 = [1:-1]
        let fam = PointFamily::from_fn("skewed", 4, |e| {
            let z = Complex64::default();
            vec![
                PointC2::new(z, z),
                PointC2::new(e, e),
                PointC2::new(e, -e),
                PointC2::new(e.scale(2.0), z),
            ]
        });
        let sch = Schedule::default_geometric();
        let tol = Tolerances::default();
        let (map, mapped) = normalize_frame(&fam, 0, 1, 2, &sch, &tol).unwrap();
        assert!(map.det().norm() > 0.0);
        let d12 = super::super::direction::limit_direction(&mapped, 0, 1, &sch, &tol)
            .unwrap()
            .class
            .unwrap();
        let d13 = super::super::direction::limit_direction(&mapped, 0, 2, &sch, &tol)
            .unwrap()
            .class
            .unwrap();
        let e1 = ProjectiveDirection::new([c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let e2 = ProjectiveDirection::new([c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(chordal_distance(&d12, &e1) < 1e-8);
        assert!(chordal_distance(&d13, &e2) < 1e-8);
    }

    #[test]
    fn normalize_frame_rejects_equal_directions() {
        let fam = gamma2_family();
        let sch = Schedule::default_geometric();
        let tol = Tolerances::default();
        // v12 = v14 = [1:0]
        let err = normalize_frame(&fam, 0, 1, 3, &sch, &tol).unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateDirections));
    }

    #[test]
    fn identity_when_already_normalized() {
        let fam = square_family();
        let sch = Schedule::default_geometric();
        let tol = Tolerances::default();
        let (map, _) = normalize_frame(&fam, 0, 1, 2, &sch, &tol).unwrap();
        assert!((map.m[0][0] - c(1.0, 0.0)).norm() < 1e-9);
        assert!(map.m[0][1].norm() < 1e-9);
        assert!(map.m[1][0].norm() < 1e-9);
        assert!((map.m[1][1] - c(1.0, 0.0)).norm() < 1e-9);
    }
}

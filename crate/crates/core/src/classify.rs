//! Venn / independent-family / FISC / simplicity verdicts, and the corner
//! counting audit on concrete diagrams.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, FaceId, PolygonFamily, SignVector};
use crate::bounds::{self, BoundsError};
use crate::geometry::{point_in_polygon, segment_intersection, Location, SegmentIntersection};

/// Faces grouped by sign vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionCensus {
    n: usize,
    faces: BTreeMap<SignVector, Vec<FaceId>>,
}

impl RegionCensus {
    pub fn of(arrangement: &Arrangement) -> Self {
        let mut faces: BTreeMap<SignVector, Vec<FaceId>> = BTreeMap::new();
        for face in arrangement.faces() {
            faces.entry(face.sign).or_default().push(face.id);
        }
        RegionCensus {
            n: arrangement.n(),
            faces,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces_by_sign(&self) -> &BTreeMap<SignVector, Vec<FaceId>> {
        &self.faces
    }

    pub fn multiplicity(&self, sign: &SignVector) -> usize {
        self.faces.get(sign).map_or(0, Vec::len)
    }

    pub fn present_count(&self) -> usize {
        self.faces.len()
    }

    pub fn total_faces(&self) -> usize {
        self.faces.values().map(Vec::len).sum()
    }

    pub fn missing_count(&self) -> u64 {
        (1u64 << self.n) - self.faces.len() as u64
    }

    /// Sign vectors with no face, in increasing bit order.
    pub fn missing(&self) -> Vec<SignVector> {
        (0..1u64 << self.n)
            .map(|bits| SignVector::new(bits, self.n))
            .filter(|s| !self.faces.contains_key(s))
            .collect()
    }

    /// Sign vectors realised by two or more faces.
    pub fn duplicated(&self) -> Vec<SignVector> {
        self.faces
            .iter()
            .filter(|(_, f)| f.len() > 1)
            .map(|(s, _)| *s)
            .collect()
    }

    /// Faces beyond the first for every duplicated vector.
    pub fn excess_faces(&self) -> u64 {
        self.faces.values().map(|f| f.len() as u64 - 1).sum()
    }
}

pub fn census(arrangement: &Arrangement) -> RegionCensus {
    RegionCensus::of(arrangement)
}

#[derive(Debug, Clone)]
pub struct VennReport {
    pub n: usize,
    pub is_fisc: bool,
    pub is_independent_family: bool,
    pub is_venn: bool,
    pub is_simple: bool,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub census: RegionCensus,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub outer_face_edges: Vec<usize>,
    pub diagnostics: Vec<String>,
}

impl VennReport {
    pub fn from_arrangement(arrangement: &Arrangement) -> Self {
        let n = arrangement.n();
        let census = RegionCensus::of(arrangement);
        let histogram = arrangement.degree_histogram();
        let is_independent_family = census.missing_count() == 0;
        let is_venn = is_independent_family && census.excess_faces() == 0;
        let is_fisc = census.multiplicity(&SignVector::all_ones(n)) > 0;

        let mut diagnostics = Vec::new();
        let missing = census.missing_count();
        if missing > 0 {
            diagnostics.push(format!("{missing} of {} regions missing", 1u64 << n));
        }
        for sign in census.duplicated() {
            diagnostics.push(format!(
                "region {sign} split into {} faces",
                census.multiplicity(&sign)
            ));
        }
        for (&degree, &count) in histogram.range(6..) {
            diagnostics.push(format!("{count} vertices of degree {degree}"));
        }
        let outer_face_edges = arrangement.outer_face_curve_edges();
        for (curve, &count) in outer_face_edges.iter().enumerate() {
            if count != 1 {
                diagnostics.push(format!("curve {curve} has {count} outer-face edges"));
            }
        }

        VennReport {
            n,
            is_fisc,
            is_independent_family,
            is_venn,
            is_simple: arrangement.is_simple(),
            vertices: arrangement.vertex_count(),
            edges: arrangement.edge_count(),
            faces: arrangement.face_count(),
            census,
            degree_histogram: histogram,
            outer_face_edges,
            diagnostics,
        }
    }
}

pub fn verify(family: &PolygonFamily) -> Result<VennReport, ArrangementError> {
    let arrangement = Arrangement::build(family)?;
    Ok(VennReport::from_arrangement(&arrangement))
}

/// Transition counts around the corners of curve `i`, each labelled external
/// (E) or internal (I) relative to curve `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerProfile {
    pub i: usize,
    pub j: usize,
    pub ei: usize,
    pub ie: usize,
    pub ii: usize,
    /// E to E with the side between them not meeting curve `j`.
    pub ee: usize,
    /// E to E with the side between them crossing curve `j` twice.
    pub ee_crossed: usize,
    /// Boundary crossings between curves `i` and `j`.
    pub crossings: usize,
}

impl CornerProfile {
    pub fn total(&self) -> usize {
        self.ei + self.ie + self.ii + self.ee + self.ee_crossed
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CornerError {
    #[error("corner {corner} of curve {curve} lies on the boundary of curve {other}")]
    CornerOnBoundary {
        curve: usize,
        corner: usize,
        other: usize,
    },
    #[error("side {side} of curve {curve} meets curve {other} {count} times between corners labelled {labels}")]
    UnexpectedCrossings {
        curve: usize,
        side: usize,
        other: usize,
        count: usize,
        labels: &'static str,
    },
    #[error("curves {0} and {1} overlap along a side")]
    Overlap(usize, usize),
}

/// Profiles for every ordered pair `(i, j)`, `i != j`, in row-major order.
pub fn corner_profiles(family: &PolygonFamily) -> Result<Vec<CornerProfile>, CornerError> {
    let n = family.n();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(corner_profile(family, i, j)?);
            }
        }
    }
    Ok(out)
}

pub fn corner_profile(
    family: &PolygonFamily,
    i: usize,
    j: usize,
) -> Result<CornerProfile, CornerError> {
    let curve = family.polygon(i);
    let other = family.polygon(j);
    let k = curve.k();
    let mut inside = Vec::with_capacity(k);
    for (corner, pt) in curve.corners().iter().enumerate() {
        match point_in_polygon(pt, other) {
            Location::Inside => inside.push(true),
            Location::Outside => inside.push(false),
            Location::Boundary => {
                return Err(CornerError::CornerOnBoundary {
                    curve: i,
                    corner,
                    other: j,
                })
            }
        }
    }
    let mut profile = CornerProfile {
        i,
        j,
        ei: 0,
        ie: 0,
        ii: 0,
        ee: 0,
        ee_crossed: 0,
        crossings: 0,
    };
    for (side_index, side) in curve.sides().enumerate() {
        let mut count = 0;
        for foreign in other.sides() {
            match segment_intersection(&side, &foreign) {
                SegmentIntersection::Empty => {}
                SegmentIntersection::Point(_) => count += 1,
                SegmentIntersection::Overlap => return Err(CornerError::Overlap(i, j)),
            }
        }
        profile.crossings += count;
        let unexpected = |labels| CornerError::UnexpectedCrossings {
            curve: i,
            side: side_index,
            other: j,
            count,
            labels,
        };
        match (inside[side_index], inside[(side_index + 1) % k]) {
            (false, true) if count == 1 => profile.ei += 1,
            (true, false) if count == 1 => profile.ie += 1,
            (true, true) if count == 0 => profile.ii += 1,
            (false, false) if count == 0 => profile.ee += 1,
            (false, false) if count == 2 => profile.ee_crossed += 1,
            (false, true) => return Err(unexpected("EI")),
            (true, false) => return Err(unexpected("IE")),
            (true, true) => return Err(unexpected("II")),
            (false, false) => return Err(unexpected("EE")),
        }
    }
    Ok(profile)
}

/// Outer-face (epsilon) and inner (iota) corner counts of one curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalCornerLabels {
    pub curve: usize,
    pub outer: usize,
    pub inner: usize,
    /// Per corner, in order: true when the corner lies on the outer face.
    pub on_outer_face: Vec<bool>,
    /// The outer-face corners form one cyclic run.
    pub contiguous: bool,
}

/// Corner labels read off the arrangement: a corner is on the outer face when
/// the edge carrying it borders the unbounded face.
pub fn global_corner_labels(arrangement: &Arrangement) -> Vec<GlobalCornerLabels> {
    let polygons = arrangement.polygons();
    let mut flags: Vec<Vec<bool>> = polygons.iter().map(|p| vec![false; p.k()]).collect();
    for he in arrangement.half_edges() {
        if !he.forward {
            continue;
        }
        let twin = &arrangement.half_edges()[he.twin];
        if twin.face == arrangement.outer_face() {
            for &c in &he.corners {
                flags[he.curve][c] = true;
            }
        }
    }
    // A free loop keeps corner 0 at the start of its path.
    for he in arrangement.half_edges() {
        if he.forward
            && he.origin.is_none()
            && arrangement.half_edges()[he.twin].face == arrangement.outer_face()
        {
            flags[he.curve][0] = true;
        }
    }
    flags
        .into_iter()
        .enumerate()
        .map(|(curve, on_outer_face)| {
            let outer = on_outer_face.iter().filter(|&&f| f).count();
            let k = on_outer_face.len();
            let runs = (0..k)
                .filter(|&c| on_outer_face[c] && !on_outer_face[(c + k - 1) % k])
                .count();
            GlobalCornerLabels {
                curve,
                outer,
                inner: k - outer,
                contiguous: runs <= 1,
                on_outer_face,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

impl AuditCheck {
    fn at_least(name: &str, lhs: i64, rhs: i64) -> Self {
        AuditCheck {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs >= rhs,
        }
    }

    fn at_most(name: &str, lhs: i64, rhs: i64) -> Self {
        AuditCheck {
            name: name.to_string(),
            lhs,
            rhs,
            holds: lhs <= rhs,
        }
    }

    pub fn margin(&self) -> i64 {
        (self.lhs - self.rhs).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremAudit {
    pub n: usize,
    pub k: usize,
    pub vertices: usize,
    pub profiles: Vec<CornerProfile>,
    pub labels: Vec<GlobalCornerLabels>,
    pub checks: Vec<AuditCheck>,
    pub passed: bool,
}

impl TheoremAudit {
    pub fn check(&self, name: &str) -> Option<&AuditCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_CORNER_SUM: &str = "corner_counts_sum_to_k";
pub const CHECK_EI_EQUALS_IE: &str = "ei_equals_ie";
pub const CHECK_OUTER_CONTIGUOUS: &str = "outer_corners_contiguous";
pub const CHECK_OUTER_CORNERS: &str = "sum_ee_at_least_sum_outer_minus_one";
pub const CHECK_INNER_CORNERS: &str = "sum_ii_ie_at_least_sum_inner";
pub const CHECK_VERTEX_CAP: &str = "vertex_cap";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Corner(#[from] CornerError),
    #[error("the family is not a Venn diagram")]
    NotVenn,
    #[error("polygons have different side counts")]
    MixedSideCounts,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Recompute the corner calculus on a verified Venn diagram of k-gons and
/// check each counting inequality, including the vertex cap.
pub fn theorem_audit(family: &PolygonFamily) -> Result<TheoremAudit, AuditError> {
    let arrangement = Arrangement::build(family)?;
    let report = VennReport::from_arrangement(&arrangement);
    if !report.is_venn {
        return Err(AuditError::NotVenn);
    }
    let k = family.uniform_k().ok_or(AuditError::MixedSideCounts)?;
    let n = family.n();
    let profiles = corner_profiles(family)?;
    let labels = global_corner_labels(&arrangement);

    let sum = |f: &dyn Fn(&CornerProfile) -> usize| profiles.iter().map(f).sum::<usize>() as i64;
    let ee_sum = sum(&|p| p.ee);
    let ii_ie_sum = sum(&|p| p.ii + p.ie);
    let outer_minus_one: i64 = labels.iter().map(|l| l.outer as i64 - 1).sum();
    let inner: i64 = labels.iter().map(|l| l.inner as i64).sum();

    let mut checks = Vec::new();
    let sums_ok = profiles.iter().filter(|p| p.total() == k).count() as i64;
    checks.push(AuditCheck {
        name: CHECK_CORNER_SUM.to_string(),
        lhs: sums_ok,
        rhs: profiles.len() as i64,
        holds: sums_ok == profiles.len() as i64,
    });
    let balanced = profiles.iter().filter(|p| p.ei == p.ie).count() as i64;
    checks.push(AuditCheck {
        name: CHECK_EI_EQUALS_IE.to_string(),
        lhs: balanced,
        rhs: profiles.len() as i64,
        holds: balanced == profiles.len() as i64,
    });
    let contiguous = labels.iter().filter(|l| l.contiguous).count() as i64;
    checks.push(AuditCheck {
        name: CHECK_OUTER_CONTIGUOUS.to_string(),
        lhs: contiguous,
        rhs: n as i64,
        holds: contiguous == n as i64,
    });
    checks.push(AuditCheck::at_least(
        CHECK_OUTER_CORNERS,
        ee_sum,
        outer_minus_one,
    ));
    checks.push(AuditCheck::at_least(CHECK_INNER_CORNERS, ii_ie_sum, inner));
    let cap = bounds::theorem_vertex_cap(n as u32, k as u32)?;
    checks.push(AuditCheck::at_most(
        CHECK_VERTEX_CAP,
        report.vertices as i64,
        cap as i64,
    ));

    let passed = checks.iter().all(|c| c.holds);
    Ok(TheoremAudit {
        n,
        k,
        vertices: report.vertices,
        profiles,
        labels,
        checks,
        passed,
    })
}

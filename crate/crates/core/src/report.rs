//! The report document emitted by `verify` on the command line and by the
//! HTTP service.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, ArrangementError, PolygonFamily, SignVector};
use crate::bounds;
use crate::classify::{theorem_audit, TheoremAudit, VennReport};

pub const REPORT_FORMAT: &str = "polyvenn-report";
pub const REPORT_VERSION: u32 = 1;

/// Missing regions listed individually up to this many.
pub const MISSING_LIST_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub is_fisc: bool,
    pub is_independent_family: bool,
    pub is_venn: bool,
    pub is_simple: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DuplicateRegion {
    pub sign: SignVector,
    pub faces: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub regions_expected: u64,
    pub regions_present: usize,
    pub missing_count: u64,
    pub missing: Vec<SignVector>,
    pub missing_truncated: bool,
    pub duplicated: Vec<DuplicateRegion>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub k: u32,
    pub lemma2_min_k: u64,
    pub theorem_min_k: u64,
    pub lemma1_max_vertices: u64,
    pub theorem_vertex_cap: u64,
    pub k_meets_lower_bound: bool,
    pub vertices_within_caps: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub verdict: Verdict,
    pub counts: Counts,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub census: CensusSummary,
    pub outer_face_edges: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundComparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audit: Option<TheoremAudit>,
    pub diagnostics: Vec<String>,
}

fn compare_bounds(family: &PolygonFamily, vertices: usize) -> Option<BoundComparison> {
    let n = family.n() as u32;
    let k = family.uniform_k()? as u32;
    let narrow = |v: u128| u64::try_from(v).ok();
    let lemma2 = narrow(bounds::lemma2_min_k(n).ok()?)?;
    let theorem = narrow(bounds::theorem_min_k(n).ok()?)?;
    let lemma1 = narrow(bounds::lemma1_max_vertices(n, k).ok()?)?;
    let cap = narrow(bounds::theorem_vertex_cap(n, k).ok()?)?;
    Some(BoundComparison {
        k,
        lemma2_min_k: lemma2,
        theorem_min_k: theorem,
        lemma1_max_vertices: lemma1,
        theorem_vertex_cap: cap,
        k_meets_lower_bound: k as u64 >= theorem,
        vertices_within_caps: vertices as u64 <= lemma1.min(cap),
    })
}

impl ReportDocument {
    pub fn new(family: &PolygonFamily, report: &VennReport, audit: Option<TheoremAudit>) -> Self {
        let census = &report.census;
        let missing: Vec<SignVector> = if census.missing_count() as usize <= MISSING_LIST_LIMIT {
            census.missing()
        } else {
            Vec::new()
        };
        ReportDocument {
            format: REPORT_FORMAT.to_string(),
            version: REPORT_VERSION,
            n: report.n,
            verdict: Verdict {
                is_fisc: report.is_fisc,
                is_independent_family: report.is_independent_family,
                is_venn: report.is_venn,
                is_simple: report.is_simple,
            },
            counts: Counts {
                vertices: report.vertices,
                edges: report.edges,
                faces: report.faces,
            },
            degree_histogram: report.degree_histogram.clone(),
            census: CensusSummary {
                regions_expected: 1u64 << report.n,
                regions_present: census.present_count(),
                missing_count: census.missing_count(),
                missing_truncated: missing.len() as u64 != census.missing_count(),
                missing,
                duplicated: census
                    .duplicated()
                    .into_iter()
                    .map(|sign| DuplicateRegion {
                        sign,
                        faces: census.multiplicity(&sign),
                    })
                    .collect(),
            },
            outer_face_edges: report.outer_face_edges.clone(),
            bounds: compare_bounds(family, report.vertices),
            audit,
            diagnostics: report.diagnostics.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Process exit status for `verify`: 0 for a Venn diagram, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdict.is_venn {
            0
        } else {
            1
        }
    }
}

/// Build, classify and optionally audit a family. The single code path
/// behind both the command line and the HTTP service.
pub fn verify_family(
    family: &PolygonFamily,
    audit: bool,
) -> Result<(ReportDocument, Arrangement), ArrangementError> {
    let arrangement = Arrangement::build(family)?;
    let report = VennReport::from_arrangement(&arrangement);
    let mut notes = Vec::new();
    let audit = if !audit {
        None
    } else if !report.is_venn {
        notes.push("audit skipped: not a Venn diagram".to_string());
        None
    } else {
        match theorem_audit(family) {
            Ok(a) => Some(a),
            Err(e) => {
                notes.push(format!("audit skipped: {e}"));
                None
            }
        }
    };
    let mut doc = ReportDocument::new(family, &report, audit);
    doc.diagnostics.extend(notes);
    Ok((doc, arrangement))
}

/// Floating-point geometry for drawing clients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawingGeometry {
    pub vertices: Vec<DrawnVertex>,
    pub edges: Vec<DrawnEdge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawnVertex {
    pub x: f64,
    pub y: f64,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawnEdge {
    pub curve: usize,
    pub points: Vec<[f64; 2]>,
    pub outer: bool,
}

impl DrawingGeometry {
    pub fn of(arrangement: &Arrangement) -> Self {
        let vertices = arrangement
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = v.point.to_f64();
                DrawnVertex {
                    x,
                    y,
                    degree: v.degree(),
                }
            })
            .collect();
        let half_edges = arrangement.half_edges();
        let edges = half_edges
            .iter()
            .filter(|he| he.forward)
            .map(|he| DrawnEdge {
                curve: he.curve,
                points: he
                    .path
                    .iter()
                    .map(|p| {
                        let (x, y) = p.to_f64();
                        [x, y]
                    })
                    .collect(),
                outer: half_edges[he.twin].face == arrangement.outer_face(),
            })
            .collect();
        DrawingGeometry { vertices, edges }
    }
}

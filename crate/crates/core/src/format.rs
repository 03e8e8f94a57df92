//! Family and search-configuration documents.
//!
//! Both are JSON. Coordinates are always strings so they stay exact; see
//! `docs/family-format.md` for the grammar.

use std::fmt::Write;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::arrangement::{FamilyError, PolygonFamily};
use crate::geometry::{
    format_rat, parse_rat, rotate_with, ConvexPolygon, ConvexityError, Point, RatParseError,
    Rotation, RotationError, DEFAULT_ROTATION_DIGITS,
};
use crate::search::{random_generator, SearchConfig, Target};

pub const FAMILY_FORMAT: &str = "polyvenn-family";
pub const FAMILY_VERSION: u32 = 1;

pub(crate) fn point_strings<S: Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
    [format_rat(&p.x), format_rat(&p.y)].serialize(s)
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document format `{0}` version {1}")]
    Version(String, u32),
    #[error("polygon {polygon}, corner {corner}: {source}")]
    Coordinate {
        polygon: usize,
        corner: usize,
        source: RatParseError,
    },
    #[error("polygon {polygon}: {source}")]
    Convexity {
        polygon: usize,
        source: ConvexityError,
    },
    #[error("document declares n = {declared} but describes {actual} polygons")]
    CountMismatch { declared: usize, actual: usize },
    #[error("symmetry block is inconsistent: {0}")]
    Symmetry(String),
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("invalid value for `{0}`: {1}")]
    Field(&'static str, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolygonEntry {
    pub label: String,
    pub corners: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryBlock {
    /// Index into `polygons` of the polygon the others are rotated from.
    pub generator: usize,
    pub n: u32,
    pub digits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyDocument {
    pub format: String,
    pub version: u32,
    pub n: usize,
    pub polygons: Vec<PolygonEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryBlock>,
}

fn entry_of(polygon: &ConvexPolygon) -> PolygonEntry {
    PolygonEntry {
        label: polygon.label().to_string(),
        corners: polygon
            .corners()
            .iter()
            .map(|c| [format_rat(&c.x), format_rat(&c.y)])
            .collect(),
    }
}

fn polygon_of(index: usize, entry: &PolygonEntry) -> Result<ConvexPolygon, DocumentError> {
    let corners = entry
        .corners
        .iter()
        .enumerate()
        .map(|(corner, [x, y])| {
            Point::parse(x, y).map_err(|source| DocumentError::Coordinate {
                polygon: index,
                corner,
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    ConvexPolygon::new(entry.label.clone(), corners).map_err(|source| DocumentError::Convexity {
        polygon: index,
        source,
    })
}

impl FamilyDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: FamilyDocument = serde_json::from_str(text)?;
        if doc.format != FAMILY_FORMAT || doc.version != FAMILY_VERSION {
            return Err(DocumentError::Version(doc.format, doc.version));
        }
        Ok(doc)
    }

    /// Pretty JSON with one corner per line.
    pub fn to_json(&self) -> String {
        let quote = |s: &str| serde_json::to_string(s).expect("strings serialize");
        let mut out = String::from("{\n");
        let _ = writeln!(out, "  \"format\": {},", quote(&self.format));
        let _ = writeln!(out, "  \"version\": {},", self.version);
        let _ = writeln!(out, "  \"n\": {},", self.n);
        out.push_str("  \"polygons\": [\n");
        for (i, polygon) in self.polygons.iter().enumerate() {
            let _ = writeln!(
                out,
                "    {{\n      \"label\": {},\n      \"corners\": [",
                quote(&polygon.label)
            );
            for (j, [x, y]) in polygon.corners.iter().enumerate() {
                let comma = if j + 1 < polygon.corners.len() {
                    ","
                } else {
                    ""
                };
                let _ = writeln!(out, "        [{}, {}]{comma}", quote(x), quote(y));
            }
            let comma = if i + 1 < self.polygons.len() { "," } else { "" };
            let _ = writeln!(out, "      ]\n    }}{comma}");
        }
        match &self.symmetry {
            None => out.push_str("  ]\n"),
            Some(sym) => {
                out.push_str("  ],\n");
                let _ = writeln!(
                    out,
                    "  \"symmetry\": {{\n    \"generator\": {},\n    \"n\": {},\n    \"digits\": {}\n  }}",
                    sym.generator, sym.n, sym.digits
                );
            }
        }
        out.push_str("}\n");
        out
    }

    /// A plain document listing every polygon.
    pub fn from_family(family: &PolygonFamily) -> Self {
        FamilyDocument {
            format: FAMILY_FORMAT.to_string(),
            version: FAMILY_VERSION,
            n: family.n(),
            polygons: family.polygons().iter().map(entry_of).collect(),
            symmetry: None,
        }
    }

    /// A symmetric document storing only the generator.
    pub fn symmetric(generator: &ConvexPolygon, n: u32, digits: u32) -> Self {
        FamilyDocument {
            format: FAMILY_FORMAT.to_string(),
            version: FAMILY_VERSION,
            n: n as usize,
            polygons: vec![entry_of(generator)],
            symmetry: Some(SymmetryBlock {
                generator: 0,
                n,
                digits,
            }),
        }
    }

    pub fn to_family(&self) -> Result<PolygonFamily, DocumentError> {
        let listed = self
            .polygons
            .iter()
            .enumerate()
            .map(|(i, e)| polygon_of(i, e))
            .collect::<Result<Vec<_>, _>>()?;
        let Some(sym) = self.symmetry else {
            if listed.len() != self.n {
                return Err(DocumentError::CountMismatch {
                    declared: self.n,
                    actual: listed.len(),
                });
            }
            return Ok(PolygonFamily::new(listed)?);
        };

        if sym.n as usize != self.n {
            return Err(DocumentError::Symmetry(format!(
                "symmetry order {} differs from n = {}",
                sym.n, self.n
            )));
        }
        if listed.len() != 1 && listed.len() != self.n {
            return Err(DocumentError::Symmetry(format!(
                "expected 1 or {} polygons, found {}",
                self.n,
                listed.len()
            )));
        }
        if sym.generator >= listed.len() {
            return Err(DocumentError::Symmetry(format!(
                "generator index {} out of range",
                sym.generator
            )));
        }
        let generator = &listed[sym.generator];
        let mut polygons = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let turn = ((i + self.n - sym.generator % self.n) % self.n) as u32;
            let rotation = Rotation::approximate(turn, sym.n, sym.digits)?;
            let copy = if turn == 0 {
                generator.clone()
            } else {
                rotate_with(generator, &rotation)
            };
            let label = if listed.len() == self.n {
                if i != sym.generator && listed[i].corners() != copy.corners() {
                    return Err(DocumentError::Symmetry(format!(
                        "polygon {i} is not the generator rotated {turn}/{} turns",
                        sym.n
                    )));
                }
                listed[i].label().to_string()
            } else {
                format!("C{}", i + 1)
            };
            polygons.push(copy.with_label(label));
        }
        Ok(PolygonFamily::new(polygons)?)
    }
}

/// Search configuration as stored on disk or posted to the service.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfigDocument {
    pub n: u32,
    pub k: usize,
    #[serde(default = "default_digits")]
    pub digits: u32,
    #[serde(default = "default_jitter_initial")]
    pub jitter_initial: String,
    #[serde(default = "default_jitter_final")]
    pub jitter_final: String,
    #[serde(default = "default_iterations")]
    pub max_iterations: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_target")]
    pub target: Target,
    /// Starting generator; a random k-gon derived from `seed` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<[String; 2]>>,
    #[serde(default = "default_walkers")]
    pub walkers: usize,
    #[serde(default = "default_t0")]
    pub initial_temperature: f64,
    #[serde(default = "default_t1")]
    pub final_temperature: f64,
    #[serde(default = "default_progress")]
    pub progress_every: u64,
}

fn default_digits() -> u32 {
    DEFAULT_ROTATION_DIGITS
}
fn default_jitter_initial() -> String {
    "0.01".to_string()
}
fn default_jitter_final() -> String {
    "0.0001".to_string()
}
fn default_iterations() -> u64 {
    10_000
}
fn default_target() -> Target {
    Target::SimpleVenn
}
fn default_walkers() -> usize {
    1
}
fn default_t0() -> f64 {
    2.0
}
fn default_t1() -> f64 {
    0.05
}
fn default_progress() -> u64 {
    100
}

impl SearchConfigDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_config(&self) -> Result<SearchConfig, DocumentError> {
        let generator = match &self.generator {
            Some(corners) => polygon_of(
                0,
                &PolygonEntry {
                    label: "C1".to_string(),
                    corners: corners.clone(),
                },
            )?,
            None => random_generator(self.k, self.seed),
        };
        let jitter = |name: &'static str, text: &str| {
            parse_rat(text).map_err(|e| DocumentError::Field(name, e.to_string()))
        };
        let config = SearchConfig {
            n: self.n,
            k: self.k,
            digits: self.digits,
            jitter_initial: jitter("jitter_initial", &self.jitter_initial)?,
            jitter_final: jitter("jitter_final", &self.jitter_final)?,
            max_iterations: self.max_iterations,
            seed: self.seed,
            target: self.target,
            generator,
            walkers: self.walkers,
            initial_temperature: self.initial_temperature,
            final_temperature: self.final_temperature,
            progress_every: self.progress_every,
        };
        config
            .validate()
            .map_err(|e| DocumentError::Field("config", e.to_string()))?;
        Ok(config)
    }
}

//! Small exact translations: removing degeneracies, and splitting vertices
//! where three or more curves meet until every vertex has degree four.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, PolygonFamily, SignVector};
use crate::classify::RegionCensus;
use crate::format::point_strings;
use crate::geometry::{orientation, Orientation, Point, Rat};

/// Attempts before `perturb` gives up.
pub const MAX_PERTURB_RETRIES: usize = 64;
/// Step halvings tried for each split before giving up.
pub const MAX_STEP_HALVINGS: usize = 48;
/// Upper limit on split steps for one call.
pub const MAX_SPLIT_STEPS: usize = 512;

const JITTER_RESOLUTION: i64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("no degeneracy-free translation found after {0} attempts")]
    RetriesExhausted(usize),
    #[error("epsilon too large: every tried translation of curve {curve} loses region {lost}")]
    EpsilonTooLarge { curve: usize, lost: SignVector },
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Translation {
    pub curve: usize,
    #[serde(serialize_with = "point_strings")]
    pub vector: Point,
}

/// A random rational vector with Euclidean norm at most `epsilon`.
fn random_offset(rng: &mut ChaCha8Rng, epsilon: &Rat) -> Point {
    let half = JITTER_RESOLUTION / 2;
    let mut component = || {
        let r: i64 = rng.gen_range(-half..=half);
        epsilon * Rat::new(BigInt::from(r), BigInt::from(JITTER_RESOLUTION))
    };
    let x = component();
    let y = component();
    Point::new(x, y)
}

/// Translate offending polygons by random vectors of norm at most `epsilon`
/// until the family builds without degeneracies. Returns the family and the
/// translations applied, in order.
pub fn perturb_logged(
    family: &PolygonFamily,
    epsilon: &Rat,
    seed: u64,
) -> Result<(PolygonFamily, Vec<Translation>), TransformError> {
    if !epsilon.is_positive() {
        return Err(TransformError::NonPositiveEpsilon);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = family.clone();
    let mut log = Vec::new();
    for _ in 0..MAX_PERTURB_RETRIES {
        match Arrangement::build(&current) {
            Ok(_) => return Ok((current, log)),
            Err(ArrangementError::Degenerate(err)) => {
                let (_, curve) = err.curves();
                let vector = random_offset(&mut rng, epsilon);
                current = current.with_polygon(curve, current.polygon(curve).translated(&vector));
                log.push(Translation { curve, vector });
            }
            Err(other) => return Err(other.into()),
        }
    }
    Err(TransformError::RetriesExhausted(MAX_PERTURB_RETRIES))
}

pub fn perturb(
    family: &PolygonFamily,
    epsilon: &Rat,
    seed: u64,
) -> Result<PolygonFamily, TransformError> {
    perturb_logged(family, epsilon, seed).map(|(f, _)| f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitStep {
    pub curve: usize,
    #[serde(serialize_with = "point_strings")]
    pub vector: Point,
    pub faces_before: usize,
    pub faces_after: usize,
    pub excess_before: usize,
    pub excess_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub input_histogram: BTreeMap<usize, usize>,
    pub output_histogram: BTreeMap<usize, usize>,
    pub faces_before: usize,
    pub faces_after: usize,
    pub vertices_before: usize,
    pub vertices_after: usize,
    pub steps: Vec<SplitStep>,
    pub input_was_venn: bool,
    pub still_independent_family: bool,
}

impl SplitReport {
    pub fn translations(&self) -> Vec<Translation> {
        self.steps
            .iter()
            .map(|s| Translation {
                curve: s.curve,
                vector: s.vector.clone(),
            })
            .collect()
    }
}

/// Half the total degree above four: zero exactly when the arrangement is
/// simple.
fn excess(arrangement: &Arrangement) -> usize {
    arrangement
        .vertices()
        .iter()
        .map(|v| (v.degree() - 4) / 2)
        .sum()
}

/// Split every vertex of degree above four by translating one of its curves
/// a small distance perpendicular to the side passing through it.
///
/// Each accepted step must keep every region present in the input, must not
/// lose faces, and must lower the total excess degree. A step that fails is
/// retried at half the distance.
pub fn split_to_simple(
    family: &PolygonFamily,
    epsilon: &Rat,
    seed: u64,
) -> Result<(PolygonFamily, SplitReport), TransformError> {
    if !epsilon.is_positive() {
        return Err(TransformError::NonPositiveEpsilon);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let input = Arrangement::build(family)?;
    let input_census = RegionCensus::of(&input);
    let required: BTreeSet<SignVector> = input_census.faces_by_sign().keys().copied().collect();
    let input_was_venn = input_census.missing_count() == 0 && input_census.excess_faces() == 0;

    let mut current = family.clone();
    let mut arrangement = input.clone();
    let mut steps = Vec::new();

    while !arrangement.is_simple() {
        if steps.len() >= MAX_SPLIT_STEPS {
            return Err(TransformError::RetriesExhausted(MAX_SPLIT_STEPS));
        }
        let (vertex, _) = arrangement
            .vertices()
            .iter()
            .enumerate()
            .max_by(|(ia, a), (ib, b)| a.degree().cmp(&b.degree()).then(ib.cmp(ia)))
            .expect("non-simple arrangement has vertices");
        let at = &arrangement.vertices()[vertex];
        let curve = at.curves[rng.gen_range(0..at.curves.len())];
        let direction = side_normal_through(&current, curve, &at.point);
        let sign = if rng.gen_bool(0.5) {
            Rat::from_integer(1.into())
        } else {
            Rat::from_integer((-1).into())
        };
        let l1 = direction.x.abs() + direction.y.abs();
        let mut step = epsilon * sign / l1;

        let excess_before = excess(&arrangement);
        let faces_before = arrangement.face_count();
        let mut accepted = None;
        let mut lost = None;
        for _ in 0..MAX_STEP_HALVINGS {
            let vector = &direction * &step;
            let candidate = current.with_polygon(curve, current.polygon(curve).translated(&vector));
            if let Ok(next) = Arrangement::build(&candidate) {
                let census = RegionCensus::of(&next);
                let missing = required
                    .iter()
                    .find(|s| census.multiplicity(s) == 0)
                    .copied();
                if missing.is_none()
                    && next.face_count() >= faces_before
                    && excess(&next) < excess_before
                {
                    accepted = Some((candidate, next, vector));
                    break;
                }
                lost = lost.or(missing);
            }
            step /= Rat::from_integer(2.into());
        }
        let Some((candidate, next, vector)) = accepted else {
            return Err(match lost {
                Some(lost) => TransformError::EpsilonTooLarge { curve, lost },
                None => TransformError::RetriesExhausted(MAX_STEP_HALVINGS),
            });
        };
        steps.push(SplitStep {
            curve,
            vector,
            faces_before,
            faces_after: next.face_count(),
            excess_before,
            excess_after: excess(&next),
        });
        current = candidate;
        arrangement = next;
    }

    let census = RegionCensus::of(&arrangement);
    let report = SplitReport {
        input_histogram: input.degree_histogram(),
        output_histogram: arrangement.degree_histogram(),
        faces_before: input.face_count(),
        faces_after: arrangement.face_count(),
        vertices_before: input.vertex_count(),
        vertices_after: arrangement.vertex_count(),
        steps,
        input_was_venn,
        still_independent_family: census.missing_count() == 0,
    };
    Ok((current, report))
}

/// Normal of the side of `curve` that contains `point`.
fn side_normal_through(family: &PolygonFamily, curve: usize, point: &Point) -> Point {
    let polygon = family.polygon(curve);
    let side = polygon
        .sides()
        .find(|s| {
            orientation(&s.start, &s.end, point) == Orientation::Collinear
                && (point - &s.start).dot(&(point - &s.end)) <= Rat::zero()
        })
        .expect("vertex lies on a side of each of its curves");
    side.direction().perp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::verify;
    use crate::fixtures;
    use crate::geometry::{rat, ConvexPolygon};

    #[test]
    fn general_position_family_is_untouched() {
        let family = fixtures::two_squares();
        let (out, log) = perturb_logged(&family, &rat(1, 100), 7).unwrap();
        assert_eq!(out, family);
        assert!(log.is_empty());
    }

    #[test]
    fn shared_corner_is_perturbed_away() {
        let family = PolygonFamily::new(vec![
            ConvexPolygon::from_ints("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap(),
            ConvexPolygon::from_ints("B", &[(2, 2), (4, 2), (4, 4), (2, 4)]).unwrap(),
        ])
        .unwrap();
        assert!(Arrangement::build(&family).is_err());
        let (out, log) = perturb_logged(&family, &rat(1, 10), 1).unwrap();
        assert!(Arrangement::build(&out).is_ok());
        assert!(!log.is_empty());
        for t in &log {
            let norm2 = t.vector.dot(&t.vector);
            assert!(norm2 <= rat(1, 100));
        }
    }

    #[test]
    fn overlapping_sides_are_perturbed_away() {
        let family = PolygonFamily::new(vec![
            ConvexPolygon::from_ints("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap(),
            ConvexPolygon::from_ints("B", &[(1, 2), (3, 2), (3, 4), (1, 4)]).unwrap(),
        ])
        .unwrap();
        let out = perturb(&family, &rat(1, 10), 3).unwrap();
        assert!(Arrangement::build(&out).is_ok());
    }

    #[test]
    fn perturb_is_deterministic() {
        let family = PolygonFamily::new(vec![
            ConvexPolygon::from_ints("A", &[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap(),
            ConvexPolygon::from_ints("B", &[(2, 2), (4, 2), (4, 4), (2, 4)]).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            perturb(&family, &rat(1, 10), 99).unwrap(),
            perturb(&family, &rat(1, 10), 99).unwrap()
        );
        assert_eq!(
            perturb(&family, &Rat::zero(), 1),
            Err(TransformError::NonPositiveEpsilon)
        );
    }

    #[test]
    fn simple_input_passes_through() {
        let family = fixtures::two_squares();
        let (out, report) = split_to_simple(&family, &rat(1, 100), 0).unwrap();
        assert_eq!(out, family);
        assert_eq!(report.faces_before, report.faces_after);
        assert!(report.steps.is_empty());
    }

    #[test]
    fn triple_point_is_split() {
        let family = fixtures::triple_point_triangles();
        let (out, report) = split_to_simple(&family, &rat(1, 10), 5).unwrap();
        let after = verify(&out).unwrap();
        assert!(after.is_simple);
        assert!(report.faces_after > report.faces_before);
        assert_eq!(
            report.output_histogram.keys().copied().collect::<Vec<_>>(),
            [4]
        );
        for step in &report.steps {
            assert!(step.faces_after >= step.faces_before);
        }
    }

    #[test]
    fn degree_eight_vertex_becomes_six() {
        let family = fixtures::degree_eight_star();
        let (out, report) = split_to_simple(&family, &rat(1, 100), 2).unwrap();
        assert_eq!(report.faces_after, report.faces_before + 3);
        assert_eq!(report.vertices_after, report.vertices_before - 1 + 6);
        assert!(verify(&out).unwrap().is_simple);
    }

    #[test]
    fn nonsimple_venn_stays_independent() {
        let (_, report) = split_to_simple(&fixtures::nonsimple_venn(), &rat(1, 100), 4).unwrap();
        assert!(report.input_was_venn);
        assert!(report.still_independent_family);
        assert!(report.faces_after > report.faces_before);
    }

    #[test]
    fn split_is_deterministic() {
        let family = fixtures::degree_eight_star();
        let a = split_to_simple(&family, &rat(1, 10), 11).unwrap();
        let b = split_to_simple(&family, &rat(1, 10), 11).unwrap();
        assert_eq!(a, b);
    }
}

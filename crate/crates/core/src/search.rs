//! Annealing search for rotationally symmetric Venn diagrams.
//!
//! Only one generator polygon is searched; the family is always its `n`
//! rotated copies. Candidates are scored by their deficiency: missing
//! regions, plus surplus faces of split regions, plus (for simple targets)
//! vertices where more than two curves meet.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{Arrangement, ArrangementError, FamilyError, PolygonFamily};
use crate::classify::RegionCensus;
use crate::geometry::{
    rat, rotate_with, ConvexPolygon, ConvexityError, Point, Rat, Rotation, RotationError,
};
use crate::transform::{perturb, TransformError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Venn,
    SimpleVenn,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Rotation(#[from] RotationError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Convexity(#[from] ConvexityError),
    #[error("family does not build even after perturbation: {0}")]
    Unbuildable(TransformError),
    #[error("invalid search configuration: {0}")]
    Config(String),
}

/// `n` copies of `generator`, copy `i` rotated by `2*pi*i/n`.
pub fn symmetric_family(
    generator: &ConvexPolygon,
    n: u32,
    digits: u32,
) -> Result<PolygonFamily, SearchError> {
    let polygons = (0..n)
        .map(|i| {
            let rotation = Rotation::approximate(i, n, digits)?;
            let copy = if i == 0 {
                generator.clone()
            } else {
                rotate_with(generator, &rotation)
            };
            Ok(copy.with_label(format!("C{}", i + 1)))
        })
        .collect::<Result<Vec<_>, RotationError>>()?;
    Ok(PolygonFamily::new(polygons)?)
}

/// Deficiency of a built arrangement; zero exactly when `target` is met.
pub fn arrangement_deficiency(arrangement: &Arrangement, target: Target) -> u64 {
    let census = RegionCensus::of(arrangement);
    let mut score = census.missing_count() + census.excess_faces();
    if target == Target::SimpleVenn {
        score += arrangement
            .vertices()
            .iter()
            .filter(|v| v.degree() > 4)
            .count() as u64;
    }
    score
}

/// Default translation bound used when a candidate needs perturbing.
pub fn default_perturbation() -> Rat {
    rat(1, 1_000_000_000)
}

/// Deficiency of `family`, perturbing it first if it is degenerate.
pub fn deficiency(family: &PolygonFamily, target: Target) -> Result<u64, SearchError> {
    deficiency_with(family, target, &default_perturbation(), 0).map(|(d, _)| d)
}

/// Returns the deficiency and whether perturbation was needed.
fn deficiency_with(
    family: &PolygonFamily,
    target: Target,
    epsilon: &Rat,
    seed: u64,
) -> Result<(u64, bool), SearchError> {
    match Arrangement::build(family) {
        Ok(arrangement) => Ok((arrangement_deficiency(&arrangement, target), false)),
        Err(ArrangementError::Degenerate(_)) => {
            let fixed = perturb(family, epsilon, seed).map_err(SearchError::Unbuildable)?;
            let arrangement = Arrangement::build(&fixed)
                .map_err(|e| SearchError::Unbuildable(TransformError::Arrangement(e)))?;
            Ok((arrangement_deficiency(&arrangement, target), true))
        }
        Err(other) => Err(SearchError::Unbuildable(TransformError::Arrangement(other))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub n: u32,
    pub k: usize,
    pub digits: u32,
    pub jitter_initial: Rat,
    pub jitter_final: Rat,
    pub max_iterations: u64,
    pub seed: u64,
    pub target: Target,
    pub generator: ConvexPolygon,
    /// Independent annealing chains run in parallel.
    pub walkers: usize,
    pub initial_temperature: f64,
    pub final_temperature: f64,
    /// Emit a progress event every this many iterations.
    pub progress_every: u64,
}

impl SearchConfig {
    pub fn new(n: u32, generator: ConvexPolygon, seed: u64) -> Self {
        SearchConfig {
            n,
            k: generator.k(),
            digits: crate::geometry::DEFAULT_ROTATION_DIGITS,
            jitter_initial: rat(1, 100),
            jitter_final: rat(1, 10_000),
            max_iterations: 10_000,
            seed,
            target: Target::SimpleVenn,
            generator,
            walkers: 1,
            initial_temperature: 2.0,
            final_temperature: 0.05,
            progress_every: 100,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let fail = |m: &str| Err(SearchError::Config(m.to_string()));
        if self.n < 3 {
            return fail("n must be at least 3");
        }
        if self.k < 3 {
            return fail("k must be at least 3");
        }
        if self.generator.k() != self.k {
            return fail("generator corner count differs from k");
        }
        if self.max_iterations < 1 {
            return fail("max_iterations must be at least 1");
        }
        if self.digits < 1 {
            return fail("digits must be at least 1");
        }
        if self.walkers < 1 {
            return fail("walkers must be at least 1");
        }
        let zero = Rat::from_integer(0.into());
        if self.jitter_initial <= zero || self.jitter_final <= zero {
            return fail("jitter magnitudes must be positive");
        }
        if !(self.initial_temperature > 0.0 && self.final_temperature > 0.0) {
            return fail("temperatures must be positive");
        }
        Ok(())
    }
}

/// A random convex k-gon off-centre from the origin, with corners on a
/// perturbed circle. Coordinates have denominator 1000.
pub fn random_generator(k: usize, seed: u64) -> ConvexPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let cx = rng.gen_range(-0.4..0.4);
        let cy = rng.gen_range(-0.4..0.4);
        let radius = rng.gen_range(0.5..0.9);
        let offset: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let corners = (0..k)
            .map(|j| {
                let wobble = rng.gen_range(-0.3..0.3);
                let angle = offset + (j as f64 + wobble) * std::f64::consts::TAU / k as f64;
                let x = ((cx + radius * angle.cos()) * 1000.0).round() as i64;
                let y = ((cy + radius * angle.sin()) * 1000.0).round() as i64;
                Point::new(rat(x, 1000), rat(y, 1000))
            })
            .collect();
        if let Ok(p) = ConvexPolygon::new("C1", corners) {
            return p;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub generator: ConvexPolygon,
    pub deficiency: u64,
    pub iteration: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    pub generator: ConvexPolygon,
    pub deficiency: u64,
    pub iteration: u64,
    pub best: Snapshot,
}

#[derive(Debug, Clone)]
pub struct ProgressEvent {
    pub walker: usize,
    pub iteration: u64,
    pub deficiency: u64,
    pub best_deficiency: u64,
    pub temperature: f64,
    pub generator: ConvexPolygon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Final state of the winning walker; `state.best` is the overall best.
    pub state: SearchState,
    pub walker: usize,
    /// `(iteration, deficiency)` each time the winning walker's best improved.
    pub improvements: Vec<(u64, u64)>,
}

impl SearchOutcome {
    pub fn best(&self) -> &Snapshot {
        &self.state.best
    }
}
/// `generator` with every corner moved by an independent random offset of
/// at most `magnitude` per coordinate, on a grid of `magnitude / 1000`.
/// Redraws until the result is convex.
pub fn jitter_generator(generator: &ConvexPolygon, magnitude: &Rat, seed: u64) -> ConvexPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let resolution = BigInt::from(1000);
    loop {
        let corners = generator
            .corners()
            .iter()
            .map(|c| {
                let mut offset = || {
                    magnitude
                        * Rat::new(
                            BigInt::from(rng.gen_range(-1000..=1000)),
                            resolution.clone(),
                        )
                };
                c + &Point::new(offset(), offset())
            })
            .collect();
        if let Ok(p) = ConvexPolygon::new(generator.label(), corners) {
            return p;
        }
    }
}

struct Evaluator<'a> {
    config: &'a SearchConfig,
    epsilon: Rat,
}

impl Evaluator<'_> {
    /// Deficiency of a generator. A candidate that only scores after
    /// perturbation gets one extra point, so zero always means the exact
    /// symmetric family meets the target.
    fn score(&self, generator: &ConvexPolygon, seed: u64) -> Option<u64> {
        let family = symmetric_family(generator, self.config.n, self.config.digits).ok()?;
        match deficiency_with(&family, self.config.target, &self.epsilon, seed) {
            Ok((d, perturbed)) => Some(d + perturbed as u64),
            Err(_) => None,
        }
    }
}

fn schedule(start: f64, end: f64, iteration: u64, total: u64) -> f64 {
    let t = iteration as f64 / total as f64;
    start * (end / start).powf(t)
}

fn to_rat(value: f64) -> Rat {
    let scaled = (value * 1e9).round().max(1.0) as i64;
    rat(scaled, 1_000_000_000)
}

fn walker_seed(seed: u64, walker: usize) -> u64 {
    seed ^ (walker as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

struct WalkerResult {
    state: SearchState,
    improvements: Vec<(u64, u64)>,
}

fn run_walker(
    config: &SearchConfig,
    walker: usize,
    observer: &(dyn Fn(&ProgressEvent) + Sync),
    cancel: Option<&AtomicBool>,
    first_zero: &AtomicU64,
) -> WalkerResult {
    let evaluator = Evaluator {
        config,
        epsilon: crate::search::default_perturbation(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(walker_seed(config.seed, walker));
    let mut current = config.generator.clone();
    let mut current_score = evaluator.score(&current, rng.gen()).unwrap_or(u64::MAX);
    let mut state = SearchState {
        generator: current.clone(),
        deficiency: current_score,
        iteration: 0,
        best: Snapshot {
            generator: current.clone(),
            deficiency: current_score,
            iteration: 0,
        },
    };
    let mut improvements = vec![(0, current_score)];
    if current_score == 0 {
        first_zero.fetch_min(0, Ordering::SeqCst);
        return WalkerResult {
            state,
            improvements,
        };
    }

    let resolution = BigInt::from(1000);
    for iteration in 1..=config.max_iterations {
        if cancel.is_some_and(|c| c.load(Ordering::Relaxed))
            || first_zero.load(Ordering::SeqCst) < iteration
        {
            break;
        }
        let jitter = to_rat(schedule(
            crate::geometry::rat_to_f64(&config.jitter_initial),
            crate::geometry::rat_to_f64(&config.jitter_final),
            iteration,
            config.max_iterations,
        ));
        let temperature = schedule(
            config.initial_temperature,
            config.final_temperature,
            iteration,
            config.max_iterations,
        );
        let corner = rng.gen_range(0..config.k);
        let mut offset = || {
            let r: i64 = rng.gen_range(-1000..=1000);
            &jitter * Rat::new(BigInt::from(r), resolution.clone())
        };
        let delta = Point::new(offset(), offset());
        let moved = &current.corners()[corner] + &delta;
        let sub_seed: u64 = rng.gen();
        if let Ok(candidate) = current.with_corner(corner, moved) {
            if let Some(score) = evaluator.score(&candidate, sub_seed) {
                let accept = score <= current_score || {
                    let worse = (score - current_score) as f64;
                    rng.gen::<f64>() < (-worse / temperature).exp()
                };
                if accept {
                    current = candidate;
                    current_score = score;
                }
            }
        }
        state.generator = current.clone();
        state.deficiency = current_score;
        state.iteration = iteration;
        if current_score < state.best.deficiency {
            state.best = Snapshot {
                generator: current.clone(),
                deficiency: current_score,
                iteration,
            };
            improvements.push((iteration, current_score));
        }
        if config.progress_every > 0 && iteration % config.progress_every == 0 {
            observer(&ProgressEvent {
                walker,
                iteration,
                deficiency: current_score,
                best_deficiency: state.best.deficiency,
                temperature,
                generator: current.clone(),
            });
        }
        if state.best.deficiency == 0 {
            first_zero.fetch_min(iteration, Ordering::SeqCst);
            break;
        }
    }
    WalkerResult {
        state,
        improvements,
    }
}

/// Run `config.walkers` independent annealing chains and return the best.
///
/// Deterministic for a given configuration: walkers are seeded from the
/// configured seed, and the winner is the lowest deficiency, then the
/// earliest iteration, then the lowest walker index. A walker stops early
/// only once another has reached zero at a strictly earlier iteration.
pub fn anneal(
    config: &SearchConfig,
    observer: &(dyn Fn(&ProgressEvent) + Sync),
    cancel: Option<&AtomicBool>,
) -> Result<SearchOutcome, SearchError> {
    config.validate()?;
    let first_zero = AtomicU64::new(u64::MAX);
    let results: Vec<WalkerResult> = (0..config.walkers)
        .into_par_iter()
        .map(|w| run_walker(config, w, observer, cancel, &first_zero))
        .collect();
    let (walker, winner) = results
        .into_iter()
        .enumerate()
        .min_by_key(|(w, r)| (r.state.best.deficiency, r.state.best.iteration, *w))
        .expect("at least one walker");
    Ok(SearchOutcome {
        state: winner.state,
        walker,
        improvements: winner.improvements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::verify;
    use crate::fixtures;

    #[test]
    fn symmetric_family_of_one_is_the_generator() {
        let g = fixtures::table2_generator();
        let family = symmetric_family(&g, 1, 12).unwrap();
        assert_eq!(family.n(), 1);
        assert_eq!(family.polygon(0).corners(), g.corners());
    }

    #[test]
    fn tiny_triangle_reports_without_error() {
        let tiny = ConvexPolygon::new(
            "t",
            vec![
                Point::new(rat(1, 100), rat(0, 1)),
                Point::new(rat(2, 100), rat(1, 100)),
                Point::new(rat(1, 100), rat(2, 100)),
            ],
        )
        .unwrap();
        let family = symmetric_family(&tiny, 3, 12).unwrap();
        let report = verify(&family).unwrap();
        assert!(!report.is_fisc);
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(
            deficiency(&fixtures::table2_family(12), Target::SimpleVenn),
            Ok(0)
        );
        assert_eq!(deficiency(&fixtures::two_squares(), Target::Venn), Ok(0));
        let disjoint: Vec<ConvexPolygon> = (0..7)
            .map(|i| {
                ConvexPolygon::from_ints(
                    format!("Q{i}"),
                    &[(10 * i, 0), (10 * i + 2, 0), (10 * i + 2, 2), (10 * i, 2)],
                )
                .unwrap()
            })
            .collect();
        let d = deficiency(&PolygonFamily::new(disjoint).unwrap(), Target::Venn).unwrap();
        assert!(d >= 120);
    }

    #[test]
    fn nonsimple_target_difference() {
        let family = fixtures::nonsimple_venn();
        assert_eq!(deficiency(&family, Target::Venn), Ok(0));
        assert!(deficiency(&family, Target::SimpleVenn).unwrap() > 0);
    }

    #[test]
    fn already_optimal_returns_at_iteration_zero() {
        let config = SearchConfig::new(7, fixtures::table2_generator(), 1);
        let outcome = anneal(&config, &|_| {}, None).unwrap();
        assert_eq!(outcome.best().deficiency, 0);
        assert_eq!(outcome.best().iteration, 0);
        assert_eq!(outcome.best().generator, fixtures::table2_generator());
    }

    #[test]
    fn config_validation() {
        let mut config = SearchConfig::new(2, fixtures::table2_generator(), 1);
        assert!(config.validate().is_err());
        config.n = 7;
        config.k = 5;
        assert!(config.validate().is_err());
        config.k = 4;
        config.max_iterations = 0;
        assert!(config.validate().is_err());
    }

    #[test]
    fn random_generator_is_convex_and_deterministic() {
        let a = random_generator(5, 3);
        assert_eq!(a.k(), 5);
        assert_eq!(a, random_generator(5, 3));
    }
}

use std::collections::HashMap;
use std::sync::atomic::AtomicBool;
use std::sync::Mutex;

use polyvenn::format::SearchConfigDocument;
use polyvenn::search::{anneal, random_generator, ProgressEvent, SearchConfig, Target};

fn n3_config(seed: u64, iterations: u64) -> SearchConfig {
    let mut config = SearchConfig::new(3, random_generator(3, seed), seed);
    config.max_iterations = iterations;
    config.progress_every = 10;
    config
}

#[test]
fn same_seed_same_outcome() {
    let config = n3_config(7, 300);
    let a = anneal(&config, &|_| {}, None).unwrap();
    let b = anneal(&config, &|_| {}, None).unwrap();
    assert_eq!(a, b);
}

#[test]
fn parallel_walkers_are_deterministic() {
    let mut config = n3_config(11, 400);
    config.walkers = 4;
    let runs: Vec<_> = (0..3)
        .map(|_| anneal(&config, &|_| {}, None).unwrap())
        .collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn best_deficiency_never_increases() {
    let mut config = n3_config(5, 500);
    config.walkers = 2;
    let events: Mutex<Vec<ProgressEvent>> = Mutex::new(Vec::new());
    let outcome = anneal(&config, &|e| events.lock().unwrap().push(e.clone()), None).unwrap();
    assert!(outcome
        .improvements
        .windows(2)
        .all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1));
    let mut last: HashMap<usize, (u64, u64)> = HashMap::new();
    for e in events.into_inner().unwrap() {
        if let Some(&(iteration, best)) = last.get(&e.walker) {
            assert!(e.iteration > iteration);
            assert!(e.best_deficiency <= best);
        }
        assert!(e.best_deficiency <= e.deficiency);
        last.insert(e.walker, (e.iteration, e.best_deficiency));
    }
    assert_eq!(
        outcome.best().deficiency,
        outcome.improvements.last().unwrap().1
    );
}

#[test]
fn cancelled_search_stops_immediately() {
    let config = n3_config(9, 100_000);
    let cancel = AtomicBool::new(true);
    let outcome = anneal(&config, &|_| {}, Some(&cancel)).unwrap();
    assert_eq!(outcome.state.iteration, 0);
}

#[test]
fn config_document_defaults() {
    let doc = SearchConfigDocument::parse(r#"{"n": 5, "k": 4}"#).unwrap();
    let config = doc.to_config().unwrap();
    assert_eq!(config.generator.k(), 4);
    assert_eq!(config.target, Target::SimpleVenn);
    assert!(SearchConfigDocument::parse(r#"{"n": 5, "k": 4, "bogus": 1}"#).is_err());
    let bad = SearchConfigDocument::parse(r#"{"n": 5, "k": 4, "jitter_initial": "0"}"#).unwrap();
    assert!(bad.to_config().is_err());
}

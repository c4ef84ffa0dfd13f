//! Shared fixtures for the integration and acceptance tests.
#![allow(dead_code)]

use std::path::PathBuf;

use ahpga::ahp::{AttributeValue, CriterionSpec, Direction, SaatyLevel, ScoreVector};
use ahpga::oracle;
use ahpga::timetable::{Instance, TimeGrid};
use num_bigint::BigUint;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TEACHERS: [&str; 6] = ["T1", "T2", "T3", "T4", "T5", "T6"];
pub const AGES: [f64; 6] = [42.0, 33.0, 25.0, 24.0, 63.0, 43.0];
pub const GENDERS: [&str; 6] = ["M", "F", "F", "F", "M", "F"];
pub const CONTRACTS: [&str; 6] = ["full", "full", "part", "part", "full", "full"];
pub const LOADS: [u32; 6] = [7, 4, 3, 5, 2, 3];

/// A rational entry `num/den` of a reference comparison matrix.
pub type Ratio = (u32, u32);

pub const AGE_MATRIX: [[Ratio; 6]; 6] = [
    [(1, 1), (3, 1), (5, 1), (5, 1), (1, 5), (1, 1)],
    [(1, 3), (1, 1), (3, 1), (3, 1), (1, 7), (1, 3)],
    [(1, 5), (1, 3), (1, 1), (1, 1), (1, 9), (1, 5)],
    [(1, 5), (1, 3), (1, 1), (1, 1), (1, 9), (1, 5)],
    [(5, 1), (7, 1), (9, 1), (9, 1), (1, 1), (5, 1)],
    [(1, 1), (3, 1), (5, 1), (5, 1), (1, 5), (1, 1)],
];

pub const GENDER_MATRIX: [[Ratio; 6]; 6] = [
    [(1, 1), (1, 3), (1, 3), (1, 3), (1, 1), (1, 3)],
    [(3, 1), (1, 1), (1, 1), (1, 1), (3, 1), (1, 1)],
    [(3, 1), (1, 1), (1, 1), (1, 1), (3, 1), (1, 1)],
    [(3, 1), (1, 1), (1, 1), (1, 1), (3, 1), (1, 1)],
    [(1, 1), (1, 3), (1, 3), (1, 3), (1, 1), (1, 3)],
    [(3, 1), (1, 1), (1, 1), (1, 1), (3, 1), (1, 1)],
];

pub const LOAD_MATRIX: [[Ratio; 6]; 6] = [
    [(1, 1), (3, 1), (5, 1), (3, 1), (5, 1), (5, 1)],
    [(1, 3), (1, 1), (3, 1), (1, 1), (3, 1), (3, 1)],
    [(1, 5), (1, 3), (1, 1), (1, 3), (1, 1), (1, 1)],
    [(1, 3), (1, 1), (3, 1), (1, 1), (3, 1), (3, 1)],
    [(1, 5), (1, 3), (1, 1), (1, 3), (1, 1), (1, 1)],
    [(1, 5), (1, 3), (1, 1), (1, 3), (1, 1), (1, 1)],
];

pub const CONTRACT_MATRIX: [[Ratio; 6]; 6] = [
    [(1, 1), (1, 1), (1, 5), (1, 5), (1, 1), (1, 1)],
    [(1, 1), (1, 1), (1, 5), (1, 5), (1, 1), (1, 1)],
    [(5, 1), (5, 1), (1, 1), (1, 1), (5, 1), (5, 1)],
    [(5, 1), (5, 1), (1, 1), (1, 1), (5, 1), (5, 1)],
    [(1, 1), (1, 1), (1, 5), (1, 5), (1, 1), (1, 1)],
    [(1, 1), (1, 1), (1, 5), (1, 5), (1, 1), (1, 1)],
];

pub const CRITERIA: [&str; 4] = ["age", "gender", "load", "contract"];

pub const CRITERIA_MATRIX: [[Ratio; 4]; 4] = [
    [(1, 1), (3, 1), (1, 5), (1, 3)],
    [(1, 3), (1, 1), (1, 7), (1, 5)],
    [(5, 1), (7, 1), (1, 1), (3, 1)],
    [(3, 1), (5, 1), (1, 3), (1, 1)],
];

/// Reference preference vectors, one column per criterion (rows T1..T6).
pub const REFERENCE_PREFERENCES: [[f64; 6]; 4] = [
    [0.193, 0.100, 0.086, 0.086, 0.342, 0.193],
    [0.072, 0.214, 0.214, 0.214, 0.072, 0.214],
    [0.420, 0.188, 0.068, 0.188, 0.068, 0.068],
    [0.071, 0.071, 0.358, 0.358, 0.071, 0.071],
];

pub const REFERENCE_WEIGHTS: [f64; 4] = [0.122, 0.057, 0.558, 0.263];

pub const REFERENCE_SCORES: [f64; 6] = [0.281, 0.148, 0.158, 0.222, 0.102, 0.089];

pub const REFERENCE_MAX_SATISFACTION: f64 = 4.614;
pub const REFERENCE_PARTIAL_SATISFACTION: f64 = 3.351;
pub const PARTIAL_MATCHES: [u32; 6] = [5, 2, 1, 5, 2, 2];

pub fn ratio(r: Ratio) -> f64 {
    f64::from(r.0) / f64::from(r.1)
}

pub fn labels() -> Vec<String> {
    TEACHERS.iter().map(|s| (*s).to_owned()).collect()
}

pub fn criteria_labels() -> Vec<String> {
    CRITERIA.iter().map(|s| (*s).to_owned()).collect()
}

pub fn age_spec() -> CriterionSpec {
    CriterionSpec::interval(
        "age",
        vec![30.0, 40.0, 50.0, 60.0],
        Direction::HigherPreferred,
    )
    .unwrap()
}

pub fn gender_spec() -> CriterionSpec {
    CriterionSpec::binary("gender", "F", "M", SaatyLevel::Moderate).unwrap()
}

pub fn load_spec() -> CriterionSpec {
    CriterionSpec::interval("load", vec![2.0, 4.0, 6.0], Direction::HigherPreferred).unwrap()
}

pub fn contract_spec() -> CriterionSpec {
    CriterionSpec::binary("contract", "part", "full", SaatyLevel::Strong).unwrap()
}

/// Attribute values and reference matrix for each alternative-level criterion.
pub fn criterion_cases() -> Vec<(CriterionSpec, Vec<AttributeValue>, [[Ratio; 6]; 6])> {
    vec![
        (
            age_spec(),
            AGES.iter().map(|&a| AttributeValue::from(a)).collect(),
            AGE_MATRIX,
        ),
        (
            gender_spec(),
            GENDERS.iter().map(|&g| AttributeValue::from(g)).collect(),
            GENDER_MATRIX,
        ),
        (
            load_spec(),
            LOADS
                .iter()
                .map(|&l| AttributeValue::from(f64::from(l)))
                .collect(),
            LOAD_MATRIX,
        ),
        (
            contract_spec(),
            CONTRACTS.iter().map(|&c| AttributeValue::from(c)).collect(),
            CONTRACT_MATRIX,
        ),
    ]
}

pub fn reference_scores() -> ScoreVector {
    ScoreVector::new(REFERENCE_SCORES.to_vec()).unwrap()
}

fn fixture_dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

pub fn school_dir() -> PathBuf {
    fixture_dir("school")
}

pub fn tiny_dir() -> PathBuf {
    fixture_dir("tiny")
}

pub fn bad_dir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("bad")
        .join(name)
}

/// Small random instance whose search space lies in `min_space..=max_space`.
///
/// Requirements are drawn session by session, so class sums always match the
/// grid; draws breaking the load bound or the size window are retried.
#[allow(clippy::needless_range_loop)]
pub fn random_small_instance(seed: u64, min_space: u64, max_space: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (days, slots) = *[(1, 3), (2, 2), (1, 4), (2, 3), (3, 2)]
            .choose(&mut rng)
            .unwrap();
        let grid = TimeGrid::new(days, slots).unwrap();
        let cells = grid.cell_count();
        let n_teachers = rng.random_range(2..=4);
        let n_classes = rng.random_range(1..=2);
        let mut requirements = vec![vec![0u32; n_classes]; n_teachers];
        for c in 0..n_classes {
            for _ in 0..cells {
                requirements[rng.random_range(0..n_teachers)][c] += 1;
            }
        }
        if requirements
            .iter()
            .any(|r| r.iter().sum::<u32>() as usize > cells)
        {
            continue;
        }
        let preferences: Vec<Vec<bool>> = (0..n_teachers)
            .map(|_| (0..cells).map(|_| rng.random_bool(0.5)).collect())
            .collect();
        let raw: Vec<f64> = (0..n_teachers)
            .map(|_| rng.random_range(0.05..1.0))
            .collect();
        let total: f64 = raw.iter().sum();
        let scores = ScoreVector::new(raw.iter().map(|x| x / total).collect()).unwrap();
        let inst = Instance::new(
            grid,
            (0..n_teachers).map(|t| format!("T{}", t + 1)).collect(),
            (0..n_classes).map(|c| format!("C{}", c + 1)).collect(),
            requirements,
            preferences,
            scores,
        )
        .unwrap();
        let space = oracle::count_space(&inst).total;
        if space >= BigUint::from(min_space) && space <= BigUint::from(max_space) {
            return inst;
        }
    }
}

/// Search-space size as a machine integer (callers keep it small).
pub fn space_u64(inst: &Instance) -> u64 {
    oracle::count_space(inst)
        .total
        .try_into()
        .expect("small search space")
}

//! Genetic-algorithm search over timetables.
//!
//! Each class is encoded as a permutation of its required multiset of
//! teacher tokens, so every genome meets the session-count constraint and
//! the search only has to remove double bookings and raise satisfaction.
//! Fitness is lexicographic: fewer conflicts first, then higher satisfaction.

use std::cmp::Ordering;
use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::timetable::{evaluate, requirement_violations, EvaluationResult, Instance, Timetable};

/// One token sequence per class, read in row-major cell order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Genome {
    classes: Vec<Vec<usize>>,
}

impl Genome {
    /// Wraps raw sequences after checking the per-class multiset against
    /// the instance requirements.
    pub fn new(classes: Vec<Vec<usize>>, inst: &Instance) -> Result<Self> {
        let g = Self { classes };
        if !g.is_valid(inst) {
            return Err(Error::invalid(
                "genome does not match the session requirements",
            ));
        }
        Ok(g)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn is_valid(&self, inst: &Instance) -> bool {
        if self.classes.len() != inst.classes().len() {
            return false;
        }
        let nt = inst.teachers().len();
        self.classes.iter().enumerate().all(|(c, seq)| {
            if seq.len() != inst.grid().cell_count() || seq.iter().any(|&t| t >= nt) {
                return false;
            }
            let mut counts = vec![0u32; nt];
            seq.iter().for_each(|&t| counts[t] += 1);
            counts
                .iter()
                .enumerate()
                .all(|(t, &n)| n == inst.requirement(t, c))
        })
    }
}

/// Token multiset of class `c` in teacher order: `t` repeated `R[t][c]` times.
pub(crate) fn class_tokens(inst: &Instance, c: usize) -> Vec<usize> {
    (0..inst.teachers().len())
        .flat_map(|t| std::iter::repeat_n(t, inst.requirement(t, c) as usize))
        .collect()
}

pub fn decode(g: &Genome) -> Timetable {
    Timetable::new(g.classes.clone())
}

/// Inverse of [`decode`] for timetables that meet every session requirement.
pub fn encode(tt: &Timetable, inst: &Instance) -> Result<Genome> {
    let violations = requirement_violations(tt, inst)?;
    if violations != 0 {
        return Err(Error::invalid(format!(
            "timetable has {violations} requirement violations and cannot be encoded"
        )));
    }
    Ok(Genome {
        classes: tt.classes().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub tournament_size: usize,
    pub elitism_count: usize,
    pub seed: u64,
    /// Satisfaction threshold.
    pub st: f64,
    /// Keep searching for higher satisfaction after the first feasible timetable.
    pub continue_to_budget: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_generations: 500,
            crossover_rate: 0.9,
            mutation_rate: 0.2,
            tournament_size: 3,
            elitism_count: 2,
            seed: 0,
            st: 0.0,
            continue_to_budget: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::invalid(format!("GA config: {m}")));
        if self.population_size == 0 {
            return fail("population_size must be positive");
        }
        if self.max_generations == 0 {
            return fail("max_generations must be positive");
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return fail("crossover_rate must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return fail("mutation_rate must lie in [0, 1]");
        }
        if self.tournament_size < 2 {
            return fail("tournament_size must be at least 2");
        }
        if self.elitism_count >= self.population_size {
            return fail("elitism_count must be smaller than population_size");
        }
        if self.st.is_nan() {
            return fail("st must be a number");
        }
        Ok(())
    }
}

/// `Greater` means `a` is the fitter evaluation.
pub fn fitness_compare(a: &EvaluationResult, b: &EvaluationResult) -> Ordering {
    b.conflicts
        .cmp(&a.conflicts)
        .then_with(|| a.f_satisfaction.total_cmp(&b.f_satisfaction))
}

/// `population_size` genomes, each class an independent uniform shuffle of
/// its token multiset.
pub fn init_population<R: Rng + ?Sized>(
    inst: &Instance,
    cfg: &GaConfig,
    rng: &mut R,
) -> Vec<Genome> {
    let templates: Vec<Vec<usize>> = (0..inst.classes().len())
        .map(|c| class_tokens(inst, c))
        .collect();
    (0..cfg.population_size)
        .map(|_| Genome {
            classes: templates
                .iter()
                .map(|tokens| {
                    let mut seq = tokens.clone();
                    seq.shuffle(rng);
                    seq
                })
                .collect(),
        })
        .collect()
}

/// Order crossover on one class with the window `[lo, hi)` taken from
/// `donor`. Tokens are matched by (teacher, occurrence) so the fill skips
/// exactly the occurrences already copied.
pub fn order_crossover_class(
    donor: &[usize],
    filler: &[usize],
    lo: usize,
    hi: usize,
) -> Vec<usize> {
    debug_assert!(lo <= hi && hi <= donor.len() && donor.len() == filler.len());
    let labelled = |seq: &[usize]| -> Vec<(usize, usize)> {
        let mut seen = std::collections::HashMap::new();
        seq.iter()
            .map(|&t| {
                let k = seen.entry(t).or_insert(0usize);
                *k += 1;
                (t, *k - 1)
            })
            .collect()
    };
    let donor_labels = labelled(donor);
    let window: HashSet<(usize, usize)> = donor_labels[lo..hi].iter().copied().collect();
    let mut fill = labelled(filler)
        .into_iter()
        .filter(|l| !window.contains(l))
        .map(|(t, _)| t);
    (0..donor.len())
        .map(|i| {
            if (lo..hi).contains(&i) {
                donor[i]
            } else {
                fill.next().expect("fill has exactly the missing tokens")
            }
        })
        .collect()
}

/// Per-class order crossover with an independent random window per class.
pub fn crossover<R: Rng + ?Sized>(a: &Genome, b: &Genome, rng: &mut R) -> (Genome, Genome) {
    let (mut c1, mut c2) = (
        Vec::with_capacity(a.classes.len()),
        Vec::with_capacity(a.classes.len()),
    );
    for (x, y) in a.classes.iter().zip(&b.classes) {
        let n = x.len();
        let (mut lo, mut hi) = (rng.random_range(0..=n), rng.random_range(0..=n));
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        c1.push(order_crossover_class(x, y, lo, hi));
        c2.push(order_crossover_class(y, x, lo, hi));
    }
    (Genome { classes: c1 }, Genome { classes: c2 })
}

/// With probability `mutation_rate` per class, swap two uniformly chosen cells.
pub fn mutate<R: Rng + ?Sized>(mut g: Genome, cfg: &GaConfig, rng: &mut R) -> Genome {
    for seq in &mut g.classes {
        if seq.len() > 1 && rng.random_bool(cfg.mutation_rate) {
            let i = rng.random_range(0..seq.len());
            let j = rng.random_range(0..seq.len());
            seq.swap(i, j);
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    FeasibleFound,
    BudgetExhausted,
}

/// Best-ever individual after a generation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenerationRecord {
    pub conflicts: u32,
    pub f_satisfaction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaResult {
    pub best: Timetable,
    pub eval: EvaluationResult,
    /// First generation (0-based) in which a feasible individual appeared.
    pub generation_found: Option<usize>,
    pub history: Vec<GenerationRecord>,
    pub terminated_by: Termination,
    pub evaluations: usize,
}

fn evaluate_population(pop: &[Genome], inst: &Instance, st: f64) -> Result<Vec<EvaluationResult>> {
    pop.iter().map(|g| evaluate(&decode(g), inst, st)).collect()
}

/// Indices sorted fittest first; ties keep population order.
fn ranking(evals: &[EvaluationResult]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..evals.len()).collect();
    order.sort_by(|&i, &j| fitness_compare(&evals[j], &evals[i]));
    order
}

fn tournament<R: Rng + ?Sized>(rank_of: &[usize], size: usize, rng: &mut R) -> usize {
    (0..size)
        .map(|_| rng.random_range(0..rank_of.len()))
        .min_by_key(|&i| (rank_of[i], i))
        .expect("tournament size is at least 2")
}

/// Generational GA with elitism and tournament selection. Stops at the
/// first feasible individual unless `continue_to_budget` is set.
pub fn run(inst: &Instance, cfg: &GaConfig) -> Result<GaResult> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut population = init_population(inst, cfg, &mut rng);
    let mut best: Option<(Genome, EvaluationResult)> = None;
    let mut generation_found = None;
    let mut history = Vec::with_capacity(cfg.max_generations);
    let mut evaluations = 0;

    for generation in 0..cfg.max_generations {
        let evals = evaluate_population(&population, inst, cfg.st)?;
        evaluations += evals.len();
        let order = ranking(&evals);
        let leader = order[0];
        let improved = match &best {
            None => true,
            Some((_, e)) => fitness_compare(&evals[leader], e) == Ordering::Greater,
        };
        if improved {
            best = Some((population[leader].clone(), evals[leader].clone()));
        }
        let best_eval = &best.as_ref().expect("set above").1;
        if generation_found.is_none() && best_eval.feasible {
            generation_found = Some(generation);
        }
        history.push(GenerationRecord {
            conflicts: best_eval.conflicts,
            f_satisfaction: best_eval.f_satisfaction,
        });
        if (generation_found.is_some() && !cfg.continue_to_budget)
            || generation + 1 == cfg.max_generations
        {
            break;
        }

        let mut rank_of = vec![0; order.len()];
        for (r, &i) in order.iter().enumerate() {
            rank_of[i] = r;
        }
        let mut next: Vec<Genome> = order[..cfg.elitism_count]
            .iter()
            .map(|&i| population[i].clone())
            .collect();
        while next.len() < cfg.population_size {
            let a = &population[tournament(&rank_of, cfg.tournament_size, &mut rng)];
            let b = &population[tournament(&rank_of, cfg.tournament_size, &mut rng)];
            let (c1, c2) = if rng.random_bool(cfg.crossover_rate) {
                crossover(a, b, &mut rng)
            } else {
                (a.clone(), b.clone())
            };
            next.push(mutate(c1, cfg, &mut rng));
            if next.len() < cfg.population_size {
                next.push(mutate(c2, cfg, &mut rng));
            }
        }
        population = next;
    }

    let (genome, eval) = best.expect("at least one generation runs");
    let terminated_by = if eval.feasible {
        Termination::FeasibleFound
    } else {
        Termination::BudgetExhausted
    };
    Ok(GaResult {
        best: decode(&genome),
        eval,
        generation_found,
        history,
        terminated_by,
        evaluations,
    })
}

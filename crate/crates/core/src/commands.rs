//! The `score`, `solve`, `check` and `oracle` pipelines behind the CLI.

use std::path::Path;

use num_bigint::BigUint;

use crate::ahp::Ranking;
use crate::bundle::{self, ProjectBundle};
use crate::error::{Error, Result};
use crate::ga::{self, GaConfig};
use crate::oracle::{self, DEFAULT_LIMIT};
use crate::report::{self, OracleSummary, Report, SearchSummary};
use crate::timetable::{self, Instance};

/// A feasible timetable was found or validated.
pub const EXIT_FEASIBLE: u8 = 0;
/// Bad input, inconsistent judgments or a refused enumeration.
pub const EXIT_INPUT_ERROR: u8 = 1;
/// Search finished without a feasible timetable.
pub const EXIT_INFEASIBLE: u8 = 2;

pub const SEED_ENV: &str = "AHPGA_SEED";

/// Tolerance when cross-checking the two evaluators.
const CROSS_CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub st: Option<f64>,
    pub seed: Option<u64>,
    pub allow_inconsistent: bool,
    pub continue_to_budget: bool,
    pub limit: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            st: None,
            seed: None,
            allow_inconsistent: false,
            continue_to_budget: false,
            limit: DEFAULT_LIMIT,
        }
    }
}

/// Seed precedence: flag, then environment, then config file.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<Option<u64>> {
    match (flag, env) {
        (Some(seed), _) => Ok(Some(seed)),
        (None, Some(raw)) => {
            raw.trim().parse().map(Some).map_err(|_| {
                Error::invalid(format!("{SEED_ENV}=`{raw}` is not an unsigned integer"))
            })
        }
        (None, None) => Ok(None),
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: u8,
    /// Timetable file contents written by `solve`.
    pub timetable_csv: Option<String>,
}

fn ranked_instance(bundle: &ProjectBundle, opts: &RunOptions) -> Result<(Ranking, Instance)> {
    let ranking = bundle.ranking()?;
    if !ranking.is_consistent() && !opts.allow_inconsistent {
        let mut bad: Vec<String> = ranking
            .criteria
            .iter()
            .filter(|c| !c.consistency.consistent)
            .map(|c| format!("{} (CR={:.3})", c.name, c.consistency.cr))
            .collect();
        if !ranking.weights_consistency.consistent {
            bad.push(format!(
                "criteria (CR={:.3})",
                ranking.weights_consistency.cr
            ));
        }
        return Err(Error::Inconsistent(format!(
            "{}; pass --allow-inconsistent to proceed",
            bad.join(", ")
        )));
    }
    let inst = bundle.instance(ranking.scores.clone())?;
    Ok((ranking, inst))
}

fn base_report(command: &str, bundle: &ProjectBundle, ranking: Ranking, inst: &Instance) -> Report {
    let mut report = Report::new(command);
    report.warnings = bundle.warnings.clone();
    report.ranking = Some(ranking);
    report.set_teachers(inst, None);
    report
}

fn threshold(bundle: &ProjectBundle, opts: &RunOptions) -> f64 {
    opts.st.unwrap_or_else(|| bundle.config.ga_config().st)
}

/// AHP ranking only.
pub fn score(bundle: &ProjectBundle, opts: &RunOptions) -> Result<Outcome> {
    let (ranking, inst) = ranked_instance(bundle, opts)?;
    let mut report = base_report("score", bundle, ranking, &inst);
    report.max_satisfaction = Some(timetable::max_satisfaction(&inst));
    Ok(Outcome {
        report,
        exit_code: EXIT_FEASIBLE,
        timetable_csv: None,
    })
}

pub fn ga_config(bundle: &ProjectBundle, opts: &RunOptions) -> GaConfig {
    let mut cfg = bundle.config.ga_config();
    if let Some(st) = opts.st {
        cfg.st = st;
    }
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    cfg.continue_to_budget |= opts.continue_to_budget;
    cfg
}

/// Scores, then GA search; exit code 0 iff a feasible timetable was found.
pub fn solve(bundle: &ProjectBundle, opts: &RunOptions) -> Result<Outcome> {
    let (ranking, inst) = ranked_instance(bundle, opts)?;
    let cfg = ga_config(bundle, opts);
    let max = timetable::max_satisfaction(&inst);
    let mut report = base_report("solve", bundle, ranking, &inst);
    if cfg.st > max {
        report.warnings.push(format!(
            "ST={:.3} exceeds the maximum satisfaction {max:.3}; no timetable can be feasible",
            cfg.st
        ));
    }
    let result = ga::run(&inst, &cfg)?;
    report.st = Some(cfg.st);
    report.max_satisfaction = Some(max);
    report.search = Some(SearchSummary::new(&cfg, &result));
    report.set_timetable(&inst, &result.best);
    report.verdict = report::verdict(&result.eval, cfg.st);
    report.evaluation = Some(result.eval.clone());
    Ok(Outcome {
        report,
        exit_code: if result.eval.feasible {
            EXIT_FEASIBLE
        } else {
            EXIT_INFEASIBLE
        },
        timetable_csv: Some(bundle::write_timetable(&result.best, &inst)),
    })
}

/// Evaluates a timetable file with both evaluators and reports the verdict.
pub fn check(bundle: &ProjectBundle, timetable_path: &Path, opts: &RunOptions) -> Result<Outcome> {
    let (ranking, inst) = ranked_instance(bundle, opts)?;
    let tt = bundle::read_timetable(timetable_path, &inst)?;
    let st = threshold(bundle, opts);
    let primary = timetable::evaluate(&tt, &inst, st)?;
    let naive = oracle::verify(&tt, &inst, st)?;
    let agree = primary.conflicts == naive.conflicts
        && primary.requirement_violations == naive.requirement_violations
        && primary.matches == naive.matches
        && primary.feasible == naive.feasible
        && (primary.f_satisfaction - naive.f_satisfaction).abs() <= CROSS_CHECK_TOLERANCE
        && (primary.max_satisfaction - naive.max_satisfaction).abs() <= CROSS_CHECK_TOLERANCE;
    if !agree {
        return Err(Error::Internal(format!(
            "evaluators disagree: {primary:?} vs {naive:?}"
        )));
    }
    let mut report = base_report("check", bundle, ranking, &inst);
    report.st = Some(st);
    report.max_satisfaction = Some(primary.max_satisfaction);
    report.set_timetable(&inst, &tt);
    report.verdict = report::verdict(&primary, st);
    let exit_code = if primary.feasible {
        EXIT_FEASIBLE
    } else {
        EXIT_INFEASIBLE
    };
    report.evaluation = Some(primary);
    Ok(Outcome {
        report,
        exit_code,
        timetable_csv: None,
    })
}

/// Search-space size and, when within `limit`, the exhaustive optimum.
pub fn oracle(bundle: &ProjectBundle, opts: &RunOptions) -> Result<Outcome> {
    let (ranking, inst) = ranked_instance(bundle, opts)?;
    let st = threshold(bundle, opts);
    let space = oracle::count_space(&inst);
    let refused = space.total > BigUint::from(opts.limit);
    let mut report = base_report("oracle", bundle, ranking, &inst);
    report.st = Some(st);
    report.max_satisfaction = Some(timetable::max_satisfaction(&inst));
    report.oracle = Some(OracleSummary {
        space: space.clone(),
        limit: opts.limit,
        refused,
    });
    if refused {
        report.verdict = format!(
            "REFUSED: search space of {} timetables exceeds the limit of {}",
            space.total, opts.limit
        );
        return Ok(Outcome {
            report,
            exit_code: EXIT_INPUT_ERROR,
            timetable_csv: None,
        });
    }
    let (tt, eval) = oracle::exhaustive_best(&inst, opts.limit, st)?;
    report.set_timetable(&inst, &tt);
    report.verdict = format!(
        "OPTIMUM: F={:.3}; {}",
        eval.f_satisfaction,
        report::verdict(&eval, st)
    );
    let exit_code = if eval.feasible {
        EXIT_FEASIBLE
    } else {
        EXIT_INFEASIBLE
    };
    report.evaluation = Some(eval);
    Ok(Outcome {
        report,
        exit_code,
        timetable_csv: None,
    })
}

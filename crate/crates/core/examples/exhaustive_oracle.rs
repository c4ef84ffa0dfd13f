// Counts timetable search spaces and, for a small bundle, compares the
// exhaustive optimum with the genetic algorithm.
//
// Run with `cargo run --example exhaustive_oracle`.

use std::path::PathBuf;

use ahpga::bundle::ProjectBundle;
use ahpga::ga;
use ahpga::oracle::{self, DEFAULT_LIMIT};

pub fn run_example() -> ahpga::Result<(f64, f64)> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples");

    let school = ProjectBundle::load_dir(root.join("school"))?;
    let inst = school.instance(school.ranking()?.scores)?;
    let space = oracle::count_space(&inst);
    println!(
        "school: {:?} arrangements per class, {} in total",
        space.per_class, space.total
    );
    if let Err(e) = oracle::exhaustive_best(&inst, DEFAULT_LIMIT, 4.0) {
        println!("school: {e}");
    }

    let tiny = ProjectBundle::load_dir(root.join("tiny"))?;
    let inst = tiny.instance(tiny.ranking()?.scores)?;
    let (best_tt, best) = oracle::exhaustive_best(&inst, DEFAULT_LIMIT, 0.0)?;
    println!(
        "tiny: {} arrangements, optimum F = {:.4}: {:?}",
        oracle::count_space(&inst).total,
        best.f_satisfaction,
        best_tt.classes()
    );

    let cfg = ga::GaConfig {
        continue_to_budget: true,
        ..tiny.config.ga_config()
    };
    let found = ga::run(&inst, &cfg)?;
    println!(
        "tiny: GA F = {:.4} after {} evaluations",
        found.eval.f_satisfaction, found.evaluations
    );
    Ok((best.f_satisfaction, found.eval.f_satisfaction))
}

fn main() -> ahpga::Result<()> {
    run_example().map(|_| ())
}

// Runs the genetic algorithm on the school bundle and prints the best
// timetable with the search history.
//
// Run with `cargo run --release --example solve_school [seed]`.

use std::path::PathBuf;

use ahpga::bundle::{self, ProjectBundle};
use ahpga::ga::{self, GaResult};

pub fn run_example(seed: u64) -> ahpga::Result<GaResult> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/school");
    let bundle = ProjectBundle::load_dir(dir)?;
    let inst = bundle.instance(bundle.ranking()?.scores)?;
    let cfg = ga::GaConfig {
        seed,
        ..bundle.config.ga_config()
    };

    let result = ga::run(&inst, &cfg)?;
    for (g, rec) in result.history.iter().enumerate() {
        println!(
            "generation {g:>3}: conflicts {:>2}, F = {:.3}",
            rec.conflicts, rec.f_satisfaction
        );
    }
    println!(
        "{:?} after {} evaluations",
        result.terminated_by, result.evaluations
    );
    print!("{}", bundle::write_timetable(&result.best, &inst));
    Ok(result)
}

fn main() -> ahpga::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(Ok(1), |s| s.parse())
        .expect("seed is an integer");
    run_example(seed).map(|_| ())
}

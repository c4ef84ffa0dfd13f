// Evaluates two hand-made timetables for the school bundle: conflicts,
// requirement violations, per-teacher matches and satisfaction.
//
// Run with `cargo run --example evaluate_timetables`.

use std::path::PathBuf;

use ahpga::bundle::{self, ProjectBundle};
use ahpga::timetable::{self, EvaluationResult};

pub fn run_example() -> ahpga::Result<Vec<EvaluationResult>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/school");
    let bundle = ProjectBundle::load_dir(&dir)?;
    let inst = bundle.instance(bundle.ranking()?.scores)?;
    let st = bundle.config.ga_config().st;
    println!(
        "MaxF = {:.3}, ST = {st}",
        timetable::max_satisfaction(&inst)
    );

    let mut results = Vec::new();
    for file in ["partial_match.csv", "full_match.csv"] {
        let tt = bundle::read_timetable(&dir.join(file), &inst)?;
        let e = timetable::evaluate(&tt, &inst, st)?;
        println!(
            "{file}: conflicts {}, violations {}, matches {:?}, F = {:.3}, feasible = {}",
            e.conflicts, e.requirement_violations, e.matches, e.f_satisfaction, e.feasible
        );
        results.push(e);
    }
    Ok(results)
}

fn main() -> ahpga::Result<()> {
    run_example().map(|_| ())
}

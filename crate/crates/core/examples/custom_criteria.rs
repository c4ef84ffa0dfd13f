// Builds an instance entirely in code, with a hand-written comparison
// matrix for a criterion that has no attribute column, and solves it.
//
// Run with `cargo run --example custom_criteria`.

use ahpga::ahp::{self, AttributeValue, CriterionSpec, Direction, PairwiseMatrix, SaatyLevel};
use ahpga::ga::{self, GaConfig};
use ahpga::timetable::{Instance, TimeGrid};

pub fn run_example() -> ahpga::Result<f64> {
    let teachers: Vec<String> = ["Ana", "Ben", "Cai", "Dee"].map(String::from).to_vec();

    // Judgment of the head teacher, entered directly.
    let mentoring = PairwiseMatrix::from_upper(teachers.clone(), |i, j| {
        [
            [1.0, 3.0, 5.0, 1.0],
            [0.0, 1.0, 3.0, 1.0 / 3.0],
            [0.0, 0.0, 1.0, 1.0 / 5.0],
            [0.0, 0.0, 0.0, 1.0],
        ][i][j]
    })?;
    // Fewer years to retirement is preferred here.
    let seniority = ahp::build_pairwise(
        &teachers,
        &[3.0, 12.0, 25.0, 8.0].map(AttributeValue::from),
        &CriterionSpec::interval(
            "years_left",
            vec![5.0, 10.0, 20.0],
            Direction::LowerPreferred,
        )?,
    )?;
    let part_time = ahp::build_pairwise(
        &teachers,
        &["full", "part", "full", "part"].map(AttributeValue::from),
        &CriterionSpec::binary("contract", "part", "full", SaatyLevel::Moderate)?,
    )?;
    let names = ["mentoring", "years_left", "contract"]
        .map(String::from)
        .to_vec();
    let criteria_matrix = PairwiseMatrix::from_upper(names.clone(), |i, j| {
        [[1.0, 2.0, 4.0], [0.0, 1.0, 2.0]][i][j]
    })?;
    let ranking = ahp::rank(
        names
            .into_iter()
            .zip([mentoring, seniority, part_time])
            .collect(),
        criteria_matrix,
    )?;
    println!(
        "scores {:.3?}, consistent = {}",
        ranking.scores.values(),
        ranking.is_consistent()
    );

    // Two classes, two days of three slots; each teacher prefers mornings.
    let grid = TimeGrid::new(2, 3)?;
    let requirements = vec![vec![2, 2], vec![2, 1], vec![1, 2], vec![1, 1]];
    let preferences = (0..teachers.len())
        .map(|t| {
            (0..grid.cell_count())
                .map(|cell| grid.day_slot(cell).1 < 2 || t == 3)
                .collect()
        })
        .collect();
    let classes = vec!["7A".to_owned(), "7B".to_owned()];
    let inst = Instance::new(
        grid,
        teachers,
        classes,
        requirements,
        preferences,
        ranking.scores,
    )?;

    let result = ga::run(
        &inst,
        &GaConfig {
            seed: 2,
            st: 2.0,
            ..GaConfig::default()
        },
    )?;
    println!(
        "F = {:.3} of {:.3}, conflicts {}, feasible = {}",
        result.eval.f_satisfaction,
        result.eval.max_satisfaction,
        result.eval.conflicts,
        result.eval.feasible
    );
    Ok(result.eval.f_satisfaction)
}

fn main() -> ahpga::Result<()> {
    run_example().map(|_| ())
}

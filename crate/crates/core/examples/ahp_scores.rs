// Teacher scores from attributes: pairwise matrices, preference vectors,
// criteria weights and consistency ratios.
//
// Run with `cargo run --example ahp_scores`.

use ahpga::ahp::{self, AttributeValue, CriterionSpec, Direction, PairwiseMatrix, SaatyLevel};

pub fn run_example() -> ahpga::Result<Vec<f64>> {
    let teachers: Vec<String> = ["T1", "T2", "T3", "T4", "T5", "T6"]
        .map(String::from)
        .to_vec();
    let ages = [42.0, 33.0, 25.0, 24.0, 63.0, 43.0];
    let genders = ["M", "F", "F", "F", "M", "F"];
    let loads = [7.0, 4.0, 3.0, 5.0, 2.0, 3.0];
    let contracts = ["full", "full", "part", "part", "full", "full"];

    let numbers = |xs: &[f64]| {
        xs.iter()
            .map(|&x| AttributeValue::from(x))
            .collect::<Vec<_>>()
    };
    let labels = |xs: &[&str]| {
        xs.iter()
            .map(|&x| AttributeValue::from(x))
            .collect::<Vec<_>>()
    };
    let criteria = vec![
        (
            CriterionSpec::interval(
                "age",
                vec![30.0, 40.0, 50.0, 60.0],
                Direction::HigherPreferred,
            )?,
            numbers(&ages),
        ),
        (
            CriterionSpec::binary("gender", "F", "M", SaatyLevel::Moderate)?,
            labels(&genders),
        ),
        (
            CriterionSpec::interval("load", vec![2.0, 4.0, 6.0], Direction::HigherPreferred)?,
            numbers(&loads),
        ),
        (
            CriterionSpec::binary("contract", "part", "full", SaatyLevel::Strong)?,
            labels(&contracts),
        ),
    ];

    let mut matrices = Vec::new();
    for (spec, values) in &criteria {
        let m = ahp::build_pairwise(&teachers, values, spec)?;
        let report = ahp::consistency(&m)?;
        println!(
            "{:<9} CR = {:.3}  preferences = {:.3?}",
            spec.name,
            report.cr,
            ahp::preference_vector(&m).values()
        );
        matrices.push((spec.name.clone(), m));
    }

    // Row criterion compared with column criterion.
    let names: Vec<String> = criteria.iter().map(|(s, _)| s.name.clone()).collect();
    let upper = [
        [1.0, 3.0, 1.0 / 5.0, 1.0 / 3.0],
        [0.0, 1.0, 1.0 / 7.0, 1.0 / 5.0],
        [0.0, 0.0, 1.0, 3.0],
    ];
    let criteria_matrix = PairwiseMatrix::from_upper(names, |i, j| upper[i][j])?;

    let ranking = ahp::rank(matrices, criteria_matrix)?;
    println!(
        "weights   = {:.3?} (CR = {:.3})",
        ranking.weights.values(),
        ranking.weights_consistency.cr
    );
    for (t, s) in teachers.iter().zip(ranking.scores.values()) {
        println!("{t}: {s:.3}");
    }
    Ok(ranking.scores.into_inner())
}

fn main() -> ahpga::Result<()> {
    run_example().map(|_| ())
}

//! Problem instance, timetable representation and evaluation of the hard
//! constraints and the score-weighted satisfaction function.

use std::collections::HashSet;

use serde::Serialize;

use crate::ahp::ScoreVector;
use crate::error::{Error, Result};

/// Weekly grid of `days x slots_per_day` teaching cells. Cells are numbered
/// row-major: `day * slots_per_day + slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TimeGrid {
    days: usize,
    slots_per_day: usize,
}

impl TimeGrid {
    pub fn new(days: usize, slots_per_day: usize) -> Result<Self> {
        if days == 0 || slots_per_day == 0 {
            return Err(Error::invalid(
                "time grid needs at least one day and one slot",
            ));
        }
        Ok(Self {
            days,
            slots_per_day,
        })
    }

    pub fn days(&self) -> usize {
        self.days
    }

    pub fn slots_per_day(&self) -> usize {
        self.slots_per_day
    }

    pub fn cell_count(&self) -> usize {
        self.days * self.slots_per_day
    }

    pub fn cell(&self, day: usize, slot: usize) -> usize {
        debug_assert!(day < self.days && slot < self.slots_per_day);
        day * self.slots_per_day + slot
    }

    pub fn day_slot(&self, cell: usize) -> (usize, usize) {
        (cell / self.slots_per_day, cell % self.slots_per_day)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    grid: TimeGrid,
    teachers: Vec<String>,
    classes: Vec<String>,
    /// `requirements[t][c]`: sessions teacher `t` must give class `c`.
    requirements: Vec<Vec<u32>>,
    /// `preferences[t][cell]`: whether teacher `t` prefers that cell.
    preferences: Vec<Vec<bool>>,
    scores: ScoreVector,
    loads: Vec<u32>,
}

impl Instance {
    pub fn new(
        grid: TimeGrid,
        teachers: Vec<String>,
        classes: Vec<String>,
        requirements: Vec<Vec<u32>>,
        preferences: Vec<Vec<bool>>,
        scores: ScoreVector,
    ) -> Result<Self> {
        let nt = teachers.len();
        let nc = classes.len();
        let cells = grid.cell_count();
        reject_duplicates("teacher", &teachers)?;
        reject_duplicates("class", &classes)?;
        for (what, len) in [
            ("requirement rows", requirements.len()),
            ("preference rows", preferences.len()),
            ("scores", scores.len()),
        ] {
            if len != nt {
                return Err(Error::invalid(format!(
                    "{what}: expected {nt} (one per teacher), got {len}"
                )));
            }
        }
        for (t, row) in requirements.iter().enumerate() {
            if row.len() != nc {
                return Err(Error::invalid(format!(
                    "teacher {}: expected {nc} requirement columns, got {}",
                    teachers[t],
                    row.len()
                )));
            }
        }
        for (t, row) in preferences.iter().enumerate() {
            if row.len() != cells {
                return Err(Error::invalid(format!(
                    "teacher {}: expected {cells} preference cells, got {}",
                    teachers[t],
                    row.len()
                )));
            }
        }
        for (c, class) in classes.iter().enumerate() {
            let total: u64 = requirements.iter().map(|r| u64::from(r[c])).sum();
            if total != cells as u64 {
                return Err(Error::invalid(format!(
                    "class {class}: requirements sum to {total} sessions but the grid has {cells} cells"
                )));
            }
        }
        let loads: Vec<u32> = requirements.iter().map(|r| r.iter().sum()).collect();
        for (t, &load) in loads.iter().enumerate() {
            if load as usize > cells {
                return Err(Error::invalid(format!(
                    "teacher {} has a load of {load} but only {cells} cells exist",
                    teachers[t]
                )));
            }
        }
        Ok(Self {
            grid,
            teachers,
            classes,
            requirements,
            preferences,
            scores,
            loads,
        })
    }

    pub fn grid(&self) -> TimeGrid {
        self.grid
    }

    pub fn teachers(&self) -> &[String] {
        &self.teachers
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn teacher_index(&self, id: &str) -> Option<usize> {
        self.teachers.iter().position(|t| t == id)
    }

    pub fn class_index(&self, id: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == id)
    }

    pub fn requirement(&self, teacher: usize, class: usize) -> u32 {
        self.requirements[teacher][class]
    }

    pub fn requirements(&self) -> &[Vec<u32>] {
        &self.requirements
    }

    pub fn prefers(&self, teacher: usize, cell: usize) -> bool {
        self.preferences[teacher][cell]
    }

    pub fn preferences(&self) -> &[Vec<bool>] {
        &self.preferences
    }

    pub fn scores(&self) -> &ScoreVector {
        &self.scores
    }

    pub fn loads(&self) -> &[u32] {
        &self.loads
    }

    /// Same instance with different teacher scores.
    pub fn with_scores(&self, scores: ScoreVector) -> Result<Self> {
        Self::new(
            self.grid,
            self.teachers.clone(),
            self.classes.clone(),
            self.requirements.clone(),
            self.preferences.clone(),
            scores,
        )
    }

    /// Same instance with different preference grids.
    pub fn with_preferences(&self, preferences: Vec<Vec<bool>>) -> Result<Self> {
        Self::new(
            self.grid,
            self.teachers.clone(),
            self.classes.clone(),
            self.requirements.clone(),
            preferences,
            self.scores.clone(),
        )
    }
}

fn reject_duplicates(what: &str, ids: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::invalid(format!("duplicate {what} id `{id}`")));
        }
    }
    Ok(())
}

/// Teacher index for every (class, cell).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Timetable {
    cells: Vec<Vec<usize>>,
}

impl Timetable {
    pub fn new(cells: Vec<Vec<usize>>) -> Self {
        Self { cells }
    }

    /// Builds a timetable from teacher ids laid out as `[class][cell]`.
    pub fn from_ids<S: AsRef<str>>(inst: &Instance, ids: &[Vec<S>]) -> Result<Self> {
        let cells = ids
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|id| {
                        inst.teacher_index(id.as_ref())
                            .ok_or_else(|| Error::UnknownTeacher(id.as_ref().to_owned()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let tt = Self { cells };
        tt.check_dims(inst)?;
        Ok(tt)
    }

    pub fn class_count(&self) -> usize {
        self.cells.len()
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.cells[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn teacher_at(&self, class: usize, cell: usize) -> usize {
        self.cells[class][cell]
    }

    pub fn into_cells(self) -> Vec<Vec<usize>> {
        self.cells
    }

    pub fn check_dims(&self, inst: &Instance) -> Result<()> {
        if self.cells.len() != inst.classes().len() {
            return Err(Error::DimensionMismatch {
                expected: inst.classes().len(),
                actual: self.cells.len(),
            });
        }
        let n_cells = inst.grid().cell_count();
        for class in &self.cells {
            if class.len() != n_cells {
                return Err(Error::DimensionMismatch {
                    expected: n_cells,
                    actual: class.len(),
                });
            }
            if let Some(&t) = class.iter().find(|&&t| t >= inst.teachers().len()) {
                return Err(Error::UnknownTeacher(format!("#{t}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationResult {
    pub conflicts: u32,
    pub requirement_violations: u32,
    pub matches: Vec<u32>,
    pub f_satisfaction: f64,
    pub max_satisfaction: f64,
    pub feasible: bool,
}

/// Number of extra bookings: for every cell and teacher booked in `k`
/// classes at once, `k - 1`.
pub fn conflict_count(tt: &Timetable, inst: &Instance) -> Result<u32> {
    tt.check_dims(inst)?;
    let mut seen = vec![0u32; inst.teachers().len()];
    let mut conflicts = 0;
    for cell in 0..inst.grid().cell_count() {
        seen.iter_mut().for_each(|s| *s = 0);
        for class in tt.classes() {
            let t = class[cell];
            if seen[t] > 0 {
                conflicts += 1;
            }
            seen[t] += 1;
        }
    }
    Ok(conflicts)
}

/// Sum over (teacher, class) of `|assigned - required|`.
pub fn requirement_violations(tt: &Timetable, inst: &Instance) -> Result<u32> {
    tt.check_dims(inst)?;
    let mut total = 0;
    let mut counts = vec![0u32; inst.teachers().len()];
    for (c, class) in tt.classes().iter().enumerate() {
        counts.iter_mut().for_each(|n| *n = 0);
        for &t in class {
            counts[t] += 1;
        }
        total += counts
            .iter()
            .enumerate()
            .map(|(t, &n)| n.abs_diff(inst.requirement(t, c)))
            .sum::<u32>();
    }
    Ok(total)
}

/// `M_t`: assigned sessions of each teacher that land on a preferred cell.
pub fn match_count(tt: &Timetable, inst: &Instance) -> Result<Vec<u32>> {
    tt.check_dims(inst)?;
    let mut matches = vec![0u32; inst.teachers().len()];
    for class in tt.classes() {
        for (cell, &t) in class.iter().enumerate() {
            if inst.prefers(t, cell) {
                matches[t] += 1;
            }
        }
    }
    Ok(matches)
}

/// `sum_t S_t * M_t`.
pub fn satisfaction(matches: &[u32], scores: &ScoreVector) -> Result<f64> {
    if matches.len() != scores.len() {
        return Err(Error::DimensionMismatch {
            expected: scores.len(),
            actual: matches.len(),
        });
    }
    Ok(matches
        .iter()
        .zip(scores.values())
        .map(|(&m, s)| s * f64::from(m))
        .sum())
}

/// `sum_t S_t * L_t`, the satisfaction of a fully preferred timetable.
pub fn max_satisfaction(inst: &Instance) -> f64 {
    satisfaction(inst.loads(), inst.scores()).expect("instance scores match teacher count")
}

/// Feasible iff conflict-free, every requirement met and `F >= st`.
pub fn evaluate(tt: &Timetable, inst: &Instance, st: f64) -> Result<EvaluationResult> {
    let conflicts = conflict_count(tt, inst)?;
    let requirement_violations = requirement_violations(tt, inst)?;
    let matches = match_count(tt, inst)?;
    let f_satisfaction = satisfaction(&matches, inst.scores())?;
    Ok(EvaluationResult {
        conflicts,
        requirement_violations,
        feasible: conflicts == 0 && requirement_violations == 0 && f_satisfaction >= st,
        matches,
        f_satisfaction,
        max_satisfaction: max_satisfaction(inst),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ids(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    fn uniform_scores(n: usize) -> ScoreVector {
        ScoreVector::new(vec![1.0 / n as f64; n]).unwrap()
    }

    /// 1 day, 2 slots, 2 classes, T1 and T2 with one session in each class.
    fn two_by_two() -> Instance {
        Instance::new(
            TimeGrid::new(1, 2).unwrap(),
            ids("T", 2),
            ids("C", 2),
            vec![vec![1, 1], vec![1, 1]],
            vec![vec![true, false], vec![false, true]],
            ScoreVector::new(vec![0.6, 0.4]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn grid_rejects_empty_dimensions() {
        assert!(TimeGrid::new(0, 4).is_err());
        assert!(TimeGrid::new(3, 0).is_err());
        let g = TimeGrid::new(3, 4).unwrap();
        assert_eq!(g.cell(2, 1), 9);
        assert_eq!(g.day_slot(9), (2, 1));
    }

    #[test]
    fn instance_validation() {
        let grid = TimeGrid::new(1, 2).unwrap();
        let short = Instance::new(
            grid,
            ids("T", 1),
            ids("C", 1),
            vec![vec![1]],
            vec![vec![true, true]],
            uniform_scores(1),
        );
        assert!(short.unwrap_err().to_string().contains("C1"));
        let dup = Instance::new(
            grid,
            vec!["A".into(), "A".into()],
            ids("C", 1),
            vec![vec![1], vec![1]],
            vec![vec![true; 2]; 2],
            uniform_scores(2),
        );
        assert!(dup.is_err());
        let bad_scores = Instance::new(
            grid,
            ids("T", 1),
            ids("C", 1),
            vec![vec![2]],
            vec![vec![true; 2]],
            uniform_scores(2),
        );
        assert!(bad_scores.is_err());
    }

    #[test]
    fn double_booking_everywhere() {
        let inst = two_by_two();
        let tt = Timetable::new(vec![vec![0, 0], vec![0, 0]]);
        assert_eq!(conflict_count(&tt, &inst).unwrap(), 2);
        let ok = Timetable::new(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(conflict_count(&ok, &inst).unwrap(), 0);
    }

    #[test]
    fn three_classes_count_extra_occurrences() {
        let inst = Instance::new(
            TimeGrid::new(1, 3).unwrap(),
            ids("T", 3),
            ids("C", 3),
            vec![vec![1; 3]; 3],
            vec![vec![false; 3]; 3],
            uniform_scores(3),
        )
        .unwrap();
        let tt = Timetable::new(vec![vec![0, 1, 2]; 3]);
        assert_eq!(conflict_count(&tt, &inst).unwrap(), 6);
    }

    #[test]
    fn single_class_never_conflicts() {
        let inst = Instance::new(
            TimeGrid::new(2, 2).unwrap(),
            ids("T", 2),
            ids("C", 1),
            vec![vec![3], vec![1]],
            vec![vec![false; 4]; 2],
            uniform_scores(2),
        )
        .unwrap();
        let tt = Timetable::new(vec![vec![0, 0, 1, 0]]);
        assert_eq!(conflict_count(&tt, &inst).unwrap(), 0);
        assert_eq!(requirement_violations(&tt, &inst).unwrap(), 0);
    }

    #[test]
    fn swapping_one_cell_gives_two_violations() {
        let inst = two_by_two();
        let tt = Timetable::new(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(requirement_violations(&tt, &inst).unwrap(), 0);
        let swapped = Timetable::new(vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(requirement_violations(&swapped, &inst).unwrap(), 2);
    }

    #[test]
    fn no_classes_no_violations() {
        let inst = Instance::new(
            TimeGrid::new(1, 1).unwrap(),
            ids("T", 1),
            vec![],
            vec![vec![]],
            vec![vec![false]],
            uniform_scores(1),
        )
        .unwrap();
        let tt = Timetable::new(vec![]);
        assert_eq!(requirement_violations(&tt, &inst).unwrap(), 0);
        assert_eq!(conflict_count(&tt, &inst).unwrap(), 0);
    }

    #[test]
    fn unknown_teacher_and_bad_dims() {
        let inst = two_by_two();
        assert!(matches!(
            conflict_count(&Timetable::new(vec![vec![0, 5], vec![1, 0]]), &inst),
            Err(Error::UnknownTeacher(_))
        ));
        assert!(matches!(
            match_count(&Timetable::new(vec![vec![0, 1]]), &inst),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(
            matches!(Timetable::from_ids(&inst, &[vec!["T1", "T9"], vec!["T2", "T1"]]), Err(Error::UnknownTeacher(id)) if id == "T9")
        );
    }

    #[test]
    fn match_count_extremes() {
        let inst = two_by_two();
        let tt = Timetable::new(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(match_count(&tt, &inst).unwrap(), vec![1, 1]);
        let none = inst.with_preferences(vec![vec![false; 2]; 2]).unwrap();
        assert_eq!(match_count(&tt, &none).unwrap(), vec![0, 0]);
        let all = inst.with_preferences(vec![vec![true; 2]; 2]).unwrap();
        assert_eq!(match_count(&tt, &all).unwrap(), vec![2, 2]);
    }

    #[test]
    fn satisfaction_examples() {
        let s = ScoreVector::new(vec![0.281, 0.148, 0.158, 0.222, 0.102, 0.089]).unwrap();
        let f = satisfaction(&[5, 2, 1, 5, 2, 2], &s).unwrap();
        assert!((f - 3.351).abs() <= 0.001, "{f}");
        assert_eq!(satisfaction(&[0; 6], &s).unwrap(), 0.0);
        let max = satisfaction(&[7, 4, 3, 5, 2, 3], &s).unwrap();
        assert!((max - 4.614).abs() <= 0.001, "{max}");
        assert!(satisfaction(&[1, 2], &s).is_err());
    }

    #[test]
    fn max_satisfaction_single_teacher() {
        let inst = Instance::new(
            TimeGrid::new(3, 4).unwrap(),
            ids("T", 1),
            ids("C", 1),
            vec![vec![12]],
            vec![vec![false; 12]],
            uniform_scores(1),
        )
        .unwrap();
        assert_eq!(max_satisfaction(&inst), 12.0);
        let no_classes = Instance::new(
            TimeGrid::new(1, 1).unwrap(),
            ids("T", 1),
            vec![],
            vec![vec![]],
            vec![vec![true]],
            uniform_scores(1),
        )
        .unwrap();
        assert_eq!(max_satisfaction(&no_classes), 0.0);
    }

    #[test]
    fn evaluate_with_zero_threshold() {
        let inst = two_by_two();
        let tt = Timetable::new(vec![vec![1, 0], vec![0, 1]]);
        let e = evaluate(&tt, &inst, 0.0).unwrap();
        assert_eq!(e.matches, vec![1, 1]);
        assert!((e.f_satisfaction - 1.0).abs() < 1e-12);
        assert!(e.feasible);
        let e = evaluate(&tt, &inst, 1.1).unwrap();
        assert!(!e.feasible);
    }

    /// Random instance plus a timetable with zero requirement violations
    /// (conflicts allowed). Requirements come from a conflict-free base
    /// layout, then each class row is shuffled.
    fn arb_case() -> impl Strategy<Value = (Instance, Timetable)> {
        (1usize..3, 1usize..4, 1usize..4, 0usize..3).prop_flat_map(
            |(days, slots, classes, extra)| {
                let cells = days * slots;
                let teachers = classes + extra;
                (
                    prop::collection::vec(0..teachers, cells),
                    prop::collection::vec(
                        Just((0..cells).collect::<Vec<usize>>()).prop_shuffle(),
                        classes,
                    ),
                    prop::collection::vec(prop::collection::vec(any::<bool>(), cells), teachers),
                    prop::collection::vec(1u32..100, teachers),
                )
                    .prop_map(move |(shift, orders, prefs, raw)| {
                        let base: Vec<Vec<usize>> = (0..classes)
                            .map(|c| (0..cells).map(|k| (c + shift[k]) % teachers).collect())
                            .collect();
                        let mut req = vec![vec![0u32; classes]; teachers];
                        for (c, class) in base.iter().enumerate() {
                            for &t in class {
                                req[t][c] += 1;
                            }
                        }
                        let rows = base
                            .iter()
                            .zip(&orders)
                            .map(|(row, order)| order.iter().map(|&k| row[k]).collect())
                            .collect();
                        let total: u32 = raw.iter().sum();
                        let scores = ScoreVector::new(
                            raw.iter()
                                .map(|&r| f64::from(r) / f64::from(total))
                                .collect(),
                        )
                        .unwrap();
                        let inst = Instance::new(
                            TimeGrid::new(days, slots).unwrap(),
                            ids("T", teachers),
                            ids("C", classes),
                            req,
                            prefs,
                            scores,
                        )
                        .unwrap();
                        (inst, Timetable::new(rows))
                    })
            },
        )
    }

    proptest! {
        #[test]
        fn satisfaction_is_linear(a in prop::collection::vec(0u32..20, 4), b in prop::collection::vec(0u32..20, 4)) {
            let s = ScoreVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
            let sum: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let lhs = satisfaction(&sum, &s).unwrap();
            let rhs = satisfaction(&a, &s).unwrap() + satisfaction(&b, &s).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12);
        }

        #[test]
        fn satisfaction_bounded_and_monotone((inst, tt) in arb_case(), st_lo in 0.0f64..3.0, bump in 0.0f64..3.0) {
            let e = evaluate(&tt, &inst, st_lo).unwrap();
            prop_assert_eq!(e.requirement_violations, 0);
            prop_assert!(e.f_satisfaction <= e.max_satisfaction + 1e-9);
            for (m, l) in e.matches.iter().zip(inst.loads()) {
                prop_assert!(m <= l);
            }
            let hi = evaluate(&tt, &inst, st_lo + bump).unwrap();
            prop_assert!(!hi.feasible || e.feasible);
        }

        #[test]
        fn flipping_a_covered_preference_adds_its_score((inst, tt) in arb_case(), pick in any::<prop::sample::Index>()) {
            let cells = inst.grid().cell_count();
            let spots: Vec<(usize, usize)> = (0..cells)
                .filter_map(|cell| {
                    let t = tt.teacher_at(0, cell);
                    (!inst.prefers(t, cell)).then_some((t, cell))
                })
                .collect();
            prop_assume!(!spots.is_empty());
            let (t, cell) = spots[pick.index(spots.len())];
            let mut prefs = inst.preferences().to_vec();
            prefs[t][cell] = true;
            let flipped = inst.with_preferences(prefs).unwrap();
            let before = evaluate(&tt, &inst, 0.0).unwrap().f_satisfaction;
            let after = evaluate(&tt, &flipped, 0.0).unwrap().f_satisfaction;
            // Other classes may also place `t` in this cell; each adds S_t.
            let k = tt.classes().iter().filter(|c| c[cell] == t).count() as f64;
            prop_assert!((after - before - k * inst.scores()[t]).abs() <= 1e-12);
        }

        #[test]
        fn day_relabeling_preserves_hard_constraints((inst, tt) in arb_case(), seed in any::<u64>()) {
            let grid = inst.grid();
            let mut order: Vec<usize> = (0..grid.days()).collect();
            order.rotate_left((seed as usize) % grid.days());
            let relabeled = Timetable::new(
                tt.classes()
                    .iter()
                    .map(|class| {
                        (0..grid.cell_count())
                            .map(|cell| {
                                let (d, p) = grid.day_slot(cell);
                                class[grid.cell(order[d], p)]
                            })
                            .collect()
                    })
                    .collect(),
            );
            prop_assert_eq!(conflict_count(&tt, &inst).unwrap(), conflict_count(&relabeled, &inst).unwrap());
            prop_assert_eq!(requirement_violations(&tt, &inst).unwrap(), requirement_violations(&relabeled, &inst).unwrap());
        }
    }
}

//! Human- and machine-readable reports.

use std::fmt::Write as _;

use serde::Serialize;

use crate::ahp::Ranking;
use crate::ga::{GaConfig, GaResult, Termination};
use crate::oracle::SearchSpaceSize;
use crate::timetable::{EvaluationResult, Instance, Timetable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellRef {
    pub class: usize,
    pub day: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeacherRow {
    pub id: String,
    pub load: u32,
    pub score: f64,
    pub matches: Option<u32>,
    pub matched_cells: Vec<CellRef>,
    pub unmatched_cells: Vec<CellRef>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassSchedule {
    pub class: String,
    /// `days[d][p]` is the teacher id at day `d`, slot `p`.
    pub days: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSummary {
    pub seed: u64,
    pub population_size: usize,
    pub max_generations: usize,
    pub generations_run: usize,
    pub evaluations: usize,
    pub generation_found: Option<usize>,
    pub terminated_by: Termination,
}

impl SearchSummary {
    pub fn new(cfg: &GaConfig, result: &GaResult) -> Self {
        Self {
            seed: cfg.seed,
            population_size: cfg.population_size,
            max_generations: cfg.max_generations,
            generations_run: result.history.len(),
            evaluations: result.evaluations,
            generation_found: result.generation_found,
            terminated_by: result.terminated_by,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSummary {
    pub space: SearchSpaceSize,
    pub limit: u64,
    pub refused: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub teachers: Vec<TeacherRow>,
    pub ranking: Option<Ranking>,
    pub st: Option<f64>,
    pub max_satisfaction: Option<f64>,
    pub timetable: Option<Vec<ClassSchedule>>,
    pub evaluation: Option<EvaluationResult>,
    pub search: Option<SearchSummary>,
    pub oracle: Option<OracleSummary>,
    pub verdict: String,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            teachers: Vec::new(),
            ranking: None,
            st: None,
            max_satisfaction: None,
            timetable: None,
            evaluation: None,
            search: None,
            oracle: None,
            verdict: String::new(),
            warnings: Vec::new(),
        }
    }

    /// Per-teacher rows; with a timetable, also matched and unmatched cells.
    pub fn set_teachers(&mut self, inst: &Instance, tt: Option<&Timetable>) {
        let grid = inst.grid();
        self.teachers = inst
            .teachers()
            .iter()
            .enumerate()
            .map(|(t, id)| {
                let mut matched = Vec::new();
                let mut unmatched = Vec::new();
                if let Some(tt) = tt {
                    for (c, class) in tt.classes().iter().enumerate() {
                        for (cell, &who) in class.iter().enumerate() {
                            if who != t {
                                continue;
                            }
                            let (day, slot) = grid.day_slot(cell);
                            let r = CellRef {
                                class: c,
                                day,
                                slot,
                            };
                            if inst.prefers(t, cell) {
                                matched.push(r);
                            } else {
                                unmatched.push(r);
                            }
                        }
                    }
                }
                TeacherRow {
                    id: id.clone(),
                    load: inst.loads()[t],
                    score: inst.scores()[t],
                    matches: tt.map(|_| matched.len() as u32),
                    matched_cells: matched,
                    unmatched_cells: unmatched,
                }
            })
            .collect();
    }

    pub fn set_timetable(&mut self, inst: &Instance, tt: &Timetable) {
        let grid = inst.grid();
        self.timetable = Some(
            inst.classes()
                .iter()
                .enumerate()
                .map(|(c, class)| ClassSchedule {
                    class: class.clone(),
                    days: (0..grid.days())
                        .map(|d| {
                            (0..grid.slots_per_day())
                                .map(|p| inst.teachers()[tt.teacher_at(c, grid.cell(d, p))].clone())
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        );
        self.set_teachers(inst, Some(tt));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        if let Some(r) = &self.ranking {
            render_ranking(&mut out, r, &self.teachers, verbose);
        }
        if let Some(o) = &self.oracle {
            let per: Vec<String> = o.space.per_class.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "Search space: {} = {} (limit {})",
                per.join(" x "),
                o.space.total,
                o.limit
            );
        }
        if let (Some(max), Some(st)) = (self.max_satisfaction, self.st) {
            let _ = writeln!(out, "MaxF = {max:.3}, ST = {st:.3}");
        }
        if let Some(s) = &self.search {
            let found = s.generation_found.map_or("-".to_owned(), |g| g.to_string());
            let _ = writeln!(
                out,
                "GA: seed {}, {} generations, {} evaluations, feasible at generation {found}",
                s.seed, s.generations_run, s.evaluations
            );
        }
        if let Some(tt) = &self.timetable {
            render_timetable(&mut out, tt);
        }
        if let Some(e) = &self.evaluation {
            let _ = writeln!(out, "\nteacher  score   M/load");
            for (row, m) in self.teachers.iter().zip(&e.matches) {
                let _ = writeln!(out, "{:<8} {:.3}   {m}/{}", row.id, row.score, row.load);
            }
            if verbose {
                for row in &self.teachers {
                    let cells: Vec<String> = row
                        .unmatched_cells
                        .iter()
                        .map(|c| format!("C{}:D{}S{}", c.class + 1, c.day + 1, c.slot + 1))
                        .collect();
                    if !cells.is_empty() {
                        let _ = writeln!(out, "  {} unmatched: {}", row.id, cells.join(" "));
                    }
                }
            }
            let _ = writeln!(
                out,
                "conflicts = {}, requirement violations = {}, F = {:.3}",
                e.conflicts, e.requirement_violations, e.f_satisfaction
            );
        }
        if !self.verdict.is_empty() {
            let _ = writeln!(out, "{}", self.verdict);
        }
        out
    }
}

fn render_ranking(out: &mut String, r: &Ranking, teachers: &[TeacherRow], verbose: bool) {
    if verbose {
        for c in &r.criteria {
            let _ = writeln!(out, "Pairwise comparisons: {}", c.name);
            render_matrix(out, c.matrix.labels(), c.matrix.rows());
        }
        let _ = writeln!(out, "Pairwise comparisons: criteria");
        render_matrix(out, r.criteria_matrix.labels(), r.criteria_matrix.rows());
    }
    let _ = write!(out, "{:<8}", "teacher");
    for c in &r.criteria {
        let _ = write!(out, " {:>9}", c.name);
    }
    let _ = writeln!(out, " {:>9}", "score");
    for (i, row) in teachers.iter().enumerate() {
        let _ = write!(out, "{:<8}", row.id);
        for c in &r.criteria {
            let _ = write!(out, " {:>9.3}", c.preferences[i]);
        }
        let _ = writeln!(out, " {:>9.3}", r.scores[i]);
    }
    let _ = write!(out, "{:<8}", "weight");
    for w in r.weights.values() {
        let _ = write!(out, " {w:>9.3}");
    }
    let _ = writeln!(out);
    let _ = write!(out, "{:<8}", "CR");
    for c in &r.criteria {
        let _ = write!(out, " {:>9.3}", c.consistency.cr);
    }
    let _ = writeln!(out, " {:>9.3} (criteria)", r.weights_consistency.cr);
}

fn render_matrix(out: &mut String, labels: &[String], rows: &[Vec<f64>]) {
    let fmt = |v: f64| {
        if v >= 1.0 && v.fract() == 0.0 {
            format!("{v}")
        } else if (1.0 / v).fract().abs() < 1e-9 {
            format!("1/{}", (1.0 / v).round())
        } else {
            format!("{v:.3}")
        }
    };
    let _ = write!(out, "{:<10}", "");
    for l in labels {
        let _ = write!(out, " {l:>9}");
    }
    let _ = writeln!(out);
    for (l, row) in labels.iter().zip(rows) {
        let _ = write!(out, "{l:<10}");
        for &v in row {
            let _ = write!(out, " {:>9}", fmt(v));
        }
        let _ = writeln!(out);
    }
}

fn render_timetable(out: &mut String, tt: &[ClassSchedule]) {
    for class in tt {
        let _ = write!(out, "\n{:<8}", class.class);
        for d in 0..class.days.len() {
            let _ = write!(out, " {:>6}", format!("D{}", d + 1));
        }
        let _ = writeln!(out);
        let slots = class.days.first().map_or(0, Vec::len);
        for p in 0..slots {
            let _ = write!(out, "{:<8}", format!("slot {}", p + 1));
            for day in &class.days {
                let _ = write!(out, " {:>6}", day[p]);
            }
            let _ = writeln!(out);
        }
    }
}

/// One-line feasibility verdict.
pub fn verdict(e: &EvaluationResult, st: f64) -> String {
    if e.feasible {
        format!("FEASIBLE: F={:.3} >= ST={st:.3}", e.f_satisfaction)
    } else if e.conflicts > 0 || e.requirement_violations > 0 {
        format!(
            "NOT FEASIBLE: {} conflicts, {} requirement violations, F={:.3}",
            e.conflicts, e.requirement_violations, e.f_satisfaction
        )
    } else {
        format!("NOT FEASIBLE: F={:.3} < ST={st:.3}", e.f_satisfaction)
    }
}

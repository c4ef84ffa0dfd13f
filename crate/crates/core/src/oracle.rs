//! Brute-force reference machinery for small instances: exact search-space
//! counts, exhaustive optimisation and a naive second evaluator.
//!
//! Nothing here calls into the evaluation code of [`crate::timetable`]; the
//! two implementations are meant to be checked against each other.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::timetable::{EvaluationResult, Instance, Timetable};

pub const DEFAULT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpaceSize {
    #[serde(serialize_with = "ser_big_vec")]
    pub per_class: Vec<BigUint>,
    #[serde(serialize_with = "ser_big")]
    pub total: BigUint,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_big_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}

/// Per class, the number of distinct arrangements of its token multiset:
/// `(D*P)! / prod_t R[t][c]!`. The total is the product over classes.
pub fn count_space(inst: &Instance) -> SearchSpaceSize {
    let per_class: Vec<BigUint> = (0..inst.classes().len())
        .map(|c| {
            let mut remaining = inst.grid().cell_count() as u64;
            let mut count = BigUint::from(1u32);
            for t in 0..inst.teachers().len() {
                let r = u64::from(inst.requirement(t, c));
                count *= binomial(remaining, r);
                remaining -= r;
            }
            count
        })
        .collect();
    let total = per_class.iter().fold(BigUint::from(1u32), |acc, c| acc * c);
    SearchSpaceSize { per_class, total }
}

/// Re-evaluates a timetable with plain nested loops.
pub fn verify(tt: &Timetable, inst: &Instance, st: f64) -> Result<EvaluationResult> {
    let days = inst.grid().days();
    let slots = inst.grid().slots_per_day();
    let nt = inst.teachers().len();
    let nc = inst.classes().len();
    let rows = tt.classes();
    if rows.len() != nc {
        return Err(Error::DimensionMismatch {
            expected: nc,
            actual: rows.len(),
        });
    }
    for row in rows {
        if row.len() != days * slots {
            return Err(Error::DimensionMismatch {
                expected: days * slots,
                actual: row.len(),
            });
        }
        for &t in row {
            if t >= nt {
                return Err(Error::UnknownTeacher(format!("#{t}")));
            }
        }
    }
    let at = |c: usize, d: usize, p: usize| rows[c][d * slots + p];

    let mut conflicts = 0u32;
    for d in 0..days {
        for p in 0..slots {
            for t in 0..nt {
                let mut k = 0u32;
                for c in 0..nc {
                    if at(c, d, p) == t {
                        k += 1;
                    }
                }
                if k > 1 {
                    conflicts += k - 1;
                }
            }
        }
    }

    let mut violations = 0u32;
    for t in 0..nt {
        for c in 0..nc {
            let mut count = 0i64;
            for d in 0..days {
                for p in 0..slots {
                    if at(c, d, p) == t {
                        count += 1;
                    }
                }
            }
            violations += (count - i64::from(inst.requirement(t, c))).unsigned_abs() as u32;
        }
    }

    let mut matches = vec![0u32; nt];
    for (t, m) in matches.iter_mut().enumerate() {
        for c in 0..nc {
            for d in 0..days {
                for p in 0..slots {
                    if at(c, d, p) == t && inst.prefers(t, d * slots + p) {
                        *m += 1;
                    }
                }
            }
        }
    }

    let scores = inst.scores().values();
    let mut f = 0.0;
    let mut max = 0.0;
    for t in 0..nt {
        f += scores[t] * f64::from(matches[t]);
        let mut load = 0u32;
        for c in 0..nc {
            load += inst.requirement(t, c);
        }
        max += scores[t] * f64::from(load);
    }

    Ok(EvaluationResult {
        conflicts,
        requirement_violations: violations,
        matches,
        f_satisfaction: f,
        max_satisfaction: max,
        feasible: conflicts == 0 && violations == 0 && f >= st,
    })
}

struct Search<'a> {
    inst: &'a Instance,
    cells: usize,
    /// `remaining[c][t]`: tokens of teacher `t` still to place in class `c`.
    remaining: Vec<Vec<u32>>,
    /// `busy[cell][t]`: teacher `t` already teaches some earlier class here.
    busy: Vec<Vec<bool>>,
    rows: Vec<Vec<usize>>,
    matches: Vec<u32>,
    best: Option<(f64, Vec<Vec<usize>>)>,
}

impl Search<'_> {
    fn dfs(&mut self, class: usize, cell: usize) {
        if class == self.rows.len() {
            let scores = self.inst.scores().values();
            let f: f64 = (0..scores.len())
                .map(|t| scores[t] * f64::from(self.matches[t]))
                .sum();
            // Strict improvement keeps the lexicographically first optimum.
            if self.best.as_ref().is_none_or(|(b, _)| f > *b) {
                self.best = Some((f, self.rows.clone()));
            }
            return;
        }
        let (next_class, next_cell) = if cell + 1 == self.cells {
            (class + 1, 0)
        } else {
            (class, cell + 1)
        };
        for t in 0..self.inst.teachers().len() {
            if self.remaining[class][t] == 0 || self.busy[cell][t] {
                continue;
            }
            let preferred = self.inst.prefers(t, cell);
            self.remaining[class][t] -= 1;
            self.busy[cell][t] = true;
            self.rows[class][cell] = t;
            if preferred {
                self.matches[t] += 1;
            }
            self.dfs(next_class, next_cell);
            if preferred {
                self.matches[t] -= 1;
            }
            self.busy[cell][t] = false;
            self.remaining[class][t] += 1;
        }
    }
}

/// Best conflict-free timetable by satisfaction, found by enumerating every
/// per-class arrangement in lexicographic order and pruning double bookings
/// as soon as they appear. Ties go to the lexicographically first genome.
///
/// Valid instances always admit a conflict-free timetable (no teacher has
/// more sessions than there are cells), so the search cannot come back
/// empty. Fails when the search space exceeds `limit`.
pub fn exhaustive_best(
    inst: &Instance,
    limit: u64,
    st: f64,
) -> Result<(Timetable, EvaluationResult)> {
    let space = count_space(inst);
    if space.total > BigUint::from(limit) {
        return Err(Error::SearchSpaceTooLarge {
            count: space.total.to_string(),
            limit,
        });
    }
    let nt = inst.teachers().len();
    let nc = inst.classes().len();
    let cells = inst.grid().cell_count();
    let mut search = Search {
        inst,
        cells,
        remaining: (0..nc)
            .map(|c| (0..nt).map(|t| inst.requirement(t, c)).collect())
            .collect(),
        busy: vec![vec![false; nt]; cells],
        rows: vec![vec![0; cells]; nc],
        matches: vec![0; nt],
        best: None,
    };
    search.dfs(0, 0);
    let (_, rows) = search.best.ok_or_else(|| {
        Error::Internal("exhaustive search found no conflict-free timetable".into())
    })?;
    let tt = Timetable::new(rows);
    let eval = verify(&tt, inst, st)?;
    Ok((tt, eval))
}

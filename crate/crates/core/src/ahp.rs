//! Analytic Hierarchy Process: pairwise comparison matrices, preference
//! vectors, criteria weights, teacher scores and the consistency check.
//!
//! Priority vectors use the column-normalise / row-average approximation of
//! the principal eigenvector. Attribute-derived matrices map "interval steps"
//! onto the odd Saaty levels `1, 3, 5, 7, 9`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance for unit-sum checks on priority vectors.
pub const UNIT_SUM_TOLERANCE: f64 = 1e-9;

/// Relative tolerance for the reciprocity check on explicit matrices.
pub const RECIPROCAL_TOLERANCE: f64 = 1e-12;

/// Judgments are acceptable when the consistency ratio is below this.
pub const CONSISTENCY_THRESHOLD: f64 = 0.1;

/// Saaty random consistency index, indexed by matrix order (1-based).
const RANDOM_INDEX: [f64; 10] = [0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49];

/// Preference intensity on the five-point Saaty scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SaatyLevel {
    Equal,
    Moderate,
    Strong,
    VeryStrong,
    Extreme,
}

impl SaatyLevel {
    pub const ALL: [SaatyLevel; 5] = [
        SaatyLevel::Equal,
        SaatyLevel::Moderate,
        SaatyLevel::Strong,
        SaatyLevel::VeryStrong,
        SaatyLevel::Extreme,
    ];

    pub fn value(self) -> u32 {
        match self {
            SaatyLevel::Equal => 1,
            SaatyLevel::Moderate => 3,
            SaatyLevel::Strong => 5,
            SaatyLevel::VeryStrong => 7,
            SaatyLevel::Extreme => 9,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }

    pub fn reciprocal(self) -> f64 {
        1.0 / self.as_f64()
    }

    /// Level for a difference of `steps` intervals: `2 * steps + 1`, capped at 9.
    pub fn from_steps(steps: usize) -> Self {
        Self::ALL[steps.min(4)]
    }

    pub fn from_value(value: u32) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.value() == value)
    }
}

impl fmt::Display for SaatyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Reciprocal positive comparison matrix over labelled entities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairwiseMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<f64>>,
}

impl PairwiseMatrix {
    /// Validates an explicitly supplied matrix: square, positive, unit
    /// diagonal and reciprocal within [`RECIPROCAL_TOLERANCE`].
    pub fn new(labels: Vec<String>, entries: Vec<Vec<f64>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::invalid("pairwise matrix needs at least one entity"));
        }
        if entries.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: entries.len(),
            });
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::invalid(format!(
                        "entry ({}, {}) = {v} is not a positive finite number",
                        labels[i], labels[j]
                    )));
                }
            }
            if (row[i] - 1.0).abs() > RECIPROCAL_TOLERANCE {
                return Err(Error::invalid(format!(
                    "diagonal entry for {} must be 1, got {}",
                    labels[i], row[i]
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let product = entries[i][j] * entries[j][i];
                if (product - 1.0).abs() > RECIPROCAL_TOLERANCE {
                    return Err(Error::invalid(format!(
                        "entries ({0}, {1}) = {2} and ({1}, {0}) = {3} are not reciprocal",
                        labels[i], labels[j], entries[i][j], entries[j][i]
                    )));
                }
            }
        }
        Ok(Self { labels, entries })
    }

    /// Builds a matrix from its strict upper triangle; the diagonal and
    /// lower triangle are filled in.
    #[allow(clippy::needless_range_loop)]
    pub fn from_upper(labels: Vec<String>, upper: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = labels.len();
        let mut entries = vec![vec![1.0; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = upper(i, j);
                entries[i][j] = v;
                entries[j][i] = 1.0 / v;
            }
        }
        Self::new(labels, entries)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.entries
    }

    /// Reorders entities so that new index `k` holds old entity `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&k| k >= n || std::mem::replace(&mut seen[k], true))
        {
            return Err(Error::invalid("not a permutation of the matrix entities"));
        }
        let labels = order.iter().map(|&k| self.labels[k].clone()).collect();
        let entries = order
            .iter()
            .map(|&r| order.iter().map(|&c| self.entries[r][c]).collect())
            .collect();
        Ok(Self { labels, entries })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    HigherPreferred,
    LowerPreferred,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CriterionKind {
    /// `k` strictly ascending boundaries split the real line into `k + 1`
    /// half-open intervals `(-inf, b0), [b0, b1), ..., [b_{k-1}, +inf)`.
    IntervalNumeric {
        boundaries: Vec<f64>,
        direction: Direction,
    },
    BinaryCategorical {
        preferred: String,
        other: String,
        level: SaatyLevel,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionSpec {
    pub name: String,
    pub kind: CriterionKind,
}

impl CriterionSpec {
    pub fn interval(
        name: impl Into<String>,
        boundaries: Vec<f64>,
        direction: Direction,
    ) -> Result<Self> {
        let name = name.into();
        if boundaries.iter().any(|b| !b.is_finite()) {
            return Err(Error::invalid(format!(
                "criterion `{name}`: boundaries must be finite"
            )));
        }
        if boundaries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "criterion `{name}`: boundaries must be strictly ascending"
            )));
        }
        Ok(Self {
            name,
            kind: CriterionKind::IntervalNumeric {
                boundaries,
                direction,
            },
        })
    }

    pub fn binary(
        name: impl Into<String>,
        preferred: impl Into<String>,
        other: impl Into<String>,
        level: SaatyLevel,
    ) -> Result<Self> {
        let (name, preferred, other) = (name.into(), preferred.into(), other.into());
        if preferred == other {
            return Err(Error::invalid(format!(
                "criterion `{name}`: the two categories must differ"
            )));
        }
        Ok(Self {
            name,
            kind: CriterionKind::BinaryCategorical {
                preferred,
                other,
                level,
            },
        })
    }
}

/// A single attribute value of one entity.
#[derive(Debug, Clone, PartialEq)]
pub enum AttributeValue {
    Number(f64),
    Category(String),
}

impl From<f64> for AttributeValue {
    fn from(v: f64) -> Self {
        AttributeValue::Number(v)
    }
}

impl From<&str> for AttributeValue {
    fn from(v: &str) -> Self {
        AttributeValue::Category(v.to_owned())
    }
}

fn interval_index(value: f64, boundaries: &[f64]) -> usize {
    boundaries.iter().take_while(|&&b| b <= value).count()
}

/// Derives a pairwise comparison matrix from per-entity attribute values.
///
/// Interval criteria compare interval indices: a difference of `d` steps in
/// the preferred direction yields level `2d + 1` (capped at 9). Binary
/// criteria give `level` to the preferred category over the other one.
pub fn build_pairwise(
    labels: &[String],
    values: &[AttributeValue],
    spec: &CriterionSpec,
) -> Result<PairwiseMatrix> {
    if labels.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: labels.len(),
            actual: values.len(),
        });
    }
    // Signed "rank" per entity; higher rank is preferred.
    let ranks: Vec<i64> = match &spec.kind {
        CriterionKind::IntervalNumeric {
            boundaries,
            direction,
        } => values
            .iter()
            .map(|v| match v {
                AttributeValue::Number(x) if x.is_finite() => {
                    let idx = interval_index(*x, boundaries) as i64;
                    Ok(match direction {
                        Direction::HigherPreferred => idx,
                        Direction::LowerPreferred => -idx,
                    })
                }
                AttributeValue::Number(x) => Err(Error::invalid(format!(
                    "criterion `{}`: value {x} falls in no interval",
                    spec.name
                ))),
                AttributeValue::Category(c) => Err(Error::invalid(format!(
                    "criterion `{}` is numeric, got category `{c}`",
                    spec.name
                ))),
            })
            .collect::<Result<_>>()?,
        CriterionKind::BinaryCategorical {
            preferred, other, ..
        } => values
            .iter()
            .map(|v| match v {
                AttributeValue::Category(c) if c == preferred => Ok(1),
                AttributeValue::Category(c) if c == other => Ok(0),
                AttributeValue::Category(c) => Err(Error::UnknownCategory {
                    criterion: spec.name.clone(),
                    label: c.clone(),
                }),
                AttributeValue::Number(x) => Err(Error::UnknownCategory {
                    criterion: spec.name.clone(),
                    label: x.to_string(),
                }),
            })
            .collect::<Result<_>>()?,
    };

    let level_for = |diff: i64| -> f64 {
        let steps = diff.unsigned_abs() as usize;
        let level = match &spec.kind {
            CriterionKind::IntervalNumeric { .. } => SaatyLevel::from_steps(steps),
            CriterionKind::BinaryCategorical { level, .. } => {
                if steps == 0 {
                    SaatyLevel::Equal
                } else {
                    *level
                }
            }
        };
        if diff >= 0 {
            level.as_f64()
        } else {
            level.reciprocal()
        }
    };

    let n = labels.len();
    let entries = (0..n)
        .map(|i| (0..n).map(|j| level_for(ranks[i] - ranks[j])).collect())
        .collect();
    PairwiseMatrix::new(labels.to_vec(), entries)
}

macro_rules! unit_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Serialize)]
        #[serde(transparent)]
        pub struct $name(Vec<f64>);

        impl $name {
            /// Wraps values that must be non-negative and sum to one.
            pub fn new(values: Vec<f64>) -> Result<Self> {
                if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
                    return Err(Error::invalid(concat!(stringify!($name), " entries must be non-negative")));
                }
                let sum: f64 = values.iter().sum();
                if (sum - 1.0).abs() > UNIT_SUM_TOLERANCE {
                    return Err(Error::invalid(format!(
                        concat!(stringify!($name), " must sum to 1, got {}"),
                        sum
                    )));
                }
                Ok(Self(values))
            }

            pub fn values(&self) -> &[f64] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn into_inner(self) -> Vec<f64> {
                self.0
            }
        }

        impl std::ops::Index<usize> for $name {
            type Output = f64;

            fn index(&self, i: usize) -> &f64 {
                &self.0[i]
            }
        }
    };
}

unit_vector!(
    /// Relative priority of each alternative under one criterion.
    PreferenceVector
);
unit_vector!(
    /// Relative importance of each criterion.
    WeightVector
);
unit_vector!(
    /// Overall teacher score `S_i`.
    ScoreVector
);

fn column_normalised_row_average(m: &PairwiseMatrix) -> Vec<f64> {
    let n = m.len();
    let col_sums: Vec<f64> = (0..n).map(|j| (0..n).map(|i| m.get(i, j)).sum()).collect();
    (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) / col_sums[j]).sum::<f64>() / n as f64)
        .collect()
}

/// Priority vector of a comparison matrix: divide each column by its sum,
/// then average each row.
pub fn preference_vector(m: &PairwiseMatrix) -> PreferenceVector {
    PreferenceVector(column_normalised_row_average(m))
}

/// Criteria weights; same arithmetic as [`preference_vector`].
pub fn criteria_weights(m: &PairwiseMatrix) -> WeightVector {
    WeightVector(column_normalised_row_average(m))
}

/// `S_i = sum_c prefs[c][i] * w[c]`, one preference vector per criterion.
pub fn scores(prefs: &[PreferenceVector], weights: &WeightVector) -> Result<ScoreVector> {
    if prefs.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            actual: prefs.len(),
        });
    }
    let n = prefs.first().map_or(0, PreferenceVector::len);
    if let Some(bad) = prefs.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: bad.len(),
        });
    }
    let values = (0..n)
        .map(|i| {
            prefs
                .iter()
                .zip(weights.values())
                .map(|(p, w)| p[i] * w)
                .sum()
        })
        .collect();
    Ok(ScoreVector(values))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub lambda_max: f64,
    pub ci: f64,
    pub cr: f64,
    pub consistent: bool,
}

/// Saaty consistency ratio with `lambda_max` estimated from the
/// approximate priority vector. Orders 1 and 2 are always consistent.
pub fn consistency(m: &PairwiseMatrix) -> Result<ConsistencyReport> {
    let n = m.len();
    if n > RANDOM_INDEX.len() {
        return Err(Error::UnsupportedDimension(n));
    }
    let v = column_normalised_row_average(m);
    let lambda_max = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j) * v[j]).sum::<f64>() / v[i])
        .sum::<f64>()
        / n as f64;
    let (ci, cr) = if n <= 2 {
        (0.0, 0.0)
    } else {
        let ci = (lambda_max - n as f64) / (n as f64 - 1.0);
        (ci, ci / RANDOM_INDEX[n - 1])
    };
    Ok(ConsistencyReport {
        lambda_max,
        ci,
        cr,
        consistent: cr < CONSISTENCY_THRESHOLD,
    })
}

/// A criterion together with the alternative-level matrix it produced.
#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub name: String,
    pub matrix: PairwiseMatrix,
    pub preferences: PreferenceVector,
    pub consistency: ConsistencyReport,
}

/// Everything the ranking step produces.
#[derive(Debug, Clone, Serialize)]
pub struct Ranking {
    pub criteria: Vec<CriterionOutcome>,
    pub criteria_matrix: PairwiseMatrix,
    pub weights: WeightVector,
    pub weights_consistency: ConsistencyReport,
    pub scores: ScoreVector,
}

impl Ranking {
    pub fn is_consistent(&self) -> bool {
        self.weights_consistency.consistent
            && self.criteria.iter().all(|c| c.consistency.consistent)
    }
}

/// Full hierarchy: one alternative-level matrix per criterion (in the same
/// order as the criteria matrix labels) plus the criteria-level matrix.
pub fn rank(
    criteria: Vec<(String, PairwiseMatrix)>,
    criteria_matrix: PairwiseMatrix,
) -> Result<Ranking> {
    if criteria.len() != criteria_matrix.len() {
        return Err(Error::DimensionMismatch {
            expected: criteria_matrix.len(),
            actual: criteria.len(),
        });
    }
    for ((name, _), label) in criteria.iter().zip(criteria_matrix.labels()) {
        if name != label {
            return Err(Error::invalid(format!(
                "criteria matrix lists `{label}` where `{name}` was expected"
            )));
        }
    }
    let criteria = criteria
        .into_iter()
        .map(|(name, matrix)| {
            Ok(CriterionOutcome {
                preferences: preference_vector(&matrix),
                consistency: consistency(&matrix)?,
                name,
                matrix,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let weights = criteria_weights(&criteria_matrix);
    let weights_consistency = consistency(&criteria_matrix)?;
    let prefs: Vec<PreferenceVector> = criteria.iter().map(|c| c.preferences.clone()).collect();
    let scores = scores(&prefs, &weights)?;
    Ok(Ranking {
        criteria,
        criteria_matrix,
        weights,
        weights_consistency,
        scores,
    })
}

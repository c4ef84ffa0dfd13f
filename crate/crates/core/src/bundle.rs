//! Loading a project bundle from disk.
//!
//! A bundle is a directory holding five files:
//!
//! | file               | contents                                              |
//! |--------------------|-------------------------------------------------------|
//! | `teachers.csv`     | `id,<attribute>...` e.g. `id,age,gender,contract`     |
//! | `requirements.csv` | `teacher_id,class_id,sessions`                        |
//! | `preferences.csv`  | `teacher_id,day,slot`, one row per preferred cell     |
//! | `criteria.csv`     | criterion declarations plus a `[weights]` matrix      |
//! | `config.toml`      | grid size, threshold and GA parameters                |
//!
//! Tables are comma separated UTF-8 with a required header row and `#`
//! comments. Days and slots are 0-indexed.
//!
//! The criteria file starts with a `name,kind,params` table. `kind` is one of
//!
//! * `interval` with params `higher|lower b1 b2 ...` (ascending boundaries),
//! * `binary` with params `<preferred> <other> <level>`,
//! * `explicit`, whose matrix follows in a `[matrix <name>]` section.
//!
//! A `[weights]` section holds the criteria-level comparison matrix with a
//! `criterion,<name>...` header. Matrix entries accept fractions (`1/5`).
//! A criterion draws its values from the teachers column of the same name;
//! `load` falls back to the load derived from the requirements file.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ahp::{
    self, AttributeValue, CriterionSpec, Direction, PairwiseMatrix, Ranking, SaatyLevel,
    ScoreVector,
};
use crate::error::{Error, Result};
use crate::ga::GaConfig;
use crate::timetable::{Instance, TimeGrid, Timetable};

pub const TEACHERS_FILE: &str = "teachers.csv";
pub const REQUIREMENTS_FILE: &str = "requirements.csv";
pub const PREFERENCES_FILE: &str = "preferences.csv";
pub const CRITERIA_FILE: &str = "criteria.csv";
pub const CONFIG_FILE: &str = "config.toml";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundlePaths {
    pub teachers: PathBuf,
    pub requirements: PathBuf,
    pub preferences: PathBuf,
    pub criteria: PathBuf,
    pub config: PathBuf,
}

impl BundlePaths {
    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        let dir = dir.as_ref();
        Self {
            teachers: dir.join(TEACHERS_FILE),
            requirements: dir.join(REQUIREMENTS_FILE),
            preferences: dir.join(PREFERENCES_FILE),
            criteria: dir.join(CRITERIA_FILE),
            config: dir.join(CONFIG_FILE),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeacherRecord {
    pub id: String,
    pub attributes: BTreeMap<String, AttributeValue>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CriterionSource {
    Derived(CriterionSpec),
    Explicit(PairwiseMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub name: String,
    pub source: CriterionSource,
    /// Declaration line in the criteria file.
    pub line: u64,
}

/// Contents of `config.toml`. Unset GA fields take [`GaConfig`] defaults.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct BundleConfig {
    pub days: usize,
    pub slots_per_day: usize,
    pub st: Option<f64>,
    pub population_size: Option<usize>,
    pub max_generations: Option<usize>,
    pub crossover_rate: Option<f64>,
    pub mutation_rate: Option<f64>,
    pub tournament_size: Option<usize>,
    pub elitism_count: Option<usize>,
    pub seed: Option<u64>,
    pub continue_to_budget: Option<bool>,
}

impl BundleConfig {
    pub fn ga_config(&self) -> GaConfig {
        let d = GaConfig::default();
        GaConfig {
            population_size: self.population_size.unwrap_or(d.population_size),
            max_generations: self.max_generations.unwrap_or(d.max_generations),
            crossover_rate: self.crossover_rate.unwrap_or(d.crossover_rate),
            mutation_rate: self.mutation_rate.unwrap_or(d.mutation_rate),
            tournament_size: self.tournament_size.unwrap_or(d.tournament_size),
            elitism_count: self.elitism_count.unwrap_or(d.elitism_count),
            seed: self.seed.unwrap_or(d.seed),
            st: self.st.unwrap_or(d.st),
            continue_to_budget: self.continue_to_budget.unwrap_or(d.continue_to_budget),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProjectBundle {
    pub paths: BundlePaths,
    pub teachers: Vec<TeacherRecord>,
    pub classes: Vec<String>,
    /// `requirements[t][c]`
    pub requirements: Vec<Vec<u32>>,
    /// `preferences[t][cell]`
    pub preferences: Vec<Vec<bool>>,
    pub criteria: Vec<Criterion>,
    pub criteria_matrix: PairwiseMatrix,
    pub config: BundleConfig,
    pub grid: TimeGrid,
    pub warnings: Vec<String>,
}

impl ProjectBundle {
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self> {
        Self::load(BundlePaths::in_dir(dir))
    }

    pub fn load(paths: BundlePaths) -> Result<Self> {
        let mut warnings = Vec::new();
        let (config, config_text) = parse_config(&paths.config)?;
        let config_error = |key: &str, e: Error| {
            Error::parse(&paths.config, key_line(&config_text, key), e.to_string())
        };
        let grid = TimeGrid::new(config.days, config.slots_per_day).map_err(|e| {
            let key = if config.days == 0 {
                "days"
            } else {
                "slots_per_day"
            };
            config_error(key, e)
        })?;
        config.ga_config().validate().map_err(|e| {
            let message = e.to_string();
            // The offending key is the first one the message names.
            let key = GA_KEYS
                .iter()
                .filter_map(|k| message.find(k).map(|at| (at, *k)))
                .min()
                .map_or("", |(_, k)| k);
            config_error(key, e)
        })?;
        let teachers = parse_teachers(&paths.teachers)?;
        let ids: Vec<String> = teachers.iter().map(|t| t.id.clone()).collect();
        let (classes, requirements) = parse_requirements(&paths.requirements, &ids, grid)?;
        let preferences = parse_preferences(&paths.preferences, &ids, grid, &mut warnings)?;
        let (criteria, criteria_matrix) = parse_criteria(&paths.criteria, &ids)?;
        let bundle = Self {
            paths,
            teachers,
            classes,
            requirements,
            preferences,
            criteria,
            criteria_matrix,
            config,
            grid,
            warnings,
        };
        // Attribute lookups and matrix construction are checked up front.
        bundle.criterion_matrices()?;
        Ok(bundle)
    }

    pub fn teacher_ids(&self) -> Vec<String> {
        self.teachers.iter().map(|t| t.id.clone()).collect()
    }

    pub fn loads(&self) -> Vec<u32> {
        self.requirements.iter().map(|r| r.iter().sum()).collect()
    }

    fn attribute_values(&self, criterion: &Criterion) -> Result<Vec<AttributeValue>> {
        let name = criterion.name.as_str();
        let loads = self.loads();
        self.teachers
            .iter()
            .zip(loads)
            .map(|(t, load)| match t.attributes.get(name) {
                Some(v) => Ok(v.clone()),
                None if name == "load" => Ok(AttributeValue::Number(f64::from(load))),
                None => Err(Error::parse(
                    &self.paths.criteria,
                    criterion.line,
                    format!(
                        "criterion `{name}` has no matching column in {}",
                        self.paths.teachers.display()
                    ),
                )),
            })
            .collect()
    }

    /// Alternative-level matrix for every criterion, in declaration order.
    pub fn criterion_matrices(&self) -> Result<Vec<(String, PairwiseMatrix)>> {
        let labels = self.teacher_ids();
        self.criteria
            .iter()
            .map(|c| {
                let m = match &c.source {
                    CriterionSource::Explicit(m) => m.clone(),
                    CriterionSource::Derived(spec) => {
                        let values = self.attribute_values(c)?;
                        ahp::build_pairwise(&labels, &values, spec).map_err(|e| {
                            Error::parse(&self.paths.criteria, c.line, e.to_string())
                        })?
                    }
                };
                Ok((c.name.clone(), m))
            })
            .collect()
    }

    pub fn ranking(&self) -> Result<Ranking> {
        ahp::rank(self.criterion_matrices()?, self.criteria_matrix.clone())
    }

    pub fn instance(&self, scores: ScoreVector) -> Result<Instance> {
        Instance::new(
            self.grid,
            self.teacher_ids(),
            self.classes.clone(),
            self.requirements.clone(),
            self.preferences.clone(),
            scores,
        )
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Parsed CSV table: header plus `(line, fields)` rows.
#[derive(Debug)]
struct Table {
    header: Vec<String>,
    rows: Vec<(u64, Vec<String>)>,
}

fn parse_table(path: &Path, text: &str, first_line: u64) -> Result<Option<Table>> {
    let mut header: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (offset, raw) in text.lines().enumerate() {
        let line = first_line + offset as u64;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(trimmed.as_bytes());
        let record = match reader.records().next() {
            Some(record) => record.map_err(|e| Error::parse(path, line, e.to_string()))?,
            None => continue,
        };
        let fields: Vec<String> = record.iter().map(str::to_owned).collect();
        if fields.iter().all(String::is_empty) {
            continue;
        }
        match header {
            None => header = Some(fields),
            Some(ref h) => {
                if fields.len() != h.len() {
                    return Err(Error::parse(
                        path,
                        line,
                        format!("expected {} fields, found {}", h.len(), fields.len()),
                    ));
                }
                rows.push((line, fields));
            }
        }
    }
    Ok(header.map(|header| Table { header, rows }))
}

fn expect_header(path: &Path, table: &Table, expected: &[&str], line: u64) -> Result<()> {
    if table.header != expected {
        return Err(Error::parse(
            path,
            line,
            format!(
                "expected header `{}`, found `{}`",
                expected.join(","),
                table.header.join(",")
            ),
        ));
    }
    Ok(())
}

fn require_table(path: &Path, text: &str) -> Result<Table> {
    parse_table(path, text, 1)?.ok_or_else(|| Error::parse(path, 1, "missing header row"))
}

const GA_KEYS: [&str; 7] = [
    "population_size",
    "max_generations",
    "crossover_rate",
    "mutation_rate",
    "tournament_size",
    "elitism_count",
    "st",
];

fn parse_config(path: &Path) -> Result<(BundleConfig, String)> {
    let text = read(path)?;
    let config = toml::from_str(&text).map_err(|e| {
        let line = e
            .span()
            .map_or(1, |s| text[..s.start].matches('\n').count() as u64 + 1);
        Error::parse(path, line, e.message().to_owned())
    })?;
    Ok((config, text))
}

/// Line on which `key` is assigned, or 1 when it is not set explicitly.
fn key_line(text: &str, key: &str) -> u64 {
    text.lines()
        .position(|l| l.split('=').next().is_some_and(|k| k.trim() == key))
        .map_or(1, |i| i as u64 + 1)
}

fn parse_number(path: &Path, line: u64, field: &str, what: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::parse(path, line, format!("{what}: `{field}` is not a number")))
}

fn parse_count<T: std::str::FromStr>(path: &Path, line: u64, field: &str, what: &str) -> Result<T> {
    field.parse::<T>().map_err(|_| {
        Error::parse(
            path,
            line,
            format!("{what}: `{field}` is not a non-negative integer"),
        )
    })
}

fn parse_teachers(path: &Path) -> Result<Vec<TeacherRecord>> {
    let text = read(path)?;
    let table = require_table(path, &text)?;
    if table.header.first().map(String::as_str) != Some("id") {
        return Err(Error::parse(path, 1, "first column must be `id`"));
    }
    let mut seen = HashSet::new();
    let mut teachers = Vec::with_capacity(table.rows.len());
    for (line, fields) in &table.rows {
        let id = fields[0].clone();
        if id.is_empty() {
            return Err(Error::parse(path, *line, "empty teacher id"));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::parse(
                path,
                *line,
                format!("duplicate teacher `{id}`"),
            ));
        }
        let mut attributes = BTreeMap::new();
        for (name, raw) in table.header.iter().zip(fields).skip(1) {
            let allowed: Option<&[&str]> = match name.as_str() {
                "gender" => Some(&["M", "F"]),
                "contract" => Some(&["full", "part"]),
                _ => None,
            };
            if let Some(allowed) = allowed {
                if !allowed.contains(&raw.as_str()) {
                    return Err(Error::parse(
                        path,
                        *line,
                        format!("{name} must be one of {}, got `{raw}`", allowed.join("/")),
                    ));
                }
            }
            let value = match raw.parse::<f64>() {
                Ok(v) if v.is_finite() => AttributeValue::Number(v),
                _ => AttributeValue::Category(raw.clone()),
            };
            attributes.insert(name.clone(), value);
        }
        teachers.push(TeacherRecord { id, attributes });
    }
    if teachers.is_empty() {
        return Err(Error::parse(path, 1, "no teachers declared"));
    }
    Ok(teachers)
}

fn teacher_lookup(path: &Path, line: u64, ids: &HashMap<&str, usize>, id: &str) -> Result<usize> {
    ids.get(id)
        .copied()
        .ok_or_else(|| Error::parse(path, line, format!("unknown teacher `{id}`")))
}

fn parse_requirements(
    path: &Path,
    teachers: &[String],
    grid: TimeGrid,
) -> Result<(Vec<String>, Vec<Vec<u32>>)> {
    let text = read(path)?;
    let table = require_table(path, &text)?;
    expect_header(path, &table, &["teacher_id", "class_id", "sessions"], 1)?;
    let ids: HashMap<&str, usize> = teachers
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_str(), i))
        .collect();
    let mut classes: Vec<String> = Vec::new();
    let mut class_lines: Vec<u64> = Vec::new();
    let mut entries: HashMap<(usize, usize), u32> = HashMap::new();
    let mut teacher_lines = vec![1u64; teachers.len()];
    for (line, f) in &table.rows {
        let t = teacher_lookup(path, *line, &ids, &f[0])?;
        teacher_lines[t] = *line;
        if f[1].is_empty() {
            return Err(Error::parse(path, *line, "empty class id"));
        }
        let c = match classes.iter().position(|c| *c == f[1]) {
            Some(c) => c,
            None => {
                classes.push(f[1].clone());
                class_lines.push(*line);
                classes.len() - 1
            }
        };
        let sessions: u32 = parse_count(path, *line, &f[2], "sessions")?;
        if entries.insert((t, c), sessions).is_some() {
            return Err(Error::parse(
                path,
                *line,
                format!("duplicate requirement for {} in {}", f[0], f[1]),
            ));
        }
    }
    let mut requirements = vec![vec![0u32; classes.len()]; teachers.len()];
    for ((t, c), n) in entries {
        requirements[t][c] = n;
    }
    let cells = grid.cell_count() as u64;
    for (c, class) in classes.iter().enumerate() {
        let total: u64 = requirements.iter().map(|r| u64::from(r[c])).sum();
        if total != cells {
            return Err(Error::parse(
                path,
                class_lines[c],
                format!("class {class}: sessions sum to {total} but the grid has {cells} cells"),
            ));
        }
    }
    for (t, row) in requirements.iter().enumerate() {
        let load: u64 = row.iter().map(|&n| u64::from(n)).sum();
        if load > cells {
            return Err(Error::parse(
                path,
                teacher_lines[t],
                format!(
                    "teacher {} has {load} sessions but the grid has only {cells} cells",
                    teachers[t]
                ),
            ));
        }
    }
    Ok((classes, requirements))
}

fn parse_preferences(
    path: &Path,
    teachers: &[String],
    grid: TimeGrid,
    warnings: &mut Vec<String>,
) -> Result<Vec<Vec<bool>>> {
    let text = read(path)?;
    let mut prefs = vec![vec![false; grid.cell_count()]; teachers.len()];
    let Some(table) = parse_table(path, &text, 1)? else {
        warnings.push(format!(
            "{}: empty preferences file, no cell is preferred",
            path.display()
        ));
        return Ok(prefs);
    };
    expect_header(path, &table, &["teacher_id", "day", "slot"], 1)?;
    if table.rows.is_empty() {
        warnings.push(format!(
            "{}: no preferences listed, no cell is preferred",
            path.display()
        ));
    }
    let ids: HashMap<&str, usize> = teachers
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_str(), i))
        .collect();
    for (line, f) in &table.rows {
        let t = teacher_lookup(path, *line, &ids, &f[0])?;
        let day: usize = parse_count(path, *line, &f[1], "day")?;
        let slot: usize = parse_count(path, *line, &f[2], "slot")?;
        if day >= grid.days() || slot >= grid.slots_per_day() {
            return Err(Error::parse(
                path,
                *line,
                format!(
                    "cell ({day}, {slot}) is outside the {}x{} grid",
                    grid.days(),
                    grid.slots_per_day()
                ),
            ));
        }
        let cell = &mut prefs[t][grid.cell(day, slot)];
        if *cell {
            return Err(Error::parse(
                path,
                *line,
                format!("duplicate preference {},{day},{slot}", f[0]),
            ));
        }
        *cell = true;
    }
    Ok(prefs)
}

/// `"3"`, `"0.5"` or `"1/5"`.
pub fn parse_ratio(s: &str) -> Option<f64> {
    let v = match s.split_once('/') {
        Some((n, d)) => n.trim().parse::<f64>().ok()? / d.trim().parse::<f64>().ok()?,
        None => s.parse::<f64>().ok()?,
    };
    (v.is_finite() && v > 0.0).then_some(v)
}

struct Section {
    name: String,
    first_line: u64,
    body: String,
}

fn split_sections(text: &str) -> Vec<Section> {
    let mut sections = vec![Section {
        name: String::new(),
        first_line: 1,
        body: String::new(),
    }];
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if let Some(name) = trimmed.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            sections.push(Section {
                name: name.trim().to_owned(),
                first_line: i as u64 + 2,
                body: String::new(),
            });
        } else {
            let s = sections.last_mut().expect("non-empty");
            s.body.push_str(line);
            s.body.push('\n');
        }
    }
    sections
}

fn parse_matrix_section(
    path: &Path,
    section: &Section,
    corner: &str,
    expected: &[String],
) -> Result<PairwiseMatrix> {
    let table = parse_table(path, &section.body, section.first_line)?.ok_or_else(|| {
        Error::parse(
            path,
            section.first_line,
            format!("[{}] is empty", section.name),
        )
    })?;
    let mut header = vec![corner.to_owned()];
    header.extend(expected.iter().cloned());
    if table.header != header {
        return Err(Error::parse(
            path,
            section.first_line,
            format!("[{}] header must be `{}`", section.name, header.join(",")),
        ));
    }
    if table.rows.len() != expected.len() {
        return Err(Error::parse(
            path,
            section.first_line,
            format!(
                "[{}] needs {} rows, found {}",
                section.name,
                expected.len(),
                table.rows.len()
            ),
        ));
    }
    let mut entries = Vec::with_capacity(expected.len());
    for ((line, f), label) in table.rows.iter().zip(expected) {
        if f[0] != *label {
            return Err(Error::parse(
                path,
                *line,
                format!("expected row `{label}`, found `{}`", f[0]),
            ));
        }
        let row = f[1..]
            .iter()
            .map(|v| {
                parse_ratio(v).ok_or_else(|| {
                    Error::parse(path, *line, format!("`{v}` is not a positive ratio"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let last = table.rows.last().map_or(section.first_line, |(l, _)| *l);
    PairwiseMatrix::new(expected.to_vec(), entries)
        .map_err(|e| Error::parse(path, last, format!("[{}] {e}", section.name)))
}

fn parse_criteria(path: &Path, teachers: &[String]) -> Result<(Vec<Criterion>, PairwiseMatrix)> {
    let text = read(path)?;
    let sections = split_sections(&text);
    let decl = parse_table(path, &sections[0].body, 1)?
        .ok_or_else(|| Error::parse(path, 1, "missing criterion declarations"))?;
    expect_header(path, &decl, &["name", "kind", "params"], 1)?;

    let mut by_name: HashMap<&str, &Section> = HashMap::new();
    for s in &sections[1..] {
        if by_name.insert(s.name.as_str(), s).is_some() {
            return Err(Error::parse(
                path,
                s.first_line - 1,
                format!("duplicate section [{}]", s.name),
            ));
        }
    }

    let mut criteria = Vec::new();
    let mut names = Vec::new();
    for (line, f) in &decl.rows {
        let (name, kind, params) = (&f[0], f[1].as_str(), &f[2]);
        if name.is_empty() || names.contains(name) {
            return Err(Error::parse(
                path,
                *line,
                format!("criterion name `{name}` is empty or repeated"),
            ));
        }
        let params: Vec<&str> = params.split_whitespace().collect();
        let err = |m: String| Error::parse(path, *line, m);
        let source = match kind {
            "interval" => {
                let direction = match params.first() {
                    Some(&"higher") => Direction::HigherPreferred,
                    Some(&"lower") => Direction::LowerPreferred,
                    _ => {
                        return Err(err(format!(
                            "{name}: interval params start with `higher` or `lower`"
                        )))
                    }
                };
                let bounds = params[1..]
                    .iter()
                    .map(|b| parse_number(path, *line, b, name))
                    .collect::<Result<Vec<_>>>()?;
                CriterionSource::Derived(
                    CriterionSpec::interval(name.clone(), bounds, direction)
                        .map_err(|e| err(e.to_string()))?,
                )
            }
            "binary" => {
                let [preferred, other, level] = params[..] else {
                    return Err(err(format!(
                        "{name}: binary params are `<preferred> <other> <level>`"
                    )));
                };
                let level = level
                    .parse()
                    .ok()
                    .and_then(SaatyLevel::from_value)
                    .ok_or_else(|| {
                        err(format!(
                            "{name}: level `{level}` is not one of 1, 3, 5, 7, 9"
                        ))
                    })?;
                CriterionSource::Derived(
                    CriterionSpec::binary(name.clone(), preferred, other, level)
                        .map_err(|e| err(e.to_string()))?,
                )
            }
            "explicit" => {
                let key = format!("matrix {name}");
                let section = by_name.remove(key.as_str()).ok_or_else(|| {
                    err(format!(
                        "{name}: explicit criterion needs a [{key}] section"
                    ))
                })?;
                CriterionSource::Explicit(parse_matrix_section(path, section, "teacher", teachers)?)
            }
            other => return Err(err(format!("unknown criterion kind `{other}`"))),
        };
        names.push(name.clone());
        criteria.push(Criterion {
            name: name.clone(),
            source,
            line: *line,
        });
    }
    if criteria.is_empty() {
        return Err(Error::parse(path, 1, "no criteria declared"));
    }
    let weights = by_name
        .remove("weights")
        .ok_or_else(|| Error::parse(path, 1, "missing [weights] section"))?;
    let matrix = parse_matrix_section(path, weights, "criterion", &names)?;
    if let Some((name, s)) = by_name.into_iter().next() {
        return Err(Error::parse(
            path,
            s.first_line - 1,
            format!("unexpected section [{name}]"),
        ));
    }
    Ok((criteria, matrix))
}

/// Serialises a timetable as `class_id,day,slot,teacher_id` rows in class,
/// day, slot order.
pub fn write_timetable(tt: &Timetable, inst: &Instance) -> String {
    let grid = inst.grid();
    let mut out = String::from("class_id,day,slot,teacher_id\n");
    for (c, class) in inst.classes().iter().enumerate() {
        for cell in 0..grid.cell_count() {
            let (d, p) = grid.day_slot(cell);
            out.push_str(&format!(
                "{class},{d},{p},{}\n",
                inst.teachers()[tt.teacher_at(c, cell)]
            ));
        }
    }
    out
}

pub fn read_timetable(path: &Path, inst: &Instance) -> Result<Timetable> {
    let text = read(path)?;
    parse_timetable(path, &text, inst)
}

pub fn parse_timetable(path: &Path, text: &str, inst: &Instance) -> Result<Timetable> {
    let table = require_table(path, text)?;
    expect_header(path, &table, &["class_id", "day", "slot", "teacher_id"], 1)?;
    let grid = inst.grid();
    let mut cells: Vec<Vec<Option<usize>>> =
        vec![vec![None; grid.cell_count()]; inst.classes().len()];
    for (line, f) in &table.rows {
        let c = inst
            .class_index(&f[0])
            .ok_or_else(|| Error::parse(path, *line, format!("unknown class `{}`", f[0])))?;
        let day: usize = parse_count(path, *line, &f[1], "day")?;
        let slot: usize = parse_count(path, *line, &f[2], "slot")?;
        if day >= grid.days() || slot >= grid.slots_per_day() {
            return Err(Error::parse(
                path,
                *line,
                format!(
                    "cell ({day}, {slot}) is outside the {}x{} grid",
                    grid.days(),
                    grid.slots_per_day()
                ),
            ));
        }
        let t = inst
            .teacher_index(&f[3])
            .ok_or_else(|| Error::parse(path, *line, format!("unknown teacher `{}`", f[3])))?;
        let slot_ref = &mut cells[c][grid.cell(day, slot)];
        if slot_ref.replace(t).is_some() {
            return Err(Error::parse(
                path,
                *line,
                format!("cell {},{day},{slot} assigned twice", f[0]),
            ));
        }
    }
    let rows = cells
        .into_iter()
        .enumerate()
        .map(|(c, row)| {
            row.into_iter()
                .enumerate()
                .map(|(cell, t)| {
                    t.ok_or_else(|| {
                        let (d, p) = grid.day_slot(cell);
                        Error::parse(
                            path,
                            1,
                            format!("cell {},{d},{p} has no teacher", inst.classes()[c]),
                        )
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Timetable::new(rows))
}

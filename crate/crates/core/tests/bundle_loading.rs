mod common;

use std::fs;
use std::path::Path;

use ahpga::ahp;
use ahpga::bundle::{self, CriterionSource, ProjectBundle};
use ahpga::timetable::TimeGrid;
use ahpga::Error;

use common::*;

/// Copies a fixture bundle into a fresh temporary directory.
fn copy_bundle(src: &Path) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    dir
}

#[test]
fn school_fixture_loads() {
    let b = ProjectBundle::load_dir(school_dir()).unwrap();
    assert_eq!(b.grid, TimeGrid::new(3, 4).unwrap());
    assert_eq!(b.teacher_ids(), labels());
    assert_eq!(b.classes, ["C1", "C2"]);
    assert_eq!(b.loads(), LOADS);
    assert_eq!(b.preferences.iter().flatten().filter(|&&p| p).count(), 45);
    assert!(b.warnings.is_empty());
    let names: Vec<&str> = b.criteria.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(names, CRITERIA);
    assert!(b
        .criteria
        .iter()
        .all(|c| matches!(c.source, CriterionSource::Derived(_))));
}

#[test]
fn school_matrices_match_reference() {
    let b = ProjectBundle::load_dir(school_dir()).unwrap();
    let matrices = b.criterion_matrices().unwrap();
    for ((name, m), (_, _, expected)) in matrices.iter().zip(criterion_cases()) {
        for (i, row) in expected.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                assert_eq!(m.get(i, j), ratio(r), "{name}[{i}][{j}]");
            }
        }
    }
    for (i, row) in CRITERIA_MATRIX.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            assert_eq!(b.criteria_matrix.get(i, j), ratio(r));
        }
    }
}

#[test]
fn school_preferences_pass_cross_checks() {
    let b = ProjectBundle::load_dir(school_dir()).unwrap();
    let inst = b.instance(reference_scores()).unwrap();
    let partial = bundle::read_timetable(&school_dir().join("partial_match.csv"), &inst).unwrap();
    let e = ahpga::timetable::evaluate(&partial, &inst, 4.0).unwrap();
    assert_eq!((e.conflicts, e.requirement_violations), (0, 0));
    assert_eq!(e.matches, PARTIAL_MATCHES);
    let full = bundle::read_timetable(&school_dir().join("full_match.csv"), &inst).unwrap();
    let e = ahpga::timetable::evaluate(&full, &inst, 0.0).unwrap();
    assert_eq!((e.conflicts, e.requirement_violations), (0, 0));
    assert_eq!(e.matches, LOADS);
    assert!((e.f_satisfaction - e.max_satisfaction).abs() < 1e-12);
}

#[test]
fn empty_preferences_warn() {
    for contents in ["", "# nothing here\n", "teacher_id,day,slot\n"] {
        let dir = copy_bundle(&tiny_dir());
        fs::write(dir.path().join(bundle::PREFERENCES_FILE), contents).unwrap();
        let b = ProjectBundle::load_dir(dir.path()).unwrap();
        assert_eq!(b.warnings.len(), 1, "{contents:?}");
        assert!(b.warnings[0].contains("preferences.csv"));
        assert!(b.preferences.iter().flatten().all(|&p| !p));
    }
}

#[test]
fn underfilled_class_is_named() {
    let dir = copy_bundle(&school_dir());
    let path = dir.path().join(bundle::REQUIREMENTS_FILE);
    let text = fs::read_to_string(&path)
        .unwrap()
        .replace("T6,C2,1", "T6,C2,0");
    fs::write(&path, text).unwrap();
    let err = ProjectBundle::load_dir(dir.path()).unwrap_err().to_string();
    assert!(
        err.contains("class C2") && err.contains("sum to 11"),
        "{err}"
    );
    assert!(err.contains("requirements.csv:"), "{err}");
}

#[test]
fn bad_corpus_is_rejected_with_file_and_line() {
    let root = bad_dir("");
    let mut cases: Vec<_> = fs::read_dir(&root)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    cases.sort();
    assert!(cases.len() >= 20, "corpus has {} cases", cases.len());
    for case in cases {
        let expected = fs::read_to_string(case.join("expected.txt")).unwrap();
        let err = ProjectBundle::load_dir(&case).expect_err(&case.display().to_string());
        assert!(
            matches!(err, Error::Parse { .. }),
            "{}: {err:?}",
            case.display()
        );
        let message = err.to_string();
        assert!(
            message.contains(expected.trim()),
            "{}: {message}",
            case.display()
        );
    }
}

#[test]
fn missing_file_names_the_path() {
    let dir = copy_bundle(&tiny_dir());
    fs::remove_file(dir.path().join(bundle::TEACHERS_FILE)).unwrap();
    let err = ProjectBundle::load_dir(dir.path()).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.to_string().contains("teachers.csv"));
}

fn write_bundle(dir: &Path, files: &[(&str, &str)]) {
    for (name, text) in files {
        fs::write(dir.join(name), text).unwrap();
    }
}

#[test]
fn single_teacher_scores_one() {
    let dir = tempfile::tempdir().unwrap();
    write_bundle(
        dir.path(),
        &[
            ("teachers.csv", "id,age\nSolo,40\n"),
            (
                "requirements.csv",
                "teacher_id,class_id,sessions\nSolo,K1,2\n",
            ),
            ("preferences.csv", "teacher_id,day,slot\nSolo,0,0\n"),
            (
                "criteria.csv",
                "name,kind,params\nage,interval,higher 30\n[weights]\ncriterion,age\nage,1\n",
            ),
            ("config.toml", "days = 1\nslots_per_day = 2\n"),
        ],
    );
    let b = ProjectBundle::load_dir(dir.path()).unwrap();
    let r = b.ranking().unwrap();
    assert_eq!(r.scores.values(), [1.0]);
    assert_eq!(r.weights.values(), [1.0]);
    assert!(r.is_consistent());
}

#[test]
fn explicit_matrix_criterion() {
    let dir = copy_bundle(&tiny_dir());
    write_bundle(
        dir.path(),
        &[(
            "criteria.csv",
            "name,kind,params\n\
             rapport,explicit,\n\
             contract,binary,part full 5\n\
             [matrix rapport]\n\
             teacher,A,B,C\n\
             A,1,3,5\n\
             B,1/3,1,3\n\
             C,1/5,1/3,1\n\
             [weights]\n\
             criterion,rapport,contract\n\
             rapport,1,2\n\
             contract,1/2,1\n",
        )],
    );
    let b = ProjectBundle::load_dir(dir.path()).unwrap();
    assert!(matches!(b.criteria[0].source, CriterionSource::Explicit(_)));
    let r = b.ranking().unwrap();
    let m = &b.criterion_matrices().unwrap()[0].1;
    assert_eq!(m.get(0, 2), 5.0);
    assert_eq!(m.get(2, 0), 0.2);
    assert_eq!(r.criteria[0].preferences, ahp::preference_vector(m));
    let pv = r.criteria[0].preferences.values();
    assert!(pv[0] > pv[1] && pv[1] > pv[2]);
    let w = r.weights.values();
    assert!((w[0] - 2.0 / 3.0).abs() < 1e-12 && (w[1] - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn explicit_matrix_must_be_reciprocal() {
    let dir = copy_bundle(&tiny_dir());
    write_bundle(
        dir.path(),
        &[(
            "criteria.csv",
            "name,kind,params\nrapport,explicit,\n[matrix rapport]\nteacher,A,B,C\nA,1,3,5\nB,1/3,1,3\nC,1/5,1/2,1\n[weights]\ncriterion,rapport\nrapport,1\n",
        )],
    );
    let err = ProjectBundle::load_dir(dir.path()).unwrap_err().to_string();
    assert!(
        err.contains("criteria.csv:7") && err.contains("reciprocal"),
        "{err}"
    );
}

#[test]
fn load_column_overrides_derived_load() {
    let dir = copy_bundle(&tiny_dir());
    write_bundle(
        dir.path(),
        &[
            ("teachers.csv", "id,load\nA,1\nB,9\nC,1\n"),
            (
                "criteria.csv",
                "name,kind,params\nload,interval,higher 2 4 6\n[weights]\ncriterion,load\nload,1\n",
            ),
        ],
    );
    let b = ProjectBundle::load_dir(dir.path()).unwrap();
    let pv = b.ranking().unwrap().scores;
    assert!(pv[1] > pv[0] && pv[0] == pv[2]);
}

#[test]
fn timetable_file_errors_carry_lines() {
    let b = ProjectBundle::load_dir(tiny_dir()).unwrap();
    let inst = b.instance(b.ranking().unwrap().scores).unwrap();
    let p = Path::new("tt.csv");
    let cases = [
        (
            "class_id,day,slot,teacher_id\nK9,0,0,A\n",
            "tt.csv:2",
            "unknown class",
        ),
        (
            "class_id,day,slot,teacher_id\nK1,0,0,A\nK1,0,1,Z\n",
            "tt.csv:3",
            "unknown teacher",
        ),
        (
            "class_id,day,slot,teacher_id\nK1,0,0,A\n# c\nK1,0,0,B\n",
            "tt.csv:4",
            "assigned twice",
        ),
        (
            "class_id,day,slot,teacher_id\nK1,2,0,A\n",
            "tt.csv:2",
            "outside",
        ),
        (
            "class_id,day,slot,teacher_id\nK1,0,0,A\nK1,0,1,A\nK1,1,0,B\n",
            "tt.csv",
            "K1,1,1",
        ),
        ("class,day,slot,teacher\n", "tt.csv:1", "header"),
    ];
    for (text, location, what) in cases {
        let err = bundle::parse_timetable(p, text, &inst)
            .unwrap_err()
            .to_string();
        assert!(
            err.contains(location) && err.contains(what),
            "{text:?}: {err}"
        );
    }
}

#[test]
fn timetable_round_trips_bit_exact() {
    let b = ProjectBundle::load_dir(school_dir()).unwrap();
    let inst = b.instance(reference_scores()).unwrap();
    let tt = bundle::read_timetable(&school_dir().join("full_match.csv"), &inst).unwrap();
    let text = bundle::write_timetable(&tt, &inst);
    let again = bundle::parse_timetable(Path::new("x.csv"), &text, &inst).unwrap();
    assert_eq!(again, tt);
    assert_eq!(bundle::write_timetable(&again, &inst), text);
}

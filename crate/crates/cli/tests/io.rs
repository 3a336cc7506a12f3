use std::collections::BTreeMap;
use std::fs;

use phase_markov::io::{format_number, load_csv, write_telemetry, IngestError};
use phase_markov_core::{Channel, Telemetry};
use proptest::prelude::*;

fn errors(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn three_row_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "t.csv", "knee,hip\n1.0,2.0\n-1.5,3e-2\n0.25,4\n");
    let t = load_csv(&path, 0.01, &errors(&[("knee", 0.5), ("hip", 0.5)])).unwrap();
    assert_eq!(t.len(), 3);
    assert_eq!(t.channels().len(), 2);
    assert_eq!(t.channel("knee").unwrap().samples, vec![1.0, -1.5, 0.25]);
    assert_eq!(t.channel("hip").unwrap().samples, vec![2.0, 0.03, 4.0]);
    assert_eq!(t.channel("knee").unwrap().max_abs, 1.5);
    assert_eq!(t.channel("hip").unwrap().max_abs, 4.0);
    assert_eq!(t.dt(), 0.01);
}

#[test]
fn non_numeric_cell_names_row_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "t.csv", "knee,hip\n1.0,abc\n2.0,3.0\n");
    let err = load_csv(&path, 0.01, &errors(&[("knee", 0.5), ("hip", 0.5)])).unwrap_err();
    assert!(
        matches!(
            err,
            IngestError::NonNumeric {
                row: 2,
                column: 2,
                ..
            }
        ),
        "{err:?}"
    );
    assert!(err.to_string().contains("row 2, column 2"));
}

#[test]
fn unknown_channel_in_errors_map() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "t.csv", "knee,hip\n1,2\n3,4\n");
    let err = load_csv(&path, 0.01, &errors(&[("ankle", 0.1)])).unwrap_err();
    assert_eq!(err.to_string(), "unknown channel ankle");
}

#[test]
fn ragged_row_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "t.csv", "a,b\n1,2\n3\n5,6\n");
    let err = load_csv(&path, 0.01, &errors(&[("a", 1.0), ("b", 1.0)])).unwrap_err();
    assert!(
        matches!(
            err,
            IngestError::Ragged {
                row: 3,
                expected: 2,
                found: 1
            }
        ),
        "{err:?}"
    );
}

#[test]
fn channel_without_error_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "t.csv", "a,b\n1,2\n3,4\n");
    let err = load_csv(&path, 0.01, &errors(&[("a", 1.0)])).unwrap_err();
    assert!(
        matches!(err, IngestError::MissingError(ref c) if c == "b"),
        "{err:?}"
    );
}

#[test]
fn empty_and_missing_files() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(&dir, "e.csv", "");
    assert!(matches!(
        load_csv(&empty, 0.01, &BTreeMap::new()),
        Err(IngestError::Empty { .. })
    ));
    let header_only = write(&dir, "h.csv", "a\n");
    assert!(matches!(
        load_csv(&header_only, 0.01, &errors(&[("a", 1.0)])),
        Err(IngestError::NoRows { .. })
    ));
    assert!(matches!(
        load_csv(&dir.path().join("nope.csv"), 0.01, &BTreeMap::new()),
        Err(IngestError::Open { .. })
    ));
}

#[test]
fn single_sample_fails_telemetry_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(&dir, "t.csv", "a\n1\n");
    assert!(matches!(
        load_csv(&path, 0.01, &errors(&[("a", 1.0)])),
        Err(IngestError::Telemetry(_))
    ));
}

#[test]
fn number_format_examples() {
    assert_eq!(format_number(0.0), "0");
    assert_eq!(format_number(1.5), "1.5");
    assert_eq!(format_number(-2.0), "-2");
    assert_eq!(format_number(4.5e-17), "4.5e-17");
    assert_eq!(format_number(1e300), "1e300");
}

proptest! {
    #[test]
    fn number_format_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let back: f64 = format_number(x).parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }

    #[test]
    fn telemetry_csv_round_trip(
        rows in prop::collection::vec(
            (prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
             -1e6f64..1e6),
            2..50,
        )
    ) {
        let (a, b): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        let t = Telemetry::new(
            vec![Channel::new("a", a.clone(), 1.0), Channel::new("b", b.clone(), 0.5)],
            0.02,
        ).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        write_telemetry(&path, &t).unwrap();
        let back = load_csv(&path, 0.02, &errors(&[("a", 1.0), ("b", 0.5)])).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&back.channel("a").unwrap().samples), bits(&a));
        prop_assert_eq!(bits(&back.channel("b").unwrap().samples), bits(&b));
    }
}

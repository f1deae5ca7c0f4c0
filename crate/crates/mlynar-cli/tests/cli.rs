//! End-to-end tests of the `mlynar` binary: output contracts, exit codes,
//! determinism, and the CSV round-trip guarantee.

use std::process::{Command, Output};

use mlynar_cli::fmt_sig;

fn mlynar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlynar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mlynar(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    mlynar(args).status.code().expect("exit code")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn pmf_n6_matches_exact_values() {
    let rows = csv_rows(&stdout(&["pmf", "--n", "6"]));
    let expect = [
        1.0 / 6.0,
        5.0 / 18.0,
        5.0 / 18.0,
        5.0 / 27.0,
        25.0 / 324.0,
        5.0 / 324.0,
    ];
    assert_eq!(rows.len(), 6);
    for (row, e) in rows.iter().zip(expect) {
        let p: f64 = row[1].parse().unwrap();
        assert!((p - e).abs() < 1e-11, "{p} vs {e}");
    }
}

#[test]
fn pmf_n25_peaks_at_5() {
    let rows = csv_rows(&stdout(&["pmf", "--n", "25"]));
    assert_eq!(rows.len(), 25);
    let argmax = rows
        .iter()
        .max_by(|a, b| {
            let pa: f64 = a[1].parse().unwrap();
            let pb: f64 = b[1].parse().unwrap();
            pa.total_cmp(&pb)
        })
        .unwrap()[0]
        .clone();
    assert_eq!(argmax, "5");
}

#[test]
fn pmf_exact_prints_rationals() {
    let rows = csv_rows(&stdout(&["pmf", "--n", "6", "--exact"]));
    let fractions: Vec<&str> = rows.iter().map(|r| r[1].as_str()).collect();
    assert_eq!(fractions, ["1/6", "5/18", "5/18", "5/27", "25/324", "5/324"]);
    assert_eq!(exit_code(&["pmf", "--n", "501", "--exact"]), 2);
}

#[test]
fn pmf_range_selects_entries() {
    let rows = csv_rows(&stdout(&[
        "pmf",
        "--n",
        "1000000000000",
        "--from",
        "1",
        "--to",
        "3",
    ]));
    assert_eq!(rows.len(), 3);
    let p1: f64 = rows[0][1].parse().unwrap();
    assert!((p1 - 1e-12).abs() < 1e-24);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(exit_code(&["pmf", "--n", "0"]), 2);
    assert_eq!(exit_code(&["pmf", "--n", "6", "--from", "0"]), 2);
    assert_eq!(exit_code(&["pmf", "--n", "6", "--from", "5", "--to", "3"]), 2);
    assert_eq!(exit_code(&["pmf", "--n", "6", "--to", "7"]), 2);
    assert_eq!(exit_code(&["pmf", "--n", "6", "--epsilon", "1.5"]), 2);
    assert_eq!(exit_code(&["stats", "--n", "1000000000000001"]), 2);
    assert_eq!(
        exit_code(&["sample", "--n", "6", "--count", "10", "--method", "bogus"]),
        2
    );
    assert_eq!(exit_code(&["sample", "--n", "6", "--count", "0"]), 2);
    assert_eq!(exit_code(&["study", "distance", "--grid", "2..9"]), 2);
    assert_eq!(exit_code(&["study", "delta-fit", "--grid", "16"]), 2);
    assert_eq!(exit_code(&["study", "delta-fit", "--grid", "5..2"]), 2);
    assert_eq!(exit_code(&["stats", "--n", "6", "--precision", "0"]), 2);
    assert_eq!(exit_code(&["stats", "--n", "6", "--precision", "18"]), 2);
}

#[test]
fn stats_n6_row() {
    let text = stdout(&["stats", "--n", "6"]);
    assert!(text.starts_with("n,mean,variance,h,v,delta,modes\n"));
    let row = &csv_rows(&text)[0];
    let mean: f64 = row[1].parse().unwrap();
    assert!((mean - 2.7747).abs() < 5e-5);
    assert_eq!(row[6], "2;3");
}

#[test]
fn stats_n1_degenerate() {
    let row = &csv_rows(&stdout(&["stats", "--n", "1"]))[0];
    assert_eq!(row[1], "1");
    assert_eq!(row[2], "0");
    assert_eq!(row[6], "1");
}

#[test]
fn sample_is_deterministic_per_seed() {
    let args = [
        "sample", "--n", "25", "--count", "200000", "--seed", "9", "--histogram",
    ];
    let first = stdout(&args);
    let second = stdout(&args);
    assert_eq!(first, second);
    let other = stdout(&[
        "sample", "--n", "25", "--count", "200000", "--seed", "10", "--histogram",
    ]);
    assert_ne!(first, other);
}

#[test]
fn sample_n1_has_unit_mean() {
    let row = &csv_rows(&stdout(&["sample", "--n", "1", "--count", "10"]))[0];
    assert_eq!(row[0], "10");
    assert_eq!(row[1], "1");
    assert_eq!(row[2], "0");
}

#[test]
fn sample_histogram_modal_gain() {
    // at this count the empirical mode lands on the analytic mode 5 with
    // overwhelming probability
    let text = stdout(&[
        "sample", "--n", "25", "--count", "100000", "--seed", "7", "--method", "inverse",
        "--histogram",
    ]);
    let tables: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(tables.len(), 2);
    let hist_rows = csv_rows(tables[1]);
    let modal = hist_rows
        .iter()
        .max_by_key(|r| r[1].parse::<u64>().unwrap())
        .unwrap()[0]
        .clone();
    assert_eq!(modal, "5");
    let total: u64 = hist_rows.iter().map(|r| r[1].parse::<u64>().unwrap()).sum();
    assert_eq!(total, 100_000);
}

#[test]
fn csv_round_trips_at_fixed_precision() {
    for args in [
        vec!["pmf", "--n", "25"],
        vec!["stats", "--n", "6"],
        vec!["study", "distance", "--grid", "2..4"],
    ] {
        let text = stdout(&args);
        let mut rebuilt = String::new();
        for (i, line) in text.lines().enumerate() {
            if i == 0 || line.is_empty() || line.chars().next().unwrap().is_alphabetic() {
                rebuilt.push_str(line);
            } else {
                let cells: Vec<String> = line
                    .split(',')
                    .map(|cell| {
                        if cell.contains('.') || cell.contains('e') {
                            fmt_sig(cell.parse::<f64>().unwrap(), 12)
                        } else {
                            cell.to_string()
                        }
                    })
                    .collect();
                rebuilt.push_str(&cells.join(","));
            }
            rebuilt.push('\n');
        }
        assert_eq!(text, rebuilt, "round trip drifted for {args:?}");
    }
}

#[test]
fn json_outputs_parse() {
    let stats: serde_json::Value =
        serde_json::from_str(&stdout(&["stats", "--n", "6", "--format", "json"])).unwrap();
    assert_eq!(stats["modes"], serde_json::json!([2, 3]));
    assert!((stats["mean"].as_f64().unwrap() - 2.7747).abs() < 5e-5);

    let pmf: serde_json::Value =
        serde_json::from_str(&stdout(&["pmf", "--n", "6", "--format", "json"])).unwrap();
    assert_eq!(pmf.as_array().unwrap().len(), 6);
    assert_eq!(pmf[0]["k"], serde_json::json!(1));

    let sample: serde_json::Value = serde_json::from_str(&stdout(&[
        "sample", "--n", "6", "--count", "1000", "--seed", "1", "--histogram", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(sample["count"], serde_json::json!(1000));
    assert!(sample["histogram"].is_array());

    let fit: serde_json::Value = serde_json::from_str(&stdout(&[
        "study", "delta-fit", "--grid", "1..5", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(fit["points"].as_array().unwrap().len(), 5);
    assert!(fit["fit"]["alpha"].as_f64().unwrap() < 0.0);
}

#[test]
fn precision_flag_controls_digits() {
    let row = &csv_rows(&stdout(&["stats", "--n", "6", "--precision", "4"]))[0];
    assert_eq!(row[1], "2.775");
    let row17 = &csv_rows(&stdout(&["stats", "--n", "6", "--precision", "17"]))[0];
    let mean: f64 = row17[1].parse().unwrap();
    assert_eq!(mean, 2.7746913580246915);
}

#[test]
fn grid_list_syntax_works() {
    let rows = csv_rows(&stdout(&["study", "conjecture", "--grid", "2,4,6"]));
    let ns: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(ns, ["100", "10000", "1000000"]);
}

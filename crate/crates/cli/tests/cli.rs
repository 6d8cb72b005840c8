use std::io::Write;
use std::process::{Command, Output};

fn permcensus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcensus"))
        .args(args)
        .env_remove("PERMCENSUS_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_prints_exact_decimal() {
    let out = permcensus(&["count", "--stat", "ncm", "--q", "2", "--n", "4", "--k", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2\n");
    let out = permcensus(&["count", "--stat", "od", "--q", "2", "--n", "4"]);
    assert_eq!(stdout(&out), "10\n");
    let out = permcensus(&["count", "--stat", "ncm", "--q", "2", "--n", "30"]);
    assert_eq!(stdout(&out).trim().len(), 32);
}

#[test]
fn prob_prints_fraction_and_decimal() {
    let out = permcensus(&["prob", "--stat", "ncm", "--q", "2", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3/8 ≈ 0.375\n");
}

#[test]
fn bounds_reports_all_fields() {
    let out = permcensus(&["bounds", "--q", "2", "--m", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for field in ["q: 2", "m: 5", "c_q:", "lower:", "exact: 63/256", "upper:", "brackets: true"] {
        assert!(text.contains(field), "missing {field} in {text}");
    }
    assert_eq!(permcensus(&["bounds", "--q", "1", "--m", "5"]).status.code(), Some(4));
}

#[test]
fn oracle_check_passes() {
    let out = permcensus(&["oracle-check", "--q-max", "6", "--n-max", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("ok:"));
    assert_eq!(permcensus(&["oracle-check", "--q-max", "2", "--n-max", "12"]).status.code(), Some(4));
}

#[test]
fn error_exit_codes_are_distinct() {
    let unknown = permcensus(&["count", "--stat", "nope", "--q", "2", "--n", "4"]);
    assert_eq!(unknown.status.code(), Some(3));
    let stderr = String::from_utf8(unknown.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 1);

    let range = permcensus(&["count", "--stat", "ncm", "--q", "2", "--n", "4", "--k", "5"]);
    assert_eq!(range.status.code(), Some(4));
    let zero_q = permcensus(&["count", "--stat", "ncm", "--q", "0", "--n", "4"]);
    assert_eq!(zero_q.status.code(), Some(4));

    let missing = permcensus(&["identify", "--orders", "/definitely/not/here"]);
    assert_eq!(missing.status.code(), Some(5));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "1\n2\nseven").unwrap();
    let bad_out = permcensus(&["identify", "--orders", bad.path().to_str().unwrap()]);
    assert_eq!(bad_out.status.code(), Some(5));

    // usage errors come from the argument parser
    assert_eq!(permcensus(&["count", "--stat", "ncm"]).status.code(), Some(2));
}

#[test]
fn table_formats_agree() {
    let args = |fmt: &'static str| ["table", "--stat", "noe", "--q", "6", "--n-max", "9", "--cosets", "--format", fmt];
    let tsv = stdout(&permcensus(&args("tsv")));
    let json = stdout(&permcensus(&args("json")));
    let records: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    let mut lines = tsv.lines();
    assert_eq!(lines.next().unwrap(), "stat\tq\tn\tk\tcount\tsize\tfraction");
    let rows: Vec<Vec<String>> = lines.map(|l| l.split('\t').map(String::from).collect()).collect();
    assert_eq!(rows.len(), records.len());
    assert_eq!(rows.len(), 45);
    for (row, rec) in rows.iter().zip(&records) {
        let as_text = |v: &serde_json::Value| match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let fields = ["stat", "q", "n", "k", "count", "size", "fraction"];
        let from_json: Vec<String> = fields.iter().map(|f| as_text(&rec[*f])).collect();
        assert_eq!(row, &from_json);
    }
}

#[test]
fn table_is_identical_across_job_counts() {
    let base = ["table", "--stat", "ncm", "--q", "3", "--n-max", "60", "--cosets"];
    let one = permcensus(&base);
    let mut many_args = base.to_vec();
    many_args.extend(["--jobs", "4"]);
    let many = permcensus(&many_args);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn identify_is_deterministic_under_seed() {
    let args = ["identify", "--n-hidden", "10", "--samples", "20000", "--seed", "5"];
    let a = permcensus(&args);
    let b = permcensus(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let record: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(record["chosen_n"], 10);
    assert_eq!(record["block"], serde_json::json!([10, 11]));
    assert_eq!(record["discriminating_prime"], 11);
    assert_eq!(record["source_seed"], 5);
}

#[test]
fn seed_from_environment_and_flag_precedence() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_permcensus"));
        cmd.args(["identify", "--n-hidden", "7", "--samples", "5000"]);
        cmd.env_remove("PERMCENSUS_SEED");
        if let Some(e) = env {
            cmd.env("PERMCENSUS_SEED", e);
        }
        if let Some(f) = flag {
            cmd.args(["--seed", f]);
        }
        cmd.output().unwrap().stdout
    };
    assert_eq!(run(Some("11"), None), run(None, Some("11")));
    assert_eq!(run(Some("12"), Some("11")), run(None, Some("11")));
    assert_ne!(run(Some("12"), None), run(None, Some("11")));
}

#[test]
fn identify_from_order_file() {
    // the exact order distribution of S_5
    let mut file = tempfile::NamedTempFile::new().unwrap();
    for (order, count) in [(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)] {
        for _ in 0..count {
            writeln!(file, "{order}").unwrap();
        }
    }
    let out = permcensus(&["identify", "--orders", file.path().to_str().unwrap(), "--n-max", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let record: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["sample_count"], 120);
    assert_eq!(record["source_seed"], serde_json::Value::Null);
    assert_eq!(record["block"], serde_json::json!([4, 5]));
    assert_eq!(record["discriminating_prime"], 5);
    assert_eq!(record["chosen_n"], 5);
}

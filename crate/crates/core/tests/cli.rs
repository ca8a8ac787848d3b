use std::process::{Command, Output as ProcessOutput};

use coincidence_entropy::cli::output::{EntropyRow, Output};
use coincidence_entropy::cli::TableEcho;

fn coincidence(args: &[&str]) -> ProcessOutput {
    Command::new(env!("CARGO_BIN_EXE_coincidence"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &ProcessOutput) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    lines.map(|l| l.split(',').nth(i).unwrap().parse().unwrap()).collect()
}

#[test]
fn eval_examples() {
    let o = coincidence(&["eval", "--family", "binomial", "--n", "2", "--x", "0.25", "--method", "closed", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(column(&stdout(&o), "s"), vec![0.4609375]);

    let o = coincidence(&["eval", "--family", "binomial", "--n", "2", "--x", "0", "--format", "csv"]);
    let out = stdout(&o);
    assert_eq!(column(&out, "s"), vec![1.0]);
    assert_eq!(column(&out, "renyi"), vec![0.0]);
    assert_eq!(column(&out, "tsallis"), vec![0.0]);

    let o = coincidence(&["eval", "--family", "general", "--c", "-2", "--n", "3", "--x", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
}

#[test]
fn log_base_two_reports_bits() {
    let o = coincidence(&["eval", "--family", "binomial", "--n", "1", "--x", "0.5", "--log-base", "2", "--format", "csv"]);
    assert_eq!(column(&stdout(&o), "renyi"), vec![1.0]);
}

#[test]
fn table_examples() {
    let o = coincidence(&["table", "--family", "binomial", "--n", "1", "--grid", "0:1:3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(column(&out, "s"), vec![1.0, 0.5, 1.0]);
    for line in out.lines() {
        assert_eq!(line.split(',').count(), 9);
    }
    assert_eq!(out.lines().next().unwrap(), "family,n,c,x,method,s,renyi,tsallis,err_estimate");

    let o = coincidence(&["table", "--family", "mkz", "--n", "0", "--grid", "0:0.9:2", "--format", "csv"]);
    let s = column(&stdout(&o), "s");
    assert_eq!(s[0], 1.0);
    assert!((s[1] - 0.1 / 1.9).abs() < 1e-15);
}

#[test]
fn table_rejects_out_of_domain_grid_before_output() {
    let o = coincidence(&["table", "--family", "mkz", "--n", "2", "--grid", "0:1:5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn table_json_round_trips() {
    let o = coincidence(&["table", "--family", "negbinomial", "--n", "2.5", "--grid", "0:3:7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let doc: Output<TableEcho, EntropyRow> = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.schema_version, "1.0");
    assert_eq!(doc.rows.len(), 7);
    assert_eq!(doc.to_json(), text);
}

#[test]
fn every_command_is_deterministic() {
    let commands: [&[&str]; 5] = [
        &["eval", "--family", "bbh", "--n", "7", "--x", "1.3"],
        &["table", "--family", "general", "--c", "0.5", "--n", "1.25", "--grid", "0:2:9"],
        &["verify", "--ids", "INEQ-3.2,INEQ-4.1", "--n-max", "6", "--x-points", "5"],
        &["identities", "--n-max", "4", "--x-points", "3"],
        &["quad-study", "--family", "mkz", "--n", "3", "--x", "0.6", "--m-list", "4,8,16"],
    ];
    for args in commands {
        let a = coincidence(args);
        let b = coincidence(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(stdout(&a).contains("\"schema_version\": \"1.0\""));
    }
}

#[test]
fn verify_exit_codes() {
    let o = coincidence(&["verify", "--ids", "INEQ-3.3", "--n-max", "5", "--x-points", "11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(column(&stdout(&o), "min_margin")[0] >= 0.0);

    let o = coincidence(&["verify", "--ids", "BOGUS"]);
    assert_eq!(o.status.code(), Some(2));

    // a negative tolerance is rejected as a usage error
    let o = coincidence(&["verify", "--ids", "INEQ-3.3", "--tolerance", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identities_exit_codes() {
    let o = coincidence(&["identities", "--n-max", "6", "--x-points", "7", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 1 + 7);
    let o = coincidence(&["identities", "--x-points", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn quad_study_examples() {
    let o = coincidence(&["quad-study", "--family", "binomial", "--n", "6", "--x", "0.3", "--m-list", "2,3,4,5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let err = column(&stdout(&o), "abs_error");
    assert!(err[0] > 1e-6 && err[1] > 1e-6);
    assert!(err[2] < 1e-15 && err[3] < 1e-15);

    let o = coincidence(&["quad-study", "--family", "negbinomial", "--n", "3", "--x", "1", "--m-list", "8,16,32,64", "--format", "csv"]);
    let err = column(&stdout(&o), "abs_error");
    assert!(err.windows(2).all(|w| w[1] < w[0]), "{err:?}");

    let o = coincidence(&["quad-study", "--family", "poisson", "--n", "3", "--x", "1", "--m-list", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(coincidence(&[]).status.code(), Some(2));
    assert_eq!(coincidence(&["eval", "--family", "binomial"]).status.code(), Some(2));
    assert_eq!(coincidence(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(coincidence(&["--help"]).status.code(), Some(0));
}

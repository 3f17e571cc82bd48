use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn ecodoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecodoc"))
        .args(args)
        .current_dir(root())
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

#[test]
fn scenario_compare_prints_tables() {
    let o = ecodoc(&["scenario-compare"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(
        text.contains("| Energy (kWh/day) | 36.3 -- 194.7 | 6.1 -- 16.2 | 10.1 -- 20.2 |"),
        "{text}"
    );
    assert!(text.contains("| hitl vs manual | 83.2 -- 91.7 |"), "{text}");
    assert!(
        text.contains("| Incremental Cost: agentic vs hitl (%) | +24.7 -- +65.6 |"),
        "{text}"
    );
}

#[test]
fn scenario_compare_json_matches_golden() {
    let o = ecodoc(&["scenario-compare", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), read(&root().join("fixtures/golden/scenario_bundle.json")));
}

#[test]
fn scenario_compare_writes_files_identically_twice() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for d in &dirs {
        let out = d.path().to_str().unwrap();
        let o = ecodoc(&["scenario-compare", "--out", out, "--format", "csv"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    for name in [
        "scenario_table.csv",
        "reduction_table.csv",
        "deviations.csv",
        "plot_data.json",
    ] {
        let a = read(&dirs[0].path().join(name));
        assert_eq!(a, read(&dirs[1].path().join(name)), "{name}");
        assert!(!a.is_empty());
    }
}

#[test]
fn unknown_baseline_exits_2() {
    let o = ecodoc(&["scenario-compare", "--baseline", "robots"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown scenario"), "{}", stderr(&o));
}

#[test]
fn invalid_config_exits_2_with_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    fs::write(&path, r#"{"profiles": {"p": {"rate_wh_per_ktok": 0.24, "pue": 0.5, "wue_l_per_kwh": [0.1, 0.2], "emission_factor_g_per_kwh": 288, "co2_per_prompt_g": 0}}, "scenarios": []}"#).unwrap();
    let o = ecodoc(&["scenario-compare", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("/profiles/p/pue"), "{}", stderr(&o));
}

#[test]
fn usecase_run_with_measured_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = ecodoc(&["usecase-run", "--ledger", "fixtures/ledger.json", "--out", out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        read(&dir.path().join("extraction_output.json")),
        read(&root().join("fixtures/extraction_output.json"))
    );
    let md = read(&dir.path().join("usecase_footprint.md"));
    assert!(md.contains("| Energy (kWh) | 0.35718 |"), "{md}");
    assert!(md.contains("| CO2 (g) | 102.87 |"), "{md}");
    let report: serde_json::Value = serde_json::from_str(&read(&dir.path().join("footprint_report.json"))).unwrap();
    assert_eq!(report["total_tokens"], 11906);
    assert_eq!(report["ledger"]["source"], "measured");
    assert_eq!(report["normalized_energy_kwh"], 0.2071);
}

#[test]
fn usecase_run_without_ledger_is_estimated() {
    let o = ecodoc(&["usecase-run", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["ledger"]["source"], "estimated");
    assert_eq!(report["ledger"]["thinking"], 0);
}

#[test]
fn corrupted_invoice_exits_3_naming_the_item() {
    let dir = tempfile::tempdir().unwrap();
    let doc = read(&root().join("fixtures/proforma_invoice.txt")).replace("3400.00", "3401.00");
    let path = dir.path().join("bad.txt");
    fs::write(&path, doc).unwrap();
    let o = ecodoc(&["usecase-run", "--document", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("ITEM 03"), "{}", stderr(&o));
}

#[test]
fn unparseable_invoice_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "ITEM 01 | widget | two | 3.00 | 6.00 | EUR\n").unwrap();
    let o = ecodoc(&["usecase-run", "--document", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parser stage"), "{}", stderr(&o));
}

#[test]
fn thinking_delta_reference_case() {
    let o = ecodoc(&["thinking-delta", "18000", "10000"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("| energy (Wh) | 4.32 | 6.72 | 2.40 |"), "{text}");
    assert!(text.contains("| co2 (g) | 1.24 | 1.94 | 0.69 |"), "{text}");
    assert!(
        text.contains("| water (mL) | 0.78 -- 1.30 | 1.21 -- 2.02 | 0.43 -- 0.72 |"),
        "{text}"
    );
    assert!(text.contains("Increase: 55.6%"), "{text}");
}

#[test]
fn thinking_delta_zero_and_bad_counts() {
    let o = ecodoc(&["thinking-delta", "18000", "0", "--format", "csv"]);
    assert!(stdout(&o).contains("energy,Wh,4.32,4.32,4.32,4.32,0.00,0.00"));
    let o = ecodoc(&["thinking-delta", "18000", "-5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ecodoc(&["thinking-delta", "1", "1", "--profile", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tokens_count_file_and_stdin() {
    let o = ecodoc(&["tokens-count", "fixtures/proforma_invoice.txt"]);
    assert_eq!(stdout(&o), "811\n");
    let mut child = Command::new(env!("CARGO_BIN_EXE_ecodoc"))
        .arg("tokens-count")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"hello").unwrap();
    assert_eq!(
        String::from_utf8(child.wait_with_output().unwrap().stdout).unwrap(),
        "2\n"
    );
}

#[test]
fn report_emit_token_table() {
    let o = ecodoc(&[
        "report-emit",
        "--table",
        "token",
        "--document",
        "fixtures/proforma_invoice.txt",
        "--ledger",
        "fixtures/ledger.json",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("component,tokens,percent,source\ndocument,9030,75.8,measured\n"));
    let o = ecodoc(&["report-emit", "--table", "token"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn timestamp_comes_from_source_date_epoch() {
    let o = Command::new(env!("CARGO_BIN_EXE_ecodoc"))
        .args(["report-emit", "--table", "bundle"])
        .current_dir(root())
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("\"timestamp_unix\": 1700000000"));
}

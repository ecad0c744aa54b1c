use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superalg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn list_has_all_table_rows_and_headings() {
    let o = run(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("T3R10 | hei(2n) ⋉ o(2n) in sl(Λ(n)) | n ≥ 2, n ≠ 3"));
    for (t, rows) in [(1, 6), (2, 9), (3, 11)] {
        for r in 1..=rows {
            let prefix = format!("T{t}R{r} | ");
            assert_eq!(text.lines().filter(|l| l.starts_with(&prefix)).count(), 1, "{prefix}");
        }
    }
    let table_rows = text.lines().filter(|l| l.starts_with('T') && l.as_bytes().get(2) == Some(&b'R')).count();
    assert_eq!(table_rows, 26);
    // exceptional rows come after their own heading and nowhere else
    let exc = text.find("## Exceptional cases").expect("heading");
    assert!(text[..exc].lines().all(|l| !l.starts_with("EXC-")));
    assert!(text[exc..].lines().filter(|l| l.starts_with("EXC-")).count() >= 9);
}

#[test]
fn list_json_is_ordered_like_md() {
    let o = run(&["list", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids[0], "T1R1");
    assert_eq!(ids.len(), stdout(&run(&["list"])).lines().filter(|l| l.contains(" | ")).count());
}

#[test]
fn verify_t1r1_is_certified() {
    let o = run(&["verify", "--row", "T1R1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "CertifiedMaximal");
    assert_eq!(v["matches_expected"], true);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn verify_thm31_n3_finds_the_as_witness() {
    let o = run(&["verify", "--row", "THM3.1-n3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "NotMaximal");
    assert_eq!(v["witness"]["superdim"], serde_json::json!([16, 16]));
    assert_eq!(v["inclusion"]["relation_holds"], true);
}

#[test]
fn admissibility_failure_exits_2() {
    let o = run(&["verify", "--row", "T3R10", "--params", "n=3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("AdmissibilityError"));
    assert_eq!(run(&["verify", "--row", "T9R9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--row", "T1R1", "--params", "zz=1"]).status.code(), Some(2));
    assert_eq!(run(&["dump", "--algebra", "nope(2)"]).status.code(), Some(2));
}

#[test]
fn verdict_mismatch_exits_1() {
    // at its defaults T3R6 has a proper intermediate subalgebra, against the expected verdict
    let o = run(&["verify", "--row", "T3R6"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matches_expected"], false);
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["verify", "--row", "T1R1", "--seed", "3"]);
    let b = run(&["verify", "--row", "T1R1", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["verify", "--row", "T2R1", "--mode", "evidence", "--trials", "4", "--seed", "9"]);
    let b = run(&["verify", "--row", "T2R1", "--mode", "evidence", "--trials", "4", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["mode"], "evidence");
    assert_eq!(v["seed"], 9);
}

#[test]
fn jobs_do_not_change_the_report() {
    let rows = "T1R3,T1R1,T2R1,THM3.1-n2";
    let one = run(&["--jobs", "1", "verify", "--row", rows]);
    let four = run(&["--jobs", "4", "verify", "--row", rows]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["row"].as_str().unwrap()).collect();
    assert_eq!(ids, ["T1R3", "T1R1", "T2R1", "THM3.1-n2"]);
}

#[test]
fn timing_adds_elapsed() {
    let o = run(&["--timing", "verify", "--row", "T1R1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn out_writes_the_report() {
    let path = std::env::temp_dir().join(format!("superalg-cli-test-{}.md", std::process::id()));
    let o = run(&["--format", "md", "--out", path.to_str().unwrap(), "verify", "--row", "T1R1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(text.starts_with("| row | h | g |"));
    assert!(text.contains("| T1R1 |"));
}

#[test]
fn suites_pass() {
    for name in ["signs", "lemma241", "reps", "quantize"] {
        let o = run(&["suite", "--name", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let o = run(&["suite", "--name", "all", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(run(&["suite", "--name", "nope"]).status.code(), Some(2));
}

#[test]
fn dump_round_trips_names() {
    let o = run(&["dump", "--algebra", "pe_lambda(3;1/2)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["name"], "pe_lambda(3;1/2)");
    assert_eq!(v["meta"]["character_twist"], "1/2");
    let o = run(&["dump", "--algebra", "as"]);
    assert_eq!(o.status.code(), Some(0));
}

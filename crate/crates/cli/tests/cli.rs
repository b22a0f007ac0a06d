use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use irrhodge::grading::HodgeTableJson;

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_irrhodge"));
    cmd.args(args).env_remove("IRRHODGE_CACHE_DIR");
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hodge_a1_two_ones() {
    let o = run(&["hodge", "--type", "A1", "--weight", "1"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].trim().starts_with("-1/2") && rows[0].ends_with(" 1"));
    assert!(rows[1].trim().starts_with("1/2") && rows[1].ends_with(" 1"));
}

#[test]
fn hodge_e7_table() {
    let o = run(
        &[
            "hodge",
            "--type",
            "E7",
            "--weight",
            "0,0,0,0,0,0,1",
            "--json",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let t: HodgeTableJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.dim, 56);
    for l in &t.levels {
        let expected = match l.two_alpha.abs() {
            0..=10 => 3,
            11..=18 => 2,
            _ => 1,
        };
        assert_eq!(l.h, expected, "2 alpha = {}", l.two_alpha);
    }
    assert_eq!(t.levels.len(), 28);
}

#[test]
fn hodge_json_schema_roundtrip() {
    let o = run(
        &["hodge", "--type", "E6", "--weight", "1,0,0,0,0,0", "--json"],
        None,
    );
    let text = stdout(&o);
    let t: HodgeTableJson = serde_json::from_str(&text).unwrap();
    assert_eq!(t.r#type, "E6");
    assert_eq!(t.weight, vec![1, 0, 0, 0, 0, 0]);
    assert_eq!(serde_json::to_string(&t).unwrap() + "\n", text);
}

#[test]
fn exponents_e8() {
    let o = run(&["exponents", "--type", "E8"], None);
    assert_eq!(stdout(&o), "1 7 11 13 17 19 23 29\n");
}

#[test]
fn jordan_e7() {
    let o = run(
        &[
            "jordan",
            "--type",
            "E7",
            "--weight",
            "0,0,0,0,0,0,1",
            "--json",
        ],
        None,
    );
    assert_eq!(
        stdout(&o),
        "{\"type\":\"E7\",\"weight\":[0,0,0,0,0,0,1],\"blocks\":[28,18,10]}\n"
    );
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--type", "G2", "--rep", "adjoint"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = run(&["verify", "--type", "C3", "--rep", "std", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["jordan"], serde_json::json!([6]));
    assert_eq!(v["flat"], true);
}

#[test]
fn verify_dumps_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mats");
    let o = run(
        &[
            "verify",
            "--type",
            "A2",
            "--rep",
            "std",
            "--dump-dir",
            out.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(0));
    let n = fs::read_to_string(out.join("N.txt")).unwrap();
    assert!(n.starts_with("# sparse rational matrix"));
    assert!(n.contains("# dim 3 nnz 2"));
    assert!(out.join("E.txt").exists() && out.join("RHO.txt").exists());
}

#[test]
fn kkp_e6_node_1() {
    let o = run(&["kkp", "--type", "E6", "--node", "1", "--json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim_X"], 16);
    assert_eq!(v["pass"], true);
    assert_eq!(v["betti"], v["hodge_shifted"]);
    let o = run(&["kkp", "--type", "E6", "--node", "1"], None);
    assert!(stdout(&o).ends_with("PASS\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args, None).status.code();
    assert_eq!(code(&["hodge", "--type", "Q2", "--weight", "1"]), Some(2));
    assert_eq!(
        code(&["hodge", "--type", "A2", "--weight", "1,-1"]),
        Some(2)
    );
    assert_eq!(code(&["hodge", "--type", "A2", "--weight", "1"]), Some(2));
    assert_eq!(code(&["kkp", "--type", "E8"]), Some(2));
    assert_eq!(code(&["kkp", "--type", "E8", "--node", "1"]), Some(2));
    assert_eq!(code(&["verify", "--type", "G2", "--rep", "std"]), Some(2));
    assert_eq!(
        code(&[
            "hodge",
            "--type",
            "E8",
            "--weight",
            "0,0,0,0,0,0,0,1",
            "--max-dim",
            "100"
        ]),
        Some(3)
    );
    assert_eq!(code(&["verify", "--type", "A9"]), Some(3));
}

#[test]
fn cold_and_warm_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["hodge", "--type", "F4", "--weight", "0,0,1,0", "--json"];
    let cold = run(&args, Some(dir.path()));
    let entry = dir.path().join("F_4_0,0,1,0.txt");
    assert!(entry.exists());
    let warm = run(&args, Some(dir.path()));
    assert_eq!(cold.status.code(), Some(0));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, run(&args, None).stdout);

    // A corrupted entry is ignored, recomputed and rewritten.
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(
        &entry,
        text.replacen("irrhodge-character 1", "irrhodge-character 99", 1),
    )
    .unwrap();
    let repaired = run(&args, Some(dir.path()));
    assert_eq!(repaired.stdout, cold.stdout);
    assert!(String::from_utf8_lossy(&repaired.stderr).contains("version mismatch"));
    assert_eq!(fs::read_to_string(&entry).unwrap(), text);
}

#[test]
fn cache_dir_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_irrhodge"))
        .args(["hodge", "--type", "G2", "--weight", "1,0"])
        .env("IRRHODGE_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("G_2_1,0.txt").exists());
}

#[test]
fn json_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["sweep", "--max-rank", "3", "--max-dim", "120", "--json"][..],
        &["kkp", "--type", "D5", "--json"][..],
    ] {
        let a = run(args, Some(dir.path()));
        let b = run(args, Some(dir.path()));
        let c = run(args, None);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout);
    }
}

#[test]
fn sweep_reports_in_case_order() {
    let o = run(&["sweep", "--max-rank", "2", "--max-dim", "30"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "A1   (0)  dim 1  PASS");
    assert!(
        lines.last().unwrap().starts_with("sweep: ")
            && lines.last().unwrap().ends_with(" 0 failed")
    );
    let types: Vec<&str> = lines
        .iter()
        .filter(|l| !l.starts_with("kkp") && !l.starts_with("sweep"))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    let mut sorted = types.clone();
    sorted.dedup();
    assert_eq!(sorted, ["A1", "A2", "B2", "C2", "G2"]);
}

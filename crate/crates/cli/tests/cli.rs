use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn propcalc(args: &[&str], threads: Option<usize>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_propcalc"));
    c.args(args).current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    match threads {
        Some(t) => c.env("PROPCALC_THREADS", t.to_string()),
        None => c.env_remove("PROPCALC_THREADS"),
    };
    c.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) {
    let o = propcalc(args, None);
    assert_eq!(o.status.code(), Some(code), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, stdout(&o)).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(stdout(&o), want, "{name} differs from its golden file");
}

#[test]
fn golden_validate() {
    golden("validate_z.json", &["validate", "Z.json", "--canonical"], 0);
    golden("validate_bad_d2.json", &["validate", "bad_d2.json", "--canonical"], 2);
    golden("validate_bad_interchange.json", &["validate", "bad_interchange.json", "--canonical"], 2);
    golden("validate_algebra.json", &["validate", "alg_q2_left.json", "--prop", "free_prop.json", "--canonical"], 0);
}

#[test]
fn golden_constructions() {
    golden("homology_z.json", &["homology", "--complex", "Z.json", "--canonical"], 0);
    golden("path_object_two_term.json", &["path-object", "--complex", "two_term.json", "--canonical"], 0);
    golden("build_zp_unit.json", &["build-zp", "--prop", "unit_prop.json", "--canonical"], 0);
    golden("check_pi_end_q2.json", &["check-pi", "--prop", "end_q2.json", "--canonical"], 1);
    golden("pushout_product.json", &["pushout-product", "--max", "2", "--canonical"], 1);
}

#[test]
fn golden_pipelines() {
    golden(
        "pipeline_unit_q.json",
        &["pipeline", "--prop", "unit_prop.json", "--algebra", "alg_unit_q.json", "--canonical"],
        0,
    );
    golden(
        "pipeline_free_q2.json",
        &["pipeline", "--prop", "free_prop.json", "--algebra", "alg_q2_left.json", "--canonical"],
        0,
    );
    golden(
        "pipeline_corrupted_pi.json",
        &[
            "pipeline",
            "--prop",
            "free_prop.json",
            "--algebra",
            "alg_q2_left.json",
            "--pi-fault",
            "drop-sbar",
            "--canonical",
        ],
        1,
    );
}

#[test]
fn pipeline_is_deterministic_across_threads() {
    let args = ["pipeline", "--prop", "free_prop.json", "--algebra", "alg_q2_group.json", "--canonical"];
    let runs: Vec<String> = [Some(1), Some(1), Some(4), Some(4)].iter().map(|&t| stdout(&propcalc(&args, t))).collect();
    assert!(runs.iter().all(|r| r == &runs[0]));
    assert!(!runs[0].contains("timing_ms"));
    // timings appear without --canonical
    assert!(stdout(&propcalc(&args[..5], None)).contains("timing_ms"));
}

#[test]
fn lift_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("propcalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let lift = dir.join("lift.json");
    let o = propcalc(&["lift", "--prop", "free_prop.json", "--target", "yp", "--out", lift.to_str().unwrap()], None);
    assert!(o.status.success());
    let o = propcalc(&["validate", lift.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for alg in ["alg_q_mult.json", "alg_q2_left.json", "alg_q2_group.json"] {
        let o = propcalc(&["zigzag", "--lift", lift.to_str().unwrap(), "--algebra", alg], None);
        assert!(o.status.success(), "{alg}: {}", String::from_utf8_lossy(&o.stderr));
    }
    // the solution is stored, not re-solved: corrupting it is caught
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&lift).unwrap()).unwrap();
    v["solutions"][0]["value"] = serde_json::json!([]);
    std::fs::write(&lift, v.to_string()).unwrap();
    let o = propcalc(&["zigzag", "--lift", lift.to_str().unwrap(), "--algebra", "alg_q2_left.json"], None);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn lift_failure_is_a_check_failure() {
    let o = propcalc(&["lift", "--prop", "free_prop.json", "--pi-fault", "drop-sbar", "--canonical"], None);
    assert_eq!(o.status.code(), Some(1));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "lift.solved").unwrap();
    assert_eq!(c["pass"], false);
    assert!(c["witness"]["error"].as_str().unwrap().contains("functional"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(propcalc(&["homology", "--complex", "missing.json"], None).status.code(), Some(2));
    assert_eq!(propcalc(&["check-pi", "--prop", "Z.json"], None).status.code(), Some(2));
    assert_eq!(propcalc(&["check-pi", "--prop", "unit_prop.json", "--bound", "5"], None).status.code(), Some(2));
    assert_eq!(propcalc(&["validate", "alg_q2_left.json"], None).status.code(), Some(2));
}

#[test]
fn bound_truncates_inputs() {
    let o = propcalc(&["validate", "free_prop.json", "--bound", "2", "--canonical"], None);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["data"]["dims"].get("2,1").is_none());
    assert_eq!(r["data"]["dims"]["1,1"], 1);
}

#[test]
fn shipped_fixtures_are_valid() {
    for f in [
        "Z.json",
        "q.json",
        "q2.json",
        "two_term.json",
        "three_term.json",
        "four_term.json",
        "unit_prop.json",
        "free_prop.json",
        "end_q2.json",
    ] {
        assert!(fixture(f).exists());
        let o = propcalc(&["validate", f], None);
        assert!(o.status.success(), "{f}");
    }
    let o = propcalc(&["validate", "free_presentation.json", "--prop", "free_prop.json"], None);
    assert!(o.status.success());
}

//! Drives the compiled binary end to end: fixture generation, solving,
//! model checking, validation, witnesses, and exit codes.

use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_translucent"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn run_ok(dir: &Path, args: &[&str]) -> String {
    let (code, stdout, stderr) = run(dir, args);
    assert_eq!(code, 0, "{args:?} failed: {stderr}{stdout}");
    stdout
}

fn json(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("valid json output")
}

#[test]
fn solve_reports_ladder_rounds_and_survivors() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "game", "ladder", "--rungs", "5", "--out", "ladder5.json"]);

    let human = run_ok(dir.path(), &["solve", "--game", "ladder5.json"]);
    assert!(human.contains("player 1 survivors: {5}"), "{human}");
    assert!(human.contains("player 2 survivors: {5}"), "{human}");
    assert!(human.contains("rounds: 4"), "{human}");

    let v = json(&run_ok(dir.path(), &["solve", "--game", "ladder5.json", "--json"]));
    assert_eq!(v["kind"], "minimax");
    let rounds = v["rounds"].as_array().unwrap();
    assert_eq!(rounds.len(), 5);
    assert_eq!(rounds[4], serde_json::json!([["5"], ["5"]]));
}

#[test]
fn solve_strict_baseline_and_restricted_pool() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "game", "translucent-pd", "--out", "pd.json"]);

    // Minimax deletion keeps everything; the classical baseline removes C.
    let v = json(&run_ok(dir.path(), &["solve", "--game", "pd.json", "--json"]));
    assert_eq!(v["rounds"].as_array().unwrap().len(), 1);
    let v = json(&run_ok(dir.path(), &["solve", "--game", "pd.json", "--strict-baseline", "--json"]));
    assert_eq!(v["kind"], "strict");
    assert_eq!(v["rounds"].as_array().unwrap().last().unwrap(), &serde_json::json!([["S"], ["S"]]));

    let (code, _, _) = run(dir.path(), &["solve", "--game", "pd.json", "--restricted-pool"]);
    assert_eq!(code, 0);
}

#[test]
fn solve_lists_rationalizable_profiles_with_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "game", "translucent-pd", "--out", "pd.json"]);
    let v = json(&run_ok(dir.path(), &["solve", "--game", "pd.json", "--rationalizable", "--json"]));
    let entries = v["rationalizable"].as_array().unwrap();
    let profiles: Vec<&Value> = entries.iter().map(|e| &e["profile"]).collect();
    assert_eq!(
        profiles,
        [
            &serde_json::json!(["C", "C"]),
            &serde_json::json!(["C", "S"]),
            &serde_json::json!(["S", "C"]),
            &serde_json::json!(["S", "S"]),
        ]
    );
    assert_eq!(entries[3]["witness_sets"], serde_json::json!([["S"], ["S"]]));
}

#[test]
fn mc_matches_known_verdicts_on_the_bundled_structure() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "structure", "translucent-pd", "--out", "tpd.json"]);

    let stdout = run_ok(
        dir.path(),
        &["mc", "--structure", "tpd.json", "--formula", "RAT_1", "--state", "coop"],
    );
    assert!(stdout.contains("RAT_1 holds at coop"), "{stdout}");

    // The same switch looks profitable once its visibility is ignored.
    let (code, stdout, _) = run(
        dir.path(),
        &[
            "mc",
            "--structure",
            "tpd.json",
            "--formula",
            "RAT_1",
            "--mode",
            "probability",
            "--state",
            "coop",
        ],
    );
    assert_eq!(code, 1);
    assert!(stdout.contains("does not hold"), "{stdout}");

    let v = json(&run_ok(
        dir.path(),
        &["mc", "--structure", "tpd.json", "--formula", "CCBR", "--json"],
    ));
    assert_eq!(
        v["satisfying"],
        serde_json::json!(["coop", "coop_leak", "defect1", "defect2", "war"])
    );
}

#[test]
fn mc_rejects_bad_input_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "structure", "translucent-pd", "--out", "tpd.json"]);

    let (code, _, stderr) =
        run(dir.path(), &["mc", "--structure", "tpd.json", "--formula", "RAT_1 &"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error at byte"), "{stderr}");

    let (code, _, stderr) = run(
        dir.path(),
        &["mc", "--structure", "tpd.json", "--formula", "CCBR", "--mode", "probability"],
    );
    assert_eq!(code, 2);
    assert!(stderr.contains("counterfactual mode"), "{stderr}");

    let (code, _, stderr) = run(
        dir.path(),
        &["mc", "--structure", "tpd.json", "--formula", "true", "--state", "nope"],
    );
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown state"), "{stderr}");

    let (code, _, _) = run(dir.path(), &["mc", "--structure", "missing.json", "--formula", "true"]);
    assert_eq!(code, 2);
}

#[test]
fn validate_reports_conditions_and_translucency() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "structure", "translucent-pd", "--out", "tpd.json"]);

    let stdout = run_ok(dir.path(), &["validate", "--structure", "tpd.json"]);
    assert!(stdout.contains("appropriate: yes"), "{stdout}");

    let stdout = run_ok(dir.path(), &["validate", "--structure", "tpd.json", "--epsilon"]);
    assert_eq!(stdout, "translucency: 1/4\n");

    // Switched beliefs leak, so the structure is not strongly appropriate.
    let (code, stdout, _) = run(dir.path(), &["validate", "--structure", "tpd.json", "--strong"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("strongly appropriate: no"), "{stdout}");

    let (code, v) = {
        let (code, stdout, _) = run(
            dir.path(),
            &["validate", "--structure", "tpd.json", "--unilateral", "--epsilon", "--json"],
        );
        (code, json(&stdout))
    };
    assert_eq!(code, 1);
    assert_eq!(v["respects_unilateral_deviations"], Value::Bool(false));
    assert_eq!(v["translucency"], "1/4");
}

#[test]
fn witness_builds_verifies_and_writes() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "game", "translucent-pd", "--out", "pd.json"]);

    let v = json(&run_ok(
        dir.path(),
        &["witness", "--game", "pd.json", "--profile", "C,S", "--out", "w.json", "--json"],
    ));
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["designated"], "d");
    assert_eq!(v["states"], 9);

    // The written structure checks out on its own.
    let stdout = run_ok(dir.path(), &["validate", "--structure", "w.json", "--strong"]);
    assert!(stdout.contains("strongly appropriate: yes"), "{stdout}");
    run_ok(dir.path(), &["mc", "--structure", "w.json", "--formula", "CCBR", "--state", "d"]);
}

#[test]
fn witness_fails_for_profiles_outside_the_survivors() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "game", "ladder", "--rungs", "3", "--out", "l3.json"]);
    let (code, stdout, _) =
        run(dir.path(), &["witness", "--game", "l3.json", "--profile", "1,1", "--json"]);
    assert_eq!(code, 1);
    let v = json(&stdout);
    assert_eq!(v["pass"], Value::Bool(false));
    assert_eq!(v["strongly_appropriate"], Value::Bool(true));
    assert_eq!(v["designated_in_ccbr"], Value::Bool(false));

    let (code, _, stderr) =
        run(dir.path(), &["witness", "--game", "l3.json", "--profile", "1,nope"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("player 2 has no strategy named"), "{stderr}");
}

#[test]
fn gen_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(dir.path(), &["gen", "game", "random", "--seed", "7", "--out", "a.json"]);
    run_ok(dir.path(), &["gen", "game", "random", "--seed", "7", "--out", "b.json"]);
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);

    run_ok(
        dir.path(),
        &["gen", "structure", "random", "--game", "a.json", "--seed", "3", "--out", "ma.json"],
    );
    run_ok(
        dir.path(),
        &["gen", "structure", "random", "--game", "a.json", "--seed", "3", "--out", "mb.json"],
    );
    let ma = std::fs::read(dir.path().join("ma.json")).unwrap();
    let mb = std::fs::read(dir.path().join("mb.json")).unwrap();
    assert_eq!(ma, mb);

    let stdout = run_ok(dir.path(), &["validate", "--structure", "ma.json"]);
    assert!(stdout.contains("appropriate: yes"), "{stdout}");
}

#[test]
fn structure_game_paths_resolve_relative_to_the_structure_file() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("sub");
    std::fs::create_dir(&sub).unwrap();
    run_ok(&sub, &["gen", "game", "random", "--seed", "11", "--out", "g.json"]);
    run_ok(
        &sub,
        &["gen", "structure", "random", "--game", "g.json", "--seed", "1", "--out", "m.json"],
    );

    // Swap the inline game for a relative path, then check from the parent
    // directory.
    let text = std::fs::read_to_string(sub.join("m.json")).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["game"] = Value::String("g.json".into());
    std::fs::write(sub.join("m.json"), serde_json::to_string_pretty(&v).unwrap()).unwrap();

    run_ok(dir.path(), &["mc", "--structure", "sub/m.json", "--formula", "true"]);

    // An explicit --game flag overrides the path.
    run_ok(
        dir.path(),
        &[
            "mc",
            "--structure",
            "sub/m.json",
            "--game",
            "sub/g.json",
            "--formula",
            "true",
        ],
    );
}

#[test]
fn verify_runs_all_criteria() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&run_ok(dir.path(), &["verify", "--json"]));
    assert_eq!(v["pass"], Value::Bool(true));
    let criteria = v["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 11);
    assert!(criteria.iter().all(|c| c["pass"] == Value::Bool(true)));
}

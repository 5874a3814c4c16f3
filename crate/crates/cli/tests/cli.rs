use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycloskew")).args(args).env_remove("CYCLOSKEW_JOBS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn tables_print_published_rows() {
    let o = run(&["tables", "1", "10000"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0], "13\t(-3)²+(±2)²\t(13,6,2,3)\toracle-verified");
    assert_eq!(rows[20], "9413\t97²+(±2)²\t(9413,4706,2352,2353)\toracle-verified");

    let o = run(&["tables", "1", "10"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);

    let o = run(&["tables", "2", "1000", "--certify-cap", "0"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().nth(1), Some("9\t3=1²+2\t(9,4,1,2)\tnot-oracle-verified"));
    assert_eq!(out.lines().count(), 4);

    assert_eq!(run(&["tables", "2", "100000001"]).status.code(), Some(2));
    assert_eq!(run(&["tables", "3", "10"]).status.code(), Some(2));
}

#[test]
fn verify_prints_certificates() {
    let o = run(&["verify", "--q", "13", "--gen", "2", "--sets", "[[1,3,7,8,9,11]]", "--mode", "skew"]);
    assert!(o.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["kind"], "SkewPds");
    assert_eq!(cert["params"]["k"][0], 6);
    assert_eq!(cert["reference_set"], serde_json::json!([1, 3, 4, 9, 10, 12]));

    let o = run(&["verify", "--q", "13", "--gen", "2", "--sets", "[[1,2],[3,6],[9,5]]", "--mode", "external"]);
    assert!(o.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["kind"], "Edf");
    assert_eq!(cert["params"]["lambda"], 2);

    let o = run(&["verify", "--q", "13", "--gen", "2", "--sets", "[[1]]", "--mode", "internal"]);
    assert_eq!(o.status.code(), Some(1));
    let cert: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["kind"], "None");

    let dir = tempfile::tempdir().unwrap();
    let sets = dir.path().join("sets.json");
    std::fs::write(&sets, "[[1, 2]]").unwrap();
    let o = run(&["verify", "--q", "3^2", "--poly", "2,1,1", "--sets", sets.to_str().unwrap(), "--mode", "pds"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("(9,2,1,0)"));

    assert_eq!(run(&["verify", "--q", "13", "--sets", "[[1,1]]", "--mode", "pds"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--q", "13", "--sets", "[[1]]", "--mode", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--q", "13", "--sets", "{", "--mode", "pds"]).status.code(), Some(2));
}

#[test]
fn cycnum_compares_formulas_with_brute_force() {
    let o = run(&["cycnum", "--q", "13", "--e", "4", "--compare"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("agreement"));

    let o = run(&["cycnum", "--q", "9", "--poly", "2,1,1", "--e", "8"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim_end().ends_with("agreement"));

    let o = run(&["cycnum", "--q", "13", "--gen", "2", "--e", "4", "--closed-form"]);
    assert!(o.status.success());
    // C_0^4 = {1, 3, 9}: none of 2, 4, 10 is in it, so (0,0)_4 = 0.
    assert_eq!(stdout(&o).lines().nth(2).map(|l| l.split_whitespace().next()), Some(Some("0")));

    let o = run(&["cycnum", "--q", "13", "--e", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not divide"));
}

#[test]
fn scan_writes_a_catalog_that_rechecks() {
    let o = run(&["scan", "14", "16", "all"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let o = run(&["scan", "9", "400", "all", "--out", path.to_str().unwrap(), "--jobs", "2"]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let r5: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|e| e["q"] == 361 && e["recipe"] == "R5")
        .collect();
    assert_eq!(r5.len(), 1);
    let expected = &r5[0]["construction"]["claims"][0]["expected"];
    assert_eq!((&expected["k"][0], &expected["lambda"], &expected["mu"]), (&90.into(), &29.into(), &20.into()));
    assert_eq!(r5[0]["oracle_verified"], true);

    let o = run(&["catalog", path.to_str().unwrap(), "--check"]);
    assert!(o.status.success());
    assert!(!stdout(&o).contains("RECHECK FAILED"));

    // Tampering with a certificate is caught.
    let tampered: Vec<String> = text
        .lines()
        .map(|l| {
            let mut e: serde_json::Value = serde_json::from_str(l).unwrap();
            if e["q"] == 361 && e["recipe"] == "R5" {
                e["construction"]["claims"][0]["certificate"]["params"]["lambda"] = 28.into();
            }
            e.to_string() + "\n"
        })
        .collect();
    std::fs::write(&path, tampered.concat()).unwrap();
    assert_eq!(run(&["catalog", path.to_str().unwrap(), "--check"]).status.code(), Some(1));

    let o = run(&["scan", "26569", "26569", "R7"]);
    assert!(o.status.success());
    let e: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let claim = &e["plan"]["claims"][0]["expected"];
    assert_eq!(
        (&claim["v"], &claim["k"][0], &claim["lambda"], &claim["mu"]),
        (&26569.into(), &6642.into(), &1721.into(), &1640.into())
    );
    assert_eq!(e["oracle_verified"], false);
}

#[test]
fn env_var_overrides_jobs() {
    let o = Command::new(env!("CARGO_BIN_EXE_cycloskew"))
        .args(["scan", "9", "30", "R1", "--jobs", "1"])
        .env("CYCLOSKEW_JOBS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn recipes_lists_the_registry() {
    let o = run(&["recipes", "--json"]);
    assert!(o.status.success());
    let ids: Vec<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["id"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(ids.len(), 25);
    assert_eq!(ids[0], "R1");
}

use std::process::{Command, Output};

fn cohomforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohomforge")).args(args).env_remove("COHOMFORGE_THREADS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn symmetric_table_as_json() {
    let o = cohomforge(&["cohomology", "--group", "C2", "--module", "F2", "--theory", "symmetric", "--max-degree", "9", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["theory"], "HS");
    let nonzero: Vec<u64> = v["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| !d["torsion"].as_array().unwrap().is_empty())
        .map(|d| d["n"].as_u64().unwrap())
        .collect();
    assert_eq!(nonzero, [0, 1, 5, 9]);
}

#[test]
fn exterior_c5_text() {
    let o = cohomforge(&["cohomology", "--group", "C5", "--module", "Z", "--theory", "exterior", "--max-degree", "6"]);
    let text = stdout(&o);
    let cells: Vec<&str> = text.lines().skip(1).map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(cells, ["Z", "0", "Z/5", "0", "Z/5", "0", "0"]);
}

#[test]
fn trivial_group() {
    let o = cohomforge(&["cohomology", "--group", "C1", "--module", "Z", "--theory", "classical", "--max-degree", "3", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with(",0,")).count(), 3);
    let o = cohomforge(&["compare", "--group", "C1", "--module", "Z", "--max-degree", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for map in ["alpha", "beta", "gamma"] {
        assert!(v[map]["degrees"].as_array().unwrap().iter().all(|d| d["is_iso"] == true), "{map}");
    }
}

#[test]
fn compare_flags() {
    let o = cohomforge(&["compare", "--group", "C2", "--module", "F2", "--max-degree", "5", "--format", "csv"]);
    let gamma5 = stdout(&o).lines().find(|l| l.starts_with("γ") && l.contains(",5,")).unwrap().to_string();
    assert!(gamma5.ends_with(",true,false"), "{gamma5}");
    let o = cohomforge(&["compare", "--group", "C3", "--module", "Z", "--max-degree", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for map in ["alpha", "beta", "gamma"] {
        assert!(v[map]["degrees"].as_array().unwrap().iter().all(|d| d["is_iso"] == true), "{map}");
    }
}

#[test]
fn e1_pages() {
    let o = cohomforge(&["e1", "--group", "C2", "--module", "Z", "--pmax", "3", "--qmax", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["row0_is_zarelua"], true);
    for e in v["entries"].as_array().unwrap() {
        let zero = e["free_rank"] == 0 && e["torsion"].as_array().unwrap().is_empty();
        if e["p"].as_u64().unwrap() >= 2 {
            assert!(zero, "{e}");
        }
    }
    let o = cohomforge(&["e1", "--group", "S3", "--module", "Z", "--pmax", "5", "--qmax", "3", "--format", "csv"]);
    let rows: Vec<String> = stdout(&o).lines().map(String::from).collect();
    // three transposition-stabilized pairs with the sign character, one free orbit
    assert!(rows.contains(&"1,1,0,2;2;2,2:sign;2:sign;1:trivial;2:sign".to_string()));
    assert!(rows.contains(&"2,2,0,3,1:trivial;1:trivial;1:trivial;3:trivial".to_string()));
}

#[test]
fn json_is_identical_across_runs_and_thread_counts() {
    let args = ["e1", "--group", "S3", "--module", "Z", "--pmax", "4", "--qmax", "3", "--format", "json"];
    let base = cohomforge(&args).stdout;
    for t in ["1", "2", "4"] {
        let mut a = args.to_vec();
        a.extend(["--threads", t]);
        assert_eq!(cohomforge(&a).stdout, base, "--threads {t}");
    }
    let env = Command::new(env!("CARGO_BIN_EXE_cohomforge")).args(args).env("COHOMFORGE_THREADS", "3").output().unwrap();
    assert_eq!(env.stdout, base);
}

#[test]
fn exit_codes() {
    let bad_group = cohomforge(&["cohomology", "--group", "Q8x", "--module", "Z"]);
    assert_eq!(bad_group.status.code(), Some(2));
    let bad_theory = cohomforge(&["cohomology", "--group", "C2", "--module", "Z", "--theory", "quantum"]);
    assert_eq!(bad_theory.status.code(), Some(2));
    let guard = cohomforge(&["cohomology", "--group", "S3", "--module", "Z", "--max-degree", "7"]);
    assert_eq!(guard.status.code(), Some(3));
    let msg = String::from_utf8(guard.stderr).unwrap();
    assert!(msg.contains("--max-basis") && msg.contains("T^7"), "{msg}");
    let bad_env = Command::new(env!("CARGO_BIN_EXE_cohomforge"))
        .args(["cohomology", "--group", "C2", "--module", "Z"])
        .env("COHOMFORGE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn raising_the_guard() {
    let args = ["cohomology", "--group", "C2", "--module", "F2", "--theory", "classical", "--max-degree", "9", "--format", "csv"];
    let mut low = args.to_vec();
    low.extend(["--max-basis", "100"]);
    assert_eq!(cohomforge(&low).status.code(), Some(3));
    assert!(cohomforge(&args).status.success());
}

#[test]
fn writes_to_out() {
    let path = std::env::temp_dir().join(format!("cohomforge-out-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = cohomforge(&["cohomology", "--group", "C3", "--module", "Z/3", "--theory", "delta", "--max-degree", "4", "--format", "json", "--out", p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["theory"], "H_δ");
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn papercheck_passes() {
    let o = cohomforge(&["papercheck", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_pass"], true);
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 10);
    assert!(items.iter().all(|i| !i["anchor"].as_str().unwrap().is_empty() && i["seconds"].is_number()));
}

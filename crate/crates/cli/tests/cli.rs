use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fairprice_core::fair_division::anonymity_proof_shapley;
use fairprice_core::io::{parse_spec, read_reward_csv, Spec};
use fairprice_core::rational::exact_string;
use serde_json::Value;

fn games(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../games").join(name)
}

fn fairprice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fairprice")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn price_json(game: &str, method: &str) -> Value {
    let out = fairprice(&["price", "--game", games(game).to_str().unwrap(), "--method", method]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn exact_by_id(entries: &Value) -> Vec<(String, String)> {
    entries
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["id"].as_str().unwrap().to_string(), e["exact"].as_str().unwrap().to_string()))
        .collect()
}

fn final_value(csv: &str, policy: &str) -> f64 {
    let rows = read_reward_csv(csv).unwrap();
    rows.iter().rev().find(|r| r.policy == policy).unwrap().value
}

#[test]
fn linear_shapley_prices() {
    let doc = price_json("linear.json", "shapley");
    let payoffs = exact_by_id(&doc["results"][0]["payoffs"]);
    let want = [("s", "13/20"), ("r1", "1/10"), ("r2", "1/20")];
    assert_eq!(payoffs, want.map(|(a, b)| (a.to_string(), b.to_string())));
    assert_eq!(doc["results"][0]["payoffs"][0]["decimal"], "0.65");
    assert_eq!(doc["payment"], "per-recommendation");
}

#[test]
fn linear_csv_has_decimals() {
    let out = fairprice(&["price", "--game", games("linear.json").to_str().unwrap(), "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.starts_with("method,id,quantity,value\n"));
    assert!(text.contains("shapley,s,payoff,0.65\n"));
    assert!(text.contains("shapley,r2,price,0.05\n"));
}

#[test]
fn anonymity_proof_matches_library() {
    let path = games("arguments.json");
    let Spec::Arguments(ag) = parse_spec(&std::fs::read_to_string(&path).unwrap()).unwrap() else {
        panic!("argument spec expected");
    };
    let lib = anonymity_proof_shapley(&ag).unwrap();
    let doc = price_json("arguments.json", "anon-shapley");
    let got = exact_by_id(&doc["results"][0]["payoffs"]);
    let want: Vec<(String, String)> =
        lib.per_recommender.entries().iter().map(|(id, x)| (id.clone(), exact_string(x))).collect();
    assert_eq!(got, want);
}

#[test]
fn seller_takes_all_is_in_core() {
    let doc = price_json("linear.json", "core-check");
    assert_eq!(doc["results"][0]["vector"], "seller-takes-all");
    assert_eq!(doc["results"][0]["in_core"], true);
}

#[test]
fn empty_core_reports_weights() {
    let doc = price_json("nonmonotone.json", "core-nonempty");
    assert_eq!(doc["results"][0]["nonempty"], false);
    assert!(!doc["results"][0]["balanced_weights"].as_array().unwrap().is_empty());
}

#[test]
fn explicit_payoff_is_checked() {
    let out = fairprice(&[
        "price",
        "--game",
        games("threshold.json").to_str().unwrap(),
        "--method",
        "core-check",
        "--payoff",
        "s=1/4,r1=1/4",
    ]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["results"][0]["vector"], "payoff");
    assert_eq!(doc["results"][0]["in_core"], false);
}

#[test]
fn simulate_examples() {
    let reset = stdout(&fairprice(&[
        "simulate", "--p0", "0.5", "--l", "0.66", "--g", "1", "--r", "1", "--n", "200", "--policy", "all", "--reset",
    ]));
    assert!((final_value(&reset, "all") - 4.94).abs() < 0.01);

    let every = stdout(&fairprice(&["simulate", "--g", "1.33", "--policy", "every-k:3"]));
    assert_eq!(final_value(&every, "every-k:3"), 33.0);

    let one = stdout(&fairprice(&["simulate", "--n", "1", "--policy", "optimal"]));
    assert_eq!(one, "step,policy,expected_cumulative_reward,stderr\n1,optimal,0.5,0\n");
}

#[test]
fn simulate_reports_limit_without_recovery() {
    let out = fairprice(&["simulate", "--no-reset", "--n", "10"]);
    assert!(stderr(&out).contains("2.235159565"), "{}", stderr(&out));
}

#[test]
fn identical_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = fairprice(&[
            "simulate",
            "--g",
            "1.33",
            "--n",
            "60",
            "--policy",
            "all,every-k:2,optimal",
            "--mc",
            "--trials",
            "2000",
            "--seed",
            "9",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("a.csv"), run("b.csv"));

    let price = |name: &str| {
        let path = dir.path().join(name);
        fairprice(&[
            "price",
            "--game",
            games("linear.json").to_str().unwrap(),
            "--method",
            "shapley,nash,core-nonempty",
            "--out",
            path.to_str().unwrap(),
        ]);
        std::fs::read(path).unwrap()
    };
    assert_eq!(price("a.json"), price("b.json"));
}

#[test]
fn csv_round_trips() {
    let text = stdout(&fairprice(&[
        "simulate",
        "--g",
        "1.33",
        "--n",
        "30",
        "--policy",
        "all,every-k:3",
        "--mc",
        "--trials",
        "500",
    ]));
    let rows = read_reward_csv(&text).unwrap();
    assert_eq!(rows.len(), 60);
    assert!(rows.iter().all(|r| r.mc.is_some()));
    assert_eq!(fairprice_core::io::write_reward_csv(&rows), text);
}

#[test]
fn split_writes_one_file_per_policy() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("curve.csv");
    let out =
        fairprice(&["simulate", "--n", "12", "--policy", "all,every-k:3", "--split", "--out", base.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for name in ["curve-all.csv", "curve-every-k-3.csv"] {
        let rows = read_reward_csv(&std::fs::read_to_string(dir.path().join(name)).unwrap()).unwrap();
        assert_eq!(rows.len(), 12);
    }
    assert!(!base.exists());
}

#[test]
fn validation_errors_exit_2() {
    let cases: &[&[&str]] = &[
        &["simulate", "--l", "1.5"],
        &["simulate", "--p0", "abc"],
        &["simulate", "--policy", "every-k:0"],
        &["simulate", "--n", "0"],
        &["simulate", "--tol", "0"],
        &["simulate", "--mc", "--trials", "0"],
        &["verify", "--suite", "nope"],
    ];
    for args in cases {
        let out = fairprice(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error: "), "{args:?}");
    }
    let game = games("linear.json");
    for method in ["anon-shapley", "median"] {
        let out = fairprice(&["price", "--game", game.to_str().unwrap(), "--method", method]);
        assert_eq!(out.status.code(), Some(2), "{method}");
    }
    let out = fairprice(&["price", "--game", games("arguments.json").to_str().unwrap(), "--payment", "per-sale"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_exit_3() {
    let out = fairprice(&["simulate", "--g", "1.33", "--n", "501", "--policy", "optimal"]);
    assert_eq!(out.status.code(), Some(3));
    let out = fairprice(&["simulate", "--n", "100000000"]);
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(env!("CARGO_BIN_EXE_fairprice"))
        .args(["price", "--game", games("threshold.json").to_str().unwrap()])
        .env("FAIRPRICE_MAX_PLAYERS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn player_cap_override_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_fairprice"))
        .args(["price", "--game", games("linear.json").to_str().unwrap()])
        .env("FAIRPRICE_MAX_PLAYERS", "lots")
        .output()
        .unwrap();
    assert_ne!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("FAIRPRICE_MAX_PLAYERS"));
}

#[test]
fn write_failure_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("out.csv");
    let res = fairprice(&["simulate", "--n", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn malformed_specs_are_diagnosed() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("{\n  \"scenario\": \"linear\",\n  \"p\": 0.5,\n", "line"),
        ("[]", "top level"),
        ("{\"scenario\": \"linear\", \"p\": 2, \"delta\": 1, \"q\": [0.1]}", "p"),
        ("{\"scenario\": \"linear\", \"p\": \"1/0\", \"delta\": 1, \"q\": [0.1]}", "p"),
        ("{\"scenario\": \"linear\", \"p\": 0.5, \"delta\": -1, \"q\": [0.1]}", "delta"),
        ("{\"scenario\": \"linear\", \"p\": 0.5, \"delta\": 1}", "q"),
        ("{\"scenario\": \"cubic\", \"p\": 0.5, \"delta\": 1}", "scenario"),
        ("{\"scenario\": \"threshold\", \"p\": 0.5, \"delta\": 1, \"n\": 2, \"k\": 5, \"q\": 0.1}", "k"),
        ("{\"players\": [\"s\", \"s\"], \"scenario\": \"linear\", \"p\": 0.5, \"delta\": 1, \"q\": [0.1]}", "s"),
        ("{\"arguments\": [\"a\"], \"worth\": {\"z\": 1}, \"ownership\": {\"r1\": [\"a\"]}}", "z"),
        ("\u{feff}garbage", ""),
        ("", ""),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("bad{i}.json"));
        std::fs::write(&path, text).unwrap();
        let out = fairprice(&["price", "--game", path.to_str().unwrap(), "--method", "shapley,core-nonempty"]);
        let err = stderr(&out);
        assert_eq!(out.status.code(), Some(2), "case {i}: {err}");
        assert!(!err.contains("panicked"), "case {i}: {err}");
        assert!(err.contains(needle), "case {i}: {err}");
    }
    let out = fairprice(&["price", "--game", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let out = fairprice(&["verify", "--suite", "shapley-axioms", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| l.starts_with("PASS ")).count() >= 4);
    assert!(!text.contains("FAIL "));
}

use std::process::{Command, Output};

use serde_json::Value;

fn hhlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhlab"))
        .args(args)
        .env_remove("HHLAB_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = hhlab(&all);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn chain_homology_rank() {
    let o = hhlab(&[
        "chain-homology",
        "--n",
        "2",
        "--char",
        "0",
        "--q",
        "1",
        "--deg",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with(": 2"));
    let v = json(&[
        "chain-homology",
        "--n",
        "2",
        "--char",
        "0",
        "--q",
        "1",
        "--deg",
        "1",
    ]);
    assert_eq!(v["result"]["rank"], 2);
}

#[test]
fn projective_hh_json() {
    let v = json(&["hh", "--space", "pn", "--n", "2", "--char", "0"]);
    assert_eq!(v["command"], "hh");
    assert_eq!(v["result"]["hh"], serde_json::json!([1, 8, 10, 0, 0]));
    assert_eq!(v["params"]["argv"][0], "hh");
    for key in ["command", "params", "result", "paper_refs", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v.as_object().unwrap().len(), 5);
}

#[test]
fn small_characteristic_hh_has_no_totals() {
    let v = json(&["hh", "--space", "pn", "--n", "2", "--char", "2"]);
    assert_eq!(v["result"]["validity"], false);
    assert!(v["result"]["hh"].is_null());
}

#[test]
fn char_check_witness_and_expect() {
    let o = hhlab(&[
        "char-check",
        "--n",
        "2",
        "--char",
        "2",
        "--qmax",
        "3",
        "--degmax",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fails at q = 2, d = 2"));
    let v = json(&[
        "char-check",
        "--n",
        "2",
        "--char",
        "2",
        "--qmax",
        "3",
        "--degmax",
        "4",
    ]);
    assert_eq!(v["result"]["verdict"], "fails");
    assert_eq!(v["result"]["witness"]["q"], 2);
    assert_eq!(v["result"]["witness"]["d"], 2);
    let base = [
        "char-check",
        "--n",
        "2",
        "--char",
        "2",
        "--qmax",
        "3",
        "--degmax",
        "4",
        "--expect",
    ];
    let mut holds = base.to_vec();
    holds.push("holds");
    assert_eq!(hhlab(&holds).status.code(), Some(1));
    let mut fails = base.to_vec();
    fails.push("fails");
    assert_eq!(hhlab(&fails).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    let cases: [&[&str]; 5] = [
        &[
            "chain-homology",
            "--n",
            "2",
            "--char",
            "4",
            "--q",
            "1",
            "--deg",
            "1",
        ],
        &["chain-homology", "--n", "2"],
        &["cech", "--n", "2", "--char", "0", "--wedge-tangent", "3"],
        &["hh", "--space", "torus", "--n", "1", "--char", "0"],
        &[
            "char-check",
            "--n",
            "3",
            "--char",
            "0",
            "--qmax",
            "1",
            "--degmax",
            "4",
        ],
    ];
    for args in cases {
        let o = hhlab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn expected_rank_mismatch_exits_one() {
    let o = hhlab(&[
        "chain-homology",
        "--n",
        "2",
        "--char",
        "0",
        "--q",
        "1",
        "--deg",
        "1",
        "--expect",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_is_byte_identical_across_runs_and_workers() {
    let args = [
        "ext",
        "--n",
        "3",
        "--char",
        "0",
        "--scaling",
        "--format",
        "json",
    ];
    let a = hhlab(&args).stdout;
    let b = Command::new(env!("CARGO_BIN_EXE_hhlab"))
        .args(args)
        .env("HHLAB_WORKERS", "1")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let factors: Vec<&str> = v["result"]["scaling"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["factor"].as_str().unwrap())
        .collect();
    assert_eq!(factors, ["1", "1", "2", "6"]);
}

#[test]
fn cech_and_cochain() {
    let v = json(&["cech", "--n", "1", "--char", "0", "--wedge-tangent", "1"]);
    assert_eq!(v["result"]["h"], serde_json::json!([3, 0]));
    let v = json(&["cech", "--n", "1", "--char", "0", "--line-bundle", "-2"]);
    assert_eq!(v["result"]["h"], serde_json::json!([0, 1]));
    let v = json(&[
        "cochain", "--n", "2", "--char", "2", "--q", "2", "--deg", "2",
    ]);
    assert_eq!(v["result"]["rank"], 1);
}

#[test]
fn hkr_check_reports_non_isomorphism_in_characteristic_two() {
    let v = json(&[
        "hkr-check",
        "--n",
        "2",
        "--char",
        "2",
        "--q",
        "2",
        "--deg",
        "2",
    ]);
    assert_eq!(v["result"]["pi_eps_failures"], 0);
    assert_eq!(v["result"]["induced_rank"], 0);
    assert_eq!(v["result"]["pi_is_isomorphism"], false);
}

#[test]
fn help_names_the_constructs() {
    let expected = [
        ("chain-homology", "Hochschild homology"),
        ("hkr-check", "π ε = q!"),
        ("ext", "Koszul resolution"),
        ("cochain", "graded dual"),
        ("cech", "Čech cohomology"),
        ("hh", "HKR decomposition"),
        ("char-check", "characteristic criterion"),
        ("selfcheck", "acceptance suite"),
    ];
    for (cmd, phrase) in expected {
        let o = hhlab(&[cmd, "--help"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains(phrase), "{cmd}");
    }
}

#[test]
fn selfcheck_subset() {
    let o = hhlab(&["selfcheck", "--criteria", "3,5,6,7,8", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("[PASS]")).count(), 5);
}

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

use zerocohom::module::ZeroModule;
use zerocohom::presentation::parse_presentation;
use zerocohom::semigroup::catalog::{all_semigroups, cyclic_group, uvw_semigroup};
use zerocohom::semigroup::{adjoin, Adjoin, Semigroup};
use zerocohom::{AbGroup, Int, IntMatrix};
use zerocohom_cli::format::{self, Coefficients};
use zerocohom_cli::{execute, exit, Outcome};

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Outcome {
    let mut argv = vec!["zcohom"];
    argv.extend_from_slice(args);
    execute(argv)
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, exit::OK, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("report is JSON")
}

fn write_semigroup(dir: &TempDir, name: &str, s: &Semigroup) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, format::semigroup_to_json(s)).unwrap();
    path
}

#[test]
fn uvw_second_cohomology_is_klein_four() {
    let r = report(&["cohom", "--semigroup", &data("uvw.json"), "--module", &data("triv-z2.json"), "--degree", "2", "--variant", "zero"]);
    assert_eq!(r["result"]["invariant_factors"], serde_json::json!([2, 2]));
    assert_eq!(r["witnesses"]["generating_cocycles"].as_array().unwrap().len(), 2);
    assert_eq!(r["command"]["name"], "cohom");
}

#[test]
fn cohom_oracle_agrees_on_every_degree() {
    for (n, variant) in [(0, "zero"), (1, "zero"), (2, "zero"), (3, "zero"), (1, "em"), (2, "em")] {
        let d = n.to_string();
        let r = report(&["cohom", "--semigroup", &data("uvw.json"), "--group", "2", "--degree", &d, "--variant", variant, "--oracle"]);
        assert_eq!(r["result"]["oracle"]["status"], "pass", "degree {n} {variant}");
    }
}

#[test]
fn tsemigroup_constants() {
    let r = report(&["tsemigroup"]);
    let res = &r["result"];
    assert_eq!(res["order"], 25);
    assert_eq!(res["unit_group"]["order"], 6);
    assert_eq!(res["unit_group"]["abelian"], false);
    assert_eq!(res["rees"]["rows"], 3);
    assert_eq!(res["rees"]["columns"], 3);
    assert_eq!(res["rees"]["group_order"], 2);
    assert_eq!(res["rees"]["sandwich"].as_array().unwrap().len(), 3);
    // The enumerated sandwich carries a nontrivial cycle; the all-ones one does not.
    assert_eq!(res["rees"]["matches_reference"], false);
    assert_eq!(res["rees"]["idempotent_generated"], 19);
}

#[test]
fn brauer_gf4_over_gf2() {
    let r = report(&["brauer", "--q", "2", "--n", "2", "--oracle"]);
    assert_eq!(r["result"]["component_count"], 2);
    assert_eq!(r["result"]["all_trivial"], true);
    assert_eq!(r["result"]["oracle"]["status"], "pass");
}

#[test]
fn presentation_enumeration_and_caps() {
    let r = report(&["enumerate", "--presentation", &data("t.pres"), "--monoid"]);
    assert_eq!(r["result"]["order"], 25);
    let capped = run(&["enumerate", "--presentation", &data("t.pres"), "--monoid", "--bound", "10"]);
    assert_eq!(capped.code, exit::CAP);
    assert!(capped.stdout.is_empty());
    let r = report(&["validate", "--presentation", &data("t.pres"), "--monoid"]);
    assert_eq!(r["result"]["is_monoid"], true);
}

#[test]
fn input_errors_exit_two_without_output() {
    let dir = TempDir::new().unwrap();
    let bad_json = dir.path().join("bad.json");
    std::fs::write(&bad_json, "{ not json").unwrap();
    let non_assoc = dir.path().join("nonassoc.json");
    std::fs::write(&non_assoc, r#"{"elements":["a","b"],"table":[["b","a"],["a","a"]]}"#).unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["cohom".into(), "--degree".into(), "1".into()],
        vec!["validate".into(), "--semigroup".into(), bad_json.display().to_string()],
        vec!["validate".into(), "--semigroup".into(), non_assoc.display().to_string()],
        vec!["validate".into(), "--semigroup".into(), dir.path().join("missing.json").display().to_string()],
        vec!["cohom".into(), "--semigroup".into(), data("uvw.json"), "--group".into(), "2,3".into(), "--degree".into(), "1".into()],
        vec!["no-such-command".into()],
    ];
    for args in cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = run(&argv);
        assert_eq!(out.code, exit::INPUT, "{args:?}: {}", out.stderr);
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn degree_cap_exits_three() {
    let out = run(&["cohom", "--semigroup", &data("uvw.json"), "--group", "2", "--degree", "9"]);
    assert_eq!(out.code, exit::CAP, "{}", out.stderr);
    assert!(out.stdout.is_empty());
}

#[test]
fn reports_are_byte_stable() {
    let args = ["schur", "--semigroup", &data("uvw.json"), "--group", "2"];
    let dir = TempDir::new().unwrap();
    let monoid = write_semigroup(&dir, "m.json", &adjoin(&uvw_semigroup(), Adjoin::Identity));
    let m = monoid.display().to_string();
    for argv in [
        vec!["cohom", "--semigroup", &data("uvw.json"), "--group", "2", "--degree", "2"],
        vec!["schur", "--semigroup", &m, "--group", "2"],
        vec!["tsemigroup"],
    ] {
        let a = run(&argv);
        let b = run(&argv);
        assert_eq!(a.code, exit::OK, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
    assert_eq!(run(&args).code, exit::INPUT, "schur needs a monoid");
}

#[test]
fn schur_and_oracle_on_a_monoid() {
    let dir = TempDir::new().unwrap();
    let monoid = write_semigroup(&dir, "m.json", &adjoin(&cyclic_group(2), Adjoin::Zero));
    let m = monoid.display().to_string();
    let r = report(&["schur", "--semigroup", &m, "--group", "2", "--oracle"]);
    assert_eq!(r["result"]["oracle"]["status"], "pass");
    assert!(!r["result"]["components"].as_array().unwrap().is_empty());
    let r = report(&["oracle", "--semigroup", &m, "--group", "2", "--degree", "2"]);
    let checks = r["result"]["checks"].as_object().unwrap();
    assert!(checks.values().all(|c| c["status"] == "pass"), "{checks:?}");
    assert!(checks.contains_key("schur_multiplier"));
}

#[test]
fn natural_systems_and_complex_comparison() {
    let dir = TempDir::new().unwrap();
    let monoid = write_semigroup(&dir, "m.json", &adjoin(&uvw_semigroup(), Adjoin::Identity));
    let m = monoid.display().to_string();
    let r = report(&["compare-complexes", "--semigroup", &m, "--group", "2", "--degree", "2"]);
    assert_eq!(r["result"]["agree"], true);
    let r = report(&["natsys", "--semigroup", &m, "--group", "2", "--degree", "2"]);
    let direct = report(&["cohom", "--semigroup", &m, "--group", "2", "--degree", "2"]);
    assert_eq!(r["result"]["cohomology"][2]["invariant_factors"], direct["result"]["invariant_factors"]);
}

#[test]
fn small_structures() {
    let r = report(&["tsubsets", "--group", "2"]);
    assert_eq!(r["result"]["count"], 3);
    let r = report(&["modifications", "--group", "2"]);
    assert_eq!(r["result"]["count"], 2);
    let r = report(&["gown", "--semigroup", &data("uvw.json"), "--bound", "2"]);
    assert!(r["result"]["classes"].as_array().unwrap().len() >= 3);
    let r = report(&["gown", "--presentation", &data("t.pres"), "--monoid"]);
    assert!(!r["result"]["presentation"].as_str().unwrap().contains("zeros"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_zcohom");
    let ok = Command::new(bin).args(["tsubsets", "--group", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(exit::OK));
    assert!(serde_json::from_slice::<Value>(&ok.stdout).is_ok());
    let bad = Command::new(bin).args(["tsubsets", "--group", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(exit::INPUT));
    assert!(bad.stdout.is_empty());
}

#[test]
fn semigroups_round_trip() {
    let mut all = all_semigroups(3);
    all.push(uvw_semigroup());
    all.push(adjoin(&uvw_semigroup(), Adjoin::Identity));
    for s in all {
        let back = format::parse_semigroup(&format::semigroup_to_json(&s)).unwrap();
        assert_eq!(back, s);
    }
}

#[test]
fn modules_round_trip() {
    let s = adjoin(&uvw_semigroup(), Adjoin::Identity);
    let a = AbGroup::from_orders(&[Int::from(2), Int::from(4)]);
    let id = IntMatrix::identity(2);
    let zero = IntMatrix::zeros(2, 2);
    let action: Vec<IntMatrix> = (0..s.len()).map(|x| if s.is_zero(x) { zero.clone() } else { id.clone() }).collect();
    let m = ZeroModule::new(s.clone(), a, action).unwrap();
    let c = Coefficients::Left(m);
    assert_eq!(format::parse_module(&s, &format::module_to_json(&c)).unwrap(), c);

    let text = r#"{"invariant_factors":[2],"action":{"u":[[1]]},"right_action":{"v":[[1]]}}"#;
    let b = format::parse_module(&s, text).unwrap();
    assert!(matches!(b, Coefficients::Both(_)));
    assert_eq!(format::parse_module(&s, &format::module_to_json(&b)).unwrap(), b);
}

#[test]
fn presentations_round_trip() {
    for text in [
        std::fs::read_to_string(data("t.pres")).unwrap(),
        "gens: a b; rels: ab=ba; zeros: aa, bb".to_string(),
        "gens: x".to_string(),
    ] {
        let p = parse_presentation(&text).unwrap();
        assert_eq!(parse_presentation(&p.to_text()).unwrap(), p);
    }
}

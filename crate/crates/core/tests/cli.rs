mod common;

use std::process::Command;

use cartwreath::verify::{VerificationReport, Verdict};
use common::data;
use proptest::prelude::*;

fn cartwreath(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cartwreath")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn prop_reports_round_trip() {
    for prop in ["3.2", "3.4", "3.6"] {
        for t in ["c2.tbl", "c3.tbl", "s3.tbl"] {
            let (code, out, err) = cartwreath(&["prop", prop, "--table", &path(t), "--k", "2", "--format", "json"]);
            assert_eq!(code, 0, "{prop} {t}: {err}");
            let report = VerificationReport::from_json(&out).unwrap();
            assert_eq!(report.verdict, Verdict::Pass);
            assert_eq!(report.proposition, prop);
            let again = VerificationReport::from_json(&report.to_json()).unwrap();
            assert_eq!(again, report);
        }
    }
}

#[test]
fn hypothesis_failure_exits_two() {
    let (code, out, _) = cartwreath(&["prop", "3.2", "--table", &path("c2.tbl"), "--k", "1", "--format", "json"]);
    assert_eq!(code, 2);
    assert_eq!(VerificationReport::from_json(&out).unwrap().verdict, Verdict::HypothesisNotSatisfied);
}

#[test]
fn failed_verification_exits_one() {
    let dir = std::env::temp_dir().join(format!("cartwreath-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let group = dir.join("s4.gen");
    std::fs::write(&group, "4\n1 2 3 0\n1 0 2 3\n").unwrap();
    let decomp = dir.join("square.part");
    std::fs::write(&decomp, "0,1\n2,3\n\n0,2\n1,3\n").unwrap();
    let (code, out, _) = cartwreath(&["embed", "--group", group.to_str().unwrap(), "--decomp", decomp.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    // the dihedral group of the square preserves it
    std::fs::write(&group, "4\n1 3 0 2\n0 2 1 3\n").unwrap();
    let (code, out, _) = cartwreath(&["embed", "--group", group.to_str().unwrap(), "--decomp", decomp.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    std::fs::write(&decomp, "0,1\n2,3\n\n0,1\n2,3\n").unwrap();
    assert_eq!(cartwreath(&["cartdec", "verify", decomp.to_str().unwrap()]).0, 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn invalid_inputs_exit_two() {
    let (code, _, err) = cartwreath(&["prop", "3.4", "--table", &path("cube8.part")]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    assert_eq!(cartwreath(&["frobnicate"]).0, 2);
    assert_eq!(cartwreath(&["wreath", "order", "--gamma", "1", "--k", "2"]).0, 2);
}

#[test]
fn budgets_exit_three() {
    assert_eq!(cartwreath(&["--cap", "100", "prop", "3.4", "--table", &path("s3.tbl")]).0, 3);
    assert_eq!(cartwreath(&["--cap", "1000", "wreath", "order", "--gamma", "3", "--k", "3"]).0, 3);
}

#[test]
fn text_output() {
    let (code, out, _) = cartwreath(&["cartdec", "verify", &path("cube8.part")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("cartdec: PASS"));
    let (_, out, _) = cartwreath(&["wreath", "order", "--gamma", "3", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 72);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn act_json_agrees_with_library(
        base in prop::collection::vec(common::perm_strategy(3), 2),
        swap in any::<bool>(),
        phi in prop::collection::vec(0usize..3, 2),
    ) {
        let spec: Vec<String> = base
            .iter()
            .map(|p| p.images().iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        let element = format!("{}|{}", spec.join(";"), if swap { "(0 1)" } else { "()" });
        let point = format!("{},{}", phi[0], phi[1]);
        let (code, out, err) = cartwreath(&["wreath", "act", "--gamma", "3", "--k", "2", "--element", &element, "--point", &point, "--format", "json"]);
        prop_assert_eq!(code, 0, "{}", err);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let top = if swap { vec![1, 0] } else { vec![0, 1] };
        let g = cartwreath::WreathElement::new(base.clone(), cartwreath::Permutation::from_images(top).unwrap()).unwrap();
        prop_assert_eq!(v["image"].clone(), serde_json::json!(g.act(&phi).unwrap()));
    }
}

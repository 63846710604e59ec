use std::process::{Command, Output};

use serde_json::Value;

fn excseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_excseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn d4_signed_value() {
    let out = excseq(&[
        "gf",
        "--quiver",
        "D4:>>>",
        "--method",
        "recursion",
        "--collapse",
        "--eval",
        "2",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["value"].to_string(), "1200");
    assert_eq!(v["collapsed"], "24*z^4 + 72*z^3 + 54*z^2 + 12*z");
}

#[test]
fn single_vertex_enumeration() {
    let out = excseq(&["enumerate", "--quiver", "A1:", "--len", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1);
    let v: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["relproj"], serde_json::json!([true]));
    assert_eq!(v["relinj"], serde_json::json!([true]));
    assert_eq!(v["terms"], serde_json::json!([[1]]));
}

#[test]
fn csv_has_header_and_one_row_per_sequence() {
    let out = excseq(&[
        "enumerate",
        "--quiver",
        "A3:<>",
        "--len",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("terms,relproj,relinj,perp_type"));
    assert_eq!(text.lines().count(), 1 + 16);
}

#[test]
fn indecs_export() {
    let v = json(&excseq(&["indecs", "--quiver", "A2:>"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(r["hom_row"].as_array().unwrap().len(), 3);
    }
}

#[test]
fn quiver_summary() {
    let v = json(&excseq(&["quiver", "--quiver", "A2:<+D4:>>>"]));
    assert_eq!(v["vertices"], 6);
    assert_eq!(v["components"][1]["type"], "D4");
    assert_eq!(v["components"][1]["coxeter_number"], 6);
}

#[test]
fn d4_independence_fails_with_exit_one() {
    let out = excseq(&["independence", "--quiver", "D4:<<<", "--len", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["ok"], false);
    assert_eq!(v["failures"][0]["pos_left"], serde_json::json!([2, 3]));
}

#[test]
fn a_independence_holds() {
    let out = excseq(&[
        "independence",
        "--quiver",
        "A4:<><",
        "--len",
        "3",
        "--injective",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["subsets_tested"], 7);
}

#[test]
fn tally_and_signed_reports() {
    let v = json(&excseq(&["tally", "--quiver", "A3:<<", "--len", "1"]));
    assert_eq!(v["ok"], true);
    assert_eq!(v["by_type"]["(1,1)"]["count"], 2);
    assert_eq!(v["by_type"]["(0,2)"]["leftmost_proj"], 2);
    let v = json(&excseq(&["signed", "--quiver", "A3:><", "--len", "3"]));
    assert_eq!(v["per_sequence"].to_string(), "84");
}

#[test]
fn forests_subcommands() {
    assert_eq!(json(&excseq(&["forests", "--n", "3"]))["count"], 16);
    assert_eq!(
        json(&excseq(&["forests", "--n", "3", "--gf"]))["ascending_gf"],
        "2*z^2 + 8*z + 6"
    );
    assert_eq!(
        json(&excseq(&["forests", "--n", "4", "--independence"]))["ok"],
        true
    );
    assert_eq!(
        json(&excseq(&["forests", "--n", "3", "--match-excseq"]))["ok"],
        true
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(excseq(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        excseq(&["quiver", "--quiver", "E6:>>>>>"]).status.code(),
        Some(2)
    );
    assert_eq!(
        excseq(&["verify", "all", "--nmax", "9"]).status.code(),
        Some(2)
    );
    let err = excseq(&["quiver", "--quiver", "A3:<x"]);
    assert!(String::from_utf8(err.stderr).unwrap().contains("`x`"));
}

#[test]
fn verify_cycle_single_h() {
    let out = excseq(&["verify", "cycle", "--h", "12"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["h"], 12);
    let worked = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "cycle/h12/(0,1,2,2,2)/worked_example")
        .unwrap();
    assert_eq!(worked["actual"]["total"], 240);
}

#[test]
fn report_round_trips_byte_for_byte() {
    let out = excseq(&["verify", "gfrec", "--nmax", "3"]);
    assert!(out.status.success());
    let v = json(&out);
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again.as_bytes(), out.stdout.as_slice());
}

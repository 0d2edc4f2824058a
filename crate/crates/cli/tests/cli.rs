use std::path::PathBuf;
use std::process::Command;

use isoheight_cli::run;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn go(args: &[&str]) -> isoheight_cli::Report {
    let mut argv = vec!["isoheight"];
    argv.extend_from_slice(args);
    run(argv)
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.push("--json");
    let r = go(&v);
    serde_json::from_str(&r.render()).expect("valid json")
}

#[test]
fn genus_49() {
    let r = go(&["x0", "genus", "49"]);
    assert!(r.ok());
    assert_eq!(r.results["genus"], 1);
    assert!(r.render_text().contains("genus: 1"));
}

#[test]
fn height_of_expression() {
    let r = go(&["height", "(t^3+1)/t"]);
    assert!(r.ok());
    assert_eq!(r.results["height"], 3);
    let r = go(&["height", "t^10 + 2", "--field", "Fp", "--p", "5"]);
    assert_eq!(r.results["insep_degree"], 5);
    assert_eq!(go(&["height", "1/(t-t)"]).exit_status, 2);
    assert_eq!(go(&["height", "t", "--field", "Fp"]).exit_status, 2);
}

#[test]
fn bound_calculators() {
    assert_eq!(
        go(&["bounds", "isogeny", "--genus", "0", "--refined"]).results["bound"],
        25
    );
    assert_eq!(
        go(&["bounds", "isogeny", "--genus", "0"]).results["bound"],
        49
    );
    let r = go(&[
        "bounds", "isogeny", "--genus", "2", "--d1", "25", "--d2", "5",
    ]);
    assert_eq!(r.results["bound"], 490);
    assert_eq!(go(&["bounds", "shafarevich"]).results["bound"], 2401);
    let r = go(&[
        "bounds",
        "shafarevich",
        "--genus",
        "1",
        "--m",
        "125",
        "--p",
        "5",
    ]);
    assert_eq!(r.results["bound"], 9604);
    let r = go(&["bounds", "cyclic", "--x", "10"]);
    assert_eq!(r.results["count"], 82);
    assert!(r.ok());
    assert_eq!(
        go(&["bounds", "shafarevich", "--m", "6", "--p", "5"]).exit_status,
        2
    );
}

#[test]
fn json_carries_every_text_field() {
    let cases: Vec<Vec<String>> = vec![
        vec!["x0".into(), "genus".into(), "3721".into()],
        vec!["height".into(), "256*(t^2-t+1)^3/(t^2*(t-1)^2)".into()],
        vec!["curve-info".into(), fixture("legendre_q.curve")],
        vec!["verify".into(), fixture("legendre_f5.curve")],
        vec![
            "bounds".into(),
            "cyclic".into(),
            "--x".into(),
            "100".into(),
            "--p".into(),
            "3".into(),
        ],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = go(&args).render_text();
        let v = json(&args);
        assert_eq!(
            v["command"].as_str().unwrap(),
            text.lines().next().unwrap().trim_start_matches("command: ")
        );
        for section in ["inputs", "results"] {
            for (k, val) in v[section].as_object().unwrap() {
                let shown = match val {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert!(
                    text.contains(&format!("  {k}: {shown}")),
                    "{k} missing from text"
                );
            }
        }
        for c in v["checks"].as_array().unwrap() {
            assert!(text.contains(c["name"].as_str().unwrap()));
            assert!(text.contains(c["lhs"].as_str().unwrap()));
        }
        assert_eq!(v["exit_status"], 0);
        // deterministic output
        assert_eq!(json(&args), v);
    }
}

#[test]
fn curve_info_legendre() {
    let r = go(&["curve-info", &fixture("legendre_q.curve")]);
    assert!(r.ok(), "{}", r.render_text());
    assert_eq!(r.results["modular_height"], 6);
    assert_eq!(r.results["minimal_discriminant_degree"], 12);
    assert_eq!(r.results["conductor_degree"], 4);
    assert_eq!(r.results["differential_height"], "1");
    assert_eq!(
        r.results["two_torsion_x"],
        serde_json::json!(["0", "1", "t"])
    );
}

#[test]
fn isogeny_subcommands() {
    let q = fixture("legendre_q.curve");
    let r = go(&["isogeny", "velu", &q, "--kernel-point", "0,0"]);
    assert!(r.ok(), "{}", r.render_text());
    assert_eq!(r.results["isogeny"]["h_mod_codomain"], 6);
    assert_eq!(r.results["isogeny"]["x_map"], "(x^2 + t)/x");
    let r = go(&["isogeny", "velu", &q, "--kernel-poly", "x - t"]);
    assert!(r.ok());
    let r = go(&["isogeny", "dual", &q, "--kernel-poly", "x - 1"]);
    assert!(r.ok(), "{}", r.render_text());
    assert!(r
        .checks
        .iter()
        .any(|c| c.name.starts_with("dual identity") && c.ok));

    let f5 = fixture("legendre_f5.curve");
    let r = go(&["isogeny", "frobenius", &f5, "--e", "2"]);
    assert!(r.ok());
    assert_eq!(r.results["isogeny"]["h_mod_codomain"], 150);
    let r = go(&["isogeny", "verschiebung", &f5]);
    assert!(r.ok());
    assert_eq!(r.results["isogeny"]["h_mod_domain"], 30);
    assert_eq!(r.results["isogeny"]["h_mod_codomain"], 6);
    let r = go(&["isogeny", "dual", &f5, "--e", "1"]);
    assert!(r.ok(), "{}", r.render_text());

    let tate = fixture("tate5_f7.curve");
    let r = go(&["isogeny", "velu", &tate, "--kernel-point", "0,0"]);
    assert!(r.ok(), "{}", r.render_text());
    assert_eq!(r.results["isogeny"]["degree"], 5);
}

#[test]
fn bad_inputs_exit_nonzero() {
    let q = fixture("legendre_q.curve");
    assert_eq!(go(&["isogeny", "velu", &q]).exit_status, 2);
    assert_eq!(
        go(&["isogeny", "velu", &q, "--kernel-point", "2,0"]).exit_status,
        2
    );
    assert_eq!(go(&["isogeny", "frobenius", &q]).exit_status, 2);
    assert_eq!(
        go(&["curve-info", &fixture("singular.curve")]).exit_status,
        2
    );
    assert_eq!(
        go(&["curve-info", &fixture("missing.curve")]).exit_status,
        2
    );
    assert_eq!(go(&["x0", "genus", "0"]).exit_status, 2);
    assert_eq!(go(&["frobnicate"]).exit_status, 2);
}

#[test]
fn verify_fixtures() {
    for f in [
        "legendre_q.curve",
        "legendre_f5.curve",
        "legendre_f7.curve",
        "tate5_f7.curve",
    ] {
        let r = go(&["verify", &fixture(f)]);
        assert!(r.ok(), "{f}: {}", r.render_text());
        assert!(r.checks.len() >= 3);
    }
}

#[test]
fn scan_and_export() {
    let dir = std::env::temp_dir().join(format!("isoheight-scan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("scan.csv");
    let r = go(&[
        "x0",
        "scan",
        "--max",
        "400",
        "--export",
        csv.to_str().unwrap(),
    ]);
    assert!(r.ok());
    assert_eq!(r.results["worst_49"]["N"], 49);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 401);
    assert!(text.lines().any(|l| l.starts_with("49,56,0,2,8,1,")));
    let js = dir.join("scan.json");
    go(&[
        "x0",
        "scan",
        "--max",
        "10",
        "--export",
        js.to_str().unwrap(),
    ]);
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 10);
    assert_eq!(rows[9]["genus"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_isoheight");
    let out = Command::new(bin)
        .args(["x0", "genus", "49", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["genus"], 1);
    let out = Command::new(bin)
        .args(["curve-info", &fixture("singular.curve")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("singular"));
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert!(out.status.success());
}

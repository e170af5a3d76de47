use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gerbeforge")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn all_pass(v: &Value) -> bool {
    v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true)
}

#[test]
fn cyclic_h3() {
    let (code, v) = report(&["cohomology", "--group", "catalog:cyclic 4", "--cx", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["H^3"], "Z/4");
    assert_eq!(v["results"]["structure"], serde_json::json!([4]));
}

#[test]
fn finite_coefficients() {
    let (code, v) = report(&["cohomology", "--group", "catalog:elementary-abelian 2^2", "--coeff", "mu:2", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["H^2"], "Z/2 x Z/2 x Z/2");
}

#[test]
fn dihedral_count_line() {
    let (code, v) = report(&["clifford", "--group", "catalog:dihedral 4", "--kernel", "center"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count_line"], "5 = 4 + 1");
}

#[test]
fn theorem_bijection_battery() {
    let (code, v) = report(&["battery", "theorem-bijection"]);
    assert_eq!(code, 0);
    assert!(all_pass(&v));
    assert!(v["checks"].as_array().unwrap().len() >= 24);
}

#[test]
fn catalog_is_sorted_and_stable() {
    let (code, v) = report(&["catalog"]);
    assert_eq!(code, 0);
    for key in ["groups", "batteries"] {
        let names: Vec<&str> = v["results"][key].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
    }
    assert!(v["results"]["groups"].as_array().unwrap().contains(&"cyclic n".into()));
    assert!(v["results"]["batteries"].as_array().unwrap().contains(&"exact-diagram".into()));
    assert_eq!(run(&["catalog"]).stdout, run(&["catalog"]).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["battery", "no-such-battery"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--group", "catalog:nonsense 3"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_gerbeforge"))
        .args(["cohomology", "--group", "catalog:dihedral 4"])
        .env("GERBEFORGE_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "cap");
}

#[test]
fn same_seed_same_bytes() {
    let args = ["clifford", "--group", "catalog:quaternion8", "--kernel", "center", "--seed", "7"];
    let a = run(&args);
    assert_eq!(a.stdout, run(&args).stdout);
    let b = run(&["clifford", "--group", "catalog:quaternion8", "--kernel", "center", "--seed", "8"]);
    let (va, vb): (Value, Value) = (serde_json::from_slice(&a.stdout).unwrap(), serde_json::from_slice(&b.stdout).unwrap());
    assert_ne!(va["inputs_digest"], vb["inputs_digest"]);
    assert_eq!(va["results"]["count_line"], vb["results"]["count_line"]);
}

#[test]
fn gerbes_from_json_action() {
    let action = r#"{"points": 3, "perms": [[0,1,2],[1,0,2]]}"#;
    let (code, v) = report(&["gerbes", "--group", "catalog:cyclic 2", "--action", action]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = report(&["gerbes", "--group", "catalog:elementary-abelian 2^2", "--action", "trivial:1", "--mode", "decompose"]);
    assert_eq!(code, 0);
    let counts: Vec<u64> = v["results"]["gerbes"].as_array().unwrap().iter().map(|g| g["twisted_count"]["total"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![4, 1]);
}

#[test]
fn extension_modes() {
    let (code, v) = report(&["extension", "--group", "catalog:cyclic 2", "--coeff", "mu:2", "--mode", "classify"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["extensions"].as_array().unwrap().len(), 2);
    let (code, v) = report(&["extension", "--group", "catalog:cyclic 3", "--coeff", "mu:3", "--mode", "center", "--class", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["center_dimension"], 9);
    assert_eq!(v["results"]["gerbe_trivial"], true);
    let (code, v) = report(&["extension", "--group", "catalog:cyclic 2", "--coeff", "mu:3", "--band", "invert", "--mode", "build"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["total"]["abelian"], false);
}

#[test]
fn fusion_modes() {
    let (code, v) = report(&["fusion", "--group", "catalog:cyclic 3", "--mode", "pentagon"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["associators"].as_array().unwrap().len(), 3);
    let (code, v) = report(&["fusion", "--group", "catalog:cyclic 2", "--mode", "phi-f", "--class", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["phi_trivial"], false);
    let (code, _) = report(&["fusion", "--group", "catalog:dihedral 4", "--mode", "alpha", "--kernel", "gens:1"]);
    assert_eq!(code, 0);
    let (code, v) = report(&["fusion", "--group", "catalog:cyclic 2", "--mode", "rep-ext", "--class", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"]["classes"], 2);
}

#[test]
fn symmetry_counts() {
    let (code, v) = report(&["symmetry", "--q", "catalog:cyclic 2", "--k", "catalog:cyclic 4"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["count"], 2);
}

#[test]
fn pretty_mode_is_readable() {
    let out = run(&["--pretty", "cohomology", "--group", "catalog:cyclic 2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("$ gerbeforge"));
    assert!(text.contains("[pass]"));
}

use std::process::{Command, Output};

use serde_json::Value;

fn bfc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfc-lab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_temp(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("bfc-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn counterexample_report() {
    let out = bfc(&["corpus", "counterexample", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let clauses = v["clauses"].as_array().unwrap();
    assert_eq!(clauses.len(), 5);
    assert!(clauses.iter().all(|c| c["holds"] == Value::Bool(true)));
    assert_eq!(v["separating_u"], "a");
}

#[test]
fn bfc_on_two_chain_file() {
    let exported = bfc(&["corpus", "export", "chain2"]);
    let path = write_temp("chain2.json", &String::from_utf8(exported.stdout).unwrap());
    let out = bfc(&["fc", "bfc", "--alg", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_sublattice"], true);
    assert_eq!(v["is_distributive"], true);
    assert_eq!(v["fc"].as_array().unwrap().len(), 2);
}

#[test]
fn star_on_band0_with_built_pi() {
    let built = bfc(&["formula", "build", "--scheme", "band0.scheme"]);
    assert_eq!(built.status.code(), Some(0));
    let pi = String::from_utf8(built.stdout).unwrap();
    let out = bfc(&["formula", "star", "--alg", "band0.algebraA", "--formula", pi.trim(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for c in ["cond_a", "cond_b", "cond_c"] {
        assert_eq!(v[c]["holds"], true, "{c}");
    }
}

#[test]
fn check_failure_exits_one_with_witness() {
    let no_ops = r#"{"name":"set4","size":4,"ops":[]}"#;
    let path = write_temp("set4.json", no_ops);
    let out = bfc(&["fc", "bfc", "--alg", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["witness"].is_null());

    let out = bfc(&["formula", "star", "--alg", "chain3", "--formula", "(= x y)"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_and_size_guard_codes() {
    assert_eq!(bfc(&["nonsense"]).status.code(), Some(2));
    assert_eq!(bfc(&["alg", "show", "--alg", "no-such-thing"]).status.code(), Some(2));
    assert_eq!(bfc(&["formula", "star", "--alg", "chain3", "--formula", "(forall"]).status.code(), Some(2));
    let guarded = bfc(&["formula", "star", "--alg", "chain3", "--formula", "semilattice.pi_s", "--max-assignments", "10"]);
    assert_eq!(guarded.status.code(), Some(3));
    let guarded = bfc(&["alg", "product", "--alg", "chain3", "--alg", "chain3", "--max-cells", "20"]);
    assert_eq!(guarded.status.code(), Some(3));
    assert_eq!(bfc(&["--help"]).status.code(), Some(0));
}

#[test]
fn thread_variable_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_bfc-lab"))
        .args(["corpus", "list"])
        .env("BFC_LAB_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_bfc-lab"))
        .args(["fc", "bfc", "--alg", "z6.ring"])
        .env("BFC_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = ["fc", "refine", "--alg", "sl4.2", "--json"];
    assert_eq!(bfc(&args).stdout, bfc(&args).stdout);
    let args = ["scheme", "verify", "--scheme", "band0.scheme", "--alg", "band0.random4.3", "--json"];
    let (a, b) = (bfc(&args), bfc(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn algebra_round_trip_through_product_and_quotient() {
    let prod = bfc(&["alg", "product", "--alg", "chain2", "--alg", "chain3", "--json"]);
    assert_eq!(prod.status.code(), Some(0));
    let path = write_temp("c2xc3.json", &String::from_utf8(prod.stdout).unwrap());
    let p = path.to_str().unwrap();
    let shown = json(&bfc(&["alg", "show", "--alg", p, "--json"]));
    assert_eq!(shown["size"], 6);

    let q = json(&bfc(&["alg", "quotient", "--alg", p, "--by", "0,0,0,1,1,1", "--json"]));
    assert_eq!(q["algebra"]["size"], 2);
    assert_eq!(q["block_of"], serde_json::json!([0, 0, 0, 1, 1, 1]));

    let fc = json(&bfc(&["fc", "list", "--alg", p, "--json"]));
    assert_eq!(fc["factor_congruences"].as_array().unwrap().len(), 4);
    let d = bfc(&["fc", "decompose", "--alg", p, "--theta", "0,0,0,1,1,1", "--theta-star", "0,1,2,0,1,2", "--json"]);
    assert_eq!(d.status.code(), Some(0));
    assert_eq!(json(&d)["right"]["size"], 3);
    let bad = bfc(&["fc", "decompose", "--alg", p, "--theta", "delta", "--theta-star", "delta"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn congruence_verbs() {
    let lat = json(&bfc(&["con", "list", "--alg", "band0.algebraA", "--json"]));
    assert_eq!(lat["congruences"].as_array().unwrap().len(), 5);
    let cg = json(&bfc(&["con", "cg", "--alg", "chain3", "--pairs", "1,2", "--json"]));
    assert_eq!(cg["congruence"], serde_json::json!([0, 1, 1]));
    let chain = bfc(&["con", "chain", "--alg", "chain3", "--gens", "0,2", "--pair", "0,1", "--json"]);
    assert_eq!(chain.status.code(), Some(0));
    let v = json(&chain);
    assert_eq!(v["replays"], true);
    assert_eq!(v["result"]["outcome"], "chain");
    let missing = bfc(&["con", "chain", "--alg", "chain3", "--gens", "1,2", "--pair", "0,1"]);
    assert_eq!(missing.status.code(), Some(1));
    let de = json(&bfc(&[
        "con", "delta", "--alg", "chain2", "--theta", "delta", "--theta-star", "nabla", "--phi", "nabla",
        "--phi-star", "delta", "--n", "4", "--json",
    ]));
    assert_eq!(de["delta"], serde_json::json!([[0, 0], [1, 1]]));
}

#[test]
fn scheme_and_formula_verbs() {
    let sym = json(&bfc(&["scheme", "sigma", "--scheme", "band0.scheme", "--map", "rho", "--json"]));
    assert_eq!(sym["output"][3], "z");
    let conc = json(&bfc(&[
        "scheme", "sigma", "--scheme", "band0.scheme", "--map", "sigma", "--alg", "band0.algebraA", "--values",
        "a,b,c,0,a,b,c,0", "--json",
    ]));
    assert_eq!(conc["output"].as_array().unwrap().len(), 8);
    let ev = json(&bfc(&[
        "formula", "eval", "--alg", "band0.algebraA", "--formula", "band0.pi", "--assign", "x=a,y=b,z=a,w=b", "--json",
    ]));
    assert_eq!(ev["value"], true);
    let gp = bfc(&["formula", "gamma-vs-pi", "--alg", "band0.algebraA", "--formula", "band0.pi", "--json"]);
    assert_eq!(gp.status.code(), Some(0));
    assert_eq!(json(&gp)["implication_holds"], true);
    let pres = bfc(&["formula", "preserve", "--alg", "chain2", "--alg", "chain3", "--formula", "semilattice.pi_s"]);
    assert_eq!(pres.status.code(), Some(0));
    let ker = bfc(&["formula", "kernel", "--alg", "chain2", "--alg", "chain3", "--formula", "semilattice.pi_s"]);
    assert_eq!(ker.status.code(), Some(0));
    let one = bfc(&["formula", "preserve", "--alg", "chain2", "--formula", "semilattice.pi_s"]);
    assert_eq!(one.status.code(), Some(2));
    let phi1 = bfc(&["formula", "build", "--scheme", "band0.scheme", "--part", "phi1"]);
    assert_eq!(String::from_utf8(phi1.stdout).unwrap().trim(), bfc_lab::corpus::band0_phi1().to_string());
}

#[test]
fn corpus_listing_and_export() {
    let list = json(&bfc(&["corpus", "list", "--json"]));
    assert_eq!(list.as_array().unwrap().len(), bfc_lab::corpus::BUILTIN_NAMES.len());
    let scheme = bfc(&["corpus", "export", "band0.scheme"]);
    let text = String::from_utf8(scheme.stdout).unwrap();
    let parsed = bfc_lab::WitnessScheme::from_json(&text).unwrap();
    assert_eq!(parsed, bfc_lab::corpus::band0_scheme());
    let f = bfc(&["corpus", "export", "semilattice.pi_s"]);
    let parsed = bfc_lab::Formula::parse(&String::from_utf8(f.stdout).unwrap()).unwrap();
    assert_eq!(parsed, bfc_lab::corpus::semilattice_pi_s());
    assert_eq!(bfc(&["corpus", "export", "nope"]).status.code(), Some(2));
}

#[test]
fn in_process_runner_matches_binary() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = bfc_lab::cli::run(["bfc-lab", "fc", "gamma", "--alg", "chain2", "--tuple", "0,1,0,1", "--json"], &mut out, &mut err);
    assert_eq!(code, 0);
    let bin = bfc(&["fc", "gamma", "--alg", "chain2", "--tuple", "0,1,0,1", "--json"]);
    assert_eq!(out, bin.stdout);
}

use proptest::prelude::*;
use psr_cli::json;
use psr_cli::run;
use psr_geometry::rat::frac;
use psr_geometry::Polyhedron;
use psr_poly::PolyPolynomial;
use serde_json::Value;

const LIN: &str = r#"{"vars":1,"terms":[{"exp":[1],"coeff":{"vertices":[["-1"],["1"]]}},{"exp":[0],"coeff":{"vertices":[["-2"],["2"]]}}]}"#;
const SEG: &str = r#"{"vertices":[["-1"],["1"]]}"#;
const QUAD: &str = r#"{"vars":1,"terms":[{"exp":0,"coeff":{"vertices":[["3"]]}},{"exp":1,"coeff":{"vertices":[["1"]]}},{"exp":2,"coeff":{"vertices":[["0"]]}}]}"#;

fn psr(args: &[&str]) -> (i32, Value) {
    psr_env(args, &[])
}

fn psr_env(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let argv = std::iter::once("psr").chain(args.iter().copied());
    let env: Vec<(String, String)> = env.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let out = run(argv, |k| env.iter().find(|(a, _)| a == k).map(|(_, v)| v.clone()));
    (out.code, serde_json::from_str(&out.stdout).unwrap_or(Value::String(out.stdout)))
}

#[test]
fn root_witness_on_segment_example() {
    let (code, v) = psr(&["root", "--poly", LIN, "--at", SEG]);
    assert_eq!(code, 0);
    assert_eq!(v["is_root"], true);
    let sharing = v["sharing"].as_array().unwrap();
    assert_eq!(sharing.len(), 2);
    assert_eq!(sharing[0]["vertex"], serde_json::json!(["-2"]));
    assert_eq!(sharing[1]["vertex"], serde_json::json!(["2"]));
    for s in sharing {
        assert_eq!(s["summands"], serde_json::json!([0, 1]));
    }
    let (code, v) = psr(&["root", "--poly", LIN, "--at", r#"{"vertices":[["0"]]}"#]);
    assert_eq!((code, v["is_root"].clone()), (1, Value::Bool(false)));
}

#[test]
fn eval_at_origin_returns_q() {
    let (code, v) = psr(&["eval", "--poly", LIN, "--at", r#"{"vertices":[["0"]]}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], serde_json::json!({"rays": [], "vertices": [["-2"], ["2"]]}));
}

#[test]
fn solve_local_lists_four_solutions() {
    let (code, v) = psr(&["solve-local", "--poly", QUAD, "--vertex", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["solutions"].as_array().unwrap().len(), 4);
    assert_eq!(v["vertex"], serde_json::json!(["4"]));
}

#[test]
fn glue_and_violation() {
    let ok = r#"{"locals":[{"vertex":["-3"],"solution":{"vertices":[["-1"]],"rays":[["1"]]}},{"vertex":["3"],"solution":{"vertices":[["1"]],"rays":[["-1"]]}}]}"#;
    let (code, v) = psr(&["glue", "--poly", LIN, "--locals", ok]);
    assert_eq!(code, 0);
    assert_eq!(v["global"], serde_json::json!({"rays": [], "vertices": [["-1"], ["1"]]}));
    let missing = r#"{"locals":[{"vertex":["-3"],"solution":{"vertices":[["-1"]],"rays":[["1"]]}}]}"#;
    assert_eq!(psr(&["glue", "--poly", LIN, "--locals", missing]).0, 2);
}

#[test]
fn predicates_exit_one_with_witness() {
    let (code, v) = psr(&["summand", "--q1", SEG, "--q0", r#"{"vertices":[["0"]]}"#]);
    assert_eq!(code, 1);
    assert_eq!(v["summand"], false);
    assert!(v.get("failure").is_some());
    let tri = r#"{"vertices":[["0","0"],["1","0"],["0","1"]]}"#;
    let e1 = r#"{"vertices":[["0","0"],["1","0"]]}"#;
    let (code, v) = psr(&["shephard", "--q1", tri, "--q0", e1]);
    assert_eq!(code, 1);
    assert_eq!(v["failure"], serde_json::json!({"refinement": ["0", "0"]}));
}

#[test]
fn classify_and_fan() {
    let (code, v) = psr(&["classify", "--poly", QUAD, "--vertex", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["case"], "Split");
    assert_eq!(v["solutions"], serde_json::json!([{"rays": [], "vertices": [["1"], ["3/2"]]}]));
    let (code, v) = psr(&["fan", "--poly", QUAD, "--vertex", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["cells"].as_array().unwrap().len(), 2);
    assert_eq!(psr(&["classify", "--poly", LIN, "--vertex", "0"]).0, 2);
}

#[test]
fn disc_converse_reports_cone_root() {
    let t = r#"[{"vertices":[["2"]]},{"vertices":[["1"]]},{"vertices":[["0"]]}]"#;
    let (code, v) = psr(&["disc", "--support", "0,1,2", "--tuple", t, "--check-converse"]);
    assert_eq!(code, 0);
    assert_eq!(v["converse"]["meets_bound"], true);
    assert_eq!(v["converse"]["roots"][0]["root"], serde_json::json!({"rays": [], "vertices": [["1"]]}));
    let far = r#"[{"vertices":[["0"]]},{"vertices":[["0"]]},{"vertices":[["5"]]}]"#;
    assert_eq!(psr(&["disc", "--support", "0,1,2", "--tuple", far]).0, 1);
}

#[test]
fn trop_roots_and_same_function() {
    let (code, v) = psr(&["trop", "--poly", QUAD, "--at", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["roots"], serde_json::json!([{"multiplicity": 1, "root": "1"}, {"multiplicity": 1, "root": "2"}]));
    let t = r#"{"terms":[{"exp":0,"value":"0"},{"exp":2,"value":"0"}]}"#;
    let (_, v) = psr(&["trop", "--poly", t]);
    assert_eq!(v["roots"], serde_json::json!([{"multiplicity": 2, "root": "0"}]));
    assert_eq!(psr(&["trop", "--poly", QUAD, "--versus", LIN]).0, 1);
}

#[test]
fn malformed_input_exits_two() {
    for args in [
        vec!["bogus"],
        vec!["eval", "--poly", "{not json", "--at", SEG],
        vec!["eval", "--poly", LIN, "--at", r#"{"vertices":[["0","1"]]}"#],
        vec!["fan", "--poly", QUAD, "--vertex", "7"],
        vec!["root", "--poly", QUAD, "--omega", "0"],
        vec!["eval", "--poly", "/nonexistent/file.json", "--at", SEG],
        vec!["eval", "--poly", r#"{"vars":2,"terms":[]}"#, "--at", SEG],
    ] {
        let (code, v) = psr(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v["error"].is_string(), "{args:?}");
    }
    let help = run(["psr", "--help"], |_| None);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("Usage"));
}

#[test]
fn flag_beats_env_beats_default() {
    let tiny = psr_env(&["lcs", "--poly", QUAD, "--vertex", "0"], &[("PSR_CAP_CELLS", "0")]);
    assert_eq!(tiny.0, 2);
    let flag = psr_env(&["lcs", "--poly", QUAD, "--vertex", "0", "--cap-cells", "100"], &[("PSR_CAP_CELLS", "0")]);
    assert_eq!(flag.0, 0);
    assert_eq!(psr(&["lcs", "--poly", QUAD, "--vertex", "0"]), flag);
    assert_eq!(psr_env(&["lcs", "--poly", QUAD, "--vertex", "0"], &[("PSR_CAP_CELLS", "x")]).0, 2);
}

#[test]
fn same_seed_same_bytes() {
    let t = r#"[{"vertices":[["0","0"],["1","0"],["0","1"]]},{"vertices":[["0","0"]]},{"vertices":[["0","0"]]}]"#;
    let go = |seed: &str| run(["psr", "disc", "--support", "0,1,2", "--tuple", t, "--check-converse", "--seed", seed], |_| None).stdout;
    assert_eq!(go("7"), go("7"));
    let env = run(["psr", "disc", "--support", "0,1,2", "--tuple", t, "--check-converse"], |k| (k == "PSR_SEED").then(|| "7".to_string()));
    assert_eq!(env.stdout, go("7"));
}

#[test]
fn file_inputs_match_inline() {
    let dir = std::env::temp_dir().join(format!("psr-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("lin.json");
    std::fs::write(&f, LIN).unwrap();
    let a = psr(&["root", "--poly", f.to_str().unwrap(), "--at", SEG]);
    assert_eq!(a, psr(&["root", "--poly", LIN, "--at", SEG]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_psr");
    let out = std::process::Command::new(bin).args(["root", "--poly", LIN, "--at", SEG]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let out = std::process::Command::new(bin).args(["root", "--poly", "{"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

fn polytope_1d() -> impl Strategy<Value = Polyhedron> {
    prop::collection::vec((-20i64..20, 1i64..5), 1..4)
        .prop_map(|v| Polyhedron::polytope(&v.into_iter().map(|(a, b)| vec![frac(a, b)]).collect::<Vec<_>>()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_round_trip(qs in prop::collection::vec(polytope_1d(), 1..4), rays in prop::collection::vec(any::<bool>(), 4)) {
        let terms: Vec<_> = qs
            .into_iter()
            .zip(&rays)
            .enumerate()
            .map(|(i, (q, &r))| (i, if r && i == 0 { q.plus_cone(&psr_geometry::Cone::from_rays(1, &[vec![frac(1, 1)]])).unwrap() } else { q }))
            .collect();
        let phi = PolyPolynomial::new(1, terms).unwrap();
        let text = json::polynomial(&phi).to_string();
        let back = json::parse_polynomial(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &phi);
        prop_assert_eq!(json::polynomial(&back).to_string(), text);
    }
}

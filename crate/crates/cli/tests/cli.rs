use std::fs;
use std::path::PathBuf;

use proptest::prelude::*;
use serde_json::Value;
use weyl::parse::parse_poly;
use weyl::{run, Outcome, EXIT_ERROR, EXIT_OK, EXIT_UNSUPPORTED};

fn weyl(args: &[&str]) -> Outcome {
    run(std::iter::once("weyl").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let out = weyl(&a);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn roots(v: &Value) -> Vec<(String, u64)> {
    v["result"]["factored"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let (n, d) = (r["root"]["num"].as_str().unwrap(), r["root"]["den"].as_str().unwrap());
            let root = if d == "1" { n.to_string() } else { format!("{n}/{d}") };
            (root, r["mult"].as_u64().unwrap())
        })
        .collect()
}

fn pairs(list: &[(&str, u64)]) -> Vec<(String, u64)> {
    list.iter().map(|(r, m)| (r.to_string(), *m)).collect()
}

#[test]
fn bpoly_json_for_the_cusp() {
    let v = json(&["bpoly", "--vars", "x,y", "x^2+y^3"]);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["command"], "bpoly");
    assert_eq!(roots(&v), pairs(&[("-5/6", 1), ("-1", 1), ("-7/6", 1)]));
    assert_eq!(v["result"]["expanded"], "s^3 + 3*s^2 + 107/36*s + 35/36");
    assert_eq!(v["agreement"], Value::Null);
    assert!(v["timings_ms"]["minpoly"].is_u64());
}

#[test]
fn bpoly_both_methods_agree() {
    let v = json(&["bpoly", "--method", "both", "--vars", "x,y", "x*y*(x+y)"]);
    assert_eq!(v["methods"], serde_json::json!(["minpoly", "deformation"]));
    assert_eq!(v["agreement"], true);
    assert_eq!(v["result"]["display"], "(s+2/3)*(s+1)^2*(s+4/3)");
}

#[test]
fn text_outputs() {
    assert_eq!(weyl(&["lct", "--vars", "x", "x"]).stdout, "1\n");
    assert_eq!(weyl(&["lct", "--vars", "x,y", "x^2+y^3"]).stdout, "5/6\n");
    let out = weyl(&["check", "b1", "--vars", "x,y,z", "x*y*(x+y)*(x+y*z)"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "true\n"));
    assert_eq!(weyl(&["jumping", "--vars", "x,y", "x^2+y^3"]).stdout, "5/6, 1\n");
    assert_eq!(weyl(&["genb", "--vars", "x", "x^2", "--g", "x"]).stdout, "(s+1)*(s+3/2)\n");
    assert_eq!(weyl(&["localb", "--vars", "x,y", "x^2+y^3", "--point", "1,-1"]).stdout, "(s+1)\n");
}

#[test]
fn check_properties() {
    let free = json(&["check", "free", "--vars", "x,y", "x*y"]);
    assert_eq!(free["result"]["value"], true);
    assert_eq!(free["result"]["certificate"]["basis"].as_array().unwrap().len(), 2);
    assert_eq!(weyl(&["check", "koszul", "--vars", "x,y", "x*y"]).stdout, "true\n");
    assert_eq!(weyl(&["check", "ls", "--vars", "x,y", "x^2+y^3"]).stdout, "true\n");
    assert_eq!(weyl(&["check", "holonomic", "--vars", "x,y", "x^2+y^3"]).stdout, "true\n");
    assert_eq!(weyl(&["check", "as", "--vars", "x,y", "x^2+y^3"]).stdout, "true\n");
    let v = json(&["check", "as", "--variant", "weyl", "--vars", "x,y", "x^2+y^3"]);
    assert_eq!(v["result"]["variant"], "weyl");
}

#[test]
fn unsupported_exits_with_two() {
    let out = weyl(&["check", "a1", "--vars", "a,b,c,e", "a*e-b*c"]);
    assert_eq!(out.code, EXIT_UNSUPPORTED);
    assert!(out.stderr.contains("unsupported"));
}

#[test]
fn errors_exit_with_one() {
    let out = weyl(&["bpoly", "--vars", "x,y", "x y"]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("position 2"), "{}", out.stderr);
    let out = weyl(&["bpoly", "--vars", "x", "x+z"]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stderr.contains("unknown identifier `z`"));
    let out = weyl(&["bpoly", "--vars", "x", "3"]);
    assert_eq!(out.code, EXIT_ERROR);
    assert_eq!(weyl(&["bpoly", "--vars", "x,y", "x^2", "--method", "fast"]).code, EXIT_ERROR);
    assert_eq!(weyl(&["localb", "--vars", "x,y", "x^2", "--point", "0"]).code, EXIT_ERROR);
    assert_eq!(weyl(&["frobnicate"]).code, EXIT_ERROR);
    assert_eq!(weyl(&["--help"]).code, EXIT_OK);
}

#[test]
fn ann_routes() {
    let v = json(&["ann", "--method", "both", "--vars", "x,y", "x^2+y^3"]);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["methods"], serde_json::json!(["oaku", "bm"]));
    assert_eq!(v["result"]["max_order"], 1);
    assert_eq!(
        v["result"]["generators"],
        serde_json::json!(["x*dx + 2/3*y*dy - 2*s", "y^2*dx - 2/3*x*dy", "y^3*dy + x^2*dy - 3*y^2*s"])
    );
}

#[test]
fn logder_and_charideal() {
    let out = weyl(&["logder", "--vars", "x,y", "x*y"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().count(), 2);
    let v = json(&["logder", "--log0", "--vars", "x,y", "x*y"]);
    assert_eq!(v["result"]["kind"], "log0");
    let v = json(&["charideal", "--vars", "x,y", "x^2+y^3"]);
    assert_eq!(v["result"]["dim"], 3);
}

#[test]
fn raw_groebner_bases() {
    let v = json(&["gb", "--algebra", "weyl", "--vars", "x", "dx*x - 2", "x^2"]);
    assert_eq!(v["input"]["letters"], serde_json::json!(["x", "dx"]));
    assert_eq!(v["result"]["basis"], serde_json::json!(["1"]));
    let out = weyl(&["gb", "--algebra", "commutative", "--vars", "x,y", "--order", "lex", "x^2 - y", "x*y - 1"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout, "y^3 - 1\n-y^2 + x\n");
    let out = weyl(&["gb", "--algebra", "weyl", "--vars", "x", "--order", "weight:-1,1", "x*dx + 1"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert_eq!(weyl(&["gb", "--algebra", "weyl", "--vars", "x", "--order", "weight:1", "x"]).code, EXIT_ERROR);
}

fn scratch_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("weyl-cli-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn corpus_goldens_are_only_written_on_request() {
    let d = scratch_dir("corpus");
    fs::write(d.join("cusp.toml"), "vars = [\"x\", \"y\"]\nf = \"x^2 + y^3\"\n\n[expected]\nbpoly = \"(s+5/6)*(s+1)*(s+7/6)\"\n\n[expected.flags]\nb1 = true\n").unwrap();
    let dir = d.to_str().unwrap();
    let out = weyl(&["corpus", "run", dir]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stdout.contains("missing golden"));
    assert!(!d.join("cusp.golden.json").exists());
    assert_eq!(weyl(&["corpus", "run", dir, "--regenerate"]).code, EXIT_OK);
    let golden = fs::read_to_string(d.join("cusp.golden.json")).unwrap();
    assert_eq!(weyl(&["corpus", "run", dir]).code, EXIT_OK);
    fs::write(d.join("cusp.golden.json"), golden.replace("5/6", "5/7")).unwrap();
    let out = weyl(&["corpus", "run", dir]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stdout.contains("differs from golden"));
    fs::write(d.join("cusp.toml"), "vars = [\"x\", \"y\"]\nf = \"x^2 + y^3\"\n\n[expected]\nbpoly = \"(s+1)\"\n").unwrap();
    let out = weyl(&["corpus", "run", dir, "--regenerate"]);
    assert_eq!(out.code, EXIT_ERROR);
    assert!(out.stdout.contains("bpoly: expected (s+1)"));
    let _ = fs::remove_dir_all(&d);
}

fn poly_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        Just("y".to_string()),
        (-5i64..=5).prop_map(|c| format!("({c})")),
        (1i64..=5, 1i64..=4).prop_map(|(a, b)| format!("{a}/{b}")),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} + {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a} - {b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}*{b}")),
            (inner, 0u32..=3).prop_map(|(a, k)| format!("({a})^{k}")),
        ]
    })
}

proptest! {
    #[test]
    fn printed_polynomials_parse_back(text in poly_text()) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = parse_poly(&text, &vars).unwrap();
        prop_assert_eq!(parse_poly(&p.to_string(), &vars).unwrap(), p);
    }
}

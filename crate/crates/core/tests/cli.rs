mod common;

use std::process::Command;

use common::random_coprime;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use splice_d::expr::parse_expression;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_splice-d"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let (_, out, _) = bin(&all);
    serde_json::from_str(out.trim()).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}"))
}

fn spaced<R: Rng>(rng: &mut R, s: &str) -> String {
    // sprinkle whitespace after separators
    s.chars()
        .flat_map(|c| {
            let pad = matches!(c, ',' | '(' | ';' | '=') && rng.gen_bool(0.4);
            std::iter::once(c).chain(pad.then_some(' '))
        })
        .collect()
}

fn random_seifert<R: Rng>(rng: &mut R, marked: bool) -> String {
    let len = rng.gen_range(3..=4);
    let mut a = random_coprime(rng, len, 30);
    if rng.gen_bool(0.2) {
        a.insert(rng.gen_range(0..a.len()), 1);
    }
    let parts: Vec<String> = a.iter().map(u64::to_string).collect();
    let sign = if rng.gen_bool(0.3) { "-" } else { "" };
    let mut s = format!("{sign}sigma({})", parts.join(","));
    if marked {
        let pick = a.iter().filter(|&&x| x > 1).nth(rng.gen_range(0..3)).unwrap();
        s.push_str(&format!("@{pick}"));
    }
    s
}

fn random_knot<R: Rng>(rng: &mut R) -> String {
    match rng.gen_range(0..4) {
        0 | 1 => random_seifert(rng, true),
        2 => {
            let pq = random_coprime(rng, 2, 9);
            format!("{}torus({},{})", if rng.gen_bool(0.5) { "-" } else { "" }, pq[0], pq[1])
        }
        _ => {
            if rng.gen_bool(0.5) {
                format!("knot(dplus={}, dminus={})", 2 * rng.gen_range(-3..3), 2 * rng.gen_range(-3..3))
            } else {
                format!("knot(v0mirror={}, v0={})", rng.gen_range(0..4), rng.gen_range(0..4))
            }
        }
    }
}

fn corpus() -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0201);
    let mut out = Vec::new();
    while out.len() < 100 {
        let s = match out.len() % 5 {
            0 => random_seifert(&mut rng, false),
            1 => random_knot(&mut rng),
            2 => format!("splice({}, {})", random_knot(&mut rng), random_knot(&mut rng)),
            3 => format!(
                "glue({}, {}; n1={}, n2={}, sign={})",
                random_knot(&mut rng),
                random_knot(&mut rng),
                rng.gen_range(-5..5),
                rng.gen_range(-5..5),
                if rng.gen_bool(0.5) { '+' } else { '-' }
            ),
            _ => {
                let n = rng.gen_range(1..4);
                let rows: Vec<String> = (0..n)
                    .map(|i| {
                        let r: Vec<String> = (0..n).map(|j| if i == j { "-1" } else { "0" }.to_string()).collect();
                        format!("[{}]", r.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(", "))
            }
        };
        out.push(spaced(&mut rng, &s));
    }
    out
}

#[test]
fn format_parse_roundtrip() {
    for text in corpus() {
        let e = parse_expression(&text).unwrap_or_else(|err| panic!("{text}: {err}"));
        let canonical = e.to_string();
        let again = parse_expression(&canonical).unwrap_or_else(|err| panic!("{canonical}: {err}"));
        assert_eq!(again, e, "{text} -> {canonical}");
        assert_eq!(again.to_string(), canonical);
    }
}

#[test]
fn canonical_forms() {
    for (input, canonical) in [
        ("sigma(5, 3,2)", "sigma(2,3,5)"),
        ("sigma(2,3,1)", "sigma(2,3)"),
        ("- sigma(17,5,2)@17", "-sigma(2,5,17)@17"),
        ("glue(torus(3,2), knot(v0mirror=0,v0=1); n2=0, n1=0)", "splice(torus(3,2), knot(v0=1, v0mirror=0))"),
        ("[[-1, 0],[0,-1]]", "[[-1,0],[0,-1]]"),
    ] {
        assert_eq!(parse_expression(input).unwrap().to_string(), canonical);
    }
}

#[test]
fn documented_examples() {
    assert_eq!(bin(&["d", "sigma(2,3,5)"]), (0, "2\n".into(), String::new()));
    assert_eq!(bin(&["normalize", "sigma(2,5,7)", "--json"]).1, "{\"e\":1,\"b\":[1,1,2]}\n");
    let (code, out, _) = bin(&["splice-d", "--json", "splice(sigma(33,13,20)@33, sigma(3,11,260)@260)"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["error"], "NotStabilized");
    assert!(v["message"].as_str().unwrap().contains("bounds"));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["d", "sigma(2,3"]).0, 2);
    assert_eq!(bin(&["d", "sigma(2,4,5)"]).0, 1);
    assert_eq!(bin(&["d-lattice", "[[-2,1],[1,-2]]"]).0, 1);
    assert_eq!(bin(&["bounds", "sigma(2,3,5)"]).0, 2);
    let (code, out, _) = bin(&["d", "--json", "sigma(2,3"]);
    assert_eq!(code, 2);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["error"], "ParseError");
    assert_eq!(v["offset"], 9);
    let (code, out, _) = bin(&["d", "--json", "sigma(2,4,5)"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["error"], "NotCoprime");
}

fn is_int(v: &Value) -> bool {
    v.as_i64().is_some()
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

#[test]
fn json_schemas() {
    let v = json(&["normalize", "sigma(2,3,5)"]);
    assert!(is_int(&v["e"]) && v["b"].as_array().unwrap().iter().all(is_int));

    let v = json(&["plumbing", "sigma(2,3,5)"]);
    let mut k = keys(&v);
    k.sort();
    assert_eq!(k, ["center", "edges", "vertices"]);
    assert!(v["vertices"].as_array().unwrap().iter().all(|x| is_int(&x["id"]) && is_int(&x["framing"])));
    assert!(v["edges"].as_array().unwrap().iter().all(|e| e.as_array().unwrap().len() == 2));

    assert_eq!(json(&["d", "sigma(2,3,5)"]), serde_json::json!({"d": 2}));
    assert_eq!(json(&["d-lattice", "[[-1]]"]), serde_json::json!({"d": 0}));
    assert_eq!(json(&["v0-torus", "torus(2,3)"]), serde_json::json!({"v0": 1}));
    let v = json(&["mu-bar", "sigma(2,3,5)"]);
    assert_eq!(v["mu_bar"], -1);

    for (cmd, expr) in [
        ("splice-d", "splice(sigma(2,5,13)@13, -sigma(2,5,17)@17)"),
        ("bounds", "splice(sigma(2,5,13)@13, -sigma(2,5,17)@17)"),
        ("bounds", "glue(torus(2,3), knot(v0=0, v0mirror=0); n1=0, n2=0, sign=-)"),
        ("bounds", "glue(sigma(2,5,13)@13, knot(dplus=0, dminus=2); n1=0, n2=3)"),
    ] {
        let v = json(&[cmd, expr]);
        assert_eq!(keys(&v), ["d", "exact", "lower", "method", "upper"]);
        assert!(is_int(&v["lower"]) && is_int(&v["upper"]));
        assert_eq!(v["exact"].as_bool().unwrap(), v["lower"] == v["upper"]);
        assert!(if v["exact"] == true { v["d"] == v["lower"] } else { v["d"].is_null() });
        assert!(["stabilized-additivity", "theorem-1.1", "prop-1.2"].contains(&v["method"].as_str().unwrap()));
    }

    let v = json(&["check", "sigma(2,3,5)", "--lambda", "-1"]);
    assert_eq!(v["casson"]["dim_hf_red"], 0);
    assert_eq!(v["bound"], 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["d", "-v", "--json", "sigma(227,13,20)"],
        vec!["d", "-v", "sigma(3,11,13,20)"],
        vec!["bounds", "--extended", "splice(sigma(33,13,20)@33, sigma(3,11,260)@260)"],
    ] {
        let first = bin(&args);
        assert_eq!(first.0, 0, "{args:?}: {}", first.2);
        assert_eq!(bin(&args), first);
    }
}

#[test]
fn thread_variable() {
    let out = Command::new(env!("CARGO_BIN_EXE_splice-d"))
        .args(["d", "sigma(227,13,20)"])
        .env("SPLICE_D_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "4\n");
    let out = Command::new(env!("CARGO_BIN_EXE_splice-d"))
        .args(["d", "sigma(2,3,5)"])
        .env("SPLICE_D_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

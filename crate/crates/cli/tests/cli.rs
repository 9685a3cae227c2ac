use std::process::{Command, Output};

use mocktheta::calculus::FunctionHandle;
use mocktheta::mock::MockIndex;
use mocktheta::numeric::{DomainPoint, HalfInt, Truncation};
use mocktheta::theta::Sign;
use num_complex::Complex;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mocktheta")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_matches_the_library() {
    let o = run(&["eval", "--fn", "phi-tilde", "--sign", "+", "--m", "1", "--s", "0", "--tau", "i", "--u", "0.2", "--v", "0.35i", "--t", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let got = Complex::new(v["value"][0].as_f64().unwrap(), v["value"][1].as_f64().unwrap());

    let idx = MockIndex::new(Sign::Plus, HalfInt::ONE, HalfInt::ZERO).unwrap();
    let p = DomainPoint::new(Complex::new(0.0, 1.0), Complex::new(0.2, 0.0), Complex::new(0.0, 0.35), Complex::new(0.0, 0.0)).unwrap();
    let want = FunctionHandle::phi_tilde(idx).with_truncation(Truncation::default()).eval(&p).unwrap();
    // JSON parsing of floats may be off by an ulp
    assert!((got - want).norm() < 1e-15, "{got} vs {want}");
    assert!(v["tail_bound"].as_f64().unwrap() < 1e-12);

    let text = stdout(&run(&["eval", "--fn", "phi-tilde", "--tau", "i", "--u", "0.2", "--v", "0.35i"]));
    assert!(text.starts_with("phi_tilde+[1,0] = "), "{text}");
    assert!(text.contains("tail_bound = "));
}

#[test]
fn double_double_agrees_with_f64() {
    let args = ["eval", "--fn", "zwegers", "--sign", "-", "--m", "1/2", "--j", "1/2", "--tau", "0.1+1.1i", "--v", "0.3+0.2i", "--format", "json"];
    let a: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    let mut dd = args.to_vec();
    dd.extend(["--precision", "dd"]);
    let b: serde_json::Value = serde_json::from_str(&stdout(&run(&dd))).unwrap();
    for k in 0..2 {
        let (x, y) = (a["value"][k].as_f64().unwrap(), b["value"][k].as_f64().unwrap());
        assert!((x - y).abs() < 1e-14, "{x} vs {y}");
    }
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "phi", "--m", "1/3"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "phi", "--tau", "1+2j"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "phi", "--tau", "-i"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--fn", "eta", "--axis", "tau-re:0:1"]).status.code(), Some(2));
    // a computation error: v = u lies on the singular locus
    let o = run(&["eval", "--fn", "super-a", "--tau", "i", "--u", "0.2", "--v", "0.2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole proximity"));
}

#[test]
fn verify_is_deterministic_and_reports_failures() {
    let args = ["verify", "--suite", "theta-pair-link", "--m", "1", "--s", "0", "--sprime", "0", "--seed", "7", "--points", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["overall"], true);
    for key in ["m", "s", "sprime", "seed", "points", "truncation", "tolerances"] {
        assert!(v["params"].get(key).is_some(), "missing {key}");
    }

    let mut strict = args.to_vec();
    strict.extend(["--tol-first", "1e-30"]);
    let o = run(&strict);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["overall"], false);
}

#[test]
fn verify_writes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("mocktheta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["verify", "--suite", "r-shift", "--points", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"suite\": \"r-shift\""));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn qcheck_exit_codes() {
    let o = run(&["qcheck", "--identity", "product-identity", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["overall"], true);
    assert_eq!(run(&["qcheck", "--identity", "triple-product", "--order", "10"]).status.code(), Some(0));
    assert_eq!(run(&["qcheck", "--identity", "shift-laws", "--order", "6"]).status.code(), Some(0));
    assert_eq!(run(&["qcheck", "--identity", "product-identity-dropped", "--order", "5"]).status.code(), Some(1));
    assert_eq!(run(&["qcheck", "--identity", "product-identity", "--order", "-3"]).status.code(), Some(2));
    // below the smallest order the check supports
    assert_eq!(run(&["qcheck", "--identity", "product-identity", "--order", "1"]).status.code(), Some(1));
}

#[test]
fn table_writes_csv() {
    let o = run(&["table", "--fn", "phi-tilde", "--tau", "i", "--u", "0.1", "--axis", "v-re:0.2:0.4:3", "--axis", "v-im:0.1:0.2:2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("tau_re,tau_im,u_re,u_im,v_re,v_im,value_re,value_im,tail_bound"));
    assert_eq!(lines.count(), 6);

    // the grid evaluator and pointwise evaluation agree
    let single = run(&["eval", "--fn", "phi-tilde", "--tau", "i", "--u", "0.1", "--v", "0.2+0.1i", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&single)).unwrap();
    let row: Vec<f64> = text.lines().nth(1).unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert!((row[6] - v["value"][0].as_f64().unwrap()).abs() < 1e-15);
    assert!((row[7] - v["value"][1].as_f64().unwrap()).abs() < 1e-15);
    assert_eq!(run(&["table", "--fn", "eta", "--axis", "tau-im:0.5:1:3"]).stdout, run(&["table", "--fn", "eta", "--axis", "tau-im:0.5:1:3"]).stdout);
}

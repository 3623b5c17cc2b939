use clap::Parser;
use shalika_core::cli::{main_with, Cli, ConfigLayer, SuiteConfig};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let cli = Cli::try_parse_from(std::iter::once("shalika").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = main_with(cli, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn unknown_suite_is_structured_error() {
    let (code, _, err) = invoke(&["run", "--suites", "no-such-suite"]);
    assert_ne!(code, 0);
    let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    assert!(v["error"].as_str().unwrap().contains("no-such-suite"));
}

#[test]
fn list_has_ten_suites() {
    let (code, out, _) = invoke(&["list", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

#[test]
fn small_run_reports_json() {
    let (code, out, _) = invoke(&["run", "--suites", "weyl-transfer,euler-factors", "--n", "2", "--primes", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
}

#[test]
fn zeta_and_enumerate() {
    let (code, out, _) = invoke(&["zeta", "--kind", "parahoric", "--p", "3", "--beta", "0"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = invoke(&["enumerate", "--n", "2", "--p", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["refinements"], 24);
    assert_eq!(v["spin"], 8);
}

#[test]
fn file_layer_then_flags() {
    let layer = ConfigLayer::from_toml("n = 1\nsamples = 7\n").unwrap();
    let cfg = SuiteConfig::default().apply(&layer);
    assert_eq!((cfg.n, cfg.samples), (1, 7));
    assert!(ConfigLayer::from_toml("bogus = 1").is_err());
}

//! One line per criterion: runs the default configuration and checks outcome and wall time.

use std::time::{Duration, Instant};

use shalika_core::cli::{run, run_suite, CaseReport, SuiteConfig};

struct Criterion {
    id: u32,
    what: &'static str,
    suites: &'static [&'static str],
    /// Case-label filter; `None` keeps all cases.
    keep: Option<fn(&str) -> bool>,
    limit: Duration,
}

fn census(l: &str) -> bool {
    l.starts_with("census")
}

fn witness(l: &str) -> bool {
    !census(l)
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, what: "refinement and spin census", suites: &["spin-enum"], keep: Some(census), limit: Duration::from_secs(10) },
    Criterion { id: 2, what: "Weyl group transfer", suites: &["weyl-transfer"], keep: None, limit: Duration::from_secs(10) },
    Criterion { id: 3, what: "U_p eigenvectors", suites: &["hecke-eigen"], keep: None, limit: Duration::from_secs(300) },
    Criterion { id: 4, what: "big-cell support", suites: &["cell-support"], keep: None, limit: Duration::from_secs(120) },
    Criterion {
        id: 5,
        what: "zeta integrals against closed forms",
        suites: &["zeta-iwahori", "zeta-parahoric"],
        keep: None,
        limit: Duration::from_secs(300),
    },
    Criterion { id: 6, what: "Shalika witness and intertwined value", suites: &["spin-enum"], keep: Some(witness), limit: Duration::from_secs(60) },
    Criterion { id: 7, what: "branching support and interpolation", suites: &["branching-support"], keep: None, limit: Duration::from_secs(120) },
    Criterion { id: 8, what: "κ diagrams commute", suites: &["interp-diagram"], keep: None, limit: Duration::from_secs(120) },
    Criterion {
        id: 9,
        what: "Euler factors and comparison constant",
        suites: &["euler-factors", "comparison"],
        keep: None,
        limit: Duration::from_secs(60),
    },
];

fn evaluate(c: &Criterion, cfg: &SuiteConfig) -> (bool, String) {
    let t = Instant::now();
    let mut cases: Vec<CaseReport> = Vec::new();
    for s in c.suites {
        match run_suite(s, cfg) {
            Ok(r) => cases.extend(r.cases.into_iter().filter(|x| c.keep.map_or(true, |k| k(&x.label)))),
            Err(e) => return (false, format!("{s}: {e}")),
        }
    }
    let dt = t.elapsed();
    let failed: Vec<_> = cases.iter().filter(|x| !x.passed()).collect();
    let ok = !cases.is_empty() && failed.is_empty() && dt <= c.limit;
    let mut detail = format!("{} cases, {:.2}s (limit {}s)", cases.len(), dt.as_secs_f64(), c.limit.as_secs());
    for f in failed {
        detail.push_str(&format!("\n    {}: {}", f.label, f.witness.as_deref().unwrap_or("")));
    }
    (ok, detail)
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    let mut all = true;
    for c in CRITERIA {
        let (ok, detail) = evaluate(c, &cfg);
        all &= ok;
        println!("criterion {}: {} - {} [{}]", c.id, if ok { "PASS" } else { "FAIL" }, c.what, detail);
    }

    let t = Instant::now();
    let a = run(&cfg).map(|r| r.0.to_json());
    let b = run(&cfg).map(|r| r.0.to_json());
    let (ok, detail) = match (a, b) {
        (Ok(a), Ok(b)) => (a == b, format!("{} bytes, {:.2}s", a.len(), t.elapsed().as_secs_f64())),
        (Err(e), _) | (_, Err(e)) => (false, e.to_string()),
    };
    all &= ok;
    println!("criterion 10: {} - byte-identical reports [{}]", if ok { "PASS" } else { "FAIL" }, detail);
    assert!(all, "at least one acceptance criterion failed");
}

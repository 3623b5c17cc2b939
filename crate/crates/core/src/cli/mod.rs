//! Command-line harness: suite registry, configuration and reports.

pub mod catalog;
pub mod config;
pub mod report;
pub mod suites;

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

pub use catalog::{suite_names, SuiteInfo, CATALOG};
pub use config::{ConfigLayer, FamilyPrecision, SuiteConfig};
pub use report::{CaseReport, Expected, Outcome, Report, SuiteReport};

use crate::error::{Error, Result};
use crate::refine::{all_refinements, SatakeParameter};
use crate::shalikazeta::zeta::w_value_closed;
use crate::shalikazeta::{
    shalika_test_vector, zeta_iwahori_closed, zeta_iwahori_oracle, zeta_parahoric_closed, zeta_parahoric_oracle,
    TwistCharacter,
};

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let info = catalog::lookup(name).ok_or_else(|| Error::UnknownSuite(name.into()))?;
    let cases = match name {
        "spin-enum" => suites::spin_enum(cfg),
        "weyl-transfer" => suites::weyl_transfer(cfg),
        "hecke-eigen" => suites::hecke_eigen(cfg),
        "cell-support" => suites::cell_support(cfg),
        "zeta-iwahori" => suites::zeta_iwahori(cfg),
        "zeta-parahoric" => suites::zeta_parahoric(cfg),
        "branching-support" => suites::branching_support(cfg),
        "interp-diagram" => suites::interp_diagram(cfg),
        "euler-factors" => suites::euler_factors(cfg),
        "comparison" => suites::comparison(cfg),
        _ => return Err(Error::UnknownSuite(name.into())),
    };
    Ok(SuiteReport::new(info.name, info.anchor, cases))
}

/// Runs every configured suite. Timings are returned separately from the report.
pub fn run(cfg: &SuiteConfig) -> Result<(Report, Vec<(String, Duration)>)> {
    cfg.validate()?;
    let mut reports = Vec::new();
    let mut timings = Vec::new();
    let mut names = cfg.suites.clone();
    names.sort();
    names.dedup();
    for name in &names {
        let t = Instant::now();
        reports.push(run_suite(name, cfg)?);
        timings.push((name.clone(), t.elapsed()));
    }
    Ok((Report::assemble(cfg.clone(), reports), timings))
}

#[derive(Parser, Debug)]
#[command(name = "shalika", version, about = "Verification harness for local refinement, zeta and branching computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run suites and write a JSON report.
    Run(RunArgs),
    /// List the registered suites.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Compare a zeta oracle with its closed form at n = 1.
    Zeta(ZetaArgs),
    /// Enumerate the refinements of a generic Satake parameter.
    Enumerate {
        #[arg(long, env = "SHALIKA_N", default_value_t = 2)]
        n: usize,
        #[arg(long, env = "SHALIKA_P", default_value_t = 3)]
        p: u64,
    },
}

#[derive(Args, Debug, Default)]
pub struct RunArgs {
    /// Flat TOML file with SuiteConfig keys.
    #[arg(long, env = "SHALIKA_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, env = "SHALIKA_N")]
    pub n: Option<usize>,
    #[arg(long, env = "SHALIKA_PRIMES", value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long, env = "SHALIKA_BETA")]
    pub beta: Option<u32>,
    #[arg(long, env = "SHALIKA_SHELLS")]
    pub shells: Option<u32>,
    #[arg(long, env = "SHALIKA_SAMPLES")]
    pub samples: Option<usize>,
    #[arg(long, env = "SHALIKA_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "SHALIKA_FAMILY_M")]
    pub family_m: Option<u32>,
    #[arg(long, env = "SHALIKA_FAMILY_D")]
    pub family_d: Option<u32>,
    #[arg(long, env = "SHALIKA_SUITES", value_delimiter = ',')]
    pub suites: Option<Vec<String>>,
    /// Report path; standard output when absent.
    #[arg(long, env = "SHALIKA_OUT")]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    pub fn resolve(&self) -> Result<SuiteConfig> {
        let mut cfg = SuiteConfig::default();
        if let Some(path) = &self.config {
            cfg = cfg.apply(&ConfigLayer::from_file(path)?);
        }
        let flags = ConfigLayer {
            n: self.n,
            primes: self.primes.clone(),
            beta: self.beta,
            shells: self.shells,
            samples: self.samples,
            seed: self.seed,
            family_precision_m: self.family_m,
            family_precision_d: self.family_d,
            suites: self.suites.clone(),
        };
        let cfg = cfg.apply(&flags);
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ZetaKind {
    Iwahori,
    Parahoric,
}

#[derive(Args, Debug)]
pub struct ZetaArgs {
    #[arg(long, value_enum, default_value_t = ZetaKind::Iwahori)]
    pub kind: ZetaKind,
    #[arg(long, env = "SHALIKA_P", default_value_t = 3)]
    pub p: u64,
    /// Conductor exponent; 0 means the trivial character (parahoric only).
    #[arg(long, env = "SHALIKA_BETA", default_value_t = 1)]
    pub beta: u32,
    /// Index into the primitive characters of conductor p^β.
    #[arg(long, default_value_t = 0)]
    pub chi: usize,
    #[arg(long, env = "SHALIKA_SHELLS", default_value_t = 2)]
    pub shells: u32,
}

fn zeta_command(a: &ZetaArgs) -> Result<(serde_json::Value, bool)> {
    if ![2, 3, 5].contains(&a.p) {
        return Err(Error::InvalidPrime(a.p));
    }
    let chi = if a.beta == 0 {
        TwistCharacter::trivial(a.p)
    } else {
        TwistCharacter::all_primitive(a.p, a.beta)
            .into_iter()
            .nth(a.chi)
            .ok_or_else(|| Error::Precondition(format!("no primitive character #{} mod {}^{}", a.chi, a.p, a.beta)))?
    };
    let s = SatakeParameter::generic_ag(1, a.p);
    let (o, c) = match a.kind {
        ZetaKind::Iwahori => {
            let o = zeta_iwahori_oracle(&shalika_test_vector(&s), &chi, a.beta + a.shells)?;
            let c = zeta_iwahori_closed(&w_value_closed(&s, a.beta)?, &chi, 1)?;
            (o, c)
        }
        ZetaKind::Parahoric => (zeta_parahoric_oracle(&s, &chi, 2 + a.shells)?, zeta_parahoric_closed(&s, &chi, 0)?),
    };
    let agree = o.value == c.value;
    let v = json!({
        "p": a.p,
        "beta": a.beta,
        "chi": a.chi,
        "oracle": o.value.to_string(),
        "closed_form": c.value.to_string(),
        "agree": agree,
    });
    Ok((v, agree))
}

fn enumerate_command(n: usize, p: u64) -> Result<serde_json::Value> {
    if !(1..=3).contains(&n) {
        return Err(Error::Config(format!("n = {} is outside 1..=3", n)));
    }
    if ![2, 3, 5].contains(&p) {
        return Err(Error::InvalidPrime(p));
    }
    let s = SatakeParameter::generic_ag(n, p);
    let mut rows = Vec::new();
    for r in all_refinements(&s) {
        let eig: Vec<String> = (1..2 * n).map(|k| r.hecke_eigenvalue(k).to_string()).collect();
        rows.push(json!({"sigma": r.sigma.to_string(), "spin": r.is_spin()?, "eigenvalues": eig}));
    }
    let spin = rows.iter().filter(|r| r["spin"] == true).count();
    Ok(json!({"n": n, "p": p, "refinements": rows.len(), "spin": spin, "table": rows}))
}

fn error_json(e: &Error) -> String {
    json!({"error": e.to_string()}).to_string()
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let res: Result<i32> = (|| match cli.command {
        Command::List { json } => {
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&CATALOG).expect("catalog serialises")).ok();
            } else {
                for s in CATALOG.iter() {
                    writeln!(out, "{:<18} {}", s.name, s.anchor).ok();
                }
            }
            Ok(0)
        }
        Command::Run(args) => {
            let cfg = args.resolve()?;
            let (report, timings) = run(&cfg)?;
            for (name, t) in &timings {
                writeln!(err, "{:<18} {:>8.2}s", name, t.as_secs_f64()).ok();
            }
            let body = report.to_json();
            match &args.out {
                Some(path) => std::fs::write(path, &body).map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?,
                None => out.write_all(body.as_bytes()).map_err(|e| Error::Internal(e.to_string()))?,
            }
            writeln!(err, "{} passed, {} failed", report.passed, report.failed).ok();
            Ok(if report.ok() { 0 } else { 1 })
        }
        Command::Zeta(a) => {
            let (v, agree) = zeta_command(&a)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).ok();
            Ok(if agree { 0 } else { 1 })
        }
        Command::Enumerate { n, p } => {
            let v = enumerate_command(n, p)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")).ok();
            Ok(0)
        }
    })();
    match res {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "{}", error_json(&e)).ok();
            2
        }
    }
}

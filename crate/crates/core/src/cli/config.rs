//! Suite configuration: defaults, then a flat TOML file, then `SHALIKA_*`
//! environment variables and command-line flags.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::catalog::{is_known, suite_names};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPrecision {
    /// Coefficients modulo p^m.
    pub m: u32,
    /// Truncation degree in the weight variables.
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    /// Largest rank exercised; suites cap it further where the computation is
    /// out of reach (zeta oracles at n = 1, sampling at n ≤ 2).
    pub n: usize,
    /// Primes to run over.
    pub primes: Vec<u64>,
    /// Largest conductor exponent for twists and level exponent for N^β.
    pub beta: u32,
    /// Extra shells beyond the minimum each oracle needs.
    pub shells: u32,
    /// Samples per sampled configuration.
    pub samples: usize,
    pub seed: u64,
    pub family_precision: FamilyPrecision,
    pub suites: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 3,
            primes: vec![2, 3],
            beta: 2,
            shells: 2,
            samples: 1000,
            seed: 0x5eed,
            family_precision: FamilyPrecision { m: 8, d: 4 },
            suites: suite_names().iter().map(|s| s.to_string()).collect(),
        }
    }
}

/// A partial configuration, as read from a file or from flags.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLayer {
    pub n: Option<usize>,
    pub primes: Option<Vec<u64>>,
    pub beta: Option<u32>,
    pub shells: Option<u32>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub family_precision_m: Option<u32>,
    pub family_precision_d: Option<u32>,
    pub suites: Option<Vec<String>>,
}

impl ConfigLayer {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?;
        Self::from_toml(&text)
    }
}

impl SuiteConfig {
    pub fn apply(mut self, l: &ConfigLayer) -> Self {
        if let Some(v) = l.n {
            self.n = v;
        }
        if let Some(v) = &l.primes {
            self.primes = v.clone();
        }
        if let Some(v) = l.beta {
            self.beta = v;
        }
        if let Some(v) = l.shells {
            self.shells = v;
        }
        if let Some(v) = l.samples {
            self.samples = v;
        }
        if let Some(v) = l.seed {
            self.seed = v;
        }
        if let Some(v) = l.family_precision_m {
            self.family_precision.m = v;
        }
        if let Some(v) = l.family_precision_d {
            self.family_precision.d = v;
        }
        if let Some(v) = &l.suites {
            self.suites = v.clone();
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.n) {
            return Err(Error::Config(format!("n = {} is outside 1..=3", self.n)));
        }
        if self.primes.is_empty() {
            return Err(Error::Config("no primes given".into()));
        }
        if let Some(p) = self.primes.iter().find(|p| ![2, 3, 5].contains(*p)) {
            return Err(Error::InvalidPrime(*p));
        }
        if !(1..=2).contains(&self.beta) {
            return Err(Error::Config(format!("beta = {} is outside 1..=2", self.beta)));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be positive".into()));
        }
        if self.family_precision.m == 0 || self.family_precision.d == 0 {
            return Err(Error::Config("family precision must be positive".into()));
        }
        if let Some(s) = self.suites.iter().find(|s| !is_known(s)) {
            return Err(Error::UnknownSuite(s.clone()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering() {
        let file = ConfigLayer::from_toml("n = 2\nprimes = [3]\nseed = 9\n").unwrap();
        let flags = ConfigLayer { seed: Some(11), ..Default::default() };
        let c = SuiteConfig::default().apply(&file).apply(&flags);
        assert_eq!((c.n, c.primes.clone(), c.seed), (2, vec![3], 11));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ConfigLayer::from_toml("colour = 1").is_err());
        let c = SuiteConfig { primes: vec![7], ..Default::default() };
        assert_eq!(c.validate(), Err(Error::InvalidPrime(7)));
        let c = SuiteConfig { suites: vec!["nope".into()], ..Default::default() };
        assert_eq!(c.validate(), Err(Error::UnknownSuite("nope".into())));
    }
}

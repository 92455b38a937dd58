//! Batch harness: configuration, exhaustive solution search, seeded
//! verification suites, line-delimited reports, and replay checking.

mod gen;
mod report;
mod search;
mod suites;

pub use gen::Gen;
pub use report::{read_report, verify_report, write_report, ReportHeader, SolutionRecord, VerifyOutcome};
pub use search::{search, SearchOutput};
pub use suites::{run_suites, RunManifest, SuiteOutcome, SUITE_NAMES};

use crate::funfield::{is_s_unit, Place, RatFunc, SSet};
use crate::poly::Poly;
use crate::rat::{format_rat, parse_rat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config error: {0}")]
    Config(String),
    #[error("grid too large: {candidates} candidate pairs exceed the cap of {cap}")]
    GridTooLarge { candidates: u128, cap: u64 },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Raw search configuration as read from a config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    #[serde(rename = "S")]
    pub s: Vec<Place>,
    pub lam: RatFunc,
    pub exponent_bound: u32,
    pub constant_pool: Vec<String>,
    pub strict: bool,
    pub seed: u64,
    pub suites: Vec<String>,
    #[serde(default = "default_grid_cap")]
    pub grid_cap: u64,
}

fn default_grid_cap() -> u64 {
    10_000_000
}

impl SearchConfig {
    pub fn from_json(text: &str) -> Result<SearchConfig, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<ValidatedConfig, HarnessError> {
        if self.exponent_bound < 1 {
            return Err(HarnessError::Config("exponent_bound must be >= 1".into()));
        }
        if self.constant_pool.is_empty() {
            return Err(HarnessError::Config("constant_pool must be nonempty".into()));
        }
        let mut pool: Vec<Rat> = vec![];
        for item in &self.constant_pool {
            let r = parse_rat(item).map_err(HarnessError::Config)?;
            if r.is_zero() {
                return Err(HarnessError::Config("constant_pool must not contain 0".into()));
            }
            pool.push(r);
        }
        pool.sort();
        pool.dedup();
        let s = SSet::new(self.s.iter().cloned());
        if self.lam.is_constant() {
            return Err(HarnessError::Config("lam must be non-constant".into()));
        }
        if !is_s_unit(&self.lam, &s) {
            return Err(HarnessError::Config(
                "lam must have zeros and poles inside S".into(),
            ));
        }
        if self.strict {
            let shifted = &(&self.lam * &self.lam)
                - &RatFunc::constant(crate::rat::rat_int(4));
            if !is_s_unit(&shifted, &s) {
                return Err(HarnessError::Config(
                    "strict mode: lam^2 - 4 must have zeros and poles inside S".into(),
                ));
            }
        }
        Ok(ValidatedConfig {
            s,
            lam: self.lam.clone(),
            exponent_bound: self.exponent_bound,
            constant_pool: pool,
            strict: self.strict,
            seed: self.seed,
            suites: self.suites.clone(),
            grid_cap: self.grid_cap,
        })
    }
}

/// Validated, canonicalized configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedConfig {
    pub s: SSet,
    pub lam: RatFunc,
    pub exponent_bound: u32,
    pub constant_pool: Vec<Rat>,
    pub strict: bool,
    pub seed: u64,
    pub suites: Vec<String>,
    pub grid_cap: u64,
}

impl ValidatedConfig {
    /// Canonical serialized form: places sorted, pool sorted and reduced.
    pub fn to_raw(&self) -> SearchConfig {
        SearchConfig {
            s: self.s.places().iter().cloned().collect(),
            lam: self.lam.clone(),
            exponent_bound: self.exponent_bound,
            constant_pool: self.constant_pool.iter().map(format_rat).collect(),
            strict: self.strict,
            seed: self.seed,
            suites: self.suites.clone(),
            grid_cap: self.grid_cap,
        }
    }

    pub fn canonical_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("config serializes")
    }

    pub fn digest(&self) -> String {
        let text = serde_json::to_string(&self.canonical_json()).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        hex_string(&hasher.finalize())
    }
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses the CLI rational-function syntax `num=[a0,a1,...];den=[b0,...]`;
/// the denominator defaults to 1.
pub fn parse_ratfunc_expr(text: &str) -> Result<RatFunc, String> {
    let mut num: Option<Poly> = None;
    let mut den: Option<Poly> = None;
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=[...] in {part:?}"))?;
        let value = value.trim();
        let inner = value
            .strip_prefix('[')
            .and_then(|v| v.strip_suffix(']'))
            .ok_or_else(|| format!("expected a bracketed coefficient list in {part:?}"))?;
        let coeffs: Vec<String> = if inner.trim().is_empty() {
            vec![]
        } else {
            inner.split(',').map(|c| c.trim().to_string()).collect()
        };
        let poly = Poly::parse_coeff_list(&coeffs)?;
        match key.trim() {
            "num" => num = Some(poly),
            "den" => den = Some(poly),
            other => return Err(format!("unknown field {other:?} in expression")),
        }
    }
    let num = num.ok_or("missing num=[...]")?;
    let den = den.unwrap_or_else(Poly::one);
    RatFunc::new(num, den).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    pub(crate) fn sample_config_json() -> String {
        r#"{
            "S": [
                {"kind": "finite", "min_poly": ["0", "1"]},
                {"kind": "finite", "min_poly": ["-2", "1"]},
                {"kind": "finite", "min_poly": ["2", "1"]},
                {"kind": "infinity"}
            ],
            "lam": {"num": ["0", "1"], "den": ["1"]},
            "exponent_bound": 2,
            "constant_pool": ["1", "-1", "2", "-2", "1/2", "-1/2", "4", "-4", "1/4", "-1/4"],
            "strict": true,
            "seed": 7,
            "suites": ["identities"]
        }"#
        .to_string()
    }

    #[test]
    fn config_roundtrip_and_digest() {
        let config = SearchConfig::from_json(&sample_config_json()).unwrap();
        let validated = config.validate().unwrap();
        assert_eq!(validated.constant_pool.len(), 10);
        assert_eq!(validated.grid_cap, 10_000_000);
        let d1 = validated.digest();
        // Pool order in the file must not matter.
        let mut shuffled = config.clone();
        shuffled.constant_pool.reverse();
        let d2 = shuffled.validate().unwrap().digest();
        assert_eq!(d1, d2);
        assert_eq!(d1.len(), 64);
    }

    #[test]
    fn config_rejections() {
        let base = SearchConfig::from_json(&sample_config_json()).unwrap();

        let mut bad = base.clone();
        bad.constant_pool.clear();
        assert!(bad.validate().is_err());

        let mut bad = base.clone();
        bad.constant_pool.push("0".into());
        assert!(bad.validate().is_err());

        let mut bad = base.clone();
        bad.exponent_bound = 0;
        assert!(bad.validate().is_err());

        let mut bad = base.clone();
        bad.lam = RatFunc::constant(rat_int(5));
        assert!(bad.validate().is_err());

        // Strict mode requires the zeros of lam^2 - 4 in S.
        let mut bad = base.clone();
        bad.s.remove(1);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn expr_parsing() {
        let f = parse_ratfunc_expr("num=[0,1]").unwrap();
        assert_eq!(f, RatFunc::x());
        let f = parse_ratfunc_expr("num=[1,0,1];den=[0,1]").unwrap();
        assert_eq!(f.num(), &Poly::from_i64(&[1, 0, 1]));
        assert_eq!(f.den(), &Poly::from_i64(&[0, 1]));
        let f = parse_ratfunc_expr("num=[-1/2, 1]; den=[1]").unwrap();
        assert_eq!(f.height().unwrap(), 1);
        assert!(parse_ratfunc_expr("num=[0,1];den=[0]").is_err());
        assert!(parse_ratfunc_expr("den=[1]").is_err());
        assert!(parse_ratfunc_expr("num=0,1").is_err());
    }
}

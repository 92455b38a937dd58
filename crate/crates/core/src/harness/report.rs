//! Line-delimited solution reports with a versioned header, and the replay
//! verifier that re-derives every record from scratch.

use super::{HarnessError, ValidatedConfig};
use crate::funfield::{RatFunc, SSet};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::vojta::{classify, divisibility_check, Case, Finding, UnitEquationInstance};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use std::path::Path;

pub const REPORT_FORMAT: &str = "unitfield-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportHeader {
    pub format: String,
    pub version: u32,
    pub config_digest: String,
    pub config: serde_json::Value,
}

/// One classified solution; every derived field is reproducible from the
/// key and the header configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub key: String,
    pub u1: RatFunc,
    pub u2: RatFunc,
    pub y: RatFunc,
    pub y_scale: String,
    pub flags: Vec<String>,
    pub cases: Vec<Case>,
    pub unclassified: bool,
    pub h_u1: u64,
    pub h_u2: u64,
    pub h_y: u64,
    pub h_lam: u64,
    pub chi_s: i64,
    pub bound: i64,
    pub bound_alt: i64,
    pub chi_u_bound_53: i64,
    pub chi_u_bound_58: i64,
    pub slack: String,
    pub divisibility_ok: bool,
    pub findings: Vec<Finding>,
}

pub fn make_key(c1: &Rat, e1: &[i64], c2: &Rat, e2: &[i64]) -> String {
    let fmt = |es: &[i64]| {
        es.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "c1={};e1={};c2={};e2={}",
        format_rat(c1),
        fmt(e1),
        format_rat(c2),
        fmt(e2)
    )
}

pub fn parse_key(key: &str) -> Result<(Rat, Vec<i64>, Rat, Vec<i64>), String> {
    let mut c1 = None;
    let mut c2 = None;
    let mut e1 = None;
    let mut e2 = None;
    for part in key.split(';') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("bad key component {part:?}"))?;
        match k {
            "c1" => c1 = Some(parse_rat(v)?),
            "c2" => c2 = Some(parse_rat(v)?),
            "e1" | "e2" => {
                let exps = if v.is_empty() {
                    vec![]
                } else {
                    v.split(',')
                        .map(|e| e.parse::<i64>().map_err(|_| format!("bad exponent {e:?}")))
                        .collect::<Result<Vec<_>, _>>()?
                };
                if k == "e1" {
                    e1 = Some(exps);
                } else {
                    e2 = Some(exps);
                }
            }
            other => return Err(format!("unknown key field {other:?}")),
        }
    }
    match (c1, e1, c2, e2) {
        (Some(c1), Some(e1), Some(c2), Some(e2)) => Ok((c1, e1, c2, e2)),
        _ => Err("incomplete key".into()),
    }
}

/// `c * prod p_i^{e_i}` over the finite places of S in canonical order.
/// Numerator and denominator stay coprime by construction.
pub fn unit_from_parts(s: &SSet, c: &Rat, exps: &[i64]) -> RatFunc {
    let mut num = crate::poly::Poly::one();
    let mut den = crate::poly::Poly::one();
    for (p, &e) in s.finite_places().zip(exps) {
        let mp = p.min_poly().expect("finite place");
        if e > 0 {
            num = &num * &mp.pow(e as u32);
        } else if e < 0 {
            den = &den * &mp.pow((-e) as u32);
        }
    }
    RatFunc::new(num.scale(c), den).expect("nonzero denominator")
}

/// Evaluates one grid candidate; `None` when the right-hand side is not a
/// square up to a constant. This is the single code path used by both the
/// search and the verifier.
pub fn evaluate_candidate(
    cfg: &ValidatedConfig,
    c1: &Rat,
    e1: &[i64],
    c2: &Rat,
    e2: &[i64],
) -> Option<SolutionRecord> {
    let u1 = unit_from_parts(&cfg.s, c1, e1);
    let u2 = unit_from_parts(&cfg.s, c2, e2);
    let data = crate::vojta::EquationData::new(cfg.s.clone(), cfg.lam.clone(), u1, u2)
        .expect("grid candidates are valid unit data");
    let rhs = data.rhs();
    let (y, scale) = if rhs.is_zero() {
        (RatFunc::zero(), Rat::one())
    } else {
        crate::funfield::sqrt_up_to_constant(&rhs)?
    };
    let inst = UnitEquationInstance::from_data(data, y, scale, cfg.strict)
        .expect("accepted candidates validate");
    Some(record_from_instance(c1, e1, c2, e2, &inst))
}

fn record_from_instance(
    c1: &Rat,
    e1: &[i64],
    c2: &Rat,
    e2: &[i64],
    inst: &UnitEquationInstance,
) -> SolutionRecord {
    let classification = classify(inst);
    let divisibility = divisibility_check(inst);
    let h_u1 = inst.u1().height().expect("unit");
    let h_u2 = inst.u2().height().expect("unit");
    let h_y = if inst.y().is_zero() {
        0
    } else {
        inst.y().height().expect("nonzero")
    };
    let chi_s = inst.data().chi_s();
    let h_lam = inst.data().h_lam();
    let max_h = h_u1.max(h_u2).max(1);
    let slack = Rat::new(classification.bound.into(), (max_h as i64).into());
    let mut flags = vec![];
    if inst.y().is_zero() {
        flags.push("y_zero".to_string());
    }
    if !inst.y_scale().is_one() {
        flags.push("scaled_y".to_string());
    }
    let mut findings = classification.findings.clone();
    if let Some(witness) = &divisibility.witness {
        findings.push(Finding::new(
            "divisibility-breach",
            format!("offending place {witness}"),
        ));
    }
    SolutionRecord {
        key: make_key(c1, e1, c2, e2),
        u1: inst.u1().clone(),
        u2: inst.u2().clone(),
        y: inst.y().clone(),
        y_scale: format_rat(inst.y_scale()),
        flags,
        unclassified: classification.is_empty(),
        cases: classification.cases,
        h_u1,
        h_u2,
        h_y,
        h_lam,
        chi_s,
        bound: classification.bound,
        bound_alt: classification.bound_alt,
        chi_u_bound_53: 53 * chi_s + 28 * h_lam as i64,
        chi_u_bound_58: 58 * chi_s + 28 * h_lam as i64,
        slack: format_rat(&slack),
        divisibility_ok: divisibility.ok(),
        findings,
    }
}

pub fn write_report(
    path: &Path,
    cfg: &ValidatedConfig,
    records: &[SolutionRecord],
) -> Result<(), HarnessError> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let header = ReportHeader {
        format: REPORT_FORMAT.to_string(),
        version: REPORT_VERSION,
        config_digest: cfg.digest(),
        config: cfg.canonical_json(),
    };
    writeln!(out, "{}", serde_json::to_string(&header).expect("header serializes"))?;
    for r in records {
        writeln!(out, "{}", serde_json::to_string(r).expect("record serializes"))?;
    }
    Ok(())
}

pub fn read_report(path: &Path) -> Result<(ReportHeader, Vec<SolutionRecord>), HarnessError> {
    let file = std::fs::File::open(path)?;
    let mut lines = std::io::BufReader::new(file).lines();
    let header_line = lines
        .next()
        .ok_or(HarnessError::Parse {
            line: 1,
            message: "empty report".into(),
        })??;
    let header: ReportHeader = serde_json::from_str(&header_line).map_err(|e| HarnessError::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    let mut records = vec![];
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: SolutionRecord =
            serde_json::from_str(&line).map_err(|e| HarnessError::Parse {
                line: i + 2,
                message: e.to_string(),
            })?;
        records.push(record);
    }
    Ok((header, records))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub ok: bool,
    pub records: usize,
    /// Line number and description of the first failure.
    pub mismatch: Option<(usize, String)>,
}

/// Re-derives every record of a report from its key and the embedded
/// configuration, comparing byte-for-byte. The format version must match;
/// the producing artifact version is not part of the format.
pub fn verify_report(path: &Path) -> Result<VerifyOutcome, HarnessError> {
    let file = std::fs::File::open(path)?;
    let mut lines = std::io::BufReader::new(file).lines().enumerate();
    let (_, header_line) = lines.next().ok_or(HarnessError::Parse {
        line: 1,
        message: "empty report".into(),
    })?;
    let header_line = header_line?;
    let header: ReportHeader = serde_json::from_str(&header_line).map_err(|e| HarnessError::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if header.format != REPORT_FORMAT || header.version != REPORT_VERSION {
        return Ok(VerifyOutcome {
            ok: false,
            records: 0,
            mismatch: Some((1, "unknown report format or version".into())),
        });
    }
    let raw: super::SearchConfig =
        serde_json::from_value(header.config.clone()).map_err(|e| HarnessError::Parse {
            line: 1,
            message: e.to_string(),
        })?;
    let cfg = raw.validate().map_err(|e| HarnessError::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if cfg.digest() != header.config_digest {
        return Ok(VerifyOutcome {
            ok: false,
            records: 0,
            mismatch: Some((1, "config digest mismatch".into())),
        });
    }
    let mut count = 0usize;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: SolutionRecord =
            serde_json::from_str(&line).map_err(|e| HarnessError::Parse {
                line: line_no,
                message: e.to_string(),
            })?;
        let (c1, e1, c2, e2) = parse_key(&record.key).map_err(|m| HarnessError::Parse {
            line: line_no,
            message: m,
        })?;
        let expected = match evaluate_candidate(&cfg, &c1, &e1, &c2, &e2) {
            Some(r) => r,
            None => {
                return Ok(VerifyOutcome {
                    ok: false,
                    records: count,
                    mismatch: Some((line_no, "key does not produce a solution".into())),
                })
            }
        };
        let expected_line = serde_json::to_string(&expected).expect("record serializes");
        if expected_line != line {
            return Ok(VerifyOutcome {
                ok: false,
                records: count,
                mismatch: Some((line_no, "record does not reproduce".into())),
            });
        }
        count += 1;
    }
    Ok(VerifyOutcome {
        ok: true,
        records: count,
        mismatch: None,
    })
}

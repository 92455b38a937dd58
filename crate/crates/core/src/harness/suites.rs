//! Named verification suites driven by a seeded generator, aggregated into
//! a reproducible manifest. Violations are breaches of proven identities or
//! inequalities and fail a run; findings are formula-drift notes and never
//! do.

use super::gen::Gen;
use super::search::search;
use super::{HarnessError, ValidatedConfig};
use crate::covers::{genus_of_cover, QuadCoverSpec};
use crate::funfield::{d_omega, theta, RatFunc, SSet};
use crate::moduli::{
    coeff_to_moduli, config_from_coeff, is_normal_crossing, lambda_prime, stabilizer_orbit,
    Fourple, ProjPoint, ProjRat,
};
use crate::rat::{format_rat, rat_int, Rat};
use crate::vojta::{
    cover_bound_check, cz_check, discriminant_bounds, poly_a_eval, poly_b, zannier_check,
    VojtaError,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SUITE_NAMES: [&str; 8] = [
    "identities",
    "cz",
    "zannier",
    "derivative-bound",
    "moduli",
    "cover",
    "discriminant-bounds",
    "trichotomy",
];

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub cases: u64,
    pub violations: Vec<String>,
    pub findings: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> SuiteOutcome {
        SuiteOutcome {
            name: name.to_string(),
            cases: 0,
            violations: vec![],
            findings: vec![],
        }
    }

    fn violation(&mut self, message: impl Into<String>) {
        if self.violations.len() < 25 {
            self.violations.push(message.into());
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunManifest {
    pub format: String,
    pub version: u32,
    pub config_digest: String,
    pub artifact_version: String,
    pub suites: Vec<SuiteOutcome>,
    pub case_counts: BTreeMap<String, u64>,
    pub violations_total: u64,
    pub findings_total: u64,
}

impl RunManifest {
    pub fn clean(&self) -> bool {
        self.violations_total == 0
    }
}

fn suite_seed(cfg: &ValidatedConfig, idx: u64) -> u64 {
    cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(idx)
}

/// Runs the named suites (all from the config when `names` is empty) and
/// assembles the manifest. Identical config and seed give a byte-identical
/// manifest regardless of worker count.
pub fn run_suites(
    cfg: &ValidatedConfig,
    names: &[String],
    workers: usize,
) -> Result<RunManifest, HarnessError> {
    let selected: Vec<String> = if names.is_empty() {
        cfg.suites.clone()
    } else {
        names.to_vec()
    };
    for name in &selected {
        if !SUITE_NAMES.contains(&name.as_str()) {
            return Err(HarnessError::UnknownSuite(name.clone()));
        }
    }
    let mut suites = vec![];
    let mut case_counts: BTreeMap<String, u64> = BTreeMap::new();
    for name in &selected {
        let idx = SUITE_NAMES.iter().position(|n| n == name).unwrap() as u64;
        let seed = suite_seed(cfg, idx);
        let outcome = match name.as_str() {
            "identities" => suite_identities(seed, 200),
            "cz" => suite_cz(seed, 500),
            "zannier" => suite_zannier(seed, 500),
            "derivative-bound" => suite_derivative_bound(seed, 500),
            "moduli" => suite_moduli(seed),
            "cover" => suite_cover(seed, 50),
            "discriminant-bounds" => suite_discriminant_bounds(seed, 200),
            "trichotomy" => suite_trichotomy(cfg, workers, &mut case_counts)?,
            _ => unreachable!(),
        };
        suites.push(outcome);
    }
    let violations_total = suites.iter().map(|s| s.violations.len() as u64).sum();
    let findings_total = suites.iter().map(|s| s.findings.len() as u64).sum();
    Ok(RunManifest {
        format: "unitfield-manifest".into(),
        version: 1,
        config_digest: cfg.digest(),
        artifact_version: env!("CARGO_PKG_VERSION").into(),
        suites,
        case_counts,
        violations_total,
        findings_total,
    })
}

fn finalize_findings(outcome: &mut SuiteOutcome, tally: BTreeMap<String, u64>) {
    for (code, count) in tally {
        outcome.findings.push(format!("{code} x{count}"));
    }
}

/// Closed-form eliminants against the generic resultants, and the scaled
/// derivative identity `B(u1, u2) = (A(u1, u2))'`.
pub fn suite_identities(seed: u64, n: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("identities");
    let mut g = Gen::new(seed);
    let mut tally = BTreeMap::new();
    for i in 0..n {
        let data = g.equation_data(3, 5);
        let derived = data.derived();
        for f in &derived.findings {
            if f.code == "closed-form-F-drift" {
                out.violation(format!("case {i}: closed form of F drifts from the resultant"));
            } else {
                *tally.entry(f.code.clone()).or_insert(0u64) += 1;
            }
        }
        let b = poly_b(&data);
        let lhs = b.eval(data.u1(), data.u2());
        let rhs = d_omega(&poly_a_eval(&data, data.u1(), data.u2()), data.s());
        if lhs != rhs {
            out.violation(format!("case {i}: B(u1, u2) differs from the derivative of A"));
        }
        out.cases += 1;
    }
    finalize_findings(&mut out, tally);
    out
}

/// The gcd-sum inequality on seeded unit pairs over S = {0, 1, inf}.
pub fn suite_cz(seed: u64, n: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("cz");
    let mut g = Gen::new(seed);
    let s = SSet::from_roots(&[0, 1]);
    let one = RatFunc::one();
    while (out.cases as usize) < n {
        let a = g.unit(&s, 3, 5);
        let b = g.unit(&s, 3, 5);
        if a == one || b == one || (a.is_constant() && b.is_constant()) {
            continue;
        }
        match cz_check(&a, &b, &s) {
            Ok(report) => {
                if !report.holds {
                    out.violation(format!(
                        "pair ({a}, {b}): gcd-sum {} breaks the {:?} bound",
                        report.gcd_sum, report.branch
                    ));
                }
            }
            Err(e) => out.violation(format!("pair ({a}, {b}): {e}")),
        }
        out.cases += 1;
    }
    out
}

/// The sum-of-units lower bound, with deliberate vanishing-subsum inputs
/// exercising the rejection path.
pub fn suite_zannier(seed: u64, n: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("zannier");
    let mut g = Gen::new(seed);
    let mut rejected = 0u64;
    while (out.cases as usize) < n {
        let finite = g.usize_below(3) + 1;
        let s = g.sset(finite);
        let m = 2 + g.usize_below(3);
        let mut thetas: Vec<RatFunc> = (0..m).map(|_| g.unit(&s, 3, 5)).collect();
        let sabotage = g.usize_below(7) == 0;
        if sabotage {
            let u = g.unit(&s, 3, 5);
            thetas[0] = u.clone();
            thetas[1] = -&u;
        }
        match zannier_check(&thetas, &s) {
            Ok(report) => {
                if sabotage {
                    out.violation("engineered vanishing subsum was not rejected".to_string());
                } else if !report.holds {
                    out.violation(format!(
                        "tuple of {} units: {} < {}",
                        report.m, report.lhs, report.rhs
                    ));
                }
            }
            Err(VojtaError::VanishingSubsum(subset)) => {
                if !sabotage {
                    // A random vanishing subsum: rejection is the contract.
                }
                debug_assert!(!subset.is_empty());
                rejected += 1;
            }
            Err(e) => out.violation(format!("unexpected error {e}")),
        }
        out.cases += 1;
    }
    out.findings.push(format!("rejected-vanishing-subsums x{rejected}"));
    out
}

/// `H(theta_u) <= chi_S` for seeded units, with pole location and
/// simplicity checked through the divisor.
pub fn suite_derivative_bound(seed: u64, n: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("derivative-bound");
    let mut g = Gen::new(seed);
    while (out.cases as usize) < n {
        let finite = g.usize_below(4) + 1;
        let s = g.sset(finite);
        let u = g.nonconstant_unit(&s, 5, 5);
        let th = theta(&u, &s).expect("generated unit");
        let h = th.height().expect("nonconstant unit has nonzero theta");
        if (h as i64) > s.chi() {
            out.violation(format!("H(theta) = {h} > chi = {} for u = {u}", s.chi()));
        }
        for (place, c) in th.divisor().expect("nonzero").support() {
            if c < 0 && (!s.contains(place) || c < -1) {
                out.violation(format!("theta of {u} has a bad pole at {place}"));
            }
        }
        out.cases += 1;
    }
    out
}

/// The coordinate pipeline closed form, orbit invariance of the
/// configuration invariant, and normal-crossing detection.
pub fn suite_moduli(seed: u64) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("moduli");
    let mut g = Gen::new(seed);
    let two = rat_int(2);

    let mut checked = 0;
    while checked < 100 {
        let lam = g.nonzero_rat(9);
        if lam == two || lam == -&two {
            continue;
        }
        let expect = rat_int(16) / (&lam * &lam - rat_int(4));
        match coeff_to_moduli(&lam) {
            Ok(ProjRat::Finite(v)) if v == expect => {}
            other => out.violation(format!(
                "pipeline at lam = {}: got {other:?}, want {}",
                format_rat(&lam),
                format_rat(&expect)
            )),
        }
        if !is_normal_crossing(&config_from_coeff(&lam)) {
            out.violation(format!("normal crossing fails at lam = {}", format_rat(&lam)));
        }
        checked += 1;
        out.cases += 1;
    }
    for lam in [two.clone(), -&two] {
        if is_normal_crossing(&config_from_coeff(&lam)) {
            out.violation("degenerate configuration reported as normal crossing".to_string());
        }
        if coeff_to_moduli(&lam).is_ok() {
            out.violation("pipeline accepted a degenerate coefficient".to_string());
        }
        out.cases += 1;
    }

    let mut orbits = 0;
    while orbits < 200 {
        let mut vals: Vec<Rat> = vec![];
        while vals.len() < 4 {
            let v = g.nonzero_rat(9);
            if !vals.contains(&v) {
                vals.push(v);
            }
        }
        let mut points: Vec<ProjPoint> = vals.into_iter().map(ProjPoint::affine).collect();
        if g.usize_below(5) == 0 {
            points[g.usize_below(4)] = ProjPoint::infinity();
        }
        let f = Fourple([
            points[0].clone(),
            points[1].clone(),
            points[2].clone(),
            points[3].clone(),
        ]);
        let lp = lambda_prime(&f).expect("distinct points");
        for permuted in stabilizer_orbit(&f) {
            if lambda_prime(&permuted).expect("distinct points") != lp {
                out.violation("configuration invariant varies over the stabilizer orbit".to_string());
            }
        }
        orbits += 1;
        out.cases += 1;
    }
    out
}

/// Splitting-cover Euler characteristic against its bound, plus the genus
/// oracle for hyperelliptic-style covers.
pub fn suite_cover(seed: u64, n: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("cover");
    let mut g = Gen::new(seed);
    let mut skipped = 0u64;
    let mut attempts = 0;
    while (out.cases as usize) < n && attempts < 50 * n {
        attempts += 1;
        let data = g.equation_data(3, 5);
        let report = cover_bound_check(&data);
        if report.skipped.is_some() {
            skipped += 1;
            continue;
        }
        if !report.ok {
            out.violation(format!(
                "chi_U = {:?} exceeds bound {} for lam = {}",
                report.chi_u,
                report.bound,
                data.lam()
            ));
        }
        out.cases += 1;
    }
    for degree in 1..=8usize {
        for _ in 0..2 {
            let d = g.squarefree_poly(degree);
            let spec = QuadCoverSpec::from_poly(&d).expect("nonconstant squarefree");
            let genus = genus_of_cover(&[spec]).expect("single spec");
            if genus as usize != (degree - 1) / 2 {
                out.violation(format!("genus of sqrt({d}) is {genus}, want {}", (degree - 1) / 2));
            }
            out.cases += 1;
        }
    }
    out.findings.push(format!("degenerate-instances-skipped x{skipped}"));
    out
}

/// Oracle discriminant heights against `6 chi + 4 H(lam)` and
/// `10 chi + 8 H(lam)`; tabulated-formula drift lands in findings.
pub fn suite_discriminant_bounds(seed: u64, n: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("discriminant-bounds");
    let mut g = Gen::new(seed);
    let mut tally = BTreeMap::new();
    for i in 0..n {
        let data = g.equation_data(3, 5);
        match discriminant_bounds(&data) {
            Ok(report) => {
                if !report.f_ok {
                    out.violation(format!(
                        "case {i}: H(Discr F) = {} > {}",
                        report.h_disc_f, report.bound_f
                    ));
                }
                if !report.g_ok {
                    out.violation(format!(
                        "case {i}: H(Discr G) = {} > {}",
                        report.h_disc_g, report.bound_g
                    ));
                }
                for f in report.findings {
                    *tally.entry(f.code).or_insert(0u64) += 1;
                }
            }
            Err(e) => out.violation(format!("case {i}: {e}")),
        }
        out.cases += 1;
    }
    finalize_findings(&mut out, tally);
    out
}

/// Full grid search with classification: every solution must land in at
/// least one trichotomy case and pass divisibility.
fn suite_trichotomy(
    cfg: &ValidatedConfig,
    workers: usize,
    case_counts: &mut BTreeMap<String, u64>,
) -> Result<SuiteOutcome, HarnessError> {
    let mut out = SuiteOutcome::new("trichotomy");
    let output = search(cfg, workers)?;
    for r in &output.records {
        if r.unclassified {
            out.violation(format!("unclassified solution {}", r.key));
        }
        if !r.divisibility_ok {
            out.violation(format!("divisibility breach at {}", r.key));
        }
    }
    out.cases = output.records.len() as u64;
    let mut tally = BTreeMap::new();
    for r in &output.records {
        for f in &r.findings {
            *tally.entry(f.code.clone()).or_insert(0u64) += 1;
        }
    }
    finalize_findings(&mut out, tally);
    *case_counts = output.case_counts;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::SearchConfig;

    fn config() -> ValidatedConfig {
        SearchConfig::from_json(&crate::harness::tests::sample_config_json())
            .unwrap()
            .validate()
            .unwrap()
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let cfg = config();
        let err = run_suites(&cfg, &["no-such-suite".to_string()], 1).unwrap_err();
        assert!(matches!(err, HarnessError::UnknownSuite(_)));
    }

    #[test]
    fn small_suites_run_clean() {
        // Small case counts here; the acceptance suite runs the full sizes.
        let a = suite_identities(11, 20);
        assert_eq!(a.cases, 20);
        assert!(a.violations.is_empty(), "{:?}", a.violations);

        let b = suite_cz(12, 60);
        assert!(b.violations.is_empty(), "{:?}", b.violations);

        let c = suite_zannier(13, 60);
        assert!(c.violations.is_empty(), "{:?}", c.violations);

        let d = suite_derivative_bound(14, 60);
        assert!(d.violations.is_empty(), "{:?}", d.violations);
    }

    #[test]
    fn manifest_replay_is_byte_identical() {
        let cfg = config();
        let names = vec!["moduli".to_string(), "cover".to_string()];
        let m1 = run_suites(&cfg, &names, 1).unwrap();
        let m2 = run_suites(&cfg, &names, 4).unwrap();
        assert_eq!(
            serde_json::to_string(&m1).unwrap(),
            serde_json::to_string(&m2).unwrap()
        );
        assert!(m1.clean(), "{:?}", m1);
    }
}

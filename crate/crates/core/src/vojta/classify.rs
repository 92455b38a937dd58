//! The solution trichotomy: vanishing subsum, bounded-exponent multiplicative
//! dependence, or bounded height.

use super::{Finding, UnitEquationInstance};
use crate::funfield::RatFunc;
use crate::rat::{format_rat, Rat};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The four summands of the right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermName {
    U1Sq,
    LamU1,
    U2,
    One,
}

pub const ALL_TERMS: [TermName; 4] = [TermName::U1Sq, TermName::LamU1, TermName::U2, TermName::One];

impl fmt::Display for TermName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TermName::U1Sq => "u1^2",
            TermName::LamU1 => "lam*u1",
            TermName::U2 => "u2",
            TermName::One => "1",
        };
        write!(f, "{s}")
    }
}

fn term_values(inst: &UnitEquationInstance) -> [RatFunc; 4] {
    [
        inst.u1() * inst.u1(),
        inst.lam() * inst.u1(),
        inst.u2().clone(),
        RatFunc::one(),
    ]
}

/// The lexicographically first nonempty proper subset of
/// `{u1^2, lam*u1, u2, 1}` that sums to zero, if any. Subsets are compared
/// as ascending index sequences.
pub fn subsum_cases(inst: &UnitEquationInstance) -> Option<Vec<TermName>> {
    let values = term_values(inst);
    let mut subsets: Vec<Vec<usize>> = (1u32..15)
        .map(|mask| (0..4).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort();
    for subset in subsets {
        let mut sum = RatFunc::zero();
        for &i in &subset {
            sum = &sum + &values[i];
        }
        if sum.is_zero() {
            return Some(subset.into_iter().map(|i| ALL_TERMS[i]).collect());
        }
    }
    None
}

/// One satisfied case of the trichotomy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Case {
    SubsumVanishing {
        terms: Vec<TermName>,
    },
    Dependence {
        r: i64,
        s: i64,
        mu: String,
    },
    HeightBounded {
        bound: i64,
        h_u1: u64,
        h_u2: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub cases: Vec<Case>,
    /// Height bound of the height case, always evaluated.
    pub bound: i64,
    /// Variant of the bound with coefficient 1 on H(lam); reported only.
    pub bound_alt: i64,
    pub findings: Vec<Finding>,
}

impl Classification {
    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn has_subsum(&self) -> bool {
        self.cases
            .iter()
            .any(|c| matches!(c, Case::SubsumVanishing { .. }))
    }

    pub fn dependence(&self) -> Option<(i64, i64, String)> {
        self.cases.iter().find_map(|c| match c {
            Case::Dependence { r, s, mu } => Some((*r, *s, mu.clone())),
            _ => None,
        })
    }

    pub fn has_height_bound(&self) -> bool {
        self.cases
            .iter()
            .any(|c| matches!(c, Case::HeightBounded { .. }))
    }
}

/// Exhaustive scan of the exponent box [-5, 5]^2 minus the origin on the
/// divisor vectors of the units, reduced to the primitive normalized
/// relation. Exact integer arithmetic throughout.
fn dependence_by_box_scan(
    inst: &UnitEquationInstance,
    cap: i64,
) -> Option<(i64, i64, Rat)> {
    let s = inst.s();
    let mut da = Vec::with_capacity(s.places().len());
    let mut db = Vec::with_capacity(s.places().len());
    for p in s.places() {
        da.push(inst.u1().valuation(p).expect("unit is nonzero"));
        db.push(inst.u2().valuation(p).expect("unit is nonzero"));
    }
    for r in -cap..=cap {
        for t in -cap..=cap {
            if r == 0 && t == 0 {
                continue;
            }
            if da.iter().zip(&db).all(|(&x, &y)| r * x + t * y == 0) {
                let g = gcd(r.unsigned_abs(), t.unsigned_abs()) as i64;
                let (mut r, mut t) = (r / g, t / g);
                if r < 0 || (r == 0 && t < 0) {
                    r = -r;
                    t = -t;
                }
                let mu = (inst.u1().pow(r) * inst.u2().pow(t))
                    .as_constant()
                    .expect("trivial divisor combination is constant");
                return Some((r, t, mu));
            }
        }
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Height bound of the third case: `2^12 (58 chi + 28 H(lam)) + 16 H(lam)`.
pub fn height_case_bound(chi: i64, h_lam: i64) -> i64 {
    (1 << 12) * (58 * chi + 28 * h_lam) + 16 * h_lam
}

/// Evaluates all three cases and returns every satisfied one. An empty case
/// set is a potential counterexample to the trichotomy and is surfaced by
/// the caller as a violation, never accepted silently.
pub fn classify(inst: &UnitEquationInstance) -> Classification {
    let mut cases = vec![];
    let mut findings = vec![];

    if let Some(terms) = subsum_cases(inst) {
        cases.push(Case::SubsumVanishing { terms });
    }

    if let Some((r, s, mu)) = dependence_by_box_scan(inst, 5) {
        cases.push(Case::Dependence {
            r,
            s,
            mu: format_rat(&mu),
        });
    }

    let chi = inst.data().chi_s();
    let h_lam = inst.data().h_lam() as i64;
    let bound = height_case_bound(chi, h_lam);
    let bound_alt = (1 << 12) * (58 * chi + 28 * h_lam) + h_lam;
    let h_u1 = inst.u1().height().expect("unit");
    let h_u2 = inst.u2().height().expect("unit");
    let max_h = h_u1.max(h_u2) as i64;
    if max_h <= bound {
        cases.push(Case::HeightBounded {
            bound,
            h_u1,
            h_u2,
        });
    }
    if (max_h <= bound) != (max_h <= bound_alt) {
        findings.push(Finding::new(
            "height-bound-constant-variants-disagree",
            format!("bound {bound} admits the instance but variant {bound_alt} does not"),
        ));
    }

    Classification {
        cases,
        bound,
        bound_alt,
        findings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::{mult_dependence, SSet};
    use crate::poly::Poly;
    use crate::rat::rat_int;

    fn star_instance() -> UnitEquationInstance {
        UnitEquationInstance::new(
            SSet::from_roots(&[0, 2, -2]),
            RatFunc::x(),
            RatFunc::x(),
            RatFunc::from_poly(Poly::from_i64(&[0, 0, -2])),
            RatFunc::one(),
        )
        .unwrap()
    }

    #[test]
    fn subsum_of_star_instance() {
        let subset = subsum_cases(&star_instance()).unwrap();
        assert_eq!(subset, vec![TermName::U1Sq, TermName::LamU1, TermName::U2]);
    }

    #[test]
    fn subsum_u2_plus_one() {
        // u2 = -1 with y^2 = u1^2 + lam u1: take u1 = t, lam = t: rhs = 2t^2,
        // scale 2, y = t.
        let inst = UnitEquationInstance::with_scale(
            SSet::from_roots(&[0, 2, -2]),
            RatFunc::x(),
            RatFunc::x(),
            RatFunc::constant(rat_int(-1)),
            RatFunc::x(),
            rat_int(2),
            true,
        )
        .unwrap();
        let subset = subsum_cases(&inst).unwrap();
        assert_eq!(subset, vec![TermName::U2, TermName::One]);
    }

    #[test]
    fn generic_instance_has_no_subsum() {
        // u1 = 2, u2 = (t-2)(t+2), y = t+1:
        // 4 + 2t + t^2 - 4 + 1 = (t+1)^2, and no proper subsum vanishes.
        let inst = UnitEquationInstance::new(
            SSet::from_roots(&[0, 2, -2]),
            RatFunc::x(),
            RatFunc::constant(rat_int(2)),
            RatFunc::from_poly(Poly::from_i64(&[-4, 0, 1])),
            RatFunc::from_poly(Poly::from_i64(&[1, 1])),
        )
        .unwrap();
        assert_eq!(subsum_cases(&inst), None);
        assert!(!classify(&inst).is_empty());
    }

    #[test]
    fn classify_star_instance() {
        let inst = star_instance();
        let got = classify(&inst);
        assert!(got.has_subsum());
        assert!(got.has_height_bound());
        // chi = 2, H(lam) = 1: bound = 2^12 (58*2 + 28) + 16.
        assert_eq!(got.bound, (1 << 12) * 144 + 16);
        assert_eq!(got.bound_alt, (1 << 12) * 144 + 1);
        // u1 = t and u2 = -2t^2 satisfy u1^2 u2^-1 = -1/2.
        let dep = got.dependence().unwrap();
        assert_eq!((dep.0, dep.1), (2, -1));
        assert_eq!(dep.2, "-1/2");
        assert!(!got.is_empty());
    }

    #[test]
    fn box_scan_agrees_with_divisor_route() {
        let inst = star_instance();
        let via_box = dependence_by_box_scan(&inst, 5);
        let via_divisors =
            mult_dependence(inst.u1(), inst.u2(), inst.s(), Some(5)).unwrap();
        assert_eq!(
            via_box.clone().map(|(r, s, mu)| (r, s, mu)),
            via_divisors
        );
    }

    #[test]
    fn dependence_conventions() {
        // Constant u1: the relation is (1, 0, mu).
        let inst = UnitEquationInstance::new(
            SSet::from_roots(&[0, 2, -2]),
            RatFunc::x(),
            RatFunc::one(),
            RatFunc::from_poly(Poly::from_i64(&[-2, -1])),
            RatFunc::zero(),
        )
        .unwrap();
        let got = classify(&inst);
        let dep = got.dependence().unwrap();
        assert_eq!((dep.0, dep.1), (1, 0));
        assert_eq!(dep.2, "1");
        // No proper subsum vanishes even though y = 0.
        assert!(!got.has_subsum());
        assert!(!got.is_empty());
    }
}

//! The auxiliary polynomials attached to a unit-equation instance.
//!
//! `A(X, Y) = X^2 + lam*X + Y + 1` and its scaled derivative
//! `B(X, Y) = 2*th1*X^2 + lam*(th1 + thl)*X + th2*Y` eliminate to quadratics
//! `F(X) = Res_Y(A, B)` and `G(Y) = Res_X(A, B)`.
//!
//! The authoritative values here are the generic eliminants: a 2x2 cross
//! product for F and the 4x4 Sylvester determinant for G. Tabulated closed
//! forms are computed alongside and compared; any disagreement is recorded
//! as a finding rather than silently adopted, because hand-copied closed
//! forms are exactly where sign and exponent slips live.

use super::{EquationData, Finding, VojtaError};
use crate::funfield::{d_omega, theta, RatFunc};
use crate::rat::rat_int;

/// `c2*T^2 + c1*T + c0` with coefficients in the function field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    pub c2: RatFunc,
    pub c1: RatFunc,
    pub c0: RatFunc,
}

impl QuadPoly {
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        &(&(&self.c2 * x) + &self.c1) * x + &self.c0
    }

    pub fn discriminant(&self) -> RatFunc {
        &(&self.c1 * &self.c1) - &(&self.c2 * &self.c0).scale(&rat_int(4))
    }

    pub fn is_identically_zero(&self) -> bool {
        self.c2.is_zero() && self.c1.is_zero() && self.c0.is_zero()
    }

    fn negated(&self) -> QuadPoly {
        QuadPoly {
            c2: -&self.c2,
            c1: -&self.c1,
            c0: -&self.c0,
        }
    }
}

/// `B(X, Y)` coefficients: of `X^2`, of `X`, and of `Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyB {
    pub c_xx: RatFunc,
    pub c_x: RatFunc,
    pub c_y: RatFunc,
}

impl PolyB {
    pub fn eval(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        &(&self.c_xx * &(x * x)) + &(&self.c_x * x) + &(&self.c_y * y)
    }
}

/// `A(u1, u2) = u1^2 + lam*u1 + u2 + 1`.
pub fn poly_a_eval(data: &EquationData, x: &RatFunc, y: &RatFunc) -> RatFunc {
    &(x * x) + &(data.lam() * x) + y + RatFunc::one()
}

/// The scaled derivative polynomial; satisfies
/// `B(u1, u2) = d_omega(A(u1, u2))` exactly.
pub fn poly_b(data: &EquationData) -> PolyB {
    let th1 = theta(data.u1(), data.s()).expect("u1 is an S-unit");
    let th2 = theta(data.u2(), data.s()).expect("u2 is an S-unit");
    let thl = theta(data.lam(), data.s()).expect("lam is an S-unit");
    PolyB {
        c_xx: th1.scale(&rat_int(2)),
        c_x: data.lam() * &(&th1 + &thl),
        c_y: th2,
    }
}

// ---------------------------------------------------------------------------
// Eliminant determinants. The matrix entries are polynomials in the
// eliminated variable with function-field coefficients; clearing the common
// denominator first keeps the whole determinant inside polynomial
// arithmetic, with a single reduction per output coefficient at the end.

/// Polynomial in the auxiliary variable with `Q[t]` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct YPoly {
    coeffs: Vec<Poly>,
}

use crate::poly::Poly;

impl YPoly {
    fn zero() -> YPoly {
        YPoly { coeffs: vec![] }
    }

    fn from_coeffs(mut coeffs: Vec<Poly>) -> YPoly {
        while coeffs.last().map_or(false, Poly::is_zero) {
            coeffs.pop();
        }
        YPoly { coeffs }
    }

    fn coeff(&self, i: usize) -> Poly {
        self.coeffs.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn add(&self, rhs: &YPoly) -> YPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        YPoly::from_coeffs((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    fn sub(&self, rhs: &YPoly) -> YPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        YPoly::from_coeffs((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    fn mul(&self, rhs: &YPoly) -> YPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return YPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        YPoly::from_coeffs(out)
    }
}

/// Determinant by cofactor expansion; the matrices here are at most 4x4.
fn det(m: &[Vec<YPoly>]) -> YPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = YPoly::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.coeffs.is_empty() {
            continue;
        }
        let minor: Vec<Vec<YPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&det(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Scales a Y-linear entry `c1*Y + c0` of function-field coefficients by
/// the common denominator, producing polynomial coefficients.
fn scaled_entry(c0: &RatFunc, c1: &RatFunc, d: &Poly) -> YPoly {
    let clear = |f: &RatFunc| -> Poly { f.num() * &d.exact_div(f.den()) };
    YPoly::from_coeffs(vec![clear(c0), clear(c1)])
}

/// Everything derived from one instance: the log-derivatives, B, and the two
/// eliminants with their drift findings.
#[derive(Debug, Clone)]
pub struct Derived {
    pub theta1: RatFunc,
    pub theta2: RatFunc,
    pub theta_lam: RatFunc,
    pub b: PolyB,
    pub f: QuadPoly,
    pub g: QuadPoly,
    pub findings: Vec<Finding>,
}

impl EquationData {
    pub fn derived(&self) -> Derived {
        derive_polys(self)
    }
}

pub fn resultant_f(data: &EquationData) -> QuadPoly {
    derive_polys(data).f
}

pub fn resultant_g(data: &EquationData) -> QuadPoly {
    derive_polys(data).g
}

fn derive_polys(data: &EquationData) -> Derived {
    let th1 = theta(data.u1(), data.s()).expect("u1 is an S-unit");
    let th2 = theta(data.u2(), data.s()).expect("u2 is an S-unit");
    let thl = theta(data.lam(), data.s()).expect("lam is an S-unit");
    let lam = data.lam();
    let b = poly_b(data);

    // Common denominator of every matrix entry.
    let mut common = Poly::one();
    for f in [lam, &b.c_xx, &b.c_x, &b.c_y] {
        common = common.lcm(f.den());
    }
    let clear = |f: &RatFunc| -> Poly { f.num() * &common.exact_div(f.den()) };
    let one_c = clear(&RatFunc::one());

    // F = Res_Y(A, B) of two Y-linear polynomials: a1*b0 - a0*b1 where the
    // X-parts ride along as polynomial coefficients. Scaling both rows by
    // the common denominator scales F by its square.
    let a_y0 = [one_c.clone(), clear(lam), one_c.clone()]; // X^2 + lam X + 1
    let b_y0 = [Poly::zero(), clear(&b.c_x), clear(&b.c_xx)];
    let b_y1 = clear(&b.c_y);
    let den_f = &common * &common;
    let f_coeff = |i: usize| -> RatFunc {
        let num = &(&one_c * &b_y0[i]) - &(&a_y0[i] * &b_y1);
        RatFunc::new(num, den_f.clone()).expect("nonzero denominator")
    };
    let f = QuadPoly {
        c2: f_coeff(2),
        c1: f_coeff(1),
        c0: f_coeff(0),
    };

    // G = Res_X(A, B) as the 4x4 Sylvester determinant in X; entries are
    // polynomials in Y of degree at most one, and every row is scaled by the
    // common denominator, so the determinant carries its fourth power.
    let zero = YPoly::zero();
    let a0 = scaled_entry(&RatFunc::one(), &RatFunc::one(), &common); // Y + 1
    let a1 = scaled_entry(lam, &RatFunc::zero(), &common);
    let a2 = scaled_entry(&RatFunc::one(), &RatFunc::zero(), &common);
    let b0 = scaled_entry(&RatFunc::zero(), &b.c_y, &common); // th2 * Y
    let b1 = scaled_entry(&b.c_x, &RatFunc::zero(), &common);
    let b2 = scaled_entry(&b.c_xx, &RatFunc::zero(), &common);
    let sylvester = vec![
        vec![a2.clone(), a1.clone(), a0.clone(), zero.clone()],
        vec![zero.clone(), a2, a1, a0],
        vec![b2.clone(), b1.clone(), b0.clone(), zero.clone()],
        vec![zero, b2, b1, b0],
    ];
    let g_poly = det(&sylvester);
    debug_assert!(g_poly.deg().map_or(true, |d| d <= 2));
    let den_g = den_f.pow(2);
    let g_coeff = |i: usize| -> RatFunc {
        RatFunc::new(g_poly.coeff(i), den_g.clone()).expect("nonzero denominator")
    };
    let g = QuadPoly {
        c2: g_coeff(2),
        c1: g_coeff(1),
        c0: g_coeff(0),
    };

    let mut findings = vec![];
    let f_closed = closed_form_f(&th1, &th2, &thl, lam);
    if f != f_closed && f != f_closed.negated() {
        findings.push(Finding::new(
            "closed-form-F-drift",
            "tabulated closed form of F disagrees with the generic resultant beyond sign; resultant kept",
        ));
    }
    let g_closed = closed_form_g(&th1, &th2, &thl, lam);
    if g != g_closed && g != g_closed.negated() {
        findings.push(Finding::new(
            "closed-form-G-drift",
            "tabulated closed form of G disagrees with the Sylvester determinant beyond sign; determinant kept",
        ));
    }

    Derived {
        theta1: th1,
        theta2: th2,
        theta_lam: thl,
        b,
        f,
        g,
        findings,
    }
}

/// Tabulated closed form of F:
/// `X^2 (2 th1 - th2) + X lam (th1 - th2 + thl) - th2`.
pub(crate) fn closed_form_f(th1: &RatFunc, th2: &RatFunc, thl: &RatFunc, lam: &RatFunc) -> QuadPoly {
    QuadPoly {
        c2: &th1.scale(&rat_int(2)) - th2,
        c1: lam * &(&(th1 - th2) + thl),
        c0: -th2,
    }
}

/// Tabulated closed form of G:
/// `Y^2 (2 th1 - th2)^2
///  + Y [th1^2 (8 - lam^2) + th1 th2 (lam^2 - 4) + lam^2 thl (thl - th2)]
///  + th1^2 (4 - lam^2) + lam^2 thl^2`.
pub(crate) fn closed_form_g(th1: &RatFunc, th2: &RatFunc, thl: &RatFunc, lam: &RatFunc) -> QuadPoly {
    let lam2 = lam * lam;
    let four = RatFunc::constant(rat_int(4));
    let eight = RatFunc::constant(rat_int(8));
    let lead = &th1.scale(&rat_int(2)) - th2;
    let th1_sq = th1 * th1;
    QuadPoly {
        c2: &lead * &lead,
        c1: &(&(&th1_sq * &(&eight - &lam2)) + &(&(th1 * th2) * &(&lam2 - &four)))
            + &(&(&lam2 * thl) * &(thl - th2)),
        c0: &(&th1_sq * &(&four - &lam2)) + &(&lam2 * &(thl * thl)),
    }
}

// ---------------------------------------------------------------------------
// Discriminants.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantReport {
    pub disc_f: RatFunc,
    pub disc_g: RatFunc,
    pub h_disc_f: u64,
    pub h_disc_g: u64,
    pub bound_f: i64,
    pub bound_g: i64,
    pub f_ok: bool,
    pub g_ok: bool,
    pub findings: Vec<Finding>,
}

/// Oracle discriminants of F and G with their height bounds
/// `6 chi + 4 H(lam)` and `10 chi + 8 H(lam)`, plus drift findings for the
/// tabulated discriminant formulas. A vanishing discriminant counts as
/// height 0.
pub fn discriminant_bounds(data: &EquationData) -> Result<DiscriminantReport, VojtaError> {
    let derived = data.derived();
    let disc_f = derived.f.discriminant();
    let disc_g = derived.g.discriminant();
    let h = |f: &RatFunc| -> u64 {
        if f.is_zero() {
            0
        } else {
            f.height().expect("nonzero")
        }
    };
    let chi = data.chi_s();
    let h_lam = data.h_lam() as i64;
    let bound_f = 6 * chi + 4 * h_lam;
    let bound_g = 10 * chi + 8 * h_lam;
    let h_disc_f = h(&disc_f);
    let h_disc_g = h(&disc_g);

    let mut findings = derived.findings.clone();
    let tab_f = tabulated_discr_f(&derived, data.lam(), data.s());
    if tab_f != disc_f {
        findings.push(Finding::new(
            "tabulated-discrF-drift",
            format!(
                "tabulated discriminant formula for F differs from b^2 - 4ac by {}",
                &tab_f - &disc_f
            ),
        ));
    }
    let tab_g = tabulated_discr_g(&derived, data.lam(), data.s());
    if tab_g != disc_g {
        findings.push(Finding::new(
            "tabulated-discrG-drift",
            "tabulated discriminant formula for G differs from b^2 - 4ac; oracle kept",
        ));
    }

    Ok(DiscriminantReport {
        f_ok: h_disc_f as i64 <= bound_f,
        g_ok: h_disc_g as i64 <= bound_g,
        disc_f,
        disc_g,
        h_disc_f,
        h_disc_g,
        bound_f,
        bound_g,
        findings,
    })
}

/// The tabulated expansion of Discr(F), exactly as transcribed:
/// `th2^2 (lam^2 - 4) + th2 (8 th1 - 2 th1 lam^2 - 2 lam lam') + (lam th1 + lam'^2)^2`
/// with `lam' = d_omega(lam)`. The last term's inner square is transcribed
/// verbatim; the comparison against `b^2 - 4ac` decides whether it drifts.
fn tabulated_discr_f(d: &Derived, lam: &RatFunc, s: &crate::funfield::SSet) -> RatFunc {
    let lam_prime = d_omega(lam, s);
    let lam2 = lam * lam;
    let four = RatFunc::constant(rat_int(4));
    let t1 = &(&d.theta2 * &d.theta2) * &(&lam2 - &four);
    let mid = &(&d.theta1.scale(&rat_int(8)) - &(&d.theta1.scale(&rat_int(2)) * &lam2))
        - &(lam * &lam_prime).scale(&rat_int(2));
    let t2 = &d.theta2 * &mid;
    let inner = &(lam * &d.theta1) + &(&lam_prime * &lam_prime);
    &(&t1 + &t2) + &(&inner * &inner)
}

/// The tabulated expansion of Discr(G), with the one evidently missing
/// operator between the first two bracketed terms of the middle line read
/// as addition.
fn tabulated_discr_g(d: &Derived, lam: &RatFunc, s: &crate::funfield::SSet) -> RatFunc {
    let lp = d_omega(lam, s);
    let lam2 = lam * lam;
    let four = RatFunc::constant(rat_int(4));
    let eight = RatFunc::constant(rat_int(8));
    let th1 = &d.theta1;
    let th2 = &d.theta2;
    let th1_2 = th1 * th1;
    let th1_3 = &th1_2 * th1;
    let th1_4 = &th1_2 * &th1_2;
    let lp2 = &lp * &lp;
    let lp4 = &lp2 * &lp2;

    let line1 = &(th2 * th2)
        * &(&(&(&th1_2 * &lam2) * &(&four - &lam2))
            + &(&(&(th1 * lam) * &lp) * &(&eight - &lam2.scale(&rat_int(2))))
            + (&lp2 * &(&lam2 - &four)));
    let line2 = &th2.scale(&rat_int(2))
        * &(&(&(&th1_3 * &lam2) * &(&four - &lam2))
            + &(&(&(&th1_2 * lam) * &lp) * &(&lam2 - &eight))
            + &(&(th1 * &lp2) * &(&four + &lam2))
            - &(lam * &lp));
    let line3 = &(&(&th1_4 * &lam2) - &(&(&th1_2 * &lam2) * &lp2).scale(&rat_int(2))) + &lp4;
    &(&line1 + &line2) + &line3
}

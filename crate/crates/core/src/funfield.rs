//! The rational function field of the projective line: rational functions,
//! places with their valuations, divisors, heights, S-sets, the differential
//! form used for derivatives, and multiplicative-dependence detection.
//!
//! Places are closed points: a monic irreducible polynomial, or the point at
//! infinity. All counts (heights, Euler characteristics, ramification) are
//! weighted by place degree, which reproduces the geometric quantities over
//! an algebraically closed ground field for data defined over the rationals.

use crate::factor;
use crate::poly::Poly;
use crate::rat::{rat_sqrt, Rat};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("valuation and height are undefined for the zero function")]
    ZeroFunction,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("not irreducible over the rationals: {0}")]
    NotIrreducible(String),
    #[error("function is not an S-unit")]
    NotAUnit,
    #[error("projective height requires a nonempty tuple of nonzero functions")]
    BadTuple,
    #[error("designated places must be distinct finite members of S ({0})")]
    BadDesignated(String),
}

/// 2g - 2 + #S, the Euler characteristic of a genus-g curve punctured in a
/// set of geometric size `s_count`.
pub fn euler_char(genus: u64, s_count: u64) -> i64 {
    2 * genus as i64 - 2 + s_count as i64
}

// ---------------------------------------------------------------------------
// Rational functions.

/// A reduced quotient of polynomials; the denominator is monic and nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc, FieldError> {
        if den.is_zero() {
            return Err(FieldError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> RatFunc {
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading_coeff().recip();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    /// Constructor for callers that already know `gcd(num, den) = 1` and
    /// `den` monic; checked in debug builds only.
    pub(crate) fn from_reduced_unchecked(num: Poly, den: Poly) -> RatFunc {
        debug_assert!(den.is_monic());
        debug_assert!(num.is_zero() || num.gcd(&den).is_constant());
        if num.is_zero() {
            RatFunc {
                num,
                den: Poly::one(),
            }
        } else {
            RatFunc { num, den }
        }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> RatFunc {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn zero() -> RatFunc {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> RatFunc {
        RatFunc::from_poly(Poly::one())
    }

    /// The coordinate function `t`.
    pub fn x() -> RatFunc {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        let lc = self.num.leading_coeff().recip();
        RatFunc {
            num: self.den.scale(&lc),
            den: self.num.scale(&lc),
        }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = RatFunc::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            k >>= 1;
            if k > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc::reduced(self.num.scale(c), self.den.clone())
    }

    /// Derivative with respect to the coordinate `t`.
    pub fn derivative_t(&self) -> RatFunc {
        let n = &self.num.derivative() * &self.den - &self.num * &self.den.derivative();
        RatFunc::reduced(n, &self.den * &self.den)
    }

    /// Height: the degree as a map to the projective line,
    /// `max(deg num, deg den)`.
    pub fn height(&self) -> Result<u64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroFunction);
        }
        Ok(self.num.degree().max(self.den.degree()) as u64)
    }

    /// Order of vanishing at a place.
    pub fn valuation(&self, v: &Place) -> Result<i64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroFunction);
        }
        Ok(match v {
            Place::Infinity => self.den.degree() as i64 - self.num.degree() as i64,
            Place::Finite(p) => {
                self.num.multiplicity_of(p) as i64 - self.den.multiplicity_of(p) as i64
            }
        })
    }

    /// Full divisor of zeros and poles, computed by factorization.
    pub fn divisor(&self) -> Result<Divisor, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroFunction);
        }
        let mut map: BTreeMap<Place, i64> = BTreeMap::new();
        for (p, m) in factor::factor(&self.num).factors {
            map.insert(Place::finite_unchecked(p), m as i64);
        }
        for (p, m) in factor::factor(&self.den).factors {
            *map.entry(Place::finite_unchecked(p)).or_insert(0) -= m as i64;
        }
        let at_inf = self.den.degree() as i64 - self.num.degree() as i64;
        if at_inf != 0 {
            map.insert(Place::Infinity, at_inf);
        }
        map.retain(|_, c| *c != 0);
        Ok(Divisor(map))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let g = self.den.gcd(&rhs.den);
        let (da, db) = if g.is_constant() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.exact_div(&g), rhs.den.exact_div(&g))
        };
        let num = &self.num * &db + &rhs.num * &da;
        let den = &(&da * &g) * &db;
        RatFunc::reduced(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel before multiplying to keep degrees down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = if g1.is_constant() { self.num.clone() } else { self.num.exact_div(&g1) };
        let d2 = if g1.is_constant() { rhs.den.clone() } else { rhs.den.exact_div(&g1) };
        let n2 = if g2.is_constant() { rhs.num.clone() } else { rhs.num.exact_div(&g2) };
        let d1 = if g2.is_constant() { self.den.clone() } else { self.den.exact_div(&g2) };
        let den = &d1 * &d2;
        let lc = den.leading_coeff().recip();
        RatFunc {
            num: (&n1 * &n2).scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_rf_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $trait<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    };
}

forward_rf_binop!(Add, add);
forward_rf_binop!(Sub, sub);
forward_rf_binop!(Mul, mul);
forward_rf_binop!(Div, div);

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: Poly,
    den: Poly,
}

impl Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFuncRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RatFuncRepr::deserialize(d)?;
        RatFunc::new(repr.num, repr.den).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Places.

/// A closed point of the projective line.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Place {
    /// Cut out by a monic irreducible polynomial.
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn finite(min_poly: Poly) -> Result<Place, FieldError> {
        let p = match min_poly.deg() {
            None | Some(0) => return Err(FieldError::NotIrreducible(min_poly.to_string())),
            Some(1) => min_poly.monic(),
            Some(_) => {
                let m = min_poly.monic();
                if !factor::is_irreducible(&m) {
                    return Err(FieldError::NotIrreducible(m.to_string()));
                }
                m
            }
        };
        Ok(Place::Finite(p))
    }

    /// The place `t - a`.
    pub fn finite_root(a: &Rat) -> Place {
        Place::Finite(Poly::linear_root(a))
    }

    pub(crate) fn finite_unchecked(min_poly: Poly) -> Place {
        debug_assert!(min_poly.is_monic());
        Place::Finite(min_poly)
    }

    pub fn infinity() -> Place {
        Place::Infinity
    }

    pub fn degree(&self) -> u64 {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.degree() as u64,
        }
    }

    pub fn min_poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }
}

impl Ord for Place {
    /// Finite places sorted by (degree, coefficient sequence); infinity last.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Finite(a), Place::Finite(b)) => a.cmp_canonical(b),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "infinity"),
            Place::Finite(p) => write!(f, "({p})"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place[{self}]")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum PlaceRepr {
    Finite { min_poly: Poly },
    Infinity,
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Place::Finite(p) => PlaceRepr::Finite {
                min_poly: p.clone(),
            },
            Place::Infinity => PlaceRepr::Infinity,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match PlaceRepr::deserialize(d)? {
            PlaceRepr::Finite { min_poly } => {
                Place::finite(min_poly).map_err(serde::de::Error::custom)
            }
            PlaceRepr::Infinity => Ok(Place::Infinity),
        }
    }
}

// ---------------------------------------------------------------------------
// S-sets.

/// A finite set of places that always contains infinity, together with the
/// `designated` finite places whose product defines the differential form
/// `omega = dt / m(t)`.
///
/// By default the designated places are the first `min(2, #finite)` finite
/// members in canonical order; [`SSet::with_designated`] admits any other
/// choice of the same size, which changes `omega` by an S-unit multiple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SSet {
    places: BTreeSet<Place>,
    designated: Vec<Place>,
}

impl SSet {
    pub fn new<I: IntoIterator<Item = Place>>(places: I) -> SSet {
        let mut set: BTreeSet<Place> = places.into_iter().collect();
        set.insert(Place::Infinity);
        let designated = Self::canonical_designated(&set);
        SSet {
            places: set,
            designated,
        }
    }

    /// S-set over the places `t - a` for the given roots.
    pub fn from_roots(roots: &[i64]) -> SSet {
        SSet::new(
            roots
                .iter()
                .map(|&r| Place::finite_root(&crate::rat::rat_int(r))),
        )
    }

    fn canonical_designated(set: &BTreeSet<Place>) -> Vec<Place> {
        set.iter()
            .filter(|p| matches!(p, Place::Finite(_)))
            .take(2)
            .cloned()
            .collect()
    }

    pub fn with_designated<I: IntoIterator<Item = Place>>(
        places: I,
        designated: Vec<Place>,
    ) -> Result<SSet, FieldError> {
        let mut set: BTreeSet<Place> = places.into_iter().collect();
        set.insert(Place::Infinity);
        let expected = Self::canonical_designated(&set).len();
        if designated.len() != expected {
            return Err(FieldError::BadDesignated(format!(
                "expected {expected} designated places"
            )));
        }
        let mut seen = BTreeSet::new();
        for d in &designated {
            if matches!(d, Place::Infinity) || !set.contains(d) || !seen.insert(d.clone()) {
                return Err(FieldError::BadDesignated(d.to_string()));
            }
        }
        Ok(SSet {
            places: set,
            designated,
        })
    }

    pub fn places(&self) -> &BTreeSet<Place> {
        &self.places
    }

    pub fn contains(&self, p: &Place) -> bool {
        self.places.contains(p)
    }

    pub fn finite_places(&self) -> impl Iterator<Item = &Place> {
        self.places
            .iter()
            .filter(|p| matches!(p, Place::Finite(_)))
    }

    pub fn designated(&self) -> &[Place] {
        &self.designated
    }

    /// Number of geometric points in S (degree-weighted count).
    pub fn geometric_count(&self) -> u64 {
        self.places.iter().map(Place::degree).sum()
    }

    /// Euler characteristic of the complement, at genus 0.
    pub fn chi(&self) -> i64 {
        euler_char(0, self.geometric_count())
    }

    /// m(t): the product of the designated min-polys.
    pub fn omega_denominator(&self) -> Poly {
        let mut m = Poly::one();
        for d in &self.designated {
            m = &m * d.min_poly().expect("designated places are finite");
        }
        m
    }
}

impl Serialize for SSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.places.iter().collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let places = Vec::<Place>::deserialize(d)?;
        Ok(SSet::new(places))
    }
}

// ---------------------------------------------------------------------------
// Divisors.

/// A finite formal sum of places with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Divisor(BTreeMap<Place, i64>);

impl Divisor {
    pub fn coeff(&self, p: &Place) -> i64 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.0.iter().map(|(p, &c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree-weighted total; zero for divisors of nonzero functions.
    pub fn degree(&self) -> i64 {
        self.0
            .iter()
            .map(|(p, c)| *c * p.degree() as i64)
            .sum()
    }
}

// ---------------------------------------------------------------------------
// Operations.

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Membership {
    /// Zeros and poles contained in S.
    Unit,
    /// Poles contained in S.
    Integer,
}

/// Divides all factors of the finite S-places out of `p`.
fn strip_s_factors(p: &Poly, s: &SSet) -> Poly {
    let mut f = p.clone();
    for place in s.finite_places() {
        let mp = place.min_poly().unwrap();
        loop {
            let (q, r) = f.div_rem(mp);
            if r.is_zero() {
                f = q;
            } else {
                break;
            }
        }
    }
    f
}

/// S-unit / S-integer membership. The zero function is an S-integer but not
/// an S-unit.
pub fn membership(f: &RatFunc, s: &SSet, mode: Membership) -> bool {
    match mode {
        Membership::Unit => {
            !f.is_zero()
                && strip_s_factors(f.num(), s).is_constant()
                && strip_s_factors(f.den(), s).is_constant()
        }
        Membership::Integer => f.is_zero() || strip_s_factors(f.den(), s).is_constant(),
    }
}

pub fn is_s_unit(f: &RatFunc, s: &SSet) -> bool {
    membership(f, s, Membership::Unit)
}

pub fn is_s_integer(f: &RatFunc, s: &SSet) -> bool {
    membership(f, s, Membership::Integer)
}

/// The scaled derivative `a' = (da/dt) * m(t)`, so that `d(a) = a' * omega`
/// for `omega = dt/m(t)`.
pub fn d_omega(f: &RatFunc, s: &SSet) -> RatFunc {
    &f.derivative_t() * &RatFunc::from_poly(s.omega_denominator())
}

/// The logarithmic derivative `theta_u = u'/u` (with the prime taken against
/// omega). For S-units it is an S-integer with height at most chi_S.
pub fn theta(u: &RatFunc, s: &SSet) -> Result<RatFunc, FieldError> {
    if !is_s_unit(u, s) {
        return Err(FieldError::NotAUnit);
    }
    Ok(&d_omega(u, s) / u)
}

/// Writes `f = c * g^2` when every valuation of `f` is even; `g` is returned
/// with monic numerator and denominator alongside the constant `c`.
pub fn sqrt_up_to_constant(f: &RatFunc) -> Option<(RatFunc, Rat)> {
    if f.is_zero() {
        return None;
    }
    let (sf_num, sq_num) = f.num().square_parity_split();
    if !sf_num.is_constant() {
        return None;
    }
    let (sf_den, sq_den) = f.den().square_parity_split();
    if !sf_den.is_constant() {
        return None;
    }
    let g = RatFunc::from_reduced_unchecked(sq_num, sq_den);
    Some((g, f.num().leading_coeff()))
}

/// Exact square root in the field, when both the divisor and the leading
/// constant are squares.
pub fn sqrt_exact(f: &RatFunc) -> Option<RatFunc> {
    let (g, c) = sqrt_up_to_constant(f)?;
    let root = rat_sqrt(&c)?;
    Some(g.scale(&root))
}

/// Divisor of an S-unit restricted to S (which is all of it), as a vector
/// indexed by the finite places in canonical order, with infinity last.
fn unit_divisor_vector(u: &RatFunc, s: &SSet) -> Result<Vec<i64>, FieldError> {
    if !is_s_unit(u, s) {
        return Err(FieldError::NotAUnit);
    }
    let mut v: Vec<i64> = Vec::with_capacity(s.places().len());
    for p in s.places() {
        v.push(u.valuation(p)?);
    }
    Ok(v)
}

/// Finds the primitive relation `a^r * b^s = mu` with `mu` constant, when one
/// exists. Conventions: a constant `b` yields `(0, 1, b)`, a constant `a`
/// yields `(1, 0, a)`; otherwise `gcd(|r|, |s|) = 1` and `r > 0`.
/// With `max_exp` set, relations with `max(|r|, |s|)` beyond it are dropped.
pub fn mult_dependence(
    a: &RatFunc,
    b: &RatFunc,
    s: &SSet,
    max_exp: Option<u32>,
) -> Result<Option<(i64, i64, Rat)>, FieldError> {
    let da = unit_divisor_vector(a, s)?;
    let db = unit_divisor_vector(b, s)?;
    let result = if db.iter().all(|&c| c == 0) {
        Some((0i64, 1i64))
    } else if da.iter().all(|&c| c == 0) {
        Some((1, 0))
    } else {
        let i = da.iter().position(|&c| c != 0).unwrap();
        let parallel = da
            .iter()
            .zip(&db)
            .all(|(&x, &y)| y * da[i] == x * db[i]);
        if parallel {
            let (mut r, mut s_exp) = (db[i], -da[i]);
            let g = gcd_i64(r.unsigned_abs(), s_exp.unsigned_abs()) as i64;
            r /= g;
            s_exp /= g;
            if r < 0 || (r == 0 && s_exp < 0) {
                r = -r;
                s_exp = -s_exp;
            }
            Some((r, s_exp))
        } else {
            None
        }
    };
    let Some((r, s_exp)) = result else {
        return Ok(None);
    };
    if let Some(cap) = max_exp {
        if r.unsigned_abs().max(s_exp.unsigned_abs()) > cap as u64 {
            return Ok(None);
        }
    }
    let mu = &a.pow(r) * &b.pow(s_exp);
    let mu = mu
        .as_constant()
        .expect("trivial relation on divisor vectors must give a constant");
    Ok(Some((r, s_exp, mu)))
}

fn gcd_i64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd_i64(b, a % b)
    }
}

/// Projective height of a nonempty tuple of nonzero functions: the sum over
/// all places of `-min_i v(theta_i)`, degree-weighted. Invariant under
/// scaling the whole tuple.
pub fn proj_height(thetas: &[RatFunc]) -> Result<u64, FieldError> {
    if thetas.is_empty() || thetas.iter().any(RatFunc::is_zero) {
        return Err(FieldError::BadTuple);
    }
    // Over a common denominator d the finite part is deg d - deg gcd(n_i)
    // and infinity contributes max_i deg n_i - deg d.
    let mut d = Poly::one();
    for th in thetas {
        d = d.lcm(th.den());
    }
    let nums: Vec<Poly> = thetas
        .iter()
        .map(|th| th.num() * &d.exact_div(th.den()))
        .collect();
    let mut g = Poly::zero();
    for n in &nums {
        g = g.gcd(n);
    }
    let max_deg = nums.iter().map(Poly::degree).max().unwrap();
    let h = max_deg as i64 - g.degree() as i64;
    debug_assert!(h >= 0);
    Ok(h as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64(num), Poly::from_i64(den)).unwrap()
    }

    fn place(root: i64) -> Place {
        Place::finite_root(&rat_int(root))
    }

    #[test]
    fn valuation_examples() {
        // t^2/(t-1)
        let f = rf(&[0, 0, 1], &[-1, 1]);
        assert_eq!(f.valuation(&place(0)).unwrap(), 2);
        assert_eq!(f.valuation(&Place::Infinity).unwrap(), -1);
        assert_eq!(f.valuation(&place(1)).unwrap(), -1);
        assert_eq!(
            RatFunc::zero().valuation(&place(0)),
            Err(FieldError::ZeroFunction)
        );
    }

    #[test]
    fn height_examples() {
        assert_eq!(RatFunc::x().height().unwrap(), 1);
        assert_eq!(rf(&[1, 0, 1], &[0, 1]).height().unwrap(), 2);
        assert_eq!(RatFunc::constant(rat(7, 3)).height().unwrap(), 0);
        assert_eq!(RatFunc::zero().height(), Err(FieldError::ZeroFunction));
    }

    #[test]
    fn height_matches_divisor_sum() {
        // Cross-check the closed form against positive valuations of the
        // full divisor, here for (t^2+1)^2 (t-3) / t^4.
        let g = RatFunc::new(
            &Poly::from_i64(&[1, 0, 1]).pow(2) * &Poly::from_i64(&[-3, 1]),
            Poly::from_i64(&[0, 0, 0, 0, 1]),
        )
        .unwrap();
        let div = g.divisor().unwrap();
        let positive: i64 = div
            .support()
            .filter(|(_, c)| *c > 0)
            .map(|(p, c)| c * p.degree() as i64)
            .sum();
        assert_eq!(positive as u64, g.height().unwrap());
        assert_eq!(div.degree(), 0);
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(euler_char(0, 3), 1);
        assert_eq!(euler_char(0, 0), -2);
        assert_eq!(euler_char(1, 1), 1);
    }

    #[test]
    fn d_omega_examples() {
        // S = {0, 1, inf}, designated (t, t-1), m = t(t-1).
        let s = SSet::from_roots(&[0, 1]);
        assert_eq!(s.omega_denominator(), Poly::from_i64(&[0, -1, 1]));
        let f = rf(&[0, 0, 1], &[1]);
        assert_eq!(d_omega(&f, &s), rf(&[0, 0, -2, 2], &[1]));
        assert_eq!(d_omega(&RatFunc::constant(rat(5, 2)), &s), RatFunc::zero());
        // S = {0, inf}, m = t: d(1/t) -> -1/t.
        let s2 = SSet::from_roots(&[0]);
        assert_eq!(d_omega(&rf(&[1], &[0, 1]), &s2), rf(&[-1], &[0, 1]));
    }

    #[test]
    fn theta_examples() {
        let s2 = SSet::from_roots(&[0]);
        let th = theta(&RatFunc::x(), &s2).unwrap();
        assert_eq!(th, RatFunc::one());
        assert_eq!(th.height().unwrap() as i64 <= s2.chi(), true);

        // u = t^3/(t-1) over S = {0, 1, inf}: theta = 2t - 3, H = 1 <= chi = 1.
        let s = SSet::from_roots(&[0, 1]);
        let u = rf(&[0, 0, 0, 1], &[-1, 1]);
        let th = theta(&u, &s).unwrap();
        assert_eq!(th, rf(&[-3, 2], &[1]));
        assert_eq!(th.height().unwrap(), 1);
        assert_eq!(s.chi(), 1);

        assert_eq!(theta(&RatFunc::constant(rat_int(4)), &s).unwrap(), RatFunc::zero());
        assert_eq!(theta(&rf(&[2, 1], &[1]), &s), Err(FieldError::NotAUnit));
    }

    #[test]
    fn theta_is_additive_and_simple_poled() {
        let s = SSet::from_roots(&[0, 1, 5]);
        let u = rf(&[0, 0, 1], &[-1, 1]);
        let w = rf(&[-5, 1], &[0, 1]);
        let lhs = theta(&(&u * &w), &s).unwrap();
        let rhs = &theta(&u, &s).unwrap() + &theta(&w, &s).unwrap();
        assert_eq!(lhs, rhs);
        // Poles of theta lie in S and are simple.
        for (p, c) in lhs.divisor().unwrap().support() {
            if c < 0 {
                assert!(s.contains(p));
                assert_eq!(c, -1);
            }
        }
    }

    #[test]
    fn membership_examples() {
        let s = SSet::from_roots(&[0, 1]);
        assert!(is_s_unit(&rf(&[0, 0, 1], &[-1, 1]), &s));
        let s2 = SSet::from_roots(&[0]);
        assert!(!is_s_unit(&rf(&[2, 1], &[1]), &s2));
        assert!(!is_s_integer(&rf(&[1], &[-5, 1]), &s2));
        assert!(is_s_integer(&RatFunc::zero(), &s2));
        assert!(!is_s_unit(&RatFunc::zero(), &s2));
    }

    #[test]
    fn sqrt_examples() {
        let (g, c) = sqrt_up_to_constant(&rf(&[0, 0, 1], &[1])).unwrap();
        assert_eq!(g, RatFunc::x());
        assert_eq!(c, rat_int(1));

        // 2t^2/(t-1)^2 -> (t/(t-1), 2)
        let f = RatFunc::new(Poly::from_i64(&[0, 0, 2]), Poly::from_i64(&[-1, 1]).pow(2)).unwrap();
        let (g, c) = sqrt_up_to_constant(&f).unwrap();
        assert_eq!(g, rf(&[0, 1], &[-1, 1]));
        assert_eq!(c, rat_int(2));
        assert_eq!(&g * &g * RatFunc::constant(c), f);

        assert!(sqrt_up_to_constant(&rf(&[0, 0, 0, 1], &[1])).is_none());
        assert!(sqrt_exact(&rf(&[0, 0, 2], &[1])).is_none());
        assert_eq!(sqrt_exact(&rf(&[0, 0, 4], &[1])).unwrap(), rf(&[0, 2], &[1]));
    }

    #[test]
    fn mult_dependence_examples() {
        let s2 = SSet::from_roots(&[0]);
        // (2t, t^2): (2t)^2 / t^2 = 4.
        let got = mult_dependence(&rf(&[0, 2], &[1]), &rf(&[0, 0, 1], &[1]), &s2, None).unwrap();
        assert_eq!(got, Some((2, -1, rat_int(4))));

        // (t, t-1) over {0,1,inf}: independent.
        let s = SSet::from_roots(&[0, 1]);
        let got = mult_dependence(&RatFunc::x(), &rf(&[-1, 1], &[1]), &s, None).unwrap();
        assert_eq!(got, None);

        // (t, 5): degenerate convention.
        let got = mult_dependence(&RatFunc::x(), &RatFunc::constant(rat_int(5)), &s2, None).unwrap();
        assert_eq!(got, Some((0, 1, rat_int(5))));

        assert_eq!(
            mult_dependence(&rf(&[1, 1], &[1]), &RatFunc::x(), &s2, None),
            Err(FieldError::NotAUnit)
        );
    }

    #[test]
    fn mult_dependence_respects_exponent_cap() {
        let s2 = SSet::from_roots(&[0]);
        let a = RatFunc::x().pow(7);
        let b = RatFunc::x().pow(-6);
        let rel = mult_dependence(&a, &b, &s2, None).unwrap();
        assert_eq!(rel, Some((6, 7, rat_int(1))));
        assert_eq!(mult_dependence(&a, &b, &s2, Some(5)).unwrap(), None);
    }

    #[test]
    fn proj_height_examples() {
        assert_eq!(proj_height(&[RatFunc::x(), RatFunc::one()]).unwrap(), 1);
        assert_eq!(
            proj_height(&[RatFunc::constant(rat(3, 2)), RatFunc::constant(rat_int(-7))]).unwrap(),
            0
        );
        assert_eq!(
            proj_height(&[RatFunc::x().pow(2), RatFunc::x(), RatFunc::one()]).unwrap(),
            2
        );
        assert!(proj_height(&[]).is_err());
        assert!(proj_height(&[RatFunc::zero()]).is_err());
    }

    #[test]
    fn designated_override() {
        let places = vec![place(0), place(2), place(-2)];
        let s = SSet::new(places.clone());
        // Canonical order: t-2 < t < t+2 by coefficient lexicography.
        assert_eq!(s.designated(), &[place(2), place(0)]);
        let alt = SSet::with_designated(places.clone(), vec![place(2), place(-2)]).unwrap();
        assert_eq!(alt.omega_denominator(), Poly::from_i64(&[-4, 0, 1]));
        assert!(SSet::with_designated(places.clone(), vec![place(0)]).is_err());
        assert!(SSet::with_designated(places, vec![place(0), place(7)]).is_err());
    }

    #[test]
    fn serde_roundtrip() {
        let s = SSet::from_roots(&[0, 1]);
        let json = serde_json::to_string(&s).unwrap();
        let back: SSet = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);

        let f = rf(&[1, 0, 2], &[0, 0, 1]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"num":["1","0","2"],"den":["0","0","1"]}"#);
        let back: RatFunc = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);

        let p = Place::finite(Poly::from_i64(&[1, 0, 1])).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"kind":"finite","min_poly":["1","0","1"]}"#);
        let back: Place = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
        assert!(serde_json::from_str::<Place>(r#"{"kind":"finite","min_poly":["-4","0","1"]}"#).is_err());
    }
}

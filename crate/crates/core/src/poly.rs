//! Univariate polynomials over the rationals, written in the variable `t`.
//!
//! Coefficients are stored in ascending degree with no trailing zeros, so the
//! empty vector is the zero polynomial and `deg = len - 1` otherwise.

use crate::rat::{format_rat, parse_rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The variable `t`.
    pub fn x() -> Self {
        Poly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `t - a`, the monic linear polynomial with root `a`.
    pub fn linear_root(a: &Rat) -> Self {
        Poly::from_coeffs(vec![-a.clone(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| crate::rat::rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a known-nonzero polynomial.
    pub fn degree(&self) -> usize {
        self.deg().expect("degree of zero polynomial")
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, One::is_one)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The monic multiple of `self`; panics on zero.
    pub fn monic(&self) -> Poly {
        let lc = self.leading_coeff();
        assert!(!lc.is_zero(), "monic of zero polynomial");
        self.scale(&lc.recip())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree();
        let dlc = d.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &dlc;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let v = &q * dc;
                rem[i - dd + j] -= v;
            }
            quot[i - dd] = q;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            // Renormalizing keeps coefficient growth in check.
            b = if r.is_zero() { r } else { r.monic() };
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Extended gcd: returns monic `g` and `(u, v)` with `u*self + v*other = g`.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let u = &u0 - &(&q * &u1);
            let v = &v0 - &(&q * &v1);
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
            v0 = std::mem::replace(&mut v1, v);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let lc = r0.leading_coeff().recip();
        (r0.scale(&lc), u0.scale(&lc), v0.scale(&lc))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * other).exact_div(&g).monic()
    }

    /// Multiplicity of the factor `d` (nonconstant) in `self` (nonzero).
    pub fn multiplicity_of(&self, d: &Poly) -> u32 {
        assert!(!self.is_zero() && !d.is_constant());
        let mut f = self.clone();
        let mut k = 0;
        loop {
            let (q, r) = f.div_rem(d);
            if !r.is_zero() {
                return k;
            }
            f = q;
            k += 1;
        }
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's squarefree decomposition of a nonzero polynomial:
    /// `self = lc * prod a_i^i` with the `a_i` monic, squarefree and pairwise
    /// coprime. Only nonconstant parts are returned.
    pub fn squarefree_decomposition(&self) -> (Rat, Vec<(Poly, u32)>) {
        assert!(!self.is_zero());
        let lc = self.leading_coeff();
        let f = self.monic();
        if f.is_constant() {
            return (lc, vec![]);
        }
        let df = f.derivative();
        let g = f.gcd(&df);
        if g.is_constant() {
            return (lc, vec![(f, 1)]);
        }
        let mut parts = vec![];
        let mut c = f.exact_div(&g);
        let mut d = &df.exact_div(&g) - &c.derivative();
        let mut i = 1;
        while !c.is_constant() {
            let a = c.gcd(&d);
            if !a.is_constant() {
                parts.push((a.clone(), i));
            }
            c = c.exact_div(&a);
            d = &d.exact_div(&a) - &c.derivative();
            i += 1;
        }
        (lc, parts)
    }

    /// Writes `self = lc * sf * sq^2` with `sf` monic squarefree (the odd-
    /// multiplicity part) and `sq` monic. `(sf, sq)` are returned.
    pub fn square_parity_split(&self) -> (Poly, Poly) {
        let (_, parts) = self.squarefree_decomposition();
        let mut sf = Poly::one();
        let mut sq = Poly::one();
        for (a, m) in parts {
            if m % 2 == 1 {
                sf = &sf * &a;
            }
            sq = &sq * &a.pow(m / 2);
        }
        (sf, sq)
    }

    /// Clears denominators and content: `self = scale * p` with `p` a
    /// primitive integer polynomial with positive leading coefficient.
    pub fn to_integer_primitive(&self) -> (Rat, Vec<BigInt>) {
        if self.is_zero() {
            return (Rat::zero(), vec![]);
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim: Vec<BigInt> = ints.iter().map(|v| v / &content).collect();
        (Rat::new(content, den), prim)
    }

    pub fn from_integer_coeffs(coeffs: &[BigInt]) -> Poly {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Canonical ordering: by degree, then lexicographic on the ascending
    /// coefficient sequence.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rat).collect()
    }

    pub fn parse_coeff_list(items: &[String]) -> Result<Poly, String> {
        let coeffs = items
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(deserializer)?;
        Poly::parse_coeff_list(&items).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", format_rat(&abs))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        Poly::from_coeffs(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

//! Irreducible factorization in Q[t].
//!
//! Pipeline: Yun squarefree decomposition, reduction to a primitive integer
//! polynomial, Cantor-Zassenhaus factorization modulo a good odd prime,
//! quadratic Hensel lifting past the Mignotte bound, and subset recombination.
//! Degrees stay small here, so clarity wins over asymptotics.

use crate::poly::Poly;
use crate::rat::Rat;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `value = unit * prod factors[i].0 ^ factors[i].1` with every factor monic
/// irreducible, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn reassemble(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

/// Factors a nonzero polynomial into monic irreducibles over Q.
pub fn factor(f: &Poly) -> Factorization {
    assert!(!f.is_zero(), "factorization of zero polynomial");
    let unit = f.leading_coeff();
    let (_, squarefree_parts) = f.squarefree_decomposition();
    let mut factors: Vec<(Poly, u32)> = vec![];
    for (part, mult) in squarefree_parts {
        for irr in factor_squarefree(&part) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    Factorization { unit, factors }
}

pub fn is_irreducible(f: &Poly) -> bool {
    match f.deg() {
        None | Some(0) => false,
        Some(1) => true,
        Some(_) => {
            let fact = factor(f);
            fact.factors.len() == 1 && fact.factors[0].1 == 1
        }
    }
}

/// Factors a monic squarefree polynomial of degree >= 1.
fn factor_squarefree(f: &Poly) -> Vec<Poly> {
    if f.degree() == 1 {
        return vec![f.clone()];
    }
    let (_, zp) = f.to_integer_primitive();
    zassenhaus(&zp).into_iter().map(|g| Poly::from_integer_coeffs(&g).monic()).collect()
}

fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let p = choose_prime(f);
    let modular = factor_mod_p(f, &p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // Lift until the modulus clears twice the coefficient bound for any
    // factor of f scaled by the leading coefficient.
    let bound = factor_coeff_bound(f) * f.last().unwrap().abs() * BigInt::from(2);
    let mut exp = 1u32;
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus = &modulus * &p;
        exp += 1;
    }
    let lifted = hensel_lift_tree(f, &modular, &p, exp);
    recombine(f.to_vec(), lifted, &modulus)
}

/// Mignotte-style bound on the coefficients of any monic-scaled factor.
fn factor_coeff_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let max: BigInt = f.iter().map(|c| c.abs()).max().unwrap();
    let sqrt_n1 = BigInt::from(n as u64 + 1).sqrt() + 1;
    (BigInt::one() << n) * sqrt_n1 * max
}

fn choose_prime(f: &[BigInt]) -> BigInt {
    let lc = f.last().unwrap();
    let mut p = 3u64;
    loop {
        if is_small_prime(p) {
            let pb = BigInt::from(p);
            if !(lc % &pb).is_zero() {
                let fp = mp_reduce(f, &pb);
                let dfp = mp_derivative(&fp, &pb);
                if fp.len() == f.len() && mp_gcd(&fp, &dfp, &pb).len() == 1 {
                    return pb;
                }
            }
        }
        p += 2;
        assert!(p < 100_000, "no good prime found");
    }
}

fn is_small_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Arithmetic on Vec<BigInt> coefficient lists modulo m (ascending degree).

fn mp_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map_or(false, Zero::is_zero) {
        v.pop();
    }
    v
}

fn mp_reduce(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    mp_trim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn mp_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default();
        out[i] = x.mod_floor(m);
    }
    mp_trim(out)
}

fn mp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default();
        out[i] = x.mod_floor(m);
    }
    mp_trim(out)
}

fn mp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    mp_trim(out.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn mp_scale(a: &[BigInt], c: &BigInt, m: &BigInt) -> Vec<BigInt> {
    mp_trim(a.iter().map(|x| (x * c).mod_floor(m)).collect())
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "non-invertible element mod m");
    e.x.mod_floor(m)
}

/// Division with remainder; the divisor's leading coefficient must be
/// invertible mod m (in practice it is monic or m is prime).
fn mp_divrem(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(!d.is_empty());
    let dd = d.len() - 1;
    let inv = modinv(d.last().unwrap(), m);
    let mut rem: Vec<BigInt> = a.to_vec();
    if rem.len() < d.len() {
        return (vec![], mp_trim(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let q = (&rem[i] * &inv).mod_floor(m);
        if q.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            let v = (&rem[i - dd + j] - &q * dc).mod_floor(m);
            rem[i - dd + j] = v;
        }
        quot[i - dd] = q;
    }
    (mp_trim(quot), mp_trim(rem))
}

fn mp_monic(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() {
        return vec![];
    }
    let inv = modinv(a.last().unwrap(), m);
    mp_scale(a, &inv, m)
}

fn mp_gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let (_, r) = mp_divrem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    if a.is_empty() {
        a
    } else {
        mp_monic(&a, p)
    }
}

fn mp_xgcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![BigInt::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![BigInt::one()]);
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = modinv(r0.last().unwrap(), p);
    (
        mp_scale(&r0, &inv, p),
        mp_scale(&s0, &inv, p),
        mp_scale(&t0, &inv, p),
    )
}

fn mp_derivative(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.len() <= 1 {
        return vec![];
    }
    mp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (c * BigInt::from(i)).mod_floor(m))
            .collect(),
    )
}

fn mp_powmod(base: &[BigInt], exp: &BigUint, f: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut result = vec![BigInt::one()];
    let mut acc = mp_divrem(base, f, p).1;
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            result = mp_divrem(&mp_mul(&result, &acc, p), f, p).1;
        }
        if i + 1 < bits {
            acc = mp_divrem(&mp_mul(&acc, &acc, p), f, p).1;
        }
    }
    result
}

// ---------------------------------------------------------------------------
// Factorization modulo an odd prime.

/// Factors a squarefree polynomial mod p into monic irreducibles.
fn factor_mod_p(f: &[BigInt], p: &BigInt) -> Vec<Vec<BigInt>> {
    let fp = mp_monic(&mp_reduce(f, p), p);
    let mut out = vec![];
    for (g, d) in distinct_degree(&fp, p) {
        equal_degree(&g, d, p, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn distinct_degree(f: &[BigInt], p: &BigInt) -> Vec<(Vec<BigInt>, usize)> {
    let mut f = f.to_vec();
    let mut out = vec![];
    let x = vec![BigInt::zero(), BigInt::one()];
    let mut h = x.clone();
    let pu: BigUint = p.to_biguint().unwrap();
    let mut d = 0usize;
    while f.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = mp_powmod(&h, &pu, &f, p);
        let g = mp_gcd(&mp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = mp_divrem(&f, &g, p).0;
            h = mp_divrem(&h, &f, p).1;
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of degree-d irreducibles.
fn equal_degree(g: &[BigInt], d: usize, p: &BigInt, out: &mut Vec<Vec<BigInt>>) {
    let deg = g.len() - 1;
    if deg == d {
        out.push(g.to_vec());
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x756e_6974 ^ deg as u64);
    let e: BigUint = (p.to_biguint().unwrap().pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a: Vec<BigInt> = (0..deg)
            .map(|_| BigInt::from(rng.random_range(0..u64::MAX)).mod_floor(p))
            .collect();
        let a = mp_trim(a);
        if a.len() <= 1 {
            continue;
        }
        let b = mp_powmod(&a, &e, g, p);
        let w = mp_gcd(&mp_sub(&b, &[BigInt::one()], p), g, p);
        if w.len() > 1 && w.len() < g.len() {
            equal_degree(&w, d, p, out);
            equal_degree(&mp_divrem(g, &w, p).0, d, p, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting.

/// Lifts the factorization `f = lc(f) * prod(factors)  (mod p)` to the same
/// shape mod `p^exp`, returning monic factors.
fn hensel_lift_tree(f: &[BigInt], factors: &[Vec<BigInt>], p: &BigInt, exp: u32) -> Vec<Vec<BigInt>> {
    let target = p.pow(exp);
    if factors.len() == 1 {
        return vec![mp_monic(&mp_reduce(f, &target), &target)];
    }
    let k = factors.len() / 2;
    let mut g = vec![f.last().unwrap().mod_floor(p)];
    for fac in &factors[..k] {
        g = mp_mul(&g, fac, p);
    }
    let mut h = vec![BigInt::one()];
    for fac in &factors[k..] {
        h = mp_mul(&h, fac, p);
    }
    let (one, s, t) = mp_xgcd(&g, &h, p);
    assert!(one.len() == 1, "modular factors not coprime");
    let (g, h) = hensel_step_chain(f, g, h, s, t, p, exp);
    let mut left = hensel_lift_tree(&g, &factors[..k], p, exp);
    let right = hensel_lift_tree(&h, &factors[k..], p, exp);
    left.extend(right);
    left
}

/// Quadratic Hensel steps taking `f = g*h (mod p)` up to `mod p^exp`.
fn hensel_step_chain(
    f: &[BigInt],
    mut g: Vec<BigInt>,
    mut h: Vec<BigInt>,
    mut s: Vec<BigInt>,
    mut t: Vec<BigInt>,
    p: &BigInt,
    exp: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let target = p.pow(exp);
    let mut cur = p.clone();
    while cur < target {
        let next = (&cur * &cur).min(target.clone());
        let fm = mp_reduce(f, &next);
        // g' = g + t*e + q*g,  h' = h + r  where s*e = q*h + r.
        let e = mp_sub(&fm, &mp_mul(&g, &h, &next), &next);
        let (q, r) = mp_divrem(&mp_mul(&s, &e, &next), &h, &next);
        g = mp_add(&g, &mp_add(&mp_mul(&t, &e, &next), &mp_mul(&q, &g, &next), &next), &next);
        h = mp_add(&h, &r, &next);
        // Refresh the Bezout pair mod the new modulus.
        let b = mp_sub(
            &mp_add(&mp_mul(&s, &g, &next), &mp_mul(&t, &h, &next), &next),
            &[BigInt::one()],
            &next,
        );
        let (c, d) = mp_divrem(&mp_mul(&s, &b, &next), &h, &next);
        s = mp_sub(&s, &d, &next);
        t = mp_sub(
            &t,
            &mp_add(&mp_mul(&t, &b, &next), &mp_mul(&c, &g, &next), &next),
            &next,
        );
        cur = next;
    }
    (g, h)
}

// ---------------------------------------------------------------------------
// Recombination.

fn centered(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn integer_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in v {
        content = content.gcd(c);
    }
    if v.last().unwrap().is_negative() {
        content = -content;
    }
    v.iter().map(|c| c / &content).collect()
}

fn recombine(mut f: Vec<BigInt>, mut modular: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = vec![];
    let mut s = 1usize;
    while 2 * s <= modular.len() {
        let mut found = None;
        for combo in Combinations::new(modular.len(), s) {
            let mut cand = vec![f.last().unwrap().mod_floor(modulus)];
            for &i in &combo {
                cand = mp_mul(&cand, &modular[i], modulus);
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| centered(c, modulus)).collect();
            let cand = integer_primitive(&mp_trim(cand));
            let fq = Poly::from_integer_coeffs(&f);
            let cq = Poly::from_integer_coeffs(&cand);
            if cq.divides(&fq) {
                found = Some((combo, cand));
                break;
            }
        }
        match found {
            Some((combo, cand)) => {
                let quotient = Poly::from_integer_coeffs(&f).exact_div(&Poly::from_integer_coeffs(&cand));
                let (_, fz) = quotient.to_integer_primitive();
                f = fz;
                for &i in combo.iter().rev() {
                    modular.remove(i);
                }
                out.push(cand);
                if modular.is_empty() {
                    return out;
                }
            }
            None => s += 1,
        }
    }
    out.push(integer_primitive(&f));
    out
}

/// Lexicographic k-subsets of 0..n.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] + (k - i) < self.n {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64(coeffs)
    }

    #[test]
    fn factors_products_of_linears() {
        // 6 t(t-1)(t+2)^2
        let f = (&(&p(&[0, 1]) * &p(&[-1, 1])) * &p(&[2, 1]).pow(2)).scale(&rat(6, 1));
        let fact = factor(&f);
        assert_eq!(fact.unit, rat(6, 1));
        assert_eq!(
            fact.factors,
            vec![(p(&[-1, 1]), 1), (p(&[0, 1]), 1), (p(&[2, 1]), 2)]
        );
        assert_eq!(fact.reassemble(), f);
    }

    #[test]
    fn factors_quadratics_and_quartics() {
        // (t^2+1)(t^2-2): both irreducible over Q.
        let f = &p(&[1, 0, 1]) * &p(&[-2, 0, 1]);
        let fact = factor(&f);
        assert_eq!(fact.factors, vec![(p(&[-2, 0, 1]), 1), (p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn detects_irreducible_cyclotomic() {
        // t^4 + t^3 + t^2 + t + 1
        let f = p(&[1, 1, 1, 1, 1]);
        assert!(is_irreducible(&f));
        // t^4 + 4 = (t^2-2t+2)(t^2+2t+2)
        let g = p(&[4, 0, 0, 0, 1]);
        assert!(!is_irreducible(&g));
        let fact = factor(&g);
        assert_eq!(fact.factors, vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]);
    }

    #[test]
    fn rational_leading_unit() {
        let f = p(&[1, 0, 1]).scale(&rat(-3, 4));
        let fact = factor(&f);
        assert_eq!(fact.unit, rat(-3, 4));
        assert_eq!(fact.factors, vec![(p(&[1, 0, 1]), 1)]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn prop_factor_roundtrip(roots in prop::collection::vec(-4i64..=4, 1..4),
                                 extra in prop::sample::select(vec![vec![1i64,0,1], vec![2,1,1], vec![-2,0,1]]),
                                 unit in 1i64..=5) {
            let mut f = Poly::from_i64(&[unit]);
            for r in roots {
                f = &f * &p(&[-r, 1]);
            }
            f = &f * &Poly::from_i64(&extra);
            let fact = factor(&f);
            prop_assert_eq!(fact.reassemble(), f.clone());
            for (g, _) in &fact.factors {
                prop_assert!(is_irreducible(g));
                prop_assert!(g.is_monic());
            }
        }
    }
}

//! Seeded random generators shared by the verification suites.

use crate::funfield::{Place, RatFunc, SSet};
use crate::poly::Poly;
use crate::rat::{rat_int, Rat};
use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator; the same seed always replays the same stream.
pub struct Gen {
    rng: ChaCha8Rng,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Nonzero rational with numerator and denominator bounded by `bound`.
    pub fn nonzero_rat(&mut self, bound: i64) -> Rat {
        loop {
            let n = self.range(-bound, bound);
            if n == 0 {
                continue;
            }
            let d = self.range(1, bound);
            return Rat::new(BigInt::from(n), BigInt::from(d));
        }
    }

    /// S-set with the requested number of finite places: distinct small
    /// linear roots, plus occasionally one irreducible quadratic (when at
    /// least two linear places are already present, keeping the designated
    /// product of degree two).
    pub fn sset(&mut self, finite_count: usize) -> SSet {
        let mut roots = vec![];
        while roots.len() < finite_count {
            let r = self.range(-6, 6);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        let mut places: Vec<Place> = roots
            .iter()
            .map(|&r| Place::finite_root(&rat_int(r)))
            .collect();
        if finite_count >= 3 && self.range(0, 3) == 0 {
            // Replace the last linear place by an irreducible quadratic
            // t^2 + c with c > 0.
            let c = self.range(1, 6);
            places.pop();
            places.push(Place::finite(Poly::from_i64(&[c, 0, 1])).expect("t^2 + c is irreducible"));
        }
        SSet::new(places)
    }

    /// Random S-unit `c * prod p^e` with exponents in `[-max_exp, max_exp]`.
    pub fn unit(&mut self, s: &SSet, max_exp: i64, const_bound: i64) -> RatFunc {
        let c = self.nonzero_rat(const_bound);
        let mut u = RatFunc::constant(c);
        for p in s.finite_places() {
            let e = self.range(-max_exp, max_exp);
            if e != 0 {
                u = &u * &RatFunc::from_poly(p.min_poly().unwrap().clone()).pow(e);
            }
        }
        u
    }

    pub fn nonconstant_unit(&mut self, s: &SSet, max_exp: i64, const_bound: i64) -> RatFunc {
        loop {
            let u = self.unit(s, max_exp, const_bound);
            if !u.is_constant() {
                return u;
            }
        }
    }

    /// Random monic squarefree polynomial of the exact degree.
    pub fn squarefree_poly(&mut self, degree: usize) -> Poly {
        loop {
            let mut coeffs: Vec<Rat> = (0..degree).map(|_| rat_int(self.range(-5, 5))).collect();
            coeffs.push(rat_int(1));
            let p = Poly::from_coeffs(coeffs);
            if p.is_squarefree() {
                return p;
            }
        }
    }

    /// Equation data with an S-set of 3-4 places, a non-constant lambda and
    /// two units, all with small exponents and constants.
    pub fn equation_data(&mut self, max_exp: i64, const_bound: i64) -> crate::vojta::EquationData {
        loop {
            let finite = self.usize_below(2) + 2;
            let s = self.sset(finite);
            let lam = self.nonconstant_unit(&s, 2, const_bound);
            let u1 = self.unit(&s, max_exp, const_bound);
            let u2 = self.unit(&s, max_exp, const_bound);
            if let Ok(data) = crate::vojta::EquationData::new(s, lam, u1, u2) {
                return data;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funfield::is_s_unit;

    #[test]
    fn generator_is_deterministic() {
        let mut a = Gen::new(42);
        let mut b = Gen::new(42);
        for _ in 0..20 {
            let s1 = a.sset(3);
            let s2 = b.sset(3);
            assert_eq!(s1, s2);
            assert_eq!(a.unit(&s1, 3, 5), b.unit(&s2, 3, 5));
        }
    }

    #[test]
    fn generated_units_are_units() {
        let mut g = Gen::new(7);
        for _ in 0..50 {
            let finite = g.usize_below(3) + 1;
            let s = g.sset(finite);
            let u = g.unit(&s, 4, 5);
            assert!(is_s_unit(&u, &s));
        }
    }
}

//! Exhaustive grid search for unit-equation solutions.
//!
//! Candidates `u = c * prod p^e` run over the constant pool and the exponent
//! box, in lexicographic order of `(c1, e1, c2, e2)`. Workers partition the
//! grid by `u1`-row; the output order is independent of the worker count.
//!
//! The row scan works on unreduced numerators: for `rhs = w + u2` with
//! `w = u1^2 + lam*u1 + 1` it checks the parity of every valuation (infinity
//! first, then the finite places of S, then the stripped remainder) and only
//! hands survivors to the canonical record path. Valuations are insensitive
//! to the representation, so the filter is exact, and every hit is rebuilt
//! through the same code the verifier uses.

use super::report::{evaluate_candidate, SolutionRecord};
use super::{HarnessError, ValidatedConfig};
use crate::funfield::RatFunc;
use crate::poly::Poly;
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct SearchOutput {
    pub records: Vec<SolutionRecord>,
    pub candidates: u64,
    pub case_counts: BTreeMap<String, u64>,
}

fn exponent_vectors(k: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for prefix in &out {
            for e in -bound..=bound {
                let mut v = prefix.clone();
                v.push(e);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Divides all factors of `p` out of `f` in place; returns the multiplicity.
fn strip_factor(f: &mut Poly, p: &Poly) -> u32 {
    let mut count = 0;
    loop {
        let (q, r) = f.div_rem(p);
        if r.is_zero() {
            *f = q;
            count += 1;
        } else {
            return count;
        }
    }
}

pub fn search(cfg: &ValidatedConfig, workers: usize) -> Result<SearchOutput, HarnessError> {
    let min_polys: Vec<Poly> = cfg
        .s
        .finite_places()
        .map(|p| p.min_poly().expect("finite").clone())
        .collect();
    let k = min_polys.len();
    let bound = cfg.exponent_bound as i64;
    let vectors = exponent_vectors(k, bound);

    // Positive and negative parts of prod p^e per exponent vector.
    let pos_products: Vec<Poly> = vectors
        .iter()
        .map(|v| {
            let mut acc = Poly::one();
            for (p, &e) in min_polys.iter().zip(v) {
                if e > 0 {
                    acc = &acc * &p.pow(e as u32);
                }
            }
            acc
        })
        .collect();
    let neg_products: Vec<Poly> = vectors
        .iter()
        .map(|v| {
            let mut acc = Poly::one();
            for (p, &e) in min_polys.iter().zip(v) {
                if e < 0 {
                    acc = &acc * &p.pow((-e) as u32);
                }
            }
            acc
        })
        .collect();

    let n = (cfg.constant_pool.len() * vectors.len()) as u128;
    let candidates = n * n;
    if candidates > cfg.grid_cap as u128 {
        return Err(HarnessError::GridTooLarge {
            candidates,
            cap: cfg.grid_cap,
        });
    }

    // Rows in lexicographic (c1, e1) order.
    let rows: Vec<(usize, usize)> = (0..cfg.constant_pool.len())
        .flat_map(|ci| (0..vectors.len()).map(move |vi| (ci, vi)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let row_results: Vec<Vec<SolutionRecord>> = pool.install(|| {
        rows.par_iter()
            .map(|&(c1i, e1i)| {
                scan_row(
                    cfg,
                    &min_polys,
                    &vectors,
                    &pos_products,
                    &neg_products,
                    c1i,
                    e1i,
                )
            })
            .collect()
    });
    let records: Vec<SolutionRecord> = row_results.into_iter().flatten().collect();

    let mut case_counts: BTreeMap<String, u64> = BTreeMap::new();
    for r in &records {
        if r.unclassified {
            *case_counts.entry("empty".into()).or_insert(0) += 1;
        }
        for case in &r.cases {
            let name = match case {
                crate::vojta::Case::SubsumVanishing { .. } => "subsum",
                crate::vojta::Case::Dependence { .. } => "dependence",
                crate::vojta::Case::HeightBounded { .. } => "height",
            };
            *case_counts.entry(name.into()).or_insert(0) += 1;
        }
    }

    Ok(SearchOutput {
        records,
        candidates: candidates as u64,
        case_counts,
    })
}

#[allow(clippy::too_many_arguments)]
fn scan_row(
    cfg: &ValidatedConfig,
    min_polys: &[Poly],
    vectors: &[Vec<i64>],
    pos_products: &[Poly],
    neg_products: &[Poly],
    c1i: usize,
    e1i: usize,
) -> Vec<SolutionRecord> {
    let c1 = &cfg.constant_pool[c1i];
    let e1 = &vectors[e1i];
    let u1 = super::report::unit_from_parts(&cfg.s, c1, e1);
    // w = u1^2 + lam*u1 + 1, reduced once per row.
    let w = &(&u1 * &u1) + &(&cfg.lam * &u1) + RatFunc::one();
    let (nw, dw) = (w.num().clone(), w.den().clone());
    let mut dw_stripped = dw.clone();
    let dw_mults: Vec<u32> = min_polys
        .iter()
        .map(|p| strip_factor(&mut dw_stripped, p))
        .collect();
    debug_assert!(dw_stripped.is_constant());
    let dw_deg = dw.degree() as i64;

    // The parity filter runs on denominator-cleared integer polynomials when
    // the grid places allow it; valuations ignore the overall scaling.
    let int_places: Option<Vec<Vec<BigInt>>> = min_polys
        .iter()
        .map(|p| zp_from_poly(p))
        .collect();

    // Hits in (c2, e2) lex order: constant-major, so collect per exponent
    // class and sort at the end.
    let mut hits: Vec<(usize, usize)> = vec![];

    if let Some(int_places) = &int_places {
        let (nw_int, la) = zp_cleared(&nw);
        let (dw_int, lb) = zp_cleared(&dw);
        let k = la.lcm(&lb);
        let ca = &k / &la;
        let cb = &k / &lb;
        let places128: Option<Vec<Vec<i128>>> = int_places
            .iter()
            .map(|p| p.iter().map(|c| i128::try_from(c).ok()).collect())
            .collect();
        for (e2i, e2) in vectors.iter().enumerate() {
            let (p2_int, _) = zp_cleared(&pos_products[e2i]);
            let (d2_int, _) = zp_cleared(&neg_products[e2i]);
            let a = zp_mul(&nw_int, &d2_int);
            let b = zp_mul(&p2_int, &dw_int);
            let den_deg = dw_deg + neg_products[e2i].degree() as i64;
            let den_mults: Vec<i64> = dw_mults
                .iter()
                .zip(e2)
                .map(|(&m, &e)| m as i64 + (-e).max(0))
                .collect();
            let a128: Option<Vec<i128>> = a.iter().map(|c| i128::try_from(c).ok()).collect();
            let b128: Option<Vec<i128>> = b.iter().map(|c| i128::try_from(c).ok()).collect();
            for (c2i, c2) in cfg.constant_pool.iter().enumerate() {
                // numraw = q*ca*a + p*cb*b for c2 = p/q, up to scaling.
                let sa = c2.denom() * &ca;
                let sb = c2.numer() * &cb;
                let fast = match (&places128, &a128, &b128) {
                    (Some(places), Some(fa), Some(fb)) => {
                        match (i128::try_from(&sa), i128::try_from(&sb)) {
                            (Ok(fsa), Ok(fsb)) => {
                                filter_candidate_i128(fa, fsa, fb, fsb, den_deg, &den_mults, places)
                            }
                            _ => None,
                        }
                    }
                    _ => None,
                };
                let accept = match fast {
                    Some(v) => v,
                    None => {
                        filter_candidate_big(&a, &sa, &b, &sb, den_deg, &den_mults, int_places)
                    }
                };
                if accept {
                    hits.push((c2i, e2i));
                }
            }
        }
    } else {
        // General fallback over rational coefficients.
        for (e2i, e2) in vectors.iter().enumerate() {
            let p2 = &pos_products[e2i];
            let d2 = &neg_products[e2i];
            let a = &nw * d2;
            let b = p2 * &dw;
            let den_deg = dw_deg + d2.degree() as i64;
            let den_mults: Vec<i64> = dw_mults
                .iter()
                .zip(e2)
                .map(|(&m, &e)| m as i64 + (-e).max(0))
                .collect();
            for (c2i, c2) in cfg.constant_pool.iter().enumerate() {
                let numraw = &a + &b.scale(c2);
                if numraw.is_zero() {
                    hits.push((c2i, e2i));
                    continue;
                }
                if (den_deg - numraw.degree() as i64) % 2 != 0 {
                    continue;
                }
                let mut stripped = numraw;
                let mut ok = true;
                for (p, &dm) in min_polys.iter().zip(&den_mults) {
                    let m = strip_factor(&mut stripped, p) as i64;
                    if (m - dm) % 2 != 0 {
                        ok = false;
                        break;
                    }
                }
                if !ok || stripped.degree() % 2 != 0 {
                    continue;
                }
                if !stripped.is_constant() {
                    let (sf, _) = stripped.square_parity_split();
                    if !sf.is_constant() {
                        continue;
                    }
                }
                hits.push((c2i, e2i));
            }
        }
    }

    hits.sort_unstable();
    hits.into_iter()
        .map(|(c2i, e2i)| {
            evaluate_candidate(cfg, c1, e1, &cfg.constant_pool[c2i], &vectors[e2i])
                .expect("parity filter and canonical path agree")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Denominator-cleared integer polynomials for the hot filter. Exactness is
// preserved because every check below is invariant under scaling.

/// Integer coefficients when the polynomial already has them.
fn zp_from_poly(p: &Poly) -> Option<Vec<BigInt>> {
    use num_traits::One;
    p.coeffs()
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                Some(c.numer().clone())
            } else {
                None
            }
        })
        .collect()
}

/// Clears denominators: returns `(l * p, l)` with integer coefficients.
fn zp_cleared(p: &Poly) -> (Vec<BigInt>, BigInt) {
    use num_traits::One;
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    (
        p.coeffs()
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect(),
        l,
    )
}

fn zp_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    use num_traits::Zero;
    while v.last().map_or(false, BigInt::is_zero) {
        v.pop();
    }
    v
}

fn zp_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    use num_traits::Zero;
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
    zp_trim(out)
}

/// `sa * a + sb * b`, trimmed.
fn zp_combine(a: &[BigInt], sa: &BigInt, b: &[BigInt], sb: &BigInt) -> Vec<BigInt> {
    use num_traits::Zero;
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = BigInt::zero();
        if let Some(x) = a.get(i) {
            v += x * sa;
        }
        if let Some(y) = b.get(i) {
            v += y * sb;
        }
        out.push(v);
    }
    zp_trim(out)
}

/// Full parity filter over BigInt coefficients.
fn filter_candidate_big(
    a: &[BigInt],
    sa: &BigInt,
    b: &[BigInt],
    sb: &BigInt,
    den_deg: i64,
    den_mults: &[i64],
    places: &[Vec<BigInt>],
) -> bool {
    let numraw = zp_combine(a, sa, b, sb);
    if numraw.is_empty() {
        return true; // rhs = 0: the y = 0 solution
    }
    if (den_deg - (numraw.len() as i64 - 1)) % 2 != 0 {
        return false;
    }
    let mut stripped = numraw;
    for (p, &dm) in places.iter().zip(den_mults) {
        let m = zp_strip_monic(&mut stripped, p) as i64;
        if (m - dm) % 2 != 0 {
            return false;
        }
    }
    if (stripped.len() - 1) % 2 != 0 {
        return false;
    }
    if stripped.len() > 1 {
        if !square_pretest_big(&stripped) {
            return false;
        }
        let (sf, _) = Poly::from_integer_coeffs(&stripped).square_parity_split();
        if !sf.is_constant() {
            return false;
        }
    }
    true
}

/// Same filter in overflow-checked i128 arithmetic; `None` on overflow.
fn filter_candidate_i128(
    a: &[i128],
    sa: i128,
    b: &[i128],
    sb: i128,
    den_deg: i64,
    den_mults: &[i64],
    places: &[Vec<i128>],
) -> Option<bool> {
    let n = a.len().max(b.len());
    let mut numraw = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: i128 = 0;
        if let Some(&x) = a.get(i) {
            v = v.checked_add(x.checked_mul(sa)?)?;
        }
        if let Some(&y) = b.get(i) {
            v = v.checked_add(y.checked_mul(sb)?)?;
        }
        numraw.push(v);
    }
    while numraw.last() == Some(&0) {
        numraw.pop();
    }
    if numraw.is_empty() {
        return Some(true);
    }
    if (den_deg - (numraw.len() as i64 - 1)) % 2 != 0 {
        return Some(false);
    }
    let mut stripped = numraw;
    for (p, &dm) in places.iter().zip(den_mults) {
        let m = zp128_strip_monic(&mut stripped, p)? as i64;
        if (m - dm) % 2 != 0 {
            return Some(false);
        }
    }
    if (stripped.len() - 1) % 2 != 0 {
        return Some(false);
    }
    if stripped.len() > 1 {
        if !square_pretest_i128(&stripped)? {
            return Some(false);
        }
        let ints: Vec<BigInt> = stripped.iter().map(|&c| BigInt::from(c)).collect();
        let (sf, _) = Poly::from_integer_coeffs(&ints).square_parity_split();
        if !sf.is_constant() {
            return Some(false);
        }
    }
    Some(true)
}

fn zp128_strip_monic(f: &mut Vec<i128>, d: &[i128]) -> Option<u32> {
    let dd = d.len() - 1;
    let mut count = 0;
    'outer: loop {
        if f.len() <= dd {
            return Some(count);
        }
        let mut rem = f.clone();
        let mut quot = vec![0i128; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i];
            if q == 0 {
                continue;
            }
            for (j, &dc) in d.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j].checked_sub(q.checked_mul(dc)?)?;
            }
            quot[i - dd] = q;
        }
        for &r in rem.iter().take(dd) {
            if r != 0 {
                break 'outer;
            }
        }
        while quot.last() == Some(&0) {
            quot.pop();
        }
        *f = quot;
        count += 1;
    }
    Some(count)
}

/// A polynomial of the form c * h^2 has lc(f) * f(x) a perfect square at
/// every point; testing a few points rejects almost all non-squares before
/// the exact decomposition runs.
fn square_pretest_i128(f: &[i128]) -> Option<bool> {
    let lc = *f.last().unwrap();
    for x in [0i128, 1, -1, 2, -2] {
        let mut acc: i128 = 0;
        for &c in f.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        let v = acc.checked_mul(lc)?;
        if v == 0 {
            continue;
        }
        return Some(is_square_i128(v));
    }
    Some(true)
}

fn is_square_i128(v: i128) -> bool {
    if v < 0 {
        return false;
    }
    let r = (v as f64).sqrt() as i128;
    for c in r.saturating_sub(2)..=r + 2 {
        if c >= 0 && c * c == v {
            return true;
        }
    }
    false
}

fn square_pretest_big(f: &[BigInt]) -> bool {
    use num_traits::Signed;
    use num_traits::Zero;
    let lc = f.last().unwrap();
    for x in [0i64, 1, -1, 2, -2] {
        let xb = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in f.iter().rev() {
            acc = acc * &xb + c;
        }
        let v = acc * lc;
        if v.is_zero() {
            continue;
        }
        if v.is_negative() {
            return false;
        }
        let r = v.sqrt();
        return &r * &r == v;
    }
    true
}

/// Repeated exact division by a monic integer polynomial; returns the
/// multiplicity and leaves the cofactor in `f`.
fn zp_strip_monic(f: &mut Vec<BigInt>, d: &[BigInt]) -> u32 {
    use num_traits::Zero;
    let dd = d.len() - 1;
    let mut count = 0;
    'outer: loop {
        if f.len() <= dd {
            return count;
        }
        let mut rem = f.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = rem[i].clone();
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.iter().enumerate() {
                let v = &rem[i - dd + j] - &q * dc;
                rem[i - dd + j] = v;
            }
            quot[i - dd] = q;
        }
        for r in rem.iter().take(dd) {
            if !r.is_zero() {
                break 'outer;
            }
        }
        *f = zp_trim(quot);
        count += 1;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::SearchConfig;

    fn tiny_config() -> ValidatedConfig {
        let json = r#"{
            "S": [
                {"kind": "finite", "min_poly": ["0", "1"]},
                {"kind": "finite", "min_poly": ["-2", "1"]},
                {"kind": "finite", "min_poly": ["2", "1"]},
                {"kind": "infinity"}
            ],
            "lam": {"num": ["0", "1"], "den": ["1"]},
            "exponent_bound": 1,
            "constant_pool": ["1", "-1", "-2"],
            "strict": true,
            "seed": 1,
            "suites": []
        }"#;
        SearchConfig::from_json(json).unwrap().validate().unwrap()
    }

    #[test]
    fn finds_the_known_solution() {
        let cfg = tiny_config();
        let out = search(&cfg, 1).unwrap();
        assert_eq!(out.candidates, (3 * 27) * (3 * 27));
        // u1 = t, u2 = -2t^2 needs exponent 2: widen the bound.
        let mut raw = cfg.to_raw();
        raw.exponent_bound = 2;
        let cfg2 = raw.validate().unwrap();
        let out2 = search(&cfg2, 2).unwrap();
        let hit = out2.records.iter().find(|r| {
            r.u1 == crate::funfield::RatFunc::x()
                && r.u2
                    == crate::funfield::RatFunc::from_poly(crate::poly::Poly::from_i64(&[
                        0, 0, -2,
                    ]))
        });
        let hit = hit.expect("the known solution is in the grid");
        assert!(hit.cases.iter().any(|c| matches!(
            c,
            crate::vojta::Case::SubsumVanishing { .. }
        )));
        assert!(!out2.records.iter().any(|r| r.unclassified));
    }

    #[test]
    fn matches_naive_enumeration() {
        // Independent oracle: plain nested loops over the same grid with
        // divisor-based square detection.
        let cfg = tiny_config();
        let fast = search(&cfg, 2).unwrap();

        let mut naive_keys = vec![];
        let vectors = exponent_vectors(2, 1);
        let vectors3 = exponent_vectors(3, 1);
        assert_eq!(vectors3.len(), 27);
        drop(vectors);
        for c1 in &cfg.constant_pool {
            for e1 in &vectors3 {
                for c2 in &cfg.constant_pool {
                    for e2 in &vectors3 {
                        let u1 = super::super::report::unit_from_parts(&cfg.s, c1, e1);
                        let u2 = super::super::report::unit_from_parts(&cfg.s, c2, e2);
                        let rhs = &(&(&u1 * &u1) + &(&cfg.lam * &u1)) + &(&u2 + RatFunc::one());
                        let is_solution = if rhs.is_zero() {
                            true
                        } else {
                            rhs.divisor()
                                .unwrap()
                                .support()
                                .all(|(_, c)| c % 2 == 0)
                        };
                        if is_solution {
                            naive_keys.push(super::super::report::make_key(c1, e1, c2, e2));
                        }
                    }
                }
            }
        }
        let fast_keys: Vec<String> = fast.records.iter().map(|r| r.key.clone()).collect();
        assert_eq!(fast_keys, naive_keys);
    }

    #[test]
    fn grid_cap_refusal() {
        let mut raw = tiny_config().to_raw();
        raw.grid_cap = 10;
        let cfg = raw.validate().unwrap();
        let err = search(&cfg, 1).unwrap_err();
        match err {
            HarnessError::GridTooLarge { candidates, cap } => {
                assert_eq!(cap, 10);
                assert_eq!(candidates, 81 * 81);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let cfg = tiny_config();
        let a = search(&cfg, 1).unwrap();
        let b = search(&cfg, 4).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.case_counts, b.case_counts);
    }
}

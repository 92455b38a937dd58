//! Genus and Euler-characteristic computation for quadratic and biquadratic
//! covers of the projective line, by geometric ramification counting.
//!
//! A quadratic cover is recorded by the squarefree part of its defining
//! polynomial; adjoining one or two independent square roots gives covers of
//! degree 2 or 4. All counts are degree-weighted, and an unramified place
//! always splits completely in the geometric picture, so no residue-field
//! arithmetic is needed.

use crate::factor;
use crate::funfield::{Place, RatFunc};
use crate::poly::Poly;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("quadratic data is trivial (square up to constant)")]
    TrivialSpec,
    #[error("dependent quadratic data: the biquadratic cover collapses")]
    DegenerateCover,
    #[error("at most two independent square roots are supported")]
    TooManySpecs,
}

/// `f = sf * sq^2` up to the leading constant, with `sf` monic squarefree.
pub fn squarefree_part(f: &Poly) -> (Poly, Poly) {
    assert!(!f.is_zero());
    f.square_parity_split()
}

/// One square-root datum `sqrt(d_sf)` over the base line.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuadCoverSpec {
    pub d_sf: Poly,
    pub square_part: Poly,
    pub inf_ramified: bool,
}

impl QuadCoverSpec {
    /// Builds the spec for `sqrt(f)`; errors when `f` is a square up to a
    /// constant, i.e. the cover would be trivial.
    pub fn from_poly(f: &Poly) -> Result<QuadCoverSpec, CoverError> {
        let (sf, sq) = squarefree_part(f);
        if sf.is_constant() {
            return Err(CoverError::TrivialSpec);
        }
        let inf_ramified = sf.degree() % 2 == 1;
        Ok(QuadCoverSpec {
            d_sf: sf,
            square_part: sq,
            inf_ramified,
        })
    }

    /// Spec for the square root of a rational function: `sqrt(n/d)` generates
    /// the same extension as `sqrt(n*d)`.
    pub fn from_ratfunc(f: &RatFunc) -> Result<QuadCoverSpec, CoverError> {
        assert!(!f.is_zero());
        QuadCoverSpec::from_poly(&(f.num() * f.den()))
    }

    pub fn ramifies_at(&self, v: &Place) -> bool {
        match v {
            Place::Infinity => self.inf_ramified,
            Place::Finite(p) => p.divides(&self.d_sf),
        }
    }

    /// Degree-weighted number of ramified geometric points; always even.
    pub fn geometric_ramification_count(&self) -> u64 {
        let r = self.d_sf.degree() as u64 + u64::from(self.inf_ramified);
        assert!(r % 2 == 0, "odd ramification count in a quadratic cover");
        r
    }
}

/// The set of base places over which `sqrt(d_sf)` ramifies.
pub fn ramification_locus(spec: &QuadCoverSpec) -> BTreeSet<Place> {
    let mut out: BTreeSet<Place> = factor::factor(&spec.d_sf)
        .factors
        .into_iter()
        .map(|(p, _)| Place::Finite(p))
        .collect();
    if spec.inf_ramified {
        out.insert(Place::Infinity);
    }
    out
}

fn check_specs(specs: &[QuadCoverSpec]) -> Result<(), CoverError> {
    match specs.len() {
        0 | 1 => Ok(()),
        2 => {
            // Monic squarefree d1 = d2 exactly when d1*d2 is a square.
            if specs[0].d_sf == specs[1].d_sf {
                Err(CoverError::DegenerateCover)
            } else {
                Ok(())
            }
        }
        _ => Err(CoverError::TooManySpecs),
    }
}

/// Genus of the cover obtained by adjoining the given square roots, via
/// Riemann-Hurwitz over the genus-0 base.
pub fn genus_of_cover(specs: &[QuadCoverSpec]) -> Result<u64, CoverError> {
    check_specs(specs)?;
    match specs {
        [] => Ok(0),
        [single] => {
            // 2g - 2 = 2(-2) + R.
            let r = single.geometric_ramification_count();
            Ok((r - 2) / 2)
        }
        [a, b] => {
            // Inertia has order <= 2: a base place ramified in any of the
            // three intermediate quadratics carries two points of index 2,
            // so 2g - 2 = 4(-2) + 2 * R_union.
            let r_union = biquadratic_ramified_count(a, b);
            debug_assert!(r_union >= 3);
            Ok(r_union - 3)
        }
        _ => unreachable!(),
    }
}

/// Degree-weighted count of base places ramified in at least one of the
/// three intermediate quadratics of the biquadratic cover. The factors of
/// sqrt(d1*d2)'s squarefree part are among those of d1 and d2, so the finite
/// part is carried by lcm(d1, d2).
fn biquadratic_ramified_count(a: &QuadCoverSpec, b: &QuadCoverSpec) -> u64 {
    let lcm = a.d_sf.lcm(&b.d_sf);
    lcm.degree() as u64 + u64::from(a.inf_ramified || b.inf_ramified)
}

fn cover_degree(specs: &[QuadCoverSpec]) -> u64 {
    1 << specs.len()
}

/// Degree-weighted number of geometric points of the cover above `v`.
pub fn points_above(v: &Place, specs: &[QuadCoverSpec]) -> u64 {
    let e = if specs.iter().any(|s| s.ramifies_at(v)) {
        2
    } else {
        1
    };
    v.degree() * cover_degree(specs) / e
}

/// Euler characteristic of the cover punctured above `base_set.`
pub fn chi_of_lifted_set(base_set: &BTreeSet<Place>, specs: &[QuadCoverSpec]) -> Result<i64, CoverError> {
    let g = genus_of_cover(specs)?;
    let lifted: u64 = base_set.iter().map(|v| points_above(v, specs)).sum();
    Ok(2 * g as i64 - 2 + lifted as i64)
}

/// A validated cover: at most two independent square roots, with its genus
/// and degree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoverData {
    pub specs: Vec<QuadCoverSpec>,
    pub genus: u64,
    pub degree: u64,
}

impl CoverData {
    pub fn build(specs: Vec<QuadCoverSpec>) -> Result<CoverData, CoverError> {
        let genus = genus_of_cover(&specs)?;
        let degree = cover_degree(&specs);
        Ok(CoverData {
            specs,
            genus,
            degree,
        })
    }

    /// Normalizing constructor from raw (nonzero) quadratic data: square
    /// parts are dropped and a dependent pair collapses to a single spec.
    pub fn from_ratfuncs(values: &[&RatFunc]) -> Result<CoverData, CoverError> {
        let mut specs: Vec<QuadCoverSpec> = vec![];
        for v in values {
            match QuadCoverSpec::from_ratfunc(v) {
                Ok(spec) => {
                    if !specs.iter().any(|s| s.d_sf == spec.d_sf) {
                        specs.push(spec);
                    }
                }
                Err(CoverError::TrivialSpec) => {}
                Err(e) => return Err(e),
            }
        }
        CoverData::build(specs)
    }

    pub fn chi_of_lifted_set(&self, base_set: &BTreeSet<Place>) -> i64 {
        chi_of_lifted_set(base_set, &self.specs).expect("validated specs")
    }
}

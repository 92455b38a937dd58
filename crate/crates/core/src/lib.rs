//! Exact kernels for unit equations over the rational function field of the
//! projective line: places and heights, quadratic covers, plane-configuration
//! moduli, and the solution-classification pipeline with its checkers.

pub mod covers;
pub mod moduli;
pub mod factor;
pub mod funfield;
pub mod harness;
pub mod poly;
pub mod rat;
pub mod vojta;

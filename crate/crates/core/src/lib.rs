//! Exact q-expansions, the Charlap-Coley-Robbins modular polynomials and
//! the prime-field formulas that recover an isogenous curve from them.

pub mod field;
pub mod formula;
pub mod isogeny;
pub mod modpoly;
pub mod qseries;

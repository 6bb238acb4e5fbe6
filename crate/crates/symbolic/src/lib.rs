//! Exact multivariate polynomials over Q and the mechanical re-derivation
//! of the `Ẽ4`, `Ẽ6`, Atkin `sigma` and Atkin `Ẽ4` formulas.

pub mod derive;
pub mod multipoly;
pub mod rational;

pub use derive::{
    derive, derive_atkin_e4t, derive_atkin_sigma, derive_e4t, derive_e6t, Case, DeriveError,
    Derivation,
};
pub use multipoly::{MultiPoly, PolyError, Var};
pub use rational::{FractionRing, PolyRing, RationalExpression};

//! Exact arithmetic for elliptic curves over rational function fields `k(t)`,
//! with `k` the rationals or a prime field.
//!
//! The crate covers Weil heights of rational functions and inseparability
//! degrees, Weierstrass curves with minimal discriminants and reduction data,
//! isogenies (Vélu quotients, Frobenius, Verschiebung, duals and their
//! decompositions), and the combinatorics of the modular curves `X0(N)`
//! together with the isogeny-degree bounds derived from their genus.

pub mod base;
pub mod ellcurve;
pub mod error;
pub mod funcfield;
pub mod isogeny;
pub mod modular;
pub mod parse;
mod ser;

pub use base::{BaseField, FieldElem};
pub use ellcurve::{CurvePoint, WeierstrassCurve};
pub use isogeny::{Isogeny, PolyX, RatMapX};

pub use error::{Error, Result};
pub use funcfield::{Divisor, Place, Poly, RatFunc};

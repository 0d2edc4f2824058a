//! Exact arithmetic substrate: the constant fields `Q` and `F_p`, and the
//! elementary multiplicative number theory used by the modular-curve formulas.

mod arith;
mod field;

pub use arith::{
    divisors, euler_phi, factor_integer, gcd_u64, is_prime, legendre_symbol, sum_of_divisors,
    Factorization,
};
pub use field::{BaseField, FieldElem, ModP};

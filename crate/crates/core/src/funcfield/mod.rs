//! The rational function field `K = k(t)`: polynomials, rational functions,
//! places and valuations, pole divisors, Weil height and inseparability degree.

mod factor;
mod modgcd;
mod place;
mod poly;
mod ratfunc;

pub use factor::{coprime_basis, factor_fp, squarefree_decomposition};

pub use place::{
    insep_degree, p_power_root, places_for, pole_divisor, valuation, weil_height, Divisor, Place,
};
pub use poly::Poly;
pub use ratfunc::RatFunc;

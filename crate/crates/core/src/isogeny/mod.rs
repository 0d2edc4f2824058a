//! Isogenies between elliptic curves over `k(t)`: division polynomials,
//! Vélu quotients, Frobenius and Verschiebung, composition, duals, the
//! separable/inseparable splitting and the height laws they satisfy.

mod checks;
mod divpoly;
mod frac;
mod linsolve;
mod map;
mod polyx;
mod ratmap;
mod torsion;
mod velu;

pub use checks::{
    check_twist_height_inequality, equal_height_family, insep_degree_of_dual,
    verify_height_theorem, EqualHeightFamily, FamilyMember, HeightLawReport, TwistHeightReport,
};
pub use divpoly::{division_polynomial, multiplication_x_map, two_torsion_polynomial};
pub use frac::FracX;
pub use map::{
    compose, decompose_x_map, dual_isogeny, frobenius_isogeny, full_decomposition, verschiebung,
    verschiebung_power, FullDecomposition, Isogeny, IsogenyKind, YMap,
};
pub use polyx::PolyX;
pub use ratmap::RatMapX;
pub use torsion::{
    kernel_poly_from_x, roots_in_base, torsion_x_coordinates, DEFAULT_SEARCH_DEGREE,
};
pub use velu::{kernel_poly_from_point, velu_from_kernel_poly, velu_from_point, POINT_ORDER_BOUND};

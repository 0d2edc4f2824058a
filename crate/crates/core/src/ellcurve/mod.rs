//! Weierstrass curves over `k(t)`: invariants, the group law, Frobenius twists,
//! minimal models, reduction types and the height comparisons built on them.

mod curve;
mod point;
mod reduction;

pub use curve::WeierstrassCurve;
pub use point::CurvePoint;
pub use reduction::{
    check_height_comparison, check_szpiro, conductor, differential_height, local_data,
    minimal_discriminant, minimal_model_at, multiplicative_places_match_j, non_semistable_degree,
    reduction_data, HeightComparison, ReductionData, ReductionType, SzpiroReport,
};

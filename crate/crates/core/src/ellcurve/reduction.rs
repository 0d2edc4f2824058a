//! Minimal models, reduction types, conductor and the height comparisons,
//! restricted to characteristic 0 or `p >= 5`.
//!
//! In that regime a model with integral `c4, c6` is isomorphic to an integral
//! one, so a place is handled entirely through `v(c4)`, `v(c6)` and `v(disc)`:
//! the minimal scaling exponent is `k = min(floor(v(c4)/4), floor(v(c6)/6))`
//! and `delta_v = v(disc) - 12k`. The place at infinity uses the uniformizer
//! `1/t` directly, which is the same as substituting `t = 1/s` and scaling by
//! a power of `s`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funcfield::{valuation, Divisor, Place};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionType {
    Good,
    Multiplicative,
    Additive,
}

/// Local data at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionData {
    pub place: Place,
    /// Valuation of the minimal discriminant.
    pub delta: u64,
    pub kind: ReductionType,
    pub conductor_exponent: u8,
    /// Valuation of `j`, absent when `j = 0`.
    pub j_valuation: Option<i64>,
}

impl ReductionData {
    pub fn is_semistable(&self) -> bool {
        self.kind != ReductionType::Additive
    }
}

fn require_supported(e: &WeierstrassCurve) -> Result<()> {
    match e.characteristic() {
        2 | 3 => Err(Error::UnsupportedCharacteristic(e.characteristic())),
        _ => Ok(()),
    }
}

/// `k` with `v(c4) - 4k >= 0`, `v(c6) - 6k >= 0` maximal.
fn scaling_exponent(e: &WeierstrassCurve, v: &Place) -> i64 {
    let k4 = valuation(e.c4(), v).map(|x| x.div_euclid(4));
    let k6 = valuation(e.c6(), v).map(|x| x.div_euclid(6));
    match (k4, k6) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("c4 and c6 cannot both vanish on a nonsingular curve"),
    }
}

/// A model minimal and integral at `v` together with `delta_v`.
///
/// When the given model is already integral and minimal at `v` it is returned
/// unchanged; otherwise the short model `y^2 = x^3 - c4/48 x - c6/864` is
/// rescaled by a power of the uniformizer.
pub fn minimal_model_at(e: &WeierstrassCurve, v: &Place) -> Result<(WeierstrassCurve, u64)> {
    require_supported(e)?;
    let k = scaling_exponent(e, v);
    let vd = valuation(e.discriminant(), v).expect("nonzero discriminant");
    let delta = vd - 12 * k;
    debug_assert!(delta >= 0);
    let integral = e
        .a_invariants()
        .iter()
        .all(|a| valuation(a, v).is_none_or(|x| x >= 0));
    if k == 0 && integral {
        return Ok((e.clone(), delta as u64));
    }
    let field = e.field();
    let pi = v.uniformizer(field);
    let u = pi.powi(k)?;
    let u4 = u.pow(4);
    let u6 = u.pow(6);
    let a4 = &(-e.c4()).scale(&field.from_i64(48).inv().unwrap()) * &u4.inv()?;
    let a6 = &(-e.c6()).scale(&field.from_i64(864).inv().unwrap()) * &u6.inv()?;
    let model = WeierstrassCurve::short(a4, a6)?;
    debug_assert_eq!(valuation(model.discriminant(), v), Some(delta));
    Ok((model, delta as u64))
}

/// Places where `disc`, `c4` or `c6` have zeros or poles, plus infinity:
/// every other place has good reduction.
pub(crate) fn relevant_places(e: &WeierstrassCurve) -> Result<Vec<Place>> {
    let mut polys = Vec::new();
    for f in [e.discriminant(), e.c4(), e.c6()] {
        if !f.is_zero() {
            polys.push(f.num().clone());
            polys.push(f.den().clone());
        }
    }
    crate::funcfield::places_for(&polys)
}

pub fn reduction_data(e: &WeierstrassCurve, v: &Place) -> Result<ReductionData> {
    require_supported(e)?;
    let k = scaling_exponent(e, v);
    let delta = valuation(e.discriminant(), v).expect("nonzero discriminant") - 12 * k;
    let c4_min = valuation(e.c4(), v).map(|x| x - 4 * k);
    let kind = if delta == 0 {
        ReductionType::Good
    } else if c4_min == Some(0) {
        ReductionType::Multiplicative
    } else {
        ReductionType::Additive
    };
    let conductor_exponent = match kind {
        ReductionType::Good => 0,
        ReductionType::Multiplicative => 1,
        ReductionType::Additive => 2,
    };
    Ok(ReductionData {
        place: v.clone(),
        delta: delta as u64,
        kind,
        conductor_exponent,
        j_valuation: valuation(e.j_invariant(), v),
    })
}

/// Reduction data at every place that can be bad.
pub fn local_data(e: &WeierstrassCurve) -> Result<Vec<ReductionData>> {
    require_supported(e)?;
    relevant_places(e)?
        .iter()
        .map(|v| reduction_data(e, v))
        .collect()
}

/// `Delta_min = sum delta_v v`.
pub fn minimal_discriminant(e: &WeierstrassCurve) -> Result<Divisor> {
    let mut d = Divisor::new();
    for r in local_data(e)? {
        d.add_term(r.place, r.delta as i64);
    }
    Ok(d)
}

/// `h_diff = deg(Delta_min) / 12`.
pub fn differential_height(e: &WeierstrassCurve) -> Result<BigRational> {
    let deg = minimal_discriminant(e)?.degree();
    Ok(BigRational::new(BigInt::from(deg), BigInt::from(12)))
}

/// `sum f_v v`.
pub fn conductor(e: &WeierstrassCurve) -> Result<Divisor> {
    let mut d = Divisor::new();
    for r in local_data(e)? {
        d.add_term(r.place, r.conductor_exponent as i64);
    }
    Ok(d)
}

/// `deg A(E)`: total degree of the places of additive reduction.
pub fn non_semistable_degree(e: &WeierstrassCurve) -> Result<u64> {
    Ok(local_data(e)?
        .iter()
        .filter(|r| !r.is_semistable())
        .map(|r| r.place.degree() as u64)
        .sum())
}

impl WeierstrassCurve {
    pub fn is_semistable(&self) -> Result<bool> {
        Ok(local_data(self)?.iter().all(ReductionData::is_semistable))
    }

    pub fn conductor_degree(&self) -> Result<u64> {
        Ok(conductor(self)?.degree() as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightComparison {
    /// `h_diff - h_mod / 12`.
    #[serde(serialize_with = "crate::ser::ratio")]
    pub lhs: BigRational,
    /// Total degree of the non-semistable places.
    pub bound: u64,
    pub semistable: bool,
    pub ok: bool,
}

/// `0 <= h_diff - h_mod/12 <= deg A(E)`, with equality at 0 exactly for
/// semistable curves.
pub fn check_height_comparison(e: &WeierstrassCurve) -> Result<HeightComparison> {
    let hdiff = differential_height(e)?;
    let hmod = BigRational::new(BigInt::from(e.modular_height()), BigInt::from(12));
    let lhs = hdiff - hmod;
    let bound = non_semistable_degree(e)?;
    let semistable = bound == 0;
    let zero = BigRational::from_integer(0.into());
    let in_range = lhs >= zero && lhs <= BigRational::from_integer(bound.into());
    let ok = in_range && ((lhs == zero) == semistable);
    Ok(HeightComparison {
        lhs,
        bound,
        semistable,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SzpiroReport {
    pub min_disc_degree: i64,
    pub conductor_degree: i64,
    pub j_insep_degree: u64,
    /// `6 deg_ins(j) (deg N - 2)` on the genus-0 base.
    pub rhs: i64,
    /// `deg N <= deg Delta_min`.
    pub ogg_ok: bool,
    pub ok: bool,
}

pub fn check_szpiro(e: &WeierstrassCurve) -> Result<SzpiroReport> {
    require_supported(e)?;
    if e.is_isotrivial() {
        return Err(Error::domain(
            "Szpiro's inequality is stated for non-isotrivial curves",
        ));
    }
    let disc_deg = minimal_discriminant(e)?.degree();
    let cond_deg = conductor(e)?.degree();
    let insep = e.j_insep_degree();
    let rhs = 6 * insep as i64 * (cond_deg - 2);
    let ogg_ok = cond_deg <= disc_deg;
    Ok(SzpiroReport {
        min_disc_degree: disc_deg,
        conductor_degree: cond_deg,
        j_insep_degree: insep,
        rhs,
        ogg_ok,
        ok: ogg_ok && disc_deg <= rhs,
    })
}

/// `delta_v = -v(j)` at every place of multiplicative reduction.
pub fn multiplicative_places_match_j(e: &WeierstrassCurve) -> Result<bool> {
    Ok(local_data(e)?
        .iter()
        .filter(|r| r.kind == ReductionType::Multiplicative)
        .all(|r| r.j_valuation == Some(-(r.delta as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseField;
    use crate::funcfield::{Poly, RatFunc};

    const Q: BaseField = BaseField::Rationals;

    fn rf(field: BaseField, c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_i64s(field, c))
    }

    fn place(field: BaseField, c: &[i64]) -> Place {
        Place::finite(Poly::from_i64s(field, c)).unwrap()
    }

    #[test]
    fn legendre_local_data() {
        let e = WeierstrassCurve::legendre(Q);
        let (m, d) = minimal_model_at(&e, &place(Q, &[0, 1])).unwrap();
        assert_eq!(d, 2);
        assert_eq!(m, e);
        let r = reduction_data(&e, &place(Q, &[0, 1])).unwrap();
        assert_eq!(r.kind, ReductionType::Multiplicative);
        assert_eq!(r.conductor_exponent, 1);
        assert_eq!(r.j_valuation, Some(-2));
        let r1 = reduction_data(&e, &place(Q, &[-1, 1])).unwrap();
        assert_eq!((r1.delta, r1.kind), (2, ReductionType::Multiplicative));
        let inf = reduction_data(&e, &Place::Infinity).unwrap();
        assert_eq!((inf.delta, inf.kind), (8, ReductionType::Additive));
        let dmin = minimal_discriminant(&e).unwrap();
        assert_eq!(dmin.degree(), 12);
        assert_eq!(
            differential_height(&e).unwrap(),
            BigRational::from_integer(1.into())
        );
        assert_eq!(e.conductor_degree().unwrap(), 4);
        assert!(!e.is_semistable().unwrap());
        assert!(multiplicative_places_match_j(&e).unwrap());
        let good = reduction_data(&e, &place(Q, &[1, 1])).unwrap();
        assert_eq!(
            (good.delta, good.kind, good.conductor_exponent),
            (0, ReductionType::Good, 0)
        );
    }

    #[test]
    fn rescaling_removes_twelfth_powers() {
        let mut c = vec![0; 13];
        c[12] = 1;
        let e = WeierstrassCurve::short(RatFunc::zero(Q), rf(Q, &c)).unwrap();
        let v = place(Q, &[0, 1]);
        assert_eq!(valuation(e.discriminant(), &v), Some(24));
        let (m, d) = minimal_model_at(&e, &v).unwrap();
        assert_eq!(d, 0);
        assert_eq!(valuation(m.discriminant(), &v), Some(0));
        assert!(m.c4().is_zero());
    }

    #[test]
    fn additive_place() {
        let e = WeierstrassCurve::short(RatFunc::zero(Q), RatFunc::var(Q)).unwrap();
        let r = reduction_data(&e, &place(Q, &[0, 1])).unwrap();
        assert_eq!(
            (r.delta, r.kind, r.conductor_exponent),
            (2, ReductionType::Additive, 2)
        );
    }

    #[test]
    fn isotrivial_everywhere_good() {
        let e = WeierstrassCurve::short(RatFunc::zero(Q), RatFunc::one(Q)).unwrap();
        assert_eq!(minimal_discriminant(&e).unwrap().degree(), 0);
        assert_eq!(
            differential_height(&e).unwrap(),
            BigRational::from_integer(0.into())
        );
        let cmp = check_height_comparison(&e).unwrap();
        assert_eq!(
            (cmp.lhs.clone(), cmp.bound, cmp.ok),
            (BigRational::from_integer(0.into()), 0, true)
        );
        assert!(check_szpiro(&e).is_err());
    }

    #[test]
    fn legendre_comparison_and_szpiro() {
        for field in [Q, BaseField::PrimeField(5), BaseField::PrimeField(7)] {
            let e = WeierstrassCurve::legendre(field);
            let cmp = check_height_comparison(&e).unwrap();
            assert!(cmp.ok);
            assert_eq!(cmp.lhs, BigRational::new(1.into(), 2.into()));
            assert_eq!(cmp.bound, 1);
            let sz = check_szpiro(&e).unwrap();
            assert!(sz.ok && sz.ogg_ok, "{field}: {sz:?}");
            assert_eq!(
                (sz.min_disc_degree, sz.conductor_degree, sz.j_insep_degree),
                (12, 4, 1)
            );
        }
        let twist = WeierstrassCurve::legendre(BaseField::PrimeField(5))
            .frobenius_twist(1)
            .unwrap();
        let sz = check_szpiro(&twist).unwrap();
        assert_eq!(sz.j_insep_degree, 5);
        assert!(sz.ok, "{sz:?}");
    }

    #[test]
    fn small_characteristic_rejected() {
        let e = WeierstrassCurve::legendre(BaseField::PrimeField(3));
        assert_eq!(
            minimal_discriminant(&e).unwrap_err(),
            Error::UnsupportedCharacteristic(3)
        );
    }
}

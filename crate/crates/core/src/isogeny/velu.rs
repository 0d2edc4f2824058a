//! Quotient isogenies `E -> E/G` from the kernel polynomial of `G`
//! (Vélu's formulas in Kohel's kernel-polynomial form).

use super::divpoly::{division_polynomial, linear_y_coeff, two_torsion_polynomial};
use super::map::{Isogeny, IsogenyKind};
use super::polyx::PolyX;
use super::ratmap::RatMapX;
use crate::ellcurve::{CurvePoint, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// `(h psi') mod psi`, so that `sum_{psi(r) = 0} h(r) / (x - r) = R / psi`.
fn residue_sum(h: &PolyX, psi: &PolyX) -> PolyX {
    (h * &psi.derivative()).rem(psi)
}

/// Separable isogeny with kernel the subgroup whose nonzero x-coordinates are
/// the roots of `kernel`.
pub fn velu_from_kernel_poly(e: &WeierstrassCurve, kernel: &PolyX) -> Result<Isogeny> {
    let field = e.field();
    let p = e.characteristic();
    if p == 2 {
        return Err(Error::UnsupportedCharacteristic(2));
    }
    if kernel.is_zero() {
        return Err(Error::InvalidKernel("zero kernel polynomial".into()));
    }
    let psi = kernel.monic();
    if psi.is_constant() {
        return Ok(Isogeny::identity(e));
    }
    if !psi.is_squarefree() {
        return Err(Error::InvalidKernel(
            "kernel polynomial is not squarefree".into(),
        ));
    }
    let f = two_torsion_polynomial(e);
    let psi2 = psi.gcd(&f);
    let psi_odd = psi.exact_div(&psi2);
    let n = 1 + 2 * psi_odd.deg0() + psi2.deg0();
    if p != 0 && n as u64 % p == 0 {
        return Err(Error::InvalidKernel(format!(
            "kernel order {n} is divisible by the characteristic"
        )));
    }
    if !psi_odd.is_constant() && !psi_odd.divides(&division_polynomial(e, n)?) {
        return Err(Error::InvalidKernel(format!(
            "kernel polynomial does not divide the {n}-division polynomial"
        )));
    }

    let k = |m: i64| RatFunc::from_i64(field, m);
    let inv = |m: i64| k(m).inv().expect("invertible in odd characteristic");
    let fp = f.derivative();
    let x = PolyX::x(field);
    let half_fp = fp.scale(&inv(2));
    let quarter_fp = fp.scale(&inv(4));

    let mut big_x = RatMapX::identity(field);
    let mut v = RatFunc::zero(field);
    let mut w = RatFunc::zero(field);
    if !psi_odd.is_constant() {
        let r1 = residue_sum(&half_fp, &psi_odd);
        let r2 = residue_sum(&f, &psi_odd);
        let r3 = residue_sum(&(&x * &half_fp), &psi_odd);
        let den = psi_odd.clone();
        big_x = &big_x + &RatMapX::new(r1.clone(), den.clone())?;
        big_x = &big_x - &RatMapX::new(r2.clone(), den)?.derivative();
        v = &v + &r1.coeff(psi_odd.deg0() - 1);
        w = &(&w + &r2.coeff(psi_odd.deg0() - 1)) + &r3.coeff(psi_odd.deg0() - 1);
    }
    if !psi2.is_constant() {
        let r1 = residue_sum(&quarter_fp, &psi2);
        let r3 = residue_sum(&(&x * &quarter_fp), &psi2);
        big_x = &big_x + &RatMapX::new(r1.clone(), psi2.clone())?;
        v = &v + &r1.coeff(psi2.deg0() - 1);
        w = &w + &r3.coeff(psi2.deg0() - 1);
    }
    let [a1, a2, a3, a4, a6] = e.a_invariants().clone();
    let big_a4 = &a4 - &(&k(5) * &v);
    let big_a6 = &(&a6 - &(e.b2() * &v)) - &(&k(7) * &w);
    let cod = WeierstrassCurve::new([a1.clone(), a2, a3.clone(), big_a4, big_a6])
        .map_err(|_| Error::InvalidKernel("quotient model is singular".into()))?;

    let dx = big_x.derivative();
    let s = RatMapX::from_poly(linear_y_coeff(e));
    let big_s = &(&RatMapX::constant(a1) * &big_x) + &RatMapX::constant(a3);
    let c0 = &(&(&dx * &s) - &big_s) * &RatMapX::constant(inv(2));
    let iso = Isogeny::from_parts(
        e.clone(),
        cod,
        big_x,
        Some((dx.into(), c0.into())),
        1,
        Some(psi),
        IsogenyKind::Velu,
    )?;
    if iso.degree() != n as u64 {
        return Err(Error::InvalidKernel(format!(
            "x-map has degree {} instead of {n}",
            iso.degree()
        )));
    }
    if !iso.image_on_codomain()? {
        return Err(Error::InvalidKernel(
            "kernel polynomial does not cut out a subgroup".into(),
        ));
    }
    Ok(iso)
}

/// `prod_{k=1}^{floor(n/2)} (x - x([k]P))` for `P` of exact order `n`.
pub fn kernel_poly_from_point(e: &WeierstrassCurve, point: &CurvePoint, n: u64) -> Result<PolyX> {
    let field = e.field();
    let mut psi = PolyX::one(field);
    let mut q = point.clone();
    for _ in 1..=n / 2 {
        let x = q
            .x()
            .ok_or_else(|| Error::InvalidKernel("point order is smaller than claimed".into()))?;
        psi = &psi * &PolyX::linear(x);
        q = e.point_add(&q, point)?;
    }
    Ok(psi)
}

/// Largest point order searched by `velu_from_point`.
pub const POINT_ORDER_BOUND: u64 = 64;

/// Quotient by the cyclic group generated by a rational point.
pub fn velu_from_point(e: &WeierstrassCurve, point: &CurvePoint) -> Result<Isogeny> {
    if !e.is_on_curve(point) {
        return Err(Error::InvalidKernel(
            "kernel point is not on the curve".into(),
        ));
    }
    let n = e.point_order(point, POINT_ORDER_BOUND)?.ok_or_else(|| {
        Error::InvalidKernel(format!("point has no order up to {POINT_ORDER_BOUND}"))
    })?;
    let p = e.characteristic();
    if p != 0 && n % p == 0 {
        return Err(Error::InvalidKernel(format!(
            "point order {n} is divisible by the characteristic"
        )));
    }
    velu_from_kernel_poly(e, &kernel_poly_from_point(e, point, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseField;
    use crate::isogeny::divpoly::multiplication_x_map;

    const Q: BaseField = BaseField::Rationals;

    fn rf(field: BaseField, c: &[i64]) -> RatFunc {
        RatFunc::from_poly(crate::funcfield::Poly::from_i64s(field, c))
    }

    #[test]
    fn legendre_two_isogeny() {
        let e = WeierstrassCurve::legendre(Q);
        let phi = velu_from_kernel_poly(&e, &PolyX::x(Q)).unwrap();
        assert_eq!(phi.degree(), 2);
        let x = PolyX::x(Q);
        let expected =
            RatMapX::new(&(&x * &x) + &PolyX::constant(RatFunc::var(Q)), x.clone()).unwrap();
        assert_eq!(phi.x_map(), &expected);
        // y^2 = x^3 - (1+t) x^2 - 4t x + 4t(1+t)
        let c = phi.codomain().a_invariants();
        assert_eq!(c[1], rf(Q, &[-1, -1]));
        assert_eq!(c[3], rf(Q, &[0, -4]));
        assert_eq!(c[4], rf(Q, &[0, 4, 4]));
        assert_eq!(phi.codomain().modular_height(), 6);
        // translating x -> X + (1 + t) gives Y^2 = X^3 + 2(1+t) X^2 + (1-t)^2 X
        let one = RatFunc::one(Q);
        let z = RatFunc::zero(Q);
        let moved = phi
            .codomain()
            .change_coordinates(&one, &rf(Q, &[1, 1]), &z, &z)
            .unwrap();
        let m = moved.a_invariants();
        assert_eq!(
            (m[1].clone(), m[3].clone(), m[4].clone()),
            (rf(Q, &[2, 2]), rf(Q, &[1, -2, 1]), z.clone())
        );
        assert!(phi.image_on_codomain().unwrap());
    }

    #[test]
    fn identity_kernel() {
        let e = WeierstrassCurve::legendre(Q);
        let id = velu_from_kernel_poly(&e, &PolyX::one(Q)).unwrap();
        assert_eq!(id.degree(), 1);
        assert_eq!(id.codomain(), &e);
        assert_eq!(
            velu_from_point(&e, &CurvePoint::AtInfinity)
                .unwrap()
                .degree(),
            1
        );
    }

    #[test]
    fn three_isogeny_from_point() {
        // (0,0) has order 3 on y^2 + xy + ty = x^3
        for field in [Q, BaseField::PrimeField(5), BaseField::PrimeField(7)] {
            let z = RatFunc::zero(field);
            let e = WeierstrassCurve::new([
                RatFunc::one(field),
                z.clone(),
                RatFunc::var(field),
                z.clone(),
                z.clone(),
            ])
            .unwrap();
            let phi = velu_from_point(&e, &CurvePoint::Affine(z.clone(), z.clone())).unwrap();
            assert_eq!(phi.degree(), 3);
            assert_eq!(phi.kernel_poly().unwrap(), &PolyX::x(field));
            assert!(phi.image_on_codomain().unwrap());
            assert_eq!(phi.codomain().j_insep_degree(), e.j_insep_degree());
            assert_eq!(phi.codomain().modular_height(), e.modular_height());
        }
    }

    #[test]
    fn rejects_non_subgroup() {
        let e = WeierstrassCurve::legendre(Q);
        // two of the three 2-torsion x-coordinates do not form a subgroup
        let bad = &PolyX::x(Q) * &PolyX::linear(&RatFunc::one(Q));
        assert!(matches!(
            velu_from_kernel_poly(&e, &bad),
            Err(Error::InvalidKernel(_))
        ));
        let not_torsion = PolyX::linear(&rf(Q, &[2]));
        assert!(velu_from_kernel_poly(&e, &not_torsion).is_err());
    }

    #[test]
    fn four_torsion_kernel() {
        // full 2-torsion kernel: quotient is [2] followed by an isomorphism
        let e = WeierstrassCurve::legendre(Q);
        let f = two_torsion_polynomial(&e);
        let phi = velu_from_kernel_poly(&e, &f).unwrap();
        assert_eq!(phi.degree(), 4);
        assert_eq!(phi.codomain().j_invariant(), e.j_invariant());
        let m2 = multiplication_x_map(&e, 2).unwrap();
        assert_eq!(phi.x_map().num().deg0(), m2.num().deg0());
    }
}

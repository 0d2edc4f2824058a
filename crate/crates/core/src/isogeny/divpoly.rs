//! Division polynomials in the `x`-only normalization
//! `g_n = psi_n` (n odd), `g_n = psi_n / psi_2` (n even), with
//! `psi_2^2 = F = 4x^3 + b2 x^2 + 2 b4 x + b6`.

use super::polyx::PolyX;
use super::ratmap::RatMapX;
use crate::ellcurve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

fn px(e: &WeierstrassCurve, c: &[&RatFunc]) -> PolyX {
    PolyX::from_coeffs(e.field(), c.iter().map(|r| (*r).clone()).collect())
}

/// `psi_2^2 = (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6`.
pub fn two_torsion_polynomial(e: &WeierstrassCurve) -> PolyX {
    let k = |n| RatFunc::from_i64(e.field(), n);
    px(e, &[e.b6(), &(&k(2) * e.b4()), e.b2(), &k(4)])
}

/// `x^3 + a2 x^2 + a4 x + a6`, the right-hand side of the equation.
pub(crate) fn cubic(e: &WeierstrassCurve) -> PolyX {
    px(e, &[e.a6(), e.a4(), e.a2(), &RatFunc::one(e.field())])
}

/// `a1 x + a3`.
pub(crate) fn linear_y_coeff(e: &WeierstrassCurve) -> PolyX {
    px(e, &[e.a3(), e.a1()])
}

/// `g_0, ..., g_n`.
pub(crate) fn division_polynomials_upto(e: &WeierstrassCurve, n: usize) -> Vec<PolyX> {
    let field = e.field();
    let k = |m| RatFunc::from_i64(field, m);
    let (b2, b4, b6, b8) = (e.b2(), e.b4(), e.b6(), e.b8());
    let mut g = vec![PolyX::zero(field), PolyX::one(field), PolyX::one(field)];
    g.push(px(e, &[b8, &(&k(3) * b6), &(&k(3) * b4), b2, &k(3)]));
    g.push(px(
        e,
        &[
            &(&(b4 * b8) - &(b6 * b6)),
            &(&(b2 * b8) - &(b4 * b6)),
            &(&k(10) * b8),
            &(&k(10) * b6),
            &(&k(5) * b4),
            b2,
            &k(2),
        ],
    ));
    if n < g.len() {
        g.truncate(n + 1);
        return g;
    }
    let f = two_torsion_polynomial(e);
    let f2 = &f * &f;
    for idx in 5..=n {
        let m = idx / 2;
        let next = if idx % 2 == 1 {
            let a = &g[m + 2] * &g[m].pow(3);
            let b = &g[m - 1] * &g[m + 1].pow(3);
            if m % 2 == 0 {
                &(&f2 * &a) - &b
            } else {
                &a - &(&f2 * &b)
            }
        } else {
            let inner = &(&g[m + 2] * &g[m - 1].pow(2)) - &(&g[m - 2] * &g[m + 1].pow(2));
            &g[m] * &inner
        };
        g.push(next);
    }
    g
}

/// `g_n` as above: for odd `n` this is `psi_n`; for even `n` the
/// 2-torsion factor `psi_2` is removed.
pub fn division_polynomial(e: &WeierstrassCurve, n: usize) -> Result<PolyX> {
    if n == 0 {
        return Err(Error::domain("division polynomial index must be positive"));
    }
    Ok(division_polynomials_upto(e, n).swap_remove(n))
}

/// `x([n]P)` as a function of `x(P)`:
/// `x - psi_{n-1} psi_{n+1} / psi_n^2`, in lowest terms.
pub fn multiplication_x_map(e: &WeierstrassCurve, n: usize) -> Result<RatMapX> {
    if n == 0 {
        return Err(Error::domain("multiplication by 0 has no x-map"));
    }
    let field = e.field();
    if n == 1 {
        return Ok(RatMapX::identity(field));
    }
    let g = division_polynomials_upto(e, n + 1);
    let f = two_torsion_polynomial(e);
    let x = PolyX::x(field);
    let gn2 = g[n].pow(2);
    let prod = &g[n - 1] * &g[n + 1];
    // psi_n^2 and psi_{n-1} psi_{n+1} share no root, so the quotient is reduced.
    let (num, den) = if n % 2 == 1 {
        (&(&x * &gn2) - &(&f * &prod), gn2)
    } else {
        let den = &f * &gn2;
        (&(&x * &den) - &prod, den)
    };
    let map = RatMapX::from_coprime(num, den);
    debug_assert_eq!(map.degree(), n * n);
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseField;
    use crate::ellcurve::CurvePoint;
    use crate::funcfield::Poly;

    const Q: BaseField = BaseField::Rationals;

    fn rf(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_i64s(Q, c))
    }

    #[test]
    fn small_division_polynomials() {
        let (a, b) = (rf(&[1, 2]), rf(&[0, 0, 3]));
        let e = WeierstrassCurve::short(a.clone(), b.clone()).unwrap();
        assert!(division_polynomial(&e, 1).unwrap().is_one());
        let k = |n| RatFunc::from_i64(Q, n);
        let psi3 = PolyX::from_coeffs(
            Q,
            vec![-&(&a * &a), &k(12) * &b, &k(6) * &a, RatFunc::zero(Q), k(3)],
        );
        assert_eq!(division_polynomial(&e, 3).unwrap(), psi3);
        let f = two_torsion_polynomial(&e);
        let four_cubic = cubic(&e).scale(&k(4));
        assert_eq!(f, four_cubic);
        assert!(division_polynomial(&e, 0).is_err());
    }

    #[test]
    fn doubling_map_example() {
        // y^2 = x^3 + t x: x([2]P) = (x^2 - t)^2 / (4 (x^3 + t x))
        let e = WeierstrassCurve::short(RatFunc::var(Q), RatFunc::zero(Q)).unwrap();
        let m = multiplication_x_map(&e, 2).unwrap();
        let x = PolyX::x(Q);
        let q = &(&x * &x) - &PolyX::constant(RatFunc::var(Q));
        let den = (&x.pow(3) + &x.scale(&RatFunc::var(Q))).scale(&RatFunc::from_i64(Q, 4));
        assert_eq!(m, RatMapX::new(q.pow(2), den).unwrap());
        assert_eq!(multiplication_x_map(&e, 3).unwrap().degree(), 9);
        assert_eq!(multiplication_x_map(&e, 1).unwrap(), RatMapX::identity(Q));
    }

    /// Points with given coordinates on a curve solved through them.
    fn curve_and_point() -> (WeierstrassCurve, CurvePoint) {
        // y^2 + x y + t y = x^3 + a2 x^2 + a4 x + a6 through (t, 1), choose a2 = 1, a4 = t
        let t = RatFunc::var(Q);
        let one = RatFunc::one(Q);
        let (x0, y0) = (t.clone(), one.clone());
        let (a1, a2, a3, a4) = (one.clone(), one.clone(), t.clone(), t.clone());
        let lhs = &(&(&y0 * &y0) + &(&(&a1 * &x0) * &y0)) + &(&a3 * &y0);
        let rhs = &(&(&(&x0 * &x0) * &x0) + &(&(&a2 * &x0) * &x0)) + &(&a4 * &x0);
        let a6 = &lhs - &rhs;
        let e = WeierstrassCurve::new([a1, a2, a3, a4, a6]).unwrap();
        (e, CurvePoint::Affine(x0, y0))
    }

    #[test]
    fn multiplication_map_matches_group_law() {
        let (e, p) = curve_and_point();
        assert!(e.is_on_curve(&p));
        for n in 1..=5usize {
            let m = multiplication_x_map(&e, n).unwrap();
            assert_eq!(m.degree(), n * n);
            let np = e.point_mul(n as i64, &p).unwrap();
            assert_eq!(m.eval(p.x().unwrap()).as_ref(), np.x(), "n = {n}");
        }
    }

    #[test]
    fn three_torsion_root() {
        // (0, 0) has order 3 on y^2 + xy + ty = x^3.
        let z = RatFunc::zero(Q);
        let e = WeierstrassCurve::new([
            RatFunc::one(Q),
            z.clone(),
            RatFunc::var(Q),
            z.clone(),
            z.clone(),
        ])
        .unwrap();
        let p = CurvePoint::Affine(z.clone(), z.clone());
        assert_eq!(e.point_mul(3, &p).unwrap(), CurvePoint::AtInfinity);
        assert!(division_polynomial(&e, 3).unwrap().eval(&z).is_zero());
        let (e2, q) = curve_and_point();
        assert!(!division_polynomial(&e2, 3)
            .unwrap()
            .eval(q.x().unwrap())
            .is_zero());
        assert_ne!(e2.point_mul(3, &q).unwrap(), CurvePoint::AtInfinity);
    }
}

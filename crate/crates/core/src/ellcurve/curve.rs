use std::fmt;

use crate::base::BaseField;
use crate::error::{Error, Result};
use crate::funcfield::{insep_degree, p_power_root, weil_height, RatFunc};

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `k(t)`, with the
/// standard `b`- and `c`-invariants, discriminant and `j` computed up front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    a: [RatFunc; 5],
    b2: RatFunc,
    b4: RatFunc,
    b6: RatFunc,
    b8: RatFunc,
    c4: RatFunc,
    c6: RatFunc,
    disc: RatFunc,
    j: RatFunc,
}

impl WeierstrassCurve {
    /// Builds the curve from `[a1, a2, a3, a4, a6]`.
    pub fn new(a: [RatFunc; 5]) -> Result<Self> {
        let field = a[0].field();
        if let Some(bad) = a.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(
                field.to_string(),
                bad.field().to_string(),
            ));
        }
        let k = |n: i64| RatFunc::from_i64(field, n);
        let [a1, a2, a3, a4, a6] = &a;
        let b2 = &(a1 * a1) + &(&k(4) * a2);
        let b4 = &(&k(2) * a4) + &(a1 * a3);
        let b6 = &(a3 * a3) + &(&k(4) * a6);
        let b8 = &(&(&(&(&(a1 * a1) * a6) + &(&(&k(4) * a2) * a6)) - &(&(a1 * a3) * a4))
            + &(&(a2 * a3) * a3))
            - &(a4 * a4);
        let c4 = &(&b2 * &b2) - &(&k(24) * &b4);
        let c6 = &(&(&(-&b2) * &b2) * &b2) + &(&(&(&k(36) * &b2) * &b4) - &(&k(216) * &b6));
        let disc = &(&(&(-&(&b2 * &b2)) * &b8) - &(&(&k(8) * &b4) * &(&b4 * &b4)))
            + &(&(&(&k(9) * &b2) * &(&b4 * &b6)) - &(&(&k(27) * &b6) * &b6));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        let j = &(&(&c4 * &c4) * &c4) * &disc.inv()?;
        Ok(WeierstrassCurve {
            a,
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        })
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(a4: RatFunc, a6: RatFunc) -> Result<Self> {
        let field = a4.field();
        let z = RatFunc::zero(field);
        Self::new([z.clone(), z.clone(), z, a4, a6])
    }

    /// `y^2 = x (x - 1) (x - t)`.
    pub fn legendre(field: BaseField) -> Self {
        let t = RatFunc::var(field);
        let one = RatFunc::one(field);
        let z = RatFunc::zero(field);
        let a2 = -&(&t + &one);
        Self::new([z.clone(), a2, z.clone(), t, z]).expect("Legendre curve is nonsingular")
    }

    pub fn field(&self) -> BaseField {
        self.a[0].field()
    }

    pub fn characteristic(&self) -> u64 {
        self.field().characteristic()
    }

    pub fn a_invariants(&self) -> &[RatFunc; 5] {
        &self.a
    }

    pub fn a1(&self) -> &RatFunc {
        &self.a[0]
    }
    pub fn a2(&self) -> &RatFunc {
        &self.a[1]
    }
    pub fn a3(&self) -> &RatFunc {
        &self.a[2]
    }
    pub fn a4(&self) -> &RatFunc {
        &self.a[3]
    }
    pub fn a6(&self) -> &RatFunc {
        &self.a[4]
    }
    pub fn b2(&self) -> &RatFunc {
        &self.b2
    }
    pub fn b4(&self) -> &RatFunc {
        &self.b4
    }
    pub fn b6(&self) -> &RatFunc {
        &self.b6
    }
    pub fn b8(&self) -> &RatFunc {
        &self.b8
    }
    pub fn c4(&self) -> &RatFunc {
        &self.c4
    }
    pub fn c6(&self) -> &RatFunc {
        &self.c6
    }
    pub fn discriminant(&self) -> &RatFunc {
        &self.disc
    }

    /// `j = c4^3 / disc`, in lowest terms.
    pub fn j_invariant(&self) -> &RatFunc {
        &self.j
    }

    /// `h_mod(E) = h(j(E))`.
    pub fn modular_height(&self) -> u64 {
        weil_height(&self.j)
    }

    pub fn is_isotrivial(&self) -> bool {
        self.j.is_constant()
    }

    /// Inseparability degree of `j(E)`.
    pub fn j_insep_degree(&self) -> u64 {
        insep_degree(&self.j)
    }

    /// The curve `E^(q)` with every coefficient raised to `q = p^e`.
    pub fn frobenius_twist(&self, e: u32) -> Result<Self> {
        let p = self.characteristic();
        if p == 0 {
            return Err(Error::domain(
                "Frobenius twists need positive characteristic",
            ));
        }
        if e == 0 {
            return Ok(self.clone());
        }
        let q = p.pow(e) as usize;
        Self::new(self.a.clone().map(|c| c.frobenius(q)))
    }

    /// The curve `E^(1/q)` whose `q`-th Frobenius twist is this model, when the
    /// coefficients are `q`-th powers.
    pub fn frobenius_root(&self, e: u32) -> Result<Self> {
        let roots: Vec<RatFunc> = self
            .a
            .iter()
            .map(|c| p_power_root(c, e))
            .collect::<Result<_>>()?;
        Self::new(roots.try_into().expect("five coefficients"))
    }

    /// Applies `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + w` and returns the new model.
    pub fn change_coordinates(
        &self,
        u: &RatFunc,
        r: &RatFunc,
        s: &RatFunc,
        w: &RatFunc,
    ) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::domain("coordinate change needs u != 0"));
        }
        let field = self.field();
        let k = |n: i64| RatFunc::from_i64(field, n);
        let [a1, a2, a3, a4, a6] = &self.a;
        let ui = u.inv()?;
        let ui2 = &ui * &ui;
        let ui3 = &ui2 * &ui;
        let ui4 = &ui2 * &ui2;
        let ui6 = &ui4 * &ui2;
        let n1 = a1 + &(&k(2) * s);
        let n2 = &(&(a2 - &(s * a1)) + &(&k(3) * r)) - &(s * s);
        let n3 = &(a3 + &(r * a1)) + &(&k(2) * w);
        let n4 = &(&(&(a4 - &(s * a3)) + &(&(&k(2) * r) * a2)) - &(&(w + &(r * s)) * a1))
            + &(&(&(&k(3) * r) * r) - &(&(&k(2) * s) * w));
        let n6 = &(&(&(&(a6 + &(r * a4)) + &(&(r * r) * a2)) + &(&(r * r) * r)) - &(w * a3))
            - &(&(w * w) + &(&(r * w) * a1));
        Self::new([&n1 * &ui, &n2 * &ui2, &n3 * &ui3, &n4 * &ui4, &n6 * &ui6])
    }

    /// Substitutes `(x, y)` into `lhs - rhs` of the Weierstrass equation.
    pub fn equation_residual(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        let [a1, a2, a3, a4, a6] = &self.a;
        let lhs = &(y * y) + &(&(&(a1 * x) * y) + &(a3 * y));
        let x2 = x * x;
        let rhs = &(&(&x2 * x) + &(a2 * &x2)) + &(&(a4 * x) + a6);
        &lhs - &rhs
    }

    pub fn contains(&self, x: &RatFunc, y: &RatFunc) -> bool {
        self.equation_residual(x, y).is_zero()
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a1", "a2", "a3", "a4", "a6"];
        let parts: Vec<String> = names
            .iter()
            .zip(self.a.iter())
            .map(|(n, c)| format!("{n} = {c}"))
            .collect();
        write!(f, "[{}] over {}(t)", parts.join(", "), self.field())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::Poly;

    const Q: BaseField = BaseField::Rationals;

    fn poly_rf(field: BaseField, c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_i64s(field, c))
    }

    fn check_relations(e: &WeierstrassCurve) {
        let field = e.field();
        let k = |n: i64| RatFunc::from_i64(field, n);
        let c4cube = &(e.c4() * e.c4()) * e.c4();
        assert_eq!(&k(1728) * e.discriminant(), &c4cube - &(e.c6() * e.c6()));
        assert_eq!(&k(4) * e.b8(), &(e.b2() * e.b6()) - &(e.b4() * e.b4()));
    }

    #[test]
    fn short_curve_invariants() {
        let e = WeierstrassCurve::short(RatFunc::var(Q), RatFunc::zero(Q)).unwrap();
        assert_eq!(e.discriminant(), &poly_rf(Q, &[0, 0, 0, -64]));
        assert_eq!(e.c4(), &poly_rf(Q, &[0, -48]));
        assert_eq!(e.j_invariant(), &RatFunc::from_i64(Q, 1728));
        assert_eq!(e.modular_height(), 0);
        assert!(e.is_isotrivial());
        check_relations(&e);
    }

    #[test]
    fn legendre_invariants() {
        let e = WeierstrassCurve::legendre(Q);
        // 16 t^2 (t - 1)^2
        let disc = Poly::from_i64s(Q, &[0, 0, 1]) * Poly::from_i64s(Q, &[-1, 1]).pow(2);
        assert_eq!(
            e.discriminant(),
            &RatFunc::from_poly(disc.scale(&Q.from_i64(16)))
        );
        let num = Poly::from_i64s(Q, &[1, -1, 1])
            .pow(3)
            .scale(&Q.from_i64(256));
        let den = Poly::from_i64s(Q, &[0, 0, 1]) * Poly::from_i64s(Q, &[-1, 1]).pow(2);
        assert_eq!(e.j_invariant(), &RatFunc::new(num, den).unwrap());
        assert_eq!(e.modular_height(), 6);
        assert!(!e.is_isotrivial());
        check_relations(&e);
    }

    #[test]
    fn singular_rejected() {
        let z = RatFunc::zero(Q);
        assert_eq!(
            WeierstrassCurve::short(z.clone(), z).unwrap_err(),
            Error::SingularCurve
        );
    }

    #[test]
    fn j_zero_curve() {
        let e = WeierstrassCurve::short(RatFunc::zero(Q), RatFunc::var(Q).pow(6)).unwrap();
        assert!(e.j_invariant().is_zero());
    }

    #[test]
    fn frobenius_twist_heights() {
        let f5 = BaseField::PrimeField(5);
        let e = WeierstrassCurve::legendre(f5);
        assert_eq!(e.frobenius_twist(0).unwrap(), e);
        let tw = e.frobenius_twist(1).unwrap();
        assert_eq!(tw.a2(), &poly_rf(f5, &[-1, 0, 0, 0, 0, -1]));
        assert_eq!(tw.a4(), &poly_rf(f5, &[0, 0, 0, 0, 0, 1]));
        assert_eq!(tw.j_invariant(), &e.j_invariant().pow(5));
        assert_eq!(tw.modular_height(), 30);
        assert_eq!(tw.j_insep_degree(), 5);
        assert_eq!(tw.frobenius_root(1).unwrap(), e);
        assert!(WeierstrassCurve::legendre(Q).frobenius_twist(1).is_err());
    }

    #[test]
    fn coordinate_change_preserves_j() {
        let e = WeierstrassCurve::legendre(Q);
        let t = RatFunc::var(Q);
        let u = &t + &RatFunc::from_i64(Q, 2);
        let e2 = e
            .change_coordinates(&u, &t, &RatFunc::from_i64(Q, 3), &t.pow(2))
            .unwrap();
        assert_eq!(e2.j_invariant(), e.j_invariant());
        check_relations(&e2);
        let back = e2
            .change_coordinates(
                &u.inv().unwrap(),
                &RatFunc::zero(Q),
                &RatFunc::zero(Q),
                &RatFunc::zero(Q),
            )
            .unwrap();
        assert_eq!(back.j_invariant(), e.j_invariant());
    }
}

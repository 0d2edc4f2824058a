use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use crate::base::{BaseField, FieldElem};
use crate::error::{Error, Result};

/// Element of `k(t)` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Cancels the common gcd and makes the denominator monic.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let field = den.field();
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(field),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g), den.exact_div(&g))
            }
        };
        let lc = den.leading().unwrap().clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        RatFunc {
            num: p,
            den: Poly::one(field),
        }
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_i64(field: BaseField, n: i64) -> Self {
        Self::constant(field.from_i64(n))
    }

    pub fn zero(field: BaseField) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn one(field: BaseField) -> Self {
        Self::from_poly(Poly::one(field))
    }

    /// The variable `t`.
    pub fn var(field: BaseField) -> Self {
        Self::from_poly(Poly::var(field))
    }

    pub fn field(&self) -> BaseField {
        self.den.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant in `k`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Value as a constant, if it is one.
    pub fn as_constant(&self) -> Option<FieldElem> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, c: &FieldElem) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u64) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Raises to `q = p^e` in characteristic `p` by substituting `t -> t^q`, which is
    /// exact because the coefficients lie in `F_p`.
    pub fn frobenius(&self, q: usize) -> RatFunc {
        debug_assert!(self.field().characteristic() > 0);
        RatFunc {
            num: self.num.inflate(q),
            den: self.den.inflate(q),
        }
    }

    /// Maximum of the numerator and denominator degrees.
    pub fn max_degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn eval(&self, x: &FieldElem) -> Option<FieldElem> {
        let d = self.den.eval(x);
        d.inv().map(|inv| &self.num.eval(x) * &inv)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.num.to_string();
        if self.den.is_one() {
            return f.write_str(&n);
        }
        let d = self.den.to_string();
        let n = if n.contains(' ') { format!("({n})") } else { n };
        let d = if d.contains([' ', '*', '/', '-']) {
            format!("({d})")
        } else {
            d
        };
        write!(f, "{n}/{d}")
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalized(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        // Cross-cancel before multiplying to keep intermediate degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatFunc::normalized(num, den)
    }
}

macro_rules! forward_owned_rf {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned_rf!(Add add, Sub sub, Mul mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: BaseField = BaseField::Rationals;

    fn q(c: &[i64]) -> Poly {
        Poly::from_i64s(Q, c)
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            RatFunc::new(q(&[-1, 0, 1]), q(&[-1, 1])).unwrap(),
            RatFunc::from_poly(q(&[1, 1]))
        );
        assert_eq!(RatFunc::new(q(&[0, 2]), q(&[2])).unwrap(), RatFunc::var(Q));
        assert_eq!(
            RatFunc::new(q(&[0, 1, 0, 1]), q(&[1, 0, 1])).unwrap(),
            RatFunc::var(Q)
        );
        assert_eq!(
            RatFunc::new(q(&[1]), Poly::zero(Q)),
            Err(Error::DivisionByZero)
        );
        let f = RatFunc::new(q(&[3]), q(&[0, 2])).unwrap();
        assert!(f.den().is_monic());
        assert_eq!(
            f.num(),
            &Poly::from_coeffs(Q, vec![&Q.from_i64(3) / &Q.from_i64(2)])
        );
    }

    #[test]
    fn arithmetic_identities() {
        let t = RatFunc::var(Q);
        let one = RatFunc::one(Q);
        let a = (&t + &one).inv().unwrap();
        let b = (&t - &one).inv().unwrap();
        // 1/(t+1) + 1/(t-1) = 2t/(t^2-1)
        let s = &a + &b;
        assert_eq!(s, RatFunc::new(q(&[0, 2]), q(&[-1, 0, 1])).unwrap());
        assert_eq!(&s * &(&t.pow(2) - &one), RatFunc::from_poly(q(&[0, 2])));
        assert!(RatFunc::zero(Q).inv().is_err());
    }
}

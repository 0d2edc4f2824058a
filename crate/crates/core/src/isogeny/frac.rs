use std::fmt;

use super::polyx::PolyX;
use super::ratmap::RatMapX;
use crate::base::BaseField;
use crate::funcfield::RatFunc;

/// Element of `K(x)` as a quotient `num / den` that is not kept in lowest
/// terms. Equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct FracX {
    num: PolyX,
    den: PolyX,
}

impl FracX {
    pub fn new(num: PolyX, den: PolyX) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        FracX { num, den }
    }

    pub fn zero(field: BaseField) -> Self {
        Self::poly(PolyX::zero(field))
    }

    pub fn poly(p: PolyX) -> Self {
        let field = p.field();
        FracX {
            num: p,
            den: PolyX::one(field),
        }
    }

    pub fn num(&self) -> &PolyX {
        &self.num
    }

    pub fn den(&self) -> &PolyX {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn reduced(&self) -> RatMapX {
        RatMapX::new(self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }

    /// `p(n/d) = P(n, d) / d^deg p` with the homogenization `P`.
    pub fn compose_poly(p: &PolyX, x: &RatMapX) -> Self {
        let field = p.field();
        if p.is_zero() {
            return Self::zero(field);
        }
        let k = p.deg0();
        let (n, d) = (x.num(), x.den());
        let mut dpows = vec![PolyX::one(field)];
        for i in 1..=k {
            dpows.push(&dpows[i - 1] * d);
        }
        let mut acc = PolyX::zero(field);
        let mut npow = PolyX::one(field);
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(&npow * &dpows[k - i]).scale(c);
            }
            if i < k {
                npow = &npow * n;
            }
        }
        FracX {
            num: acc,
            den: dpows.pop().unwrap(),
        }
    }

    /// `self(x)` for an x-map `x`.
    pub fn compose(&self, x: &RatMapX) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let a = Self::compose_poly(&self.num, x);
        let b = Self::compose_poly(&self.den, x);
        // a = P / d^i, b = Q / d^j
        let (i, j) = (self.num.deg0(), self.den.deg0());
        let d = x.den();
        let (num, den) = if i >= j {
            (a.num, &b.num * &d.pow((i - j) as u64))
        } else {
            (&a.num * &d.pow((j - i) as u64), b.num)
        };
        FracX { num, den }
    }

    pub fn add(&self, o: &FracX) -> FracX {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            return FracX {
                num: &self.num + &o.num,
                den: self.den.clone(),
            };
        }
        FracX {
            num: &(&self.num * &o.den) + &(&o.num * &self.den),
            den: &self.den * &o.den,
        }
    }

    pub fn sub(&self, o: &FracX) -> FracX {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FracX {
        FracX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &FracX) -> FracX {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.num.field());
        }
        FracX {
            num: &self.num * &o.num,
            den: &self.den * &o.den,
        }
    }

    pub fn scale(&self, c: &RatFunc) -> FracX {
        FracX {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }
}

impl From<&RatMapX> for FracX {
    fn from(r: &RatMapX) -> Self {
        FracX {
            num: r.num().clone(),
            den: r.den().clone(),
        }
    }
}

impl From<RatMapX> for FracX {
    fn from(r: RatMapX) -> Self {
        FracX::from(&r)
    }
}

impl PartialEq for FracX {
    fn eq(&self, o: &FracX) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for FracX {}

impl fmt::Display for FracX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.reduced().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: BaseField = BaseField::Rationals;

    fn x() -> PolyX {
        PolyX::x(Q)
    }

    fn c(n: i64) -> PolyX {
        PolyX::constant(RatFunc::from_i64(Q, n))
    }

    #[test]
    fn equality_ignores_common_factors() {
        let a = FracX::new(&x() * &(&x() - &c(1)), &x() * &x());
        let b = FracX::new(&x() - &c(1), x());
        assert_eq!(a, b);
        assert_eq!(a.reduced(), b.reduced());
        assert_ne!(a, FracX::poly(x()));
    }

    #[test]
    fn compose_matches_reduced_compose() {
        // (x^2 + 1)/(x - 2) at x -> (x + 3)/x^2
        let f = RatMapX::new(&(&x() * &x()) + &c(1), &x() - &c(2)).unwrap();
        let g = RatMapX::new(&x() + &c(3), &x() * &x()).unwrap();
        assert_eq!(FracX::from(&f).compose(&g).reduced(), f.compose(&g));
        let h = RatMapX::new(c(1), &(&x() * &x()) + &c(5)).unwrap();
        assert_eq!(FracX::from(&h).compose(&g).reduced(), h.compose(&g));
    }

    #[test]
    fn ring_operations() {
        let a = FracX::new(c(1), x());
        let b = FracX::new(x(), &x() + &c(1));
        let sum = a.add(&b).reduced();
        assert_eq!(sum, &a.reduced() + &b.reduced());
        assert_eq!(a.mul(&b).reduced(), &a.reduced() * &b.reduced());
        assert!(a.sub(&a).is_zero());
        assert!(a.mul(&FracX::zero(Q)).is_zero());
    }
}

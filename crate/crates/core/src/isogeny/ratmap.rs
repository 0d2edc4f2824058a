use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::polyx::PolyX;
use crate::base::BaseField;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// Element of `K(x)` in lowest terms with monic denominator; used for
/// x-coordinate maps of isogenies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMapX {
    num: PolyX,
    den: PolyX,
}

impl RatMapX {
    pub fn new(num: PolyX, den: PolyX) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: PolyX, den: PolyX) -> Self {
        let field = den.field();
        if num.is_zero() {
            return RatMapX {
                num,
                den: PolyX::one(field),
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
            RatMapX { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatMapX {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Trusts that `num` and `den` are coprime; only normalizes the leading
    /// coefficient.
    pub(crate) fn from_coprime(num: PolyX, den: PolyX) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatMapX { num, den }
        } else {
            let inv = lc.inv().unwrap();
            RatMapX {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: PolyX) -> Self {
        let field = p.field();
        RatMapX {
            num: p,
            den: PolyX::one(field),
        }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_poly(PolyX::constant(c))
    }

    /// The identity map `x`.
    pub fn identity(field: BaseField) -> Self {
        Self::from_poly(PolyX::x(field))
    }

    /// `x^q`.
    pub fn power_of_x(field: BaseField, q: usize) -> Self {
        Self::from_poly(PolyX::monomial(RatFunc::one(field), q))
    }

    pub fn field(&self) -> BaseField {
        self.den.field()
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

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.deg0().max(self.den.deg0())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatMapX) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u64) -> Self {
        RatMapX {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalized(num, &self.den * &self.den)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &RatMapX) -> Self {
        let d = self.degree();
        if inner.den.is_one()
            && inner.num.coeffs().len() > 1
            && inner.num.coeffs()[..inner.num.coeffs().len() - 1]
                .iter()
                .all(RatFunc::is_zero)
        {
            // inner = c x^q
            let q = inner.num.deg0();
            let c = inner.num.leading().unwrap();
            let scale = |p: &PolyX| {
                let mut cp = RatFunc::one(self.field());
                let coeffs = p
                    .coeffs()
                    .iter()
                    .map(|a| {
                        let r = a * &cp;
                        cp = &cp * c;
                        r
                    })
                    .collect();
                PolyX::from_coeffs(self.field(), coeffs).inflate(q)
            };
            return Self::from_coprime(scale(&self.num), scale(&self.den));
        }
        let (gn, gd) = (&inner.num, &inner.den);
        // powers gn^i gd^(d-i)
        let mut gn_pows = vec![PolyX::one(self.field())];
        let mut gd_pows = vec![PolyX::one(self.field())];
        for i in 1..=d {
            gn_pows.push(&gn_pows[i - 1] * gn);
            gd_pows.push(&gd_pows[i - 1] * gd);
        }
        let homog = |p: &PolyX| {
            let mut acc = PolyX::zero(self.field());
            for (i, c) in p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &(&gn_pows[i] * &gd_pows[d - i]).scale(c);
                }
            }
            acc
        };
        // Both maps are reduced and d = max(deg num, deg den), so the
        // homogenized numerator and denominator have no common root.
        Self::from_coprime(homog(&self.num), homog(&self.den))
    }

    /// Value at a point of `K`, `None` at a pole.
    pub fn eval(&self, x: &RatFunc) -> Option<RatFunc> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) * &d.inv().ok()?)
    }

    /// Whether the map lies in `K(x^q)`.
    pub fn is_in_power(&self, q: usize) -> bool {
        self.num.is_in_power(q) && self.den.is_in_power(q)
    }

    /// `r` with `self(x) = r(x^q)`; requires `is_in_power(q)`.
    pub fn deflate(&self, q: usize) -> Self {
        RatMapX {
            num: self.num.deflate(q),
            den: self.den.deflate(q),
        }
    }

    pub fn inflate(&self, q: usize) -> Self {
        RatMapX {
            num: self.num.inflate(q),
            den: self.den.inflate(q),
        }
    }

    pub fn frobenius_coeffs(&self, q: usize) -> Self {
        RatMapX {
            num: self.num.frobenius_coeffs(q),
            den: self.den.frobenius_coeffs(q),
        }
    }
}

impl fmt::Display for RatMapX {
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

impl<'a> Add<&'a RatMapX> for &'a RatMapX {
    type Output = RatMapX;
    fn add(self, rhs: &RatMapX) -> RatMapX {
        if self.den.is_one() && rhs.den.is_one() {
            return RatMapX::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatMapX::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatMapX::normalized(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatMapX> for &'a RatMapX {
    type Output = RatMapX;
    fn sub(self, rhs: &RatMapX) -> RatMapX {
        self + &(-rhs)
    }
}

impl Neg for &RatMapX {
    type Output = RatMapX;
    fn neg(self) -> RatMapX {
        RatMapX {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RatMapX> for &'a RatMapX {
    type Output = RatMapX;
    fn mul(self, rhs: &RatMapX) -> RatMapX {
        if self.den.is_one() && rhs.den.is_one() {
            return RatMapX::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return RatMapX::from_poly(PolyX::zero(self.field()));
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatMapX::from_coprime(num, den)
    }
}

macro_rules! forward_owned_rm {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatMapX> for RatMapX {
            type Output = RatMapX;
            fn $m(self, rhs: RatMapX) -> RatMapX { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned_rm!(Add add, Sub sub, Mul mul);

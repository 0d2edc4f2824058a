use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::base::BaseField;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// Polynomial in `x` over `K = k(t)`, coefficients indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyX {
    field: BaseField,
    coeffs: Vec<RatFunc>,
}

impl PolyX {
    pub fn zero(field: BaseField) -> Self {
        PolyX {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: BaseField) -> Self {
        Self::constant(RatFunc::one(field))
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    /// The variable `x`.
    pub fn x(field: BaseField) -> Self {
        Self::from_coeffs(field, vec![RatFunc::zero(field), RatFunc::one(field)])
    }

    /// `x - r`.
    pub fn linear(r: &RatFunc) -> Self {
        Self::from_coeffs(r.field(), vec![-r, RatFunc::one(r.field())])
    }

    pub fn monomial(c: RatFunc, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![RatFunc::zero(field); k];
        coeffs.push(c);
        Self::from_coeffs(field, coeffs)
    }

    pub fn from_coeffs(field: BaseField, coeffs: Vec<RatFunc>) -> Self {
        let mut p = PolyX { field, coeffs };
        while p.coeffs.last().is_some_and(RatFunc::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &RatFunc) -> PolyX {
        if c.is_zero() {
            return PolyX::zero(self.field);
        }
        PolyX {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> PolyX {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn div_rem(&self, d: &PolyX) -> Result<(PolyX, PolyX)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((PolyX::zero(self.field), self.clone()));
        }
        let lc = d.leading().unwrap();
        let lc_inv = if lc.is_one() { None } else { Some(lc.inv()?) };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFunc::zero(self.field); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = match &lc_inv {
                Some(inv) => &rem[i] * inv,
                None => rem[i].clone(),
            };
            for (j, c) in d.coeffs.iter().enumerate().take(dd) {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &(&q * c);
            }
            rem[i] = RatFunc::zero(self.field);
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        Ok((
            PolyX::from_coeffs(self.field, quot),
            PolyX::from_coeffs(self.field, rem),
        ))
    }

    pub fn rem(&self, d: &PolyX) -> PolyX {
        self.div_rem(d).expect("nonzero divisor").1
    }

    pub fn exact_div(&self, d: &PolyX) -> PolyX {
        let (q, r) = self.div_rem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division in K[x]");
        q
    }

    pub fn divides(&self, other: &PolyX) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyX) -> PolyX {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.deg0() < b.deg0() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                return PolyX::one(self.field);
            }
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> PolyX {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &RatFunc::from_i64(self.field, i as i64))
            .collect();
        PolyX::from_coeffs(self.field, coeffs)
    }

    /// Horner evaluation at a point of `K`.
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> PolyX {
        let mut base = self.clone();
        let mut acc = PolyX::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Whether only exponents divisible by `q` occur.
    pub fn is_in_power(&self, q: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % q == 0 || c.is_zero())
    }

    /// `f(x^q) -> f(x)`; requires `is_in_power(q)`.
    pub fn deflate(&self, q: usize) -> PolyX {
        debug_assert!(self.is_in_power(q));
        PolyX::from_coeffs(self.field, self.coeffs.iter().step_by(q).cloned().collect())
    }

    /// `f(x) -> f(x^q)`.
    pub fn inflate(&self, q: usize) -> PolyX {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RatFunc::zero(self.field); (self.coeffs.len() - 1) * q + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * q] = c.clone();
        }
        PolyX {
            field: self.field,
            coeffs,
        }
    }

    /// Raises every coefficient to the `q`-th power (char `p`, `q` a power of `p`).
    pub fn frobenius_coeffs(&self, q: usize) -> PolyX {
        PolyX {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| c.frobenius(q)).collect(),
        }
    }

    /// Squarefree test: `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> bool {
        let d = self.derivative();
        !d.is_zero() && self.gcd(&d).is_constant()
    }

    /// Largest `t`-degree among the coefficients.
    pub fn t_degree(&self) -> usize {
        self.coeffs
            .iter()
            .map(RatFunc::max_degree)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for PolyX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '/']) => (true, rest.to_string()),
                _ => (false, s),
            };
            let body = if body.contains([' ', '/']) {
                format!("({body})")
            } else {
                body
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            match (body.as_str(), i) {
                (b, 0) => f.write_str(b)?,
                ("1", _) => f.write_str(&mono)?,
                (b, _) => write!(f, "{b}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a PolyX> for &'a PolyX {
    type Output = PolyX;
    fn add(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        PolyX::from_coeffs(self.field, coeffs)
    }
}

impl<'a> Sub<&'a PolyX> for &'a PolyX {
    type Output = PolyX;
    fn sub(self, rhs: &PolyX) -> PolyX {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect();
        PolyX::from_coeffs(self.field, coeffs)
    }
}

impl Neg for &PolyX {
    type Output = PolyX;
    fn neg(self) -> PolyX {
        PolyX {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a PolyX> for &'a PolyX {
    type Output = PolyX;
    fn mul(self, rhs: &PolyX) -> PolyX {
        if self.is_zero() || rhs.is_zero() {
            return PolyX::zero(self.field);
        }
        let mut coeffs = vec![RatFunc::zero(self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        PolyX::from_coeffs(self.field, coeffs)
    }
}

macro_rules! forward_owned_px {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<PolyX> for PolyX {
            type Output = PolyX;
            fn $m(self, rhs: PolyX) -> PolyX { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned_px!(Add add, Sub sub, Mul mul);

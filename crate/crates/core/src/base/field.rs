use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::arith::is_prime;
use crate::error::{Error, Result};

/// The constant field `k` of the function field `k(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseField {
    Rationals,
    PrimeField(u64),
}

impl BaseField {
    /// `F_p`, checking that `p` is prime and fits the widened-product scheme.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::domain(format!(
                "prime {p} exceeds the word-sized field limit"
            )));
        }
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(BaseField::PrimeField(p))
    }

    /// 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::PrimeField(p) => p,
        }
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            BaseField::Rationals => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            BaseField::PrimeField(p) => FieldElem::Mod(ModP::new(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElem {
        match self {
            BaseField::Rationals => FieldElem::Rational(BigRational::from_integer(n.clone())),
            BaseField::PrimeField(p) => {
                let pb = BigInt::from(p);
                let r = ((n % &pb) + &pb) % &pb;
                FieldElem::Mod(ModP::new(r.to_u64().expect("residue fits"), p))
            }
        }
    }

    /// Embeds a rational number; fails in `F_p` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<FieldElem> {
        match self {
            BaseField::Rationals => Ok(FieldElem::Rational(q.clone())),
            BaseField::PrimeField(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                den.inv().map(|d| &num * &d).ok_or(Error::DivisionByZero)
            }
        }
    }

    /// Whether `a` lives in this field.
    pub fn contains(self, a: &FieldElem) -> bool {
        a.field() == self
    }

    /// The nonzero elements of `F_p` in increasing order; `None` over `Q`.
    pub fn nonzero_elements(self) -> Option<impl Iterator<Item = FieldElem>> {
        match self {
            BaseField::Rationals => None,
            BaseField::PrimeField(p) => Some((1..p).map(move |v| FieldElem::Mod(ModP::new(v, p)))),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

/// Residue modulo a word-sized prime, always reduced into `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModP {
    value: u64,
    modulus: u64,
}

impl ModP {
    pub fn new(value: u64, modulus: u64) -> Self {
        ModP {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn mul(self, other: ModP) -> ModP {
        let v = (self.value as u128 * other.value as u128) % self.modulus as u128;
        ModP {
            value: v as u64,
            modulus: self.modulus,
        }
    }

    fn pow(self, mut e: u64) -> ModP {
        let mut base = self;
        let mut acc = ModP::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }
}

/// An element of `Q` or of some `F_p`.
///
/// Arithmetic between elements of different fields is a logic error and
/// panics; every public entry point checks field agreement first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Mod(ModP),
}

impl FieldElem {
    pub fn field(&self) -> BaseField {
        match self {
            FieldElem::Rational(_) => BaseField::Rationals,
            FieldElem::Mod(m) => BaseField::PrimeField(m.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Mod(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Mod(m) => m.value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Mod(m) => FieldElem::Mod(m.pow(m.modulus - 2)),
        })
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        match self {
            FieldElem::Rational(q) => {
                let mut acc = BigRational::one();
                let mut base = q.clone();
                let mut e = e;
                while e > 0 {
                    if e & 1 == 1 {
                        acc *= &base;
                    }
                    base = &base * &base;
                    e >>= 1;
                }
                FieldElem::Rational(acc)
            }
            FieldElem::Mod(m) => FieldElem::Mod(m.pow(e)),
        }
    }

    /// True for rationals that are negative; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, FieldElem::Rational(q) if q.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            FieldElem::Mod(_) => None,
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Mod(m) => write!(f, "{}", m.value),
        }
    }
}

fn mismatch(a: &FieldElem, b: &FieldElem) -> ! {
    panic!("arithmetic between {} and {}", a.field(), b.field())
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Mod(a), FieldElem::Mod(b)) if a.modulus == b.modulus => {
                let s = a.value as u128 + b.value as u128;
                FieldElem::Mod(ModP::new((s % a.modulus as u128) as u64, a.modulus))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a - b),
            (FieldElem::Mod(a), FieldElem::Mod(b)) if a.modulus == b.modulus => {
                FieldElem::Mod(ModP::new(a.value + (a.modulus - b.value), a.modulus))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Mod(a), FieldElem::Mod(b)) if a.modulus == b.modulus => {
                FieldElem::Mod(a.mul(*b))
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    /// Panics on division by zero.
    fn div(self, rhs: &FieldElem) -> FieldElem {
        let inv = rhs.inv().expect("division by zero field element");
        self * &inv
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Mod(a) => FieldElem::Mod(ModP::new(a.modulus - a.value, a.modulus)),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

//! Text formats: rational functions in `t`, polynomials in `x` over `k(t)`,
//! and the key-value curve files.
//!
//! Expression grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := integer | 't' | 'x' | '(' expr ')'
//! ```
//!
//! `x` is only accepted by [`parse_poly_x`]. Error positions are byte offsets.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::base::BaseField;
use crate::ellcurve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::isogeny::PolyX;

const MAX_EXPONENT: u64 = 4096;

trait Value: Sized + Clone {
    fn integer(field: BaseField, n: &BigInt) -> Self;
    fn t(field: BaseField) -> Self;
    fn x(field: BaseField) -> Option<Self>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `None` for a zero divisor; `Some(Err(_))` when division leaves the domain.
    fn div(&self, o: &Self) -> Option<std::result::Result<Self, String>>;
    fn neg(&self) -> Self;
    fn pow(&self, e: u64) -> Self;
}

impl Value for RatFunc {
    fn integer(field: BaseField, n: &BigInt) -> Self {
        RatFunc::constant(field.from_bigint(n))
    }
    fn t(field: BaseField) -> Self {
        RatFunc::var(field)
    }
    fn x(_: BaseField) -> Option<Self> {
        None
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<std::result::Result<Self, String>> {
        self.checked_div(o).ok().map(Ok)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u64) -> Self {
        RatFunc::pow(self, e)
    }
}

impl Value for PolyX {
    fn integer(field: BaseField, n: &BigInt) -> Self {
        PolyX::constant(RatFunc::constant(field.from_bigint(n)))
    }
    fn t(field: BaseField) -> Self {
        PolyX::constant(RatFunc::var(field))
    }
    fn x(field: BaseField) -> Option<Self> {
        Some(PolyX::x(field))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<std::result::Result<Self, String>> {
        if o.is_zero() {
            return None;
        }
        if !o.is_constant() {
            return Some(Err("division by a non-constant polynomial in x".into()));
        }
        let inv = o.coeff(0).inv().expect("nonzero constant");
        Some(Ok(self.scale(&inv)))
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pow(&self, e: u64) -> Self {
        PolyX::pow(self, e)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: BaseField,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn expr<V: Value>(&mut self) -> Result<V> {
        let mut acc = self.term::<V>()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term::<V>()?;
            acc = if c == b'+' {
                acc.add(&rhs)
            } else {
                acc.sub(&rhs)
            };
        }
        Ok(acc)
    }

    fn term<V: Value>(&mut self) -> Result<V> {
        let mut acc = self.factor::<V>()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor::<V>()?;
            acc = if c == b'*' {
                acc.mul(&rhs)
            } else {
                match acc.div(&rhs) {
                    None => return self.err(at, "division by zero"),
                    Some(Err(msg)) => return self.err(at, msg),
                    Some(Ok(q)) => q,
                }
            };
        }
        Ok(acc)
    }

    fn factor<V: Value>(&mut self) -> Result<V> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor::<V>()?.neg());
        }
        let base = self.base::<V>()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.err(at, "expected a non-negative integer exponent");
        }
        match digits.parse::<u64>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => self.err(at, format!("exponent exceeds {MAX_EXPONENT}")),
        }
    }

    fn base<V: Value>(&mut self) -> Result<V> {
        let next = self.peek();
        let at = self.pos;
        match next {
            None => self.err(at, "unexpected end of input"),
            Some(b'0'..=b'9') => {
                let n: BigInt = self.digits().parse().expect("digit string");
                Ok(V::integer(self.field, &n))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(V::t(self.field))
            }
            Some(b'x') => {
                self.pos += 1;
                V::x(self.field).map_or_else(|| self.err(at, "unexpected variable 'x'"), Ok)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr::<V>()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) => self.err(at, format!("unexpected character '{}'", c as char)),
        }
    }
}

fn parse_full<V: Value>(src: &str, field: BaseField) -> Result<V> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        field,
    };
    let v = p.expr::<V>()?;
    if p.peek().is_some() {
        return p.err(p.pos, "trailing input");
    }
    Ok(v)
}

/// Parses a rational function in `t` over `field`.
pub fn parse_ratfunc(src: &str, field: BaseField) -> Result<RatFunc> {
    parse_full(src, field)
}

/// Parses a polynomial in `x` with coefficients in `k(t)`, such as a kernel
/// polynomial `x^2 - t*x + 1/t`.
pub fn parse_poly_x(src: &str, field: BaseField) -> Result<PolyX> {
    parse_full(src, field)
}

/// Parses a point written `x, y` with both coordinates in `k(t)`.
pub fn parse_point(src: &str, field: BaseField) -> Result<(RatFunc, RatFunc)> {
    let Some(comma) = src.find(',') else {
        return Err(Error::Parse {
            pos: src.len(),
            msg: "expected 'x, y'".into(),
        });
    };
    let x = parse_ratfunc(&src[..comma], field)?;
    let y = parse_ratfunc(&src[comma + 1..], field).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + comma + 1,
            msg,
        },
        other => other,
    })?;
    Ok((x, y))
}

/// A curve as written in a curve file: the base field and the five
/// coefficient expressions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveSpec {
    pub field: BaseField,
    /// `a1, a2, a3, a4, a6` as expression strings.
    pub coeffs: [String; 5],
}

const COEFF_KEYS: [&str; 5] = ["a1", "a2", "a3", "a4", "a6"];

impl CurveSpec {
    /// Reads the key-value format:
    ///
    /// ```text
    /// # Legendre curve
    /// field = Fp
    /// p = 5
    /// a2 = "-(t+1)"
    /// a4 = "t"
    /// ```
    ///
    /// `field` is `Q` or `Fp` (then `p` is required). Missing coefficients are
    /// zero, values may be quoted, and `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut field_kind: Option<String> = None;
        let mut p: Option<u64> = None;
        let mut coeffs: [String; 5] = std::array::from_fn(|_| "0".to_string());
        let mut seen = [false; 5];
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let at = offset;
            offset += line.len();
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("expected 'key = value', found '{body}'"),
                });
            };
            let key = key.trim();
            let value = value.trim();
            let value = value
                .strip_prefix('"')
                .and_then(|v| v.strip_suffix('"'))
                .unwrap_or(value);
            match key {
                "field" => field_kind = Some(value.to_string()),
                "p" => {
                    p = Some(value.parse().map_err(|_| Error::Parse {
                        pos: at,
                        msg: format!("invalid prime '{value}'"),
                    })?)
                }
                _ => {
                    let Some(i) = COEFF_KEYS.iter().position(|k| *k == key) else {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!("unknown key '{key}'"),
                        });
                    };
                    if seen[i] {
                        return Err(Error::Parse {
                            pos: at,
                            msg: format!("duplicate key '{key}'"),
                        });
                    }
                    seen[i] = true;
                    coeffs[i] = value.to_string();
                }
            }
        }
        let field = match (field_kind.as_deref(), p) {
            (Some("Q"), None) => BaseField::Rationals,
            (Some("Q"), Some(_)) => return Err(Error::domain("'p' given for field Q")),
            (Some("Fp"), Some(p)) => BaseField::prime_field(p)?,
            (Some("Fp"), None) => return Err(Error::domain("field Fp needs 'p'")),
            (Some(other), _) => return Err(Error::domain(format!("unknown field '{other}'"))),
            (None, _) => return Err(Error::domain("missing 'field'")),
        };
        Ok(CurveSpec { field, coeffs })
    }

    pub fn from_curve(e: &WeierstrassCurve) -> Self {
        CurveSpec {
            field: e.field(),
            coeffs: e.a_invariants().clone().map(|c| c.to_string()),
        }
    }

    pub fn build(&self) -> Result<WeierstrassCurve> {
        let mut a = Vec::with_capacity(5);
        for (key, src) in COEFF_KEYS.iter().zip(&self.coeffs) {
            a.push(parse_ratfunc(src, self.field).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos,
                    msg: format!("{key}: {msg}"),
                },
                other => other,
            })?);
        }
        WeierstrassCurve::new(a.try_into().expect("five coefficients"))
    }
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            BaseField::Rationals => writeln!(f, "field = Q")?,
            BaseField::PrimeField(p) => writeln!(f, "field = Fp\np = {p}")?,
        }
        for (key, value) in COEFF_KEYS.iter().zip(&self.coeffs) {
            writeln!(f, "{key} = \"{value}\"")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    #[test]
    fn legendre_j() {
        let j = parse_ratfunc("256*(t^2-t+1)^3/(t^2*(t-1)^2)", q()).unwrap();
        assert_eq!(&j, WeierstrassCurve::legendre(q()).j_invariant());
        assert_eq!(parse_ratfunc("t", q()).unwrap(), RatFunc::var(q()));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_ratfunc("1/(t-t)", q()),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_ratfunc("t + * 2", q()),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_ratfunc("(t", q()),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_ratfunc("t t", q()),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert!(matches!(
            parse_ratfunc("x", q()),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(parse_ratfunc("t^99999", q()).is_err());
        assert!(parse_ratfunc("", q()).is_err());
    }

    #[test]
    fn unary_minus_and_precedence() {
        let t = RatFunc::var(q());
        let k = |n| RatFunc::from_i64(q(), n);
        assert_eq!(parse_ratfunc("-t^2", q()).unwrap(), -&(&t * &t));
        assert_eq!(parse_ratfunc("--t", q()).unwrap(), t);
        assert_eq!(parse_ratfunc("2 - -3", q()).unwrap(), k(5));
        assert_eq!(
            parse_ratfunc("1/2*t", q()).unwrap(),
            &t * &k(2).inv().unwrap()
        );
        assert_eq!(parse_ratfunc("(1+t)^0", q()).unwrap(), k(1));
    }

    #[test]
    fn prime_field_reduction() {
        let f5 = BaseField::prime_field(5).unwrap();
        assert_eq!(
            parse_ratfunc("7*t + 1/2", f5).unwrap(),
            parse_ratfunc("2*t + 3", f5).unwrap()
        );
        assert!(parse_ratfunc("t/5", f5).is_err());
    }

    #[test]
    fn kernel_polys() {
        let p = parse_poly_x("x^2 - t*x + 1/t", q()).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeff(0), RatFunc::var(q()).inv().unwrap());
        assert!(parse_poly_x("1/x", q()).is_err());
        let half = RatFunc::from_i64(q(), 2).inv().unwrap();
        assert_eq!(parse_poly_x("(x - t)/2", q()).unwrap().coeff(1), half);
    }

    #[test]
    fn points() {
        let (x, y) = parse_point("0, 0", q()).unwrap();
        assert!(x.is_zero() && y.is_zero());
        assert!(matches!(
            parse_point("0, )", q()),
            Err(Error::Parse { pos: 3, .. })
        ));
    }

    #[test]
    fn curve_files() {
        let text = "# Legendre\nfield = Fp\np = 5\na2 = \"-(t+1)\"  # quoted\na4 = t\n";
        let spec = CurveSpec::parse(text).unwrap();
        let e = spec.build().unwrap();
        assert_eq!(
            e,
            WeierstrassCurve::legendre(BaseField::prime_field(5).unwrap())
        );
        let again = CurveSpec::parse(&spec.to_string()).unwrap();
        assert_eq!(again, spec);
        assert!(CurveSpec::parse("field = Fp\n").is_err());
        assert!(CurveSpec::parse("field = Fp\np = 6\n").is_err());
        assert!(CurveSpec::parse("field = Q\nb2 = 1\n").is_err());
        assert!(CurveSpec::parse("field = Q\na1 = 1\na1 = 2\n").is_err());
        assert!(CurveSpec::parse("field = Q\nnonsense\n").is_err());
        assert_eq!(
            CurveSpec::parse("field = Q\n").unwrap().build(),
            Err(Error::SingularCurve)
        );
        let round = CurveSpec::from_curve(&e);
        assert_eq!(round.build().unwrap(), e);
    }

    fn small_poly() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-20i64..20, 1..5)
    }

    fn build(field: BaseField, num: &[i64], den: &[i64]) -> Option<RatFunc> {
        let p = |c: &[i64]| {
            crate::funcfield::Poly::from_coeffs(
                field,
                c.iter().map(|&n| field.from_i64(n)).collect(),
            )
        };
        RatFunc::new(p(num), p(den)).ok()
    }

    proptest! {
        #[test]
        fn print_then_parse(num in small_poly(), den in small_poly(), shift in 1i64..5, pick in 0usize..3) {
            let field = [BaseField::Rationals, BaseField::PrimeField(5), BaseField::PrimeField(7)][pick];
            let Some(f) = build(field, &num, &den) else { return Ok(()) };
            let g = &f * &RatFunc::from_i64(field, shift).inv().unwrap_or(RatFunc::one(field));
            prop_assert_eq!(parse_ratfunc(&g.to_string(), field).unwrap(), g);
        }
    }
}

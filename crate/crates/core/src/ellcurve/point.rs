use std::fmt;

use super::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// A `K`-rational point: the neutral element or an affine point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurvePoint {
    AtInfinity,
    Affine(RatFunc, RatFunc),
}

impl CurvePoint {
    pub fn x(&self) -> Option<&RatFunc> {
        match self {
            CurvePoint::Affine(x, _) => Some(x),
            CurvePoint::AtInfinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::AtInfinity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::AtInfinity => f.write_str("O"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl WeierstrassCurve {
    pub fn is_on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::AtInfinity => true,
            CurvePoint::Affine(x, y) => self.contains(x, y),
        }
    }

    fn require_on_curve(&self, p: &CurvePoint) -> Result<()> {
        if self.is_on_curve(p) {
            Ok(())
        } else {
            Err(Error::domain(format!("point {p} is not on the curve")))
        }
    }

    pub fn point_neg(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.require_on_curve(p)?;
        Ok(self.neg_unchecked(p))
    }

    fn neg_unchecked(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::AtInfinity => CurvePoint::AtInfinity,
            CurvePoint::Affine(x, y) => {
                let ny = &(&(-y) - &(self.a1() * x)) - self.a3();
                CurvePoint::Affine(x.clone(), ny)
            }
        }
    }

    /// Chord-and-tangent addition in full `a1..a6` generality.
    pub fn point_add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.require_on_curve(p)?;
        self.require_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::AtInfinity, _) => return q.clone(),
            (_, CurvePoint::AtInfinity) => return p.clone(),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let field = self.field();
        let k = |n: i64| RatFunc::from_i64(field, n);
        let (a1, a2, a3, a4, a6) = (self.a1(), self.a2(), self.a3(), self.a4(), self.a6());
        let (lambda, nu) = if x1 == x2 {
            let denom = &(&(&k(2) * y1) + &(a1 * x1)) + a3;
            if denom.is_zero() || y1 != y2 {
                // Q = -P, which includes doubling a 2-torsion point.
                return CurvePoint::AtInfinity;
            }
            let inv = denom.inv().expect("nonzero");
            let x1sq = x1 * x1;
            let lnum = &(&(&(&k(3) * &x1sq) + &(&(&k(2) * a2) * x1)) + a4) - &(a1 * y1);
            let nnum = &(&(&(-&(&x1sq * x1)) + &(a4 * x1)) + &(&k(2) * a6)) - &(a3 * y1);
            (&lnum * &inv, &nnum * &inv)
        } else {
            let inv = (x2 - x1).inv().expect("distinct x");
            ((&(y2 - y1)) * &inv, &(&(y1 * x2) - &(y2 * x1)) * &inv)
        };
        let x3 = &(&(&(&lambda * &lambda) + &(a1 * &lambda)) - a2) - &(x1 + x2);
        let y3 = &(&(-&(&(&lambda + a1) * &x3)) - &nu) - a3;
        CurvePoint::Affine(x3, y3)
    }

    /// `[n] P` by double-and-add; negative `n` negates.
    pub fn point_mul(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint> {
        self.require_on_curve(p)?;
        let mut base = if n < 0 {
            self.neg_unchecked(p)
        } else {
            p.clone()
        };
        let mut m = n.unsigned_abs();
        let mut acc = CurvePoint::AtInfinity;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            m >>= 1;
            if m > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// Exact order of `p` if it divides some `n <= bound`.
    pub fn point_order(&self, p: &CurvePoint, bound: u64) -> Result<Option<u64>> {
        self.require_on_curve(p)?;
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add_unchecked(&acc, p);
        }
        Ok(None)
    }
}

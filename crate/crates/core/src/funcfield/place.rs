use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::factor::{coprime_basis, factor_fp, poly_cmp};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::base::BaseField;
use crate::error::{Error, Result};

/// A closed point of the `t`-line.
///
/// Over `F_p` a finite place carries a monic irreducible polynomial. Over `Q`
/// finite places come out of gcd-free refinement and may be products of
/// several irreducibles that every queried function treats identically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    /// A finite place from a monic polynomial, certified irreducible over `F_p`.
    pub fn finite(pi: Poly) -> Result<Place> {
        if pi.is_constant() || !pi.is_monic() {
            return Err(Error::domain(
                "a finite place needs a monic nonconstant polynomial",
            ));
        }
        if let BaseField::PrimeField(_) = pi.field() {
            let fs = factor_fp(&pi)?;
            if fs.len() != 1 || fs[0].1 != 1 {
                return Err(Error::domain(format!("{pi} is not irreducible")));
            }
        }
        Ok(Place::Finite(pi))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(pi) => pi.deg0(),
            Place::Infinity => 1,
        }
    }

    /// A uniformizer: `pi` itself, or `1/t` at infinity.
    pub fn uniformizer(&self, field: BaseField) -> RatFunc {
        match self {
            Place::Finite(pi) => RatFunc::from_poly(pi.clone()),
            Place::Infinity => RatFunc::var(field).inv().expect("t is nonzero"),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => poly_cmp(a, b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(pi) => write!(f, "({pi})"),
            Place::Infinity => write!(f, "(inf)"),
        }
    }
}

/// Finite formal sum of places with nonzero multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, place: Place, mult: i64) {
        let entry = self.support.entry(place.clone()).or_insert(0);
        *entry += mult;
        if *entry == 0 {
            self.support.remove(&place);
        }
    }

    pub fn multiplicity(&self, place: &Place) -> i64 {
        self.support.get(place).copied().unwrap_or(0)
    }

    /// `sum mult * deg(place)`.
    pub fn degree(&self) -> i64 {
        self.support
            .iter()
            .map(|(p, m)| m * p.degree() as i64)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.support.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .support
            .iter()
            .map(|(p, m)| format!("{m}*{p}"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

fn poly_valuation(f: &Poly, pi: &Poly) -> i64 {
    let mut v = 0;
    let mut rest = f.clone();
    loop {
        let (q, r) = rest.div_rem(pi).expect("nonconstant place polynomial");
        if !r.is_zero() {
            return v;
        }
        rest = q;
        v += 1;
    }
}

/// Order of `f` at `v`; `None` stands for `+inf` (the zero function).
pub fn valuation(f: &RatFunc, v: &Place) -> Option<i64> {
    if f.is_zero() {
        return None;
    }
    Some(match v {
        Place::Finite(pi) => poly_valuation(f.num(), pi) - poly_valuation(f.den(), pi),
        Place::Infinity => f.den().deg0() as i64 - f.num().deg0() as i64,
    })
}

/// Finite places from the gcd-free basis of the given polynomials, followed by infinity.
pub fn places_for(polys: &[Poly]) -> Result<Vec<Place>> {
    let nonconst: Vec<Poly> = polys.iter().filter(|p| !p.is_constant()).cloned().collect();
    let mut out: Vec<Place> = coprime_basis(&nonconst)?
        .into_iter()
        .map(Place::Finite)
        .collect();
    out.push(Place::Infinity);
    Ok(out)
}

/// Divisor of poles of a nonzero rational function.
pub fn pole_divisor(f: &RatFunc) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::domain("pole divisor of 0"));
    }
    let mut d = Divisor::new();
    for place in places_for(&[f.den().clone()])? {
        let v = valuation(f, &place).expect("nonzero");
        if v < 0 {
            d.add_term(place, -v);
        }
    }
    Ok(d)
}

/// Weil height `h(f) = deg div_inf(f) = max(deg num, deg den)`.
pub fn weil_height(f: &RatFunc) -> u64 {
    f.max_degree() as u64
}

/// Largest `p^e` with `f` in `k(t)^{p^e} = k(t^{p^e})`; 1 for constants and in
/// characteristic 0.
pub fn insep_degree(f: &RatFunc) -> u64 {
    let p = f.field().characteristic() as usize;
    if p == 0 || f.is_constant() {
        return 1;
    }
    let cap = usize::BITS;
    let e = f
        .num()
        .power_exponent(p, cap)
        .min(f.den().power_exponent(p, cap));
    (p as u64).pow(e)
}

/// The `p^e`-th root of `f`, defined when `insep_degree(f) >= p^e`.
pub fn p_power_root(f: &RatFunc, e: u32) -> Result<RatFunc> {
    let p = f.field().characteristic();
    if e == 0 {
        return Ok(f.clone());
    }
    if p == 0 {
        return Err(Error::domain("p-th roots need positive characteristic"));
    }
    if f.is_constant() {
        // Frobenius is the identity on F_p.
        return Ok(f.clone());
    }
    let q = p.pow(e);
    if insep_degree(f) % q != 0 {
        return Err(Error::domain(format!("{f} is not a {q}-th power in k(t)")));
    }
    RatFunc::new(f.num().deflate(q as usize), f.den().deflate(q as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: BaseField = BaseField::Rationals;
    const F5: BaseField = BaseField::PrimeField(5);

    fn rf(field: BaseField, n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_i64s(field, n), Poly::from_i64s(field, d)).unwrap()
    }

    fn place(field: BaseField, c: &[i64]) -> Place {
        Place::finite(Poly::from_i64s(field, c)).unwrap()
    }

    #[test]
    fn valuation_examples() {
        let at_t = place(Q, &[0, 1]);
        assert_eq!(valuation(&rf(Q, &[0, 0, 1], &[-1, 1]), &at_t), Some(2));
        assert_eq!(
            valuation(&rf(Q, &[0, 0, 0, 1], &[1]), &Place::Infinity),
            Some(-3)
        );
        assert_eq!(valuation(&rf(Q, &[1, 0, 0, 1], &[0, 1]), &at_t), Some(-1));
        assert_eq!(valuation(&RatFunc::zero(Q), &at_t), None);
    }

    #[test]
    fn pole_divisor_examples() {
        let d = pole_divisor(&RatFunc::var(Q)).unwrap();
        assert_eq!(d.multiplicity(&Place::Infinity), 1);
        assert_eq!(d.len(), 1);
        let d = pole_divisor(&rf(Q, &[1, 0, 0, 1], &[0, 1])).unwrap();
        assert_eq!(d.multiplicity(&place(Q, &[0, 1])), 1);
        assert_eq!(d.multiplicity(&Place::Infinity), 2);
        assert_eq!(d.degree(), 3);
        let d = pole_divisor(&RatFunc::from_i64(Q, 5)).unwrap();
        assert!(d.is_empty());
        assert_eq!(d.degree(), 0);
        assert!(pole_divisor(&RatFunc::zero(Q)).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(weil_height(&RatFunc::var(Q)), 1);
        // 256 (t^2 - t + 1)^3 / (t^2 (t - 1)^2)
        let num = Poly::from_i64s(Q, &[1, -1, 1])
            .pow(3)
            .scale(&Q.from_i64(256));
        let den = &Poly::from_i64s(Q, &[0, 0, 1]) * &Poly::from_i64s(Q, &[-1, 1]).pow(2);
        let j = RatFunc::new(num.clone(), den.clone()).unwrap();
        assert_eq!(j.num(), &num);
        assert_eq!(weil_height(&j), 6);
        assert_eq!(pole_divisor(&j).unwrap().degree(), 6);
        assert_eq!(weil_height(&RatFunc::zero(Q)), 0);
    }

    #[test]
    fn insep_examples() {
        assert_eq!(insep_degree(&RatFunc::var(F5)), 1);
        assert_eq!(insep_degree(&rf(F5, &[1, 0, 0, 0, 0, 1], &[1])), 5);
        let mut n = vec![0; 26];
        n[25] = 1;
        let mut d = vec![0; 26];
        d[25] = 1;
        d[0] = 1;
        assert_eq!(insep_degree(&rf(F5, &n, &d)), 25);
        assert_eq!(insep_degree(&RatFunc::from_i64(F5, 3)), 1);
        assert_eq!(insep_degree(&RatFunc::var(Q)), 1);
    }

    #[test]
    fn p_power_root_examples() {
        let f = rf(F5, &[1, 0, 0, 0, 0, 1], &[1]);
        let r = p_power_root(&f, 1).unwrap();
        assert_eq!(r, rf(F5, &[1, 1], &[1]));
        assert_eq!(r.pow(5), f);
        assert_eq!(
            p_power_root(&RatFunc::var(F5), 0).unwrap(),
            RatFunc::var(F5)
        );
        assert!(p_power_root(&rf(F5, &[1, 1], &[1]), 1).is_err());
    }

    #[test]
    fn finite_place_rejects_reducible_over_fp() {
        assert!(Place::finite(Poly::from_i64s(F5, &[-1, 0, 1])).is_err());
        assert!(Place::finite(Poly::from_i64s(F5, &[2, 0, 1])).is_ok());
        assert!(Place::finite(Poly::from_i64s(Q, &[2])).is_err());
    }

    fn arb_rf(field: BaseField, m: i64) -> impl Strategy<Value = RatFunc> {
        (
            proptest::collection::vec(-m..m, 1..6),
            proptest::collection::vec(-m..m, 1..6),
        )
            .prop_filter_map("nonzero", move |(n, d)| {
                let n = Poly::from_i64s(field, &n);
                let d = Poly::from_i64s(field, &d);
                if n.is_zero() || d.is_zero() {
                    None
                } else {
                    RatFunc::new(n, d).ok()
                }
            })
    }

    fn product_formula(f: &RatFunc) -> i64 {
        let places = places_for(&[f.num().clone(), f.den().clone()]).unwrap();
        places
            .iter()
            .map(|v| valuation(f, v).unwrap() * v.degree() as i64)
            .sum()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(250))]
        #[test]
        fn product_formula_q(f in arb_rf(Q, 6)) {
            prop_assert_eq!(product_formula(&f), 0);
        }

        #[test]
        fn product_formula_f5(f in arb_rf(F5, 5)) {
            prop_assert_eq!(product_formula(&f), 0);
        }

        #[test]
        fn height_symmetries(f in arb_rf(Q, 6), n in 1u64..4) {
            prop_assert_eq!(weil_height(&f), weil_height(&f.inv().unwrap()));
            prop_assert_eq!(weil_height(&f.pow(n)), n * weil_height(&f));
            prop_assert_eq!(pole_divisor(&f).unwrap().degree() as u64, weil_height(&f));
        }

        #[test]
        fn insep_and_root(f in arb_rf(BaseField::PrimeField(7), 7)) {
            prop_assume!(!f.is_constant());
            let fp = f.pow(7);
            prop_assert_eq!(insep_degree(&fp), 7 * insep_degree(&f));
            prop_assert_eq!(fp.clone(), f.frobenius(7));
            prop_assert_eq!(p_power_root(&fp, 1).unwrap().pow(7), fp);
        }
    }
}

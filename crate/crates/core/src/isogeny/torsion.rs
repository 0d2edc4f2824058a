//! Rational torsion x-coordinates by a bounded root search in `k(t)`.
//!
//! A root `x = c A / B` of a polynomial with coefficients `p_i` in `k[t]`
//! (lowest terms, `A`, `B` monic) has `A | p_0` and `B | p_d`; for each such
//! pair the unit `c` is a common root of the `t`-coefficients of
//! `sum_i p_i c^i A^i B^(d-i)`. Over `F_p` this is run directly. Over `Q` it is
//! run modulo word-sized primes and the coefficients are lifted by rational
//! reconstruction, so roots whose coefficients have numerators and
//! denominators beyond about `2^15` are missed; every reported root is
//! verified exactly.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::divpoly::{division_polynomials_upto, multiplication_x_map, two_torsion_polynomial};
use super::polyx::PolyX;
use crate::base::{is_prime, BaseField, FieldElem};
use crate::ellcurve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funcfield::{factor_fp, Poly, RatFunc};

/// Default bound on `deg A`, `deg B` in the root search.
pub const DEFAULT_SEARCH_DEGREE: usize = 4;

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b).exact_div(&a.gcd(b)).monic()
}

/// Coefficients in `k[t]` after clearing denominators.
fn integral_coeffs(p: &PolyX) -> Vec<Poly> {
    let field = p.field();
    let l = p
        .coeffs()
        .iter()
        .fold(Poly::one(field), |l, c| poly_lcm(&l, c.den()));
    p.coeffs()
        .iter()
        .map(|c| c.num() * &l.exact_div(c.den()))
        .collect()
}

/// Monic divisors of `f` of degree at most `bound`.
fn monic_divisors(f: &Poly, bound: usize) -> Result<Vec<Poly>> {
    let mut out = vec![Poly::one(f.field())];
    for (g, m) in factor_fp(f)? {
        let mut next = Vec::new();
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..m {
                cur = &cur * &g;
                if cur.deg0() > bound {
                    break;
                }
                next.push(cur.clone());
            }
        }
        out = next;
    }
    Ok(out)
}

fn roots_fp(coeffs: &[Poly], bound: usize) -> Result<Vec<RatFunc>> {
    let field = coeffs[0].field();
    let d = coeffs.len() - 1;
    let mut roots: Vec<RatFunc> = Vec::new();
    let bs = monic_divisors(&coeffs[d], bound)?;
    let as_ = monic_divisors(&coeffs[0], bound)?;
    for b in &bs {
        let b_pows: Vec<Poly> = (0..=d).map(|i| b.pow(i as u64)).collect();
        for a in &as_ {
            if !a.gcd(b).is_one() {
                continue;
            }
            let mut a_pow = Poly::one(field);
            let terms: Vec<Poly> = (0..=d)
                .map(|i| {
                    let t = &(&coeffs[i] * &a_pow) * &b_pows[d - i];
                    a_pow = &a_pow * a;
                    t
                })
                .collect();
            let tdeg = terms.iter().map(Poly::deg0).max().unwrap_or(0);
            let mut g = Poly::zero(field);
            for j in 0..=tdeg {
                let rj = Poly::from_coeffs(field, terms.iter().map(|t| t.coeff(j)).collect());
                g = g.gcd(&rj);
                if g.is_one() {
                    break;
                }
            }
            if g.is_zero() || g.is_constant() {
                continue;
            }
            for (h, _) in factor_fp(&g)? {
                if h.deg0() == 1 {
                    let c = -&h.coeff(0);
                    if !c.is_zero() {
                        let r = RatFunc::new(a.scale(&c), b.clone())?;
                        if !roots.contains(&r) {
                            roots.push(r);
                        }
                    }
                }
            }
        }
    }
    Ok(roots)
}

/// `n / d` with `|n|, |d| <= sqrt(m / 2)` and `n = d r mod m`.
fn rational_reconstruct(r: u64, m: u64) -> Option<BigRational> {
    let bound = ((m / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (m as i128, r as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if s1 == 0 || s1.abs() > bound {
        return None;
    }
    Some(BigRational::new(BigInt::from(r1), BigInt::from(s1)))
}

fn reduce_poly(p: &Poly, target: BaseField) -> Option<Poly> {
    let coeffs: Option<Vec<FieldElem>> = p
        .coeffs()
        .iter()
        .map(|c| target.from_rational(c.as_rational().unwrap()).ok())
        .collect();
    let r = Poly::from_coeffs(target, coeffs?);
    (r.degree() == p.degree()).then_some(r)
}

fn lift_poly(p: &Poly, m: u64) -> Option<Poly> {
    let coeffs: Option<Vec<FieldElem>> = p
        .coeffs()
        .iter()
        .map(|c| match c {
            FieldElem::Mod(v) => rational_reconstruct(v.value(), m).map(FieldElem::Rational),
            FieldElem::Rational(_) => None,
        })
        .collect();
    Some(Poly::from_coeffs(BaseField::Rationals, coeffs?))
}

const LIFT_PRIMES: usize = 2;

fn roots_q(p: &PolyX, coeffs: &[Poly], bound: usize) -> Result<Vec<RatFunc>> {
    let mut roots: Vec<RatFunc> = Vec::new();
    let mut used = 0;
    let mut m: u64 = (1 << 31) - 1;
    while used < LIFT_PRIMES {
        m -= 2;
        if !is_prime(m) {
            continue;
        }
        let target = BaseField::PrimeField(m);
        let reduced: Option<Vec<Poly>> = coeffs.iter().map(|c| reduce_poly(c, target)).collect();
        let Some(reduced) = reduced else { continue };
        if reduced[0].is_zero() || reduced.last().unwrap().is_zero() {
            continue;
        }
        used += 1;
        for r in roots_fp(&reduced, bound)? {
            let (Some(a), Some(b)) = (lift_poly(r.num(), m), lift_poly(r.den(), m)) else {
                continue;
            };
            let Ok(cand) = RatFunc::new(a, b) else {
                continue;
            };
            if !roots.contains(&cand) && p.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
    }
    Ok(roots)
}

/// Roots in `K = k(t)` whose numerator and denominator have degree at most
/// `bound` (see the module notes for the extra height limit over `Q`).
pub fn roots_in_base(p: &PolyX, bound: usize) -> Result<Vec<RatFunc>> {
    if p.is_zero() {
        return Err(Error::domain(
            "the zero polynomial has every element as a root",
        ));
    }
    let field = p.field();
    let mut coeffs = integral_coeffs(p);
    let mut roots = Vec::new();
    if coeffs[0].is_zero() {
        roots.push(RatFunc::zero(field));
        while coeffs[0].is_zero() {
            coeffs.remove(0);
        }
    }
    if coeffs.len() == 1 {
        return Ok(roots);
    }
    let reduced = PolyX::from_coeffs(
        field,
        coeffs.iter().cloned().map(RatFunc::from_poly).collect(),
    );
    let found = match field {
        BaseField::PrimeField(_) => roots_fp(&coeffs, bound)?,
        BaseField::Rationals => roots_q(&reduced, &coeffs, bound)?,
    };
    roots.extend(found);
    roots.sort_by(|a, b| a.to_string().cmp(&b.to_string()));
    Ok(roots)
}

/// `psi_m` up to the 2-torsion factor: roots are x-coordinates of nonzero `m`-torsion.
fn torsion_poly(g: &[PolyX], f: &PolyX, m: usize) -> PolyX {
    if m % 2 == 0 {
        &g[m] * f
    } else {
        g[m].clone()
    }
}

/// x-coordinates in `K` of points of exact order `n` (defined over `K` or a
/// quadratic extension), found by the bounded root search.
pub fn torsion_x_coordinates(e: &WeierstrassCurve, n: usize, bound: usize) -> Result<Vec<RatFunc>> {
    if n < 2 {
        return Err(Error::domain("torsion order must be at least 2"));
    }
    let g = division_polynomials_upto(e, n);
    let f = two_torsion_polynomial(e);
    let candidates = roots_in_base(&torsion_poly(&g, &f, n), bound)?;
    let proper: Vec<usize> = (2..n).filter(|d| n % d == 0).collect();
    Ok(candidates
        .into_iter()
        .filter(|x0| {
            proper
                .iter()
                .all(|&d| !torsion_poly(&g, &f, d).eval(x0).is_zero())
        })
        .collect())
}

/// Kernel polynomial of the cyclic subgroup of order `n` generated by a point
/// with x-coordinate `x0`: `prod_{k=1}^{floor(n/2)} (x - x([k]P))`.
pub fn kernel_poly_from_x(e: &WeierstrassCurve, x0: &RatFunc, n: usize) -> Result<PolyX> {
    let mut psi = PolyX::one(e.field());
    for k in 1..=n / 2 {
        let xk = multiplication_x_map(e, k)?
            .eval(x0)
            .ok_or_else(|| Error::InvalidKernel(format!("x-coordinate has order dividing {k}")))?;
        psi = &psi * &PolyX::linear(&xk);
    }
    if !psi.is_squarefree() && n > 2 {
        return Err(Error::InvalidKernel(
            "multiples of the point repeat; order is smaller than claimed".into(),
        ));
    }
    Ok(psi)
}

//! Squarefree decomposition, factorization over `F_p`, and gcd-free bases.

use std::cmp::Ordering;

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::poly::Poly;
use crate::base::{BaseField, FieldElem};
use crate::error::{Error, Result};

/// Total order on polynomials: by degree, then coefficients from the top.
pub(crate) fn poly_cmp(a: &Poly, b: &Poly) -> Ordering {
    a.coeffs().len().cmp(&b.coeffs().len()).then_with(|| {
        for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
            let o = match (x, y) {
                (FieldElem::Rational(x), FieldElem::Rational(y)) => x.cmp(y),
                (FieldElem::Mod(x), FieldElem::Mod(y)) => x.value().cmp(&y.value()),
                _ => Ordering::Equal,
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

/// Squarefree decomposition `f = lc * prod s_i^i`, returned as `(s_i, i)` with
/// `s_i` monic, nonconstant and pairwise coprime.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    sqf_into(&f.monic(), 1, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| poly_cmp(&a.0, &b.0)));
    out
}

fn sqf_into(f: &Poly, mult: u32, out: &mut Vec<(Poly, u32)>) {
    let p = f.field().characteristic() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if !fac.is_constant() {
            out.push((fac, i * mult));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_constant() {
        // Only reachable in characteristic p: c is a p-th power in F_p[t].
        debug_assert!(p > 0 && c.is_in_power(p));
        sqf_into(&c.deflate(p).monic(), mult * p as u32, out);
    }
}

/// Complete factorization over `F_p` into monic irreducibles with multiplicities,
/// sorted by degree then coefficients.
pub fn factor_fp(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let p = match f.field() {
        BaseField::PrimeField(p) => p,
        BaseField::Rationals => {
            return Err(Error::domain(
                "irreducible factorization is only available over F_p",
            ))
        }
    };
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (s, m) in squarefree_decomposition(f) {
        for (g, d) in distinct_degree(&s, p) {
            for irr in equal_degree(&g, d, p, &mut rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|a, b| poly_cmp(&a.0, &b.0));
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of same-degree irreducibles.
fn distinct_degree(f: &Poly, p: u64) -> Vec<(Poly, usize)> {
    let field = f.field();
    let x = Poly::var(field);
    let pe = BigUint::from(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg0() >= 2 * d {
        h = h.pow_mod(&pe, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_constant() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if !rest.is_constant() {
        let deg = rest.deg0();
        out.push((rest, deg));
    }
    out
}

fn random_poly(field: BaseField, p: u64, deg_bound: usize, rng: &mut StdRng) -> Poly {
    let coeffs = (0..deg_bound)
        .map(|_| field.from_i64(rng.gen_range(0..p) as i64))
        .collect();
    Poly::from_coeffs(field, coeffs)
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(f: &Poly, d: usize, p: u64, rng: &mut StdRng) -> Vec<Poly> {
    let n = f.deg0();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    loop {
        let a = random_poly(field, p, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map F_{2^d} -> F_2.
            let mut acc = a.rem(f);
            let mut term = acc.clone();
            for _ in 1..d {
                term = term.mul_mod(&term, f);
                acc = &acc + &term;
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            &a.pow_mod(&e, f) - &Poly::one(field)
        };
        let g = b.gcd(f);
        if !g.is_constant() && g.deg0() < n {
            let mut left = equal_degree(&g, d, p, rng);
            left.extend(equal_degree(&f.exact_div(&g), d, p, rng));
            return left;
        }
    }
}

/// Pairwise coprime, squarefree, monic polynomials such that every input is a
/// constant times a product of powers of basis elements.
///
/// Over `F_p` the basis consists of the distinct irreducible factors. Over `Q`
/// it is obtained by gcd refinement and its elements need not be irreducible.
pub fn coprime_basis(polys: &[Poly]) -> Result<Vec<Poly>> {
    if polys.iter().any(|p| p.is_zero()) {
        return Err(Error::domain("coprime basis of the zero polynomial"));
    }
    let mut basis: Vec<Poly> = Vec::new();
    match polys.first().map(|p| p.field()) {
        None => return Ok(basis),
        Some(BaseField::PrimeField(_)) => {
            for f in polys {
                for (irr, _) in factor_fp(f)? {
                    if !basis.contains(&irr) {
                        basis.push(irr);
                    }
                }
            }
        }
        Some(BaseField::Rationals) => {
            let mut work: Vec<Poly> = polys
                .iter()
                .flat_map(|f| squarefree_decomposition(f).into_iter().map(|(s, _)| s))
                .collect();
            'refine: loop {
                for i in 0..work.len() {
                    for j in (i + 1)..work.len() {
                        let g = work[i].gcd(&work[j]);
                        if g.is_constant() {
                            continue;
                        }
                        if work[i] == work[j] {
                            work.swap_remove(j);
                            continue 'refine;
                        }
                        let a = work[i].exact_div(&g).monic();
                        let b = work[j].exact_div(&g).monic();
                        work.swap_remove(j);
                        work.swap_remove(i);
                        work.extend([a, b, g].into_iter().filter(|q| !q.is_constant()));
                        continue 'refine;
                    }
                }
                break;
            }
            basis = work;
        }
    }
    basis.sort_by(poly_cmp);
    Ok(basis)
}

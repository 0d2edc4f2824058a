//! Gcd in `Z[t]` from images modulo word-sized primes, combined by CRT.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::base::is_prime;

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd of two nonzero polynomials over `F_p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let inv = invm(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let q = mulm(*a.last().unwrap(), inv, p);
            let off = a.len() - b.len();
            for (j, &c) in b.iter().enumerate() {
                a[off + j] = (a[off + j] + p - mulm(q, c, p)) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    let inv = invm(*a.last().unwrap(), p);
    a.iter().map(|&c| mulm(c, inv, p)).collect()
}

fn primes_below(mut n: u64) -> impl Iterator<Item = u64> {
    std::iter::from_fn(move || loop {
        n -= 2;
        if is_prime(n) {
            return Some(n);
        }
    })
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `a mod b == 0` for integer polynomials with `b` primitive.
fn divides(b: &[BigInt], a: &[BigInt]) -> bool {
    let mut a = a.to_vec();
    let lb = b.last().unwrap();
    while a.len() >= b.len() {
        let la = a.last().unwrap().clone();
        let (q, r) = la.div_rem(lb);
        if !r.is_zero() {
            return false;
        }
        let off = a.len() - b.len();
        for (j, c) in b.iter().enumerate() {
            a[off + j] -= &q * c;
        }
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
    }
    a.is_empty()
}

/// Primitive gcd of two nonzero primitive integer polynomials, sign
/// normalized so that the leading coefficient is positive.
pub(crate) fn gcd_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let la = a.last().unwrap();
    let lb = b.last().unwrap();
    let gamma = la.gcd(lb);
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    let mut last: Option<Vec<BigInt>> = None;
    for p in primes_below((1 << 62) + 1) {
        let bp = BigInt::from(p);
        if (la % &bp).is_zero() || (lb % &bp).is_zero() {
            continue;
        }
        let ap: Vec<u64> = a.iter().map(|c| reduce(c, p)).collect();
        let bq: Vec<u64> = b.iter().map(|c| reduce(c, p)).collect();
        let g = gcd_mod(ap, bq, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        if d > deg {
            continue;
        }
        let gm = reduce(&gamma, p);
        let g: Vec<u64> = g.iter().map(|&c| mulm(c, gm, p)).collect();
        if d < deg {
            deg = d;
            modulus = BigInt::one();
            acc = vec![BigInt::zero(); d + 1];
            last = None;
        }
        // CRT: x = acc + modulus * ((g - acc) * modulus^-1 mod p)
        let minv = invm(reduce(&modulus, p), p);
        for (x, &r) in acc.iter_mut().zip(&g) {
            let cur = reduce(x, p);
            let k = mulm((r + p - cur) % p, minv, p);
            *x += &modulus * BigInt::from(k);
        }
        modulus *= &bp;
        let half = &modulus >> 1;
        let sym: Vec<BigInt> = acc
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        if last.as_ref() == Some(&sym) {
            let ct = content(&sym);
            let mut cand: Vec<BigInt> = sym.iter().map(|c| c / &ct).collect();
            if cand.last().unwrap().is_negative() {
                cand.iter_mut().for_each(|c| *c = -&*c);
            }
            if divides(&cand, a) && divides(&cand, b) {
                return cand;
            }
        }
        last = Some(sym);
    }
    unreachable!("prime supply is unbounded")
}

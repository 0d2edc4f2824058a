use serde::Serialize;

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs with strictly ascending primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u64, u32)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent of `p`, zero if absent.
    pub fn exponent(&self, p: u64) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

const MAX_FACTOR_INPUT: u64 = i64::MAX as u64;

/// Trial-division factorization of `1 <= n <= 2^63 - 1`.
pub fn factor_integer(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    if n > MAX_FACTOR_INPUT {
        return Err(Error::domain(format!("{n} exceeds 2^63 - 1")));
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(Factorization(out))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Legendre symbol `(a / l)` for an odd prime `l`.
pub fn legendre_symbol(a: i64, l: u64) -> Result<i8> {
    if l % 2 == 0 || !is_prime(l) {
        return Err(Error::domain(format!("{l} is not an odd prime")));
    }
    let r = (a as i128).rem_euclid(l as i128) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (l - 1) / 2, l) == 1 {
        1
    } else {
        -1
    })
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factor_integer(n)?;
    Ok(f.iter().map(|&(p, e)| (p - 1) * p.pow(e - 1)).product())
}

pub fn sum_of_divisors(n: u64) -> Result<u64> {
    let f = factor_integer(n)?;
    Ok(f.iter()
        .map(|&(p, e)| (p.pow(e + 1) - 1) / (p - 1))
        .product())
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factor_integer(n)?;
    let mut out = vec![1u64];
    for &(p, e) in f.iter() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        assert_eq!(factor_integer(1).unwrap(), Factorization(vec![]));
        assert_eq!(factor_integer(3721).unwrap(), Factorization(vec![(61, 2)]));
        assert_eq!(
            factor_integer(12).unwrap(),
            Factorization(vec![(2, 2), (3, 1)])
        );
        assert!(factor_integer(0).is_err());
        assert!(factor_integer(u64::MAX).is_err());
        let big = 9_223_372_036_854_775_783u64; // largest prime below 2^63
        assert_eq!(factor_integer(big).unwrap(), Factorization(vec![(big, 1)]));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(-1, 7).unwrap(), -1);
        assert_eq!(legendre_symbol(-3, 7).unwrap(), 1);
        assert_eq!(legendre_symbol(14, 7).unwrap(), 0);
        assert!(legendre_symbol(3, 2).is_err());
        assert!(legendre_symbol(3, 9).is_err());
    }

    #[test]
    fn multiplicative_examples() {
        assert_eq!(euler_phi(7).unwrap(), 6);
        assert_eq!(sum_of_divisors(6).unwrap(), 12);
        assert_eq!(euler_phi(49).unwrap(), 42);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert!(euler_phi(0).is_err());
        assert!(sum_of_divisors(0).is_err());
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn phi_sigma_match_brute_force() {
        for n in 1..=3000u64 {
            let phi = (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64;
            let sigma: u64 = (1..=n).filter(|&d| n % d == 0).sum();
            assert_eq!(euler_phi(n).unwrap(), phi, "phi({n})");
            assert_eq!(sum_of_divisors(n).unwrap(), sigma, "sigma({n})");
            assert_eq!(factor_integer(n).unwrap().value(), n);
        }
    }

    #[test]
    fn legendre_matches_squares() {
        for l in (3..=200u64).filter(|&l| is_prime(l)) {
            let squares: Vec<u64> = (1..l).map(|x| x * x % l).collect();
            for a in -200i64..=200 {
                let r = a.rem_euclid(l as i64) as u64;
                let expected = if r == 0 {
                    0
                } else if squares.contains(&r) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre_symbol(a, l).unwrap(), expected, "({a}/{l})");
            }
        }
    }

    #[test]
    fn primality_against_sieve() {
        let n = 5000;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..=n {
            if sieve[i] {
                for j in (i * i..=n).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), p, "{i}");
        }
    }
}

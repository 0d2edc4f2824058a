//! Combinatorics of the modular curves `X0(N)` and the explicit bounds built on
//! their genus: the index `psi`, elliptic-point and cusp counts, the genus
//! formula, bound scans, and the isogeny-degree and Shafarevich calculators.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::base::{divisors, euler_phi, factor_integer, gcd_u64, is_prime, Factorization};
use crate::error::{Error, Result};

fn factor_positive(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("level must be positive"));
    }
    factor_integer(n)
}

/// `psi(N) = N prod_{l | N} (1 + 1/l)`, the index of `Gamma0(N)` in `SL2(Z)`.
pub fn psi_index(n: u64) -> Result<u64> {
    let f = factor_positive(n)?;
    Ok(f.iter().map(|&(l, e)| (l + 1) * l.pow(e - 1)).product())
}

/// Kronecker symbol `(-1 / l)` and `(-3 / l)`; at `l = 2` these are 0 and -1.
fn kronecker_minus(a: u64, l: u64) -> i64 {
    if l == 2 {
        return if a == 1 { 0 } else { -1 };
    }
    if l == a {
        return 0;
    }
    match a {
        1 if l % 4 == 1 => 1,
        3 if l % 3 == 1 => 1,
        _ => -1,
    }
}

fn elliptic_count(n: u64, a: u64, square: u64) -> Result<u64> {
    let f = factor_positive(n)?;
    if n % square == 0 {
        return Ok(0);
    }
    Ok(f.primes()
        .map(|l| (1 + kronecker_minus(a, l)) as u64)
        .product())
}

/// Number of elliptic points of order 2 on `X0(N)`.
pub fn nu2(n: u64) -> Result<u64> {
    elliptic_count(n, 1, 4)
}

/// Number of elliptic points of order 3 on `X0(N)`.
pub fn nu3(n: u64) -> Result<u64> {
    elliptic_count(n, 3, 9)
}

/// Number of cusps, `sum_{d | N} phi(gcd(d, N/d))`.
pub fn nu_inf(n: u64) -> Result<u64> {
    factor_positive(n)?;
    let mut total = 0;
    for d in divisors(n)? {
        total += euler_phi(gcd_u64(d, n / d))?;
    }
    Ok(total)
}

/// `g = 1 + psi/12 - nu2/4 - nu3/3 - nu_inf/2`, evaluated over `Q`.
pub fn genus_x0(n: u64) -> Result<u64> {
    Ok(profile(n)?.genus)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct X0Profile {
    #[serde(rename = "N")]
    pub n: u64,
    pub psi: u64,
    pub nu2: u64,
    pub nu3: u64,
    pub nu_inf: u64,
    pub genus: u64,
}

pub fn profile(n: u64) -> Result<X0Profile> {
    let psi = psi_index(n)?;
    let (n2, n3, ni) = (nu2(n)?, nu3(n)?, nu_inf(n)?);
    let q = |a: u64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let g = q(1, 1) + q(psi, 12) - q(n2, 4) - q(n3, 3) - q(ni, 2);
    if !g.is_integer() || g < q(0, 1) {
        return Err(Error::Inconsistency(format!(
            "genus formula gives {g} at N = {n}"
        )));
    }
    let genus = u64::try_from(g.to_integer()).expect("genus fits in u64");
    Ok(X0Profile {
        n,
        psi,
        nu2: n2,
        nu3: n3,
        nu_inf: ni,
        genus,
    })
}

/// Levels `N <= 200` with `X0(N)` of genus zero.
pub fn genus_zero_levels() -> Vec<u64> {
    (1..=200)
        .filter(|&n| genus_x0(n).expect("positive level") == 0)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    #[serde(rename = "N")]
    pub n: u64,
    pub genus: u64,
    pub bound: &'static str,
}

/// A level together with an exact ratio, used for worst cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WorstCase {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub ratio: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n_max: u64,
    pub violations: Vec<BoundViolation>,
    /// Largest `N / (49 max{1, g})`.
    pub worst: WorstCase,
    /// Largest `N / max{3721, 13 g}`.
    pub worst_alt: WorstCase,
}

impl BoundReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One row of a genus scan, with the two bound ratios.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    #[serde(flatten)]
    pub profile: X0Profile,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub ratio_49: BigRational,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub ratio_alt: BigRational,
}

fn ratio(a: u64, b: u64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn scan_rows(n_max: u64) -> Result<Vec<ScanRow>> {
    (1..=n_max)
        .map(|n| {
            let profile = profile(n)?;
            let g = profile.genus;
            Ok(ScanRow {
                ratio_49: ratio(n, 49 * g.max(1)),
                ratio_alt: ratio(n, (13 * g).max(3721)),
                profile,
            })
        })
        .collect()
}

/// `N <= 12 g + 24 sqrt(12 g) + 144`, decided by squaring.
fn sqrt_bound_holds(n: u64, g: u64) -> bool {
    let slack = n as i128 - 12 * g as i128 - 144;
    slack <= 0 || slack * slack <= 576 * 12 * g as i128
}

/// Checks `N <= 49 max{1, g}` on `1..=n_max`, `49 g >= N` from 300 on, and the
/// two alternative bounds `N <= max{3721, 13 g}` and `N <= 12g + 24 sqrt(12g) + 144`.
pub fn scan_genus_bounds(n_max: u64) -> Result<BoundReport> {
    if n_max == 0 {
        return Err(Error::domain("scan range must be nonempty"));
    }
    let rows = scan_rows(n_max)?;
    Ok(report_from_rows(n_max, &rows))
}

pub fn report_from_rows(n_max: u64, rows: &[ScanRow]) -> BoundReport {
    let mut violations = Vec::new();
    let mut worst = WorstCase {
        n: 1,
        ratio: ratio(0, 1),
    };
    let mut worst_alt = worst.clone();
    for row in rows {
        let (n, g) = (row.profile.n, row.profile.genus);
        let mut fail = |bound| violations.push(BoundViolation { n, genus: g, bound });
        if n > 49 * g.max(1) {
            fail("N <= 49 max{1, g}");
        }
        if n >= 300 && 49 * g < n {
            fail("49 g >= N");
        }
        if n > (13 * g).max(3721) {
            fail("N <= max{3721, 13 g}");
        }
        if !sqrt_bound_holds(n, g) {
            fail("N <= 12 g + 24 sqrt(12 g) + 144");
        }
        if row.ratio_49 > worst.ratio {
            worst = WorstCase {
                n,
                ratio: row.ratio_49.clone(),
            };
        }
        if row.ratio_alt > worst_alt.ratio {
            worst_alt = WorstCase {
                n,
                ratio: row.ratio_alt.clone(),
            };
        }
    }
    BoundReport {
        n_max,
        violations,
        worst,
        worst_alt,
    }
}

/// Writes scan rows as CSV with header `N,psi,nu2,nu3,nu_inf,genus,ratio_49,ratio_alt`.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::domain(format!("csv export failed: {e}"));
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "N",
        "psi",
        "nu2",
        "nu3",
        "nu_inf",
        "genus",
        "ratio_49",
        "ratio_alt",
    ])
    .map_err(io)?;
    for r in rows {
        let p = &r.profile;
        w.write_record([
            p.n.to_string(),
            p.psi.to_string(),
            p.nu2.to_string(),
            p.nu3.to_string(),
            p.nu_inf.to_string(),
            p.genus.to_string(),
            r.ratio_49.to_string(),
            r.ratio_alt.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::domain(format!("csv export failed: {e}")))
}

/// `(p, k)` with `d = p^k`, `p = 1` when `d = 1`.
fn prime_power(d: u64) -> Result<(u64, u32)> {
    match factor_positive(d)?.0.as_slice() {
        [] => Ok((1, 0)),
        [(p, k)] => Ok((*p, *k)),
        _ => Err(Error::domain(format!("{d} is not a prime power"))),
    }
}

/// `49 max{1, g} max{d1/d2, d2/d1}` for inseparability degrees `d1, d2` of
/// the two j-invariants; the constant drops to 25 when `refined_genus0` and `g = 0`.
pub fn isogeny_degree_bound(g: u64, d1: u64, d2: u64, refined_genus0: bool) -> Result<u64> {
    let (p1, _) = prime_power(d1)?;
    let (p2, _) = prime_power(d2)?;
    if p1 != 1 && p2 != 1 && p1 != p2 {
        return Err(Error::domain(format!(
            "{d1} and {d2} are powers of different primes"
        )));
    }
    let ratio = d1.max(d2) / d1.min(d2);
    let constant = if refined_genus0 && g == 0 {
        25
    } else {
        49 * g.max(1)
    };
    constant
        .checked_mul(ratio)
        .ok_or_else(|| Error::domain("bound overflows u64"))
}

/// `7^4 max{1, g}^2`, times `log_p M + 1` in characteristic `p > 0`.
pub fn shafarevich_bound(g: u64, m: u64, p: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("M must be positive"));
    }
    let base = 2401u64
        .checked_mul(g.max(1).pow(2))
        .ok_or_else(|| Error::domain("bound overflows u64"))?;
    if p == 0 {
        return Ok(base);
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let (q, k) = prime_power(m)?;
    if q != 1 && q != p {
        return Err(Error::domain(format!("{m} is not a power of {p}")));
    }
    base.checked_mul(k as u64 + 1)
        .ok_or_else(|| Error::domain("bound overflows u64"))
}

/// Table of `sum_{d <= X, gcd(d, p) = 1} psi(d)` for `X = 0..=x_max`, with `p = 0`
/// meaning no restriction. `psi` is sieved.
pub fn cyclic_subgroup_counts(x_max: u64, p: u64) -> Vec<u64> {
    let n = x_max as usize;
    let mut psi: Vec<u64> = (0..=x_max).collect();
    for l in 2..=n {
        if psi[l] == l as u64 && is_prime(l as u64) {
            for m in (l..=n).step_by(l) {
                psi[m] = psi[m] / l as u64 * (l as u64 + 1);
            }
        }
    }
    let mut out = vec![0u64; n + 1];
    for d in 1..=n {
        let keep = p == 0 || d as u64 % p != 0;
        out[d] = out[d - 1] + if keep { psi[d] } else { 0 };
    }
    out
}

/// Number of cyclic subgroups of `E[d]`, `d <= X` prime to `p`, counted with
/// `psi(d)` per order.
pub fn cyclic_subgroup_count(x: u64, p: u64) -> Result<u64> {
    if x == 0 {
        return Err(Error::domain("X must be positive"));
    }
    if p != 0 && !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let mut total = 0;
    for d in 1..=x {
        if p == 0 || d % p != 0 {
            total += psi_index(d)?;
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub name: &'static str,
    pub applicable: bool,
    pub holds: bool,
    pub tight: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofChainReport {
    pub profile: X0Profile,
    pub steps: Vec<ChainStep>,
}

impl ProofChainReport {
    pub fn ok(&self) -> bool {
        self.steps.iter().all(|s| !s.applicable || s.holds)
    }
}

/// Compares `lhs <= rhs` where one side may carry `sqrt(N)`; both sides are
/// given squared-free as `(a, b)` meaning `a + b sqrt(N)`.
fn le_with_sqrt(n: i128, lhs: (i128, i128), rhs: (i128, i128)) -> (bool, bool) {
    // a + b sqrt(N) >= 0 with a = rhs.0 - lhs.0, b = rhs.1 - lhs.1
    let (a, b) = (rhs.0 - lhs.0, rhs.1 - lhs.1);
    let sign = match (a.signum(), b.signum()) {
        (0, 0) => 0,
        (x, y) if x >= 0 && y >= 0 => 1,
        (x, y) if x <= 0 && y <= 0 => -1,
        _ => (a * a - b * b * n).signum() * a.signum(),
    };
    (sign >= 0, sign == 0)
}

/// Evaluates each inequality of the genus lower-bound argument at level `N`.
pub fn proof_chain_report(n: u64) -> Result<ProofChainReport> {
    let pr = profile(n)?;
    let (nn, psi, n2, n3, ni, g) = (
        n as i128,
        pr.psi as i128,
        pr.nu2 as i128,
        pr.nu3 as i128,
        pr.nu_inf as i128,
        pr.genus as i128,
    );
    let mut steps = Vec::new();
    let mut push = |name, applicable, (holds, tight): (bool, bool), lhs: String, rhs: String| {
        steps.push(ChainStep {
            name,
            applicable,
            holds,
            tight,
            lhs,
            rhs,
        })
    };
    // nu_inf sqrt(N) <= psi
    push(
        "nu_inf <= psi / sqrt(N)",
        true,
        le_with_sqrt(nn, (0, ni), (psi, 0)),
        format!("{ni}*sqrt({nn})"),
        psi.to_string(),
    );
    let m = n2.max(n3);
    push(
        "max{nu2, nu3} <= nu_inf",
        true,
        (m <= ni, m == ni),
        m.to_string(),
        ni.to_string(),
    );
    // 12 g >= 12 + psi - 7 max{nu2, nu3} - 6 nu_inf
    let r1 = 12 + psi - 7 * m - 6 * ni;
    push(
        "12 g >= 12 + psi - 7 max - 6 nu_inf",
        true,
        (12 * g >= r1, 12 * g == r1),
        (12 * g).to_string(),
        r1.to_string(),
    );
    let r2 = 12 + psi - 13 * ni;
    push(
        "12 g >= 12 + psi - 13 nu_inf",
        true,
        (12 * g >= r2, 12 * g == r2),
        (12 * g).to_string(),
        r2.to_string(),
    );
    // 12 g >= 12 + psi (1 - 13 / sqrt(N)), times sqrt(N): 12 g sqrt(N) >= 12 sqrt(N) + psi sqrt(N) - 13 psi
    push(
        "12 g >= 12 + psi (1 - 13/sqrt(N))",
        true,
        le_with_sqrt(nn, (-13 * psi, 12 + psi), (0, 12 * g)),
        format!("{}*sqrt({nn})", 12 * g),
        format!("{}*sqrt({nn}) - {}", 12 + psi, 13 * psi),
    );
    push(
        "psi >= N",
        true,
        (psi >= nn, psi == nn),
        psi.to_string(),
        nn.to_string(),
    );
    // 12 (g - 1) >= N - 13 sqrt(N)
    push(
        "12 (g - 1) >= N - 13 sqrt(N)",
        nn >= 169,
        le_with_sqrt(nn, (nn, -13), (12 * (g - 1), 0)),
        (12 * (g - 1)).to_string(),
        format!("{nn} - 13*sqrt({nn})"),
    );
    // 12 g > N - 13 sqrt(N) for N >= 297; reported as the non-strict check
    push(
        "12 g >= N - 13 sqrt(N)",
        nn >= 297,
        le_with_sqrt(nn, (nn, -13), (12 * g, 0)),
        (12 * g).to_string(),
        format!("{nn} - 13*sqrt({nn})"),
    );
    push(
        "49 g >= N",
        nn >= 300,
        (49 * g >= nn, 49 * g == nn),
        (49 * g).to_string(),
        nn.to_string(),
    );
    let cap = 49 * g.max(1);
    push(
        "N <= 49 max{1, g}",
        true,
        (nn <= cap, nn == cap),
        nn.to_string(),
        cap.to_string(),
    );
    Ok(ProofChainReport { profile: pr, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Cyclic subgroups of order `n` in `(Z/n)^2`: elements of order `n`
    /// divided by `phi(n)`.
    fn cyclic_subgroups_brute(n: u64) -> u64 {
        let mut order_n = 0;
        for a in 0..n {
            for b in 0..n {
                if gcd_u64(gcd_u64(a, b), n) == 1 {
                    order_n += 1;
                }
            }
        }
        let phi = (1..=n).filter(|&k| gcd_u64(k, n) == 1).count() as u64;
        order_n / phi
    }

    fn roots_brute(n: u64, f: impl Fn(u64) -> u64) -> u64 {
        (0..n).filter(|&x| f(x) % n == 0).count() as u64
    }

    #[test]
    fn index_examples() {
        assert_eq!(psi_index(1).unwrap(), 1);
        assert_eq!(psi_index(49).unwrap(), 56);
        assert_eq!(psi_index(6).unwrap(), 12);
        assert_eq!(cyclic_subgroups_brute(49), 56);
        assert_eq!(cyclic_subgroups_brute(6), 12);
        assert!(psi_index(0).is_err());
    }

    #[test]
    fn elliptic_and_cusp_examples() {
        assert_eq!(nu2(49).unwrap(), 0);
        assert_eq!(nu3(49).unwrap(), 2);
        assert_eq!(nu2(4).unwrap(), 0);
        assert_eq!(roots_brute(49, |x| x * x + 1), 0);
        assert_eq!(roots_brute(49, |x| x * x + x + 1), 2);
        assert_eq!(nu_inf(1).unwrap(), 1);
        assert_eq!(nu_inf(49).unwrap(), 8);
        assert_eq!(nu_inf(3721).unwrap(), 62);
    }

    #[test]
    fn closed_forms_match_brute_force() {
        for n in 1..=300 {
            assert_eq!(psi_index(n).unwrap(), cyclic_subgroups_brute(n), "psi({n})");
            assert_eq!(nu2(n).unwrap(), roots_brute(n, |x| x * x + 1), "nu2({n})");
            assert_eq!(
                nu3(n).unwrap(),
                roots_brute(n, |x| x * x + x + 1),
                "nu3({n})"
            );
        }
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus_x0(49).unwrap(), 1);
        assert_eq!(genus_x0(3721).unwrap(), 284);
        assert_eq!(genus_x0(25).unwrap(), 0);
        assert_eq!(genus_x0(11).unwrap(), 1);
        let zeros = genus_zero_levels();
        assert_eq!(
            zeros,
            vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25]
        );
    }

    #[test]
    fn scans() {
        let r = scan_genus_bounds(296).unwrap();
        assert!(r.ok());
        assert_eq!(r.worst.n, 49);
        let r = scan_genus_bounds(5000).unwrap();
        assert!(r.ok(), "{:?}", r.violations);
        assert_eq!(r.worst.n, 49);
        assert_eq!(r.worst_alt.n, 3721);
        assert_eq!(r.worst_alt.ratio, ratio(1, 1));
    }

    #[test]
    fn csv_export() {
        let rows = scan_rows(3).unwrap();
        let mut buf = Vec::new();
        write_scan_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("N,psi,nu2,nu3,nu_inf,genus,ratio_49,ratio_alt")
        );
        assert_eq!(lines.next(), Some("1,1,1,1,1,0,1/49,1/3721"));
        assert_eq!(lines.count(), 2);
    }

    #[test]
    fn bound_calculators() {
        assert_eq!(isogeny_degree_bound(0, 1, 1, true).unwrap(), 25);
        assert_eq!(isogeny_degree_bound(0, 1, 1, false).unwrap(), 49);
        assert_eq!(isogeny_degree_bound(2, 25, 5, false).unwrap(), 490);
        assert!(isogeny_degree_bound(0, 2, 3, false).is_err());
        assert!(isogeny_degree_bound(0, 6, 1, false).is_err());
        assert_eq!(shafarevich_bound(0, 1, 0).unwrap(), 2401);
        assert_eq!(shafarevich_bound(1, 125, 5).unwrap(), 9604);
        assert_eq!(shafarevich_bound(3, 1, 0).unwrap(), 21609);
        assert!(shafarevich_bound(0, 10, 5).is_err());
    }

    #[test]
    fn cyclic_counts() {
        let brute = |x: u64, p: u64| -> u64 {
            (1..=x)
                .filter(|&d| p == 0 || d % p != 0)
                .map(cyclic_subgroups_brute)
                .sum()
        };
        assert_eq!(brute(10, 0), 82);
        assert_eq!(brute(10, 2), 31);
        assert_eq!(cyclic_subgroup_count(10, 0).unwrap(), 82);
        assert_eq!(cyclic_subgroup_count(10, 2).unwrap(), 31);
        assert_eq!(cyclic_subgroup_count(1, 0).unwrap(), 1);
        for p in [0, 2, 3, 5, 7] {
            let table = cyclic_subgroup_counts(200, p);
            for x in 1..=200 {
                assert_eq!(table[x as usize], cyclic_subgroup_count(x, p).unwrap());
            }
        }
    }

    #[test]
    fn proof_chain() {
        let r = proof_chain_report(49).unwrap();
        assert!(r.ok());
        let step = r
            .steps
            .iter()
            .find(|s| s.name == "max{nu2, nu3} <= nu_inf")
            .unwrap();
        assert_eq!((step.lhs.as_str(), step.rhs.as_str()), ("2", "8"));
        let tight = r
            .steps
            .iter()
            .find(|s| s.name == "N <= 49 max{1, g}")
            .unwrap();
        assert!(tight.tight);
        let r = proof_chain_report(1).unwrap();
        assert!(r.ok());
        for n in 300..=400 {
            assert!(proof_chain_report(n).unwrap().ok(), "N = {n}");
        }
        for n in 1..=3000 {
            assert!(proof_chain_report(n).unwrap().ok(), "N = {n}");
        }
    }

    proptest::proptest! {
        #[test]
        fn genus_formula_is_integral(n in 1u64..100_000) {
            let p = profile(n).unwrap();
            let lhs = 12 * (p.genus as i64 - 1) + 3 * p.nu2 as i64 + 4 * p.nu3 as i64 + 6 * p.nu_inf as i64;
            proptest::prop_assert_eq!(lhs, p.psi as i64);
            proptest::prop_assert!(p.psi >= n);
            proptest::prop_assert_eq!(p.psi == n, n == 1);
        }
    }
}

//! Executable forms of the height laws for isogenies and Frobenius twists.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::map::Isogeny;
use super::polyx::PolyX;
use super::torsion::{kernel_poly_from_x, torsion_x_coordinates, DEFAULT_SEARCH_DEGREE};
use super::velu::velu_from_kernel_poly;
use crate::ellcurve::{differential_height, non_semistable_degree, WeierstrassCurve};
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// `deg_ins(phi^) = deg_ins(phi) deg_ins j(E1) / deg_ins j(E2)`.
pub fn insep_degree_of_dual(phi: &Isogeny) -> Result<u64> {
    let (e1, e2) = (phi.domain(), phi.codomain());
    if e1.is_isotrivial() || e2.is_isotrivial() {
        return Err(Error::domain(
            "the dual inseparable degree formula needs non-isotrivial curves",
        ));
    }
    let num = phi.insep_degree() * e1.j_insep_degree();
    let den = e2.j_insep_degree();
    if num % den != 0 {
        return Err(Error::Inconsistency(format!(
            "{num}/{den} is not an integer"
        )));
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightLawReport {
    /// `h_mod(E2) * deg_ins(phi^)`.
    pub lhs: u64,
    /// `h_mod(E1) * deg_ins(phi)`.
    pub rhs: u64,
    pub insep_degree: u64,
    pub dual_insep_degree: u64,
    /// The dual degree predicted from the j-invariants agrees with the tracked one.
    pub dual_degrees_agree: bool,
    pub ok: bool,
}

/// `h_mod(E2) deg_ins(phi^) = h_mod(E1) deg_ins(phi)`.
pub fn verify_height_theorem(phi: &Isogeny) -> Result<HeightLawReport> {
    if phi.domain().is_isotrivial() || phi.codomain().is_isotrivial() {
        return Err(Error::domain(
            "the height law is stated for non-isotrivial curves",
        ));
    }
    let lhs = phi.codomain().modular_height() * phi.dual_insep_degree();
    let rhs = phi.domain().modular_height() * phi.insep_degree();
    let dual_degrees_agree = insep_degree_of_dual(phi).ok() == Some(phi.dual_insep_degree());
    Ok(HeightLawReport {
        lhs,
        rhs,
        insep_degree: phi.insep_degree(),
        dual_insep_degree: phi.dual_insep_degree(),
        dual_degrees_agree,
        ok: lhs == rhs && dual_degrees_agree,
    })
}

#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub order: usize,
    pub kernel_poly: PolyX,
    pub codomain: WeierstrassCurve,
    pub modular_height: u64,
}

#[derive(Clone, Debug, Default)]
pub struct EqualHeightFamily {
    pub members: Vec<FamilyMember>,
    pub warnings: Vec<String>,
}

impl EqualHeightFamily {
    /// Pairwise distinct j-invariants.
    pub fn distinct_j(&self) -> bool {
        let js: Vec<&RatFunc> = self
            .members
            .iter()
            .map(|m| m.codomain.j_invariant())
            .collect();
        js.iter()
            .enumerate()
            .all(|(i, a)| js[i + 1..].iter().all(|b| a != b))
    }
}

/// Quotients of `E` by cyclic subgroups of the requested orders (prime to
/// `p`), keeping one curve per j-invariant.
pub fn equal_height_family(e: &WeierstrassCurve, orders: &[usize]) -> Result<EqualHeightFamily> {
    if e.is_isotrivial() {
        return Err(Error::domain(
            "equal-height families are built on non-isotrivial curves",
        ));
    }
    let p = e.characteristic() as usize;
    let mut fam = EqualHeightFamily::default();
    for &n in orders {
        if n < 2 || (p != 0 && n % p == 0) {
            fam.warnings.push(format!(
                "order {n} skipped: must be at least 2 and prime to the characteristic"
            ));
            continue;
        }
        let xs = torsion_x_coordinates(e, n, DEFAULT_SEARCH_DEGREE)?;
        if xs.is_empty() {
            fam.warnings.push(format!(
                "no kernel of order {n} found by the bounded search"
            ));
            continue;
        }
        let mut kernels: Vec<PolyX> = Vec::new();
        for x0 in &xs {
            let psi = kernel_poly_from_x(e, x0, n)?;
            if !kernels.contains(&psi) {
                kernels.push(psi);
            }
        }
        for psi in kernels {
            let phi = velu_from_kernel_poly(e, &psi)?;
            let cod = phi.codomain().clone();
            if fam
                .members
                .iter()
                .any(|m| m.codomain.j_invariant() == cod.j_invariant())
            {
                fam.warnings
                    .push(format!("kernel {psi} repeats an earlier j-invariant"));
                continue;
            }
            fam.members.push(FamilyMember {
                order: n,
                kernel_poly: psi,
                modular_height: cod.modular_height(),
                codomain: cod,
            });
        }
    }
    Ok(fam)
}

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistHeightReport {
    pub q: u64,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub alpha: BigRational,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub h_diff: BigRational,
    #[serde(serialize_with = "crate::ser::ratio")]
    pub h_diff_twist: BigRational,
    pub semistable: bool,
    pub ok: bool,
}

/// `alpha^-1 q h_diff(E) <= h_diff(E^(q)) <= q h_diff(E)` with
/// `alpha = 1 + 12 deg A(E) / h_mod(E)`, and equality when `E` is semistable.
pub fn check_twist_height_inequality(e: &WeierstrassCurve, exp: u32) -> Result<TwistHeightReport> {
    let p = e.characteristic();
    if p < 5 {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    if e.is_isotrivial() {
        return Err(Error::domain(
            "the twist inequality is stated for non-isotrivial curves",
        ));
    }
    let q = p.pow(exp);
    let twist = e.frobenius_twist(exp)?;
    let h = differential_height(e)?;
    let ht = differential_height(&twist)?;
    let hmod = e.modular_height();
    let alpha = ratio(hmod + 12 * non_semistable_degree(e)?, hmod);
    let qh = &h * BigInt::from(q);
    let semistable = e.is_semistable()?;
    let mut ok = &qh / &alpha <= ht && ht <= qh;
    if semistable {
        ok &= ht == qh;
    }
    Ok(TwistHeightReport {
        q,
        alpha,
        h_diff: h,
        h_diff_twist: ht,
        semistable,
        ok,
    })
}

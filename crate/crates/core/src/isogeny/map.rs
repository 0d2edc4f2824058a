use std::fmt;

use super::divpoly::{cubic, linear_y_coeff, multiplication_x_map, two_torsion_polynomial};
use super::frac::FracX;
use super::linsolve::solve_composition;
use super::polyx::PolyX;
use super::ratmap::RatMapX;
use crate::base::gcd_u64;
use crate::ellcurve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// How an isogeny was produced; used for display and for the cheap dual rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsogenyKind {
    Identity,
    Velu,
    /// `F_{p^e}`.
    Frobenius(u32),
    /// `V_{p^f}`.
    Verschiebung(u32),
    /// `[n]`.
    Multiplication(u64),
    Composite,
    Dual,
    SeparablePart,
    Biseparable,
}

impl fmt::Display for IsogenyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsogenyKind::Identity => f.write_str("identity"),
            IsogenyKind::Velu => f.write_str("velu"),
            IsogenyKind::Frobenius(e) => write!(f, "frobenius(e={e})"),
            IsogenyKind::Verschiebung(e) => write!(f, "verschiebung(f={e})"),
            IsogenyKind::Multiplication(n) => write!(f, "multiplication({n})"),
            IsogenyKind::Composite => f.write_str("composite"),
            IsogenyKind::Dual => f.write_str("dual"),
            IsogenyKind::SeparablePart => f.write_str("separable-part"),
            IsogenyKind::Biseparable => f.write_str("biseparable"),
        }
    }
}

/// `Y = c1(x) y + c0(x)`.
pub type YMap = (FracX, FracX);

/// An isogeny `domain -> codomain` given by its x-coordinate map.
///
/// `degree` is the degree of the reduced x-map and splits as
/// `sep_degree * insep_degree`, the second being read off as the largest
/// `p^e` with `x_map` in `K(x^{p^e})`. `dual_insep_degree` is carried along
/// from the construction (Frobenius has separable dual, Verschiebung does not,
/// composites multiply) rather than derived from the j-invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isogeny {
    domain: WeierstrassCurve,
    codomain: WeierstrassCurve,
    x_map: RatMapX,
    y_map: Option<YMap>,
    degree: u64,
    sep_degree: u64,
    insep_degree: u64,
    dual_insep_degree: u64,
    kernel_poly: Option<PolyX>,
    kind: IsogenyKind,
    /// `(outer, inner)` for composites.
    factors: Option<Box<(Isogeny, Isogeny)>>,
}

/// Largest `p^e` with the map in `K(x^{p^e})`.
fn x_map_insep(map: &RatMapX, p: u64) -> (u32, u64) {
    if p == 0 {
        return (0, 1);
    }
    let (mut e, mut q) = (0u32, 1u64);
    while let Some(next) = q.checked_mul(p) {
        if next as usize > map.degree() || !map.is_in_power(next as usize) {
            break;
        }
        e += 1;
        q = next;
    }
    (e, q)
}

impl Isogeny {
    pub(crate) fn from_parts(
        domain: WeierstrassCurve,
        codomain: WeierstrassCurve,
        x_map: RatMapX,
        y_map: Option<YMap>,
        dual_insep_degree: u64,
        kernel_poly: Option<PolyX>,
        kind: IsogenyKind,
    ) -> Result<Self> {
        let degree = x_map.degree() as u64;
        if degree == 0 {
            return Err(Error::Inconsistency("constant x-map".into()));
        }
        let (_, insep) = x_map_insep(&x_map, domain.characteristic());
        Ok(Isogeny {
            domain,
            codomain,
            x_map,
            y_map,
            degree,
            sep_degree: degree / insep,
            insep_degree: insep,
            dual_insep_degree,
            kernel_poly,
            kind,
            factors: None,
        })
    }

    pub fn identity(e: &WeierstrassCurve) -> Self {
        let field = e.field();
        let y = (FracX::poly(PolyX::one(field)), FracX::zero(field));
        Self::from_parts(
            e.clone(),
            e.clone(),
            RatMapX::identity(field),
            Some(y),
            1,
            None,
            IsogenyKind::Identity,
        )
        .expect("identity map")
    }

    /// `[n]: E -> E`.
    pub fn multiplication(e: &WeierstrassCurve, n: u64) -> Result<Self> {
        let map = multiplication_x_map(e, n as usize)?;
        let mut iso = Self::from_parts(
            e.clone(),
            e.clone(),
            map,
            None,
            1,
            None,
            IsogenyKind::Multiplication(n),
        )?;
        iso.dual_insep_degree = iso.insep_degree;
        Ok(iso)
    }

    pub fn domain(&self) -> &WeierstrassCurve {
        &self.domain
    }

    pub fn codomain(&self) -> &WeierstrassCurve {
        &self.codomain
    }

    pub fn x_map(&self) -> &RatMapX {
        &self.x_map
    }

    pub fn y_map(&self) -> Option<&YMap> {
        self.y_map.as_ref()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn sep_degree(&self) -> u64 {
        self.sep_degree
    }

    pub fn insep_degree(&self) -> u64 {
        self.insep_degree
    }

    /// Inseparability degree of the dual as tracked through the construction.
    pub fn dual_insep_degree(&self) -> u64 {
        self.dual_insep_degree
    }

    pub fn kernel_poly(&self) -> Option<&PolyX> {
        self.kernel_poly.as_ref()
    }

    pub fn kind(&self) -> &IsogenyKind {
        &self.kind
    }

    /// Lemma: an isogeny is biseparable iff its degree is prime to `p`.
    pub fn is_biseparable(&self) -> bool {
        let p = self.domain.characteristic();
        p == 0 || gcd_u64(self.degree, p) == 1
    }

    /// `Y^2 + A1 X Y + A3 Y = X^3 + ...` holds identically for the image of
    /// the generic point, reducing `y^2` through the domain equation.
    pub fn image_on_codomain(&self) -> Result<bool> {
        let (c1, c0) = self
            .y_map
            .as_ref()
            .ok_or_else(|| Error::domain("isogeny carries no y-map"))?;
        let (dom, cod) = (&self.domain, &self.codomain);
        let field = dom.field();
        let s = FracX::poly(linear_y_coeff(dom));
        let r = FracX::poly(cubic(dom));
        let big_s = FracX::compose_poly(&linear_y_coeff(cod), &self.x_map);
        let big_r = FracX::compose_poly(&cubic(cod), &self.x_map);
        // Y^2 + S Y - R = (c1^2 (r - s y) + 2 c1 c0 y + c0^2) + S (c1 y + c0) - R
        let c1c1 = c1.mul(&c1);
        let y_coeff = c1
            .mul(&c0)
            .scale(&RatFunc::from_i64(field, 2))
            .sub(&c1c1.mul(&s))
            .add(&big_s.mul(&c1));
        let const_term = c1c1
            .mul(&r)
            .add(&c0.mul(&c0))
            .add(&big_s.mul(&c0))
            .sub(&big_r);
        Ok(y_coeff.is_zero() && const_term.is_zero())
    }

    /// For separable maps, `F_cod(X) / (X'^2 F_dom(x))` as an element of `K`
    /// (1 for normalized maps such as Vélu's); `None` when `X' = 0`. An error
    /// means the ratio depends on `x`, so the map is not an isogeny x-map.
    pub fn differential_scale(&self) -> Result<Option<RatFunc>> {
        let (n, d) = (self.x_map.num(), self.x_map.den());
        let dn = &(&n.derivative() * d) - &(n * &d.derivative());
        if dn.is_zero() {
            return Ok(None);
        }
        // F_cod(n/d) d^3 * d  versus  (n'd - nd')^2 F_dom
        let lhs =
            FracX::compose_poly(&two_torsion_polynomial(&self.codomain), &self.x_map).num() * d;
        let rhs = &(&dn * &dn) * &two_torsion_polynomial(&self.domain);
        let c = lhs.leading().unwrap().checked_div(rhs.leading().unwrap())?;
        if lhs == rhs.scale(&c) {
            Ok(Some(c))
        } else {
            Err(Error::Inconsistency(
                "x-map does not respect the invariant differential".into(),
            ))
        }
    }
}

/// Reduces `y^q` in `K[x][y] / (y^2 + s y - r)` to `c1 y + c0`.
fn y_power(e: &WeierstrassCurve, q: u64) -> (PolyX, PolyX) {
    let field = e.field();
    let s = linear_y_coeff(e);
    let r = cubic(e);
    let mul = |a: &(PolyX, PolyX), b: &(PolyX, PolyX)| {
        let hh = &a.0 * &b.0;
        let c1 = &(&(&a.0 * &b.1) + &(&a.1 * &b.0)) - &(&hh * &s);
        let c0 = &(&a.1 * &b.1) + &(&hh * &r);
        (c1, c0)
    };
    let mut acc = (PolyX::zero(field), PolyX::one(field));
    let mut base = (PolyX::one(field), PolyX::zero(field));
    let mut k = q;
    while k > 0 {
        if k & 1 == 1 {
            acc = mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// `F_{p^e}: E -> E^(p^e)`, `x -> x^q`, `y -> y^q`.
pub fn frobenius_isogeny(e: &WeierstrassCurve, exp: u32) -> Result<Isogeny> {
    let p = e.characteristic();
    if p == 0 {
        return Err(Error::domain(
            "Frobenius isogenies need positive characteristic",
        ));
    }
    if exp == 0 {
        return Ok(Isogeny::identity(e));
    }
    let q = p.pow(exp);
    let cod = e.frobenius_twist(exp)?;
    let (c1, c0) = y_power(e, q);
    let y = (FracX::poly(c1), FracX::poly(c0));
    Isogeny::from_parts(
        e.clone(),
        cod,
        RatMapX::power_of_x(e.field(), q as usize),
        Some(y),
        1,
        None,
        IsogenyKind::Frobenius(exp),
    )
}

/// `V_{p^f}: E^(p^f) -> E`, from `x_[q] = r(x^q)`.
pub fn verschiebung_power(e: &WeierstrassCurve, f: u32) -> Result<Isogeny> {
    let p = e.characteristic();
    if p == 0 {
        return Err(Error::domain("Verschiebung needs positive characteristic"));
    }
    if f == 0 {
        return Ok(Isogeny::identity(e));
    }
    if e.is_isotrivial() {
        return Err(Error::domain(
            "Verschiebung is only built for non-isotrivial (ordinary) curves",
        ));
    }
    let q = p.pow(f);
    let mult = multiplication_x_map(e, q as usize)?;
    let (exp, _) = x_map_insep(&mult, p);
    if exp != f {
        return Err(Error::domain(format!(
            "[{q}] has inseparable degree p^{exp}; curve is not ordinary"
        )));
    }
    let r = mult.deflate(q as usize);
    Isogeny::from_parts(
        e.frobenius_twist(f)?,
        e.clone(),
        r,
        None,
        q,
        None,
        IsogenyKind::Verschiebung(f),
    )
}

/// `V_p: E^(p) -> E`.
pub fn verschiebung(e: &WeierstrassCurve) -> Result<Isogeny> {
    verschiebung_power(e, 1)
}

/// `outer o inner`, applying `inner` first.
pub fn compose(outer: &Isogeny, inner: &Isogeny) -> Result<Isogeny> {
    if inner.codomain != outer.domain {
        return Err(Error::domain(
            "codomain of the inner isogeny differs from the domain of the outer one",
        ));
    }
    if outer.kind == IsogenyKind::Identity {
        return Ok(inner.clone());
    }
    if inner.kind == IsogenyKind::Identity {
        return Ok(outer.clone());
    }
    let x_map = outer.x_map.compose(&inner.x_map);
    if x_map.degree() as u64 != outer.degree * inner.degree {
        return Err(Error::Inconsistency(
            "degree of a composition is not multiplicative".into(),
        ));
    }
    let y_map = match (&outer.y_map, &inner.y_map) {
        (Some((o1, o0)), Some((i1, i0))) => {
            let o1x = o1.compose(&inner.x_map);
            let o0x = o0.compose(&inner.x_map);
            Some((o1x.mul(i1), o1x.mul(i0).add(&o0x)))
        }
        _ => None,
    };
    let mut iso = Isogeny::from_parts(
        inner.domain.clone(),
        outer.codomain.clone(),
        x_map,
        y_map,
        outer.dual_insep_degree * inner.dual_insep_degree,
        None,
        IsogenyKind::Composite,
    )?;
    iso.factors = Some(Box::new((outer.clone(), inner.clone())));
    if iso.insep_degree != outer.insep_degree * inner.insep_degree {
        return Err(Error::Inconsistency(
            "inseparable degree of a composition is not multiplicative".into(),
        ));
    }
    Ok(iso)
}

/// `phi = psi o F_{p^e}` with `psi: E1^(p^e) -> E2` separable.
pub fn decompose_x_map(phi: &Isogeny) -> Result<(u32, Isogeny)> {
    let p = phi.domain.characteristic();
    let (e, q) = x_map_insep(&phi.x_map, p);
    if e == 0 {
        return Ok((0, phi.clone()));
    }
    let r = phi.x_map.deflate(q as usize);
    let dom = phi.domain.frobenius_twist(e)?;
    let sep = Isogeny::from_parts(
        dom,
        phi.codomain.clone(),
        r,
        None,
        phi.dual_insep_degree,
        None,
        IsogenyKind::SeparablePart,
    )?;
    debug_assert_eq!(sep.insep_degree, 1);
    Ok((e, sep))
}

/// Dual x-map from the linear system `f o x_phi = x_[deg phi]`, ignoring any
/// shortcut known for the kind of `phi`.
pub(crate) fn dual_by_linear_solve(phi: &Isogeny) -> Result<Isogeny> {
    if phi.domain.is_isotrivial() || phi.codomain.is_isotrivial() {
        return Err(Error::domain(
            "duals are computed between non-isotrivial curves",
        ));
    }
    let target = multiplication_x_map(&phi.domain, phi.degree as usize)?;
    let x_map = solve_composition(&phi.x_map, &target, phi.degree as usize)?;
    Isogeny::from_parts(
        phi.codomain.clone(),
        phi.domain.clone(),
        x_map,
        None,
        phi.insep_degree,
        None,
        IsogenyKind::Dual,
    )
}

/// `phi^` with `phi^ o phi = [deg phi]`.
pub fn dual_isogeny(phi: &Isogeny) -> Result<Isogeny> {
    let dual = match phi.kind {
        IsogenyKind::Identity | IsogenyKind::Multiplication(_) => return Ok(phi.clone()),
        IsogenyKind::Frobenius(e) => verschiebung_power(&phi.domain, e)?,
        IsogenyKind::Verschiebung(f) => frobenius_isogeny(&phi.codomain, f)?,
        _ if phi.factors.is_some() => {
            let (outer, inner) = phi.factors.as_deref().unwrap();
            let mut dual = compose(&dual_isogeny(inner)?, &dual_isogeny(outer)?)?;
            dual.kind = IsogenyKind::Dual;
            dual
        }
        _ => dual_by_linear_solve(phi)?,
    };
    if dual.insep_degree != phi.dual_insep_degree || dual.dual_insep_degree != phi.insep_degree {
        return Err(Error::Inconsistency(format!(
            "dual has inseparable degree {} but {} was expected",
            dual.insep_degree, phi.dual_insep_degree
        )));
    }
    Ok(dual)
}

/// `phi = V_{p^f} o psi o F_{p^e}` with `psi: E1^(p^e) -> E2^(p^f)` biseparable.
#[derive(Clone, Debug)]
pub struct FullDecomposition {
    pub e: u32,
    pub biseparable: Isogeny,
    pub f: u32,
}

fn log_p(n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    let mut q = 1u64;
    while q < n {
        q = q.checked_mul(p)?;
        k += 1;
    }
    (q == n).then_some(k)
}

pub fn full_decomposition(phi: &Isogeny) -> Result<FullDecomposition> {
    let p = phi.domain.characteristic();
    if p == 0 {
        return Ok(FullDecomposition {
            e: 0,
            biseparable: phi.clone(),
            f: 0,
        });
    }
    let (e, sep) = decompose_x_map(phi)?;
    let dual_insep = super::checks::insep_degree_of_dual(phi)?;
    if dual_insep != phi.dual_insep_degree {
        return Err(Error::Inconsistency(format!(
            "dual inseparable degree {} from the j-invariants disagrees with {} from the construction",
            dual_insep, phi.dual_insep_degree
        )));
    }
    let f = log_p(dual_insep, p).ok_or_else(|| {
        Error::Inconsistency("dual inseparable degree is not a power of p".into())
    })?;
    let q = p.pow(f);
    let psi = if f == 0 {
        let mut s = sep;
        s.kind = IsogenyKind::Biseparable;
        s
    } else {
        // F_q o V_q o psi = psi o [q], so psi_x o x_[q] = (sep_x)^q.
        let src = sep.domain.clone();
        let target = sep.x_map.frobenius_coeffs(q as usize).inflate(q as usize);
        let mult = multiplication_x_map(&src, q as usize)?;
        let d = sep.degree / q;
        let psi_x = solve_composition(&mult, &target, d as usize)?;
        Isogeny::from_parts(
            src,
            phi.codomain.frobenius_twist(f)?,
            psi_x,
            None,
            1,
            None,
            IsogenyKind::Biseparable,
        )?
    };
    if !psi.is_biseparable() {
        return Err(Error::Inconsistency(
            "middle factor is not biseparable".into(),
        ));
    }
    let rebuilt = compose(
        &verschiebung_power(&phi.codomain, f)?,
        &compose(&psi, &frobenius_isogeny(&phi.domain, e)?)?,
    )?;
    if rebuilt.x_map != phi.x_map {
        return Err(Error::Inconsistency(
            "V o psi o F does not reproduce the isogeny".into(),
        ));
    }
    Ok(FullDecomposition {
        e,
        biseparable: psi,
        f,
    })
}

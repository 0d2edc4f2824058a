//! Solving `f(g(x)) = h(x)` for `f` in `K(x)` of known degree, by linear
//! algebra on the coefficients of `f = u / v`:
//! `sum u_i g_n^i g_d^(D-i) h_d = h_n sum v_i g_n^i g_d^(D-i)`.

use super::polyx::PolyX;
use super::ratmap::RatMapX;
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// Basis of the right kernel of `rows`, each row of length `cols`.
fn nullspace(mut m: Vec<Vec<RatFunc>>, cols: usize) -> Vec<Vec<RatFunc>> {
    let field = m.first().map(|r| r[0].field());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for c in col..cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..cols {
                    if !m[row][c].is_zero() {
                        m[r][c] = &m[r][c] - &(&f * &m[row][c]);
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let Some(field) = field else {
        return Vec::new();
    };
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![RatFunc::zero(field); cols];
            v[fc] = RatFunc::one(field);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][fc];
            }
            v
        })
        .collect()
}

/// The unique `f` of degree `d` with `f o g = h`.
pub(crate) fn solve_composition(g: &RatMapX, h: &RatMapX, d: usize) -> Result<RatMapX> {
    let field = g.field();
    let (gn, gd) = (g.num(), g.den());
    let mut gn_pows = vec![PolyX::one(field)];
    let mut gd_pows = vec![PolyX::one(field)];
    for i in 1..=d {
        gn_pows.push(&gn_pows[i - 1] * gn);
        gd_pows.push(&gd_pows[i - 1] * gd);
    }
    let basis: Vec<PolyX> = (0..=d).map(|i| &gn_pows[i] * &gd_pows[d - i]).collect();
    let mut columns: Vec<PolyX> = basis.iter().map(|b| b * h.den()).collect();
    columns.extend(basis.iter().map(|b| -&(b * h.num())));
    let rows = columns.iter().map(PolyX::deg0).max().unwrap_or(0) + 1;
    let cols = columns.len();
    let matrix: Vec<Vec<RatFunc>> = (0..rows)
        .map(|r| columns.iter().map(|c| c.coeff(r)).collect())
        .filter(|row: &Vec<RatFunc>| row.iter().any(|c| !c.is_zero()))
        .collect();
    let kernel = nullspace(matrix, cols);
    if kernel.len() != 1 {
        return Err(Error::Inconsistency(format!(
            "expected a one-dimensional solution space for f o g = h, found dimension {}",
            kernel.len()
        )));
    }
    let sol = &kernel[0];
    let u = PolyX::from_coeffs(field, sol[..=d].to_vec());
    let v = PolyX::from_coeffs(field, sol[d + 1..].to_vec());
    let f = RatMapX::new(u, v)?;
    if f.degree() != d || &f.compose(g) != h {
        return Err(Error::Inconsistency(
            "solution of f o g = h failed verification".into(),
        ));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseField;

    const Q: BaseField = BaseField::Rationals;

    #[test]
    fn recovers_outer_function() {
        let t = RatFunc::var(Q);
        let x = PolyX::x(Q);
        let f = RatMapX::new(
            &(&x * &x) + &PolyX::constant(t.clone()),
            &x - &PolyX::constant(RatFunc::one(Q)),
        )
        .unwrap();
        let g = RatMapX::new(&x.pow(3) - &PolyX::constant(t.clone()), &x * &x).unwrap();
        let h = f.compose(&g);
        assert_eq!(solve_composition(&g, &h, 2).unwrap(), f);
        assert!(solve_composition(&g, &h, 1).is_err());
        let id = RatMapX::identity(Q);
        assert_eq!(solve_composition(&g, &g, 1).unwrap(), id);
    }
}

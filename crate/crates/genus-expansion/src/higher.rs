//! Higher layers by substitution into a stable graph polynomial, and the
//! layer-by-layer Burgers residuals.

use std::collections::HashMap;

use pde_solve::{pair_factorial, pairs};
use series_core::{Monomial, MultiIndex, Poly, Series, SeriesMatrix, Symbol, TruncationSpec};

use crate::tree::images_b;
use crate::{compare, compose_matrix, require, CheckReport, GenusError};

fn partial(p: &Poly, n: &MultiIndex) -> Poly {
    let mut out = p.clone();
    for (i, &k) in n.0.iter().enumerate() {
        for _ in 0..k {
            out = out.diff(&Symbol::x(i));
        }
    }
    out
}

/// `Ψ_g = P_g(a_{m,N} := ∂^N U_m(X+SΦ), s := (E - SH(X+SΦ))^{-1} S)` in `t`.
/// Every `U_m` is an exact polynomial, so `Φ` is only needed in `t`.
pub fn psi_g_substitute(
    p_g: &Poly,
    u_layers: &[Poly],
    h: &[Vec<Poly>],
    phi: &[Series],
    t: TruncationSpec,
) -> Result<Series, GenusError> {
    let t = t.with_g(None);
    let r = phi.len();
    for p in phi {
        require(p.trunc(), t, "Φ")?;
    }
    let b = images_b(phi, t)?;
    let s = SeriesMatrix::s_matrix(r, t);
    let y = s.mul(&compose_matrix(h, &b, t)?)?.geom_inverse()?.mul(&s)?;

    let p = p_g.retain(|m| m.s_degree() <= t.ds);
    let mut a_img: HashMap<Symbol, Poly> = HashMap::new();
    for (m, _) in p.terms() {
        for (sym, _) in m.factors() {
            match sym {
                Symbol::A(g, n) if !a_img.contains_key(sym) => {
                    let u = u_layers.get(*g as usize).cloned().unwrap_or_else(Poly::zero);
                    let img = Series::compose_poly(&partial(&u, n), &b, t)?;
                    a_img.insert(sym.clone(), img.into_poly());
                }
                Symbol::X(_) | Symbol::Hbar => {
                    return Err(GenusError::Check(format!("the graph polynomial contains {sym}")));
                }
                _ => {}
            }
        }
    }
    let image = |sym: &Symbol| match sym {
        Symbol::S(i, j) => Some(y.get(*i as usize, *j as usize).poly().clone()),
        Symbol::A(..) => a_img.get(sym).cloned(),
        _ => None,
    };
    let keep = |m: &Monomial| m.x_degree() <= t.dx && m.s_degree() <= t.ds;
    Ok(Series::new(p.substitute(&image, &keep), t)?)
}

/// Residuals of `∂Ψ_g/∂s_ij = (1/{ij}!)[∂²Ψ_{g-1}/∂x_i∂x_j + Σ_m ∂_iΨ_m ∂_jΨ_{g-m}]`
/// for `layers = [Ψ₀, ..., Ψ_g]` over `r` colors, exact in `(dx-2, ds-1)`.
pub fn layer_residual(layers: &[Series], r: usize) -> Result<CheckReport, GenusError> {
    let g = layers.len().checked_sub(1).ok_or_else(|| GenusError::Check("no layers".into()))?;
    let t = layers[0].trunc();
    if t.dx < 2 || t.ds < 1 || layers.iter().any(|l| l.trunc() != t) {
        return Err(GenusError::Check(format!("layer residuals need a common box with Dx >= 2 and Ds >= 1, got {t}")));
    }
    let eff = TruncationSpec { dx: t.dx - 2, ds: t.ds - 1, g: None };
    let grads: Vec<Vec<Series>> = layers
        .iter()
        .map(|l| (0..r).map(|i| l.diff(&Symbol::x(i))?.restrict(eff)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut res = Vec::new();
    for (i, j) in pairs(r) {
        let lhs = layers[g].diff(&Symbol::s(i, j))?.restrict(eff)?;
        let mut rhs = Series::zero(eff);
        if g > 0 {
            rhs = layers[g - 1].diff(&Symbol::x(i))?.diff(&Symbol::x(j))?.restrict(eff)?;
        }
        for m in 0..=g {
            rhs = rhs.add(&grads[m][i].mul(&grads[g - m][j])?)?;
        }
        res.push(lhs.sub(&rhs.scale(&pair_factorial(i, j).recip()))?);
    }
    let zero = vec![Series::zero(eff); res.len()];
    Ok(compare(&format!("genus-{g} Burgers residual"), &res, &zero))
}

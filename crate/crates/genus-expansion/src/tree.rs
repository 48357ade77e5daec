//! Tree level: `Φ = F(X + SΦ)` with `F = ∇U₀`, its inverse map, `Ψ₀` and
//! the Jacobian identity.

use pde_solve::{integrate_s, pair_factorial, pairs};
use series_core::{par, Monomial, Poly, Series, SeriesMatrix, Symbol, TruncationSpec};

use crate::{compare, compose_matrix, gradient, require, CheckReport, GenusError};

fn x_only(p: &Poly, what: &str) -> Result<(), GenusError> {
    match p.terms().find(|(m, _)| m.s_degree() > 0 || m.hbar_exp() != 0) {
        Some((m, _)) => Err(GenusError::Check(format!("{what} must depend on X only, found {m}"))),
        None => Ok(()),
    }
}

/// `B(X)_i = x_i + Σ_j s_ij Φ_j` in the box `t`. `Φ` must be known to
/// `(t.dx, t.ds - 1)`.
pub fn images_b(phi: &[Series], t: TruncationSpec) -> Result<Vec<Series>, GenusError> {
    let r = phi.len();
    if t.ds > 0 {
        for p in phi {
            require(p.trunc(), TruncationSpec { ds: t.ds - 1, ..t }, "Φ")?;
        }
    }
    let mut out = Vec::with_capacity(r);
    for i in 0..r {
        let mut b = Poly::var(Symbol::x(i));
        if t.ds > 0 {
            for (j, pj) in phi.iter().enumerate() {
                b.add_assign(&pj.poly().mul_monomial(&Monomial::var(Symbol::s(i, j))));
            }
        }
        out.push(Series::new(b, t)?);
    }
    Ok(out)
}

/// The unique solution of `Φ = F(X + SΦ)` in `t` by fixed-point iteration.
/// Each pass fixes one more S-degree, so at most `Ds + 1` passes are needed.
pub fn tree_solve(f: &[Poly], t: TruncationSpec) -> Result<Vec<Series>, GenusError> {
    let t = t.with_g(None);
    for fi in f {
        x_only(fi, "F")?;
    }
    let mut phi = f.iter().map(|fi| Series::new(fi.clone(), t)).collect::<Result<Vec<_>, _>>()?;
    for _ in 0..=t.ds + 1 {
        let b = images_b(&phi, t)?;
        let next = par::map(f, |fi| Series::compose_poly(fi, &b, t)).into_iter().collect::<Result<Vec<_>, _>>()?;
        if next == phi {
            return Ok(phi);
        }
        phi = next;
    }
    Err(GenusError::Check(format!("fixed-point iteration did not settle in {t}")))
}

/// `F(X + SΦ) - Φ` in `t`.
pub fn functional_residual(f: &[Poly], phi: &[Series], t: TruncationSpec) -> Result<CheckReport, GenusError> {
    let t = t.with_g(None);
    for p in phi {
        require(p.trunc(), t, "Φ")?;
    }
    let phi_t = phi.iter().map(|p| p.restrict(t)).collect::<Result<Vec<_>, _>>()?;
    let b = images_b(&phi_t, t)?;
    let lhs = f.iter().map(|fi| Series::compose_poly(fi, &b, t)).collect::<Result<Vec<_>, _>>()?;
    Ok(compare("Φ = F(X + SΦ)", &lhs, &phi_t))
}

/// Checks `A(B(X)) = X` and `B(A(X)) = X` in `t` for `A(X) = X - SF(X)` and
/// `B(X) = X + SΦ`. The second composition trades X-degree for S-degree, so
/// `phi` must be known to `(t.dx + t.ds, t.ds)`.
pub fn invert_check(f: &[Poly], phi: &[Series], t: TruncationSpec) -> Result<Vec<CheckReport>, GenusError> {
    let r = f.len();
    let t = t.with_g(None);
    let wide = TruncationSpec { dx: t.dx + t.ds, ..t };
    for p in phi {
        require(p.trunc(), wide, "Φ")?;
    }
    let ident: Vec<Series> = (0..r).map(|i| Series::var(Symbol::x(i), t)).collect();

    let a_poly: Vec<Poly> = (0..r)
        .map(|i| {
            let mut a = Poly::var(Symbol::x(i));
            for (j, fj) in f.iter().enumerate() {
                a = a.sub(&fj.mul_monomial(&Monomial::var(Symbol::s(i, j))));
            }
            a
        })
        .collect();
    let b = images_b(phi, t)?;
    let ab = a_poly.iter().map(|p| Series::compose_poly(p, &b, t)).collect::<Result<Vec<_>, _>>()?;

    let a_img = a_poly.iter().map(|p| Series::new(p.clone(), t)).collect::<Result<Vec<_>, _>>()?;
    let b_wide = images_b(phi, wide)?;
    let ba = b_wide.iter().map(|s| s.substitute_x(&a_img, t)).collect::<Result<Vec<_>, _>>()?;

    Ok(vec![compare("A(B(X)) = X", &ab, &ident), compare("B(A(X)) = X", &ba, &ident)])
}

/// `Ψ₀` in `t` from the genus-zero Burgers recursion
/// `∂Ψ₀/∂s_ij = (1/{ij}!) ∂_iΨ₀ ∂_jΨ₀`, checked against `∇Ψ₀ = Φ`.
/// Layer `d` is computed to X-degree `dx + 1 + (ds - d)`.
pub fn psi0_integrate(u0: &Poly, phi: &[Series], t: TruncationSpec) -> Result<Series, GenusError> {
    let r = phi.len();
    let t = t.with_g(None);
    x_only(u0, "U₀")?;
    for p in phi {
        require(p.trunc(), t, "Φ")?;
    }
    let (dx, ds) = (t.dx, t.ds);
    let win = |d: u32| dx + 1 + (ds - d);
    let mut layers = vec![u0.retain(|m| m.x_degree() <= win(0))];
    let mut grads = vec![gradient(&layers[0], r)];
    for d in 1..=ds {
        let w = win(d);
        let keep = move |m: &Monomial| m.x_degree() <= w;
        let gr = &grads;
        let rhs = par::map(&pairs(r), |&(i, j)| {
            let mut acc = Poly::zero();
            for a in 0..d as usize {
                acc.add_assign(&gr[a][i].mul_filtered(&gr[d as usize - 1 - a][j], &keep));
            }
            ((i, j), acc.scale(&pair_factorial(i, j).recip()))
        });
        let layer = integrate_s(&rhs)?;
        grads.push(gradient(&layer, r));
        layers.push(layer);
    }
    let mut total = Poly::zero();
    for l in &layers {
        total.add_assign(l);
    }
    let wide = Series::new(total, TruncationSpec { dx: dx + 1, ..t })?;
    let grad = (0..r).map(|i| wide.diff(&Symbol::x(i))).collect::<Result<Vec<_>, _>>()?;
    let phi_t = phi.iter().map(|p| p.restrict(t)).collect::<Result<Vec<_>, _>>()?;
    let report = compare("∇Ψ₀ = Φ", &grad, &phi_t);
    if !report.passed {
        return Err(GenusError::Check(report.to_string()));
    }
    Ok(wide.restrict(t)?)
}

/// Entries of `∇Φ` in `t`; `phi` must be known to `t.dx + 1`.
pub fn jacobian(phi: &[Series], t: TruncationSpec) -> Result<SeriesMatrix, GenusError> {
    let r = phi.len();
    let t = t.with_g(None);
    let mut entries = Vec::with_capacity(r * r);
    for p in phi {
        require(p.trunc(), TruncationSpec { dx: t.dx + 1, ..t }, "Φ")?;
        for j in 0..r {
            entries.push(p.diff(&Symbol::x(j))?.restrict(t)?);
        }
    }
    let mut it = entries.into_iter();
    Ok(SeriesMatrix::from_fn(r, t, |_, _| it.next().expect("r*r entries"))?)
}

/// `E + SΘ = (E - S H(X + SΦ))^{-1}` with `Θ = ∇Φ`, plus symmetry of `Θ`.
/// `phi` must be known to `t.dx + 1`.
pub fn theta_identity(h: &[Vec<Poly>], phi: &[Series], t: TruncationSpec) -> Result<Vec<CheckReport>, GenusError> {
    let r = phi.len();
    let t = t.with_g(None);
    let theta = jacobian(phi, t)?;
    let s = SeriesMatrix::s_matrix(r, t);
    let lhs = SeriesMatrix::identity(r, t).add(&s.mul(&theta)?)?;
    let phi_t = phi.iter().map(|p| p.restrict(t)).collect::<Result<Vec<_>, _>>()?;
    let hb = compose_matrix(h, &images_b(&phi_t, t)?, t)?;
    let rhs = s.mul(&hb)?.geom_inverse()?;
    let sym = if theta.is_symmetric() {
        CheckReport::pass("∇Φ is symmetric")
    } else {
        CheckReport::fail("∇Φ is symmetric", "∇Φ differs from its transpose".into())
    };
    Ok(vec![compare("E + S∇Φ = (E - SH(X+SΦ))^-1", lhs.entries(), rhs.entries()), sym])
}

/// `∂Φ_m/∂s_ij - (1/{ij}!)(Φ_i ∂_jΦ_m + Φ_j ∂_iΦ_m)`, exact in `(dx-1, ds-1)`.
pub fn phi_residual(phi: &[Series]) -> Result<CheckReport, GenusError> {
    let r = phi.len();
    let t = phi.first().map(|p| p.trunc()).ok_or_else(|| GenusError::Check("no colors".into()))?;
    if t.dx < 1 || t.ds < 1 {
        return Err(GenusError::Check(format!("the Φ residual needs Dx >= 1 and Ds >= 1, got {t}")));
    }
    let eff = TruncationSpec { dx: t.dx - 1, ds: t.ds - 1, g: None };
    let phi_e = phi.iter().map(|p| p.restrict(eff)).collect::<Result<Vec<_>, _>>()?;
    let mut res = Vec::new();
    for p in phi {
        let dxs = (0..r).map(|i| p.diff(&Symbol::x(i))?.restrict(eff)).collect::<Result<Vec<_>, _>>()?;
        for (i, j) in pairs(r) {
            let lhs = p.diff(&Symbol::s(i, j))?.restrict(eff)?;
            let rhs = phi_e[i].mul(&dxs[j])?.add(&phi_e[j].mul(&dxs[i])?)?.scale(&pair_factorial(i, j).recip());
            res.push(lhs.sub(&rhs)?);
        }
    }
    let zero = vec![Series::zero(eff); res.len()];
    Ok(compare("∂Φ/∂s Burgers residual", &res, &zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layer_box;
    use series_core::rational::{factorial, int};

    fn exp_x(n: u32) -> Poly {
        Poly::from_terms((0..=n).map(|k| (Monomial::pow(Symbol::x(0), k as i32), factorial(k).recip())))
    }

    #[test]
    fn cayley_tree_counts() {
        // F = e^x: Φ(s, 0) = Σ (k+1)^k s^k / (k+1)!
        let t = layer_box(0, 8);
        let phi = tree_solve(&[exp_x(8)], t).unwrap();
        for k in 0..=8u32 {
            let m = Monomial::pow(Symbol::s(0, 0), k as i32);
            let want = int((k as i64 + 1).pow(k)) / factorial(k + 1);
            assert_eq!(phi[0].coeff(&m), want, "s^{k}");
        }
    }

    #[test]
    fn inverse_and_jacobian() {
        let f = vec![exp_x(6)];
        let t = layer_box(2, 2);
        let phi = tree_solve(&f, TruncationSpec { dx: 4, ..t }).unwrap();
        for rep in invert_check(&f, &phi, t).unwrap() {
            assert!(rep.passed, "{rep}");
        }
        let h = vec![vec![exp_x(6)]];
        for rep in theta_identity(&h, &phi, t).unwrap() {
            assert!(rep.passed, "{rep}");
        }
        assert!(phi_residual(&phi).unwrap().passed);
    }

    #[test]
    fn precision_is_checked() {
        let f = vec![exp_x(6)];
        let phi = tree_solve(&f, layer_box(2, 2)).unwrap();
        assert!(invert_check(&f, &phi, layer_box(2, 2)).is_err());
        assert!(tree_solve(&[Poly::var(Symbol::s(0, 0))], layer_box(1, 1)).is_err());
    }
}

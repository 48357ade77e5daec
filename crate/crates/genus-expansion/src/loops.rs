//! One loop: `Ψ₁ = U₁(X+SΦ) - ½ tr ln(E - SH(X+SΦ))`, chain matrices and
//! cycle terms.

use series_core::rational::rat;
use series_core::{Poly, Series, SeriesMatrix, TruncationSpec};

use crate::higher::layer_residual;
use crate::tree::images_b;
use crate::{compose_matrix, poly_matrix, require, GenusError};

/// `Ψ₁` in `t`. `phi` must be known in `t`. When `t` has `Dx >= 2` and
/// `Ds >= 1` the genus-one Burgers residual is asserted against `psi0`.
pub fn psi1(u1: &Poly, h: &[Vec<Poly>], phi: &[Series], psi0: &Series, t: TruncationSpec) -> Result<Series, GenusError> {
    let t = t.with_g(None);
    let r = phi.len();
    for p in phi {
        require(p.trunc(), t, "Φ")?;
    }
    let b = images_b(phi, t)?;
    let hb = compose_matrix(h, &b, t)?;
    let m = SeriesMatrix::s_matrix(r, t).mul(&hb)?;
    let loop_part = m.trace_log()?.scale(&rat(-1, 2));
    let out = Series::compose_poly(u1, &b, t)?.add(&loop_part)?;
    let u1_t = Series::new(u1.clone(), t)?;
    if pde_solve::at_s_zero(&out) != *u1_t.poly() {
        return Err(GenusError::Check("Ψ₁ at S = 0 differs from U₁".into()));
    }
    if t.dx >= 2 && t.ds >= 1 {
        let rep = layer_residual(&[psi0.restrict(t)?, out.clone()], r)?;
        if !rep.passed {
            return Err(GenusError::Check(rep.to_string()));
        }
    }
    Ok(out)
}

/// `H S H S ... H` with `k` factors of `H(X)`.
pub fn chain_matrix(h: &[Vec<Poly>], k: usize, t: TruncationSpec) -> Result<SeriesMatrix, GenusError> {
    if k == 0 {
        return Err(GenusError::Check("a chain has at least one factor".into()));
    }
    let t = t.with_g(None);
    let hm = poly_matrix(h, t)?;
    let sh = SeriesMatrix::s_matrix(h.len(), t).mul(&hm)?;
    let mut acc = hm;
    for _ in 1..k {
        acc = acc.mul(&sh)?;
    }
    Ok(acc)
}

/// `(1/2k) tr (SH(X))^k`.
pub fn cycle_term(h: &[Vec<Poly>], k: usize, t: TruncationSpec) -> Result<Series, GenusError> {
    if k == 0 {
        return Err(GenusError::Check("a cycle has at least one s-vertex".into()));
    }
    let t = t.with_g(None);
    let sh = SeriesMatrix::s_matrix(h.len(), t).mul(&poly_matrix(h, t)?)?;
    let mut acc = sh.clone();
    for _ in 1..k {
        acc = acc.mul(&sh)?;
    }
    Ok(acc.trace().scale(&rat(1, 2 * k as i64)))
}

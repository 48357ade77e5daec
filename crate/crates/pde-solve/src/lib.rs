//! Solvers for the generalized heat system `dΨ~/ds_ij = (ħ/{ij}!) d²Ψ~/dx_i dx_j`
//! and the generalized Burgers system
//! `dΨ/ds_ij = (ħ/{ij}!) [d²Ψ/dx_i dx_j + dΨ/dx_i dΨ/dx_j]`, with initial
//! conditions `exp U` and `U`.
//!
//! Both are solved as triangular recursions in the total S-degree. Each
//! monomial of S-degree `d` is recovered from every `s_ij` it contains and the
//! answers are required to agree.

pub mod init;
pub mod integrate;

use series_core::{par, Monomial, Poly, Series, SeriesError, Symbol, TruncationSpec};

pub use integrate::{integrate_s, pair_factorial, pairs, s_layers, Inconsistency};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Heat,
    Burgers,
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Kind, String> {
        match s {
            "heat" => Ok(Kind::Heat),
            "burgers" => Ok(Kind::Burgers),
            _ => Err(format!("unknown system {s:?}")),
        }
    }
}

/// One system together with its initial condition. `u` is an exact polynomial
/// in `X`, `a_{g,N}` and ħ with ħ-exponents at least `-1`.
#[derive(Clone, Debug)]
pub struct PdeProblem {
    pub r: usize,
    pub u: Poly,
    pub trunc: TruncationSpec,
    pub kind: Kind,
}

#[derive(Debug, thiserror::Error)]
pub enum PdeError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("solver consistency failure: {0}")]
    Inconsistent(Inconsistency),
    #[error("invalid problem: {0}")]
    Invalid(String),
}

impl From<Inconsistency> for PdeError {
    fn from(e: Inconsistency) -> Self {
        PdeError::Inconsistent(e)
    }
}

fn validate(p: &PdeProblem) -> Result<(), PdeError> {
    for (m, _) in p.u.terms() {
        if m.s_degree() > 0 {
            return Err(PdeError::Invalid(format!("initial condition contains S-variables: {m}")));
        }
        if m.hbar_exp() < -1 {
            return Err(PdeError::Invalid(format!("initial condition has ħ-exponent below -1: {m}")));
        }
        for (s, _) in m.factors() {
            match s {
                Symbol::X(i) if *i as usize >= p.r => {
                    return Err(PdeError::Invalid(format!("color {} out of range in {m}", i + 1)))
                }
                Symbol::A(_, n) if n.r() != p.r => {
                    return Err(PdeError::Invalid(format!("weight {s} has the wrong number of colors")))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// The unique solution in `problem.trunc`.
pub fn solve(problem: &PdeProblem) -> Result<Series, PdeError> {
    validate(problem)?;
    let layers = match problem.kind {
        Kind::Burgers => burgers_layers(problem)?,
        Kind::Heat => heat_layers(problem)?,
    };
    let mut total = Poly::zero();
    for l in layers {
        total.add_assign(&l);
    }
    Ok(Series::new(total, problem.trunc)?)
}

fn hbar() -> Monomial {
    Monomial::var(Symbol::Hbar)
}

fn grads(r: usize, p: &Poly) -> Vec<Poly> {
    (0..r).map(|i| p.diff(&Symbol::x(i))).collect()
}

/// Layers of the Burgers solution by S-degree. Layer `d` is computed for
/// X-degree up to `dx + 2(ds - d)`, which is what the later layers consume;
/// the ħ cap needs no widening because every term of the right-hand side
/// raises the ħ-exponent of its inputs by at most the amount it is multiplied by.
fn burgers_layers(p: &PdeProblem) -> Result<Vec<Poly>, PdeError> {
    let (r, dx, ds) = (p.r, p.trunc.dx, p.trunc.ds);
    let emax = p.trunc.g.map(|g| g as i32 - 1);
    let xwin = |d: u32| dx + 2 * (ds - d);
    let first = p.u.retain(|m| m.x_degree() <= xwin(0) && emax.is_none_or(|e| m.hbar_exp() <= e));
    let mut layers = vec![first];
    let mut gradients = vec![grads(r, &layers[0])];
    for d in 1..=ds {
        let w = xwin(d);
        let keep = move |m: &Monomial| m.x_degree() <= w && emax.is_none_or(|e| m.hbar_exp() < e);
        let gr = &gradients;
        let rhs = par::map(&pairs(r), |&(i, j)| {
            let mut acc = gr[d as usize - 1][i].diff(&Symbol::x(j)).retain(keep);
            for a in 0..d as usize {
                acc.add_assign(&gr[a][i].mul_filtered(&gr[d as usize - 1 - a][j], &keep));
            }
            ((i, j), acc.mul_monomial(&hbar()).scale(&pair_factorial(i, j).recip()))
        });
        let layer = integrate_s(&rhs)?;
        gradients.push(grads(r, &layer));
        layers.push(layer);
    }
    Ok(layers)
}

/// Layers of the heat solution by S-degree. The initial exponential is formed
/// from the exact polynomial `U` in a box wide enough that the ħ-lowering
/// caused by its `ħ^{-1}` terms still leaves the cap at `G`.
fn heat_layers(p: &PdeProblem) -> Result<Vec<Poly>, PdeError> {
    let (r, dx, ds) = (p.r, p.trunc.dx, p.trunc.ds);
    let xwin = |d: u32| dx + 2 * (ds - d);
    let emax = p.trunc.g.map(|g| g as i32 - 1);
    let deficit = p.u.min_hbar().map_or(0, |e| (-e).max(0) as u32);
    let box0 = xwin(0);
    let init_trunc = match p.trunc.g {
        None => TruncationSpec::all_genera(box0, 0),
        Some(g) => TruncationSpec::new(box0, 0, g + deficit * box0),
    };
    let e0 = Series::new(p.u.clone(), init_trunc)?.exp()?;
    let first = e0.poly().retain(|m| emax.is_none_or(|e| m.hbar_exp() <= e));
    let mut layers = vec![first];
    for d in 1..=ds {
        let w = xwin(d);
        let keep = move |m: &Monomial| m.x_degree() <= w && emax.is_none_or(|e| m.hbar_exp() < e);
        let prev = &layers[d as usize - 1];
        let rhs = par::map(&pairs(r), |&(i, j)| {
            let second = prev.diff(&Symbol::x(i)).diff(&Symbol::x(j)).retain(keep);
            ((i, j), second.mul_monomial(&hbar()).scale(&pair_factorial(i, j).recip()))
        });
        layers.push(integrate_s(&rhs)?);
    }
    Ok(layers)
}

/// `LHS - RHS` of the chosen system for every pair `i <= j`, each exact in the
/// box `(dx-2, ds-1, G)`.
pub fn residual(kind: Kind, candidate: &Series, r: usize) -> Result<Vec<((usize, usize), Series)>, PdeError> {
    let t = candidate.trunc();
    if t.dx < 2 || t.ds < 1 {
        return Err(PdeError::Series(SeriesError::InsufficientPrecision(format!(
            "residual needs Dx >= 2 and Ds >= 1, got {t}"
        ))));
    }
    let eff = TruncationSpec { dx: t.dx - 2, ds: t.ds - 1, g: t.g };
    let keep = |m: &Monomial| eff.admits(&m.mul(&hbar()));
    let psi = candidate.poly();
    // a factor whose X- or S-degree already exceeds the box cannot contribute
    let g: Vec<Poly> = grads(r, psi)
        .into_iter()
        .map(|p| p.retain(|m| m.x_degree() <= eff.dx + 1 && m.s_degree() <= eff.ds && eff.g.is_none_or(|g| m.hbar_exp() < g as i32)))
        .collect();
    let out = par::map(&pairs(r), |&(i, j)| {
        let lhs = psi.diff(&Symbol::s(i, j));
        let mut inner = g[i].diff(&Symbol::x(j)).retain(keep);
        if kind == Kind::Burgers {
            inner.add_assign(&g[i].mul_filtered(&g[j], &keep));
        }
        let rhs = inner.mul_monomial(&hbar()).scale(&pair_factorial(i, j).recip());
        ((i, j), Series::new(lhs.sub(&rhs), eff))
    });
    out.into_iter().map(|(k, s)| Ok((k, s?))).collect()
}

/// Convenience: is every residual zero?
pub fn residual_vanishes(kind: Kind, candidate: &Series, r: usize) -> Result<bool, PdeError> {
    Ok(residual(kind, candidate, r)?.iter().all(|(_, s)| s.is_zero()))
}

/// The S-degree-zero part of a series.
pub fn at_s_zero(s: &Series) -> Poly {
    s.poly().retain(|m| m.s_degree() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use series_core::rational::rat;
    use series_core::MultiIndex;

    #[test]
    fn zero_initial_condition() {
        let p = PdeProblem { r: 1, u: Poly::zero(), trunc: TruncationSpec::new(3, 2, 2), kind: Kind::Burgers };
        assert!(solve(&p).unwrap().is_zero());
    }

    #[test]
    fn single_cycle_coefficient() {
        // U = a x^2/2 ħ^{-1}: one loop through a bivalent vertex, weight 1/2
        let u = init::vertex_term(0, &MultiIndex::from_slice(&[2]), None);
        let p = PdeProblem { r: 1, u, trunc: TruncationSpec::new(2, 1, 1), kind: Kind::Burgers };
        let psi = solve(&p).unwrap();
        let m = Monomial::from_factors([(Symbol::s(0, 0), 1), (Symbol::a(0, MultiIndex::from_slice(&[2])), 1)]);
        assert_eq!(psi.coeff(&m), rat(1, 2));
    }

    #[test]
    fn heat_matches_exp_of_burgers_small() {
        let t = TruncationSpec::new(3, 2, 2);
        // constants a_{g,0} would make exp nonterminating with no ħ cap
        let consts: Vec<_> = (0..=2).map(|g| (g, MultiIndex::zero(1))).collect();
        let u = init::symbolic(1, 2, 7, &consts);
        let burg = solve(&PdeProblem { r: 1, u: u.clone(), trunc: t.with_g(None), kind: Kind::Burgers }).unwrap();
        let heat = solve(&PdeProblem { r: 1, u, trunc: t, kind: Kind::Heat }).unwrap();
        let e = burg.exp_capped(2).unwrap();
        assert_eq!(e, heat);
        assert!(residual_vanishes(Kind::Heat, &heat, 1).unwrap());
        assert!(residual_vanishes(Kind::Burgers, &burg, 1).unwrap());
    }

    #[test]
    fn s_zero_layer_is_initial_condition() {
        let u = init::symbolic(2, 1, 3, &[]);
        let t = TruncationSpec::new(3, 1, 2);
        let psi = solve(&PdeProblem { r: 2, u: u.clone(), trunc: t, kind: Kind::Burgers }).unwrap();
        assert_eq!(at_s_zero(&psi), Series::new(u, t).unwrap().into_poly());
    }
}

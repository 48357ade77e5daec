//! Stable graph polynomials `P_g({a_{m,N}}, S)`: sums of `μ(Γ)/|Aut Γ|` over
//! closed connected stable graphs of genus `g`.
//!
//! They are produced by the recurrence in which one s-vertex is deleted,
//! which expresses `∂P_g/∂s_ij` through the one-tail and two-tail functions
//! `Q_m` and `R_{g-1}` of lower genera. Genus one enters only through formal
//! seeds, because there is no stable closed genus-one graph.

pub mod comb;
pub mod ring;

use pde_solve::{integrate_s, pair_factorial, pairs};
use series_core::rational::{int, rat};
use series_core::{par, Monomial, MultiIndex, Poly, Series, SeriesError, Symbol, TruncationSpec};

pub use comb::{counting_comb, counting_stable, solve_p_comb, specialize_comb, UniPoly};
pub use ring::{derive, stable_degree};

#[derive(Debug, thiserror::Error)]
pub enum StableError {
    #[error("genus {0} is outside the range of this operation")]
    Genus(u32),
    #[error("recurrence consistency failure: {0}")]
    Inconsistent(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Layers(#[from] genus_expansion::GenusError),
}

/// A stable graph polynomial with the genus it represents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StablePolynomial {
    pub g: u32,
    pub r: usize,
    pub poly: Poly,
}

fn a(g: u16, colors: &[usize], r: usize) -> Symbol {
    Symbol::a(g, MultiIndex::of_colors(r, colors))
}

fn mono(f: &[(Symbol, i32)]) -> Monomial {
    Monomial::from_factors(f.iter().cloned())
}

/// The formal `D_i(P₁) = Q₁^{(i)}`: a genus-one vertex with the tail, and a
/// trivalent vertex with the tail and a loop.
pub fn q1(r: usize, i: usize) -> Poly {
    let mut p = Poly::var(a(1, &[i], r));
    for (u, v) in pairs(r) {
        p.add_term(mono(&[(Symbol::s(u, v), 1), (a(0, &[i, u, v], r), 1)]), pair_factorial(u, v).recip());
    }
    p
}

/// The formal `D_iD_j(P₁)`: genus-one graphs with two marked tails `i`, `j`
/// other than those with both tails on one trivalent genus-zero vertex.
/// These are a genus-one vertex with both tails, a loop on a four-valent
/// vertex, and a two-cycle with one tail on each vertex.
pub fn dd1(r: usize, i: usize, j: usize) -> Poly {
    let mut p = Poly::var(a(1, &[i, j], r));
    for (u, v) in pairs(r) {
        p.add_term(mono(&[(Symbol::s(u, v), 1), (a(0, &[i, j, u, v], r), 1)]), pair_factorial(u, v).recip());
    }
    for pp in 0..r {
        for q in 0..r {
            for u in 0..r {
                for t in 0..r {
                    let m = Monomial::var(Symbol::s(pp, u))
                        .mul(&Monomial::var(Symbol::s(q, t)))
                        .mul(&Monomial::var(a(0, &[i, pp, q], r)))
                        .mul(&Monomial::var(a(0, &[j, u, t], r)));
                    p.add_term(m, rat(1, 2));
                }
            }
        }
    }
    p
}

/// `Σ_{p,q} D_p(P) s_pq a_{0,{ijq}}`: the two tails on one trivalent vertex
/// joined to the rest of the graph.
fn attach_pair(dp: &[Poly], i: usize, j: usize, r: usize) -> Poly {
    let mut out = Poly::zero();
    for (p, dpp) in dp.iter().enumerate() {
        for q in 0..r {
            out.add_assign(&dpp.mul_monomial(&mono(&[(Symbol::s(p, q), 1), (a(0, &[i, j, q], r), 1)])));
        }
    }
    out
}

/// All `P_g` up to some genus over `r` colors, with `Q_g^{(i)} = D_i(P_g)`.
#[derive(Clone, Debug)]
pub struct StableTower {
    r: usize,
    /// `p[g]`; entries 0 and 1 are empty.
    p: Vec<Poly>,
    /// `q[g][i]`; entry 0 is empty, entry 1 holds the formal seeds.
    q: Vec<Vec<Poly>>,
}

impl StableTower {
    pub fn new(r: usize) -> Self {
        StableTower { r, p: vec![Poly::zero(), Poly::zero()], q: vec![Vec::new(), (0..r).map(|i| q1(r, i)).collect()] }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn max_genus(&self) -> u32 {
        self.p.len() as u32 - 1
    }

    /// Computes `P_g` for every genus up to `g`.
    pub fn extend_to(&mut self, g: u32) -> Result<(), StableError> {
        while self.max_genus() < g {
            let next = self.max_genus() + 1;
            let p = self.solve_next(next)?;
            let q = par::map(&(0..self.r).collect::<Vec<_>>(), |&i| derive(i, &p, self.r));
            self.p.push(p);
            self.q.push(q);
        }
        Ok(())
    }

    pub fn p(&self, g: u32) -> Result<StablePolynomial, StableError> {
        match self.p.get(g as usize) {
            Some(p) if g >= 2 => Ok(StablePolynomial { g, r: self.r, poly: p.clone() }),
            _ => Err(StableError::Genus(g)),
        }
    }

    /// `Q_g^{(i)}`: the one-tail generating function.
    pub fn q(&self, g: u32, i: usize) -> Result<Poly, StableError> {
        if g == 0 {
            return Err(StableError::Genus(g));
        }
        self.q.get(g as usize).map(|v| v[i].clone()).ok_or(StableError::Genus(g))
    }

    fn dd(&self, g: u32, i: usize, j: usize) -> Result<Poly, StableError> {
        match g {
            0 => Err(StableError::Genus(g)),
            1 => Ok(dd1(self.r, i, j)),
            _ => Ok(derive(i, &self.q(g, j)?, self.r)),
        }
    }

    /// `R_g^{(ij)} = (1/{ij}!)[D_iD_j(P_g) + Σ_{p,q} D_p(P_g) s_pq a_{0,{ijq}}]`:
    /// two tails, unlabeled when `i = j`.
    pub fn r_term(&self, g: u32, i: usize, j: usize) -> Result<Poly, StableError> {
        let dp: Vec<Poly> = (0..self.r).map(|p| self.q(g, p)).collect::<Result<_, _>>()?;
        Ok(self.dd(g, i, j)?.add(&attach_pair(&dp, i, j, self.r)).scale(&pair_factorial(i, j).recip()))
    }

    /// Right-hand side of `∂P_g/∂s_ij`.
    fn rhs(&self, g: u32, i: usize, j: usize) -> Result<Poly, StableError> {
        let mut acc = self.r_term(g - 1, i, j)?.scale(&pair_factorial(i, j));
        for m in 1..g {
            acc.add_assign(&self.q(m, i)?.mul(&self.q(g - m, j)?));
        }
        Ok(acc.scale(&pair_factorial(i, j).recip()))
    }

    fn solve_next(&self, g: u32) -> Result<Poly, StableError> {
        if g < 2 {
            return Err(StableError::Genus(g));
        }
        let r = self.r;
        let rhs: Vec<((usize, usize), Poly)> = par::map(&pairs(r), |&(i, j)| self.rhs(g, i, j).map(|p| ((i, j), p)))
            .into_iter()
            .collect::<Result<_, _>>()?;
        let mut p = integrate_s(&rhs).map_err(|e| StableError::Inconsistent(e.to_string()))?;
        p.add_term(Monomial::var(Symbol::a(g as u16, MultiIndex::zero(r))), int(1));
        for ((i, j), want) in &rhs {
            if p.diff(&Symbol::s(*i, *j)) != *want {
                return Err(StableError::Inconsistent(format!("∂P_{g}/∂s{}{} differs from the recurrence", i + 1, j + 1)));
            }
        }
        check_invariants(g, &p)?;
        Ok(p)
    }
}

/// Homogeneity of degree `1-g`, S-degree at most `3g-3`, vertex genera at
/// most `g`, and no unstable vertex labels.
pub fn check_invariants(g: u32, p: &Poly) -> Result<(), StableError> {
    for (m, _) in p.terms() {
        if stable_degree(m) != 1 - g as i64 {
            return Err(StableError::Invariant(format!("{m} has degree {} in P_{g}", stable_degree(m))));
        }
        if m.s_degree() > 3 * g - 3 {
            return Err(StableError::Invariant(format!("{m} exceeds S-degree {}", 3 * g - 3)));
        }
        for (s, _) in m.factors() {
            match s {
                Symbol::A(h, n) if *h as u32 > g || (*h == 0 && n.total() < 3) || (*h == 1 && n.total() == 0) => {
                    return Err(StableError::Invariant(format!("{s} appears in P_{g}")));
                }
                Symbol::X(_) | Symbol::Hbar => return Err(StableError::Invariant(format!("{s} appears in P_{g}"))),
                _ => {}
            }
        }
    }
    Ok(())
}

/// `P_g` over `r` colors.
pub fn solve_p(g: u32, r: usize) -> Result<StablePolynomial, StableError> {
    let mut t = StableTower::new(r);
    t.extend_to(g)?;
    t.p(g)
}

/// The printed genus-two polynomial at `r = 1`.
pub fn stored_p2_r1() -> Poly {
    let s = Symbol::s(0, 0);
    let a1 = |g: u16, n: u16| Symbol::a(g, MultiIndex::from_slice(&[n]));
    Poly::from_terms([
        (Monomial::var(a1(2, 0)), int(1)),
        (mono(&[(a1(1, 1), 2), (s.clone(), 1)]), rat(1, 2)),
        (mono(&[(a1(1, 2), 1), (s.clone(), 1)]), rat(1, 2)),
        (mono(&[(a1(1, 1), 1), (a1(0, 3), 1), (s.clone(), 2)]), rat(1, 2)),
        (mono(&[(a1(0, 4), 1), (s.clone(), 2)]), rat(1, 8)),
        (mono(&[(a1(0, 3), 2), (s.clone(), 3)]), rat(1, 12) + rat(1, 8)),
    ])
}

/// `𝒫 = Σ_{g=2}^{G} P_g ħ^{g-1}` restricted to the box `t`.
pub fn script_p_series(tower: &mut StableTower, t: TruncationSpec) -> Result<Series, StableError> {
    let top = t.g.ok_or_else(|| StableError::Invariant("the 𝒫 series needs a finite G".into()))?;
    tower.extend_to(top)?;
    let mut acc = Poly::zero();
    for g in 2..=top {
        acc.add_assign(&tower.p(g)?.poly.mul_monomial(&Monomial::pow(Symbol::Hbar, g as i32 - 1)));
    }
    Ok(Series::new(acc, t)?)
}

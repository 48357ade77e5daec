//! Cross-method checks. Every check is exact and returns one report per
//! identity; a graph enumeration serves as the independent side wherever
//! the identity is a statement about graph sums.

use genus_expansion::{
    chain_matrix, compare, cycle_term, functional_residual, genus_layers, gradient, hessian, invert_check, layer_box,
    layer_residual, phi_residual, psi0_integrate, psi1, psi_g_substitute, theta_identity, tree_solve, CheckReport,
};
use graph_enum::shapes::{chain_classes, cycle_classes};
use graph_enum::{class_sum, enumerate_graphs, graph_series, Bounds, EnumSpec, GraphClass, VertexFilter, VertexRule};
use num_traits::One;
use pde_solve::{init, solve, Kind, PdeProblem};
use series_core::rational::{factorial, int};
use series_core::{Monomial, MultiIndex, Poly, Rational, Symbol, TruncationSpec};
use stable_poly::comb::printed_comb;
use stable_poly::{counting_comb, counting_stable, solve_p_comb, specialize_comb, StableTower};

use crate::OracleError;

/// How the vertex weights `a_{g,N}` enter a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weights {
    Symbolic,
    /// Every `a_{g,N}` set to 1.
    Combinatorial,
}

impl std::fmt::Display for Weights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Weights::Symbolic => "symbolic",
            Weights::Combinatorial => "combinatorial",
        })
    }
}

fn ones(p: &Poly) -> Poly {
    p.evaluate(&|s| matches!(s, Symbol::A(..)).then(Rational::one))
}

fn weigh(p: &Poly, w: Weights) -> Poly {
    match w {
        Weights::Symbolic => p.clone(),
        Weights::Combinatorial => ones(p),
    }
}

fn check_eq(name: String, lhs: &Poly, rhs: &Poly) -> CheckReport {
    if lhs == rhs {
        return CheckReport::pass(&name);
    }
    let d = lhs.sub(rhs);
    let (m, c) = d.first_term().expect("nonzero difference");
    CheckReport::fail(&name, format!("difference {c} at {m}"))
}

fn tag(mut reps: Vec<CheckReport>, suffix: &str) -> Vec<CheckReport> {
    for r in &mut reps {
        r.name = format!("{} [{suffix}]", r.name);
    }
    reps
}

/// Settings shared by every check.
#[derive(Clone, Debug)]
pub struct Suite {
    /// Cap on the number of isomorphism classes of any one enumeration.
    pub max_classes: usize,
}

impl Default for Suite {
    fn default() -> Self {
        Suite { max_classes: graph_enum::enumerate::DEFAULT_MAX_CLASSES }
    }
}

impl Suite {
    fn enumerate(&self, r: usize, bounds: Bounds, vertices: VertexFilter) -> Result<Vec<GraphClass>, OracleError> {
        let mut spec = EnumSpec::new(r, bounds, vertices);
        spec.max_classes = self.max_classes;
        Ok(enumerate_graphs(&spec)?.classes)
    }

    /// `Σ μ/|Aut|` over closed connected stable genus-`g` graphs.
    pub fn closed_stable_sum(&self, r: usize, g: u32) -> Result<Poly, OracleError> {
        let bounds = Bounds { max_s: 3 * g - 3, max_tails: 0, max_genus: Some(g as i64), connected_only: true };
        let classes = self.enumerate(r, bounds, VertexFilter::with_rule(g as u16, VertexRule::Stable))?;
        let closed: Vec<GraphClass> = classes.into_iter().filter(|c| c.genus == g as i64).collect();
        Ok(class_sum(&closed).hbar_layer(g as i32 - 1))
    }

    /// The recurrence for `P_g^comb` against the printed tables, `g = 2..=6`.
    pub fn golden_tables(&self) -> Result<Vec<CheckReport>, OracleError> {
        let p = solve_p_comb(6)?;
        Ok((2..=6usize)
            .zip(printed_comb())
            .map(|(g, want)| {
                let name = format!("P_{g}^comb equals the printed table");
                if p[g] == want {
                    CheckReport::pass(&name)
                } else {
                    CheckReport::fail(&name, format!("computed {}, printed {want}", p[g]))
                }
            })
            .collect())
    }

    /// `specialize_comb(P_g) = P_g^comb` for `g <= max_g`, and `P_g` against
    /// enumeration for `g <= enum_g`, at one color.
    pub fn dual_path(&self, max_g: u32, enum_g: u32) -> Result<Vec<CheckReport>, OracleError> {
        let mut tower = StableTower::new(1);
        tower.extend_to(max_g.max(enum_g))?;
        let comb = solve_p_comb(max_g)?;
        let mut out = Vec::new();
        for g in 2..=max_g {
            let name = format!("specialized P_{g} equals P_{g}^comb");
            let got = specialize_comb(&tower.p(g)?)?;
            out.push(if got == comb[g as usize] {
                CheckReport::pass(&name)
            } else {
                CheckReport::fail(&name, format!("{got} vs {}", comb[g as usize]))
            });
        }
        for g in 2..=enum_g {
            let want = self.closed_stable_sum(1, g)?;
            out.push(check_eq(format!("P_{g} equals the closed stable graph sum"), &tower.p(g)?.poly, &want));
        }
        Ok(out)
    }

    /// Burgers against connected graphs, and `exp` of the Burgers solution
    /// against heat and against all graphs, with symbolic weights.
    pub fn pde_graph_equivalence(&self, r: usize, t: TruncationSpec) -> Result<Vec<CheckReport>, OracleError> {
        let top = t.g.ok_or_else(|| OracleError::Config("the equivalence check needs a finite G".into()))?;
        let val = t.dx + 2 * t.ds;
        let consts: Vec<(u16, MultiIndex)> = (0..=top as u16).map(|g| (g, MultiIndex::zero(r))).collect();
        let u = init::symbolic(r, top as u16, val, &consts);
        let mut filter = VertexFilter::any(top as u16).without_constants(r);
        filter.max_valence = Some(val);
        let bounds = |connected_only| Bounds { max_s: t.ds, max_tails: t.dx, max_genus: Some(top as i64), connected_only };
        let tag = format!("r={r} {t}");

        let burg = solve(&PdeProblem { r, u: u.clone(), trunc: t, kind: Kind::Burgers })?;
        let mut spec = EnumSpec::new(r, bounds(true), filter.clone());
        spec.max_classes = self.max_classes;
        let conn = graph_series(&enumerate_graphs(&spec)?, t)?;
        let mut out = vec![compare(&format!("Burgers equals connected graphs [{tag}]"), &[burg], &[conn])];

        let all_genera = solve(&PdeProblem { r, u: u.clone(), trunc: t.with_g(None), kind: Kind::Burgers })?;
        let e = all_genera.exp_capped(top)?;
        let heat = solve(&PdeProblem { r, u, trunc: t, kind: Kind::Heat })?;
        let mut spec = EnumSpec::new(r, bounds(false), filter);
        spec.max_classes = self.max_classes;
        let all = graph_series(&enumerate_graphs(&spec)?, t)?;
        out.push(compare(&format!("exp of Burgers equals heat [{tag}]"), &[e], std::slice::from_ref(&heat)));
        out.push(compare(&format!("heat equals all graphs [{tag}]"), &[heat], &[all]));
        Ok(out)
    }

    /// Each `ħ^{g-1}` layer of the Burgers solution against its dedicated
    /// formula: `Ψ₀` by integration, `Ψ₁` in closed form, and `Ψ_g` for
    /// `2 <= g <= G` by substitution into `P_g`. Also runs the layer residuals.
    pub fn layer_consistency(&self, r: usize, t: TruncationSpec) -> Result<Vec<CheckReport>, OracleError> {
        let top = t.g.ok_or_else(|| OracleError::Config("layer consistency needs a finite G".into()))?;
        let (dx, ds) = (t.dx, t.ds);
        let u = init::symbolic(r, top as u16, dx + 2 * ds, &init::vacuum_labels(r));
        let layers = genus_layers(&u, top as u16);
        let h = hessian(&layers[0], r);
        let lb = layer_box(dx, ds);
        let phi = tree_solve(&gradient(&layers[0], r), lb)?;
        let burg = solve(&PdeProblem { r, u, trunc: t, kind: Kind::Burgers })?;
        let tag = format!("r={r} {t}");

        let mut psi = vec![psi0_integrate(&layers[0], &phi, lb)?];
        if top >= 1 {
            psi.push(psi1(&layers[1], &h, &phi, &psi[0], lb)?);
        }
        let mut tower = StableTower::new(r);
        tower.extend_to(top.max(1))?;
        for g in 2..=top {
            psi.push(psi_g_substitute(&tower.p(g)?.poly, &layers, &h, &phi, lb)?);
        }
        let mut out = Vec::new();
        for (g, layer) in psi.iter().enumerate() {
            let want = burg.hbar_layer(g as i32 - 1)?;
            let how = match g {
                0 => "integrated Ψ₀",
                1 => "closed-form Ψ₁",
                _ => "Ψ_g from P_g",
            };
            out.push(compare(&format!("genus-{g} Burgers layer equals {how} [{tag}]"), &[want], std::slice::from_ref(layer)));
            if dx >= 2 && ds >= 1 {
                let mut rep = layer_residual(&psi[..=g], r)?;
                rep.name = format!("{} [{tag}]", rep.name);
                out.push(rep);
            }
        }
        Ok(out)
    }

    /// Tree-level identities, chain matrices and cycle terms in `(dx, ds)`.
    pub fn identity_suite(&self, r: usize, dx: u32, ds: u32, w: Weights) -> Result<Vec<CheckReport>, OracleError> {
        let val = dx + 2 * ds + 2;
        let u0 = weigh(&init::symbolic(r, 0, val, &[]), w).hbar_layer(-1);
        let f = gradient(&u0, r);
        let h = hessian(&u0, r);
        let t = layer_box(dx, ds);
        let phi = tree_solve(&f, layer_box(dx + ds.max(1), ds))?;
        let label = format!("r={r} Dx={dx},Ds={ds} {w}");

        let mut out = vec![functional_residual(&f, &phi, t)?];
        out.extend(invert_check(&f, &phi, t)?);
        out.extend(theta_identity(&h, &phi, t)?);
        out.push(phi_residual(&phi.iter().map(|p| p.restrict(t)).collect::<Result<Vec<_>, _>>()?)?);

        for k in 1..=ds as usize + 1 {
            let lt = layer_box(dx, k as u32 - 1);
            let ups = chain_matrix(&h, k, lt)?;
            for i in 0..r {
                for j in 0..r {
                    let classes = chain_classes(r, i as u8, j as u8, k, dx)?;
                    let want = weigh(&tailed_sum(&classes), w).retain(|m| lt.admits(m));
                    out.push(check_eq(format!("Υ_{k} entry ({},{}) equals the chain sum", i + 1, j + 1), ups.get(i, j).poly(), &want));
                }
            }
        }
        for k in 1..=ds as usize {
            let ct = layer_box(dx, k as u32);
            let cyc = cycle_term(&h, k, ct)?;
            let want = weigh(&tailed_sum(&cycle_classes(r, k, dx)?), w).retain(|m| ct.admits(m));
            out.push(check_eq(format!("cycle term k={k} equals the cycle sum"), cyc.poly(), &want));
        }
        Ok(tag(out, &label))
    }

    /// `Φ^comb(s, 0) = Σ (k+1)^k s^k/(k+1)!` for `k <= max_k`.
    pub fn cayley(&self, max_k: u32) -> Result<Vec<CheckReport>, OracleError> {
        let u0 = init::builtin_comb(max_k + 1).hbar_layer(-1);
        let phi = tree_solve(&gradient(&u0, 1), layer_box(0, max_k))?;
        Ok((0..=max_k)
            .map(|k| {
                let name = format!("Φ^comb coefficient of s^{k}");
                let got = phi[0].coeff(&Monomial::pow(Symbol::s(0, 0), k as i32));
                let want = int((k as i64 + 1).pow(k)) / factorial(k + 1);
                if got == want {
                    CheckReport::pass(&name)
                } else {
                    CheckReport::fail(&name, format!("{got} vs {want}"))
                }
            })
            .collect())
    }

    /// Closed-form counting functions against specialized Burgers layers in
    /// `(dx, ds)`, and their `x = 0` parts against closed graph counts.
    pub fn counting(&self, dx: u32, ds: u32, max_g: u32) -> Result<Vec<CheckReport>, OracleError> {
        let p = solve_p_comb(max_g)?;
        let t = TruncationSpec::new(dx, ds, max_g);
        let mut out = Vec::new();
        for (kind, u) in [("comb", init::builtin_comb(dx + 2 * ds)), ("stable", init::builtin_stable(dx + 2 * ds))] {
            let burg = solve(&PdeProblem { r: 1, u, trunc: t, kind: Kind::Burgers })?;
            for g in 2..=max_g {
                let lt = layer_box(dx, ds);
                let c = match kind {
                    "comb" => counting_comb(g, &p[g as usize], lt)?,
                    _ => counting_stable(g, &p[g as usize], lt)?,
                };
                out.push(compare(&format!("{kind} counting function g={g} equals the Burgers layer [Dx={dx},Ds={ds}]"), &[c], &[burg.hbar_layer(g as i32 - 1)?]));
            }
        }
        let closed = layer_box(0, ds);
        for (kind, rule) in [("comb", VertexRule::Combinatorial), ("stable", VertexRule::CombStable)] {
            let bounds = Bounds { max_s: ds, max_tails: 0, max_genus: Some(2), connected_only: true };
            let classes = self.enumerate(1, bounds, VertexFilter::with_rule(0, rule))?;
            let two: Vec<GraphClass> = classes.into_iter().filter(|c| c.genus == 2).collect();
            let want = ones(&class_sum(&two).hbar_layer(1));
            let c = match kind {
                "comb" => counting_comb(2, &p[2], closed)?,
                _ => counting_stable(2, &p[2], closed)?,
            };
            out.push(check_eq(format!("{kind} counting function at x=0, g=2 equals closed graph counts [Ds={ds}]"), c.poly(), &want));
        }
        Ok(out)
    }
}

/// `Σ μ X^N/|Aut|` over classes with the ħ power dropped.
fn tailed_sum(classes: &[GraphClass]) -> Poly {
    let mut p = Poly::zero();
    for (m, c) in class_sum(classes).into_terms() {
        p.add_term(m.without_hbar(), c);
    }
    p
}


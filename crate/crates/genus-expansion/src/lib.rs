//! Genus expansion `Ψ = Σ_g Ψ_g ħ^{g-1}` of the Burgers solution: the tree
//! level `Φ = ∇Ψ₀` as a fixed point of `Φ = F(X + SΦ)`, the one-loop layer
//! `Ψ₁`, chain matrices, and the higher layers obtained by substituting into
//! a stable graph polynomial.
//!
//! Every layer is an ħ-free series in a box `(Dx, Ds)`.

pub mod higher;
pub mod loops;
pub mod tree;

use series_core::{Poly, Series, SeriesError, SeriesMatrix, Symbol, TruncationSpec};

pub use higher::{layer_residual, psi_g_substitute};
pub use loops::{chain_matrix, cycle_term, psi1};
pub use tree::{functional_residual, images_b, invert_check, phi_residual, psi0_integrate, theta_identity, tree_solve};

#[derive(Debug, thiserror::Error)]
pub enum GenusError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Pde(#[from] pde_solve::PdeError),
    #[error("{0}")]
    Check(String),
}

impl From<pde_solve::Inconsistency> for GenusError {
    fn from(e: pde_solve::Inconsistency) -> Self {
        GenusError::Pde(pde_solve::PdeError::Inconsistent(e))
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckReport {
    pub fn pass(name: &str) -> Self {
        CheckReport { name: name.into(), passed: true, detail: String::new() }
    }

    pub fn fail(name: &str, detail: String) -> Self {
        CheckReport { name: name.into(), passed: false, detail }
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed {
            write!(f, "PASS {}", self.name)
        } else {
            write!(f, "FAIL {}: {}", self.name, self.detail)
        }
    }
}

/// Compares series entry by entry and names the first offending monomial.
pub fn compare(name: &str, lhs: &[Series], rhs: &[Series]) -> CheckReport {
    if lhs.len() != rhs.len() {
        return CheckReport::fail(name, format!("{} entries vs {}", lhs.len(), rhs.len()));
    }
    for (k, (a, b)) in lhs.iter().zip(rhs).enumerate() {
        if a.trunc() != b.trunc() {
            return CheckReport::fail(name, format!("entry {k}: box {} vs {}", a.trunc(), b.trunc()));
        }
        if a != b {
            let d = a.poly().sub(b.poly());
            let (m, c) = d.first_term().expect("nonzero difference");
            return CheckReport::fail(name, format!("entry {k}: difference {c} at {m}"));
        }
    }
    CheckReport::pass(name)
}

/// The ħ-free box `(dx, ds)`.
pub fn layer_box(dx: u32, ds: u32) -> TruncationSpec {
    TruncationSpec::all_genera(dx, ds)
}

pub fn gradient(p: &Poly, r: usize) -> Vec<Poly> {
    (0..r).map(|i| p.diff(&Symbol::x(i))).collect()
}

pub fn hessian(p: &Poly, r: usize) -> Vec<Vec<Poly>> {
    let g = gradient(p, r);
    g.iter().map(|gi| (0..r).map(|j| gi.diff(&Symbol::x(j))).collect()).collect()
}

/// `U_g(X)` for `g = 0..=max_g`, the coefficients of `ħ^{g-1}`.
pub fn genus_layers(u: &Poly, max_g: u16) -> Vec<Poly> {
    (0..=max_g).map(|g| u.hbar_layer(g as i32 - 1)).collect()
}

/// A matrix of exact X-only polynomials as series in `t`.
pub fn poly_matrix(m: &[Vec<Poly>], t: TruncationSpec) -> Result<SeriesMatrix, SeriesError> {
    let r = m.len();
    let mut err = None;
    let out = SeriesMatrix::from_fn(r, t, |i, j| match Series::new(m[i][j].clone(), t) {
        Ok(s) => s,
        Err(e) => {
            err = Some(e);
            Series::zero(t)
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Composes every entry of a polynomial matrix with `X -> images`.
pub fn compose_matrix(m: &[Vec<Poly>], images: &[Series], t: TruncationSpec) -> Result<SeriesMatrix, SeriesError> {
    let r = m.len();
    let mut entries = Vec::with_capacity(r * r);
    for row in m {
        for p in row {
            entries.push(Series::compose_poly(p, images, t)?);
        }
    }
    let mut it = entries.into_iter();
    SeriesMatrix::from_fn(r, t, |_, _| it.next().expect("r*r entries"))
}

/// Fails unless `have` contains `need`.
pub(crate) fn require(have: TruncationSpec, need: TruncationSpec, what: &str) -> Result<(), GenusError> {
    if need.within(&have) {
        Ok(())
    } else {
        Err(GenusError::Series(SeriesError::InsufficientPrecision(format!("{what} is known in {have}, needs {need}"))))
    }
}

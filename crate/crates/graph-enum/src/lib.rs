//! Brute-force enumeration of bipartite colored modular graphs and the
//! generating series `Σ μ(Γ) X^{N(Γ)} ħ^{g(Γ)−1} / |Aut Γ|` built from them.

pub mod canon;
pub mod enumerate;
pub mod graph;
pub mod shapes;

use num_bigint::BigInt;

use series_core::{Monomial, Poly, Rational, Series, SeriesError, Symbol, TruncationSpec};

pub use canon::{canonicalize, Canonical};
pub use enumerate::{classify, enumerate_graphs, Bounds, EnumSpec, GraphClass, GraphSet, VertexFilter, VertexRule};
pub use graph::{AVertex, ModularGraph, Slot};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("enumeration exceeds the class limit of {0}")]
    TooMany(usize),
    #[error("invalid request: {0}")]
    Invalid(String),
    #[error("enumeration bounds do not cover {trunc}: {why}")]
    Coverage { trunc: TruncationSpec, why: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `μ(Γ) X^{N(Γ)} ħ^{g−1} / |Aut Γ|` for one class.
pub fn class_term(c: &GraphClass) -> (Monomial, Rational) {
    let mut m = c.mu.mul_pow(&Symbol::Hbar, (c.genus - 1) as i32);
    for (i, &t) in c.tails.0.iter().enumerate() {
        if t > 0 {
            m = m.mul_pow(&Symbol::x(i), t as i32);
        }
    }
    (m, Rational::new(BigInt::from(1), BigInt::from(c.aut_order.clone())))
}

/// Sum over the classes without any coverage check.
pub fn class_sum(classes: &[GraphClass]) -> Poly {
    let mut p = Poly::zero();
    for c in classes {
        let (m, w) = class_term(c);
        p.add_term(m, w);
    }
    p
}

/// The generating series of a complete enumeration, restricted to `trunc`.
/// Fails when the enumeration bounds do not reach every monomial of the box.
pub fn graph_series(set: &GraphSet, trunc: TruncationSpec) -> Result<Series, GraphError> {
    let b = &set.spec.bounds;
    let gap = |why: String| Err(GraphError::Coverage { trunc, why });
    if b.max_s < trunc.ds {
        return gap(format!("s-vertices enumerated up to {}", b.max_s));
    }
    if b.max_tails < trunc.dx {
        return gap(format!("tails enumerated up to {}", b.max_tails));
    }
    match (trunc.g, b.max_genus) {
        (Some(g), Some(mg)) if mg < g as i64 => return gap(format!("genus enumerated up to {mg}")),
        (None, Some(mg)) => return gap(format!("genus enumerated up to {mg} but the box has no ħ cap")),
        _ => {}
    }
    Ok(Series::new(class_sum(&set.classes).retain(|m| trunc.admits(m)), trunc)?)
}

/// One line per class: canonical form in hex, genus, tails, `|Aut|`, `μ`.
pub fn dump(set: &GraphSet) -> String {
    let mut out = String::new();
    for c in &set.classes {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            canon::hex(&c.canonical_form),
            c.genus,
            c.tails,
            c.aut_order,
            c.mu
        ));
    }
    out
}

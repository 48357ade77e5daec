//! The derivations `D_k` and the grading of the ring `Q[{a_{m,N}}, {s_ij}]`.

use series_core::{Monomial, Poly, Symbol};

/// `deg a_{g,N} = 1 - |N| - g`, `deg s_ij = 1`.
pub fn stable_degree(m: &Monomial) -> i64 {
    m.factors()
        .iter()
        .map(|(s, e)| {
            let d = match s {
                Symbol::A(g, n) => 1 - n.total() as i64 - *g as i64,
                Symbol::S(..) => 1,
                _ => 0,
            };
            d * *e as i64
        })
        .sum()
}

/// `D_k` on a generator.
fn derive_symbol(k: usize, s: &Symbol, r: usize) -> Poly {
    match s {
        Symbol::A(g, n) => Poly::var(Symbol::a(*g, n.add_color(k))),
        Symbol::S(i, j) => {
            let (i, j) = (*i as usize, *j as usize);
            let mut out = Poly::zero();
            for p in 0..r {
                for q in 0..r {
                    let m = Monomial::var(Symbol::s(i, p))
                        .mul(&Monomial::var(Symbol::s(j, q)))
                        .mul(&Monomial::var(Symbol::a(0, series_core::MultiIndex::of_colors(r, &[p, q, k]))));
                    out.add_term(m, series_core::rational::int(1));
                }
            }
            out
        }
        _ => Poly::zero(),
    }
}

/// `D_k(p)`, extended from the generators by the Leibniz rule.
pub fn derive(k: usize, p: &Poly, r: usize) -> Poly {
    let mut cache: std::collections::HashMap<Symbol, Poly> = std::collections::HashMap::new();
    let mut out = Poly::zero();
    for (m, c) in p.terms() {
        for (s, e) in m.factors() {
            let img = cache.entry(s.clone()).or_insert_with(|| derive_symbol(k, s, r));
            if img.is_zero() {
                continue;
            }
            let rest = m.mul_pow(s, -1);
            out.add_assign(&img.mul_monomial(&rest).scale(&(c * series_core::rational::int(*e as i64))));
        }
    }
    out
}

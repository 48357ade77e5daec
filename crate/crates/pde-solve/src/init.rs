//! Initial conditions `U(X, ħ) = sum a_{g,N} X^N/N! ħ^{g-1}`.

use num_traits::One;

use series_core::{Monomial, MultiIndex, Poly, Rational, Symbol};

/// `X^N / N!` times `ħ^{g-1}` times `a_{g,N}` (or a rational in place of the symbol).
pub fn vertex_term(g: u16, n: &MultiIndex, weight: Option<Rational>) -> Poly {
    let mut f: Vec<(Symbol, i32)> = n
        .0
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| (Symbol::x(i), k as i32))
        .collect();
    f.push((Symbol::Hbar, g as i32 - 1));
    let symbolic = weight.is_none();
    let coef = weight.unwrap_or_else(Rational::one) / n.factorial();
    match symbolic {
        false => Poly::term(Monomial::from_factors(f), coef),
        true => {
            f.push((Symbol::a(g, n.clone()), 1));
            Poly::term(Monomial::from_factors(f), coef)
        }
    }
}

/// Fully symbolic `U` with every `a_{g,N}`, `g <= max_genus`,
/// `|N| <= max_valence`, except the excluded labels.
pub fn symbolic(r: usize, max_genus: u16, max_valence: u32, exclude: &[(u16, MultiIndex)]) -> Poly {
    let mut u = Poly::zero();
    for g in 0..=max_genus {
        for n in MultiIndex::all_up_to(r, max_valence) {
            if exclude.iter().any(|(eg, en)| *eg == g && *en == n) {
                continue;
            }
            u.add_assign(&vertex_term(g, &n, None));
        }
    }
    u
}

/// The labels `a_{0,0}` and `a_{1,0}`, which contribute only constants to the
/// Burgers solution and make `exp(U)` nonterminating.
pub fn vacuum_labels(r: usize) -> Vec<(u16, MultiIndex)> {
    vec![(0, MultiIndex::zero(r)), (1, MultiIndex::zero(r))]
}

/// Combinatorial weights at r=1: `a_{0,n} = 1` for `min_valence <= n <= max_valence`.
pub fn combinatorial(min_valence: u32, max_valence: u32) -> Poly {
    let mut u = Poly::zero();
    for n in min_valence..=max_valence {
        u.add_assign(&vertex_term(0, &MultiIndex::from_slice(&[n as u16]), Some(Rational::one())));
    }
    u
}

/// r=1 weights with `a_{0,n} = 1` for every `n >= 1`.
pub fn builtin_comb(max_valence: u32) -> Poly {
    combinatorial(1, max_valence)
}

/// r=1 weights with `a_{0,n} = 1` for every `n >= 3`.
pub fn builtin_stable(max_valence: u32) -> Poly {
    combinatorial(3, max_valence)
}

/// `U_g(X)`: the coefficient of `ħ^{g-1}` in `U`.
pub fn genus_part(u: &Poly, g: u16) -> Poly {
    u.hbar_layer(g as i32 - 1)
}

/// Replaces `a_{g,N}` by a rational weight.
pub fn specialize(u: &Poly, weight: &dyn Fn(u16, &MultiIndex) -> Rational) -> Poly {
    u.evaluate(&|s| match s {
        Symbol::A(g, n) => Some(weight(*g, n)),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_u_contains_weighted_terms() {
        let u = symbolic(1, 1, 2, &vacuum_labels(1));
        assert_eq!(u.len(), 4);
        assert_eq!(u.to_string(), "x1*a[0;1]*h^-1 + x1*a[1;1] + 1/2*x1^2*a[0;2]*h^-1 + 1/2*x1^2*a[1;2]");
        assert_eq!(builtin_stable(4).to_string(), "1/6*x1^3*h^-1 + 1/24*x1^4*h^-1");
    }
}

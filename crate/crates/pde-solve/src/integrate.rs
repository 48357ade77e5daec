//! Integration of `dF/ds_ij = R_ij` one S-degree at a time.

use std::collections::BTreeMap;

use num_traits::Zero;

use series_core::rational::int;
use series_core::{Monomial, Poly, Rational, Symbol};

/// Two choices of `s_ij` disagreed on a coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistency {
    pub monomial: String,
    pub via: (usize, usize),
    pub against: (usize, usize),
}

impl std::fmt::Display for Inconsistency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "coefficient of {} differs between s{}{} and s{}{}",
            self.monomial,
            self.via.0 + 1,
            self.via.1 + 1,
            self.against.0 + 1,
            self.against.1 + 1
        )
    }
}

/// Given `R_ij = dF/ds_ij` restricted to S-degree `d-1` for every pair
/// `i <= j` (missing pairs mean zero), returns the S-degree-`d` part of `F`.
/// Every monomial is recovered from each `s_ij` it contains and all of these
/// must agree.
pub fn integrate_s(rhs: &[((usize, usize), Poly)]) -> Result<Poly, Inconsistency> {
    let mut cand: BTreeMap<(usize, usize), BTreeMap<Monomial, Rational>> = BTreeMap::new();
    for ((i, j), p) in rhs {
        let s = Symbol::s(*i, *j);
        let entry = cand.entry((*i, *j)).or_default();
        for (m, c) in p.terms() {
            let up = m.mul_pow(&s, 1);
            let e = up.exponent(&s);
            let v = c / int(e as i64);
            *entry.entry(up).or_insert_with(Rational::zero) += v;
        }
        entry.retain(|_, v| !v.is_zero());
    }
    let mut out = Poly::zero();
    let mut all: BTreeMap<&Monomial, (&(usize, usize), &Rational)> = BTreeMap::new();
    for (pair, terms) in &cand {
        for (m, c) in terms {
            all.entry(m).or_insert((pair, c));
        }
    }
    for (m, (pair, c)) in all {
        for (f, _) in m.factors() {
            if let Symbol::S(i, j) = f {
                let key = (*i as usize, *j as usize);
                let other = cand.get(&key).and_then(|t| t.get(m));
                let ok = match other {
                    Some(v) => v == c,
                    None => false,
                };
                if !ok {
                    return Err(Inconsistency { monomial: m.to_string(), via: *pair, against: key });
                }
            }
        }
        out.add_term(m.clone(), c.clone());
    }
    Ok(out)
}

/// All pairs `i <= j` for `r` colors.
pub fn pairs(r: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for i in 0..r {
        for j in i..r {
            v.push((i, j));
        }
    }
    v
}

/// `{ij}!`: 2 for `i == j`, else 1.
pub fn pair_factorial(i: usize, j: usize) -> Rational {
    if i == j {
        int(2)
    } else {
        int(1)
    }
}

/// Splits a polynomial by S-degree.
pub fn s_layers(p: &Poly, ds: u32) -> Vec<Poly> {
    let mut out = vec![Poly::zero(); ds as usize + 1];
    for (m, c) in p.terms() {
        let d = m.s_degree() as usize;
        if d <= ds as usize {
            out[d].add_term(m.clone(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use series_core::rational::rat;

    #[test]
    fn integrates_and_checks() {
        // F = s11*s12: dF/ds11 = s12, dF/ds12 = s11
        let s11 = Poly::var(Symbol::s(0, 0));
        let s12 = Poly::var(Symbol::s(0, 1));
        let f = integrate_s(&[((0, 0), s12.clone()), ((0, 1), s11.clone())]).unwrap();
        assert_eq!(f, s11.mul(&s12));
        let err = integrate_s(&[((0, 0), s12.scale(&rat(2, 1))), ((0, 1), s11)]).unwrap_err();
        assert!(err.to_string().contains("s11*s12"));
        // dF/ds11 = 2 s11 alone gives s11^2
        let sq = integrate_s(&[((0, 0), Poly::var(Symbol::s(0, 0)).scale(&rat(2, 1)))]).unwrap();
        assert_eq!(sq.to_string(), "s11^2");
    }
}

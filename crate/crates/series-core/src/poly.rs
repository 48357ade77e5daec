//! Exact sparse polynomials (Laurent in ħ) with no truncation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::monomial::Monomial;
use crate::par;
use crate::rational::{int, to_display_string, Rational};
use crate::symbol::Symbol;

/// Exact finite sum of rational multiples of monomials. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

/// Products below this many term pairs stay on the calling thread.
const PAR_THRESHOLD: usize = 1 << 12;

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(Monomial::var(s), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    /// Multiplies every term by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn retain<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.mul_filtered(other, &|_| true)
    }

    /// Product keeping only monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Poly, keep: &(dyn Fn(&Monomial) -> bool + Sync)) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (a, b) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let a_terms: Vec<(&Monomial, &Rational)> = a.terms.iter().collect();
        let partial = |chunk: &[(&Monomial, &Rational)]| {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for (ma, ca) in chunk {
                for (mb, cb) in &b.terms {
                    let m = ma.mul(mb);
                    if !keep(&m) {
                        continue;
                    }
                    let c = *ca * cb;
                    match acc.get_mut(&m) {
                        Some(v) => *v += c,
                        None => {
                            acc.insert(m, c);
                        }
                    }
                }
            }
            acc
        };
        let parts: Vec<HashMap<Monomial, Rational>> = if a.len() * b.len() < PAR_THRESHOLD {
            vec![partial(&a_terms)]
        } else {
            let chunk = (a_terms.len() / (4 * par::threads())).max(1);
            par::map(&a_terms.chunks(chunk).collect::<Vec<_>>(), |c| partial(c))
        };
        let mut out = Poly::zero();
        for part in parts {
            for (m, c) in part {
                out.add_term(m, c);
            }
        }
        out
    }

    /// `self^k` with filtering after every step.
    pub fn pow_filtered(&self, k: u32, keep: &(dyn Fn(&Monomial) -> bool + Sync)) -> Poly {
        let mut acc = Poly::one().retain(keep);
        for _ in 0..k {
            acc = acc.mul_filtered(self, keep);
        }
        acc
    }

    /// Formal partial derivative in any symbol; for ħ the exponent may be
    /// negative, which is handled as an ordinary power rule.
    pub fn diff(&self, v: &Symbol) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            out.add_term(m.mul_pow(v, -1), c * int(e as i64));
        }
        out
    }

    /// Substitutes every symbol for which `image` returns `Some`, keeping only
    /// monomials accepted by `keep` at each step. `keep` must describe an
    /// order ideal for the result to be exact.
    pub fn substitute(
        &self,
        image: &dyn Fn(&Symbol) -> Option<Poly>,
        keep: &(dyn Fn(&Monomial) -> bool + Sync),
    ) -> Poly {
        let mut cache: HashMap<Symbol, Vec<Poly>> = HashMap::new();
        let mut out = Poly::zero();
        let mut fixed_groups: BTreeMap<Monomial, Poly> = BTreeMap::new();
        // Group terms by their substituted part so each power product is formed once.
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut subst = Vec::new();
            for (s, e) in m.factors() {
                if image(s).is_some() {
                    subst.push((s.clone(), *e));
                } else {
                    kept.push((s.clone(), *e));
                }
            }
            let key = Monomial::from_factors(subst);
            let rest = Monomial::from_factors(kept);
            fixed_groups.entry(key).or_default().add_term(rest, c.clone());
        }
        for (key, rest) in fixed_groups {
            let mut prod = Poly::one();
            for (s, e) in key.factors() {
                assert!(*e > 0, "substitution of a negative power of {s}");
                let powers = cache.entry(s.clone()).or_insert_with(|| vec![Poly::one()]);
                while powers.len() <= *e as usize {
                    let img = image(s).expect("image exists");
                    let next = powers.last().unwrap().mul_filtered(&img, keep);
                    powers.push(next);
                }
                prod = prod.mul_filtered(&powers[*e as usize], keep);
                if prod.is_zero() {
                    break;
                }
            }
            if prod.is_zero() {
                continue;
            }
            out.add_assign(&prod.mul_filtered(&rest, keep));
        }
        out
    }

    /// Substitutes rational values for symbols (others are left alone).
    pub fn evaluate(&self, value: &dyn Fn(&Symbol) -> Option<Rational>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut kept = Vec::new();
            for (s, e) in m.factors() {
                match value(s) {
                    Some(v) => {
                        if v.is_zero() {
                            coef = Rational::zero();
                            break;
                        }
                        let mut p = Rational::one();
                        for _ in 0..e.unsigned_abs() {
                            p *= &v;
                        }
                        if *e < 0 {
                            p = p.recip();
                        }
                        coef *= p;
                    }
                    None => kept.push((s.clone(), *e)),
                }
            }
            out.add_term(Monomial::from_factors(kept), coef);
        }
        out
    }

    /// Terms whose monomial has the given ħ exponent, with ħ removed.
    pub fn hbar_layer(&self, e: i32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.hbar_exp() == e)
                .map(|(m, c)| (m.without_hbar(), c.clone())),
        )
    }

    pub fn min_hbar(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.hbar_exp()).min()
    }

    pub fn max_hbar(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.hbar_exp()).max()
    }

    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.x_degree()).max().unwrap_or(0)
    }

    pub fn max_s_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.s_degree()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// The set of distinct grades of terms (stable-polynomial grading).
    pub fn grades(&self) -> Vec<Option<i64>> {
        let mut v: Vec<Option<i64>> = self.terms.keys().map(|m| m.grade()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Homogeneous component of the given grade.
    pub fn homogeneous_part(&self, d: i64) -> Poly {
        self.retain(|m| m.grade() == Some(d))
    }

    /// Most extreme offending monomial for reports.
    pub fn first_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = if m.is_one() {
                to_display_string(&mag)
            } else if mag.is_one() {
                m.to_string()
            } else {
                format!("{}*{}", to_display_string(&mag), m)
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn x() -> Poly {
        Poly::var(Symbol::x(0))
    }

    #[test]
    fn arithmetic() {
        let p = Poly::one().add(&x());
        let q = Poly::one().sub(&x());
        assert_eq!(p.mul(&q).to_string(), "1 - x1^2");
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn derivative_and_substitution() {
        let p = x().mul(&x()).mul(&Poly::var(Symbol::x(1)));
        assert_eq!(p.diff(&Symbol::x(0)).to_string(), "2*x1*x2");
        let img = x().add(&x().mul(&Poly::var(Symbol::s(0, 0))));
        let sq = x().mul(&x());
        let r = sq.substitute(&|s| (*s == Symbol::x(0)).then(|| img.clone()), &|_| true);
        assert_eq!(r.to_string(), "2*s11*x1^2 + s11^2*x1^2 + x1^2");
    }

    #[test]
    fn evaluate_drops_zeroes() {
        let p = x().scale(&rat(3, 2)).add(&Poly::var(Symbol::x(1)));
        let e = p.evaluate(&|s| (*s == Symbol::x(1)).then(|| rat(0, 1)));
        assert_eq!(e.to_string(), "3/2*x1");
    }
}

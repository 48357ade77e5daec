//! Sparse monomials in canonical order.

use std::fmt;

use smallvec::SmallVec;

use crate::symbol::Symbol;

/// Product of symbol powers. Entries are sorted by symbol and never carry a
/// zero exponent. Only ħ may have a negative exponent.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(SmallVec<[(Symbol, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(smallvec::smallvec![(s, 1)])
    }

    pub fn pow(s: Symbol, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(smallvec::smallvec![(s, e)])
        }
    }

    /// Builds a monomial from arbitrary (possibly repeated) factors.
    pub fn from_factors<I: IntoIterator<Item = (Symbol, i32)>>(it: I) -> Self {
        let mut v: SmallVec<[(Symbol, i32); 4]> = it.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: SmallVec<[(Symbol, i32); 4]> = SmallVec::new();
        for (s, e) in v {
            match out.last_mut() {
                Some((t, f)) if *t == s => *f += e,
                _ => out.push((s, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Symbol, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, s: &Symbol) -> i32 {
        self.0
            .binary_search_by(|(t, _)| t.cmp(s))
            .map(|k| self.0[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out: SmallVec<[(Symbol, i32); 4]> = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().cloned());
        Monomial(out)
    }

    /// Multiplies by `s^e` (e may be negative; the caller guarantees the
    /// result is a valid monomial).
    pub fn mul_pow(&self, s: &Symbol, e: i32) -> Monomial {
        let mut out = self.0.clone();
        match out.binary_search_by(|(t, _)| t.cmp(s)) {
            Ok(k) => {
                out[k].1 += e;
                if out[k].1 == 0 {
                    out.remove(k);
                }
            }
            Err(k) => {
                if e != 0 {
                    out.insert(k, (s.clone(), e));
                }
            }
        }
        Monomial(out)
    }

    /// Total X-degree.
    pub fn x_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(s, _)| matches!(s, Symbol::X(_)))
            .map(|(_, e)| *e as u32)
            .sum()
    }

    /// Total S-degree.
    pub fn s_degree(&self) -> u32 {
        self.0
            .iter()
            .filter(|(s, _)| matches!(s, Symbol::S(..)))
            .map(|(_, e)| *e as u32)
            .sum()
    }

    pub fn hbar_exp(&self) -> i32 {
        match self.0.last() {
            Some((Symbol::Hbar, e)) => *e,
            _ => 0,
        }
    }

    /// Grade under `deg a_{g,N} = 1-|N|-g`, `deg s = 1`; `None` if the monomial
    /// contains X or ħ.
    pub fn grade(&self) -> Option<i64> {
        let mut d = 0i64;
        for (s, e) in &self.0 {
            d += s.grade()? * *e as i64;
        }
        Some(d)
    }

    /// Splits into the S-part and the rest.
    pub fn split_s(&self) -> (Monomial, Monomial) {
        let k = self.0.iter().take_while(|(s, _)| matches!(s, Symbol::S(..))).count();
        (
            Monomial(self.0[..k].iter().cloned().collect()),
            Monomial(self.0[k..].iter().cloned().collect()),
        )
    }

    /// Removes all X-variables.
    pub fn without_x(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter(|(s, _)| !matches!(s, Symbol::X(_)))
                .cloned()
                .collect(),
        )
    }

    pub fn without_hbar(&self) -> Monomial {
        Monomial(self.0.iter().filter(|(s, _)| *s != Symbol::Hbar).cloned().collect())
    }

    pub fn has_a(&self) -> bool {
        self.0.iter().any(|(s, _)| matches!(s, Symbol::A(..)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

//! Ring generators: X-variables, S-variables, the abstract vertex weights
//! `a_{g,N}` and ħ.

use std::fmt;

use smallvec::SmallVec;

use crate::rational::{factorial, Rational};
use crate::SeriesError;

/// Color-count vector `N = (n_1, ..., n_r)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MultiIndex(pub SmallVec<[u16; 4]>);

impl MultiIndex {
    pub fn zero(r: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, r))
    }

    pub fn from_slice(v: &[u16]) -> Self {
        MultiIndex(SmallVec::from_slice(v))
    }

    /// The singleton `{i}` (0-based color).
    pub fn unit(r: usize, i: usize) -> Self {
        let mut m = Self::zero(r);
        m.0[i] = 1;
        m
    }

    /// `{i} + {j} + ...` for the listed colors.
    pub fn of_colors(r: usize, colors: &[usize]) -> Self {
        let mut m = Self::zero(r);
        for &c in colors {
            m.0[c] += 1;
        }
        m
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().map(|&n| n as u32).sum()
    }

    pub fn factorial(&self) -> Rational {
        let mut acc = factorial(0);
        for &n in &self.0 {
            acc *= factorial(n as u32);
        }
        acc
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn add_color(&self, c: usize) -> MultiIndex {
        let mut m = self.clone();
        m.0[c] += 1;
        m
    }

    pub fn le(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// All multi-indices of length `r` with total at most `max_total`, in
    /// graded lexicographic order.
    pub fn all_up_to(r: usize, max_total: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for t in 0..=max_total {
            let mut cur = vec![0u16; r];
            compositions(&mut cur, 0, t, &mut out);
        }
        out
    }
}

fn compositions(cur: &mut Vec<u16>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u16;
        out.push(MultiIndex::from_slice(cur));
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(MultiIndex::from_slice(cur));
        }
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k as u16;
        compositions(cur, pos + 1, left - k, out);
    }
    cur[pos] = 0;
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A ring generator. The derived order (S, then X, then A, then ħ) is the
/// canonical monomial order. Colors are stored 0-based and printed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Symbol {
    /// `s_ij` with `i <= j`.
    S(u8, u8),
    X(u8),
    /// `a_{g,N}`.
    A(u16, MultiIndex),
    Hbar,
}

impl Symbol {
    pub fn s(i: usize, j: usize) -> Symbol {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        Symbol::S(a as u8, b as u8)
    }

    pub fn x(i: usize) -> Symbol {
        Symbol::X(i as u8)
    }

    pub fn a(g: u16, n: MultiIndex) -> Symbol {
        Symbol::A(g, n)
    }

    /// Grading of the stable-polynomial ring: `deg a_{g,N} = 1 - |N| - g`,
    /// `deg s_ij = 1`. X and ħ are not part of that ring.
    pub fn grade(&self) -> Option<i64> {
        match self {
            Symbol::S(..) => Some(1),
            Symbol::A(g, n) => Some(1 - n.total() as i64 - *g as i64),
            _ => None,
        }
    }

    pub fn parse(s: &str) -> Result<Symbol, SeriesError> {
        let bad = || SeriesError::Parse(format!("bad symbol {s:?}"));
        if s == "h" {
            return Ok(Symbol::Hbar);
        }
        if let Some(rest) = s.strip_prefix('x') {
            let i: usize = rest.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            return Ok(Symbol::x(i - 1));
        }
        if let Some(rest) = s.strip_prefix('s') {
            // "s12"; for r >= 10 colors a comma form "s10,11" is accepted too
            let (i, j) = if let Some((a, b)) = rest.split_once(',') {
                (a.parse::<usize>().map_err(|_| bad())?, b.parse::<usize>().map_err(|_| bad())?)
            } else {
                if rest.len() != 2 {
                    return Err(bad());
                }
                let d: Vec<usize> = rest
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                    .collect::<Result<_, _>>()?;
                (d[0], d[1])
            };
            if i == 0 || j == 0 || i > j {
                return Err(bad());
            }
            return Ok(Symbol::s(i - 1, j - 1));
        }
        if let Some(rest) = s.strip_prefix("a[").and_then(|r| r.strip_suffix(']')) {
            let (g, n) = rest.split_once(';').ok_or_else(bad)?;
            let g: u16 = g.parse().map_err(|_| bad())?;
            let n: SmallVec<[u16; 4]> = n
                .split(',')
                .map(|t| t.trim().parse::<u16>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            return Ok(Symbol::A(g, MultiIndex(n)));
        }
        Err(bad())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::S(i, j) => {
                if *j < 9 {
                    write!(f, "s{}{}", i + 1, j + 1)
                } else {
                    write!(f, "s{},{}", i + 1, j + 1)
                }
            }
            Symbol::X(i) => write!(f, "x{}", i + 1),
            Symbol::A(g, n) => write!(f, "a[{};{}]", g, n),
            Symbol::Hbar => write!(f, "h"),
        }
    }
}

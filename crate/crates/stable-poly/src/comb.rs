//! The one-color combinatorial specialization `a_{0,n} = 1`, `a_{m,n} = 0`
//! for `m > 0`, and the counting functions built from it.

use num_traits::{One, Signed, Zero};
use series_core::rational::{int, rat, to_display_string};
use series_core::{Monomial, Poly, Rational, Series, Symbol, TruncationSpec};

use crate::{StableError, StablePolynomial};

/// Dense univariate polynomial in `s`, lowest coefficient first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn from_coeffs(c: Vec<Rational>) -> Self {
        let mut p = UniPoly(c);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn low_degree(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        UniPoly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return UniPoly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn deriv(&self) -> UniPoly {
        UniPoly::from_coeffs(self.0.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    /// Antiderivative with constant term zero.
    pub fn integrate(&self) -> UniPoly {
        let mut c = vec![Rational::zero()];
        c.extend(self.0.iter().enumerate().map(|(k, x)| x / int(k as i64 + 1)));
        UniPoly::from_coeffs(c)
    }

    /// `s(s+1) W' - k W`.
    pub fn d_comb(&self, k: i64) -> UniPoly {
        let s_s1 = UniPoly::from_coeffs(vec![Rational::zero(), Rational::one(), Rational::one()]);
        s_s1.mul(&self.deriv()).add(&self.scale(&int(-k)))
    }

    /// Evaluates at a series argument.
    pub fn eval_series(&self, y: &Series) -> Result<Series, StableError> {
        let t = y.trunc();
        let mut acc = Series::zero(t);
        for c in self.0.iter().rev() {
            acc = acc.mul(y)?.add(&Series::constant(c.clone(), t))?;
        }
        Ok(acc)
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            let power = match k {
                0 => String::new(),
                1 => "s".into(),
                _ => format!("s^{k}"),
            };
            let body = match (k, mag.is_one()) {
                (0, _) => to_display_string(&mag),
                (_, true) => power,
                _ => format!("{}*{power}", to_display_string(&mag)),
            };
            let sign = match (first, c.is_negative()) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `P_g^comb(s) = P_g(a_{0,n} := 1, a_{m,n} := 0 for m > 0)` at `r = 1`.
pub fn specialize_comb(p: &StablePolynomial) -> Result<UniPoly, StableError> {
    if p.r != 1 {
        return Err(StableError::Invariant(format!("the combinatorial specialization is for one color, got r = {}", p.r)));
    }
    let mut c: Vec<Rational> = Vec::new();
    for (m, coef) in p.poly.terms() {
        let vanishes = m.factors().iter().any(|(s, _)| matches!(s, Symbol::A(g, _) if *g > 0));
        if vanishes {
            continue;
        }
        let k = m.s_degree() as usize;
        if c.len() <= k {
            c.resize(k + 1, Rational::zero());
        }
        c[k] += coef;
    }
    Ok(UniPoly::from_coeffs(c))
}

/// `P₂^comb = 5/24 s³ + 1/8 s²`.
pub fn p2_comb() -> UniPoly {
    UniPoly::from_coeffs(vec![Rational::zero(), Rational::zero(), rat(1, 8), rat(5, 24)])
}

/// `P_g^comb` for `g >= 2` from
/// `dP_g/ds = ½[D²(P_{g-1}) + 2s D(P_{g-1}) + Σ_{m=2}^{g-2} D(P_m) D(P_{g-m})]`,
/// where `D = s(s+1)d/ds - (m-1)` on `P_m`.
pub fn solve_p_comb(g: u32) -> Result<Vec<UniPoly>, StableError> {
    if g < 2 {
        return Err(StableError::Genus(g));
    }
    let mut p: Vec<UniPoly> = vec![UniPoly::default(), UniPoly::default(), p2_comb()];
    let s = UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()]);
    for h in 3..=g as usize {
        let prev = &p[h - 1];
        let k = h as i64 - 2;
        let d1 = prev.d_comb(k);
        let mut rhs = d1.d_comb(k).add(&s.mul(&d1).scale(&int(2)));
        for m in 2..=h.saturating_sub(2) {
            rhs = rhs.add(&p[m].d_comb(m as i64 - 1).mul(&p[h - m].d_comb((h - m) as i64 - 1)));
        }
        let next = rhs.scale(&rat(1, 2)).integrate();
        let (lo, hi) = (next.low_degree(), next.degree());
        if lo.is_none_or(|l| l < h) || hi != Some(3 * h - 3) {
            return Err(StableError::Invariant(format!("P_{h}^comb has degrees {lo:?}..{hi:?}")));
        }
        p.push(next);
    }
    Ok(p)
}

fn exp_poly(n: u32) -> Poly {
    let mut f = Poly::zero();
    let mut c = Rational::one();
    for k in 0..=n {
        f.add_term(Monomial::pow(Symbol::x(0), k as i32), c.clone());
        c /= int(k as i64 + 1);
    }
    f
}

fn check_counting_args(g: u32, pg: &UniPoly) -> Result<(), StableError> {
    if g < 2 || pg.degree().is_none() {
        return Err(StableError::Genus(g));
    }
    Ok(())
}

/// `Ψ_g^comb(s, x) = Φ^{1-g} P_g^comb(sΦ/(1 - sΦ))` with `Φ = e^{x + sΦ}`.
pub fn counting_comb(g: u32, pg: &UniPoly, t: TruncationSpec) -> Result<Series, StableError> {
    check_counting_args(g, pg)?;
    let t = t.with_g(None);
    let phi = genus_expansion::tree_solve(&[exp_poly(t.dx + t.ds)], t)?.remove(0);
    let one = Series::one(t);
    let s = Series::var(Symbol::s(0, 0), t);
    let sphi = s.mul(&phi)?;
    let y = sphi.mul(&sphi.neg().one_plus_pow(-1)?)?;
    let pre = phi.sub(&one)?.one_plus_pow(1 - g as i64)?;
    Ok(pre.mul(&pg.eval_series(&y)?)?)
}

/// `Ψ_g^st(s, x) = W^{1-g} P_g^comb(sW/(1 - s(W - 1)))` with
/// `W = 1 + x + (s+1)Φ^st` and `Φ^st = F^st(x + sΦ^st)`, `F^st = e^x - 1 - x`.
pub fn counting_stable(g: u32, pg: &UniPoly, t: TruncationSpec) -> Result<Series, StableError> {
    check_counting_args(g, pg)?;
    let t = t.with_g(None);
    let f = exp_poly(t.dx + t.ds).retain(|m| m.x_degree() >= 2);
    let phi = genus_expansion::tree_solve(&[f], t)?.remove(0);
    let s = Series::var(Symbol::s(0, 0), t);
    let x = Series::var(Symbol::x(0), t);
    let w1 = x.add(&s.add(&Series::one(t))?.mul(&phi)?)?;
    let w = w1.add(&Series::one(t))?;
    let y = s.mul(&w)?.mul(&s.mul(&w1)?.neg().one_plus_pow(-1)?)?;
    Ok(w1.one_plus_pow(1 - g as i64)?.mul(&pg.eval_series(&y)?)?)
}

fn uni(c: &[(usize, i64, i64)]) -> UniPoly {
    let n = c.iter().map(|x| x.0).max().unwrap() + 1;
    let mut v = vec![int(0); n];
    for &(k, p, q) in c {
        v[k] = rat(p, q);
    }
    UniPoly::from_coeffs(v)
}

/// The printed tables of `P_g^comb` for `g = 2..=6`.
pub fn printed_comb() -> Vec<UniPoly> {
    vec![
        p2_comb(),
        uni(&[(6, 5, 16), (5, 25, 48), (4, 11, 48), (3, 1, 48)]),
        uni(&[(9, 1105, 1152), (8, 985, 384), (7, 1373, 576), (6, 515, 576), (5, 223, 1920), (4, 1, 384)]),
        uni(&[
            (12, 565, 128),
            (11, 12455, 768),
            (10, 26581, 1152),
            (9, 12227, 768),
            (8, 2089, 384),
            (7, 9583, 11520),
            (6, 27, 640),
            (5, 1, 3840),
        ]),
        uni(&[
            (15, 82825, 3072),
            (14, 387005, 3072),
            (13, 371195, 1536),
            (12, 10154003, 41472),
            (11, 121207, 864),
            (10, 519883, 11520),
            (9, 1573507, 207360),
            (8, 2597, 4608),
            (7, 803, 64512),
            (6, 1, 46080),
        ]),
    ]
}

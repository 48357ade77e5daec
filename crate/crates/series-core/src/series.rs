//! Truncated power series: an exact [`Poly`] together with the box in which
//! its coefficients are known.

use std::fmt;

use num_traits::{One, Zero};

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::symbol::Symbol;
use crate::trunc::{g_le, TruncationSpec};
use crate::SeriesError;

/// A truncated series. Every stored monomial satisfies `trunc.admits`, and the
/// stored coefficients are exact for every admitted monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    poly: Poly,
    trunc: TruncationSpec,
}

impl Series {
    /// Truncates `poly` into `trunc`.
    pub fn new(poly: Poly, trunc: TruncationSpec) -> Result<Series, SeriesError> {
        let floor = trunc.hbar_floor();
        let poly = poly.retain(|m| trunc.admits(m));
        if let Some((m, _)) = poly.terms().find(|(m, _)| m.hbar_exp() < floor) {
            return Err(SeriesError::HbarUnderflow(m.to_string()));
        }
        Ok(Series { poly, trunc })
    }

    pub fn zero(trunc: TruncationSpec) -> Series {
        Series { poly: Poly::zero(), trunc }
    }

    pub fn one(trunc: TruncationSpec) -> Series {
        Series::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: TruncationSpec) -> Series {
        Series::new(Poly::constant(c), trunc).expect("constants are admitted")
    }

    pub fn var(s: Symbol, trunc: TruncationSpec) -> Series {
        Series::new(Poly::var(s), trunc).expect("single variables are admitted")
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn trunc(&self) -> TruncationSpec {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.poly.coeff(m)
    }

    fn same_trunc(&self, other: &Series) -> Result<(), SeriesError> {
        if self.trunc != other.trunc {
            return Err(SeriesError::TruncMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series, SeriesError> {
        self.same_trunc(other)?;
        Ok(Series { poly: self.poly.add(&other.poly), trunc: self.trunc })
    }

    pub fn sub(&self, other: &Series) -> Result<Series, SeriesError> {
        self.same_trunc(other)?;
        Ok(Series { poly: self.poly.sub(&other.poly), trunc: self.trunc })
    }

    pub fn neg(&self) -> Series {
        Series { poly: self.poly.neg(), trunc: self.trunc }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series { poly: self.poly.scale(c), trunc: self.trunc }
    }

    /// How far below zero the ħ-exponents reach.
    fn deficit(&self) -> u32 {
        self.poly.min_hbar().map_or(0, |e| (-e).max(0) as u32)
    }

    /// Product. When an operand carries negative ħ powers and the ħ cap is
    /// finite, the top ħ layers of the product are not determined by the
    /// stored data; the result then reports a lowered cap.
    pub fn mul(&self, other: &Series) -> Result<Series, SeriesError> {
        self.same_trunc(other)?;
        let c = self.deficit().max(other.deficit());
        let out = self.lowered_cap(c, "product")?;
        let poly = self.poly.mul_filtered(&other.poly, &|m| out.admits(m));
        Series::new(poly, out)
    }

    fn lowered_cap(&self, loss: u32, op: &str) -> Result<TruncationSpec, SeriesError> {
        match self.trunc.g {
            None => Ok(self.trunc),
            Some(g) if g >= loss => Ok(self.trunc.with_g(Some(g - loss))),
            Some(g) => Err(SeriesError::InsufficientPrecision(format!(
                "{op}: ħ cap G={g} cannot absorb a loss of {loss}"
            ))),
        }
    }

    /// Checks that powers of `self` die out inside the box, returning the
    /// ħ cap of the result and the per-factor ħ deficit. `target` sets the
    /// cap of the result when `self` has none.
    fn power_series_setup(&self, op: &str, target: Option<u32>) -> Result<(TruncationSpec, u32), SeriesError> {
        let capped = match (self.trunc.g, target) {
            (None, Some(t)) => Some(self.trunc.with_g(Some(t))),
            (Some(_), Some(_)) => {
                return Err(SeriesError::InsufficientPrecision(format!("{op}: a target cap needs an uncapped argument")))
            }
            _ => None,
        };
        for (m, _) in self.poly.terms() {
            let graded = m.x_degree() + m.s_degree() >= 1;
            let lifted = (self.trunc.g.is_some() || capped.is_some()) && m.hbar_exp() >= 1;
            if !graded && !lifted {
                return Err(SeriesError::NonTerminating { op: op.to_string(), monomial: m.to_string() });
            }
        }
        let c = self.deficit();
        if let Some(out) = capped {
            return Ok((out, c));
        }
        let out = self.lowered_cap(c * (self.trunc.dx + self.trunc.ds), op)?;
        Ok((out, c))
    }

    /// Sum of `coef(k) * self^k` for `k >= 1` until the powers vanish.
    fn power_sum(
        &self,
        op: &str,
        target: Option<u32>,
        mut coef: impl FnMut(u32) -> Rational,
    ) -> Result<(Poly, TruncationSpec), SeriesError> {
        let (out, c) = self.power_series_setup(op, target)?;
        let keep = reach_filter(out, c, out.g);
        let mut acc = Poly::zero();
        let mut power = Poly::one();
        let mut k = 0u32;
        loop {
            k += 1;
            power = power.mul_filtered(&self.poly, &keep);
            if power.is_zero() {
                break;
            }
            acc.add_assign(&power.scale(&coef(k)));
        }
        Ok((acc, out))
    }

    /// `exp(self)`. Every monomial must raise the X- or S-degree, or carry a
    /// positive ħ power under a finite ħ cap; otherwise the exponential does
    /// not terminate and the offending monomial is reported.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        self.exp_inner(None)
    }

    /// `exp(self)` for an argument with no ħ cap, computed only up to
    /// `ħ^{g-1}`. Exact there because the argument is known at every ħ power.
    pub fn exp_capped(&self, g: u32) -> Result<Series, SeriesError> {
        self.exp_inner(Some(g))
    }

    /// The part of positive X+S degree goes through `d E_d = Σ k f_k E_{d-k}`
    /// (one product pass per degree). Degree-zero terms, which carry ħ^{≥1}
    /// under a finite cap, are exponentiated by their power series and
    /// multiplied in.
    fn exp_inner(&self, target: Option<u32>) -> Result<Series, SeriesError> {
        let (out, c) = self.power_series_setup("exp", target)?;
        let top = out.dx + out.ds;
        let keep = reach_filter(out, c, out.g);
        let mut layers = vec![Poly::zero(); top as usize + 1];
        let mut flat = Poly::zero();
        for (m, q) in self.poly.terms() {
            let d = m.x_degree() + m.s_degree();
            if d == 0 {
                flat.add_term(m.clone(), q.clone());
            } else if d <= top {
                layers[d as usize].add_term(m.clone(), q * int(d as i64));
            }
        }
        let mut e = vec![Poly::one()];
        for d in 1..=top as usize {
            let mut acc = Poly::zero();
            for k in 1..=d {
                if !layers[k].is_zero() && !e[d - k].is_zero() {
                    acc.add_assign(&layers[k].mul_filtered(&e[d - k], &keep));
                }
            }
            e.push(acc.scale(&Rational::new(1.into(), (d as i64).into())));
        }
        let mut total = Poly::zero();
        for l in e {
            total.add_assign(&l);
        }
        if !flat.is_zero() {
            // ħ-exponents of the graded factor reach down to -c·top
            let wide = reach_filter(out, c, out.g.map(|g| g + c * top));
            let mut e0 = Poly::one();
            let mut power = Poly::one();
            let mut fact = Rational::one();
            let mut k = 0i64;
            loop {
                k += 1;
                power = power.mul_filtered(&flat, &wide);
                if power.is_zero() {
                    break;
                }
                fact *= int(k);
                e0.add_assign(&power.scale(&fact.recip()));
            }
            total = e0.mul_filtered(&total, &keep);
        }
        Series::new(total, out)
    }

    /// `log(1 + self)`; `self` must have zero constant term.
    pub fn log1p(&self) -> Result<Series, SeriesError> {
        if !self.poly.constant_term().is_zero() {
            return Err(SeriesError::ConstantTerm("log1p".into()));
        }
        let (acc, out) = self.power_sum("log1p", None, |k| {
            let q = Rational::new(one_int(), (k as i64).into());
            if k % 2 == 1 {
                q
            } else {
                -q
            }
        })?;
        Series::new(acc, out)
    }

    /// `(1 + self)^p` for an integer `p`; `self` must have zero constant term.
    pub fn one_plus_pow(&self, p: i64) -> Result<Series, SeriesError> {
        if !self.poly.constant_term().is_zero() {
            return Err(SeriesError::ConstantTerm("power".into()));
        }
        let (acc, out) = self.power_sum("power", None, |k| crate::rational::binomial(p, k))?;
        Series::new(Poly::one().add(&acc), out)
    }

    /// Partial derivative by an X- or S-variable. The result is exact in a box
    /// one smaller in the differentiated direction.
    pub fn diff(&self, v: &Symbol) -> Result<Series, SeriesError> {
        let trunc = match v {
            Symbol::X(_) if self.trunc.dx > 0 => TruncationSpec { dx: self.trunc.dx - 1, ..self.trunc },
            Symbol::S(..) if self.trunc.ds > 0 => TruncationSpec { ds: self.trunc.ds - 1, ..self.trunc },
            Symbol::X(_) | Symbol::S(..) => {
                return Err(SeriesError::InsufficientPrecision(format!("no precision left to differentiate by {v}")))
            }
            _ => return Err(SeriesError::BadVariable(v.to_string())),
        };
        Series::new(self.poly.diff(v), trunc)
    }

    /// Re-truncates into a smaller box.
    pub fn restrict(&self, t: TruncationSpec) -> Result<Series, SeriesError> {
        if !t.within(&self.trunc) {
            return Err(SeriesError::InsufficientPrecision(format!(
                "cannot restrict {} to the larger box {}",
                self.trunc, t
            )));
        }
        Series::new(self.poly.clone(), t)
    }

    /// Coefficient series of `ħ^e`, as an ħ-free series.
    pub fn hbar_layer(&self, e: i32) -> Result<Series, SeriesError> {
        if let Some(g) = self.trunc.g {
            if e >= g as i32 {
                return Err(SeriesError::InsufficientPrecision(format!(
                    "ħ^{e} is outside {}",
                    self.trunc
                )));
            }
        }
        Series::new(self.poly.hbar_layer(e), self.trunc.with_g(None))
    }

    /// Substitutes `x_i -> images[i]`. Each image monomial must raise the X-
    /// or S-degree and carry no negative ħ power. If some image has X-free
    /// terms, X-degree is traded for S-degree and `self` must be known to
    /// X-degree `out.dx + out.ds`.
    pub fn substitute_x(&self, images: &[Series], out: TruncationSpec) -> Result<Series, SeriesError> {
        let trades = check_images(images, &out)?;
        let need = TruncationSpec {
            dx: out.dx + if trades { out.ds } else { 0 },
            ds: out.ds,
            g: out.g,
        };
        if !(need.dx <= self.trunc.dx && need.ds <= self.trunc.ds && g_le(need.g, self.trunc.g)) {
            return Err(SeriesError::InsufficientPrecision(format!(
                "substitution into a series known in {} needs {}",
                self.trunc, need
            )));
        }
        compose(&self.poly, images, out)
    }

    /// Evaluates an exact polynomial at `x_i -> images[i]`. No precision is
    /// required of the polynomial itself.
    pub fn compose_poly(p: &Poly, images: &[Series], out: TruncationSpec) -> Result<Series, SeriesError> {
        check_images(images, &out)?;
        compose(p, images, out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        crate::json::poly_to_json(&self.poly)
    }

    pub fn from_json(v: &serde_json::Value, trunc: TruncationSpec) -> Result<Series, SeriesError> {
        Series::new(crate::json::poly_from_json(v)?, trunc)
    }
}

fn one_int() -> num_bigint::BigInt {
    num_bigint::BigInt::one()
}

fn check_images(images: &[Series], out: &TruncationSpec) -> Result<bool, SeriesError> {
    let mut trades = false;
    for img in images {
        if !out.within(&img.trunc) {
            return Err(SeriesError::InsufficientPrecision(format!(
                "image known in {} but output box is {}",
                img.trunc, out
            )));
        }
        for (m, _) in img.poly.terms() {
            if m.hbar_exp() < 0 {
                return Err(SeriesError::NonTerminating { op: "substitute".into(), monomial: m.to_string() });
            }
            if m.x_degree() == 0 {
                if m.s_degree() == 0 {
                    return Err(SeriesError::NonTerminating { op: "substitute".into(), monomial: m.to_string() });
                }
                trades = true;
            }
        }
    }
    Ok(trades)
}

fn compose(p: &Poly, images: &[Series], out: TruncationSpec) -> Result<Series, SeriesError> {
    if let Some((m, _)) = p.terms().find(|(m, _)| {
        m.factors().iter().any(|(s, _)| matches!(s, Symbol::X(i) if *i as usize >= images.len()))
    }) {
        return Err(SeriesError::Shape(format!("no image given for a variable of {m}")));
    }
    let (dx, ds) = (out.dx, out.ds);
    let keep = move |m: &Monomial| m.x_degree() <= dx && m.s_degree() <= ds;
    let img = |s: &Symbol| match s {
        Symbol::X(i) => Some(images[*i as usize].poly.clone()),
        _ => None,
    };
    Series::new(p.substitute(&img, &keep), out)
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Order ideal of monomials that can still reach the box `out` (with ħ cap
/// `cap`) after multiplying by further factors, each of which raises the X+S
/// degree by at least one and lowers ħ by at most `c` per unit of degree.
fn reach_filter(out: TruncationSpec, c: u32, cap: Option<u32>) -> impl Fn(&Monomial) -> bool + Sync {
    let (dx, ds) = (out.dx as i64, out.ds as i64);
    move |m: &Monomial| {
        let (x, s) = (m.x_degree() as i64, m.s_degree() as i64);
        if x > dx || s > ds {
            return false;
        }
        match cap {
            None => true,
            Some(g) => (m.hbar_exp() as i64) - (c as i64) * ((dx - x) + (ds - s)) < g as i64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::symbol::MultiIndex;

    fn t(dx: u32, ds: u32, g: u32) -> TruncationSpec {
        TruncationSpec::new(dx, ds, g)
    }

    fn x(tr: TruncationSpec) -> Series {
        Series::var(Symbol::x(0), tr)
    }

    #[test]
    fn add_and_mismatch() {
        let tr = t(3, 1, 1);
        let a = x(tr).scale(&rat(1, 2));
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert!(a.add(&x(t(2, 1, 1))).is_err());
    }

    #[test]
    fn product_truncates() {
        let tr = t(1, 0, 1);
        let p = Series::one(tr).add(&x(tr)).unwrap();
        let q = Series::one(tr).sub(&x(tr)).unwrap();
        assert_eq!(p.mul(&q).unwrap(), Series::one(tr));
    }

    #[test]
    fn mixed_monomial_product() {
        let tr = t(3, 1, 1);
        let a3 = Symbol::a(0, MultiIndex::from_slice(&[3]));
        let s = Series::var(Symbol::s(0, 0), tr);
        let rhs = Series::new(
            Poly::term(Monomial::from_factors([(a3, 1), (Symbol::x(0), 1), (Symbol::Hbar, -1)]), rat(1, 1)),
            tr,
        )
        .unwrap();
        let prod = s.mul(&rhs).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(prod.trunc().g, Some(0));
    }

    #[test]
    fn exp_and_log_taylor() {
        let tr = t(3, 0, 1);
        assert_eq!(x(tr).exp().unwrap().to_string(), "1 + x1 + 1/2*x1^2 + 1/6*x1^3");
        assert_eq!(x(tr).log1p().unwrap().to_string(), "x1 - 1/2*x1^2 + 1/3*x1^3");
        assert_eq!(Series::zero(tr).exp().unwrap(), Series::one(tr));
        assert!(Series::zero(tr).log1p().unwrap().is_zero());
    }

    #[test]
    fn exp_rejects_vacuum_terms() {
        let tr = t(2, 1, 2);
        let a00 = Monomial::from_factors([(Symbol::a(0, MultiIndex::zero(1)), 1), (Symbol::Hbar, -1)]);
        let bad = Series::new(Poly::term(a00, rat(1, 1)), tr).unwrap();
        let err = bad.exp().unwrap_err().to_string();
        assert!(err.contains("a[0;0]"), "{err}");
        assert!(Series::one(tr).exp().is_err());
    }

    #[test]
    fn exp_of_laurent_series_lowers_cap() {
        let tr = t(2, 0, 3);
        let a = Series::new(
            Poly::term(Monomial::from_factors([(Symbol::x(0), 1), (Symbol::Hbar, -1)]), rat(1, 1)),
            tr,
        )
        .unwrap();
        let e = a.exp().unwrap();
        assert_eq!(e.trunc().g, Some(1));
        assert_eq!(e.to_string(), "1 + x1*h^-1 + 1/2*x1^2*h^-2");
    }

    #[test]
    fn derivative_bookkeeping() {
        let tr = t(3, 3, 1);
        let m = Poly::term(Monomial::from_factors([(Symbol::x(0), 2), (Symbol::x(1), 1)]), rat(1, 1));
        let d = Series::new(m, tr).unwrap().diff(&Symbol::x(0)).unwrap();
        assert_eq!(d.to_string(), "2*x1*x2");
        assert_eq!(d.trunc().dx, 2);
        let s3 = Series::new(Poly::term(Monomial::pow(Symbol::s(0, 1), 3), rat(1, 1)), tr).unwrap();
        assert_eq!(s3.diff(&Symbol::s(1, 0)).unwrap().to_string(), "3*s12^2");
        assert!(s3.diff(&Symbol::Hbar).is_err());
    }

    #[test]
    fn binomial_substitution() {
        let tr = t(2, 2, 1);
        let s = Series::var(Symbol::s(0, 0), tr);
        let img = x(tr).add(&s.mul(&x(tr)).unwrap()).unwrap();
        let sq = x(tr).mul(&x(tr)).unwrap();
        let r = sq.substitute_x(&[img], tr).unwrap();
        assert_eq!(r.to_string(), "2*s11*x1^2 + s11^2*x1^2 + x1^2");
        let id = sq.substitute_x(&[x(tr)], tr).unwrap();
        assert_eq!(id, sq);
    }

    #[test]
    fn substitution_demands_precision_when_trading_degrees() {
        let tr = t(2, 1, 1);
        let img = x(tr).add(&Series::var(Symbol::s(0, 0), tr)).unwrap();
        let f = x(tr).mul(&x(tr)).unwrap();
        assert!(f.substitute_x(&[img.clone()], tr).is_err());
        let r = Series::compose_poly(f.poly(), &[img], tr).unwrap();
        assert_eq!(r.to_string(), "2*s11*x1 + x1^2");
    }
}

//! One-dimensional Gaussian integrals
//! `(2πħs)^{-1/2} ∫ exp[U(ξ,ħ) - (x-ξ)²/(2ħs)] dξ` at high precision, and
//! the comparison of their logarithms with partial sums of `𝒫`.
//!
//! The integrand is an exponential of a polynomial whose top coefficient is
//! negative. Beyond the Cauchy bound of the roots of `E'` and `E''` the
//! exponent is concave and decreasing, which gives a rigorous tail bound.
//! Inside the window the trapezoidal rule is halved until two successive
//! sums agree far below the requested tolerance.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_traits::{Signed, Zero};
use series_core::rational::{factorial, int, to_f64};
use series_core::{par, Monomial, MultiIndex, Poly, Rational, Symbol};
use stable_poly::StableTower;

use crate::OracleError;

const RM: RoundingMode = RoundingMode::ToEven;
/// The window is widened until the exponent drops this far below its peak.
const WINDOW_DROP: f64 = 200.0;
const MAX_HALVINGS: u32 = 18;

/// `U(ξ, ħ) = Σ c ħ^{g-1} ξ^n / n!` over the entries `(g, n, c)` of `u_spec`.
#[derive(Clone, Debug)]
pub struct QuadratureProblem {
    pub u_spec: Vec<(u16, u32, Rational)>,
    pub s: Rational,
    pub hbar_values: Vec<Rational>,
    /// Working precision in bits.
    pub precision: usize,
}

impl QuadratureProblem {
    /// `U = -ξ⁴/4! ħ^{-1}` on the ladder `1/10, 1/20, 1/40, 1/80`.
    pub fn quartic(s: Rational) -> Self {
        QuadratureProblem {
            u_spec: vec![(0, 4, int(-1))],
            s,
            hbar_values: [10, 20, 40, 80].iter().map(|&d| Rational::new(1.into(), d.into())).collect(),
            precision: 256,
        }
    }

    /// `a_{g,N} = 0` whenever `|N| + 2g - 2 <= 0`.
    pub fn is_stable(&self) -> bool {
        self.u_spec.iter().all(|(g, n, c)| c.is_zero() || *n as i64 + 2 * *g as i64 - 2 > 0)
    }

    fn validate(&self) -> Result<(), OracleError> {
        if !self.s.is_positive() {
            return Err(OracleError::Quadrature("s must be positive".into()));
        }
        if self.hbar_values.iter().any(|h| !h.is_positive()) {
            return Err(OracleError::Quadrature("every ħ must be positive".into()));
        }
        if self.precision < 64 {
            return Err(OracleError::Quadrature("working precision below 64 bits".into()));
        }
        Ok(())
    }

    /// Coefficients `e_n` of the exponent `E(ξ) = Σ e_n ξ^n` at one ħ.
    fn exponent(&self, hbar: &Rational, x: &Rational) -> Vec<Rational> {
        let mut e: Vec<Rational> = vec![int(0); 3];
        for (g, n, c) in &self.u_spec {
            let n = *n as usize;
            if e.len() <= n {
                e.resize(n + 1, int(0));
            }
            let hp = pow_rat(hbar, *g as i32 - 1);
            e[n] += c * hp / factorial(n as u32);
        }
        let w = (int(2) * hbar * &self.s).recip();
        e[0] -= x * x * &w;
        e[1] += int(2) * x * &w;
        e[2] -= w;
        while e.len() > 1 && e.last().is_some_and(|c| c.is_zero()) {
            e.pop();
        }
        e
    }
}

fn pow_rat(q: &Rational, e: i32) -> Rational {
    let mut out = int(1);
    for _ in 0..e.unsigned_abs() {
        out *= q;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// A value with an error bound, both at working precision.
#[derive(Clone, Debug)]
pub struct Certified {
    pub value: BigFloat,
    pub error: BigFloat,
}

struct Ctx {
    p: usize,
    cc: Consts,
}

impl Ctx {
    fn new(p: usize) -> Result<Self, OracleError> {
        let cc = Consts::new().map_err(|e| OracleError::Quadrature(format!("constant cache: {e:?}")))?;
        Ok(Ctx { p, cc })
    }

    fn rat(&mut self, q: &Rational) -> BigFloat {
        let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        n.div(&d, self.p, RM)
    }

    fn f64(&mut self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.p)
    }

    fn exp(&mut self, v: &BigFloat) -> BigFloat {
        v.exp(self.p, RM, &mut self.cc)
    }

    fn ln(&mut self, v: &BigFloat) -> BigFloat {
        v.ln(self.p, RM, &mut self.cc)
    }

    fn pi(&mut self) -> BigFloat {
        self.cc.pi(self.p, RM)
    }
}

/// Nearest `f64` of a finite value.
pub fn to_f64_lossy(v: &BigFloat) -> f64 {
    let mut cc = match Consts::new() {
        Ok(cc) => cc,
        Err(_) => return f64::NAN,
    };
    v.format(Radix::Dec, RM, &mut cc).ok().and_then(|s| s.parse().ok()).unwrap_or(f64::NAN)
}

fn horner(e: &[BigFloat], t: &BigFloat, p: usize) -> BigFloat {
    let mut acc = e.last().cloned().unwrap_or_else(|| BigFloat::from_i32(0, p));
    for c in e.iter().rev().skip(1) {
        acc = acc.mul(t, p, RM).add(c, p, RM);
    }
    acc
}

fn deriv(e: &[Rational]) -> Vec<Rational> {
    e.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect()
}

/// `1 + max |c_k / c_top|`: every real root lies inside.
fn cauchy_bound(e: &[Rational]) -> f64 {
    let top = e.last().expect("nonempty");
    1.0 + e[..e.len() - 1].iter().map(|c| to_f64(&(c / top).abs())).fold(0.0, f64::max)
}

fn eval_f64(e: &[Rational], t: f64) -> f64 {
    e.iter().rev().fold(0.0, |acc, c| acc * t + to_f64(c))
}

/// `log` of the normalized integral at one ħ and one base point `x`.
pub fn gaussian_log_integral(p: &QuadratureProblem, hbar: &Rational, x: &Rational) -> Result<Certified, OracleError> {
    p.validate()?;
    let e = p.exponent(hbar, x);
    let d = e.len() - 1;
    if d % 2 != 0 || !e[d].is_negative() {
        return Err(OracleError::Quadrature(format!(
            "the integrand diverges: top term of degree {d} in ξ has coefficient {}",
            e[d]
        )));
    }
    let mut ctx = Ctx::new(p.precision)?;
    let prec = p.precision;
    let d1 = deriv(&e);
    let d2 = deriv(&d1);
    let mut lo = cauchy_bound(&d1);
    if d2.len() > 1 {
        lo = lo.max(cauchy_bound(&d2));
    }
    let width = to_f64(&(hbar * &p.s)).sqrt();
    let peak = (0..=400).map(|k| eval_f64(&e, -lo + 2.0 * lo * k as f64 / 400.0)).fold(f64::NEG_INFINITY, f64::max);
    let mut half = lo.max(width);
    while eval_f64(&e, half).max(eval_f64(&e, -half)) > peak - WINDOW_DROP {
        half *= 1.25;
    }

    let eb: Vec<BigFloat> = e.iter().map(|c| ctx.rat(c)).collect();
    let d1b: Vec<BigFloat> = d1.iter().map(|c| ctx.rat(c)).collect();
    let a = ctx.f64(-half);
    let b = ctx.f64(half);
    let span = b.sub(&a, prec, RM);

    // tails beyond the window: ∫_L^∞ e^E ≤ e^{E(L)}/|E'(L)|
    let mut tail = BigFloat::from_i32(0, prec);
    for end in [&a, &b] {
        let v = ctx.exp(&horner(&eb, end, prec));
        let slope = horner(&d1b, end, prec).abs();
        tail = tail.add(&v.div(&slope, prec, RM), prec, RM);
    }

    let mut n: usize = 256;
    let sample = |ctx: &mut Ctx, k: usize, n: usize| {
        let t = a.add(&span.mul(&BigFloat::from_u64(k as u64, prec), prec, RM).div(&BigFloat::from_u64(n as u64, prec), prec, RM), prec, RM);
        ctx.exp(&horner(&eb, &t, prec))
    };
    let mut sum = BigFloat::from_i32(0, prec);
    for k in 0..=n {
        let mut v = sample(&mut ctx, k, n);
        if k == 0 || k == n {
            v = v.div(&BigFloat::from_i32(2, prec), prec, RM);
        }
        sum = sum.add(&v, prec, RM);
    }
    let mut integral = sum.mul(&span, prec, RM).div(&BigFloat::from_u64(n as u64, prec), prec, RM);
    let tol = BigFloat::from_i32(2, prec).powi(prec / 2, prec, RM).reciprocal(prec, RM);
    let mut diff = None;
    for _ in 0..MAX_HALVINGS {
        n *= 2;
        for k in (1..n).step_by(2) {
            sum = sum.add(&sample(&mut ctx, k, n), prec, RM);
        }
        let next = sum.mul(&span, prec, RM).div(&BigFloat::from_u64(n as u64, prec), prec, RM);
        let gap = next.sub(&integral, prec, RM).abs();
        integral = next;
        if gap.cmp(&integral.mul(&tol, prec, RM)).is_some_and(|c| c <= 0) {
            diff = Some(gap);
            break;
        }
    }
    let diff = diff.ok_or_else(|| OracleError::Quadrature(format!("trapezoidal sums did not settle at ħ = {hbar}")))?;

    let two_pi = ctx.pi().mul(&BigFloat::from_i32(2, prec), prec, RM);
    let norm = two_pi.mul(&ctx.rat(&(hbar * &p.s)), prec, RM).sqrt(prec, RM);
    let value = ctx.ln(&integral.div(&norm, prec, RM));
    // relative error of the integral carries over to its logarithm
    let error = diff.add(&tail, prec, RM).div(&integral, prec, RM).mul(&BigFloat::from_i32(2, prec), prec, RM);
    Ok(Certified { value, error })
}

/// `Σ_{g=2}^{G} P_g ħ^{g-1}` at `x = 0` with the coefficients of `p` and the
/// scalar `s`, exact.
pub fn partial_sum(tower: &mut StableTower, p: &QuadratureProblem, top: u32, hbar: &Rational) -> Result<Rational, OracleError> {
    if tower.r() != 1 {
        return Err(OracleError::Quadrature("numeric checks run at one color".into()));
    }
    tower.extend_to(top.max(1))?;
    let value = |sym: &Symbol| match sym {
        Symbol::S(..) => Some(p.s.clone()),
        Symbol::A(g, n) => Some(
            p.u_spec
                .iter()
                .filter(|(h, k, _)| h == g && MultiIndex::from_slice(&[*k as u16]) == *n)
                .map(|(_, _, c)| c.clone())
                .fold(int(0), |a, c| a + c),
        ),
        _ => None,
    };
    let mut acc = int(0);
    for g in 2..=top {
        let v = tower.p(g)?.poly.evaluate(&value);
        let c = v.coeff(&Monomial::one());
        if v.terms().any(|(m, _)| !m.is_one()) {
            return Err(OracleError::Quadrature(format!("P_{g} did not evaluate to a number")));
        }
        acc += c * pow_rat(hbar, g as i32 - 1);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct OrderRow {
    pub hbar: Rational,
    pub numeric: BigFloat,
    pub partial: Rational,
    pub error: BigFloat,
    /// Observed exponent against the previous row.
    pub order: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct OrderReport {
    pub g: u32,
    pub rows: Vec<OrderRow>,
    pub passed: bool,
}

impl OrderReport {
    /// Tab-separated `(ħ, numeric, partial sum, error, observed order)`.
    pub fn tsv(&self) -> String {
        let mut out = String::from("hbar\tnumeric\tpartial_sum\terror\torder\n");
        for r in &self.rows {
            let order = r.order.map(|o| format!("{o:.4}")).unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{}\t{:.15e}\t{:.15e}\t{:.6e}\t{order}\n",
                r.hbar,
                to_f64_lossy(&r.numeric),
                to_f64(&r.partial),
                to_f64_lossy(&r.error)
            ));
        }
        out
    }

    pub fn orders(&self) -> Vec<f64> {
        self.rows.iter().filter_map(|r| r.order).collect()
    }
}

/// Compares the log-integral at `x = 0` with partial sums through `ħ^{G-1}`
/// along the ladder and asserts an observed order of at least `G - 0.3` on
/// the two smallest pairs.
pub fn asymptotic_order_check(p: &QuadratureProblem, tower: &mut StableTower, top: u32) -> Result<OrderReport, OracleError> {
    if !p.is_stable() {
        return Err(OracleError::Quadrature("the comparison with 𝒫 needs a_{g,N} = 0 for |N| + 2g - 2 <= 0".into()));
    }
    if p.hbar_values.len() < 3 {
        return Err(OracleError::Quadrature("the ladder needs at least three values of ħ".into()));
    }
    let mut hs = p.hbar_values.clone();
    hs.sort_by(|a, b| b.cmp(a));
    let partials = hs.iter().map(|h| partial_sum(tower, p, top, h)).collect::<Result<Vec<_>, _>>()?;
    let numerics = par::map(&hs, |h| gaussian_log_integral(p, h, &int(0))).into_iter().collect::<Result<Vec<_>, _>>()?;
    let prec = p.precision;
    let mut ctx = Ctx::new(prec)?;
    let mut rows: Vec<OrderRow> = Vec::new();
    for ((h, num), part) in hs.iter().zip(numerics).zip(partials) {
        let err = num.value.sub(&ctx.rat(&part), prec, RM).abs();
        if err.cmp(&num.error).is_some_and(|c| c <= 0) {
            return Err(OracleError::Quadrature(format!("at ħ = {h} the asymptotic error is below the quadrature error")));
        }
        let order = rows.last().map(|prev: &OrderRow| {
            let ratio = to_f64_lossy(&prev.error.div(&err, prec, RM)).ln();
            ratio / to_f64(&(&prev.hbar / h)).ln()
        });
        rows.push(OrderRow { hbar: h.clone(), numeric: num.value, partial: part, error: err, order });
    }
    let need = top as f64 - 0.3;
    let orders: Vec<f64> = rows.iter().filter_map(|r| r.order).collect();
    let passed = orders.iter().rev().take(2).all(|&o| o >= need);
    Ok(OrderReport { g: top, rows, passed })
}

/// `U` as an exact polynomial in `x` and ħ at one color.
pub fn u_poly(p: &QuadratureProblem) -> Poly {
    let mut u = Poly::zero();
    for (g, n, c) in &p.u_spec {
        let m = Monomial::from_factors([(Symbol::x(0), *n as i32), (Symbol::Hbar, *g as i32 - 1)]);
        u.add_term(m, c / factorial(*n));
    }
    u
}

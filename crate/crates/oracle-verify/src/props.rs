//! Randomized property suites with a fixed seed.

use genus_expansion::CheckReport;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use series_core::rational::rat;
use series_core::{Monomial, MultiIndex, Poly, Series, Symbol, TruncationSpec};
use stable_poly::{derive, solve_p_comb, stable_degree, StableTower};

use crate::OracleError;

fn report(name: &str, n: usize, failure: Option<String>) -> CheckReport {
    let name = format!("{name} ({n} instances)");
    match failure {
        None => CheckReport::pass(&name),
        Some(d) => CheckReport::fail(&name, d),
    }
}

fn ring_symbol(rng: &mut ChaCha8Rng, r: usize) -> Symbol {
    if rng.gen_bool(0.5) {
        Symbol::s(rng.gen_range(0..r), rng.gen_range(0..r))
    } else {
        let n: Vec<u16> = (0..r).map(|_| rng.gen_range(0..=2)).collect();
        Symbol::a(rng.gen_range(0..=2), MultiIndex::from_slice(&n))
    }
}

fn ring_element(rng: &mut ChaCha8Rng, r: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut m = Monomial::one();
        for _ in 0..rng.gen_range(0..=3) {
            m = m.mul(&Monomial::var(ring_symbol(rng, r)));
        }
        p.add_term(m, rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)));
    }
    p
}

/// A series with no term of X+S degree zero, so `exp` terminates.
fn small_series(rng: &mut ChaCha8Rng, r: usize, t: TruncationSpec) -> Result<Series, OracleError> {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut m = if rng.gen_bool(0.5) {
            Monomial::var(Symbol::x(rng.gen_range(0..r)))
        } else {
            Monomial::var(Symbol::s(rng.gen_range(0..r), rng.gen_range(0..r)))
        };
        for _ in 0..rng.gen_range(0..=2) {
            let extra = match rng.gen_range(0..3) {
                0 => Symbol::x(rng.gen_range(0..r)),
                1 => Symbol::s(rng.gen_range(0..r), rng.gen_range(0..r)),
                _ => Symbol::a(rng.gen_range(0..=1), MultiIndex::unit(r, rng.gen_range(0..r))),
            };
            m = m.mul(&Monomial::var(extra));
        }
        if rng.gen_bool(0.3) {
            m = m.mul(&Monomial::var(Symbol::Hbar));
        }
        p.add_term(m, rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
    }
    Ok(Series::new(p.retain(|m| t.admits(m)), t)?)
}

/// Commutativity, associativity and distributivity of the polynomial ring.
pub fn ring_axioms(seed: u64, n: usize) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fail = None;
    for k in 0..n {
        let r = rng.gen_range(1..=2);
        let (a, b, c) = (ring_element(&mut rng, r), ring_element(&mut rng, r), ring_element(&mut rng, r));
        let ok = a.mul(&b) == b.mul(&a)
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && a.add(&b).sub(&b) == a;
        if !ok && fail.is_none() {
            fail = Some(format!("instance {k}: {a} | {b} | {c}"));
        }
    }
    report("ring axioms", n, fail)
}

/// `D_k(pq) = D_k(p) q + p D_k(q)`, and `D_k` lowers the degree by one.
pub fn leibniz(seed: u64, n: usize) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fail = None;
    for k in 0..n {
        let r = rng.gen_range(1..=2);
        let (p, q) = (ring_element(&mut rng, r), ring_element(&mut rng, r));
        let c = rng.gen_range(0..r);
        let lhs = derive(c, &p.mul(&q), r);
        let rhs = derive(c, &p, r).mul(&q).add(&p.mul(&derive(c, &q, r)));
        let mono = Poly::term(p.first_term().map(|(m, _)| m.clone()).unwrap_or_else(Monomial::one), rat(1, 1));
        let d = stable_degree(mono.first_term().expect("one term").0);
        let graded = derive(c, &mono, r).terms().all(|(m, _)| stable_degree(m) == d - 1);
        if (lhs != rhs || !graded) && fail.is_none() {
            fail = Some(format!("instance {k}: D_{} on {p} and {q}", c + 1));
        }
    }
    report("Leibniz rule for D_k", n, fail)
}

/// `log(1 + (exp(f) - 1)) = f` and `exp(log(1 + f)) = 1 + f`.
pub fn exp_log_round_trip(seed: u64, n: usize) -> Result<CheckReport, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fail = None;
    for k in 0..n {
        let r = rng.gen_range(1..=2);
        let t = TruncationSpec::new(2, 2, 2);
        let f = small_series(&mut rng, r, t)?;
        let one = Series::one(t);
        let back = f.exp()?.sub(&one)?.log1p()?;
        let forth = f.log1p()?.exp()?;
        if (back != f || forth != one.add(&f)?) && fail.is_none() {
            fail = Some(format!("instance {k}: {}", f.poly()));
        }
    }
    Ok(report("exp/log round trips", n, fail))
}

/// Degrees `1-g`, `-g`, `-g-1` of `P_g`, `Q_g`, `R_g` on every term, for
/// `g <= max_g` at one color and `g <= min(max_g, 3)` at two.
pub fn homogeneity(max_g: u32) -> Result<CheckReport, OracleError> {
    let mut count = 0;
    for (r, max_g) in [(1usize, max_g), (2, max_g.min(3))] {
        let mut t = StableTower::new(r);
        t.extend_to(max_g)?;
        for g in 1..=max_g {
            let mut polys: Vec<(Poly, i64, String)> = Vec::new();
            if g >= 2 {
                polys.push((t.p(g)?.poly, 1 - g as i64, format!("P_{g}")));
            }
            for i in 0..r {
                polys.push((t.q(g, i)?, -(g as i64), format!("Q_{g}")));
                for j in 0..r {
                    polys.push((t.r_term(g, i, j)?, -(g as i64) - 1, format!("R_{g}")));
                }
            }
            for (p, d, name) in polys {
                for (m, _) in p.terms() {
                    count += 1;
                    if stable_degree(m) != d {
                        return Ok(report("homogeneity of P, Q, R", count, Some(format!("{m} in {name} at r={r}"))));
                    }
                }
            }
        }
    }
    Ok(report("homogeneity of P, Q, R", count, None))
}

/// `g <= deg P_g^comb <= 3g - 3`, with the top degree attained.
pub fn s_degree_bounds(max_g: u32) -> Result<CheckReport, OracleError> {
    let p = solve_p_comb(max_g)?;
    for g in 2..=max_g as usize {
        let (lo, hi) = (p[g].low_degree(), p[g].degree());
        if lo.is_none_or(|l| l < g) || hi != Some(3 * g - 3) {
            return Ok(report("S-degree bounds of P_g^comb", g - 1, Some(format!("P_{g}^comb spans {lo:?}..{hi:?}"))));
        }
    }
    Ok(report("S-degree bounds of P_g^comb", max_g as usize - 1, None))
}

/// Every property suite with `n` random instances each.
pub fn all(seed: u64, n: usize) -> Result<Vec<CheckReport>, OracleError> {
    Ok(vec![
        ring_axioms(seed, n),
        leibniz(seed.wrapping_add(1), n),
        exp_log_round_trip(seed.wrapping_add(2), n)?,
        homogeneity(4)?,
        s_degree_bounds(6)?,
    ])
}

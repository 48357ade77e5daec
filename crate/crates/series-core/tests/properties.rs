use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use series_core::json::{poly_from_json, poly_to_json};
use series_core::rational::rat;
use series_core::{Monomial, MultiIndex, Poly, Series, SeriesMatrix, Symbol, TruncationSpec};

const SEED: u64 = 7_311;

fn random_series(rng: &mut ChaCha8Rng, r: usize, t: TruncationSpec, constant: bool) -> Series {
    let mut p = Poly::zero();
    if constant {
        p.add_term(Monomial::one(), rat(rng.gen_range(-3..=3), 1));
    }
    for _ in 0..rng.gen_range(1..=5) {
        let mut m = Monomial::one();
        let deg = rng.gen_range(1..=3);
        for _ in 0..deg {
            let s = match rng.gen_range(0..3) {
                0 => Symbol::x(rng.gen_range(0..r)),
                1 => Symbol::s(rng.gen_range(0..r), rng.gen_range(0..r)),
                _ => Symbol::a(rng.gen_range(0..=1), MultiIndex::unit(r, rng.gen_range(0..r))),
            };
            m = m.mul(&Monomial::var(s));
        }
        if m.x_degree() + m.s_degree() == 0 {
            m = m.mul(&Monomial::var(Symbol::x(0)));
        }
        m = m.mul_pow(&Symbol::Hbar, rng.gen_range(0..=1));
        p.add_term(m, rat(rng.gen_range(-4..=4), rng.gen_range(1..=3)));
    }
    Series::new(p.retain(|m| t.admits(m)), t).unwrap()
}

#[test]
fn truncated_products_commute_with_restriction() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let big = TruncationSpec::new(4, 3, 3);
    let small = TruncationSpec::new(2, 2, 2);
    for _ in 0..100 {
        let r = rng.gen_range(1..=2);
        let (a, b) = (random_series(&mut rng, r, big, true), random_series(&mut rng, r, big, true));
        let lhs = a.mul(&b).unwrap().restrict(small).unwrap();
        let rhs = a.restrict(small).unwrap().mul(&b.restrict(small).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
    }
}

#[test]
fn exponential_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let t = TruncationSpec::new(3, 2, 2);
    for _ in 0..100 {
        let r = rng.gen_range(1..=2);
        let (a, b) = (random_series(&mut rng, r, t, false), random_series(&mut rng, r, t, false));
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(a.exp().unwrap().sub(&Series::one(t)).unwrap().log1p().unwrap(), a);
        let inv = a.one_plus_pow(-1).unwrap();
        assert_eq!(inv.mul(&Series::one(t).add(&a).unwrap()).unwrap(), Series::one(t));
    }
}

#[test]
fn derivatives_obey_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let t = TruncationSpec::new(4, 3, 2);
    let eff = TruncationSpec::new(3, 2, 2);
    for _ in 0..100 {
        let r = rng.gen_range(1..=2);
        let (a, b) = (random_series(&mut rng, r, t, true), random_series(&mut rng, r, t, true));
        let v = if rng.gen_bool(0.5) { Symbol::x(rng.gen_range(0..r)) } else { Symbol::s(0, r - 1) };
        let d = |x: &Series| x.diff(&v).unwrap().restrict(eff).unwrap();
        let e = |x: &Series| x.restrict(eff).unwrap();
        let lhs = d(&a.mul(&b).unwrap());
        let rhs = d(&a).mul(&e(&b)).unwrap().add(&e(&a).mul(&d(&b)).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let t = TruncationSpec::new(3, 3, 3);
    for _ in 0..100 {
        let a = random_series(&mut rng, 2, t, true);
        let v = a.to_json();
        assert_eq!(Series::from_json(&v, t).unwrap(), a);
        assert_eq!(poly_from_json(&poly_to_json(a.poly())).unwrap(), *a.poly());
    }
}

#[test]
fn determinant_and_trace_log() {
    // det(E - M) = exp(tr log(E - M)) for M with no constant entries
    let t = TruncationSpec::all_genera(2, 3);
    let s = SeriesMatrix::s_matrix(2, t);
    let x = SeriesMatrix::from_fn(2, t, |i, j| Series::var(if i == j { Symbol::x(i) } else { Symbol::x(0) }, t)).unwrap();
    let m = s.mul(&x).unwrap();
    let id = SeriesMatrix::identity(2, t);
    let det = id.sub(&m).unwrap().det().unwrap();
    let via_log = m.trace_log().unwrap().exp().unwrap();
    assert_eq!(det, via_log);
    let inv = m.geom_inverse().unwrap();
    assert_eq!(inv.mul(&id.sub(&m).unwrap()).unwrap(), id);
}

#[test]
fn insufficient_precision_is_an_error() {
    let t = TruncationSpec::new(1, 1, 1);
    let a = Series::var(Symbol::x(0), t);
    assert!(a.restrict(TruncationSpec::new(2, 1, 1)).is_err());
    assert!(a.add(&Series::zero(TruncationSpec::new(2, 1, 1))).is_err());
    assert!(TruncationSpec::parse("Dx=3,Ds=2,G=2").unwrap() == TruncationSpec::new(3, 2, 2));
    assert!(TruncationSpec::parse("Dx=3").is_err());
}

#[test]
fn rational_literals() {
    use series_core::rational::parse_rational as p;
    assert_eq!(p("0.05").unwrap(), rat(1, 20));
    assert_eq!(p("-0.5").unwrap(), rat(-1, 2));
    assert_eq!(p(" 3/6 ").unwrap(), rat(1, 2));
    assert_eq!(p("-7").unwrap(), rat(-7, 1));
    for bad in ["1/0", "1.", "1.2.3", "x", "1e-3"] {
        assert!(p(bad).is_err(), "{bad}");
    }
}

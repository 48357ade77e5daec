use graph_enum::{enumerate_graphs, graph_series, Bounds, EnumSpec, VertexFilter, VertexRule};
use num_traits::One;
use pde_solve::{init, solve, Kind, PdeProblem};
use series_core::rational::{int, rat};
use series_core::{Monomial, Poly, Rational, Series, Symbol, TruncationSpec};
use stable_poly::{counting_comb, counting_stable, solve_p_comb};

fn ones(p: &Poly) -> Poly {
    p.evaluate(&|s| matches!(s, Symbol::A(..)).then(Rational::one))
}

fn enumerated(g: i64, rule: VertexRule, t: TruncationSpec) -> Poly {
    let bounds = Bounds { max_s: t.ds, max_tails: t.dx, max_genus: Some(g), connected_only: true };
    let set = enumerate_graphs(&EnumSpec::new(1, bounds, VertexFilter::with_rule(0, rule))).unwrap();
    let series = graph_series(&set, t.with_g(Some(g as u32))).unwrap();
    ones(&series.poly().hbar_layer(g as i32 - 1))
}

#[test]
fn combinatorial_counting_matches_burgers_and_graphs() {
    let p = solve_p_comb(3).unwrap();
    let t = TruncationSpec::new(4, 4, 4);
    let u = init::builtin_comb(t.dx + 2 * t.ds);
    let burg = solve(&PdeProblem { r: 1, u, trunc: t, kind: Kind::Burgers }).unwrap();
    for g in 2..=3u32 {
        let c = counting_comb(g, &p[g as usize], t).unwrap();
        assert_eq!(*c.poly(), burg.poly().hbar_layer(g as i32 - 1), "g={g}");
    }
    let small = TruncationSpec::all_genera(3, 4);
    let c2 = counting_comb(2, &p[2], small).unwrap();
    assert_eq!(*c2.poly(), enumerated(2, VertexRule::Combinatorial, small));
}

#[test]
fn stable_counting_matches_graphs() {
    let p = solve_p_comb(3).unwrap();
    let t = TruncationSpec::all_genera(3, 5);
    for g in 2..=3u32 {
        let st = counting_stable(g, &p[g as usize], t).unwrap();
        assert_eq!(*st.poly(), enumerated(g as i64, VertexRule::CombStable, t), "g={g}");
        let at_zero = st.poly().retain(|m| m.x_degree() == 0);
        let want: Poly = Poly::from_terms(
            p[g as usize].0.iter().enumerate().filter(|(k, _)| *k as u32 <= t.ds).map(|(k, c)| (Monomial::pow(Symbol::s(0, 0), k as i32), c.clone())),
        );
        assert_eq!(at_zero, want);
    }
}

#[test]
fn stable_tree_equation() {
    // e^{x+sΦ} - 1 - x - (s+1)Φ = 0 for Φ = F^st(x+sΦ)
    let t = TruncationSpec::all_genera(4, 4);
    let mut f = Poly::zero();
    let mut c = Rational::one();
    for k in 0..=8u32 {
        f.add_term(Monomial::pow(Symbol::x(0), k as i32), c.clone());
        c /= int(k as i64 + 1);
    }
    let fst = f.retain(|m| m.x_degree() >= 2);
    let phi = genus_expansion::tree_solve(&[fst], t).unwrap().remove(0);
    assert!(phi.coeff(&Monomial::one()).is_zero_rational());
    let s = Series::var(Symbol::s(0, 0), t);
    let x = Series::var(Symbol::x(0), t);
    let arg = x.add(&s.mul(&phi).unwrap()).unwrap();
    let lhs = Series::compose_poly(&f, &[arg], t).unwrap();
    let rhs = Series::one(t).add(&x).unwrap().add(&s.add(&Series::one(t)).unwrap().mul(&phi).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let cayley = genus_expansion::tree_solve(&[f.clone()], TruncationSpec::all_genera(0, 3)).unwrap().remove(0);
    let lead: Vec<Rational> = (0..4).map(|k| cayley.coeff(&Monomial::pow(Symbol::s(0, 0), k))).collect();
    assert_eq!(lead, vec![int(1), int(1), rat(3, 2), rat(8, 3)]);
}

trait IsZero {
    fn is_zero_rational(&self) -> bool;
}

impl IsZero for Rational {
    fn is_zero_rational(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

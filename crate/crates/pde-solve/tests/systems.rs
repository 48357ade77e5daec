use graph_enum::{enumerate_graphs, graph_series, Bounds, EnumSpec, VertexFilter};
use pde_solve::{at_s_zero, init, residual_vanishes, solve, Kind, PdeError, PdeProblem};
use series_core::rational::rat;
use series_core::{Monomial, MultiIndex, Poly, Series, Symbol, TruncationSpec};

fn problem(r: usize, u: Poly, trunc: TruncationSpec, kind: Kind) -> PdeProblem {
    PdeProblem { r, u, trunc, kind }
}

#[test]
fn solutions_satisfy_their_equations() {
    let cases = [
        (1usize, TruncationSpec::new(4, 3, 2), Kind::Burgers),
        (1, TruncationSpec::new(4, 3, 2), Kind::Heat),
        (2, TruncationSpec::new(3, 2, 2), Kind::Burgers),
        (2, TruncationSpec::new(2, 2, 1), Kind::Heat),
    ];
    for (r, t, kind) in cases {
        let u = init::symbolic(r, 2, t.dx + 2 * t.ds, &init::vacuum_labels(r));
        let psi = solve(&problem(r, u.clone(), t, kind)).unwrap();
        assert!(residual_vanishes(kind, &psi, r).unwrap(), "{kind:?} r={r}");
        if kind == Kind::Burgers {
            assert_eq!(at_s_zero(&psi), *Series::new(u, t).unwrap().poly());
        }
    }
}

#[test]
fn exponential_bridge() {
    let r = 1;
    let t = TruncationSpec::new(4, 3, 2);
    let u = init::symbolic(r, 2, t.dx + 2 * t.ds, &init::vacuum_labels(r));
    let all = solve(&problem(r, u.clone(), t.with_g(None), Kind::Burgers)).unwrap();
    let heat = solve(&problem(r, u, t, Kind::Heat)).unwrap();
    let e = all.exp_capped(2).unwrap();
    assert_eq!(e, heat);
    assert!(residual_vanishes(Kind::Heat, &e, r).unwrap());
}

#[test]
fn connected_graph_series_solves_burgers() {
    let r = 2;
    let t = TruncationSpec::new(3, 2, 1);
    let mut f = VertexFilter::any(1).without_constants(r);
    f.max_valence = Some(t.dx + 2 * t.ds);
    let spec = EnumSpec::new(r, Bounds { max_s: t.ds, max_tails: t.dx, max_genus: Some(1), connected_only: true }, f);
    let gs = graph_series(&enumerate_graphs(&spec).unwrap(), t).unwrap();
    assert!(residual_vanishes(Kind::Burgers, &gs, r).unwrap());
    assert!(!residual_vanishes(Kind::Heat, &gs, r).unwrap());
}

#[test]
fn one_loop_of_a_single_cubic_vertex() {
    // U = a_{0,3} x³/3! ħ^{-1}: the ħ⁰ term s x a03 / 2 is one loop on the vertex
    let u = init::vertex_term(0, &MultiIndex::from_slice(&[3]), None);
    let psi = solve(&problem(1, u, TruncationSpec::new(1, 1, 1), Kind::Burgers)).unwrap();
    let m = Monomial::from_factors([(Symbol::s(0, 0), 1), (Symbol::x(0), 1), (Symbol::a(0, MultiIndex::from_slice(&[3])), 1)]);
    assert_eq!(psi.coeff(&m), rat(1, 2));
}

#[test]
fn thread_count_does_not_change_the_result() {
    let r = 2;
    let t = TruncationSpec::new(3, 2, 2);
    let u = init::symbolic(r, 2, t.dx + 2 * t.ds, &init::vacuum_labels(r));
    let p = problem(r, u, t, Kind::Burgers);
    let run = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap().install(|| solve(&p).unwrap());
    assert_eq!(run(1), run(4));
}

#[test]
fn invalid_problems() {
    let t = TruncationSpec::new(2, 2, 2);
    let with_s = Poly::var(Symbol::s(0, 0));
    assert!(matches!(solve(&problem(1, with_s, t, Kind::Heat)), Err(PdeError::Invalid(_))));
    let deep = Poly::term(Monomial::pow(Symbol::Hbar, -2), rat(1, 1));
    assert!(matches!(solve(&problem(1, deep, t, Kind::Burgers)), Err(PdeError::Invalid(_))));
    let color = Poly::var(Symbol::x(1));
    assert!(solve(&problem(1, color, t, Kind::Burgers)).is_err());
}

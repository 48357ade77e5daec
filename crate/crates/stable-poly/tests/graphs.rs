use graph_enum::{enumerate_graphs, Bounds, EnumSpec, VertexFilter, VertexRule};
use num_bigint::BigInt;
use series_core::{MultiIndex, Poly, Rational};
use stable_poly::{q1, StableTower};

/// `Σ μ(Γ)/|Aut Γ|` over connected stable genus-`g` graphs whose tails are `tails`.
fn enumerated(r: usize, g: i64, tails: &MultiIndex, max_s: u32) -> Poly {
    let bounds = Bounds { max_s, max_tails: tails.total(), max_genus: Some(g), connected_only: true };
    let set = enumerate_graphs(&EnumSpec::new(r, bounds, VertexFilter::with_rule(g as u16, VertexRule::Stable))).unwrap();
    let mut p = Poly::zero();
    for c in set.classes.iter().filter(|c| c.genus == g && c.tails == *tails) {
        assert!(c.n_s() < max_s as usize, "bound {max_s} reached by {}", c.graph);
        p.add_term(c.mu.clone(), Rational::new(BigInt::from(1), BigInt::from(c.aut_order.clone())));
    }
    p
}

#[test]
fn closed_polynomials_match_enumeration() {
    for (r, top) in [(1usize, 3u32), (2, 3)] {
        let mut t = StableTower::new(r);
        t.extend_to(top).unwrap();
        for g in 2..=top {
            let want = enumerated(r, g as i64, &MultiIndex::zero(r), 3 * g - 2);
            assert_eq!(t.p(g).unwrap().poly, want, "r={r} g={g}");
        }
    }
}

#[test]
fn one_tail_functions_match_enumeration() {
    for r in [1usize, 2] {
        let mut t = StableTower::new(r);
        t.extend_to(2).unwrap();
        for i in 0..r {
            let tails = MultiIndex::unit(r, i);
            assert_eq!(q1(r, i), enumerated(r, 1, &tails, 2), "Q_1 r={r}");
            assert_eq!(t.q(2, i).unwrap(), enumerated(r, 2, &tails, 5), "Q_2 r={r}");
        }
    }
}

#[test]
fn two_tail_functions_match_enumeration() {
    for (r, top) in [(1usize, 2u32), (2, 2)] {
        let mut t = StableTower::new(r);
        t.extend_to(top).unwrap();
        for g in 1..=top {
            for i in 0..r {
                for j in i..r {
                    let tails = MultiIndex::of_colors(r, &[i, j]);
                    let want = enumerated(r, g as i64, &tails, 3 * g);
                    assert_eq!(t.r_term(g, i, j).unwrap(), want, "R_{g}^({i}{j}) r={r}");
                    assert_eq!(t.r_term(g, i, j).unwrap(), t.r_term(g, j, i).unwrap());
                }
            }
        }
    }
}

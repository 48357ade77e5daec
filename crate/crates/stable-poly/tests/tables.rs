use stable_poly::comb::printed_comb as printed;
use stable_poly::{solve_p, solve_p_comb, specialize_comb, stored_p2_r1, StableTower};

#[test]
fn genus_two_from_formal_seeds() {
    assert_eq!(solve_p(2, 1).unwrap().poly, stored_p2_r1());
}

#[test]
fn combinatorial_recurrence_matches_tables() {
    let p = solve_p_comb(6).unwrap();
    for (g, want) in (2..=6).zip(printed()) {
        assert_eq!(p[g], want, "P_{g}^comb");
    }
}

#[test]
fn specialized_polynomials_match_tables() {
    let mut t = StableTower::new(1);
    t.extend_to(6).unwrap();
    for (g, want) in (2..=6u32).zip(printed()) {
        assert_eq!(specialize_comb(&t.p(g).unwrap()).unwrap(), want, "P_{g}");
    }
}

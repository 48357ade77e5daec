use std::collections::HashMap;

use graph_enum::{canonicalize, classify, class_sum, enumerate_graphs, graph_series, AVertex, Bounds, EnumSpec, ModularGraph, VertexFilter};
use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use series_core::{MultiIndex, TruncationSpec};

const SEED: u64 = 0x5eed_2024;

fn random_graph(rng: &mut ChaCha8Rng, connected: bool) -> ModularGraph {
    loop {
        let r = rng.gen_range(1..=2);
        let n_a = rng.gen_range(1..=4);
        let n_s = rng.gen_range(0..=4);
        let a = (0..n_a)
            .map(|_| {
                let tails: Vec<u16> = (0..r).map(|_| rng.gen_range(0..=2)).collect();
                AVertex::new(rng.gen_range(0..=1), MultiIndex::from_slice(&tails))
            })
            .collect();
        let s = (0..n_s)
            .map(|_| {
                [
                    (rng.gen_range(0..n_a), rng.gen_range(0..r as u8)),
                    (rng.gen_range(0..n_a), rng.gen_range(0..r as u8)),
                ]
            })
            .collect();
        let g = ModularGraph::new(r, a, s).unwrap();
        if !connected || g.is_connected() {
            return g;
        }
    }
}

/// Random relabeling of a-vertices, s-vertex order and slot order.
fn scramble(rng: &mut ChaCha8Rng, g: &ModularGraph) -> ModularGraph {
    let mut perm: Vec<usize> = (0..g.n_a()).collect();
    perm.shuffle(rng);
    let mut h = g.permuted(&perm);
    h.s.shuffle(rng);
    for p in h.s.iter_mut() {
        if rng.gen_bool(0.5) {
            p.swap(0, 1);
        }
    }
    h
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Counts triples (a-vertex permutation, s-vertex permutation, per-s-vertex
/// flips) that map every edge onto an edge of the same color and preserve
/// vertex data, times the tail permutations.
fn brute_aut(g: &ModularGraph) -> BigUint {
    let (n_a, n_s) = (g.n_a(), g.n_s());
    let mut count = 0u64;
    for sigma in (0..n_a).permutations(n_a) {
        if (0..n_a).any(|v| g.a[sigma[v]] != g.a[v]) {
            continue;
        }
        for tau in (0..n_s).permutations(n_s) {
            for flips in 0..(1u32 << n_s) {
                let ok = (0..n_s).all(|w| {
                    let img = g.s[tau[w]];
                    (0..2).all(|p| {
                        let q = if flips >> w & 1 == 1 { 1 - p } else { p };
                        let (v, c) = g.s[w][p];
                        img[q] == (sigma[v], c)
                    })
                });
                if ok {
                    count += 1;
                }
            }
        }
    }
    let tails: u64 = g.a.iter().flat_map(|v| v.tails.0.iter()).map(|&t| factorial(t as u64)).product();
    BigUint::from(count * tails)
}

fn brute_iso(g: &ModularGraph, h: &ModularGraph) -> bool {
    if g.r != h.r || g.n_a() != h.n_a() || g.n_s() != h.n_s() {
        return false;
    }
    let norm = |p: [(usize, u8); 2]| if p[0] <= p[1] { p } else { [p[1], p[0]] };
    let mut target: Vec<_> = h.s.iter().map(|p| norm(*p)).collect();
    target.sort_unstable();
    (0..g.n_a()).permutations(g.n_a()).any(|sigma| {
        (0..g.n_a()).all(|v| h.a[sigma[v]] == g.a[v]) && {
            let mut img: Vec<_> = g.s.iter().map(|[(u, c), (w, d)]| norm([(sigma[*u], *c), (sigma[*w], *d)])).collect();
            img.sort_unstable();
            img == target
        }
    })
}

#[test]
fn automorphism_order_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..150 {
        let g = random_graph(&mut rng, false);
        let brute = brute_aut(&g);
        assert_eq!(canonicalize(&g).aut, brute, "{g}");
        assert_eq!(classify(&g).1, brute, "{g}");
    }
}

#[test]
fn canonical_form_is_relabeling_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..200 {
        let g = random_graph(&mut rng, false);
        let h = scramble(&mut rng, &g);
        assert_eq!(classify(&g).0, classify(&h).0, "{g} vs {h}");
    }
}

#[test]
fn canonical_form_separates_non_isomorphic_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut checked = 0;
    while checked < 200 {
        let g = random_graph(&mut rng, true);
        let h = random_graph(&mut rng, true);
        if g.r != h.r || g.n_a() != h.n_a() || g.n_s() != h.n_s() {
            continue;
        }
        checked += 1;
        assert_eq!(canonicalize(&g).code == canonicalize(&h).code, brute_iso(&g, &h), "{g} vs {h}");
    }
}

#[test]
fn genus_of_disjoint_union() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    for _ in 0..100 {
        let g = random_graph(&mut rng, true);
        let mut h = random_graph(&mut rng, true);
        if h.r != g.r {
            h = ModularGraph::new(g.r, vec![AVertex::new(0, MultiIndex::zero(g.r))], vec![]).unwrap();
        }
        assert_eq!(g.union(&h).genus(), g.genus() + h.genus() - 1);
    }
}

#[test]
fn tree_count_matches_labeled_brute_force() {
    // genus-0 connected, r=1, at most 4 tails and 3 s-vertices: all vertices
    // have genus 0 and there are n_a - 1 s-vertices
    let mut reps: HashMap<(usize, u32), Vec<ModularGraph>> = HashMap::new();
    for n_a in 1..=4usize {
        let pairs: Vec<[(usize, u8); 2]> =
            (0..n_a).flat_map(|u| (u..n_a).map(move |w| [(u, 0u8), (w, 0u8)])).collect();
        for edges in (0..pairs.len()).combinations_with_replacement(n_a - 1) {
            for tails in (0..n_a).map(|_| 0..=4u16).multi_cartesian_product() {
                if tails.iter().sum::<u16>() > 4 {
                    continue;
                }
                let a = tails.iter().map(|&t| AVertex::new(0, MultiIndex::from_slice(&[t]))).collect();
                let g = ModularGraph::new(1, a, edges.iter().map(|&e| pairs[e]).collect()).unwrap();
                if !g.is_connected() || g.genus() != 0 {
                    continue;
                }
                let bucket = reps.entry((n_a, g.tails().total())).or_default();
                if !bucket.iter().any(|h| brute_iso(&g, h)) {
                    bucket.push(g);
                }
            }
        }
    }
    let brute: usize = reps.values().map(Vec::len).sum();
    let spec = EnumSpec::new(1, Bounds { max_s: 3, max_tails: 4, max_genus: Some(0), connected_only: true }, VertexFilter::any(0));
    let set = enumerate_graphs(&spec).unwrap();
    assert_eq!(set.classes.iter().filter(|c| c.genus == 0).count(), brute);
}

#[test]
fn all_graphs_are_exp_of_connected() {
    for (r, t) in [(1, TruncationSpec::new(3, 2, 2)), (2, TruncationSpec::new(2, 1, 2))] {
        let f = VertexFilter::any(2).without_constants(r);
        let conn = EnumSpec::new(r, Bounds { max_s: t.ds, max_tails: t.dx, max_genus: None, connected_only: true }, f.clone());
        let all = EnumSpec::new(r, Bounds { max_s: t.ds, max_tails: t.dx, max_genus: t.g.map(|g| g as i64), connected_only: false }, f);
        let psi = graph_series(&enumerate_graphs(&conn).unwrap(), t.with_g(None)).unwrap();
        let tilde = graph_series(&enumerate_graphs(&all).unwrap(), t).unwrap();
        assert_eq!(psi.exp().unwrap().restrict(t).unwrap(), tilde);
    }
}

#[test]
fn class_sum_of_nothing_is_zero() {
    assert!(class_sum(&[]).is_zero());
}

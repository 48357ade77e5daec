use graph_enum::shapes::{chain_classes, cycle_classes, is_closed};
use graph_enum::{enumerate_graphs, graph_series, Bounds, EnumSpec, GraphError, VertexFilter, VertexRule};
use num_bigint::BigUint;
use series_core::{MultiIndex, TruncationSpec};

fn connected(r: usize, max_s: u32, max_tails: u32, max_genus: i64, f: VertexFilter) -> EnumSpec {
    EnumSpec::new(r, Bounds { max_s, max_tails, max_genus: Some(max_genus), connected_only: true }, f)
}

#[test]
fn smallest_tree() {
    let set = enumerate_graphs(&connected(1, 0, 1, 0, VertexFilter::any(0))).unwrap();
    let with_tail: Vec<_> = set.classes.iter().filter(|c| c.tails.total() == 1).collect();
    assert_eq!(with_tail.len(), 1);
    assert_eq!(with_tail[0].aut_order, BigUint::from(1u32));
    assert_eq!(with_tail[0].mu.to_string(), "a[0;1]");
}

#[test]
fn one_cycle() {
    let set = enumerate_graphs(&connected(1, 1, 0, 1, VertexFilter::any(0))).unwrap();
    let closed: Vec<_> = set.classes.iter().filter(|c| c.genus == 1 && is_closed(&c.graph)).collect();
    assert_eq!(closed.len(), 1);
    assert_eq!(closed[0].aut_order, BigUint::from(2u32));
    assert_eq!(closed[0].mu.to_string(), "s11*a[0;2]");
}

#[test]
fn genus_zero_tree_count_is_frozen() {
    // genus-0 connected classes, r=1, at most 4 tails and 3 s-vertices
    let set = enumerate_graphs(&connected(1, 3, 4, 0, VertexFilter::any(0))).unwrap();
    let trees: Vec<_> = set.classes.iter().filter(|c| c.genus == 0).collect();
    assert_eq!(trees.len(), 99);
}

#[test]
fn stable_genus_two_shapes() {
    // closed stable genus-2 graphs with any vertex genera: seven shapes
    let set = enumerate_graphs(&connected(1, 3, 0, 2, VertexFilter::with_rule(2, VertexRule::Stable))).unwrap();
    let g2: Vec<_> = set.classes.iter().filter(|c| c.genus == 2).collect();
    assert_eq!(g2.len(), 7);
    let total: Vec<String> = g2.iter().map(|c| format!("{}/{}", c.mu, c.aut_order)).collect();
    assert!(total.contains(&"s11^3*a[0;3]^2/12".to_string()), "{total:?}");
    assert!(total.contains(&"s11^3*a[0;3]^2/8".to_string()), "{total:?}");
}

#[test]
fn stable_edge_bound() {
    for g in 2..=3i64 {
        let max_s = 3 * g as u32 - 2;
        let set = enumerate_graphs(&connected(1, max_s, 0, g, VertexFilter::with_rule(g as u16, VertexRule::Stable))).unwrap();
        for c in set.classes.iter().filter(|c| c.genus == g) {
            assert!(c.n_s() as i64 <= 3 * g - 3, "{} has {} s-vertices", c.graph, c.n_s());
        }
    }
}

#[test]
fn chains_have_trivial_automorphisms() {
    for k in 1..=3 {
        let cs = chain_classes(2, 0, 1, k, 2).unwrap();
        assert!(!cs.is_empty());
        for c in &cs {
            assert_eq!(c.graph.n_a(), k);
            let tails_fact: u32 = c.graph.a.iter().flat_map(|v| v.tails.0.iter()).map(|&t| (1..=t as u32).product::<u32>()).product();
            assert_eq!(c.aut_order, BigUint::from(tails_fact));
        }
    }
}

#[test]
fn cycles_are_found() {
    let c1 = cycle_classes(1, 1, 0).unwrap();
    assert_eq!(c1.len(), 1);
    let c3 = cycle_classes(1, 3, 0).unwrap();
    assert_eq!(c3.len(), 1);
    assert_eq!(c3[0].aut_order, BigUint::from(6u32));
}

#[test]
fn coverage_gap_is_reported() {
    let set = enumerate_graphs(&connected(1, 1, 2, 1, VertexFilter::any(1))).unwrap();
    assert!(graph_series(&set, TruncationSpec::new(2, 1, 2)).is_err());
    assert!(graph_series(&set, TruncationSpec::new(3, 1, 1)).is_err());
    assert!(graph_series(&set, TruncationSpec::new(2, 1, 1)).is_ok());
    let empty = enumerate_graphs(&connected(1, 0, 0, 0, VertexFilter::any(0).without_constants(1))).unwrap();
    assert!(empty.classes.is_empty());
    assert!(graph_series(&empty, TruncationSpec::new(0, 0, 0)).unwrap().is_zero());
}

#[test]
fn class_limit() {
    let mut spec = connected(1, 3, 4, 0, VertexFilter::any(0));
    spec.max_classes = 10;
    assert!(matches!(enumerate_graphs(&spec), Err(GraphError::TooMany(10))));
}

#[test]
fn disconnected_requires_degree() {
    let spec = EnumSpec::new(
        1,
        Bounds { max_s: 1, max_tails: 1, max_genus: Some(1), connected_only: false },
        VertexFilter::any(0),
    );
    assert!(enumerate_graphs(&spec).is_err());
    let ok = EnumSpec { vertices: VertexFilter::any(0).without_constants(1), ..spec };
    let set = enumerate_graphs(&ok).unwrap();
    // the empty graph is the unique class with no vertices
    assert_eq!(set.classes.iter().filter(|c| c.graph.n_a() == 0).count(), 1);
    assert!(set.classes.iter().any(|c| c.graph.b0() == 2));
}

#[test]
fn tail_symmetry_on_one_vertex() {
    let spec = connected(2, 0, 3, 3, VertexFilter::any(3));
    let set = enumerate_graphs(&spec).unwrap();
    let c = set
        .classes
        .iter()
        .find(|c| c.graph.a[0].genus == 3 && c.tails == MultiIndex::from_slice(&[2, 1]))
        .unwrap();
    assert_eq!(c.aut_order, BigUint::from(2u32));
}

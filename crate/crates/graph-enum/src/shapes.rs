//! Special families picked out of a full enumeration: chains between two
//! marked tails and simple cycles.

use crate::enumerate::{enumerate_graphs, Bounds, EnumSpec, GraphClass, VertexFilter};
use crate::graph::ModularGraph;
use crate::GraphError;

pub fn is_closed(g: &ModularGraph) -> bool {
    g.tails().total() == 0 && g.n_marks() == 0
}

/// A tree of genus-0 vertices in which every vertex carries exactly two of
/// {edge slots, marked tails}: a path with the two marks at its ends.
pub fn is_chain(g: &ModularGraph) -> bool {
    g.n_marks() == 2
        && g.is_connected()
        && g.genus() == 0
        && g.a.iter().all(|v| v.genus == 0)
        && (0..g.n_a()).all(|v| g.edge_degree(v) + g.a[v].marks.len() == 2)
}

/// A single cycle through genus-0 vertices, each on exactly two edge slots.
pub fn is_cycle(g: &ModularGraph) -> bool {
    g.n_marks() == 0
        && g.is_connected()
        && g.genus() == 1
        && g.n_s() == g.n_a()
        && g.a.iter().all(|v| v.genus == 0)
        && (0..g.n_a()).all(|v| g.edge_degree(v) == 2)
}

/// Chains of `k` a-vertices with marked tails of colors `i` (first) and `j`
/// (second), with at most `max_tails` further tails.
pub fn chain_classes(r: usize, i: u8, j: u8, k: usize, max_tails: u32) -> Result<Vec<GraphClass>, GraphError> {
    if k == 0 {
        return Err(GraphError::Invalid("a chain has at least one a-vertex".into()));
    }
    let bounds = Bounds { max_s: k as u32 - 1, max_tails, max_genus: Some(0), connected_only: true };
    let mut spec = EnumSpec::new(r, bounds, VertexFilter::any(0));
    spec.marks = vec![i, j];
    let set = enumerate_graphs(&spec)?;
    Ok(set.classes.into_iter().filter(|c| c.graph.n_a() == k && is_chain(&c.graph)).collect())
}

/// Cycles through `k` a-vertices and `k` s-vertices with at most `max_tails` tails.
pub fn cycle_classes(r: usize, k: usize, max_tails: u32) -> Result<Vec<GraphClass>, GraphError> {
    let bounds = Bounds { max_s: k as u32, max_tails, max_genus: Some(1), connected_only: true };
    let set = enumerate_graphs(&EnumSpec::new(r, bounds, VertexFilter::any(0)))?;
    Ok(set.classes.into_iter().filter(|c| c.n_s() == k && is_cycle(&c.graph)).collect())
}

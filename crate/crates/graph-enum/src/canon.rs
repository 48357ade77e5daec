//! Canonical labeling and automorphism counting.
//!
//! Color refinement on the a-vertices, then individualization of the first
//! non-singleton cell with full backtracking. Every leaf of the search tree
//! is a relabeling; the lexicographically largest encoding is canonical and
//! the number of leaves attaining it is the order of the automorphism group's
//! action on a-vertices. The rest of the group fixes every a-vertex: it
//! permutes parallel s-vertices, flips s-vertices whose two slots coincide
//! and permutes equal-colored tails at a vertex.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::graph::{norm_pair, ModularGraph, Slot};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub code: Vec<u32>,
    /// Old a-vertex index to canonical index.
    pub perm: Vec<usize>,
    /// Leaves attaining the canonical code.
    pub vertex_aut: u64,
    pub aut: BigUint,
}

type Adj = Vec<Vec<(u8, usize, u8)>>;

fn label(g: &ModularGraph, v: usize) -> Vec<u32> {
    let a = &g.a[v];
    let mut l = vec![a.genus as u32];
    l.extend(a.tails.0.iter().map(|&t| t as u32));
    l.push(a.marks.len() as u32);
    for &(m, c) in &a.marks {
        l.push(m as u32);
        l.push(c as u32);
    }
    l
}

fn adjacency(g: &ModularGraph) -> Adj {
    let mut adj = vec![Vec::new(); g.n_a()];
    for [(u, c), (w, d)] in &g.s {
        adj[*u].push((*c, *w, *d));
        adj[*w].push((*d, *u, *c));
    }
    adj
}

fn count_cells(cell: &[usize]) -> usize {
    cell.iter().max().map_or(0, |m| m + 1)
}

fn refine(adj: &Adj, cell: &mut [usize]) {
    loop {
        let before = count_cells(cell);
        let keys: Vec<(usize, Vec<(u8, usize, u8)>)> = (0..cell.len())
            .map(|v| {
                let mut sig: Vec<(u8, usize, u8)> = adj[v].iter().map(|&(c, w, d)| (c, cell[w], d)).collect();
                sig.sort_unstable();
                (cell[v], sig)
            })
            .collect();
        let mut uniq = keys.clone();
        uniq.sort();
        uniq.dedup();
        for v in 0..cell.len() {
            cell[v] = uniq.binary_search(&keys[v]).expect("key present");
        }
        if uniq.len() == before {
            return;
        }
    }
}

struct Search<'a> {
    g: &'a ModularGraph,
    adj: Adj,
    labels: Vec<Vec<u32>>,
    best: Option<(Vec<u32>, Vec<usize>)>,
    hits: u64,
}

impl Search<'_> {
    fn encode(&self, cell: &[usize]) -> Vec<u32> {
        let g = self.g;
        let mut order = vec![0usize; cell.len()];
        for (v, &c) in cell.iter().enumerate() {
            order[c] = v;
        }
        let mut code = vec![g.r as u32, g.n_a() as u32, g.n_s() as u32];
        for &v in &order {
            code.push(self.labels[v].len() as u32);
            code.extend(&self.labels[v]);
        }
        let mut ss: Vec<[Slot; 2]> =
            g.s.iter().map(|[(u, c), (w, d)]| norm_pair([(cell[*u], *c), (cell[*w], *d)])).collect();
        ss.sort_unstable();
        for [(u, c), (w, d)] in ss {
            code.extend([u as u32, c as u32, w as u32, d as u32]);
        }
        code
    }

    fn run(&mut self, mut cell: Vec<usize>) {
        refine(&self.adj, &mut cell);
        let n = cell.len();
        if count_cells(&cell) == n {
            let code = self.encode(&cell);
            match &self.best {
                Some((b, _)) if *b > code => {}
                Some((b, _)) if *b == code => self.hits += 1,
                _ => {
                    self.best = Some((code, cell));
                    self.hits = 1;
                }
            }
            return;
        }
        let mut size = vec![0usize; n];
        for &c in &cell {
            size[c] += 1;
        }
        let target = (0..n).find(|&c| size[c] > 1).expect("non-discrete partition");
        let members: Vec<usize> = (0..n).filter(|&v| cell[v] == target).collect();
        for v in members {
            let next: Vec<usize> = (0..n)
                .map(|u| {
                    if u == v {
                        target
                    } else if cell[u] >= target {
                        cell[u] + 1
                    } else {
                        cell[u]
                    }
                })
                .collect();
            self.run(next);
        }
    }
}

fn big_factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Automorphisms that fix every a-vertex.
pub fn kernel_order(g: &ModularGraph) -> BigUint {
    let mut mult: BTreeMap<[Slot; 2], u64> = BTreeMap::new();
    for p in &g.s {
        *mult.entry(norm_pair(*p)).or_default() += 1;
    }
    let mut k = BigUint::one();
    for (p, m) in mult {
        k *= big_factorial(m);
        if p[0] == p[1] {
            k *= BigUint::from(2u32).pow(m as u32);
        }
    }
    for v in &g.a {
        for &t in v.tails.0.iter() {
            k *= big_factorial(t as u64);
        }
    }
    k
}

pub fn canonicalize(g: &ModularGraph) -> Canonical {
    let n = g.n_a();
    let labels: Vec<Vec<u32>> = (0..n).map(|v| label(g, v)).collect();
    let mut uniq = labels.clone();
    uniq.sort();
    uniq.dedup();
    let cell: Vec<usize> = labels.iter().map(|l| uniq.binary_search(l).expect("label present")).collect();
    let mut s = Search { g, adj: adjacency(g), labels, best: None, hits: 0 };
    if n == 0 {
        let code = s.encode(&[]);
        return Canonical { code, perm: vec![], vertex_aut: 1, aut: kernel_order(g) };
    }
    s.run(cell);
    let (code, perm) = s.best.expect("at least one leaf");
    let aut = BigUint::from(s.hits) * kernel_order(g);
    Canonical { code, perm, vertex_aut: s.hits, aut }
}

/// The canonical relabeling with s-vertices in sorted order.
pub fn canonical_graph(g: &ModularGraph, c: &Canonical) -> ModularGraph {
    let mut h = g.permuted(&c.perm);
    for p in h.s.iter_mut() {
        *p = norm_pair(*p);
    }
    h.s.sort_unstable();
    for v in h.a.iter_mut() {
        v.marks.sort_unstable();
    }
    h
}

/// Compact byte form of a code.
pub fn code_bytes(code: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(code.len());
    for &c in code {
        if c < 0xff {
            out.push(c as u8);
        } else {
            out.push(0xff);
            out.extend(c.to_be_bytes());
        }
    }
    out
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AVertex;
    use series_core::MultiIndex;

    fn v0(t: u16) -> AVertex {
        AVertex::new(0, MultiIndex::from_slice(&[t]))
    }

    #[test]
    fn small_automorphism_groups() {
        let loop1 = ModularGraph::new(1, vec![v0(0)], vec![[(0, 0), (0, 0)]]).unwrap();
        assert_eq!(canonicalize(&loop1).aut, BigUint::from(2u32));
        let theta =
            ModularGraph::new(1, vec![v0(0), v0(0)], vec![[(0, 0), (1, 0)], [(0, 0), (1, 0)], [(0, 0), (1, 0)]]).unwrap();
        assert_eq!(canonicalize(&theta).aut, BigUint::from(12u32));
        let dumbbell =
            ModularGraph::new(1, vec![v0(0), v0(0)], vec![[(0, 0), (0, 0)], [(1, 0), (1, 0)], [(0, 0), (1, 0)]]).unwrap();
        assert_eq!(canonicalize(&dumbbell).aut, BigUint::from(8u32));
        let tails = ModularGraph::new(2, vec![AVertex::new(3, MultiIndex::from_slice(&[2, 1]))], vec![]).unwrap();
        assert_eq!(canonicalize(&tails).aut, BigUint::from(2u32));
    }

    #[test]
    fn relabeling_invariance() {
        let g = ModularGraph::new(
            1,
            vec![v0(1), v0(0), v0(2)],
            vec![[(0, 0), (1, 0)], [(1, 0), (2, 0)], [(2, 0), (0, 0)], [(1, 0), (1, 0)]],
        )
        .unwrap();
        let c = canonicalize(&g);
        let h = g.permuted(&[2, 0, 1]);
        assert_eq!(canonicalize(&h).code, c.code);
        assert_eq!(canonicalize(&canonical_graph(&g, &c)).code, c.code);
    }
}

//! Bipartite colored modular graphs.
//!
//! Only a-vertices are stored as nodes. An s-vertex is two-valent and has no
//! tails, so it is recorded as its pair of edge slots `(a-vertex, color)`.

use series_core::{Monomial, MultiIndex, Symbol};

/// One end of an s-vertex: the a-vertex it attaches to and the edge color.
pub type Slot = (usize, u8);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AVertex {
    pub genus: u16,
    /// Unmarked tails by color.
    pub tails: MultiIndex,
    /// Marked tails as `(label, color)`, sorted. Labels are distinguishable,
    /// so automorphisms fix them.
    pub marks: Vec<(u8, u8)>,
}

impl AVertex {
    pub fn new(genus: u16, tails: MultiIndex) -> Self {
        AVertex { genus, tails, marks: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularGraph {
    pub r: usize,
    pub a: Vec<AVertex>,
    pub s: Vec<[Slot; 2]>,
}

impl ModularGraph {
    pub fn new(r: usize, a: Vec<AVertex>, s: Vec<[Slot; 2]>) -> Result<Self, String> {
        let g = ModularGraph { r, a, s };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), String> {
        for (i, v) in self.a.iter().enumerate() {
            if v.tails.r() != self.r {
                return Err(format!("a-vertex {i} has tails over {} colors, expected {}", v.tails.r(), self.r));
            }
            if v.marks.iter().any(|&(_, c)| c as usize >= self.r) {
                return Err(format!("a-vertex {i} has a marked tail of invalid color"));
            }
        }
        for (w, slots) in self.s.iter().enumerate() {
            for &(v, c) in slots {
                if v >= self.a.len() || c as usize >= self.r {
                    return Err(format!("s-vertex {w} has an invalid slot ({v}, {c})"));
                }
            }
        }
        let mut labels: Vec<u8> = self.a.iter().flat_map(|v| v.marks.iter().map(|m| m.0)).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err("duplicate mark label".into());
        }
        Ok(())
    }

    pub fn n_a(&self) -> usize {
        self.a.len()
    }

    pub fn n_s(&self) -> usize {
        self.s.len()
    }

    /// Per-color valence of an a-vertex: tails, marks and incident edges.
    pub fn valence(&self, v: usize) -> MultiIndex {
        let mut n = self.a[v].tails.clone();
        for &(_, c) in &self.a[v].marks {
            n = n.add_color(c as usize);
        }
        for slots in &self.s {
            for &(u, c) in slots {
                if u == v {
                    n = n.add_color(c as usize);
                }
            }
        }
        n
    }

    /// Number of s-vertex slots at `v`.
    pub fn edge_degree(&self, v: usize) -> usize {
        self.s.iter().flat_map(|sl| sl.iter()).filter(|&&(u, _)| u == v).count()
    }

    /// Unmarked tails of the whole graph, `N(Γ)`.
    pub fn tails(&self) -> MultiIndex {
        let mut n = MultiIndex::zero(self.r);
        for v in &self.a {
            n = n.plus(&v.tails);
        }
        n
    }

    pub fn n_marks(&self) -> usize {
        self.a.iter().map(|v| v.marks.len()).sum()
    }

    /// Connected components of a-vertices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.a.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for [(u, _), (v, _)] in &self.s {
            let (a, b) = (find(&mut parent, *u), find(&mut parent, *v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if root_of[r] == usize::MAX {
                root_of[r] = out.len();
                out.push(Vec::new());
            }
            out[root_of[r]].push(v);
        }
        out
    }

    pub fn b0(&self) -> usize {
        self.components().len()
    }

    /// First Betti number. Each s-vertex is a vertex with two edges.
    pub fn b1(&self) -> i64 {
        let e = 2 * self.s.len() as i64;
        let v = (self.a.len() + self.s.len()) as i64;
        e - v + self.b0() as i64
    }

    /// `Σ g(v) + b1 − b0 + 1`; for connected graphs `Σ g(v) + b1`.
    pub fn genus(&self) -> i64 {
        let vg: i64 = self.a.iter().map(|v| v.genus as i64).sum();
        vg + self.b1() - self.b0() as i64 + 1
    }

    pub fn is_connected(&self) -> bool {
        self.b0() <= 1
    }

    /// `μ(Γ)`: `a_{g(v),N(v)}` over a-vertices times `s_ij` over s-vertices.
    pub fn mu(&self) -> Monomial {
        let mut f: Vec<(Symbol, i32)> = Vec::new();
        for v in 0..self.a.len() {
            f.push((Symbol::a(self.a[v].genus, self.valence(v)), 1));
        }
        for [(_, c1), (_, c2)] in &self.s {
            f.push((Symbol::s(*c1 as usize, *c2 as usize), 1));
        }
        Monomial::from_factors(f)
    }

    /// Disjoint union.
    pub fn union(&self, other: &ModularGraph) -> ModularGraph {
        let off = self.a.len();
        let mut a = self.a.clone();
        a.extend(other.a.iter().cloned());
        let mut s = self.s.clone();
        s.extend(other.s.iter().map(|[(u, c), (v, d)]| [(u + off, *c), (v + off, *d)]));
        ModularGraph { r: self.r, a, s }
    }

    /// Relabels a-vertices by `perm` (old index → new index).
    pub fn permuted(&self, perm: &[usize]) -> ModularGraph {
        let mut slots: Vec<Option<AVertex>> = vec![None; self.a.len()];
        for (old, v) in self.a.iter().enumerate() {
            slots[perm[old]] = Some(v.clone());
        }
        let a = slots.into_iter().map(|v| v.expect("perm is a bijection")).collect();
        let s = self.s.iter().map(|[(u, c), (v, d)]| [(perm[*u], *c), (perm[*v], *d)]).collect();
        ModularGraph { r: self.r, a, s }
    }
}

/// Normalized slot pair: smaller slot first.
pub fn norm_pair(p: [Slot; 2]) -> [Slot; 2] {
    if p[0] <= p[1] {
        p
    } else {
        [p[1], p[0]]
    }
}

impl std::fmt::Display for ModularGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verts: Vec<String> = self
            .a
            .iter()
            .map(|v| {
                let mut s = format!("g{}[{}]", v.genus, v.tails);
                for (l, c) in &v.marks {
                    s.push_str(&format!("*{}:{}", l, c + 1));
                }
                s
            })
            .collect();
        let edges: Vec<String> =
            self.s.iter().map(|[(u, c), (v, d)]| format!("{}.{}-{}.{}", u, c + 1, v, d + 1)).collect();
        write!(f, "{} | {}", verts.join(" "), edges.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u16]) -> MultiIndex {
        MultiIndex::from_slice(v)
    }

    #[test]
    fn genus_and_mu() {
        // one a-vertex with a loop through one s-vertex
        let g = ModularGraph::new(1, vec![AVertex::new(0, mi(&[0]))], vec![[(0, 0), (0, 0)]]).unwrap();
        assert_eq!(g.genus(), 1);
        assert_eq!(g.mu().to_string(), "s11*a[0;2]");
        // two disjoint trees: genus -1
        let t = ModularGraph::new(1, vec![AVertex::new(0, mi(&[1]))], vec![]).unwrap();
        assert_eq!(t.union(&t).genus(), -1);
        assert_eq!(g.union(&t).genus(), 0);
    }
}

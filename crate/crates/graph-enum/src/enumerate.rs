//! Enumeration of isomorphism classes.
//!
//! Connected classes are built in two passes. Undecorated skeletons (a-vertex
//! multigraphs whose edges are s-vertices with colored ends) are generated by
//! adding one s-vertex at a time and deduplicating after each step. Each
//! connected skeleton is then decorated with vertex genera, tails and marks,
//! and deduplicated again. Disconnected classes are multisets of connected
//! ones.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;

use series_core::{par, Monomial, MultiIndex};

use crate::canon::{canonical_graph, canonicalize, code_bytes};
use crate::graph::{AVertex, ModularGraph, Slot};
use crate::GraphError;

pub const DEFAULT_MAX_CLASSES: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexRule {
    Any,
    /// Genus-0 vertices at least trivalent, genus-1 vertices at least univalent.
    Stable,
    /// Genus 0 and valence at least 1.
    Combinatorial,
    /// Genus 0 and valence at least 3.
    CombStable,
}

/// Which weights `a_{g,N}` may label an a-vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexFilter {
    pub max_genus: u16,
    pub max_valence: Option<u32>,
    pub rule: VertexRule,
    pub exclude: Vec<(u16, MultiIndex)>,
}

impl VertexFilter {
    pub fn any(max_genus: u16) -> Self {
        VertexFilter { max_genus, max_valence: None, rule: VertexRule::Any, exclude: Vec::new() }
    }

    pub fn with_rule(max_genus: u16, rule: VertexRule) -> Self {
        VertexFilter { max_genus, max_valence: None, rule, exclude: Vec::new() }
    }

    /// Drops every `a_{g,0}`.
    pub fn without_constants(mut self, r: usize) -> Self {
        for g in 0..=self.max_genus {
            self.exclude.push((g, MultiIndex::zero(r)));
        }
        self
    }

    fn rule_admits(&self, g: u16, total: u32) -> bool {
        if g > self.max_genus || self.max_valence.is_some_and(|m| total > m) {
            return false;
        }
        match self.rule {
            VertexRule::Any => true,
            VertexRule::Stable => match g {
                0 => total >= 3,
                1 => total >= 1,
                _ => true,
            },
            VertexRule::Combinatorial => g == 0 && total >= 1,
            VertexRule::CombStable => g == 0 && total >= 3,
        }
    }

    /// Largest number of a-vertices in a connected graph of genus at most
    /// `genus` with `legs` tails and marks. Every stable vertex has
    /// `2g(v) - 2 + n(v) >= 1` and these sum to `2g - 2 + legs`.
    pub fn max_vertices(&self, genus: i64, legs: u32) -> Option<usize> {
        match self.rule {
            VertexRule::Stable | VertexRule::CombStable => Some((2 * genus - 2 + legs as i64).max(0) as usize),
            VertexRule::Any | VertexRule::Combinatorial => None,
        }
    }

    pub fn admits(&self, g: u16, n: &MultiIndex) -> bool {
        self.rule_admits(g, n.total()) && !self.exclude.iter().any(|(eg, en)| *eg == g && en == n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_s: u32,
    /// Total number of unmarked tails.
    pub max_tails: u32,
    /// Bound on the genus `Σ g(v) + b1 − b0 + 1`; `None` enumerates every genus
    /// the vertex filter allows.
    pub max_genus: Option<i64>,
    pub connected_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub r: usize,
    pub bounds: Bounds,
    pub vertices: VertexFilter,
    /// Colors of the ordered marked tails; mark `k` has label `k`.
    pub marks: Vec<u8>,
    pub max_classes: usize,
}

impl EnumSpec {
    pub fn new(r: usize, bounds: Bounds, vertices: VertexFilter) -> Self {
        EnumSpec { r, bounds, vertices, marks: Vec::new(), max_classes: DEFAULT_MAX_CLASSES }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    /// Canonical representative.
    pub graph: ModularGraph,
    pub canonical_form: Vec<u8>,
    pub aut_order: BigUint,
    pub mu: Monomial,
    pub genus: i64,
    pub tails: MultiIndex,
}

impl GraphClass {
    pub fn n_s(&self) -> usize {
        self.graph.n_s()
    }

    fn sort_key(&self) -> (usize, u32, i64, &[u8]) {
        (self.n_s(), self.tails.total(), self.genus, &self.canonical_form)
    }
}

/// The classes produced by one enumeration, together with its request.
#[derive(Clone, Debug)]
pub struct GraphSet {
    pub spec: EnumSpec,
    pub classes: Vec<GraphClass>,
}

const UNION_TAG: u32 = u32::MAX;

/// Canonical code and automorphism order. Disconnected graphs are encoded as
/// the sorted list of their component codes.
pub fn classify(g: &ModularGraph) -> (Vec<u32>, BigUint, ModularGraph) {
    let comps = g.components();
    if comps.len() <= 1 {
        let c = canonicalize(g);
        let rep = canonical_graph(g, &c);
        return (c.code, c.aut, rep);
    }
    let parts: Vec<ModularGraph> = comps.iter().map(|vs| induced(g, vs)).collect();
    let mut coded: Vec<(Vec<u32>, BigUint, ModularGraph)> = parts.iter().map(classify).collect();
    coded.sort_by(|a, b| a.0.cmp(&b.0));
    union_of(&coded.iter().map(|(c, a, r)| (c.as_slice(), a, r)).collect::<Vec<_>>())
}

fn union_of(parts: &[(&[u32], &BigUint, &ModularGraph)]) -> (Vec<u32>, BigUint, ModularGraph) {
    let mut code = vec![UNION_TAG, parts.len() as u32];
    let mut aut = BigUint::from(1u32);
    let mut rep = ModularGraph { r: parts[0].2.r, a: vec![], s: vec![] };
    let mut run = 0u64;
    for (k, (c, a, g)) in parts.iter().enumerate() {
        code.push(c.len() as u32);
        code.extend(c.iter());
        aut *= *a;
        run = if k > 0 && parts[k - 1].0 == *c { run + 1 } else { 1 };
        aut *= BigUint::from(run);
        rep = rep.union(g);
    }
    (code, aut, rep)
}

fn induced(g: &ModularGraph, vs: &[usize]) -> ModularGraph {
    let mut idx = vec![usize::MAX; g.n_a()];
    for (k, &v) in vs.iter().enumerate() {
        idx[v] = k;
    }
    let a = vs.iter().map(|&v| g.a[v].clone()).collect();
    let s = g
        .s
        .iter()
        .filter(|[(u, _), _]| idx[*u] != usize::MAX)
        .map(|[(u, c), (w, d)]| [(idx[*u], *c), (idx[*w], *d)])
        .collect();
    ModularGraph { r: g.r, a, s }
}

fn make_class(g: &ModularGraph) -> GraphClass {
    let (code, aut, rep) = classify(g);
    GraphClass {
        canonical_form: code_bytes(&code),
        aut_order: aut,
        mu: rep.mu(),
        genus: rep.genus(),
        tails: rep.tails(),
        graph: rep,
    }
}

fn all_slots(r: usize, n_a: usize) -> Vec<Slot> {
    (0..n_a).flat_map(|v| (0..r as u8).map(move |c| (v, c))).collect()
}

/// Connected skeletons with `n_a` a-vertices, grouped by s-vertex count up to `max_s`.
fn skeletons(r: usize, n_a: usize, max_s: usize) -> Vec<Vec<ModularGraph>> {
    let blank = ModularGraph { r, a: vec![AVertex::new(0, MultiIndex::zero(r)); n_a], s: vec![] };
    let slots = all_slots(r, n_a);
    let mut pairs = Vec::new();
    for (i, &p) in slots.iter().enumerate() {
        for &q in &slots[i..] {
            pairs.push([p, q]);
        }
    }
    let mut out = Vec::with_capacity(max_s + 1);
    let mut level = vec![blank];
    for k in 0..=max_s {
        out.push(level.iter().filter(|g| g.is_connected()).cloned().collect());
        if k == max_s {
            break;
        }
        let remaining = max_s - k - 1;
        let grown = par::map(&level, |g| {
            let mut local: Vec<(Vec<u32>, ModularGraph)> = Vec::new();
            for p in &pairs {
                let mut h = g.clone();
                h.s.push(*p);
                if h.b0() > remaining + 1 {
                    continue;
                }
                let c = canonicalize(&h);
                local.push((c.code.clone(), canonical_graph(&h, &c)));
            }
            local
        });
        let mut next: BTreeMap<Vec<u32>, ModularGraph> = BTreeMap::new();
        for part in grown {
            for (code, h) in part {
                next.entry(code).or_insert(h);
            }
        }
        level = next.into_values().collect();
    }
    out
}

struct Decorator<'a> {
    spec: &'a EnumSpec,
    skeleton: &'a ModularGraph,
    /// Valence from edges and marks, per vertex.
    base: Vec<MultiIndex>,
    genus_budget: i64,
    tail_choices: Vec<MultiIndex>,
}

impl Decorator<'_> {
    fn run(&self, v: usize, genus_used: i64, tails_used: u32, acc: &mut Vec<(u16, MultiIndex)>, out: &mut dyn FnMut(&[(u16, MultiIndex)])) {
        let n = self.skeleton.n_a();
        if v == n {
            out(acc);
            return;
        }
        let f = &self.spec.vertices;
        let room = self.spec.bounds.max_tails - tails_used;
        for g in 0..=f.max_genus {
            if genus_used + g as i64 > self.genus_budget {
                break;
            }
            for t in &self.tail_choices {
                if t.total() > room {
                    continue;
                }
                if !f.admits(g, &self.base[v].plus(t)) {
                    continue;
                }
                acc.push((g, t.clone()));
                self.run(v + 1, genus_used + g as i64, tails_used + t.total(), acc, out);
                acc.pop();
            }
        }
    }
}

fn mark_assignments(n_a: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|a| (0..n_a).map(move |v| [a.clone(), vec![v]].concat())).collect();
    }
    out
}

fn decorate(spec: &EnumSpec, skel: &ModularGraph, genus_cap: Option<i64>) -> Vec<GraphClass> {
    let r = spec.r;
    let b1 = skel.b1();
    let genus_budget = genus_cap.map_or(i64::MAX, |c| c - b1);
    if genus_budget < 0 {
        return Vec::new();
    }
    let tail_choices = MultiIndex::all_up_to(r, spec.bounds.max_tails);
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut out = Vec::new();
    for assign in mark_assignments(skel.n_a(), spec.marks.len()) {
        let mut marked = skel.clone();
        for (label, (&v, &c)) in assign.iter().zip(&spec.marks).enumerate() {
            marked.a[v].marks.push((label as u8, c));
        }
        for v in marked.a.iter_mut() {
            v.marks.sort_unstable();
        }
        let base: Vec<MultiIndex> = (0..marked.n_a()).map(|v| marked.valence(v)).collect();
        let d = Decorator { spec, skeleton: &marked, base, genus_budget, tail_choices: tail_choices.clone() };
        let mut acc = Vec::new();
        d.run(0, 0, 0, &mut acc, &mut |choice| {
            let mut g = marked.clone();
            for (v, (genus, t)) in choice.iter().enumerate() {
                g.a[v].genus = *genus;
                g.a[v].tails = t.clone();
            }
            let class = make_class(&g);
            if seen.insert(class.canonical_form.clone()) {
                out.push(class);
            }
        });
    }
    out
}

fn connected_classes(spec: &EnumSpec, genus_cap: Option<i64>) -> Result<Vec<GraphClass>, GraphError> {
    let r = spec.r;
    let max_s = spec.bounds.max_s as usize;
    let legs = spec.bounds.max_tails + spec.marks.len() as u32;
    let max_a = genus_cap.and_then(|c| spec.vertices.max_vertices(c, legs)).map_or(max_s + 1, |m| m.min(max_s + 1));
    let mut skels: Vec<ModularGraph> = Vec::new();
    for n_a in 1..=max_a {
        // b1 = k - n_a + 1 cannot exceed the genus cap
        let top = genus_cap.map_or(max_s, |c| max_s.min((c + n_a as i64 - 1).max(0) as usize));
        for (k, level) in skeletons(r, n_a, top).into_iter().enumerate() {
            if n_a > k + 1 {
                continue;
            }
            skels.extend(level);
        }
    }
    let parts = par::map(&skels, |s| decorate(spec, s, genus_cap));
    let mut out = Vec::new();
    for p in parts {
        out.extend(p);
        if out.len() > spec.max_classes {
            return Err(GraphError::TooMany(spec.max_classes));
        }
    }
    Ok(out)
}

fn degree(c: &GraphClass) -> u32 {
    c.tails.total() + c.n_s() as u32
}

/// Every isomorphism class within the request, in a deterministic order.
pub fn enumerate_graphs(spec: &EnumSpec) -> Result<GraphSet, GraphError> {
    if spec.r == 0 {
        return Err(GraphError::Invalid("r must be at least 1".into()));
    }
    if spec.marks.iter().any(|&c| c as usize >= spec.r) {
        return Err(GraphError::Invalid("mark color out of range".into()));
    }
    let b = &spec.bounds;
    let mut classes = if b.connected_only {
        connected_classes(spec, b.max_genus)?
    } else {
        if !spec.marks.is_empty() {
            return Err(GraphError::Invalid("marked tails are supported for connected classes only".into()));
        }
        let budget = (b.max_tails + b.max_s) as i64;
        let comps = connected_classes(spec, b.max_genus.map(|g| g + budget))?;
        if let Some(c) = comps.iter().find(|c| degree(c) == 0) {
            return Err(GraphError::Invalid(format!(
                "component {} has no tails and no s-vertices; unions of it do not terminate",
                c.mu
            )));
        }
        multisets(spec, comps)?
    };
    classes.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
    if classes.len() > spec.max_classes {
        return Err(GraphError::TooMany(spec.max_classes));
    }
    Ok(GraphSet { spec: spec.clone(), classes })
}

struct Multisets<'a> {
    comps: &'a [GraphClass],
    codes: Vec<Vec<u32>>,
    b: &'a Bounds,
    r: usize,
}

impl Multisets<'_> {
    fn run(&self, start: usize, chosen: &mut Vec<usize>, tails: u32, s: u32, e: i64, out: &mut Vec<GraphClass>, cap: usize) -> Result<(), GraphError> {
        let b = self.b;
        let room = (b.max_tails - tails + b.max_s - s) as i64;
        if b.max_genus.is_none_or(|g| e <= g - 1) {
            out.push(self.assemble(chosen));
            if out.len() > cap {
                return Err(GraphError::TooMany(cap));
            }
        }
        for k in start..self.comps.len() {
            let c = &self.comps[k];
            let (t2, s2) = (tails + c.tails.total(), s + c.n_s() as u32);
            if t2 > b.max_tails || s2 > b.max_s {
                continue;
            }
            let e2 = e + c.genus - 1;
            let room2 = room - degree(c) as i64;
            if b.max_genus.is_some_and(|g| e2 - room2 > g - 1) {
                continue;
            }
            chosen.push(k);
            self.run(k, chosen, t2, s2, e2, out, cap)?;
            chosen.pop();
        }
        Ok(())
    }

    fn assemble(&self, chosen: &[usize]) -> GraphClass {
        if chosen.is_empty() {
            let g = ModularGraph { r: self.r, a: vec![], s: vec![] };
            return make_class(&g);
        }
        if chosen.len() == 1 {
            return self.comps[chosen[0]].clone();
        }
        let mut parts: Vec<usize> = chosen.to_vec();
        parts.sort_by(|x, y| self.codes[*x].cmp(&self.codes[*y]));
        let view: Vec<(&[u32], &BigUint, &ModularGraph)> =
            parts.iter().map(|&k| (self.codes[k].as_slice(), &self.comps[k].aut_order, &self.comps[k].graph)).collect();
        let (code, aut, rep) = union_of(&view);
        GraphClass {
            canonical_form: code_bytes(&code),
            aut_order: aut,
            mu: rep.mu(),
            genus: rep.genus(),
            tails: rep.tails(),
            graph: rep,
        }
    }
}

fn multisets(spec: &EnumSpec, comps: Vec<GraphClass>) -> Result<Vec<GraphClass>, GraphError> {
    let codes = comps.iter().map(|c| canonicalize(&c.graph).code).collect();
    let m = Multisets { comps: &comps, codes, b: &spec.bounds, r: spec.r };
    let mut out = Vec::new();
    m.run(0, &mut Vec::new(), 0, 0, 0, &mut out, spec.max_classes)?;
    Ok(out)
}

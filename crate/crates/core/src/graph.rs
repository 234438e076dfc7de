//! The graph of hatted words attached to a braid `X = U·δ^(-p)`, `p ≥ 0`.
//!
//! A vertex of weight `j` is a hatted word `W` with `prime(W) = δ^(p+j)` and
//! `bar(W)·δ^(-(p+j)) = X`. Weight-0 vertices are read letter-for-letter off
//! `U`. Horizontal edges (h1, h2, h3) keep the weight; vertical edges
//! (v1, v2, v3) lower it by one. Two factorizations `[W]`, `[V]` with
//! `W, V` of weight 0 are Hurwitz equivalent exactly when `W` and `V` lie in
//! one component of the weight-0 graph, whose only edges are h1 and h2.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::braid::{is_delta_pair, relation_closure, Atom, BraidElement, PlainWord};
use crate::error::{Error, Result};
use crate::hatted::{matches_unchecked, HattedLetter, HattedWord};
use crate::hurwitz::{factorization_to_vertex, validate_against, Factorization, Invalid};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Vertex {
    pub word: HattedWord,
    pub weight: u64,
}

impl Vertex {
    /// Checks that `word` is a vertex of the graph of `x` and computes its
    /// weight.
    pub fn new(word: HattedWord, x: &BraidElement) -> Result<Vertex> {
        if x.p() < 0 {
            return Err(Error::NegativeExponent(x.p()));
        }
        Vertex::over(word, x)
    }

    /// As [`Vertex::new`] without the `p ≥ 0` requirement; the weight is
    /// still `n − p` for `prime(word) = δ^n`.
    pub(crate) fn over(word: HattedWord, x: &BraidElement) -> Result<Vertex> {
        let not_vertex = || Error::NotAVertex(x.clone());
        let n = word.prime_delta_exponent().ok_or_else(not_vertex)? as i64;
        if n < x.p() {
            return Err(not_vertex());
        }
        let value = word.bar().value().mul(&BraidElement::delta_power(-n));
        if &value != x {
            return Err(not_vertex());
        }
        Ok(Vertex { weight: (n - x.p()) as u64, word })
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    H1,
    H2,
    H3,
    V1,
    V2,
    V3,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::H1 => "h1",
            EdgeKind::H2 => "h2",
            EdgeKind::H3 => "h3",
            EdgeKind::V1 => "v1",
            EdgeKind::V2 => "v2",
            EdgeKind::V3 => "v3",
        }
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, EdgeKind::H1 | EdgeKind::H2 | EdgeKind::H3)
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Positions (0-based, in the `from` word) that certify an edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    /// h1/h2: the hat moves between `left` and `right`.
    Swap { left: usize, right: usize },
    /// h3: the hatted segment `start..end` is rewritten.
    Run { start: usize, end: usize },
    /// v1: the plain δ-pair at `at, at+1` is contracted.
    Contract { at: usize },
    /// v2: the pair at `p_at, p_at+1` is contracted and `y_at` gets a hat.
    Match { p_at: usize, y_at: usize },
    /// v3: an h3 step to `via`, then a v2 step from `via`.
    Composite { via: HattedWord, p_at: usize, y_at: usize },
}

/// An edge; vertical edges run from the heavier endpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub kind: EdgeKind,
    pub witness: Witness,
}

impl Edge {
    /// Re-derives the edge from its witness.
    pub fn verify(&self) -> bool {
        let (a, b) = (&self.from.word, &self.to.word);
        let weights_ok = if self.kind.is_horizontal() {
            self.from.weight == self.to.weight
        } else {
            self.from.weight == self.to.weight + 1
        };
        weights_ok
            && match (&self.kind, &self.witness) {
                (EdgeKind::H1 | EdgeKind::H2, Witness::Swap { .. }) => edge_h12(a, b) == Some(self.kind),
                (EdgeKind::H3, Witness::Run { start, end }) => {
                    edge_h3(a, b) && (*start..*end).all(|k| a[k].hatted && b[k].hatted)
                }
                (EdgeKind::V1, Witness::Contract { at }) => contract_v1(a, *at).as_ref() == Some(b),
                (EdgeKind::V2, Witness::Match { p_at, y_at }) => contract_v2(a, *p_at, *y_at).as_ref() == Some(b),
                (EdgeKind::V3, Witness::Composite { via, p_at, y_at }) => {
                    edge_h3(a, via) && contract_v2(via, *p_at, *y_at).as_ref() == Some(b)
                }
                _ => false,
            }
    }
}

fn atoms_value(letters: &[HattedLetter], plain_only: bool) -> BraidElement {
    let w: Vec<Atom> = letters.iter().filter(|l| !(plain_only && l.hatted)).map(|l| l.atom).collect();
    BraidElement::from_positive(&w)
}

/// Type of the h1/h2 edge between `a` and `b`, if any.
///
/// The words must be `A·x̂·B·y·C` and `A·x·B·ŷ·C` (in either order) with
/// `x·B′ = B′·y`; the edge is h1 when `B′ = δ^q` and h2 when `x·B′ = δ^q`.
/// The two side conditions are exclusive since `x·B′` and `B′` differ in
/// band length by one.
pub fn edge_h12(a: &HattedWord, b: &HattedWord) -> Option<EdgeKind> {
    if a.len() != b.len() {
        return None;
    }
    let mut diffs = (0..a.len()).filter(|&k| a[k] != b[k]);
    let (i, j) = (diffs.next()?, diffs.next()?);
    if diffs.next().is_some() || a[i].atom != b[i].atom || a[j].atom != b[j].atom {
        return None;
    }
    let w = match (a[i].hatted, a[j].hatted) {
        (true, false) => a,
        (false, true) => b,
        _ => return None,
    };
    classify_swap(w, i, j)
}

/// `w` carries the hat at `i` and a plain letter at `j > i`.
fn classify_swap(w: &HattedWord, i: usize, j: usize) -> Option<EdgeKind> {
    let (x, y) = (w[i].atom, w[j].atom);
    let between: Vec<Atom> = w[i + 1..j].iter().filter(|l| !l.hatted).map(|l| l.atom).collect();
    let mut xb = Vec::with_capacity(between.len() + 1);
    xb.push(x);
    xb.extend_from_slice(&between);
    let mut by = between.clone();
    by.push(y);
    let xb = BraidElement::from_positive(&xb);
    if xb != BraidElement::from_positive(&by) {
        return None;
    }
    if BraidElement::from_positive(&between).delta_exponent().is_some() {
        Some(EdgeKind::H1)
    } else if xb.delta_exponent().is_some() {
        Some(EdgeKind::H2)
    } else {
        None
    }
}

fn swap_hats(w: &HattedWord, i: usize, j: usize) -> HattedWord {
    let mut letters = w.letters().to_vec();
    letters[i].hatted = !letters[i].hatted;
    letters[j].hatted = !letters[j].hatted;
    HattedWord::new(letters)
}

/// All h1/h2 neighbours of `w`.
pub fn neighbors_h12(w: &HattedWord) -> Vec<(HattedWord, EdgeKind, Witness)> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let kind = match (w[i].hatted, w[j].hatted) {
                (true, false) => classify_swap(w, i, j),
                (false, true) => classify_swap(&swap_hats(w, i, j), i, j),
                _ => None,
            };
            if let Some(kind) = kind {
                out.push((swap_hats(w, i, j), kind, Witness::Swap { left: i, right: j }));
            }
        }
    }
    out
}

/// Whether `a` and `b` differ only inside a fully hatted segment whose
/// contents are equal braids.
pub fn edge_h3(a: &HattedWord, b: &HattedWord) -> bool {
    if a.len() != b.len() || a == b {
        return false;
    }
    let first = (0..a.len()).find(|&k| a[k] != b[k]).unwrap();
    let last = (0..a.len()).rfind(|&k| a[k] != b[k]).unwrap();
    let seg = first..last + 1;
    seg.clone().all(|k| a[k].hatted && b[k].hatted)
        && atoms_value(&a[seg.clone()], false) == atoms_value(&b[seg], false)
}

fn hatted_runs(w: &HattedWord) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut k = 0;
    while k < w.len() {
        if w[k].hatted {
            let start = k;
            while k < w.len() && w[k].hatted {
                k += 1;
            }
            runs.push((start, k));
        } else {
            k += 1;
        }
    }
    runs
}

/// All h3 neighbours of `w`: each maximal hatted run replaced by every other
/// positive word equal to it. Any h3 edge rewrites a sub-segment of one
/// maximal run, which is the same as rewriting the whole run.
pub fn neighbors_h3(w: &HattedWord) -> Vec<(HattedWord, Witness)> {
    let mut out = Vec::new();
    for (start, end) in hatted_runs(w) {
        let content: PlainWord = w[start..end].iter().map(|l| l.atom).collect();
        if !(start + 1..end).any(|k| is_delta_pair(w[k - 1].atom, w[k].atom)) {
            // a run without a δ-pair admits no relation move
            continue;
        }
        for other in relation_closure(content.clone()) {
            if other == content {
                continue;
            }
            let mut letters = w.letters().to_vec();
            for (k, &a) in other.iter().enumerate() {
                letters[start + k] = HattedLetter::hatted(a);
            }
            out.push((HattedWord::new(letters), Witness::Run { start, end }));
        }
    }
    out
}

/// `A·P·B ↦ A·τ⁻¹(B)` for the plain δ-pair `P` at `at`.
pub(crate) fn contract_v1(w: &HattedWord, at: usize) -> Option<HattedWord> {
    if at + 1 >= w.len() {
        return None;
    }
    let (x, y) = (w[at], w[at + 1]);
    if x.hatted || y.hatted || !is_delta_pair(x.atom, y.atom) {
        return None;
    }
    Some(w[..at].iter().copied().chain(w[at + 2..].iter().map(|l| l.tau(-1))).collect())
}

/// The v2 contraction: `P = u·x̂` or `x̂·u` at `p_at` with `bar(P) = δ`,
/// and `y_at` a plain letter matching `u`. `P` is removed, `y` is hatted
/// and `τ⁻¹` is applied to everything after `P`.
pub(crate) fn contract_v2(w: &HattedWord, p_at: usize, y_at: usize) -> Option<HattedWord> {
    if p_at + 1 >= w.len() || y_at >= w.len() || y_at == p_at || y_at == p_at + 1 {
        return None;
    }
    let (l0, l1) = (w[p_at], w[p_at + 1]);
    if l0.hatted == l1.hatted || !is_delta_pair(l0.atom, l1.atom) || w[y_at].hatted {
        return None;
    }
    let u = if l0.hatted { p_at + 1 } else { p_at };
    let (lo, hi) = if y_at < u { (y_at, u) } else { (u, y_at) };
    matches_unchecked(w, lo, hi)?;
    let mut letters = Vec::with_capacity(w.len() - 2);
    for (k, l) in w.iter().enumerate() {
        let l = if k == y_at { HattedLetter::hatted(l.atom) } else { *l };
        if k < p_at {
            letters.push(l);
        } else if k > p_at + 1 {
            letters.push(l.tau(-1));
        }
    }
    Some(HattedWord::new(letters))
}

fn v1_moves(w: &HattedWord) -> impl Iterator<Item = (HattedWord, Witness)> + '_ {
    (0..w.len().saturating_sub(1)).filter_map(|at| contract_v1(w, at).map(|v| (v, Witness::Contract { at })))
}

/// Requires `prime(w) = δ^n` with `n > 0`.
fn v2_moves(w: &HattedWord) -> Vec<(HattedWord, Witness)> {
    let mut out = Vec::new();
    for p_at in 0..w.len().saturating_sub(1) {
        let (l0, l1) = (w[p_at], w[p_at + 1]);
        if l0.hatted == l1.hatted || !is_delta_pair(l0.atom, l1.atom) {
            continue;
        }
        for y_at in 0..w.len() {
            if let Some(v) = contract_v2(w, p_at, y_at) {
                out.push((v, Witness::Match { p_at, y_at }));
            }
        }
    }
    out
}

/// Lower-weight neighbours of a word with `prime = δ^n`, `n ≥ 1`, each word
/// reported once with the first kind that produces it (v1, then v2, then v3).
pub fn vertical_moves(w: &HattedWord) -> Vec<(HattedWord, EdgeKind, Witness)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (v, wit) in v1_moves(w) {
        if seen.insert(v.clone()) {
            out.push((v, EdgeKind::V1, wit));
        }
    }
    for (v, wit) in v2_moves(w) {
        if seen.insert(v.clone()) {
            out.push((v, EdgeKind::V2, wit));
        }
    }
    for (via, _) in neighbors_h3(w) {
        for (v, wit) in v2_moves(&via) {
            let Witness::Match { p_at, y_at } = wit else { unreachable!() };
            if seen.insert(v.clone()) {
                out.push((v, EdgeKind::V3, Witness::Composite { via: via.clone(), p_at, y_at }));
            }
        }
    }
    out
}

/// Every horizontal edge leaving `a`.
pub fn horizontal_edges(a: &Vertex) -> Vec<Edge> {
    let mk = |word, kind, witness| Edge { from: a.clone(), to: Vertex { word, weight: a.weight }, kind, witness };
    let mut out: Vec<Edge> = neighbors_h12(&a.word).into_iter().map(|(w, k, wit)| mk(w, k, wit)).collect();
    out.extend(neighbors_h3(&a.word).into_iter().map(|(w, wit)| mk(w, EdgeKind::H3, wit)));
    out
}

/// All vertical edges leaving `a`, which must have weight at least one.
pub fn vertical_edges(a: &Vertex) -> Result<Vec<Edge>> {
    if a.weight == 0 {
        return Err(Error::WeightZero);
    }
    Ok(vertical_moves(&a.word)
        .into_iter()
        .map(|(word, kind, witness)| Edge { from: a.clone(), to: Vertex { word, weight: a.weight - 1 }, kind, witness })
        .collect())
}

pub fn neighbors_v(a: &Vertex) -> Result<Vec<(Vertex, EdgeKind)>> {
    Ok(vertical_edges(a)?.into_iter().map(|e| (e.to, e.kind)).collect())
}

fn require_nonnegative(x: &BraidElement) -> Result<u64> {
    if x.p() < 0 {
        Err(Error::NegativeExponent(x.p()))
    } else {
        Ok(x.p() as u64)
    }
}

/// Hat assignments of `bar` whose plain letters spell `δ^n`.
///
/// Depth-first over positions; a partial plain prefix `P` survives only
/// while it left-divides `δ^n`, i.e. `P⁻¹·δ^n` is positive.
pub fn hat_assignments(bar: &[Atom], n: u64) -> Vec<HattedWord> {
    let need = 2 * n as usize;
    let target = BraidElement::delta_power(n as i64);
    let mut out = Vec::new();
    let mut current: Vec<HattedLetter> = Vec::with_capacity(bar.len());
    let mut plain: Vec<Atom> = Vec::with_capacity(need);

    fn go(
        bar: &[Atom],
        need: usize,
        target: &BraidElement,
        current: &mut Vec<HattedLetter>,
        plain: &mut Vec<Atom>,
        out: &mut Vec<HattedWord>,
    ) {
        let pos = current.len();
        if pos == bar.len() {
            if plain.len() == need && BraidElement::from_positive(plain) == *target {
                out.push(HattedWord::new(current.clone()));
            }
            return;
        }
        let remaining = bar.len() - pos;
        // leave it plain
        if plain.len() < need {
            plain.push(bar[pos]);
            let divides = BraidElement::from_positive(plain).inv().mul(target).is_positive();
            if divides {
                current.push(HattedLetter::plain(bar[pos]));
                go(bar, need, target, current, plain, out);
                current.pop();
            }
            plain.pop();
        }
        // hat it
        if need - plain.len() < remaining {
            current.push(HattedLetter::hatted(bar[pos]));
            go(bar, need, target, current, plain, out);
            current.pop();
        }
    }

    if need <= bar.len() {
        go(bar, need, &target, &mut current, &mut plain, &mut out);
    }
    out
}

/// The weight-`j` vertices of the graph of `x`, sorted.
pub fn enumerate_level(x: &BraidElement, j: u64) -> Result<Vec<Vertex>> {
    let p = require_nonnegative(x)?;
    let n = p + j;
    let bar_value = x.mul(&BraidElement::delta_power(n as i64));
    let mut out: Vec<Vertex> = positive_words_of(&bar_value)
        .iter()
        .flat_map(|bar| hat_assignments(bar, n))
        .map(|word| Vertex { word, weight: j })
        .collect();
    out.sort();
    Ok(out)
}

fn positive_words_of(a: &BraidElement) -> BTreeSet<PlainWord> {
    // bar·δ^(-n) = X with X = U·δ^(-p) gives bar = U·δ^j, always positive
    relation_closure(a.positive_word().expect("U·δ^j is positive"))
}

/// The weight-0 vertices: hat assignments of `U` whose plain letters spell
/// `δ^p`.
pub fn enumerate_v0(x: &BraidElement) -> Result<Vec<Vertex>> {
    enumerate_level(x, 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentId {
    pub id: usize,
    /// Lexicographically least word of the component.
    pub representative: Vertex,
}

/// The weight-0 graph with its connected components.
#[derive(Debug, Clone)]
pub struct Components {
    pub x: BraidElement,
    /// Sorted, so the first vertex of each component is its representative.
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub components: Vec<ComponentId>,
    component_of: Vec<usize>,
    index: HashMap<HattedWord, usize>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn index_of(&self, w: &HattedWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn component_of(&self, w: &HattedWord) -> Option<&ComponentId> {
        self.index_of(w).map(|i| &self.components[self.component_of[i]])
    }

    pub fn component_index(&self, vertex: usize) -> usize {
        self.component_of[vertex]
    }

    /// Shortest edge path between two weight-0 vertices, oriented from `a`.
    pub fn path(&self, a: &HattedWord, b: &HattedWord) -> Option<Vec<Edge>> {
        let (start, goal) = (self.index_of(a)?, self.index_of(b)?);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.vertices.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            adj[self.index[&edge.from.word]].push(e);
            adj[self.index[&edge.to.word]].push(e);
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v == goal {
                break;
            }
            for &e in &adj[v] {
                let edge = &self.edges[e];
                let other = self.index[&edge.from.word] + self.index[&edge.to.word] - v;
                if !seen[other] {
                    seen[other] = true;
                    prev[other] = Some((v, e));
                    queue.push_back(other);
                }
            }
        }
        if !seen[goal] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = goal;
        while let Some((u, e)) = prev[v] {
            let edge = &self.edges[e];
            path.push(if self.index[&edge.from.word] == u {
                edge.clone()
            } else {
                Edge { from: edge.to.clone(), to: edge.from.clone(), ..edge.clone() }
            });
            v = u;
        }
        path.reverse();
        Some(path)
    }

    /// Graphviz rendering: one cluster per component, edges labelled by kind.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph G0 {{");
        let _ = writeln!(s, "  label=\"{}\";", self.x);
        for c in &self.components {
            let _ = writeln!(s, "  subgraph cluster_{} {{", c.id);
            let _ = writeln!(s, "    label=\"component {}\";", c.id);
            for (i, v) in self.vertices.iter().enumerate() {
                if self.component_of[i] == c.id {
                    let _ = writeln!(s, "    \"{0}\" [label=\"{0}\"];", v.word);
                }
            }
            let _ = writeln!(s, "  }}");
        }
        for e in &self.edges {
            let _ =
                writeln!(s, "  \"{}\" -- \"{}\" [kind=\"{}\", label=\"{}\"];", e.from.word, e.to.word, e.kind, e.kind);
        }
        let _ = writeln!(s, "}}");
        s
    }
}

/// Connected components of the weight-0 graph of `x`.
///
/// h3 pairs are scanned as well but never occur: at weight 0 every bar-word
/// is the δ-free `U`, so no hatted run admits a relation move.
pub fn components_g0(x: &BraidElement) -> Result<Components> {
    let vertices = enumerate_v0(x)?;
    let index: HashMap<HattedWord, usize> = vertices.iter().enumerate().map(|(i, v)| (v.word.clone(), i)).collect();
    let mut uf = UnionFind::new(vertices.len());
    let mut edges = Vec::new();
    for (a, va) in vertices.iter().enumerate() {
        for (word, kind, witness) in neighbors_h12(&va.word) {
            let b = index.get(&word).copied().ok_or_else(|| {
                Error::Consistency(format!("h12 neighbour `{word}` of `{}` is not a vertex", va.word))
            })?;
            if a < b {
                uf.union(a, b);
                edges.push(Edge { from: va.clone(), to: vertices[b].clone(), kind, witness });
            }
        }
        for (word, witness) in neighbors_h3(&va.word) {
            if let Some(&b) = index.get(&word) {
                if a < b {
                    uf.union(a, b);
                    edges.push(Edge { from: va.clone(), to: vertices[b].clone(), kind: EdgeKind::H3, witness });
                }
            }
        }
    }
    let mut root_to_id: HashMap<usize, usize> = HashMap::new();
    let mut components = Vec::new();
    let mut component_of = Vec::with_capacity(vertices.len());
    for (i, v) in vertices.iter().enumerate() {
        let root = uf.find(i);
        let id = *root_to_id.entry(root).or_insert_with(|| {
            components.push(ComponentId { id: components.len(), representative: v.clone() });
            components.len() - 1
        });
        component_of.push(id);
    }
    Ok(Components { x: x.clone(), vertices, edges, components, component_of, index })
}

/// A weight-0 vertex connected to `a`, found by a best-first search that
/// never climbs above `a`'s weight.
///
/// Each popped vertex first offers its v1/v2 neighbours; its horizontal
/// neighbours are queued behind them at the same weight and expanded only if
/// the search has not descended by then. v3 moves are covered by an h3 step
/// followed by a v2 step. Ties break on the word order.
pub fn descend(a: &Vertex, x: &BraidElement) -> Result<Vertex> {
    require_nonnegative(x)?;
    if a.weight == 0 {
        return Ok(a.clone());
    }
    const VERTICAL: u8 = 0;
    const HORIZONTAL: u8 = 1;
    let mut seen: HashSet<HattedWord> = HashSet::from([a.word.clone()]);
    let mut heap = BinaryHeap::from([Reverse((a.weight, VERTICAL, a.word.clone()))]);
    while let Some(Reverse((weight, phase, word))) = heap.pop() {
        if weight == 0 {
            return Ok(Vertex { word, weight });
        }
        if phase == VERTICAL {
            for (v, _) in v1_moves(&word).chain(v2_moves(&word)) {
                if seen.insert(v.clone()) {
                    heap.push(Reverse((weight - 1, VERTICAL, v)));
                }
            }
            heap.push(Reverse((weight, HORIZONTAL, word)));
        } else {
            let horizontal = neighbors_h12(&word)
                .into_iter()
                .map(|(w, _, _)| w)
                .chain(neighbors_h3(&word).into_iter().map(|(w, _)| w));
            for v in horizontal {
                if seen.insert(v.clone()) {
                    heap.push(Reverse((weight, VERTICAL, v)));
                }
            }
        }
    }
    Err(Error::Consistency(format!("no weight-0 vertex below `{}` (weight {})", a.word, a.weight)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
    /// `which` is 1 or 2.
    Invalid {
        which: usize,
        reason: Invalid,
    },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equivalent => f.write_str("equivalent"),
            Verdict::Inequivalent => f.write_str("inequivalent"),
            Verdict::Invalid { which, reason } => write!(f, "invalid: factorization {which}: {reason}"),
        }
    }
}

/// Outcome of [`decide_equivalence`], with the data behind it.
#[derive(Debug, Clone)]
pub struct Decision {
    pub verdict: Verdict,
    pub x: BraidElement,
    /// Set when `p < 0` made the answer immediate.
    pub single_orbit: bool,
    /// Vertex of each input and its weight-0 landing.
    pub landings: Option<[(Vertex, Vertex); 2]>,
    pub graph: Option<Components>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub verdict: String,
    pub p: i64,
    pub k: i64,
    pub component_a: Option<usize>,
    pub component_b: Option<usize>,
    pub vertex_a: Option<HattedWord>,
    pub vertex_b: Option<HattedWord>,
    pub v0_size: Option<usize>,
    pub component_count: Option<usize>,
}

impl Decision {
    pub fn component_ids(&self) -> Option<(usize, usize)> {
        let (g, [(_, a), (_, b)]) = (self.graph.as_ref()?, self.landings.as_ref()?);
        Some((g.component_of(&a.word)?.id, g.component_of(&b.word)?.id))
    }

    pub fn report(&self) -> EquivalenceReport {
        let ids = self.component_ids();
        let verdict = match &self.verdict {
            Verdict::Equivalent => "equivalent".to_string(),
            Verdict::Inequivalent => "inequivalent".to_string(),
            Verdict::Invalid { .. } => "invalid".to_string(),
        };
        EquivalenceReport {
            verdict,
            p: self.x.p(),
            k: self.x.band_length(),
            component_a: ids.map(|c| c.0),
            component_b: ids.map(|c| c.1),
            vertex_a: self.landings.as_ref().map(|l| l[0].1.word.clone()),
            vertex_b: self.landings.as_ref().map(|l| l[1].1.word.clone()),
            v0_size: self.graph.as_ref().map(|g| g.vertices.len()),
            component_count: self.graph.as_ref().map(|g| g.len()),
        }
    }
}

/// Decides whether two factorizations of `x` lie in one Hurwitz orbit.
pub fn decide_equivalence(f1: &Factorization, f2: &Factorization, x: &BraidElement) -> Result<Decision> {
    let mut decision =
        Decision { verdict: Verdict::Equivalent, x: x.clone(), single_orbit: false, landings: None, graph: None };
    for (which, f) in [(1, f1), (2, f2)] {
        if let Err(reason) = validate_against(f, x) {
            decision.verdict = Verdict::Invalid { which, reason };
            return Ok(decision);
        }
    }
    if x.p() < 0 {
        decision.single_orbit = true;
        return Ok(decision);
    }
    let graph = components_g0(x)?;
    let land = |f: &Factorization| -> Result<(Vertex, Vertex)> {
        let v = factorization_to_vertex(f)?;
        let w = descend(&v, x)?;
        Ok((v, w))
    };
    let (la, lb) = (land(f1)?, land(f2)?);
    let ca = graph.component_of(&la.1.word).map(|c| c.id);
    let cb = graph.component_of(&lb.1.word).map(|c| c.id);
    if ca.is_none() || cb.is_none() {
        return Err(Error::Consistency("descent landed outside the weight-0 vertex set".into()));
    }
    decision.verdict = if ca == cb { Verdict::Equivalent } else { Verdict::Inequivalent };
    decision.landings = Some([la, lb]);
    decision.graph = Some(graph);
    Ok(decision)
}

/// Vertices of weights `0..=max_weight` with every edge among them.
#[derive(Debug, Clone)]
pub struct LevelGraph {
    pub x: BraidElement,
    pub max_weight: u64,
    pub vertices: Vec<Vertex>,
    pub horizontal: Vec<Vec<(usize, EdgeKind)>>,
    pub vertical: Vec<Vec<(usize, EdgeKind)>>,
    index: HashMap<HattedWord, usize>,
}

impl LevelGraph {
    /// Fails with a consistency error if a generated neighbour is not among
    /// the enumerated vertices.
    pub fn build(x: &BraidElement, max_weight: u64) -> Result<LevelGraph> {
        let mut vertices = Vec::new();
        for j in 0..=max_weight {
            vertices.extend(enumerate_level(x, j)?);
        }
        let index: HashMap<HattedWord, usize> = vertices.iter().enumerate().map(|(i, v)| (v.word.clone(), i)).collect();
        let lookup = |w: &HattedWord, from: &Vertex, kind: EdgeKind| {
            index.get(w).copied().ok_or_else(|| {
                Error::Consistency(format!("{kind} neighbour `{w}` of `{}` is not a vertex of {x}", from.word))
            })
        };
        let mut horizontal = Vec::with_capacity(vertices.len());
        let mut vertical = Vec::with_capacity(vertices.len());
        for v in &vertices {
            let mut h = Vec::new();
            for e in horizontal_edges(v) {
                h.push((lookup(&e.to.word, v, e.kind)?, e.kind));
            }
            let mut d = Vec::new();
            if v.weight > 0 {
                for e in vertical_edges(v)? {
                    let t = lookup(&e.to.word, v, e.kind)?;
                    if vertices[t].weight + 1 != v.weight {
                        return Err(Error::Consistency(format!("{} edge from `{}` skips a level", e.kind, v.word)));
                    }
                    d.push((t, e.kind));
                }
            }
            horizontal.push(h);
            vertical.push(d);
        }
        Ok(LevelGraph { x: x.clone(), max_weight, vertices, horizontal, vertical, index })
    }

    pub fn index_of(&self, w: &HattedWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Components of the subgraph induced on weights `≤ level`; two
    /// vertices of weight `level` share a class iff they are `∼_h`.
    pub fn classes_up_to(&self, level: u64) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices.len());
        for (a, v) in self.vertices.iter().enumerate() {
            if v.weight > level {
                continue;
            }
            for &(b, _) in self.horizontal[a].iter().chain(&self.vertical[a]) {
                if self.vertices[b].weight <= level {
                    uf.union(a, b);
                }
            }
        }
        uf
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::SignedWord;

    fn hw(s: &str) -> HattedWord {
        s.parse().unwrap()
    }

    fn nf(u: &str, p: i64) -> BraidElement {
        BraidElement::from_normal_form(u.parse().unwrap(), p).unwrap()
    }

    fn words(vs: &[Vertex]) -> Vec<String> {
        vs.iter().map(|v| v.word.to_string()).collect()
    }

    #[test]
    fn v0_examples() {
        assert_eq!(words(&enumerate_v0(&nf("s1", 0)).unwrap()), ["h1"]);
        assert!(enumerate_v0(&nf("s1 s1 s2", 1)).unwrap().is_empty());
        assert_eq!(words(&enumerate_v0(&nf("s2 s0 s1", 1)).unwrap()), ["s2 h0 s1"]);
        assert_eq!(words(&enumerate_v0(&nf("s2 s0 s1 s1", 1)).unwrap()), ["s2 h0 s1 h1", "s2 h0 h1 s1"]);
        assert!(matches!(enumerate_v0(&nf("s1", -1)), Err(Error::NegativeExponent(-1))));
    }

    #[test]
    fn h12_examples() {
        assert_eq!(edge_h12(&hw("s2 h0 h1 s1"), &hw("s2 h0 s1 h1")), Some(EdgeKind::H1));
        assert_eq!(edge_h12(&hw("s2 h0 s1 h1"), &hw("s2 h0 h1 s1")), Some(EdgeKind::H1));
        assert_eq!(edge_h12(&hw("h1 h2 s0 h1 s2"), &hw("s1 h2 s0 h1 h2")), Some(EdgeKind::H2));
        assert_eq!(edge_h12(&hw("s2 h0 s1 h1"), &hw("s2 h0 s1 h1")), None);
        assert_eq!(edge_h12(&hw("h1 s1"), &hw("s1 h2")), None);
    }

    #[test]
    fn h3_examples() {
        let a = hw("s1 h2 h1 s0");
        let b = hw("s1 h1 h0 s0");
        assert!(edge_h3(&a, &b));
        assert!(!edge_h3(&a, &a));
        assert!(!edge_h3(&a, &hw("s1 h1 s0 s0")));
        let ns: Vec<_> = neighbors_h3(&a).into_iter().map(|(w, _)| w.to_string()).collect();
        assert_eq!(ns, ["s1 h0 h2 s0", "s1 h1 h0 s0"]);
        assert!(neighbors_h3(&hw("s1 h2 s0")).is_empty());
    }

    #[test]
    fn vertical_examples() {
        let x = nf("s1", 0);
        let a = Vertex::new(hw("h1 s1 s0"), &x).unwrap();
        assert_eq!(a.weight, 1);
        let ns = neighbors_v(&a).unwrap();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0].0.word, hw("h1"));
        assert_eq!(ns[0].1, EdgeKind::V1);

        // σ2σ1σ̂1 sits over σ0 at weight 1; its one vertical neighbour is σ̂0.
        let x0 = nf("s0", 0);
        let b = Vertex::new(hw("s2 s1 h1"), &x0).unwrap();
        let ns = neighbors_v(&b).unwrap();
        assert_eq!(ns, vec![(Vertex { word: hw("h0"), weight: 0 }, EdgeKind::V1)]);

        // y = σ1 matches u = σ0 across the hatted σ̂1.
        let c = Vertex::new(hw("s1 h1 s0"), &nf("s1", 0)).unwrap();
        let ns = neighbors_v(&c).unwrap();
        assert_eq!(ns, vec![(Vertex { word: hw("h1"), weight: 0 }, EdgeKind::V2)]);

        let w0 = Vertex { word: hw("h1"), weight: 0 };
        assert!(matches!(neighbors_v(&w0), Err(Error::WeightZero)));
    }

    #[test]
    fn vertical_edges_verify() {
        let x = nf("s2 s0 s1 s1", 1);
        for j in 1..=2 {
            for v in enumerate_level(&x, j).unwrap() {
                for e in vertical_edges(&v).unwrap() {
                    assert!(e.verify(), "{e:?}");
                    assert_eq!(Vertex::new(e.to.word.clone(), &x).unwrap(), e.to);
                }
                for e in horizontal_edges(&v) {
                    assert!(e.verify(), "{e:?}");
                }
            }
        }
    }

    #[test]
    fn components_examples() {
        let c = components_g0(&nf("s1", 0)).unwrap();
        assert_eq!((c.vertices.len(), c.len()), (1, 1));
        let c = components_g0(&nf("s2 s0 s1 s1", 1)).unwrap();
        assert_eq!((c.vertices.len(), c.len()), (2, 1));
        assert_eq!(c.edges.len(), 1);
        assert_eq!(c.edges[0].kind, EdgeKind::H1);
        assert_eq!(c.components[0].representative.word, hw("s2 h0 s1 h1"));
        let c = components_g0(&nf("s1 s1", 0)).unwrap();
        assert_eq!(words(&c.vertices), ["h1 h1"]);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn descend_examples() {
        let x = nf("s1", 0);
        let w0 = Vertex { word: hw("h1"), weight: 0 };
        assert_eq!(descend(&w0, &x).unwrap(), w0);
        let a = Vertex::new(hw("h1 s1 s0"), &x).unwrap();
        assert_eq!(descend(&a, &x).unwrap(), w0);
    }

    #[test]
    fn vertex_membership() {
        let x = nf("s2 s0 s1", 1);
        assert_eq!(Vertex::new(hw("s2 h0 s1"), &x).unwrap().weight, 0);
        assert!(Vertex::new(hw("s2 h0 h1"), &x).is_err());
        assert!(Vertex::new(hw("h2 s0 s1"), &x).is_err());
        let word: SignedWord = "s2 s0 s2-".parse().unwrap();
        assert_eq!(word.evaluate(), x);
    }

    #[test]
    fn dot_has_clusters_and_kinds() {
        let dot = components_g0(&nf("s2 s0 s1 s1", 1)).unwrap().to_dot();
        assert!(dot.starts_with("graph G0 {"));
        assert!(dot.contains("subgraph cluster_0"));
        assert!(dot.contains("kind=\"h1\""));
        assert!(dot.contains("\"s2 h0 h1 s1\" [label=\"s2 h0 h1 s1\"]"));
    }

    #[test]
    fn level_graph_is_closed() {
        let g = LevelGraph::build(&nf("s2 s0 s1 s1", 1), 2).unwrap();
        assert!(g.vertices.iter().any(|v| v.weight == 2));
        for (a, hs) in g.horizontal.iter().enumerate() {
            for &(b, kind) in hs {
                assert!(g.horizontal[b].contains(&(a, kind)), "{kind} not symmetric");
            }
        }
    }
}

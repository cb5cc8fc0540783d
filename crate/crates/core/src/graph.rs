//! On-line bipartite graphs and the level-component queries the coloring
//! engines run at every step.
//!
//! Vertex ids are dense and equal to the arrival rank, so "presented before
//! `u`" is simply `w < u`. A level component `C_i[u]` is the connected
//! component of `u` in the subgraph spanned by colored vertices whose color
//! index is at most `i`, together with `u` itself.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arrival rank of a vertex, starting at 0.
pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Palette {
    A,
    B,
    C,
}

impl Palette {
    pub fn letter(self) -> char {
        match self {
            Palette::A => 'A',
            Palette::B => 'B',
            Palette::C => 'C',
        }
    }

    pub fn from_letter(s: &str) -> Option<Palette> {
        match s {
            "A" | "a" => Some(Palette::A),
            "B" | "b" => Some(Palette::B),
            "C" | "c" => Some(Palette::C),
            _ => None,
        }
    }
}

/// A color: palette letter plus a positive index (`a_3`, `b_1`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColorLabel {
    pub palette: Palette,
    pub index: u32,
}

impl ColorLabel {
    pub fn new(palette: Palette, index: u32) -> Result<Self> {
        if index == 0 {
            return Err(Error::Precondition("color index must be positive".into()));
        }
        Ok(ColorLabel { palette, index })
    }

    pub fn a(index: u32) -> Self {
        assert!(index >= 1, "color index must be positive");
        ColorLabel { palette: Palette::A, index }
    }

    pub fn b(index: u32) -> Self {
        assert!(index >= 1, "color index must be positive");
        ColorLabel { palette: Palette::B, index }
    }

    pub fn c(index: u32) -> Self {
        assert!(index >= 1, "color index must be positive");
        ColorLabel { palette: Palette::C, index }
    }

    /// The color index in the strict sense: defined for palettes A and B only.
    pub fn ab_index(self) -> Option<u32> {
        match self.palette {
            Palette::A | Palette::B => Some(self.index),
            Palette::C => None,
        }
    }
}

impl fmt::Display for ColorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.palette.letter().to_ascii_lowercase(), self.index)
    }
}

/// Read access to an undirected simple graph on vertices `0..vertex_count()`.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    /// Neighbors sorted ascending.
    fn neighbors(&self, v: VertexId) -> &[VertexId];

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    fn edge_count(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.neighbors(v).len()).sum::<usize>() / 2
    }

    fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            for &w in self.neighbors(u) {
                if u < w {
                    out.push((u, w));
                }
            }
        }
        out
    }
}

/// Plain undirected graph, used where bipartiteness is not guaranteed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        SimpleGraph::from_edges(n, &edges)
    }

    pub fn complete_bipartite(left: usize, right: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..left {
            for w in 0..right {
                edges.push((u, left + w));
            }
        }
        SimpleGraph::from_edges(left + right, &edges)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert!(u != v, "self-loop at {u}");
        for (x, y) in [(u, v), (v, u)] {
            if let Err(pos) = self.adj[x].binary_search(&y) {
                self.adj[x].insert(pos, y);
            }
        }
    }

    pub fn copy_of<G: Adjacency + ?Sized>(g: &G) -> Self {
        SimpleGraph {
            adj: (0..g.vertex_count()).map(|v| g.neighbors(v).to_vec()).collect(),
        }
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced<G: Adjacency + ?Sized>(g: &G, vertices: &[VertexId]) -> Self {
        let mut h = SimpleGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &w) in vertices.iter().enumerate().skip(i + 1) {
                if g.has_edge(u, w) {
                    h.add_edge(i, j);
                }
            }
        }
        h
    }

    /// BFS 2-coloring; `None` if an odd cycle exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let n = self.adj.len();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// True iff the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let n = self.adj.len();
        let comps = connected_components(self).len();
        self.edge_count() + comps == n
    }
}

impl Adjacency for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }
}

/// Connected components, each sorted, ordered by smallest member.
pub fn connected_components<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<VertexId>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// A graph revealed one vertex at a time. Each new vertex may only attach to
/// vertices already present, and the graph must stay bipartite.
///
/// Side parity is tracked with a union-find keyed on parity-to-parent, so the
/// relation "same side of G" between two vertices of one component is
/// answered without a traversal. That relation never changes once both
/// vertices are connected.
#[derive(Debug, Clone, Default)]
pub struct OnlineBipartiteGraph {
    adj: Vec<Vec<VertexId>>,
    parent: Vec<VertexId>,
    flip: Vec<bool>,
    size: Vec<usize>,
}

impl OnlineBipartiteGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// Root of `v` and the parity of `v` relative to it.
    fn find(&self, mut v: VertexId) -> (VertexId, bool) {
        let mut parity = false;
        while self.parent[v] != v {
            parity ^= self.flip[v];
            v = self.parent[v];
        }
        (v, parity)
    }

    /// Presents a new vertex adjacent to `neighbors`; returns its id.
    pub fn add_vertex(&mut self, neighbors: &[VertexId]) -> Result<VertexId> {
        let id = self.adj.len();
        let mut nbrs: Vec<VertexId> = neighbors.to_vec();
        nbrs.sort_unstable();
        nbrs.dedup();
        if let Some(&bad) = nbrs.iter().find(|&&u| u >= id) {
            return Err(Error::UnknownVertex(bad));
        }

        // parity v must have relative to each touched root
        let mut required: BTreeMap<VertexId, bool> = BTreeMap::new();
        for &u in &nbrs {
            let (root, p) = self.find(u);
            match required.insert(root, !p) {
                Some(prev) if prev == p => {
                    return Err(Error::OddCycle { neighbors: nbrs });
                }
                _ => {}
            }
        }

        self.adj.push(nbrs.clone());
        self.parent.push(id);
        self.flip.push(false);
        self.size.push(1);
        for &u in &nbrs {
            self.adj[u].push(id);
        }
        for (root, v_parity) in required {
            // v sits at parity `v_parity` relative to `root`; v is currently its own root
            let (v_root, v_rel) = self.find(id);
            // hang the smaller tree below the larger one
            let (child, par, child_flip) = if self.size[root] <= self.size[v_root] {
                (root, v_root, v_parity ^ v_rel)
            } else {
                (v_root, root, v_parity ^ v_rel)
            };
            self.parent[child] = par;
            self.flip[child] = child_flip;
            self.size[par] += self.size[child];
        }
        Ok(id)
    }

    pub fn same_component(&self, u: VertexId, v: VertexId) -> bool {
        self.find(u).0 == self.find(v).0
    }

    /// `Some(true)` if `u` and `v` share a side of their common component,
    /// `None` if they lie in different components.
    pub fn same_side(&self, u: VertexId, v: VertexId) -> Option<bool> {
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        (ru == rv).then_some(pu == pv)
    }

    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::copy_of(self)
    }

    /// Neighbor lists in presentation form: earlier neighbors of each vertex.
    pub fn presentation(&self) -> Vec<Vec<VertexId>> {
        (0..self.len())
            .map(|v| self.adj[v].iter().copied().filter(|&u| u < v).collect())
            .collect()
    }
}

impl Adjacency for OnlineBipartiteGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }
}

/// Colors fixed so far; the vertex being processed is still `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialColoring {
    colors: Vec<Option<ColorLabel>>,
}

impl PartialColoring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: VertexId) -> Option<ColorLabel> {
        self.colors.get(v).copied().flatten()
    }

    pub fn assign(&mut self, v: VertexId, color: ColorLabel) {
        if self.colors.len() <= v {
            self.colors.resize(v + 1, None);
        }
        self.colors[v] = Some(color);
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, ColorLabel)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    pub fn distinct(&self) -> BTreeSet<ColorLabel> {
        self.iter().map(|(_, c)| c).collect()
    }

    pub fn max_index(&self) -> u32 {
        self.iter().map(|(_, c)| c.index).max().unwrap_or(0)
    }

    /// Largest index among A/B colors, 0 if none.
    pub fn max_ab_index(&self) -> u32 {
        self.iter().filter_map(|(_, c)| c.ab_index()).max().unwrap_or(0)
    }

    pub fn is_proper<G: Adjacency + ?Sized>(&self, graph: &G) -> bool {
        graph
            .edges()
            .into_iter()
            .all(|(u, w)| match (self.get(u), self.get(w)) {
                (Some(a), Some(b)) => a != b,
                _ => true,
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// The anchor's side.
    First,
    Second,
}

/// A connected vertex set split into its two sides; `side1` holds the anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentView {
    pub anchor: VertexId,
    pub side1: BTreeSet<VertexId>,
    pub side2: BTreeSet<VertexId>,
}

impl ComponentView {
    pub fn singleton(v: VertexId) -> Self {
        ComponentView {
            anchor: v,
            side1: BTreeSet::from([v]),
            side2: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.side1.len() + self.side2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.side1.contains(&v) || self.side2.contains(&v)
    }

    pub fn side_of(&self, v: VertexId) -> Option<Side> {
        if self.side1.contains(&v) {
            Some(Side::First)
        } else if self.side2.contains(&v) {
            Some(Side::Second)
        } else {
            None
        }
    }

    /// All vertices, ascending.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.side1.iter().chain(&self.side2).copied().collect();
        vs.sort_unstable();
        vs
    }
}

/// BFS from `anchor` through vertices accepted by `admit`; the anchor is
/// always included.
fn bfs_view<G, F>(graph: &G, anchor: VertexId, admit: F) -> ComponentView
where
    G: Adjacency + ?Sized,
    F: Fn(VertexId) -> bool,
{
    let mut view = ComponentView::singleton(anchor);
    let mut queue = VecDeque::from([(anchor, true)]);
    while let Some((u, first)) = queue.pop_front() {
        for &w in graph.neighbors(u) {
            if w == anchor || view.contains(w) || !admit(w) {
                continue;
            }
            if first {
                view.side2.insert(w);
            } else {
                view.side1.insert(w);
            }
            queue.push_back((w, !first));
        }
    }
    view
}

fn within_level(coloring: &PartialColoring, w: VertexId, level: u32) -> bool {
    coloring.get(w).is_some_and(|c| c.index <= level)
}

/// `C_level[anchor]` over the whole graph presented so far.
///
/// Admits every colored vertex with index at most `level` (all palettes
/// count), plus the anchor. An uncolored anchor is only accepted when
/// `include_uncolored_anchor` is set.
pub fn level_component(
    graph: &OnlineBipartiteGraph,
    coloring: &PartialColoring,
    anchor: VertexId,
    level: u32,
    include_uncolored_anchor: bool,
) -> Result<ComponentView> {
    if anchor >= graph.len() {
        return Err(Error::UnknownVertex(anchor));
    }
    if coloring.get(anchor).is_none() && !include_uncolored_anchor {
        return Err(Error::UncoloredAnchor(anchor));
    }
    Ok(bfs_view(graph, anchor, |w| within_level(coloring, w, level)))
}

/// `C_level[anchor]` as it stood when `anchor` arrived: only vertices
/// presented before the anchor take part. For the vertex currently being
/// colored this coincides with [`level_component`].
pub fn arrival_component(
    graph: &OnlineBipartiteGraph,
    coloring: &PartialColoring,
    anchor: VertexId,
    level: u32,
) -> ComponentView {
    bfs_view(graph, anchor, |w| w < anchor && within_level(coloring, w, level))
}

/// Components of `view` after deleting `anchor`, each anchored at its
/// earliest vertex, ordered by that vertex.
pub fn component_minus_anchor<G: Adjacency + ?Sized>(
    graph: &G,
    view: &ComponentView,
    anchor: VertexId,
) -> Result<Vec<ComponentView>> {
    if !view.contains(anchor) {
        return Err(Error::Precondition(format!(
            "vertex {anchor} is not part of the component"
        )));
    }
    let mut claimed: BTreeSet<VertexId> = BTreeSet::from([anchor]);
    let mut out = Vec::new();
    for start in view.vertices() {
        if claimed.contains(&start) {
            continue;
        }
        let sub = bfs_view(graph, start, |w| w != anchor && view.contains(w));
        claimed.extend(sub.side1.iter().chain(&sub.side2).copied());
        out.push(sub);
    }
    Ok(out)
}

/// True iff `color` occurs on both sides of `view`.
pub fn is_mixed(view: &ComponentView, color: ColorLabel, coloring: &PartialColoring) -> bool {
    let on = |side: &BTreeSet<VertexId>| side.iter().any(|&w| coloring.get(w) == Some(color));
    on(&view.side1) && on(&view.side2)
}

/// True iff `candidate` is adjacent to every vertex of `target` lying on the
/// side of G opposite to it. Vacuously true when there is no such vertex.
/// A candidate outside the target's component of G is never universal.
pub fn is_universal(graph: &OnlineBipartiteGraph, candidate: VertexId, target: &ComponentView) -> bool {
    if !graph.same_component(candidate, target.anchor) {
        return false;
    }
    let anchor_same = graph.same_side(candidate, target.anchor) == Some(true);
    // vertices of the target on the opposite side of `candidate`
    let opposite = if anchor_same { &target.side2 } else { &target.side1 };
    opposite.iter().all(|&w| graph.has_edge(candidate, w))
}

//! Children, grandchildren, `S_i(v)` trees and constructive extraction of an
//! induced `X_w` below a vertex colored `a_k`.
//!
//! All level components here are taken as they stood when their anchor
//! arrived (see [`arrival_component`]), matching what the engine looked at.

use std::collections::BTreeSet;

use crate::engines::{Branch, BranchTrace};
use crate::error::{Error, Result};
use crate::forcing::build_xk;
use crate::graph::{
    arrival_component, component_minus_anchor, is_universal, Adjacency, ColorLabel, ComponentView,
    OnlineBipartiteGraph, Palette, VertexId,
};

use super::paths::find_induced_path_within;
use super::RunRecord;

/// `floor(sqrt(k / 2))` over the integers: the largest `w` with `2w^2 <= k`.
pub fn isqrt_half(k: u32) -> usize {
    let mut w = 0usize;
    while 2 * (w + 1) * (w + 1) <= k as usize {
        w += 1;
    }
    w
}

fn color_of(run: &RunRecord, v: VertexId) -> Result<ColorLabel> {
    if v >= run.graph.len() {
        return Err(Error::UnknownVertex(v));
    }
    run.coloring.get(v).ok_or(Error::Uncolored(v))
}

fn index_of(run: &RunRecord, v: VertexId) -> Result<u32> {
    Ok(color_of(run, v)?.index)
}

fn claim(vertex: VertexId, reason: impl Into<String>) -> Error {
    Error::ClaimViolation {
        vertex,
        reason: reason.into(),
    }
}

/// The two children of `v`: on each side of `C_{k-1}(v)`, the earliest
/// vertex colored `a_{k-1}`, where `k >= 2` is the index of `v`.
pub fn children_of(run: &RunRecord, v: VertexId) -> Result<(VertexId, VertexId)> {
    let k = index_of(run, v)?;
    if k < 2 {
        return Err(Error::Precondition(format!("vertex {v} has index {k}; children need index >= 2")));
    }
    let below = ColorLabel::a(k - 1);
    let view = arrival_component(&run.graph, &run.coloring, v, k - 1);
    let earliest = |side: &BTreeSet<VertexId>| side.iter().copied().find(|&w| run.coloring.get(w) == Some(below));
    let (Some(x), Some(y)) = (earliest(&view.side1), earliest(&view.side2)) else {
        return Err(claim(v, format!("{below} is not mixed in C_{}[v]", k - 1)));
    };
    let parts = component_minus_anchor(&run.graph, &view, v)?;
    if parts.iter().any(|p| p.contains(x) && p.contains(y)) {
        return Err(claim(v, format!("children {x} and {y} share a component of C_{}(v)", k - 1)));
    }
    Ok((x.min(y), x.max(y)))
}

/// The component of `child` in `C_{k-1}(v)` together with `v`.
fn child_region(run: &RunRecord, v: VertexId, k: u32, child: VertexId) -> Result<ComponentView> {
    let view = arrival_component(&run.graph, &run.coloring, v, k - 1);
    component_minus_anchor(&run.graph, &view, v)?
        .into_iter()
        .find(|p| p.contains(child))
        .ok_or_else(|| claim(v, format!("vertex {child} is not below v")))
}

fn has_p5_ending_at(run: &RunRecord, region: &ComponentView, v: VertexId) -> bool {
    let mut allowed = vec![false; run.graph.len()];
    for w in region.vertices() {
        allowed[w] = true;
    }
    allowed[v] = true;
    find_induced_path_within(&run.graph, &allowed, 5, Some(v)).is_some()
}

/// The grandchildren of `v` (index `k >= 3`): the children of the child
/// whose region carries no induced `P_5` ending at `v`, smaller id first.
pub fn grandchildren_of(run: &RunRecord, v: VertexId) -> Result<(VertexId, VertexId)> {
    let k = index_of(run, v)?;
    if k < 3 {
        return Err(Error::Precondition(format!(
            "vertex {v} has index {k}; grandchildren need index >= 3"
        )));
    }
    let (c1, c2) = children_of(run, v)?;
    for child in [c1, c2] {
        let region = child_region(run, v, k, child)?;
        if !has_p5_ending_at(run, &region, v) {
            return children_of(run, child);
        }
    }
    Err(Error::NotP9Free(v))
}

/// `S_i(v)` as a tree, nodes in depth-first preorder.
#[derive(Debug, Clone)]
struct STree {
    vertex: Vec<VertexId>,
    parent: Vec<Option<usize>>,
    kids: Vec<Vec<usize>>,
}

impl STree {
    fn build(run: &RunRecord, v: VertexId, i: usize) -> Result<STree> {
        if i == 0 {
            return Err(Error::Precondition("S_i(v) needs i >= 1".into()));
        }
        let mut tree = STree {
            vertex: Vec::new(),
            parent: Vec::new(),
            kids: Vec::new(),
        };
        tree.grow(run, v, i, None)?;
        Ok(tree)
    }

    fn grow(&mut self, run: &RunRecord, v: VertexId, i: usize, parent: Option<usize>) -> Result<usize> {
        let id = self.vertex.len();
        self.vertex.push(v);
        self.parent.push(parent);
        self.kids.push(Vec::new());
        if i > 1 && index_of(run, v)? >= 3 {
            let (g1, g2) = grandchildren_of(run, v)?;
            for g in [g1, g2] {
                let kid = self.grow(run, g, i - 1, Some(id))?;
                self.kids[id].push(kid);
            }
        }
        Ok(id)
    }

    fn descendants(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = self.kids[node].iter().rev().copied().collect();
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(self.kids[n].iter().rev());
        }
        out
    }

    /// First ancestor/descendant pair on opposite sides that is not adjacent.
    fn first_gap(&self, graph: &OnlineBipartiteGraph) -> Option<(VertexId, VertexId)> {
        (0..self.vertex.len()).find_map(|x| {
            let xv = self.vertex[x];
            self.descendants(x)
                .into_iter()
                .map(|y| self.vertex[y])
                .find(|&yv| graph.same_side(xv, yv) == Some(false) && !graph.has_edge(xv, yv))
                .map(|yv| (xv, yv))
        })
    }
}

/// `S_i(v)`: `v` plus the grandchild closure to depth `i`.
pub fn s_set(run: &RunRecord, v: VertexId, i: usize) -> Result<BTreeSet<VertexId>> {
    Ok(STree::build(run, v, i)?.vertex.into_iter().collect())
}

/// True iff every ancestor/descendant pair of `S_i(v)` lying on opposite
/// sides of G is adjacent.
pub fn is_complete_s(run: &RunRecord, v: VertexId, i: usize) -> Result<bool> {
    Ok(STree::build(run, v, i)?.first_gap(&run.graph).is_none())
}

/// An induced copy of `X_target` in a run's graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessMap {
    pub target: usize,
    /// `mapping[x]` is the graph vertex playing vertex `x` of `build_xk(target)`.
    pub mapping: Vec<VertexId>,
    /// Vertex whose side the root must share.
    pub anchor: VertexId,
}

impl WitnessMap {
    pub fn root(&self) -> VertexId {
        self.mapping[build_xk(self.target).root()]
    }
}

/// True iff the mapping is injective, induces exactly `X_target`, and puts
/// the root on the anchor's side.
pub fn verify_witness(graph: &OnlineBipartiteGraph, witness: &WitnessMap) -> bool {
    if witness.target == 0 {
        return false;
    }
    let xk = build_xk(witness.target);
    let map = &witness.mapping;
    if map.len() != xk.len() || map.iter().any(|&v| v >= graph.len()) || witness.anchor >= graph.len() {
        return false;
    }
    if map.iter().collect::<BTreeSet<_>>().len() != map.len() {
        return false;
    }
    let induced = (0..map.len()).all(|a| (a + 1..map.len()).all(|b| xk.has_edge(a, b) == graph.has_edge(map[a], map[b])));
    induced && graph.same_side(map[xk.root()], witness.anchor) == Some(true)
}

/// Joins two `X_{w-1}` copies under `root`; one copy's root must lie on the
/// side opposite `root`, the other on `root`'s side.
fn join(graph: &OnlineBipartiteGraph, w: usize, root: VertexId, a: Vec<VertexId>, b: Vec<VertexId>) -> Result<Vec<VertexId>> {
    let sub_root = build_xk(w - 1).root();
    let opposite = |m: &[VertexId]| graph.same_side(m[sub_root], root) == Some(false);
    let (far, near) = match (opposite(&a), opposite(&b)) {
        (true, false) => (a, b),
        (false, true) => (b, a),
        _ => return Err(claim(root, "sub-copies do not straddle the sides")),
    };
    if w == 2 {
        return Ok(vec![far[0], root]);
    }
    let mut mapping = far;
    mapping.extend(near);
    mapping.push(root);
    Ok(mapping)
}

fn full_tree(run: &RunRecord, tree: &STree, node: usize, w: usize) -> Result<Vec<VertexId>> {
    let v = tree.vertex[node];
    if w == 1 {
        return Ok(vec![v]);
    }
    let [k1, k2] = tree.kids[node][..] else {
        return Err(claim(v, format!("S_{w}(v) has no grandchildren at this vertex")));
    };
    let a = full_tree(run, tree, k1, w - 1)?;
    let b = full_tree(run, tree, k2, w - 1)?;
    join(&run.graph, w, v, a, b)
}

struct Extractor<'a> {
    run: &'a RunRecord,
    traces: Vec<Option<&'a BranchTrace>>,
}

impl Extractor<'_> {
    fn trace(&self, v: VertexId) -> Result<&BranchTrace> {
        self.traces
            .get(v)
            .copied()
            .flatten()
            .ok_or_else(|| Error::Precondition(format!("no engine trace for vertex {v}; replay the run first")))
    }

    /// Mapping of an induced `X_w` in `C_k[v]` rooted on `v`'s side.
    fn extract(&self, v: VertexId, w: usize) -> Result<Vec<VertexId>> {
        if w == 1 {
            return Ok(vec![v]);
        }
        let run = self.run;
        let color = color_of(run, v)?;
        if color.palette != Palette::A || isqrt_half(color.index) < w {
            return Err(claim(v, format!("{color} cannot carry X_{w}")));
        }
        let tree = STree::build(run, v, w)?;
        let Some((x, y)) = tree.first_gap(&run.graph) else {
            return full_tree(run, &tree, 0, w);
        };

        let trace = self.trace(v)?;
        let (z, z_prime) = match trace.branch {
            Branch::AViaC => {
                let u = trace.c_on_far_side.ok_or_else(|| claim(v, "a_via_c without a c vertex"))?;
                self.trace(u)?
                    .witness
                    .ok_or_else(|| claim(u, "c vertex without a stored witness"))?
            }
            Branch::ADefault => (y, universal_neighbor(run, x, y)?),
            other => return Err(claim(v, format!("vertex colored a_k by branch {other:?}"))),
        };
        if run.graph.same_side(z_prime, v) != Some(true) {
            return Err(claim(v, format!("root candidate {z_prime} is not on v's side")));
        }
        let (z1, z2) = children_of(run, z)?;
        let a = self.extract(z1, w - 1)?;
        let b = self.extract(z2, w - 1)?;
        join(&run.graph, w, z_prime, a, b)
    }
}

/// A neighbor of `x` in `C^y_{i-1}(x)` universal to `C_{j-1}[y]`, where `i`
/// and `j` are the indices of `x` and `y`. Such a neighbor exists whenever
/// that region has no induced `P_5` ending at `x` and `x`, `y` are
/// non-adjacent vertices on opposite sides.
pub fn universal_neighbor(run: &RunRecord, x: VertexId, y: VertexId) -> Result<VertexId> {
    let i = index_of(run, x)?;
    let j = index_of(run, y)?;
    if i < 2 {
        return Err(Error::Precondition(format!("vertex {x} has index {i}; need at least 2")));
    }
    let region = child_region(run, x, i, y)?;
    let target = arrival_component(&run.graph, &run.coloring, y, j.saturating_sub(1));
    run.graph
        .neighbors(x)
        .iter()
        .copied()
        .filter(|&r| region.contains(r))
        .find(|&r| is_universal(&run.graph, r, &target))
        .ok_or_else(|| claim(x, format!("no neighbor universal to C_{}[{y}]", j.saturating_sub(1))))
}

/// The induced `X_i` rooted at `v` that a complete `S_i(v)` carries when the
/// index of `v` is at least `2i`.
pub fn full_tree_witness(run: &RunRecord, v: VertexId, i: usize) -> Result<WitnessMap> {
    let k = index_of(run, v)? as usize;
    if i == 0 || k < 2 * i {
        return Err(Error::Precondition(format!("vertex {v} has index {k}; need at least 2i = {}", 2 * i)));
    }
    let tree = STree::build(run, v, i)?;
    if let Some((x, y)) = tree.first_gap(&run.graph) {
        return Err(claim(v, format!("S_{i}(v) is not complete: {x} and {y} are not adjacent")));
    }
    let witness = WitnessMap {
        target: i,
        mapping: full_tree(run, &tree, 0, i)?,
        anchor: v,
    };
    if !verify_witness(&run.graph, &witness) {
        return Err(claim(v, format!("S_{i}(v) does not induce X_{i}")));
    }
    Ok(witness)
}

/// An induced `X_w` with `w = floor(sqrt(k/2))` inside `C_k[v]` for a vertex
/// `v` colored `a_k`, `k >= 2`, rooted on the side of `v`.
///
/// Needs engine traces (a live or replayed run) and a P9-free graph; any
/// failure is returned as an error.
pub fn extract_x_witness(run: &RunRecord, v: VertexId) -> Result<WitnessMap> {
    let color = color_of(run, v)?;
    if color.palette != Palette::A || color.index < 2 {
        return Err(Error::Precondition(format!("vertex {v} is {color}; extraction needs a_k with k >= 2")));
    }
    let target = isqrt_half(color.index);
    let extractor = Extractor {
        run,
        traces: run.traces(),
    };
    let witness = WitnessMap {
        target,
        mapping: extractor.extract(v, target)?,
        anchor: v,
    };
    if !verify_witness(&run.graph, &witness) {
        return Err(claim(v, format!("assembled X_{target} is not induced")));
    }
    Ok(witness)
}

/// Outcome of checking a bicolormax run against the main theorem's chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    /// Largest A/B index used.
    pub k: u32,
    pub colors: usize,
    /// Witness for the earliest `a_k` vertex, when `k >= 2`.
    pub witness: Option<WitnessMap>,
    /// `6 (floor(sqrt(k/2)) + 1)^2`.
    pub bound: usize,
}

/// Checks `colors <= 3k`, extracts an `X_{floor(sqrt(k/2))}` below the
/// earliest `a_k` vertex, and checks `3k <= 6 (floor(sqrt(k/2)) + 1)^2`.
pub fn theorem_consistency(run: &RunRecord) -> Result<TheoremReport> {
    let k = run.coloring.max_ab_index();
    let colors = run.coloring.distinct().len();
    if colors > 3 * k as usize {
        return Err(claim(0, format!("{colors} colors exceed 3k = {}", 3 * k)));
    }
    let witness = if k >= 2 {
        let v = run
            .coloring
            .iter()
            .find(|&(_, c)| c == ColorLabel::a(k))
            .map(|(v, _)| v)
            .ok_or_else(|| claim(0, format!("no vertex colored a{k}")))?;
        Some(extract_x_witness(run, v)?)
    } else {
        None
    };
    let w = isqrt_half(k);
    let bound = 6 * (w + 1) * (w + 1);
    if 3 * k as usize > bound {
        return Err(claim(0, format!("3k = {} exceeds 6(w+1)^2 = {bound}", 3 * k)));
    }
    Ok(TheoremReport { k, colors, witness, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{run_colorer, EngineKind};

    fn hand_run() -> RunRecord {
        run_colorer(EngineKind::bicolormax(), &[vec![], vec![], vec![1], vec![0, 2]]).unwrap()
    }

    #[test]
    fn isqrt_half_values() {
        let expect = [(0, 0), (1, 0), (2, 1), (7, 1), (8, 2), (17, 2), (18, 3), (32, 4)];
        for (k, w) in expect {
            assert_eq!(isqrt_half(k), w, "k={k}");
        }
    }

    #[test]
    fn children_of_hand_simulation() {
        let run = hand_run();
        assert_eq!(children_of(&run, 3), Ok((0, 1)));
        assert!(matches!(children_of(&run, 0), Err(Error::Precondition(_))));
        assert!(matches!(children_of(&run, 2), Err(Error::Precondition(_))));
        assert!(matches!(grandchildren_of(&run, 3), Err(Error::Precondition(_))));
    }

    #[test]
    fn s_sets_of_depth_one() {
        let run = hand_run();
        assert_eq!(s_set(&run, 3, 1), Ok(BTreeSet::from([3])));
        assert_eq!(is_complete_s(&run, 3, 1), Ok(true));
        // index 2 stops the closure
        assert_eq!(s_set(&run, 3, 4), Ok(BTreeSet::from([3])));
    }

    #[test]
    fn a2_vertex_yields_itself() {
        let run = hand_run();
        let w = extract_x_witness(&run, 3).unwrap();
        assert_eq!(w.target, 1);
        assert_eq!(w.mapping, vec![3]);
        assert!(verify_witness(&run.graph, &w));
        let report = theorem_consistency(&run).unwrap();
        assert_eq!(report.k, 2);
        assert_eq!(report.bound, 24);
    }

    #[test]
    fn verify_witness_rejections() {
        let mut g = OnlineBipartiteGraph::new();
        let order: Vec<VertexId> = (0..5).collect();
        for nbrs in crate::generate::presentation_from_order(build_xk(3).graph(), &order) {
            g.add_vertex(&nbrs).unwrap();
        }
        let identity = WitnessMap {
            target: 3,
            mapping: (0..5).collect(),
            anchor: build_xk(3).root(),
        };
        assert!(verify_witness(&g, &identity));
        // anchor on the wrong side
        assert!(!verify_witness(&g, &WitnessMap { anchor: 1, ..identity.clone() }));
        // not injective
        assert!(!verify_witness(&g, &WitnessMap { mapping: vec![0, 1, 4, 2, 2], ..identity.clone() }));
        // swap two vertices so an adjacency goes missing
        assert!(!verify_witness(&g, &WitnessMap { mapping: vec![1, 0, 2, 3, 4], ..identity }));
    }

    #[test]
    fn extra_edge_between_branches_is_rejected() {
        // X_3 is the path 0-1-4-2-3; the host adds the edge 0-2
        let mut g = OnlineBipartiteGraph::new();
        for nbrs in [vec![], vec![0], vec![0], vec![2], vec![1, 2]] {
            g.add_vertex(&nbrs).unwrap();
        }
        let w = WitnessMap {
            target: 3,
            mapping: (0..5).collect(),
            anchor: 4,
        };
        assert!(!verify_witness(&g, &w));
    }

    #[test]
    fn not_p9_free_is_diagnosed() {
        // a tree: two a3 subtrees joined at vertex 18, each side with a long tail
        let p = vec![
            vec![], vec![], vec![1], vec![0, 2], vec![], vec![], vec![5], vec![4, 6], vec![3, 4],
            vec![], vec![], vec![10], vec![9, 11], vec![], vec![], vec![14], vec![13, 15], vec![12, 13],
            vec![8, 12],
        ];
        let run = run_colorer(EngineKind::bicolormax(), &p).unwrap();
        assert_eq!(run.coloring.get(18), Some(ColorLabel::a(4)));
        assert_eq!(children_of(&run, 18), Ok((8, 17)));
        assert_eq!(grandchildren_of(&run, 18), Err(Error::NotP9Free(18)));
        // the a3 vertices below are fine
        assert!(grandchildren_of(&run, 8).is_ok());
    }

    #[test]
    fn full_tree_needs_index_2i() {
        let run = hand_run();
        assert_eq!(full_tree_witness(&run, 3, 1).map(|w| w.mapping), Ok(vec![3]));
        assert!(matches!(full_tree_witness(&run, 3, 2), Err(Error::Precondition(_))));
    }
}

//! The rooted bipartite family `X_k`.
//!
//! `X_1` is a single vertex, `X_2` a single edge. For `k >= 3`, `X_k` is two
//! disjoint copies of `X_{k-1}` plus a new root adjacent to the root side of
//! the first copy and the non-root side of the second.
//!
//! Vertex layout of `build_xk(k)` for `k >= 3`: the first copy occupies
//! `0..s`, the second `s..2s`, and the root is `2s`, where `s = |X_{k-1}|`.
//! For `X_2` the non-root vertex is 0 and the root is 1.

use crate::error::{Error, Result};
use crate::graph::{Adjacency, SimpleGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBipartiteGraph {
    graph: SimpleGraph,
    root: VertexId,
    on_root_side: Vec<bool>,
}

impl RootedBipartiteGraph {
    pub fn new(graph: SimpleGraph, root: VertexId, on_root_side: Vec<bool>) -> Self {
        RootedBipartiteGraph { graph, root, on_root_side }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn len(&self) -> usize {
        self.on_root_side.len()
    }

    pub fn is_empty(&self) -> bool {
        self.on_root_side.is_empty()
    }

    pub fn is_root_side(&self, v: VertexId) -> bool {
        self.on_root_side[v]
    }

    pub fn root_side(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| self.on_root_side[v]).collect()
    }

    pub fn non_root_side(&self) -> Vec<VertexId> {
        (0..self.len()).filter(|&v| !self.on_root_side[v]).collect()
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }
}

impl Adjacency for RootedBipartiteGraph {
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn neighbors(&self, v: VertexId) -> &[VertexId] {
        self.graph.neighbors(v)
    }
}

/// `|X_k|`: 1, 2, then `2|X_{k-1}| + 1`.
pub fn xk_size(k: usize) -> usize {
    match k {
        0 => 0,
        1 => 1,
        2 => 2,
        _ => 2 * xk_size(k - 1) + 1,
    }
}

/// Builds `X_k`. Panics if `k == 0`.
pub fn build_xk(k: usize) -> RootedBipartiteGraph {
    assert!(k >= 1, "X_k is defined for k >= 1");
    match k {
        1 => RootedBipartiteGraph::new(SimpleGraph::new(1), 0, vec![true]),
        2 => RootedBipartiteGraph::new(SimpleGraph::from_edges(2, &[(0, 1)]), 1, vec![false, true]),
        _ => {
            let sub = build_xk(k - 1);
            let s = sub.len();
            let root = 2 * s;
            let mut edges = Vec::new();
            for (u, w) in sub.graph.edges() {
                edges.push((u, w));
                edges.push((s + u, s + w));
            }
            let mut on_root_side = vec![false; 2 * s + 1];
            for v in 0..s {
                // first copy flips, second copy keeps its orientation
                on_root_side[v] = !sub.on_root_side[v];
                on_root_side[s + v] = sub.on_root_side[v];
                if sub.on_root_side[v] {
                    edges.push((v, root));
                } else {
                    edges.push((s + v, root));
                }
            }
            on_root_side[root] = true;
            RootedBipartiteGraph::new(SimpleGraph::from_edges(2 * s + 1, &edges), root, on_root_side)
        }
    }
}

/// Placement of one copy `Y_i` of `X_i` inside `X_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyImage {
    pub order: usize,
    /// `map[a]` is the `X_k` vertex playing vertex `a` of `build_xk(order)`.
    pub map: Vec<VertexId>,
    /// True iff the copy's root side lies in the root side of `X_k`.
    pub root_side_up: bool,
}

/// Disjoint copies `Y_1, ..., Y_{k-1}` inside `X_k`, `copies[i - 1] = Y_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingPlan {
    pub k: usize,
    pub copies: Vec<CopyImage>,
}

/// Places `Y_1..Y_{k-1}` in `X_k` so that `Y_i`'s root side sits on the root
/// side of `X_k` exactly when `alpha[i - 1]` is set.
pub fn embed_copies(k: usize, alpha: &[bool]) -> Result<EmbeddingPlan> {
    if k < 2 {
        return Err(Error::Precondition("copy embedding needs k >= 2".into()));
    }
    if alpha.len() != k - 1 {
        return Err(Error::LengthMismatch {
            expected: k - 1,
            actual: alpha.len(),
        });
    }
    Ok(EmbeddingPlan {
        k,
        copies: embed_rec(k, alpha),
    })
}

fn embed_rec(k: usize, alpha: &[bool]) -> Vec<CopyImage> {
    if k == 2 {
        let map = if alpha[0] { vec![1] } else { vec![0] };
        return vec![CopyImage { order: 1, map, root_side_up: alpha[0] }];
    }
    let s = xk_size(k - 1);
    let last = alpha[k - 2];
    let rest = &alpha[..k - 2];
    let (mut copies, top) = if last {
        // second copy keeps orientation and becomes Y_{k-1}; recurse into the flipped first copy
        let flipped: Vec<bool> = rest.iter().map(|b| !b).collect();
        let inner = embed_rec(k - 1, &flipped)
            .into_iter()
            .map(|c| CopyImage {
                root_side_up: !c.root_side_up,
                ..c
            })
            .collect::<Vec<_>>();
        (inner, (s..2 * s).collect::<Vec<_>>())
    } else {
        let inner = embed_rec(k - 1, rest)
            .into_iter()
            .map(|c| CopyImage {
                map: c.map.iter().map(|v| v + s).collect(),
                ..c
            })
            .collect::<Vec<_>>();
        (inner, (0..s).collect::<Vec<_>>())
    };
    copies.push(CopyImage {
        order: k - 1,
        map: top,
        root_side_up: last,
    });
    copies
}

/// Checks that every copy is an induced, correctly oriented `X_i`, and that
/// the copies are pairwise disjoint with no edges between them.
pub fn verify_embedding(xk: &RootedBipartiteGraph, plan: &EmbeddingPlan) -> bool {
    if plan.copies.len() + 1 != plan.k || xk.len() != xk_size(plan.k) {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; xk.len()];
    for (idx, copy) in plan.copies.iter().enumerate() {
        if copy.order != idx + 1 || copy.map.len() != xk_size(copy.order) {
            return false;
        }
        for &v in &copy.map {
            if v >= xk.len() || owner[v].is_some() {
                return false;
            }
            owner[v] = Some(idx);
        }
        let pattern = build_xk(copy.order);
        for a in 0..pattern.len() {
            let up = pattern.is_root_side(a) == copy.root_side_up;
            if xk.is_root_side(copy.map[a]) != up {
                return false;
            }
            for b in a + 1..pattern.len() {
                if pattern.has_edge(a, b) != xk.has_edge(copy.map[a], copy.map[b]) {
                    return false;
                }
            }
        }
    }
    // no edge between distinct copies
    xk.edges().into_iter().all(|(u, w)| match (owner[u], owner[w]) {
        (Some(x), Some(y)) => x == y,
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_members() {
        let x1 = build_xk(1);
        assert_eq!(x1.len(), 1);
        assert_eq!(x1.root_side(), vec![0]);

        let x2 = build_xk(2);
        assert_eq!(x2.edge_count(), 1);
        assert_eq!(x2.root(), 1);

        let x3 = build_xk(3);
        assert_eq!(x3.len(), 5);
        assert_eq!(x3.root_side().len(), 3);
        assert_eq!(x3.non_root_side().len(), 2);
        assert_eq!(x3.neighbors(x3.root()).len(), 2);

        let x4 = build_xk(4);
        assert_eq!(x4.len(), 11);
        assert_eq!(x4.neighbors(x4.root()).len(), 5);
    }

    #[test]
    fn sides_are_a_proper_bipartition_and_root_is_universal() {
        for k in 1..=9 {
            let x = build_xk(k);
            assert!(x.edges().iter().all(|&(u, w)| x.is_root_side(u) != x.is_root_side(w)));
            let mut nbrs = x.neighbors(x.root()).to_vec();
            nbrs.sort_unstable();
            assert_eq!(nbrs, x.non_root_side(), "k={k}");
            assert_eq!(crate::graph::connected_components(&x).len(), 1);
        }
    }

    #[test]
    fn base_embeddings() {
        let plan = embed_copies(2, &[true]).unwrap();
        assert_eq!(plan.copies[0].map, vec![build_xk(2).root()]);
        let plan = embed_copies(2, &[false]).unwrap();
        assert_eq!(plan.copies[0].map, vec![0]);
        assert_eq!(
            embed_copies(4, &[true]),
            Err(Error::LengthMismatch { expected: 3, actual: 1 })
        );
    }

    #[test]
    fn verifier_rejects_overlap_and_flipped_orientation() {
        let xk = build_xk(4);
        let good = embed_copies(4, &[true, false, true]).unwrap();
        assert!(verify_embedding(&xk, &good));

        let mut flipped = good.clone();
        flipped.copies[1].root_side_up = !flipped.copies[1].root_side_up;
        assert!(!verify_embedding(&xk, &flipped));

        let mut overlap = good.clone();
        overlap.copies[0].map = vec![overlap.copies[1].map[0]];
        assert!(!verify_embedding(&xk, &overlap));
    }
}

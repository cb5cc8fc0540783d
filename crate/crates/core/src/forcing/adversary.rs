//! Adaptive adversaries that play against any [`Colorer`](crate::engines::Colorer).

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::RunRecord;
use crate::engines::{EngineKind, Game};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, ColorLabel, SimpleGraph, VertexId};
use crate::generate::presentation_from_order;

use super::xk::{build_xk, embed_copies, RootedBipartiteGraph};

/// A finished `X_k` forcing game together with the embedding of every
/// presented vertex into a concrete `build_xk(k)`.
#[derive(Debug, Clone)]
pub struct ForcedGame {
    pub record: RunRecord,
    pub xk: RootedBipartiteGraph,
    /// `embedding[v]` is the `X_k` vertex played by presented vertex `v`.
    pub embedding: Vec<VertexId>,
}

impl ForcedGame {
    /// True iff the presented graph maps injectively and inducedly into `X_k`.
    pub fn embedding_is_induced(&self) -> bool {
        let g = &self.record.graph;
        let n = g.len();
        if self.embedding.len() != n {
            return false;
        }
        let distinct: BTreeSet<_> = self.embedding.iter().collect();
        if distinct.len() != n || self.embedding.iter().any(|&x| x >= self.xk.len()) {
            return false;
        }
        (0..n).all(|u| {
            (u + 1..n).all(|w| g.has_edge(u, w) == self.xk.has_edge(self.embedding[u], self.embedding[w]))
        })
    }
}

/// Forces at least `k` colors out of `engine` on an induced subgraph of
/// `X_k` with `2^(k-1)` vertices.
pub fn adversary_force(k: usize, engine: EngineKind) -> Result<ForcedGame> {
    if k == 0 {
        return Err(Error::Precondition("forcing needs k >= 1".into()));
    }
    let patterns: Vec<RootedBipartiteGraph> = (0..=k).map(|i| build_xk(i.max(1))).collect();
    let mut game = Game::new(engine);
    let pairs = force_xk(&mut game, k, &patterns)?;
    let mut embedding = vec![0; pairs.len()];
    for (v, x) in pairs {
        embedding[v] = x;
    }
    Ok(ForcedGame {
        record: game.finish("xk", k as u64, 0),
        xk: patterns[k].clone(),
        embedding,
    })
}

/// Plays `X_k` on fresh vertices; returns `(presented id, X_k vertex)` pairs.
fn force_xk(
    game: &mut Game,
    k: usize,
    patterns: &[RootedBipartiteGraph],
) -> Result<Vec<(VertexId, VertexId)>> {
    if k == 1 {
        let (v, _) = game.present(&[])?;
        return Ok(vec![(v, 0)]);
    }
    let copies = (1..k)
        .map(|i| force_xk(game, i, patterns))
        .collect::<Result<Vec<_>>>()?;

    let mut taken: BTreeSet<ColorLabel> = BTreeSet::new();
    let mut alpha = Vec::with_capacity(k - 1);
    for (idx, copy) in copies.iter().enumerate() {
        // copies are presented contiguously, so the first free pair is the earliest
        let &(v, x) = copy
            .iter()
            .find(|(v, _)| !taken.contains(&game.color(*v)))
            .ok_or_else(|| Error::ClaimViolation {
                vertex: copy[0].0,
                reason: format!("copy of X_{} carries fewer than {} fresh colors", idx + 1, idx + 1),
            })?;
        taken.insert(game.color(v));
        alpha.push(!patterns[idx + 1].is_root_side(x));
    }

    let plan = embed_copies(k, &alpha)?;
    let xk = &patterns[k];
    let mut pairs = Vec::with_capacity(1 << (k - 1));
    for (copy, image) in copies.iter().zip(&plan.copies) {
        pairs.extend(copy.iter().map(|&(v, x)| (v, image.map[x])));
    }
    let neighbors: Vec<VertexId> = pairs
        .iter()
        .filter(|&&(_, x)| !xk.is_root_side(x))
        .map(|&(v, _)| v)
        .collect();
    let (root, _) = game.present(&neighbors)?;
    pairs.push((root, xk.root()));
    Ok(pairs)
}

/// Crown graph presented pair by pair: `u_i` sees `w_1..w_{i-1}` and `w_i`
/// sees `u_1..u_{i-1}`. Ids: `u_i = 2(i-1)`, `w_i = 2(i-1)+1`.
pub fn crown_presentation(pairs: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::with_capacity(2 * pairs);
    for i in 0..pairs {
        out.push((0..i).map(|j| 2 * j + 1).collect());
        out.push((0..i).map(|j| 2 * j).collect());
    }
    out
}

/// The crown graph `K_{p,p}` minus a perfect matching, in the vertex
/// numbering of [`crown_presentation`].
pub fn crown_graph(pairs: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(2 * pairs);
    for (v, nbrs) in crown_presentation(pairs).into_iter().enumerate() {
        for u in nbrs {
            g.add_edge(u, v);
        }
    }
    g
}

/// The crown graph presented in a seeded random order.
pub fn crown_shuffled(pairs: usize, seed: u64) -> Vec<Vec<VertexId>> {
    let mut order: Vec<VertexId> = (0..2 * pairs).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    presentation_from_order(&crown_graph(pairs), &order)
}

/// Forces at least `k` colors on a tree with `2^(k-1)` vertices.
///
/// Recursively builds trees forcing `1..k-1` colors, picks one vertex from
/// each carrying pairwise distinct colors, and joins them through a new
/// vertex. With `seed` set the representative is drawn at random among the
/// admissible ones; otherwise the earliest is used.
pub fn forest_adversary(k: usize, engine: EngineKind, seed: Option<u64>) -> Result<RunRecord> {
    if k == 0 {
        return Err(Error::Precondition("forcing needs k >= 1".into()));
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut game = Game::new(engine);
    force_tree(&mut game, k, rng.as_mut())?;
    Ok(game.finish("forest", k as u64, seed.unwrap_or(0)))
}

fn force_tree(game: &mut Game, k: usize, mut rng: Option<&mut ChaCha8Rng>) -> Result<Vec<VertexId>> {
    if k == 1 {
        let (v, _) = game.present(&[])?;
        return Ok(vec![v]);
    }
    let mut trees = Vec::with_capacity(k - 1);
    for i in 1..k {
        trees.push(force_tree(game, i, rng.as_deref_mut())?);
    }
    let mut taken = BTreeSet::new();
    let mut reps = Vec::with_capacity(k - 1);
    for tree in &trees {
        let admissible: Vec<VertexId> = tree
            .iter()
            .copied()
            .filter(|&v| !taken.contains(&game.color(v)))
            .collect();
        let pick = match rng.as_deref_mut() {
            Some(r) => admissible.choose(r).copied(),
            None => admissible.first().copied(),
        }
        .ok_or_else(|| Error::ClaimViolation {
            vertex: tree[0],
            reason: "subtree carries too few fresh colors".into(),
        })?;
        taken.insert(game.color(pick));
        reps.push(pick);
    }
    let (root, _) = game.present(&reps)?;
    let mut all: Vec<VertexId> = trees.into_iter().flatten().collect();
    all.push(root);
    Ok(all)
}

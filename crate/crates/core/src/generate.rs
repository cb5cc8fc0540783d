//! Seeded random bipartite inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::is_pk_free;
use crate::graph::{Adjacency, SimpleGraph, VertexId};

/// Neighbor lists for presenting `graph` in `order`: step `t` introduces
/// `order[t]`, and vertices are renamed to their arrival rank.
pub fn presentation_from_order<G: Adjacency + ?Sized>(graph: &G, order: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut rank = vec![usize::MAX; graph.vertex_count()];
    for (t, &v) in order.iter().enumerate() {
        rank[v] = t;
    }
    order
        .iter()
        .enumerate()
        .map(|(t, &v)| {
            let mut nbrs: Vec<VertexId> = graph
                .neighbors(v)
                .iter()
                .map(|&w| rank[w])
                .filter(|&r| r < t)
                .collect();
            nbrs.sort_unstable();
            nbrs
        })
        .collect()
}

/// A random bipartite instance: the graph and a seeded presentation of it.
#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub graph: SimpleGraph,
    pub presentation: Vec<Vec<VertexId>>,
}

/// Splits `n` vertices into two random sides, adds each cross edge with
/// probability `p`, and presents the result in a random order.
pub fn random_bipartite(n: usize, p: f64, rng: &mut ChaCha8Rng) -> RandomInstance {
    let left = if n == 0 { 0 } else { rng.gen_range(0..=n) };
    let mut graph = SimpleGraph::new(n);
    for u in 0..left {
        for w in left..n {
            if rng.gen_bool(p) {
                graph.add_edge(u, w);
            }
        }
    }
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    let presentation = presentation_from_order(&graph, &order);
    RandomInstance { graph, presentation }
}

/// Random bipartite instance without an induced `P_9`, by rejection.
pub fn random_p9_free(n: usize, p: f64, seed: u64) -> RandomInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let inst = random_bipartite(n, p, &mut rng);
        if is_pk_free(&inst.graph, 9) {
            return inst;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentation_renames_by_arrival() {
        let g = SimpleGraph::path(3);
        assert_eq!(presentation_from_order(&g, &[1, 0, 2]), vec![vec![], vec![0], vec![0]]);
        assert_eq!(presentation_from_order(&g, &[0, 2, 1]), vec![vec![], vec![], vec![0, 1]]);
    }

    #[test]
    fn seeded_and_bipartite() {
        let a = random_p9_free(12, 0.3, 7);
        let b = random_p9_free(12, 0.3, 7);
        assert_eq!(a.presentation, b.presentation);
        assert!(a.graph.is_bipartite());
        assert!(is_pk_free(&a.graph, 9));
        assert_eq!(a.presentation.iter().map(Vec::len).sum::<usize>(), a.graph.edge_count());
    }
}

use crate::graph::{Adjacency, VertexId};

/// An induced path on `len` vertices, starting at `endpoint` when given.
pub fn find_induced_path<G: Adjacency + ?Sized>(
    graph: &G,
    len: usize,
    endpoint: Option<VertexId>,
) -> Option<Vec<VertexId>> {
    let all = vec![true; graph.vertex_count()];
    find_induced_path_within(graph, &all, len, endpoint)
}

/// Like [`find_induced_path`] but only through vertices with `allowed[v]`,
/// i.e. inside the induced subgraph on that set.
pub fn find_induced_path_within<G: Adjacency + ?Sized>(
    graph: &G,
    allowed: &[bool],
    len: usize,
    endpoint: Option<VertexId>,
) -> Option<Vec<VertexId>> {
    if len == 0 {
        return None;
    }
    let n = graph.vertex_count();
    let starts: Vec<VertexId> = match endpoint {
        Some(v) if v < n && allowed[v] => vec![v],
        Some(_) => return None,
        None => (0..n).filter(|&v| allowed[v]).collect(),
    };
    // hits[w] counts path vertices adjacent to w
    let mut hits = vec![0usize; n];
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(len);
    for s in starts {
        push(graph, &mut path, &mut on_path, &mut hits, s);
        if extend(graph, allowed, len, &mut path, &mut on_path, &mut hits) {
            return Some(path);
        }
        pop(graph, &mut path, &mut on_path, &mut hits);
    }
    None
}

fn push<G: Adjacency + ?Sized>(
    graph: &G,
    path: &mut Vec<VertexId>,
    on_path: &mut [bool],
    hits: &mut [usize],
    v: VertexId,
) {
    path.push(v);
    on_path[v] = true;
    for &w in graph.neighbors(v) {
        hits[w] += 1;
    }
}

fn pop<G: Adjacency + ?Sized>(graph: &G, path: &mut Vec<VertexId>, on_path: &mut [bool], hits: &mut [usize]) {
    let v = path.pop().expect("non-empty path");
    on_path[v] = false;
    for &w in graph.neighbors(v) {
        hits[w] -= 1;
    }
}

fn extend<G: Adjacency + ?Sized>(
    graph: &G,
    allowed: &[bool],
    len: usize,
    path: &mut Vec<VertexId>,
    on_path: &mut [bool],
    hits: &mut [usize],
) -> bool {
    if path.len() == len {
        return true;
    }
    let last = *path.last().expect("non-empty path");
    for &w in graph.neighbors(last) {
        // w sees the last vertex; it must see no other path vertex
        if !allowed[w] || on_path[w] || hits[w] != 1 {
            continue;
        }
        push(graph, path, on_path, hits, w);
        if extend(graph, allowed, len, path, on_path, hits) {
            return true;
        }
        pop(graph, path, on_path, hits);
    }
    false
}

/// True iff the graph has no induced path on `k` vertices.
pub fn is_pk_free<G: Adjacency + ?Sized>(graph: &G, k: usize) -> bool {
    find_induced_path(graph, k, None).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::build_xk;
    use crate::graph::SimpleGraph;

    fn is_induced_path(g: &SimpleGraph, p: &[VertexId]) -> bool {
        (0..p.len()).all(|a| (a + 1..p.len()).all(|b| g.has_edge(p[a], p[b]) == (b == a + 1)))
    }

    #[test]
    fn reference_examples() {
        let p9 = SimpleGraph::path(9);
        let found = find_induced_path(&p9, 9, None).unwrap();
        assert!(is_induced_path(&p9, &found));
        assert!(!is_pk_free(&p9, 9));

        assert_eq!(find_induced_path(build_xk(4).graph(), 6, None), None);
        assert!(is_pk_free(build_xk(5).graph(), 6));

        let c8 = SimpleGraph::cycle(8);
        let p7 = find_induced_path(&c8, 7, None).unwrap();
        assert!(is_induced_path(&c8, &p7));
        assert_eq!(find_induced_path(&c8, 8, None), None);

        assert!(is_pk_free(&SimpleGraph::new(1), 2));
    }

    #[test]
    fn endpoint_is_respected() {
        // 0-1-2-3 plus pendant 4 at 1
        let g = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
        assert_eq!(find_induced_path(&g, 4, Some(0)), Some(vec![0, 1, 2, 3]));
        assert_eq!(find_induced_path(&g, 4, Some(2)), None);
        assert_eq!(find_induced_path(&g, 4, Some(4)), Some(vec![4, 1, 2, 3]));
        let allowed = [true, true, true, false, true];
        assert_eq!(find_induced_path_within(&g, &allowed, 4, None), None);
        assert_eq!(find_induced_path_within(&g, &allowed, 3, Some(0)), Some(vec![0, 1, 2]));
    }

    #[test]
    fn chords_are_rejected() {
        // C4 has no induced P4
        assert_eq!(find_induced_path(&SimpleGraph::cycle(4), 4, None), None);
        assert!(find_induced_path(&SimpleGraph::cycle(4), 3, None).is_some());
    }
}

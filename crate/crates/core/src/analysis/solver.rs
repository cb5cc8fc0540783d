//! Exact on-line chromatic number of tiny graphs by game-tree search.
//!
//! The adversary reveals `G` one vertex at a time; the algorithm sees only
//! the colored graph revealed so far. A position is that colored graph, and
//! its value only depends on it up to isomorphism and renaming of colors, so
//! positions are memoized under a canonical code.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::Adjacency;

pub const DEFAULT_SIZE_LIMIT: usize = 7;
/// Largest size the canonical code can hold.
const HARD_LIMIT: usize = 12;
const INF: usize = usize::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub budget: usize,
    pub size_limit: usize,
}

impl SolverConfig {
    pub fn new(budget: usize) -> Self {
        SolverConfig {
            budget,
            size_limit: DEFAULT_SIZE_LIMIT,
        }
    }

    pub fn solve<G: Adjacency + ?Sized>(&self, graph: &G) -> Result<usize> {
        let n = graph.vertex_count();
        let limit = self.size_limit.min(HARD_LIMIT);
        if n > limit {
            return Err(Error::SizeLimit { size: n, limit });
        }
        if self.budget == 0 {
            return Err(Error::Precondition("budget must be at least 1".into()));
        }
        let host: Vec<u16> = (0..n)
            .map(|v| graph.neighbors(v).iter().fold(0u16, |m, &w| m | 1 << w))
            .collect();
        let mut search = Search {
            host,
            budget: self.budget,
            memo: HashMap::new(),
        };
        match search.value(&Position::default()) {
            INF => Err(Error::BudgetExceeded(self.budget)),
            v => Ok(v),
        }
    }
}

/// `min over algorithms, max over presentation orders` of the colors used on
/// `graph`, with at most `budget` colors available to the algorithm.
pub fn online_chromatic_number<G: Adjacency + ?Sized>(graph: &G, budget: usize) -> Result<usize> {
    SolverConfig::new(budget).solve(graph)
}

/// Revealed graph with colors `0..`.
#[derive(Debug, Clone, Default)]
struct Position {
    adj: Vec<u16>,
    color: Vec<u8>,
}

impl Position {
    fn len(&self) -> usize {
        self.adj.len()
    }

    fn colors_used(&self) -> usize {
        self.color.iter().map(|&c| c as usize + 1).max().unwrap_or(0)
    }

    fn extended(&self, nbrs: u16, color: u8) -> Position {
        let t = self.len();
        let mut next = self.clone();
        for (i, a) in next.adj.iter_mut().enumerate() {
            if nbrs >> i & 1 == 1 {
                *a |= 1 << t;
            }
        }
        next.adj.push(nbrs);
        next.color.push(color);
        next
    }
}

struct Search {
    host: Vec<u16>,
    budget: usize,
    memo: HashMap<u128, usize>,
}

impl Search {
    fn value(&mut self, pos: &Position) -> usize {
        if pos.len() == self.host.len() {
            return pos.colors_used();
        }
        let key = canonical_code(pos);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let used = pos.colors_used();
        let mut worst = 0;
        for nbrs in self.adversary_moves(pos) {
            let blocked = (0..pos.len())
                .filter(|&i| nbrs >> i & 1 == 1)
                .fold(0u32, |m, i| m | 1 << pos.color[i]);
            let mut best = INF;
            // colors are kept dense, so `used` is the one fresh color worth trying
            let fresh = (used < self.budget).then_some(used);
            for c in (0..used).filter(|&c| blocked >> c & 1 == 0).chain(fresh) {
                best = best.min(self.value(&pos.extended(nbrs, c as u8)));
                if best <= worst {
                    break;
                }
            }
            worst = worst.max(best);
            if worst == INF {
                break;
            }
        }
        self.memo.insert(key, worst);
        worst
    }

    /// Every neighborhood the next vertex can have, over all induced
    /// embeddings of the revealed graph into the host.
    fn adversary_moves(&self, pos: &Position) -> BTreeSet<u16> {
        let mut moves = BTreeSet::new();
        let mut image = Vec::with_capacity(pos.len());
        self.embed(pos, &mut image, 0, &mut moves);
        moves
    }

    fn embed(&self, pos: &Position, image: &mut Vec<usize>, taken: u16, moves: &mut BTreeSet<u16>) {
        let t = image.len();
        if t == pos.len() {
            for g in (0..self.host.len()).filter(|&g| taken >> g & 1 == 0) {
                let nbrs = (0..t)
                    .filter(|&i| self.host[image[i]] >> g & 1 == 1)
                    .fold(0u16, |m, i| m | 1 << i);
                moves.insert(nbrs);
            }
            return;
        }
        for g in (0..self.host.len()).filter(|&g| taken >> g & 1 == 0) {
            let fits = (0..t).all(|i| (pos.adj[t] >> i & 1 == 1) == (self.host[image[i]] >> g & 1 == 1));
            if fits {
                image.push(g);
                self.embed(pos, image, taken | 1 << g, moves);
                image.pop();
            }
        }
    }
}

/// Code shared exactly by positions that are isomorphic as colored graphs
/// up to a renaming of colors.
fn canonical_code(pos: &Position) -> u128 {
    let n = pos.len();
    let cells = refined_cells(pos);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut best = u128::MAX;
    permute_cells(&cells, 0, &mut order, &mut |order| {
        best = best.min(encode(pos, order));
    });
    best
}

/// Vertices grouped into cells of a stable refinement, cells in a canonical order.
fn refined_cells(pos: &Position) -> Vec<Vec<usize>> {
    let n = pos.len();
    let nbrs = |v: usize| (0..n).filter(move |&w| pos.adj[v] >> w & 1 == 1);
    let mates = |v: usize| (0..n).filter(move |&w| w != v && pos.color[w] == pos.color[v]);
    let mut label: Vec<usize> = vec![0; n];
    let mut classes = 1;
    loop {
        let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut a: Vec<usize> = nbrs(v).map(|w| label[w]).collect();
                let mut b: Vec<usize> = mates(v).map(|w| label[w]).collect();
                a.sort_unstable();
                b.sort_unstable();
                (label[v], a, b)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>, Vec<usize>)> = sig.iter().collect();
        let rank: Vec<_> = distinct.into_iter().collect();
        let next: Vec<usize> = sig
            .iter()
            .map(|s| rank.binary_search(&s).expect("signature present"))
            .collect();
        let count = rank.len();
        label = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[label[v]].push(v);
    }
    cells
}

fn permute_cells(cells: &[Vec<usize>], at: usize, order: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if at == cells.len() {
        visit(order);
        return;
    }
    let mut cell = cells[at].clone();
    let len = cell.len();
    heap_permutations(&mut cell, len, &mut |perm| {
        let base = order.len();
        order.extend_from_slice(perm);
        permute_cells(cells, at + 1, order, visit);
        order.truncate(base);
    });
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn encode(pos: &Position, order: &[usize]) -> u128 {
    let n = order.len();
    let mut code: u128 = n as u128;
    for p in 0..n {
        for q in p + 1..n {
            code = code << 1 | u128::from(pos.adj[order[p]] >> order[q] & 1);
        }
    }
    let mut rename = [u8::MAX; HARD_LIMIT];
    let mut next = 0u8;
    for &v in order {
        let c = &mut rename[pos.color[v] as usize];
        if *c == u8::MAX {
            *c = next;
            next += 1;
        }
        code = code << 4 | u128::from(*c);
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::build_xk;
    use crate::graph::SimpleGraph;

    #[test]
    fn small_values() {
        assert_eq!(online_chromatic_number(&SimpleGraph::new(1), 3), Ok(1));
        assert_eq!(online_chromatic_number(&SimpleGraph::path(2), 3), Ok(2));
        assert_eq!(online_chromatic_number(&SimpleGraph::path(3), 3), Ok(2));
        assert_eq!(online_chromatic_number(&SimpleGraph::path(4), 4), Ok(3));
        assert_eq!(online_chromatic_number(&SimpleGraph::new(4), 4), Ok(1));
        assert_eq!(online_chromatic_number(build_xk(3).graph(), 5), Ok(3));
    }

    #[test]
    fn budget_and_size_limits() {
        assert_eq!(online_chromatic_number(&SimpleGraph::path(4), 2), Err(Error::BudgetExceeded(2)));
        assert_eq!(
            online_chromatic_number(&SimpleGraph::path(8), 4),
            Err(Error::SizeLimit { size: 8, limit: 7 })
        );
        let wide = SolverConfig { budget: 4, size_limit: 8 };
        assert_eq!(wide.solve(&SimpleGraph::path(8)), Ok(3));
    }

    #[test]
    fn canonical_code_ignores_labels_and_color_names() {
        let a = Position::default().extended(0, 0).extended(1, 1).extended(0, 0);
        // same colored graph with vertices and colors renamed
        let b = Position::default().extended(0, 1).extended(0, 1).extended(0b10, 0);
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let c = Position::default().extended(0, 0).extended(1, 1).extended(0, 2);
        assert_ne!(canonical_code(&a), canonical_code(&c));
    }
}

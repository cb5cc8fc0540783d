//! Single-palette baselines. Integer colors are carried as palette A.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{Adjacency, ColorLabel, VertexId};

use super::{Colorer, ColorerState, StepOutcome};

fn least_absent(taken: &BTreeSet<u32>) -> u32 {
    (1..).find(|c| !taken.contains(c)).expect("finite set")
}

fn neighbor_indices(state: &ColorerState, v: VertexId) -> BTreeSet<u32> {
    state
        .graph
        .neighbors(v)
        .iter()
        .filter_map(|&u| state.coloring.get(u))
        .map(|c| c.index)
        .collect()
}

/// Least color absent from the neighborhood.
#[derive(Debug, Clone, Default)]
pub struct FirstFit {
    state: ColorerState,
}

impl FirstFit {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Colorer for FirstFit {
    fn name(&self) -> &'static str {
        "firstfit"
    }

    fn state(&self) -> &ColorerState {
        &self.state
    }

    fn step(&mut self, neighbors: &[VertexId]) -> Result<StepOutcome> {
        let v = self.state.graph.add_vertex(neighbors)?;
        let color = ColorLabel::a(least_absent(&neighbor_indices(&self.state, v)));
        self.state.commit(v, color);
        Ok(StepOutcome { vertex: v, color, trace: None })
    }
}

/// Least color absent from the opposite side of the new vertex's component.
#[derive(Debug, Clone, Default)]
pub struct Cbip {
    state: ColorerState,
}

impl Cbip {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Colorer for Cbip {
    fn name(&self) -> &'static str {
        "cbip"
    }

    fn state(&self) -> &ColorerState {
        &self.state
    }

    fn step(&mut self, neighbors: &[VertexId]) -> Result<StepOutcome> {
        let v = self.state.graph.add_vertex(neighbors)?;
        let graph = &self.state.graph;
        let mut seen = vec![false; graph.len()];
        let mut taken = BTreeSet::new();
        seen[v] = true;
        let mut queue = VecDeque::from([(v, false)]);
        while let Some((u, opposite)) = queue.pop_front() {
            if opposite {
                if let Some(c) = self.state.coloring.get(u) {
                    taken.insert(c.index);
                }
            }
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back((w, !opposite));
                }
            }
        }
        let color = ColorLabel::a(least_absent(&taken));
        self.state.commit(v, color);
        Ok(StepOutcome { vertex: v, color, trace: None })
    }
}

/// Picks uniformly among proper colors in `1..=max+1` from a seeded stream.
#[derive(Debug, Clone)]
pub struct RandomProper {
    state: ColorerState,
    rng: ChaCha8Rng,
}

impl RandomProper {
    pub fn new(seed: u64) -> Self {
        RandomProper {
            state: ColorerState::default(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Colorer for RandomProper {
    fn name(&self) -> &'static str {
        "random"
    }

    fn state(&self) -> &ColorerState {
        &self.state
    }

    fn step(&mut self, neighbors: &[VertexId]) -> Result<StepOutcome> {
        let v = self.state.graph.add_vertex(neighbors)?;
        let taken = neighbor_indices(&self.state, v);
        let top = self.state.max_index_used + 1;
        let index = (1..=top)
            .filter(|c| !taken.contains(c))
            .choose(&mut self.rng)
            .expect("top is never taken");
        let color = ColorLabel::a(index);
        self.state.commit(v, color);
        Ok(StepOutcome { vertex: v, color, trace: None })
    }
}

//! Verification machinery for finished runs.

mod paths;
mod solver;
mod structure;

pub use paths::{find_induced_path, find_induced_path_within, is_pk_free};
pub use solver::{online_chromatic_number, SolverConfig, DEFAULT_SIZE_LIMIT};
pub use structure::{
    children_of, extract_x_witness, full_tree_witness, grandchildren_of, is_complete_s, isqrt_half, s_set,
    theorem_consistency, universal_neighbor, verify_witness, TheoremReport, WitnessMap,
};

use crate::engines::{run_presentation, BranchTrace, EngineKind};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, OnlineBipartiteGraph, PartialColoring};
use crate::transcript::GameTranscript;

/// A finished game: transcript plus the final graph and coloring.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub transcript: GameTranscript,
    pub graph: OnlineBipartiteGraph,
    pub coloring: PartialColoring,
}

impl RunRecord {
    /// Rebuilds a record from a transcript alone, without running an engine.
    pub fn from_transcript(transcript: GameTranscript) -> Result<Self> {
        let mut graph = OnlineBipartiteGraph::new();
        let mut coloring = PartialColoring::new();
        for step in &transcript.steps {
            let v = graph.add_vertex(&step.neighbors)?;
            coloring.assign(v, step.color);
        }
        Ok(RunRecord { transcript, graph, coloring })
    }

    /// Engine named in the transcript header, seeded from the header.
    pub fn engine(&self) -> Result<EngineKind> {
        let t = &self.transcript;
        EngineKind::from_name(&t.engine, t.engine_seed.unwrap_or(t.seed))
    }

    /// Plays the presentation through the named engine again and checks
    /// that every color matches. Returns the fresh record, traces included.
    pub fn replay(&self) -> Result<RunRecord> {
        let t = &self.transcript;
        let fresh = run_presentation(self.engine()?, &t.presentation(), &t.adversary, t.param, t.seed)?;
        for (step, (old, new)) in t.steps.iter().zip(&fresh.transcript.steps).enumerate() {
            if old.color != new.color {
                return Err(Error::ReplayMismatch {
                    step,
                    recorded: old.color.to_string(),
                    replayed: new.color.to_string(),
                });
            }
        }
        Ok(fresh)
    }

    /// Per-vertex branch traces; `None` entries for baselines or parsed runs.
    pub fn traces(&self) -> Vec<Option<&BranchTrace>> {
        self.transcript.steps.iter().map(|s| s.trace.as_ref()).collect()
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }
}

/// True iff no edge is monochromatic. Every vertex must be colored.
pub fn check_proper<G: Adjacency + ?Sized>(graph: &G, coloring: &PartialColoring) -> Result<bool> {
    if let Some(v) = (0..graph.vertex_count()).find(|&v| coloring.get(v).is_none()) {
        return Err(Error::Uncolored(v));
    }
    Ok(coloring.is_proper(graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::run_colorer;
    use crate::graph::{ColorLabel, SimpleGraph};

    #[test]
    fn check_proper_examples() {
        let g = SimpleGraph::path(2);
        let mut c = PartialColoring::new();
        c.assign(0, ColorLabel::a(1));
        assert_eq!(check_proper(&g, &c), Err(Error::Uncolored(1)));
        c.assign(1, ColorLabel::a(1));
        assert_eq!(check_proper(&g, &c), Ok(false));
        assert_eq!(check_proper(&SimpleGraph::new(0), &PartialColoring::new()), Ok(true));
    }

    #[test]
    fn replay_reproduces_and_detects_tampering() {
        let p = vec![vec![], vec![], vec![1], vec![0, 2]];
        let run = run_colorer(EngineKind::bicolormax(), &p).unwrap();
        let again = run.replay().unwrap();
        assert_eq!(again.transcript.steps, run.transcript.steps);

        let mut bad = run.clone();
        bad.transcript.steps[3].color = ColorLabel::b(2);
        assert!(matches!(bad.replay(), Err(Error::ReplayMismatch { step: 3, .. })));
    }

    #[test]
    fn from_transcript_rebuilds_graph() {
        let p = vec![vec![], vec![0], vec![1]];
        let run = run_colorer(EngineKind::FirstFit, &p).unwrap();
        let rebuilt = RunRecord::from_transcript(run.transcript.clone()).unwrap();
        assert_eq!(rebuilt.graph.edge_count(), 2);
        assert_eq!(rebuilt.coloring, run.coloring);
    }
}

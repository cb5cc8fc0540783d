//! On-line colorers behind a common step interface.
//!
//! Every engine owns a [`ColorerState`] and colors exactly one vertex per
//! [`Colorer::step`]. [`Game`] wraps an engine, checks properness after each
//! step and records the transcript.

mod baseline;
mod bicolormax;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use baseline::{Cbip, FirstFit, RandomProper};
pub use bicolormax::{threshold_holds, BiColorMax, BiColorMaxOptions};

use crate::analysis::RunRecord;
use crate::error::{Error, Result};
use crate::graph::{Adjacency, ColorLabel, OnlineBipartiteGraph, PartialColoring, VertexId};
use crate::transcript::{GameTranscript, TranscriptStep};

/// Graph and coloring shared by every engine.
#[derive(Debug, Clone, Default)]
pub struct ColorerState {
    pub graph: OnlineBipartiteGraph,
    pub coloring: PartialColoring,
    /// Largest color index assigned so far, 0 before the first step.
    pub max_index_used: u32,
    used: BTreeSet<ColorLabel>,
}

impl ColorerState {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn commit(&mut self, v: VertexId, color: ColorLabel) {
        self.coloring.assign(v, color);
        self.max_index_used = self.max_index_used.max(color.index);
        self.used.insert(color);
    }

    pub fn uses(&self, color: ColorLabel) -> bool {
        self.used.contains(&color)
    }

    pub fn distinct_colors(&self) -> usize {
        self.used.len()
    }
}

/// Which arm of the bicolormax if-cascade fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `a_m` already on the far side: take `b_m`.
    #[serde(rename = "b_branch")]
    B,
    /// `c_m` on the far side: take `a_m`.
    AViaC,
    /// A universal witness pair exists: take `c_m`.
    #[serde(rename = "c_branch")]
    C,
    /// Nothing applies: take `a_m`.
    ADefault,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTrace {
    pub m: u32,
    /// Sizes of `I1` and `I2`, the sides of `C_m[v]`.
    pub sides: (usize, usize),
    /// Earliest vertex of `I2` colored `a_m`.
    pub a_on_far_side: Option<VertexId>,
    /// Earliest vertex of `I2` colored `c_m`.
    pub c_on_far_side: Option<VertexId>,
    /// `(u, u')` with `u'` in `I2` universal to `C_{j-1}[u]`; set on the C branch.
    pub witness: Option<(VertexId, VertexId)>,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub vertex: VertexId,
    pub color: ColorLabel,
    pub trace: Option<BranchTrace>,
}

pub trait Colorer {
    fn name(&self) -> &'static str;
    fn state(&self) -> &ColorerState;
    /// Presents a vertex adjacent to `neighbors` and fixes its color.
    fn step(&mut self, neighbors: &[VertexId]) -> Result<StepOutcome>;
}

/// Registered engines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineKind {
    BiColorMax(BiColorMaxOptions),
    FirstFit,
    Cbip,
    /// Uniform choice among proper colors `1..=max+1`.
    Random { seed: u64 },
}

impl EngineKind {
    pub const CLI_NAMES: [&'static str; 5] = ["bicolormax", "bicolormax-cwitness", "firstfit", "cbip", "random"];

    pub fn bicolormax() -> Self {
        EngineKind::BiColorMax(BiColorMaxOptions::default())
    }

    /// The three deterministic engines.
    pub fn deterministic() -> [EngineKind; 3] {
        [EngineKind::bicolormax(), EngineKind::FirstFit, EngineKind::Cbip]
    }

    pub fn name(&self) -> &'static str {
        match self {
            EngineKind::BiColorMax(o) if o.c_witness => "bicolormax-cwitness",
            EngineKind::BiColorMax(_) => "bicolormax",
            EngineKind::FirstFit => "firstfit",
            EngineKind::Cbip => "cbip",
            EngineKind::Random { .. } => "random",
        }
    }

    pub fn build(&self) -> Box<dyn Colorer> {
        match *self {
            EngineKind::BiColorMax(opts) => Box::new(BiColorMax::with_options(opts)),
            EngineKind::FirstFit => Box::new(FirstFit::new()),
            EngineKind::Cbip => Box::new(Cbip::new()),
            EngineKind::Random { seed } => Box::new(RandomProper::new(seed)),
        }
    }

    /// Engine for `name`; `seed` only matters for `random`.
    pub fn from_name(name: &str, seed: u64) -> Result<Self> {
        match name {
            "random" => Ok(EngineKind::Random { seed }),
            other => other.parse(),
        }
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bicolormax" => Ok(EngineKind::bicolormax()),
            "bicolormax-cwitness" => Ok(EngineKind::BiColorMax(BiColorMaxOptions { c_witness: true })),
            "firstfit" => Ok(EngineKind::FirstFit),
            "cbip" => Ok(EngineKind::Cbip),
            "random" => Ok(EngineKind::Random { seed: 0 }),
            other => Err(Error::UnknownEngine(other.to_string())),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One adversary-vs-engine game.
pub struct Game {
    engine: EngineKind,
    colorer: Box<dyn Colorer>,
    steps: Vec<TranscriptStep>,
}

impl Game {
    pub fn new(engine: EngineKind) -> Self {
        Game {
            engine,
            colorer: engine.build(),
            steps: Vec::new(),
        }
    }

    pub fn engine(&self) -> EngineKind {
        self.engine
    }

    pub fn state(&self) -> &ColorerState {
        self.colorer.state()
    }

    pub fn color(&self, v: VertexId) -> ColorLabel {
        self.state().coloring.get(v).expect("presented vertices are colored")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Presents one vertex and returns its id and color.
    pub fn present(&mut self, neighbors: &[VertexId]) -> Result<(VertexId, ColorLabel)> {
        let outcome = self.colorer.step(neighbors)?;
        let state = self.colorer.state();
        let graph = &state.graph;
        if let Some(_clash) = graph
            .neighbors(outcome.vertex)
            .iter()
            .find(|&&u| state.coloring.get(u) == Some(outcome.color))
        {
            return Err(Error::ImproperColoring {
                engine: self.engine.name().to_string(),
                vertex: outcome.vertex,
                color: outcome.color,
            });
        }
        let neighbors = graph
            .neighbors(outcome.vertex)
            .iter()
            .copied()
            .filter(|&u| u < outcome.vertex)
            .collect();
        self.steps.push(TranscriptStep {
            neighbors,
            color: outcome.color,
            branch: outcome.trace.as_ref().map(|t| t.branch),
            trace: outcome.trace,
        });
        Ok((outcome.vertex, outcome.color))
    }

    pub fn finish(self, adversary: &str, param: u64, seed: u64) -> RunRecord {
        let state = self.colorer.state();
        RunRecord {
            graph: state.graph.clone(),
            coloring: state.coloring.clone(),
            transcript: GameTranscript {
                engine: self.engine.name().to_string(),
                adversary: adversary.to_string(),
                param,
                seed,
                engine_seed: match self.engine {
                    EngineKind::Random { seed } => Some(seed),
                    _ => None,
                },
                steps: self.steps,
            },
        }
    }
}

/// Plays a fixed presentation against `engine`.
pub fn run_colorer(engine: EngineKind, presentation: &[Vec<VertexId>]) -> Result<RunRecord> {
    run_presentation(engine, presentation, "replay", presentation.len() as u64, 0)
}

pub fn run_presentation(
    engine: EngineKind,
    presentation: &[Vec<VertexId>],
    adversary: &str,
    param: u64,
    seed: u64,
) -> Result<RunRecord> {
    let mut game = Game::new(engine);
    for nbrs in presentation {
        game.present(nbrs)?;
    }
    Ok(game.finish(adversary, param, seed))
}

//! Game transcripts and their JSON-lines encoding.
//!
//! The first line is a header object naming the engine and adversary; each
//! following line is one step: `{"v", "neighbors", "palette", "index",
//! "branch"}`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engines::{Branch, BranchTrace};
use crate::error::{Error, Result};
use crate::graph::{ColorLabel, Palette, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranscriptStep {
    /// Earlier vertices adjacent to this one, ascending.
    pub neighbors: Vec<VertexId>,
    pub color: ColorLabel,
    /// Full diagnostic trace when the step came from a live engine.
    pub trace: Option<BranchTrace>,
    /// Branch tag; survives serialization even when `trace` does not.
    pub branch: Option<Branch>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameTranscript {
    pub engine: String,
    pub adversary: String,
    /// Size parameter of the adversary (k, pairs, n).
    pub param: u64,
    pub seed: u64,
    /// Seed of a randomized engine, when it differs from the game seed.
    pub engine_seed: Option<u64>,
    pub steps: Vec<TranscriptStep>,
}

impl GameTranscript {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        self.steps.iter().map(|s| s.color).collect::<BTreeSet<_>>().len()
    }

    pub fn max_index(&self) -> u32 {
        self.steps.iter().map(|s| s.color.index).max().unwrap_or(0)
    }

    pub fn presentation(&self) -> Vec<Vec<VertexId>> {
        self.steps.iter().map(|s| s.neighbors.clone()).collect()
    }

    pub fn to_jsonl(&self) -> String {
        let header = Header {
            engine: self.engine.clone(),
            adversary: self.adversary.clone(),
            k: self.param,
            seed: self.seed,
            engine_seed: self.engine_seed,
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for (v, step) in self.steps.iter().enumerate() {
            let line = StepLine {
                v,
                neighbors: step.neighbors.clone(),
                palette: step.color.palette.letter().to_string(),
                index: step.color.index,
                branch: step.branch,
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&line).expect("step serializes"));
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<GameTranscript> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header_line) = lines.next().ok_or(Error::Parse {
            line: 1,
            reason: "empty transcript".into(),
        })?;
        let header: Header = serde_json::from_str(header_line).map_err(|e| Error::Parse {
            line: hl + 1,
            reason: e.to_string(),
        })?;
        let mut steps = Vec::new();
        for (ln, line) in lines {
            let parse_err = |reason: String| Error::Parse { line: ln + 1, reason };
            let rec: StepLine = serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
            if rec.v != steps.len() {
                return Err(parse_err(format!("expected v = {}, found {}", steps.len(), rec.v)));
            }
            if let Some(&bad) = rec.neighbors.iter().find(|&&u| u >= rec.v) {
                return Err(parse_err(format!("neighbor {bad} is not an earlier vertex")));
            }
            let palette = Palette::from_letter(&rec.palette)
                .ok_or_else(|| parse_err(format!("unknown palette `{}`", rec.palette)))?;
            let color = ColorLabel::new(palette, rec.index).map_err(|e| parse_err(e.to_string()))?;
            let mut neighbors = rec.neighbors;
            neighbors.sort_unstable();
            neighbors.dedup();
            steps.push(TranscriptStep {
                neighbors,
                color,
                trace: None,
                branch: rec.branch,
            });
        }
        Ok(GameTranscript {
            engine: header.engine,
            adversary: header.adversary,
            param: header.k,
            seed: header.seed,
            engine_seed: header.engine_seed,
            steps,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct Header {
    engine: String,
    adversary: String,
    k: u64,
    seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    engine_seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct StepLine {
    v: VertexId,
    neighbors: Vec<VertexId>,
    palette: String,
    index: u32,
    branch: Option<Branch>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_transcript() -> impl Strategy<Value = GameTranscript> {
        let step = (
            proptest::collection::vec(0usize..64, 0..5),
            0u8..3,
            1u32..20,
            proptest::option::of(0u8..4),
        );
        (proptest::collection::vec(step, 0..30), any::<u64>(), 0u64..20).prop_map(|(raw, seed, k)| {
            let steps = raw
                .into_iter()
                .enumerate()
                .map(|(v, (nbrs, p, index, b))| {
                    let mut neighbors: Vec<_> = nbrs.into_iter().filter(|&u| u < v).collect();
                    neighbors.sort_unstable();
                    neighbors.dedup();
                    let palette = [Palette::A, Palette::B, Palette::C][p as usize];
                    let branch = b.map(|b| [Branch::B, Branch::AViaC, Branch::C, Branch::ADefault][b as usize]);
                    TranscriptStep {
                        neighbors,
                        color: ColorLabel { palette, index },
                        trace: None,
                        branch,
                    }
                })
                .collect();
            GameTranscript {
                engine: "bicolormax".into(),
                adversary: "replay".into(),
                param: k,
                seed,
                engine_seed: (seed % 2 == 0).then_some(seed / 2),
                steps,
            }
        })
    }

    proptest! {
        #[test]
        fn jsonl_round_trip(t in arb_transcript()) {
            let text = t.to_jsonl();
            prop_assert_eq!(GameTranscript::from_jsonl(&text).unwrap(), t);
        }
    }

    #[test]
    fn step_line_shape() {
        let t = GameTranscript {
            engine: "firstfit".into(),
            adversary: "crown".into(),
            param: 1,
            seed: 7,
            engine_seed: None,
            steps: vec![TranscriptStep {
                neighbors: vec![],
                color: ColorLabel::a(1),
                trace: None,
                branch: None,
            }],
        };
        let text = t.to_jsonl();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], r#"{"engine":"firstfit","adversary":"crown","k":1,"seed":7}"#);
        assert_eq!(lines[1], r#"{"v":0,"neighbors":[],"palette":"A","index":1,"branch":null}"#);
    }

    #[test]
    fn rejects_forward_neighbors_and_bad_palette() {
        let head = r#"{"engine":"firstfit","adversary":"crown","k":1,"seed":7}"#;
        let fwd = format!("{head}\n{}", r#"{"v":0,"neighbors":[0],"palette":"A","index":1,"branch":null}"#);
        assert!(matches!(GameTranscript::from_jsonl(&fwd), Err(Error::Parse { line: 2, .. })));
        let pal = format!("{head}\n{}", r#"{"v":0,"neighbors":[],"palette":"D","index":1,"branch":null}"#);
        assert!(GameTranscript::from_jsonl(&pal).is_err());
        let zero = format!("{head}\n{}", r#"{"v":0,"neighbors":[],"palette":"A","index":0,"branch":null}"#);
        assert!(GameTranscript::from_jsonl(&zero).is_err());
        assert!(GameTranscript::from_jsonl("").is_err());
    }
}

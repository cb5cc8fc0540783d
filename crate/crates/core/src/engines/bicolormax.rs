use crate::error::Result;
use crate::graph::{
    arrival_component, is_mixed, is_universal, Adjacency, ColorLabel, ComponentView, Palette, VertexId,
};

use super::{Branch, BranchTrace, Colorer, ColorerState, StepOutcome};

/// `j >= m - sqrt(2m) + 2`, decided over the integers.
pub fn threshold_holds(m: u32, j: u32) -> bool {
    let d = i64::from(m) + 2 - i64::from(j);
    d <= 0 || d * d <= 2 * i64::from(m)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BiColorMaxOptions {
    /// Let a `c_j` vertex act as the witness `u` of the C branch. Off by
    /// default: palette C carries no color index.
    pub c_witness: bool,
}

/// Three-palette on-line colorer for bipartite graphs.
///
/// For a new vertex `v` it finds the largest level `i` at which `a_i` is
/// mixed in `C_i[v]`, sets `m = i + 1`, and splits `C_m[v]` into `I1` (the
/// side of `v`) and `I2`. Then:
///
/// * `a_m` on `I2` gives `b_m`;
/// * otherwise `c_m` on `I2` gives `a_m`;
/// * otherwise, if some `u` in `C_m[v]` has index `j` passing
///   [`threshold_holds`] and some `u'` in `I2` is universal to
///   `C_{j-1}[u]`, `v` gets `c_m`;
/// * otherwise `a_m`.
///
/// `C_{j-1}[u]` for a colored `u` is taken as it stood when `u` arrived, so it
/// is fixed once `u` is colored and is cached.
#[derive(Debug, Clone, Default)]
pub struct BiColorMax {
    state: ColorerState,
    options: BiColorMaxOptions,
    below: Vec<Option<ComponentView>>,
}

impl BiColorMax {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_options(options: BiColorMaxOptions) -> Self {
        BiColorMax {
            options,
            ..Self::default()
        }
    }

    /// First `(u, u')` in arrival order satisfying the C-branch condition.
    fn find_witness(&mut self, v: VertexId, m: u32, view: &ComponentView) -> Option<(VertexId, VertexId)> {
        let BiColorMax { state, options, below } = self;
        let graph = &state.graph;
        let far_side = &view.side2;
        let first_far = *far_side.first()?;
        for u in view.vertices() {
            let Some(j) = witness_index(state, *options, u) else { continue };
            if !threshold_holds(m, j) {
                continue;
            }
            if below.len() <= u {
                below.resize(u + 1, None);
            }
            let target: &ComponentView =
                below[u].get_or_insert_with(|| arrival_component(graph, &state.coloring, u, j - 1));
            // target vertices on v's side are the ones a candidate in I2 must hit
            let must: Vec<VertexId> = target
                .vertices()
                .into_iter()
                .filter(|&w| graph.same_side(w, v) == Some(true))
                .collect();
            let found = match must.first() {
                None => Some(first_far),
                Some(&t0) => graph
                    .neighbors(t0)
                    .iter()
                    .copied()
                    .filter(|c| far_side.contains(c))
                    .find(|&c| must.iter().all(|&w| graph.has_edge(c, w))),
            };
            if let Some(up) = found {
                debug_assert!(is_universal(graph, up, target));
                return Some((u, up));
            }
        }
        None
    }
}

fn witness_index(state: &ColorerState, options: BiColorMaxOptions, u: VertexId) -> Option<u32> {
    let color = state.coloring.get(u)?;
    match color.palette {
        Palette::A | Palette::B => Some(color.index),
        Palette::C if options.c_witness => Some(color.index),
        Palette::C => None,
    }
}

impl Colorer for BiColorMax {
    fn name(&self) -> &'static str {
        "bicolormax"
    }

    fn state(&self) -> &ColorerState {
        &self.state
    }

    fn step(&mut self, neighbors: &[VertexId]) -> Result<StepOutcome> {
        let v = self.state.graph.add_vertex(neighbors)?;

        let mut mixed_top = 0;
        for i in 1..=self.state.max_index_used + 1 {
            let a_i = ColorLabel::a(i);
            if !self.state.uses(a_i) {
                continue;
            }
            let view = arrival_component(&self.state.graph, &self.state.coloring, v, i);
            if is_mixed(&view, a_i, &self.state.coloring) {
                mixed_top = i;
            }
        }
        let m = mixed_top + 1;

        let view = arrival_component(&self.state.graph, &self.state.coloring, v, m);
        let first_far_with = |color: ColorLabel| {
            view.side2
                .iter()
                .copied()
                .find(|&w| self.state.coloring.get(w) == Some(color))
        };
        let a_on_far_side = first_far_with(ColorLabel::a(m));
        let c_on_far_side = first_far_with(ColorLabel::c(m));

        let mut witness = None;
        let (branch, color) = if a_on_far_side.is_some() {
            (Branch::B, ColorLabel::b(m))
        } else if c_on_far_side.is_some() {
            (Branch::AViaC, ColorLabel::a(m))
        } else if let Some(pair) = self.find_witness(v, m, &view) {
            witness = Some(pair);
            (Branch::C, ColorLabel::c(m))
        } else {
            (Branch::ADefault, ColorLabel::a(m))
        };

        self.state.commit(v, color);
        Ok(StepOutcome {
            vertex: v,
            color,
            trace: Some(BranchTrace {
                m,
                sides: (view.side1.len(), view.side2.len()),
                a_on_far_side,
                c_on_far_side,
                witness,
                branch,
            }),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_examples() {
        assert!(!threshold_holds(1, 1));
        assert!(threshold_holds(2, 2));
        assert!(threshold_holds(8, 6));
        assert!(!threshold_holds(8, 5));
    }

    #[test]
    fn threshold_matches_float_off_the_boundary() {
        for m in 1..=2000u32 {
            for j in 1..=m + 3 {
                let d = i64::from(m) + 2 - i64::from(j);
                let boundary = d > 0 && d * d == 2 * i64::from(m);
                let float = f64::from(j) >= f64::from(m) - (2.0 * f64::from(m)).sqrt() + 2.0;
                if !boundary {
                    assert_eq!(threshold_holds(m, j), float, "m={m} j={j}");
                } else {
                    assert!(threshold_holds(m, j));
                }
            }
        }
    }

    fn play(presentation: &[&[VertexId]]) -> (BiColorMax, Vec<StepOutcome>) {
        let mut engine = BiColorMax::new();
        let outcomes = presentation.iter().map(|n| engine.step(n).unwrap()).collect();
        (engine, outcomes)
    }

    #[test]
    fn first_vertex_takes_a1() {
        let (_, out) = play(&[&[]]);
        assert_eq!(out[0].color, ColorLabel::a(1));
        assert_eq!(out[0].trace.as_ref().unwrap().branch, Branch::ADefault);
    }

    #[test]
    fn neighbor_of_a1_takes_b1() {
        let (_, out) = play(&[&[], &[0]]);
        assert_eq!(out[1].color, ColorLabel::b(1));
        assert_eq!(out[1].trace.as_ref().unwrap().branch, Branch::B);
    }

    #[test]
    fn joining_mixed_a1_raises_the_level() {
        let (_, out) = play(&[&[], &[], &[1], &[0, 2]]);
        let colors: Vec<_> = out.iter().map(|o| o.color).collect();
        assert_eq!(colors, vec![ColorLabel::a(1), ColorLabel::a(1), ColorLabel::b(1), ColorLabel::a(2)]);
        let t = out[3].trace.as_ref().unwrap();
        assert_eq!(t.m, 2);
        assert_eq!(t.branch, Branch::ADefault);
        assert_eq!(t.sides, (2, 2));
    }
}

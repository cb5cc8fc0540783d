//! Named verification suites over a fixed, seeded corpus of games.
//!
//! Each criterion returns a [`CriterionResult`]; a failing criterion reports
//! the first offending run instead of panicking.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    check_proper, children_of, extract_x_witness, find_induced_path, is_pk_free, online_chromatic_number,
    theorem_consistency, RunRecord,
};
use crate::engines::{run_presentation, threshold_holds, EngineKind};
use crate::error::Result;
use crate::forcing::{
    adversary_force, build_xk, crown_presentation, crown_shuffled, embed_copies, forest_adversary, verify_embedding,
    xk_size,
};
use crate::generate::{presentation_from_order, random_bipartite, random_p9_free};
use crate::graph::{Adjacency, ColorLabel, Palette, SimpleGraph, VertexId};

pub const SUITE_NAMES: [&str; 7] = ["theorem", "properness", "forcing", "baselines", "structure", "solver", "all"];

/// Seed of the random proper colorer used throughout the suites.
pub const RANDOM_ENGINE_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{} {verdict} {}: {}", self.id, self.title, self.detail)
    }
}

fn outcome(id: &'static str, title: &'static str, body: std::result::Result<String, String>) -> CriterionResult {
    let (passed, detail) = match body {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, title, passed, detail }
}

/// Criteria of a named suite, or `None` for an unknown name.
pub fn run_suite(name: &str) -> Option<Vec<CriterionResult>> {
    let ids: &[&str] = match name {
        "theorem" => &["A1"],
        "properness" => &["A2"],
        "forcing" => &["A3", "A6"],
        "baselines" => &["A4"],
        "structure" => &["A5"],
        "solver" => &["A7"],
        "all" => &["A1", "A2", "A3", "A4", "A5", "A6", "A7"],
        _ => return None,
    };
    Some(ids.iter().map(|id| run_criterion(id).expect("known id")).collect())
}

pub fn run_criterion(id: &str) -> Option<CriterionResult> {
    Some(match id {
        "A1" => a1_theorem_chain(),
        "A2" => a2_properness(),
        "A3" => a3_forcing(),
        "A4" => a4_baselines(),
        "A5" => a5_structure(),
        "A6" => a6_fine_structure(),
        "A7" => a7_solver(),
        _ => return None,
    })
}

/// The four engines every criterion plays against.
pub fn suite_engines() -> [EngineKind; 4] {
    let [b, f, c] = EngineKind::deterministic();
    [b, f, c, EngineKind::Random { seed: RANDOM_ENGINE_SEED }]
}

/// Which parts of the corpus to play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub xk: bool,
    pub random: bool,
    pub forest_crown: bool,
    pub stress: bool,
}

impl CorpusSpec {
    /// Everything the theorem applies to: xk, random P9-free, forest and crown.
    pub const P9_FREE: CorpusSpec = CorpusSpec {
        xk: true,
        random: true,
        forest_crown: true,
        stress: false,
    };
    pub const ALL: CorpusSpec = CorpusSpec {
        stress: true,
        ..Self::P9_FREE
    };
}

pub const XK_MAX: usize = 8;
pub const RANDOM_INSTANCES: u64 = 500;
pub const FOREST_GAMES: u64 = 100;
pub const CROWN_GAMES: u64 = 100;
pub const STRESS_INSTANCES: u64 = 120;

/// Seeded random P9-free instance `i` of the corpus, `6 <= n <= 14`.
pub fn corpus_random(i: u64) -> Vec<Vec<VertexId>> {
    let n = 6 + (i % 9) as usize;
    let p = [0.2, 0.35, 0.5][(i % 3) as usize];
    random_p9_free(n, p, i).presentation
}

/// Crown game `i`: `1 + i % 20` pairs, in pair order for `i < 20`, shuffled otherwise.
pub fn corpus_crown(i: u64) -> Vec<Vec<VertexId>> {
    let pairs = 1 + (i % 20) as usize;
    if i < 20 {
        crown_presentation(pairs)
    } else {
        crown_shuffled(pairs, i)
    }
}

/// Sparse random bipartite stress instance `i`, `100 <= n <= 300`.
pub fn corpus_stress(i: u64) -> Vec<Vec<VertexId>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa11ce ^ i);
    let n = rng.gen_range(100..=300);
    random_bipartite(n, 3.0 / n as f64, &mut rng).presentation
}

/// Plays the selected corpus against `engine`.
pub fn corpus_runs(engine: EngineKind, parts: CorpusSpec) -> Result<Vec<RunRecord>> {
    let mut runs = Vec::new();
    if parts.xk {
        for k in 1..=XK_MAX {
            runs.push(adversary_force(k, engine)?.record);
        }
    }
    if parts.random {
        for i in 0..RANDOM_INSTANCES {
            let p = corpus_random(i);
            runs.push(run_presentation(engine, &p, "random", p.len() as u64, i)?);
        }
    }
    if parts.forest_crown {
        for i in 0..FOREST_GAMES {
            runs.push(forest_adversary(1 + (i % 5) as usize, engine, Some(i))?);
        }
        for i in 0..CROWN_GAMES {
            runs.push(run_presentation(engine, &corpus_crown(i), "crown", 1 + i % 20, i)?);
        }
    }
    if parts.stress {
        for i in 0..STRESS_INSTANCES {
            let p = corpus_stress(i);
            runs.push(run_presentation(engine, &p, "stress", p.len() as u64, i)?);
        }
    }
    Ok(runs)
}

fn describe(run: &RunRecord) -> String {
    let t = &run.transcript;
    format!("{} vs {} (param {}, seed {})", t.engine, t.adversary, t.param, t.seed)
}

fn is_a(c: ColorLabel) -> bool {
    c.palette == Palette::A
}

pub fn a1_theorem_chain() -> CriterionResult {
    outcome("A1", "theorem chain", (|| {
        let runs = corpus_runs(EngineKind::bicolormax(), CorpusSpec::P9_FREE).map_err(|e| e.to_string())?;
        let mut by_k: BTreeMap<u32, usize> = BTreeMap::new();
        let mut witnesses: BTreeMap<usize, usize> = BTreeMap::new();
        for run in &runs {
            if !is_pk_free(&run.graph, 9) {
                return Err(format!("{} is not P9-free", describe(run)));
            }
            let report = theorem_consistency(run).map_err(|e| format!("{}: {e}", describe(run)))?;
            *by_k.entry(report.k).or_default() += 1;
            // beyond the earliest a_k vertex, extract below every a_i with i >= 2
            for (v, c) in run.coloring.iter().filter(|&(_, c)| is_a(c) && c.index >= 2) {
                let w = extract_x_witness(run, v).map_err(|e| format!("{} at {v} ({c}): {e}", describe(run)))?;
                *witnesses.entry(w.target).or_default() += 1;
            }
        }
        Ok(format!(
            "{} bicolormax runs, runs by max index {by_k:?}, verified witnesses by order {witnesses:?}",
            runs.len()
        ))
    })())
}

pub fn a2_properness() -> CriterionResult {
    outcome("A2", "properness", (|| {
        let mut placements = 0usize;
        let mut games = 0usize;
        for engine in suite_engines() {
            for run in corpus_runs(engine, CorpusSpec::ALL).map_err(|e| e.to_string())? {
                if !check_proper(&run.graph, &run.coloring).map_err(|e| e.to_string())? {
                    return Err(format!("{} is improper", describe(&run)));
                }
                placements += run.len();
                games += 1;
            }
        }
        if placements < 100_000 {
            return Err(format!("only {placements} placements"));
        }
        Ok(format!("{games} games, {placements} placements, all proper"))
    })())
}

pub fn a3_forcing() -> CriterionResult {
    outcome("A3", "forcing lower bound", (|| {
        for engine in suite_engines() {
            for k in 1..=XK_MAX {
                let game = adversary_force(k, engine).map_err(|e| e.to_string())?;
                let run = &game.record;
                let colors = run.coloring.distinct().len();
                let tag = format!("k={k} vs {engine}");
                if colors < k {
                    return Err(format!("{tag}: only {colors} colors"));
                }
                if run.len() != 1 << (k - 1) {
                    return Err(format!("{tag}: {} vertices", run.len()));
                }
                if !run.graph.to_simple().is_bipartite() {
                    return Err(format!("{tag}: not bipartite"));
                }
                if !game.embedding_is_induced() {
                    return Err(format!("{tag}: not an induced subgraph of X_{k}"));
                }
                if k <= 5 && !is_pk_free(&run.graph, 6) {
                    return Err(format!("{tag}: induced P6 present"));
                }
            }
        }
        Ok(format!("k = 1..={XK_MAX} against {} engines", suite_engines().len()))
    })())
}

/// `2 floor(log2 n) + 1`, 0 for the empty graph.
pub fn cbip_bound(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        2 * n.ilog2() as usize + 1
    }
}

pub fn a4_baselines() -> CriterionResult {
    outcome("A4", "baseline separations", (|| {
        for p in 1..=20 {
            let run = run_presentation(EngineKind::FirstFit, &crown_presentation(p), "crown", p as u64, 0)
                .map_err(|e| e.to_string())?;
            let colors = run.coloring.distinct().len();
            if colors != p {
                return Err(format!("first-fit on crown({p}) used {colors} colors"));
            }
        }
        let cbip_runs = corpus_runs(EngineKind::Cbip, CorpusSpec::ALL).map_err(|e| e.to_string())?;
        let mut slack = usize::MAX;
        for run in &cbip_runs {
            let (colors, bound) = (run.coloring.distinct().len(), cbip_bound(run.len()));
            if colors > bound {
                return Err(format!("{}: {colors} colors over the bound {bound}", describe(run)));
            }
            slack = slack.min(bound - colors);
        }
        for engine in EngineKind::deterministic() {
            for k in 1..=6 {
                let run = forest_adversary(k, engine, None).map_err(|e| e.to_string())?;
                let colors = run.coloring.distinct().len();
                if colors < k || run.len() != 1 << (k - 1) || !run.graph.to_simple().is_forest() {
                    return Err(format!("forest k={k} vs {engine}: {colors} colors on {} vertices", run.len()));
                }
            }
        }
        Ok(format!(
            "crown exact for p <= 20; cbip within bound on {} runs (min slack {slack}); forests force k for k <= 6",
            cbip_runs.len()
        ))
    })())
}

pub fn a5_structure() -> CriterionResult {
    outcome("A5", "structure family", (|| {
        for k in 1..=12usize {
            let x = build_xk(k);
            if k >= 2 && x.len() != 3 * (1 << (k - 2)) - 1 {
                return Err(format!("|X_{k}| = {}", x.len()));
            }
            if x.len() != xk_size(k) {
                return Err(format!("xk_size({k}) disagrees with the construction"));
            }
            let mut nbrs = x.neighbors(x.root()).to_vec();
            nbrs.sort_unstable();
            if nbrs != x.non_root_side() || !x.is_root_side(x.root()) {
                return Err(format!("root of X_{k} is not universal"));
            }
            if k >= 2 && x.non_root_side().len() != xk_size(k - 1) {
                return Err(format!("non-root side of X_{k} has the wrong size"));
            }
            if k <= 5 && !is_pk_free(x.graph(), 6) {
                return Err(format!("X_{k} has an induced P6"));
            }
        }
        let mut plans = 0;
        for k in 2..=6usize {
            let x = build_xk(k);
            for bits in 0..1u32 << (k - 1) {
                let alpha: Vec<bool> = (0..k - 1).map(|i| bits >> i & 1 == 1).collect();
                let plan = embed_copies(k, &alpha).map_err(|e| e.to_string())?;
                if !verify_embedding(&x, &plan) {
                    return Err(format!("embedding of k={k}, alpha={alpha:?} fails"));
                }
                plans += 1;
            }
        }
        Ok(format!("sizes and root universality for k <= 12, P6-free for k <= 5, {plans} embeddings verified"))
    })())
}

/// Off-boundary disagreements between [`threshold_holds`] and a float
/// reference, over `1 <= m <= max_m`, `1 <= j <= m + 3`.
pub fn threshold_disagreements(max_m: u32) -> (usize, usize) {
    let mut boundary = 0;
    let mut wrong = 0;
    for m in 1..=max_m {
        let two_m = 2 * i64::from(m);
        let root = (f64::from(m) * 2.0).sqrt();
        for j in 1..=m + 3 {
            let d = i64::from(m) + 2 - i64::from(j);
            if d > 0 && d * d == two_m {
                boundary += 1;
                continue;
            }
            let float = f64::from(j) >= f64::from(m) - root + 2.0;
            if float != threshold_holds(m, j) {
                wrong += 1;
            }
        }
    }
    (boundary, wrong)
}

pub fn a6_fine_structure() -> CriterionResult {
    outcome("A6", "engine fine structure", (|| {
        let runs = corpus_runs(EngineKind::bicolormax(), CorpusSpec::ALL).map_err(|e| e.to_string())?;
        let mut checked = 0;
        for run in &runs {
            if let Some((v, _)) = run.coloring.iter().find(|&(_, c)| c == ColorLabel::c(1)) {
                return Err(format!("{} assigns c1 to {v}", describe(run)));
            }
            for (v, c) in run.coloring.iter().filter(|&(_, c)| is_a(c) && c.index >= 2) {
                children_of(run, v).map_err(|e| format!("{} at {v} ({c}): {e}", describe(run)))?;
                checked += 1;
            }
        }
        let (boundary, wrong) = threshold_disagreements(10_000);
        if wrong > 0 {
            return Err(format!("threshold disagrees with the float reference on {wrong} pairs"));
        }
        Ok(format!(
            "no c1 in {} runs; {checked} a_k vertices with split children; threshold exact ({boundary} boundary pairs)",
            runs.len()
        ))
    })())
}

/// Every vertex sequence of length `len` (starting at `endpoint` if given)
/// that forms an induced path. Exhaustive; for tiny graphs only.
pub fn induced_path_exists_brute(g: &SimpleGraph, len: usize, endpoint: Option<VertexId>) -> bool {
    fn rec(g: &SimpleGraph, len: usize, path: &mut Vec<VertexId>) -> bool {
        if path.len() == len {
            return (0..len).all(|a| (a + 1..len).all(|b| g.has_edge(path[a], path[b]) == (b == a + 1)));
        }
        for v in 0..g.vertex_count() {
            if !path.contains(&v) {
                path.push(v);
                if rec(g, len, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    if len == 0 {
        return false;
    }
    match endpoint {
        Some(v) => rec(g, len, &mut vec![v]),
        None => rec(g, len, &mut Vec::new()),
    }
}

/// Largest color count over all presentation orders of `g`.
pub fn worst_order_colors(engine: EngineKind, g: &SimpleGraph) -> Result<usize> {
    let n = g.vertex_count();
    let mut order: Vec<VertexId> = (0..n).collect();
    let mut worst = 0;
    loop {
        let run = run_presentation(engine, &presentation_from_order(g, &order), "replay", n as u64, 0)?;
        worst = worst.max(run.coloring.distinct().len());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| order[i - 1] < order[i]) else { break };
        let j = (i..n).rev().find(|&j| order[j] > order[i - 1]).expect("successor exists");
        order.swap(i - 1, j);
        order[i..].reverse();
    }
    Ok(worst)
}

pub fn a7_solver() -> CriterionResult {
    outcome("A7", "exact solver", (|| {
        let k1 = online_chromatic_number(&SimpleGraph::new(1), 4).map_err(|e| e.to_string())?;
        let k2 = online_chromatic_number(&SimpleGraph::path(2), 4).map_err(|e| e.to_string())?;
        if (k1, k2) != (1, 2) {
            return Err(format!("chi*(K1) = {k1}, chi*(K2) = {k2}"));
        }
        let x3 = build_xk(3);
        let solved = online_chromatic_number(x3.graph(), 5).map_err(|e| e.to_string())?;
        if solved < 3 {
            return Err(format!("chi*(X_3) = {solved} < 3"));
        }
        // adversary side: colors the forcing strategy extracts from each engine
        let mut forced = Vec::new();
        let mut worst = Vec::new();
        for engine in EngineKind::deterministic() {
            forced.push(adversary_force(3, engine).map_err(|e| e.to_string())?.record.coloring.distinct().len());
            worst.push(worst_order_colors(engine, x3.graph()).map_err(|e| e.to_string())?);
        }
        let lower = *forced.iter().min().expect("three engines");
        let upper = *worst.iter().min().expect("three engines");
        if !(lower <= solved && solved <= upper && lower == upper) {
            return Err(format!(
                "solver {solved}, forced by the adversary {forced:?}, worst orders {worst:?}"
            ));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(0x0ac1e);
        let mut queries = 0;
        for sample in 0..200 {
            let n = 1 + sample % 7;
            let p = rng.gen_range(0.15..0.75);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for w in u + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, w);
                    }
                }
            }
            for len in 1..=n {
                for endpoint in std::iter::once(None).chain((0..n).map(Some)) {
                    let fast = find_induced_path(&g, len, endpoint);
                    if let Some(path) = &fast {
                        let valid = path.len() == len
                            && endpoint.is_none_or(|e| path[0] == e)
                            && (0..len).all(|a| (a + 1..len).all(|b| g.has_edge(path[a], path[b]) == (b == a + 1)));
                        if !valid {
                            return Err(format!("sample {sample}: bogus path {path:?}"));
                        }
                    }
                    if fast.is_some() != induced_path_exists_brute(&g, len, endpoint) {
                        return Err(format!("sample {sample}: len {len}, endpoint {endpoint:?} disagrees"));
                    }
                    queries += 1;
                }
            }
        }
        Ok(format!(
            "chi*(K1)=1, chi*(K2)=2, chi*(X_3)={solved} matching forced {lower} and worst-order {upper}; {queries} path queries agree"
        ))
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cbip_bound_values() {
        assert_eq!(cbip_bound(1), 1);
        assert_eq!(cbip_bound(2), 3);
        assert_eq!(cbip_bound(40), 11);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope").is_none());
        assert!(run_criterion("A9").is_none());
    }

    #[test]
    fn brute_force_oracle_basics() {
        assert!(induced_path_exists_brute(&SimpleGraph::path(4), 4, Some(0)));
        assert!(!induced_path_exists_brute(&SimpleGraph::path(4), 4, Some(1)));
        assert!(!induced_path_exists_brute(&SimpleGraph::cycle(4), 4, None));
    }

    #[test]
    fn worst_order_on_p3() {
        // first-fit colors P3 with 2 colors in every order
        assert_eq!(worst_order_colors(EngineKind::FirstFit, &SimpleGraph::path(3)).unwrap(), 2);
        // presenting both ends first forces 3 on P4
        assert_eq!(worst_order_colors(EngineKind::FirstFit, &SimpleGraph::path(4)).unwrap(), 3);
    }
}

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use bicolor_core::analysis::{check_proper, is_pk_free, theorem_consistency, RunRecord, SolverConfig};
use bicolor_core::engines::{run_presentation, EngineKind};
use bicolor_core::forcing::{adversary_force, build_xk, crown_graph, crown_presentation, crown_shuffled, forest_adversary};
use bicolor_core::generate::random_bipartite;
use bicolor_core::graph::{Adjacency, SimpleGraph};
use bicolor_core::suite::{run_suite, SUITE_NAMES};
use bicolor_core::transcript::GameTranscript;
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Games between on-line bipartite colorers and adversaries.
#[derive(Parser)]
#[command(name = "bicolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play games and write transcripts and a CSV summary.
    Run(RunArgs),
    /// Replay a transcript and check properness and structural claims.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write the rooted graph X_k.
    Xk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named acceptance suite.
    Suite {
        /// One of theorem, properness, forcing, baselines, structure, solver, all.
        name: String,
    },
    /// Exact on-line chromatic number of a small graph.
    ChiStar {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        #[arg(long, default_value_t = bicolor_core::analysis::DEFAULT_SIZE_LIMIT)]
        size_limit: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Crown,
    Xk,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Adversary {
    /// Adaptive strategy forcing k colors inside X_k.
    Xk,
    /// Crown with k pairs; shuffled when a seed is given.
    Crown,
    /// Adaptive forest strategy forcing k colors.
    Forest,
    /// Random bipartite graph on k vertices.
    Random,
    /// Presentation taken from --input.
    Replay,
}

impl Adversary {
    fn name(self) -> &'static str {
        match self {
            Adversary::Xk => "xk",
            Adversary::Crown => "crown",
            Adversary::Forest => "forest",
            Adversary::Random => "random",
            Adversary::Replay => "replay",
        }
    }
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, default_value = "bicolormax")]
    engine: String,
    #[arg(long, value_enum, default_value = "xk")]
    adversary: Adversary,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of games; game `i` uses seed `seed + i`.
    #[arg(long, default_value_t = 1)]
    reps: u64,
    /// Edge probability of the random adversary.
    #[arg(long, default_value_t = 0.3)]
    p: f64,
    /// Transcript file, or a directory when reps > 1.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Transcript to replay.
    #[arg(long)]
    input: Option<PathBuf>,
    /// CSV summary file; stdout when absent.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Serialize)]
struct SummaryRow<'a> {
    engine: &'a str,
    adversary: &'a str,
    k: u64,
    n: usize,
    colors: usize,
    max_index: u32,
    seed: u64,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(error: anyhow::Error) -> Failure {
    Failure { code: 2, error }
}

fn verification(error: anyhow::Error) -> Failure {
    Failure { code: 1, error }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(&args).map_err(usage),
        Command::Verify { input } => cmd_verify(&input),
        Command::Xk { k, out } => cmd_xk(k, out.as_deref()).map_err(usage),
        Command::Suite { name } => cmd_suite(&name),
        Command::ChiStar { family, k, budget, size_limit } => cmd_chi_star(family, k, budget, size_limit).map_err(usage),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}

fn play(args: &RunArgs, engine: EngineKind, seed: Option<u64>) -> anyhow::Result<RunRecord> {
    let k = args.k;
    if k == 0 && args.adversary != Adversary::Replay {
        bail!("--k must be at least 1");
    }
    let s = seed.unwrap_or(0);
    let name = args.adversary.name();
    Ok(match args.adversary {
        Adversary::Xk => {
            let mut record = adversary_force(k, engine)?.record;
            record.transcript.seed = s;
            record
        }
        Adversary::Crown => {
            let pres = match seed {
                Some(seed) => crown_shuffled(k, seed),
                None => crown_presentation(k),
            };
            run_presentation(engine, &pres, name, k as u64, s)?
        }
        Adversary::Forest => {
            let mut record = forest_adversary(k, engine, seed)?;
            record.transcript.seed = s;
            record
        }
        Adversary::Random => {
            let inst = random_bipartite(k, args.p, &mut ChaCha8Rng::seed_from_u64(s));
            run_presentation(engine, &inst.presentation, name, k as u64, s)?
        }
        Adversary::Replay => {
            let path = args.input.as_deref().context("--adversary replay needs --input")?;
            let t = read_transcript(path)?;
            run_presentation(engine, &t.presentation(), name, t.param, t.seed)?
        }
    })
}

fn read_transcript(path: &Path) -> anyhow::Result<GameTranscript> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(GameTranscript::from_jsonl(&text)?)
}

fn cmd_run(args: &RunArgs) -> anyhow::Result<()> {
    if args.reps == 0 {
        bail!("--reps must be at least 1");
    }
    if let (Some(out), true) = (&args.out, args.reps > 1) {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    }
    let sink: Box<dyn Write> = match &args.summary {
        Some(path) => Box::new(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout()),
    };
    let mut summary = csv::Writer::from_writer(sink);
    for rep in 0..args.reps {
        let seed = args.seed.map(|s| s + rep).or((args.reps > 1).then_some(rep));
        let engine = EngineKind::from_name(&args.engine, seed.unwrap_or(0))?;
        let record = play(args, engine, seed)?;
        let t = &record.transcript;
        if let Some(out) = &args.out {
            let path = if args.reps > 1 { out.join(format!("run-{}.jsonl", t.seed)) } else { out.clone() };
            fs::write(&path, t.to_jsonl()).with_context(|| format!("writing {}", path.display()))?;
        }
        summary.serialize(SummaryRow {
            engine: &t.engine,
            adversary: &t.adversary,
            k: t.param,
            n: t.len(),
            colors: t.distinct_colors(),
            max_index: t.max_index(),
            seed: t.seed,
        })?;
    }
    summary.flush()?;
    Ok(())
}

/// Largest graph checked for induced `P_9` unless the adversary guarantees it.
const P9_CHECK_LIMIT: usize = 64;

fn cmd_verify(input: &Path) -> Result<(), Failure> {
    let transcript = read_transcript(input).map_err(usage)?;
    let recorded = RunRecord::from_transcript(transcript).map_err(|e| verification(e.into()))?;
    let run = recorded.replay().map_err(|e| verification(e.into()))?;
    let t = &run.transcript;
    println!("replay: {} steps match {}", t.len(), t.engine);
    if !check_proper(&run.graph, &run.coloring).map_err(|e| verification(e.into()))? {
        return Err(verification(anyhow::anyhow!("coloring is not proper")));
    }
    println!("proper: yes, {} colors, max index {}", t.distinct_colors(), t.max_index());
    println!("bipartite: yes");
    let structured = matches!(t.adversary.as_str(), "xk" | "crown");
    if run.len() > P9_CHECK_LIMIT && !structured {
        println!("p9-free: not checked ({} vertices)", run.len());
        return Ok(());
    }
    let p9_free = is_pk_free(&run.graph, 9);
    println!("p9-free: {}", if p9_free { "yes" } else { "no" });
    if p9_free && t.engine.starts_with("bicolormax") {
        let report = theorem_consistency(&run).map_err(|e| verification(e.into()))?;
        println!(
            "theorem: k = {}, {} colors <= 3k, witness X_{}, 3k <= {}",
            report.k,
            report.colors,
            report.witness.map_or(0, |w| w.target),
            report.bound
        );
    }
    Ok(())
}

fn xk_text(k: usize) -> String {
    let x = build_xk(k);
    let mut out = format!("root {}\n", x.root());
    for v in 0..x.len() {
        out += &format!("side {v} {}\n", u8::from(!x.is_root_side(v)));
    }
    for u in 0..x.len() {
        for &w in x.neighbors(u).iter().filter(|&&w| u < w) {
            out += &format!("edge {u} {w}\n");
        }
    }
    out
}

fn cmd_xk(k: usize, out: Option<&Path>) -> anyhow::Result<()> {
    if k == 0 || k > 20 {
        bail!("--k must be between 1 and 20");
    }
    let text = xk_text(k);
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_suite(name: &str) -> Result<(), Failure> {
    let results = run_suite(name)
        .ok_or_else(|| usage(anyhow::anyhow!("unknown suite `{name}`; expected one of {}", SUITE_NAMES.join(", "))))?;
    for r in &results {
        println!("{r}");
    }
    match results.iter().filter(|r| !r.passed).count() {
        0 => Ok(()),
        n => Err(verification(anyhow::anyhow!("{n} criteria failed"))),
    }
}

fn cmd_chi_star(family: Family, k: usize, budget: usize, size_limit: usize) -> anyhow::Result<()> {
    let graph = match family {
        Family::Path => SimpleGraph::path(k),
        Family::Cycle if k >= 4 && k.is_multiple_of(2) => SimpleGraph::cycle(k),
        Family::Cycle => bail!("cycle length must be even and at least 4"),
        Family::Crown => crown_graph(k),
        Family::Xk if k >= 1 => build_xk(k).graph().clone(),
        Family::Xk => bail!("--k must be at least 1"),
    };
    let value = SolverConfig { budget, size_limit }.solve(&graph)?;
    println!("{value}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xk_text_shape() {
        assert_eq!(xk_text(1), "root 0\nside 0 0\n");
        let text = xk_text(3);
        assert_eq!(text.lines().filter(|l| l.starts_with("side")).count(), 5);
        assert_eq!(text.lines().filter(|l| l.starts_with("edge")).count(), build_xk(3).graph().edge_count());
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rasum_core::baseline::{self, BaselineKind};
use rasum_core::corpus::{load_topic, CorpusConfig, Topic};
use rasum_core::expressiveness::{ScParams, StopRule, TermWeighting};
use rasum_core::optimizer::SolveStatus;
use rasum_core::pipeline::{self, PipelineConfig, Trace};
use rasum_core::rouge::{self, RougeConfig};
use rayon::prelude::*;

const EXIT_INPUT: u8 = 1;
const EXIT_GAP: u8 = 2;

#[derive(Parser)]
#[command(name = "rasum", version, about = "Reader-aware compressive multi-document summarization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize topic bundles.
    Summarize(SummarizeArgs),
    /// Run the random or lead baseline on topic bundles.
    Baseline(BaselineArgs),
    /// Score a summary file against a directory of reference summaries.
    Rouge(RougeArgs),
    /// Print a trace.json in readable form.
    DumpTrace { trace: PathBuf },
}

#[derive(Args)]
struct SummarizeArgs {
    /// Topic bundle directories.
    #[arg(required = true)]
    bundles: Vec<PathBuf>,
    /// Output directory; each topic writes into `<out>/<topic id>/`.
    #[arg(long, short, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    sc: SparseCodingArgs,
    #[command(flatten)]
    rouge: RougeFlags,
    /// Drop reader comments (news-only mode).
    #[arg(long)]
    no_comments: bool,
    #[arg(long, default_value_t = 10)]
    short_sentence_threshold: usize,
    /// Solver time limit in seconds.
    #[arg(long, default_value_t = 120.0, conflicts_with = "no_time_limit")]
    time_limit: f64,
    #[arg(long)]
    no_time_limit: bool,
    /// Use the greedy heuristic instead of branch and bound.
    #[arg(long)]
    greedy: bool,
    /// Also write the selection program as `model.lp`.
    #[arg(long)]
    dump_lp: bool,
    /// Topics processed in parallel.
    #[arg(long, short, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct BudgetArgs {
    /// Length limit in words; overrides the topic's limit and --duc.
    #[arg(long, short = 'L')]
    length: Option<usize>,
    /// Use the 250-word limit when --length is not given.
    #[arg(long)]
    duc: bool,
}

#[derive(Args)]
struct SparseCodingArgs {
    #[arg(long, default_value_t = ScParams::default().lambda)]
    lambda: f64,
    /// Position base C.
    #[arg(long = "c", default_value_t = ScParams::default().c)]
    c: f64,
    /// Paragraph cap.
    #[arg(long, default_value_t = ScParams::default().p_bar)]
    p_bar: usize,
    /// Iteration cap T.
    #[arg(long, default_value_t = ScParams::default().max_iter)]
    max_iter: usize,
    #[arg(long, default_value_t = ScParams::default().epsilon)]
    epsilon: f64,
    #[arg(long, default_value_t = ScParams::default().eta)]
    eta: f64,
    #[arg(long, value_enum, default_value_t = Weighting::Relative)]
    weighting: Weighting,
    #[arg(long, value_enum, default_value_t = Stop::Scaled)]
    stop_rule: Stop,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weighting {
    Raw,
    Relative,
    Unit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stop {
    Absolute,
    Scaled,
}

impl SparseCodingArgs {
    fn params(&self) -> ScParams {
        ScParams {
            lambda: self.lambda,
            eta: self.eta,
            max_iter: self.max_iter,
            epsilon: self.epsilon,
            c: self.c,
            p_bar: self.p_bar,
            weighting: match self.weighting {
                Weighting::Raw => TermWeighting::Raw,
                Weighting::Relative => TermWeighting::Relative,
                Weighting::Unit => TermWeighting::Unit,
            },
            stop_rule: match self.stop_rule {
                Stop::Absolute => StopRule::Absolute,
                Stop::Scaled => StopRule::ScaledByInitialLoss,
            },
        }
    }
}

#[derive(Args)]
struct RougeFlags {
    /// Compare surface words instead of Porter stems.
    #[arg(long)]
    no_stem: bool,
    #[arg(long)]
    remove_stopwords: bool,
}

impl RougeFlags {
    fn config(&self) -> RougeConfig {
        RougeConfig { stemming: !self.no_stem, remove_stopwords: self.remove_stopwords, ..RougeConfig::default() }
    }
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(required = true)]
    bundles: Vec<PathBuf>,
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    rouge: RougeFlags,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Random,
    Lead,
}

#[derive(Args)]
struct RougeArgs {
    /// System summary.
    #[arg(long)]
    sys: PathBuf,
    /// Directory of reference summaries (`*.txt`).
    #[arg(long)]
    refs: PathBuf,
    /// Write the JSON here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    rouge: RougeFlags,
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn load(bundle: &Path) -> Result<Topic> {
    load_topic(bundle, &CorpusConfig::default()).with_context(|| format!("loading {}", bundle.display()))
}

fn topic_dir(out: &Path, topic: &Topic) -> Result<PathBuf> {
    let dir = out.join(&topic.id);
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

/// Runs `f` over the bundles on `jobs` threads and reports in input order.
/// Returns the status of each topic.
fn for_each_bundle<F>(bundles: &[PathBuf], jobs: usize, f: F) -> Result<Vec<Result<bool>>>
where
    F: Fn(&Path) -> Result<bool> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    Ok(pool.install(|| bundles.par_iter().map(|b| f(b)).collect()))
}

fn exit_code(results: Vec<Result<bool>>, bundles: &[PathBuf]) -> ExitCode {
    let mut code = 0;
    for (res, bundle) in results.into_iter().zip(bundles) {
        match res {
            Ok(true) => {}
            Ok(false) => {
                eprintln!("{}: time limit reached before optimality was proven", bundle.display());
                code = code.max(EXIT_GAP);
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                code = EXIT_INPUT;
            }
        }
    }
    ExitCode::from(code)
}

fn summarize(args: &SummarizeArgs) -> Result<ExitCode> {
    let config = PipelineConfig {
        sparse_coding: args.sc.params(),
        length_budget: args.budget.length,
        duc_mode: args.budget.duc,
        short_sentence_threshold: args.short_sentence_threshold,
        rouge: args.rouge.config(),
        comments_enabled: !args.no_comments,
        time_limit: if args.no_time_limit { None } else { Some(Duration::from_secs_f64(args.time_limit.max(0.0))) },
        seed: 0,
        greedy: args.greedy,
    };
    config.sparse_coding.validate()?;
    let results = for_each_bundle(&args.bundles, args.jobs, |bundle| {
        let topic = load(bundle)?;
        let output = pipeline::summarize(&topic, &config, args.dump_lp).with_context(|| format!("topic {}", topic.id))?;
        let dir = topic_dir(&args.out, &topic)?;
        fs::write(dir.join("summary.txt"), output.summary.text())?;
        write_json(&dir.join("trace.json"), &output.trace)?;
        if let Some(r) = &output.rouge {
            write_json(&dir.join("rouge.json"), r)?;
        }
        if let Some(lp) = &output.lp_dump {
            fs::write(dir.join("model.lp"), lp)?;
        }
        let gap = !config.greedy && matches!(output.trace.status, SolveStatus::FeasibleWithGap(_));
        Ok(!gap)
    })?;
    Ok(exit_code(results, &args.bundles))
}

fn run_baseline(args: &BaselineArgs) -> Result<ExitCode> {
    let kind = match args.kind {
        Kind::Random => BaselineKind::Random,
        Kind::Lead => BaselineKind::Lead,
    };
    let rouge = args.rouge.config();
    let results = for_each_bundle(&args.bundles, 1, |bundle| {
        let topic = load(bundle)?;
        let config = PipelineConfig { length_budget: args.budget.length, duc_mode: args.budget.duc, ..PipelineConfig::default() };
        let summary = baseline::run(kind, &topic, config.length_budget_for(&topic), args.seed);
        let dir = topic_dir(&args.out, &topic)?;
        fs::write(dir.join("summary.txt"), summary.text())?;
        if let Some(r) = pipeline::score_against_references(&summary.text(), &topic, &rouge)? {
            write_json(&dir.join("rouge.json"), &r)?;
        }
        Ok(true)
    })?;
    Ok(exit_code(results, &args.bundles))
}

fn run_rouge(args: &RougeArgs) -> Result<ExitCode> {
    let system = fs::read_to_string(&args.sys).with_context(|| format!("reading {}", args.sys.display()))?;
    let mut files: Vec<PathBuf> = fs::read_dir(&args.refs)
        .with_context(|| format!("reading {}", args.refs.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .txt references in {}", args.refs.display());
    }
    let refs = files.iter().map(fs::read_to_string).collect::<Result<Vec<_>, _>>()?;
    let refs: Vec<&str> = refs.iter().map(String::as_str).collect();
    let scores = rouge::score(&system, &refs, &args.rouge.config())?;
    match &args.out {
        Some(path) => write_json(path, &scores)?,
        None => println!("{}", serde_json::to_string_pretty(&scores)?),
    }
    Ok(ExitCode::SUCCESS)
}

fn dump_trace(path: &Path) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let trace: Trace = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    println!("topic {} (L = {}, comments {})", trace.topic_id, trace.length_budget, if trace.comments_enabled { "on" } else { "off" });
    println!(
        "sparse coding: {} iterations, {}, loss {:.6} -> {:.6}",
        trace.sparse_coding_iterations,
        if trace.sparse_coding_converged { "converged" } else { "stopped at the iteration cap" },
        trace.loss_trace.first().copied().unwrap_or(0.0),
        trace.loss_trace.last().copied().unwrap_or(0.0),
    );
    for s in &trace.expressiveness {
        println!("  {:<12} {:.6}", s.sentence_id, s.expressiveness);
    }
    println!(
        "program: {} phrases, {} similar pairs, {} variables, {} rows",
        trace.pool_size, trace.similar_pairs, trace.num_vars, trace.num_constraints
    );
    let status = match trace.status {
        SolveStatus::Optimal => "optimal".to_string(),
        SolveStatus::FeasibleWithGap(g) => format!("gap {g:.6}"),
        SolveStatus::Infeasible => "infeasible".to_string(),
    };
    println!("solution: objective {:.6}, {status}, {} nodes", trace.objective_value, trace.nodes_explored);
    println!("selected: {}", trace.selected_phrases.join(" "));
    for c in &trace.clusters {
        println!("  {}: {:?} / {:?}", c.id, c.full_form, c.short_form);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Summarize(a) => summarize(a),
        Command::Baseline(a) => run_baseline(a),
        Command::Rouge(a) => run_rouge(a),
        Command::DumpTrace { trace } => dump_trace(trace),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(EXIT_INPUT)
    })
}

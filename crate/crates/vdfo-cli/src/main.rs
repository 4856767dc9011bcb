//! Command-line front-end: classify patterns, solve vertex deletion
//! instances with automatic engine dispatch, generate hardness-source
//! instances, and apply the gadget reductions.
//!
//! Exit codes: 0 = yes, 1 = no, 2 = error. Reports are line-oriented and
//! deterministic: identical invocations produce byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vdfo::engines::{self, EngineChoice, ResolvedEngine};
use vdfo::oracle::{self, VDInstance, DEFAULT_WORK_BOUND};
use vdfo::reductions::{
    self, matched_reach_to_text, set_cover_to_text, MatchedReachInstance, ParsedSource,
    ReducedInstance, ReductionTarget, SetCoverInstance,
};
use vdfo::structures::{graph_to_text, parse_structure, validate_class, StructureClass};
use vdfo::{classify_with_rule, Formula, Pattern, Tier};

#[derive(Parser)]
#[command(
    name = "vdfo",
    about = "Vertex deletion for first-order definable properties",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a quantifier pattern for a structure class.
    Classify(ClassifyArgs),
    /// Decide a vertex deletion instance.
    Solve(SolveArgs),
    /// Apply a gadget reduction to a source instance file.
    Reduce(ReduceArgs),
    /// Generate a seeded source instance file.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Pattern over {a, e}; may be empty.
    #[arg(short = 'p', long)]
    pattern: String,
    /// Structure class: basic, undirected, directed, or arbitrary.
    #[arg(short = 'c', long)]
    class: String,
}

#[derive(Args)]
struct SolveArgs {
    /// Formula file.
    #[arg(short = 'f', long)]
    formula: PathBuf,
    /// Graph or structure file.
    #[arg(short = 'g', long)]
    graph: PathBuf,
    /// Deletion budget.
    #[arg(short = 'k')]
    k: usize,
    /// Structure class override (defaults to the file's declared class).
    #[arg(short = 'c', long)]
    class: Option<String>,
    /// Engine: auto, brute, witness_walk, hitting_set, or search_tree.
    #[arg(short = 'e', long, default_value = "auto")]
    engine: String,
    /// Re-check the witness and cross-check against brute force.
    #[arg(long)]
    verify: bool,
    /// Enable empty-universe mode (deleting all elements is allowed).
    #[arg(long)]
    allow_empty: bool,
    /// Work bound for the brute-force oracle.
    #[arg(long, default_value_t = DEFAULT_WORK_BOUND)]
    work_bound: u64,
}

#[derive(Args)]
struct ReduceArgs {
    /// Source instance file (mreach or setcover).
    #[arg(short = 's', long)]
    source: PathBuf,
    /// Target: eeae_basic, aae_basic, aee_basic, eae_undirected,
    /// ae_directed, or aea.
    #[arg(short = 't', long)]
    target: String,
    /// Output prefix; writes `<prefix>.graph` and `<prefix>.fo`.
    #[arg(short = 'o', long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    kind: GenerateKind,
}

#[derive(Subcommand)]
enum GenerateKind {
    /// A matched-reach instance with seeded random matchings.
    Mreach {
        /// Number of paths.
        #[arg(short = 'n')]
        n: usize,
        /// Number of layers.
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 0)]
        s_row: u32,
        #[arg(long, default_value_t = 0)]
        t_row: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file.
        #[arg(short = 'o', long)]
        out: PathBuf,
    },
    /// A set-cover instance with seeded random edges.
    Setcover {
        /// Size of the cover side S.
        #[arg(long)]
        set_size: usize,
        /// Size of the universe side U.
        #[arg(long)]
        universe_size: usize,
        #[arg(short = 'k')]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file.
        #[arg(short = 'o', long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Generate(args) => cmd_generate(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, String> {
    let pattern = Pattern::new(&args.pattern)?;
    let class: StructureClass = args.class.parse()?;
    let (tier, rule) = classify_with_rule(&pattern, class);
    println!("{tier} ({rule})");
    Ok(ExitCode::SUCCESS)
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, String> {
    let formula = Formula::parse(&read(&args.formula)?).map_err(|e| e.to_string())?;
    let input = parse_structure(&read(&args.graph)?).map_err(|e| e.to_string())?;
    let class = match &args.class {
        Some(c) => {
            let requested: StructureClass = c.parse()?;
            if let Some(gc) = requested.graph_class() {
                validate_class(input.structure(), gc).map_err(|e| e.to_string())?;
            }
            requested
        }
        None => input.declared_class(),
    };
    let engine: EngineChoice = args.engine.parse()?;
    let instance = VDInstance::new(input.structure().clone(), class, formula.clone(), args.k)
        .map_err(|e| e.to_string())?
        .allow_empty(args.allow_empty);

    let pattern = formula.pattern();
    let (tier, _) = classify_with_rule(&pattern, class);
    println!("pattern: {pattern}");
    println!("class: {class}");
    println!("tier: {tier}");
    if engine == EngineChoice::Auto && tier == Tier::ContainsW2Hard {
        println!(
            "warning: pattern contains aea; the fragment has W[2]-hard problems, solving by brute force"
        );
    }
    let (verdict, resolved) =
        engines::solve(&instance, engine, args.work_bound).map_err(|e| e.to_string())?;
    println!("engine: {resolved}");
    println!("verdict: {}", if verdict.answer { "yes" } else { "no" });
    if let Some(witness) = &verdict.witness {
        println!("witness: {witness}");
    }
    println!(
        "stats: subsets={} nodes={} max_nodes_per_assignment={}",
        verdict.stats.subsets_tested,
        verdict.stats.nodes_explored,
        verdict.stats.max_nodes_per_assignment
    );
    if args.verify {
        if let Some(witness) = &verdict.witness {
            let ok = instance
                .verify_witness(witness)
                .map_err(|e| e.to_string())?;
            if !ok {
                return Err(
                    "verification failed: reported witness does not satisfy the formula"
                        .to_string(),
                );
            }
        }
        if resolved != ResolvedEngine::Brute {
            let reference = oracle::brute_force_vd_bounded(&instance, args.work_bound)
                .map_err(|e| e.to_string())?;
            if reference.answer != verdict.answer {
                return Err("verification failed: engine disagrees with brute force".to_string());
            }
        }
        println!("verify: ok");
    }
    Ok(if verdict.answer {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_reduce(args: ReduceArgs) -> Result<ExitCode, String> {
    let target: ReductionTarget = args.target.parse()?;
    let source = reductions::parse_source(&read(&args.source)?).map_err(|e| e.to_string())?;
    let reduced: ReducedInstance = match &source {
        ParsedSource::MatchedReach(m) => {
            reductions::reduce_matched_reach(m, target).map_err(|e| e.to_string())?
        }
        ParsedSource::SetCover(sc) => {
            if target != ReductionTarget::Aea {
                return Err(format!(
                    "the {target} reduction takes matched-reach sources"
                ));
            }
            reductions::reduce_set_cover_aea(sc).map_err(|e| e.to_string())?
        }
    };
    let graph_path = args.out.with_extension("graph");
    let formula_path = args.out.with_extension("fo");
    fs::write(&graph_path, graph_to_text(&reduced.graph))
        .map_err(|e| format!("{}: {e}", graph_path.display()))?;
    fs::write(&formula_path, format!("{}\n", reduced.formula))
        .map_err(|e| format!("{}: {e}", formula_path.display()))?;
    println!("target: {target}");
    println!("kprime: {}", reduced.k_prime);
    println!("vertices: {}", reduced.graph.n());
    println!("edges: {}", reduced.graph.edge_count());
    println!("wrote: {}", graph_path.display());
    println!("wrote: {}", formula_path.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode, String> {
    match args.kind {
        GenerateKind::Mreach {
            n,
            k,
            s_row,
            t_row,
            seed,
            out,
        } => {
            let m = MatchedReachInstance::generate(n, k, seed, s_row, t_row)
                .map_err(|e| e.to_string())?;
            fs::write(&out, matched_reach_to_text(&m))
                .map_err(|e| format!("{}: {e}", out.display()))?;
            println!("reachable: {}", if m.reach_answer() { "yes" } else { "no" });
            println!("wrote: {}", out.display());
        }
        GenerateKind::Setcover {
            set_size,
            universe_size,
            k,
            seed,
            out,
        } => {
            let sc = SetCoverInstance::generate(set_size, universe_size, k, seed);
            fs::write(&out, set_cover_to_text(&sc))
                .map_err(|e| format!("{}: {e}", out.display()))?;
            println!("wrote: {}", out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

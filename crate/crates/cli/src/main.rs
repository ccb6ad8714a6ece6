//! `simt` — compute with special inverse monoid presentations.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use simt_core::automaton::{GeneratingSet, SubmonoidOracle};
use simt_core::benois::{self, BenoisAnalysis, Invertibility};
use simt_core::construct::{self, FactorSet, PowerKind};
use simt_core::fixtures;
use simt_core::presentation::SpecialInversePresentation;
use simt_core::report::FullReport;
use simt_core::stephen::{self, Limits};
use simt_core::word::{Alphabet, Word};

#[derive(Parser)]
#[command(name = "simt", version, about = "Tools for special inverse monoid presentations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorize the defining words into invertible pieces and report a
    /// group verdict.
    Benois(BenoisArgs),
    /// Decide membership in the submonoid of a free group generated by a
    /// finite word set.
    Member(MemberArgs),
    /// Run the built-in verification cases.
    Fixtures(FixturesArgs),
    /// Show the predicates of a word.
    Classify(ClassifyArgs),
    /// Prove u = 1 (or invertibility of u) with the bounded graph
    /// procedure.
    Stephen(StephenArgs),
    /// Build presentations and run the exploratory checkers.
    #[command(subcommand)]
    Construct(ConstructCommand),
}

#[derive(Args)]
struct BenoisArgs {
    /// Presentation file (gens:/rel: lines).
    file: PathBuf,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Also run the bounded refinement and print both factorizations.
    #[arg(long)]
    refine: bool,
    /// Write the saturated membership automaton as DOT.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[arg(long, default_value_t = Limits::default().max_rounds)]
    max_rounds: usize,
    #[arg(long, default_value_t = Limits::default().max_vertices)]
    max_vertices: usize,
}

#[derive(Args)]
struct MemberArgs {
    /// Generator letters, e.g. `ab`.
    #[arg(long)]
    gens: String,
    /// Comma-separated generating words (uppercase = inverse letter).
    #[arg(long, value_delimiter = ',')]
    set: Vec<String>,
    /// Query word.
    #[arg(long)]
    word: Option<String>,
    /// Report whether the identity is a nonempty product of the set
    /// (ignores --word).
    #[arg(long)]
    semigroup_identity: bool,
}

#[derive(Args)]
struct FixturesArgs {
    /// Only run cases whose name contains this substring.
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Word literal.
    word: String,
}

#[derive(Args)]
struct StephenArgs {
    /// Presentation file (gens:/rel: lines).
    file: PathBuf,
    /// Goal word.
    #[arg(long)]
    word: String,
    /// Prove invertibility (u·u⁻¹ = 1 and u⁻¹·u = 1) instead of u = 1.
    #[arg(long)]
    invertible: bool,
    #[arg(long, default_value_t = Limits::default().max_rounds)]
    max_rounds: usize,
    #[arg(long, default_value_t = Limits::default().max_vertices)]
    max_vertices: usize,
    /// Write the final folded graph as DOT.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Wrap a group relator so the inverse monoid presents the same group.
    Rwr(RwrArgs),
    /// Transfer a positive group relator to a group-presenting positive
    /// inverse monoid relator.
    Positive(RwrArgs),
    /// The self-overlap-free group family a²b²·(aⁱ|bⁱ)·a³bab.
    Ohare(OhareArgs),
    /// Sample random positive middles for a candidate group-making pair.
    Sampler(SamplerArgs),
    /// Exhaustively enumerate vanishing prefix products.
    PrefixProducts(PrefixProductsArgs),
}

#[derive(Args)]
struct RwrArgs {
    #[arg(long)]
    gens: String,
    #[arg(long)]
    relator: String,
    /// Emit the JSON analysis report of the constructed presentation.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OhareArgs {
    /// Which letter fills the middle.
    #[arg(long, value_enum)]
    kind: MiddleKind,
    /// Middle power.
    #[arg(long)]
    i: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MiddleKind {
    A,
    B,
}

#[derive(Args)]
struct SamplerArgs {
    #[arg(long)]
    gens: String,
    #[arg(long)]
    u: String,
    #[arg(long)]
    v: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PrefixProductsArgs {
    #[arg(long)]
    relator: String,
    #[arg(long, default_value_t = 4)]
    max_factors: usize,
    /// Use prefixes of the relator only (default: prefixes of the relator
    /// and of its inverse).
    #[arg(long)]
    prefixes_only: bool,
    #[arg(long, default_value_t = 10_000_000)]
    node_budget: usize,
    #[arg(long)]
    json: bool,
}

// 2 = input error, 1 = verification failure.
enum CmdError {
    Input(String),
    Verification(String),
}

impl CmdError {
    fn input(e: impl std::fmt::Display) -> Self {
        CmdError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes, like other Unix
    // filters, instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CmdError::Input(message))) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Ok(Err(CmdError::Verification(message))) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        // Internal assertion failures land here; the panic hook has
        // already written the message to stderr.
        Err(_) => ExitCode::from(1),
    }
}

fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Benois(args) => cmd_benois(args),
        Command::Member(args) => cmd_member(args),
        Command::Fixtures(args) => cmd_fixtures(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Stephen(args) => cmd_stephen(args),
        Command::Construct(args) => cmd_construct(args),
    }
}

fn load_presentation(path: &PathBuf) -> Result<SpecialInversePresentation, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
    SpecialInversePresentation::parse(&text)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))
}

fn parse_word(s: &str) -> Result<Word, CmdError> {
    s.parse().map_err(CmdError::input)
}

fn parse_alphabet(s: &str) -> Result<Alphabet, CmdError> {
    Alphabet::parse(s).map_err(CmdError::input)
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CmdError> {
    std::fs::write(path, contents)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))
}

fn cmd_benois(args: BenoisArgs) -> Result<(), CmdError> {
    let p = load_presentation(&args.file)?;
    let limits = Limits {
        max_rounds: args.max_rounds,
        max_vertices: args.max_vertices,
    };
    if let Some(dot_path) = &args.dot {
        let analysis = BenoisAnalysis::new(&p);
        write_file(dot_path, &analysis.oracle().automaton().to_dot())?;
    }
    if args.json {
        let report = FullReport::compute(&p, args.refine.then_some(limits));
        println!("{}", report.to_json());
        return Ok(());
    }
    let analysis = BenoisAnalysis::new(&p);
    println!("gens: {}", p.alphabet());
    let factorizations = analysis.factorize();
    for f in &factorizations {
        println!("relator: {}", f.relator());
        println!("  benois: {}", f.pieces_display());
        if args.refine {
            let refined = stephen::refine_factorization(&p, f, &limits);
            println!("  stephen: {}", refined.pieces_display());
        }
    }
    let letters: Vec<String> = analysis
        .invertible_letters()
        .iter()
        .map(|(ch, status)| {
            let status = match status {
                Invertibility::Invertible => "invertible",
                Invertibility::Unknown => "unknown",
            };
            format!("{ch}={status}")
        })
        .collect();
    println!("letters: {}", letters.join(", "));
    let verdict = match analysis.group_verdict() {
        benois::GroupVerdict::Group => "group",
        benois::GroupVerdict::Unknown => "unknown",
    };
    println!("group_verdict: {verdict}");
    let pieces: Vec<String> = analysis.pieces().iter().map(|p| p.to_string()).collect();
    println!("pieces: {}", pieces.join("|"));
    Ok(())
}

fn cmd_member(args: MemberArgs) -> Result<(), CmdError> {
    let alphabet = parse_alphabet(&args.gens)?;
    let mut words = Vec::new();
    for s in &args.set {
        let word = parse_word(s)?;
        alphabet.check_word(&word).map_err(CmdError::input)?;
        words.push(word);
    }
    let gens = GeneratingSet::new(alphabet.clone(), words);
    if args.semigroup_identity {
        let answer = simt_core::subsemigroup_contains_identity(&gens);
        println!("{answer}");
        return Ok(());
    }
    let query = args
        .word
        .as_deref()
        .ok_or_else(|| CmdError::Input("--word is required without --semigroup-identity".into()))?;
    let query = parse_word(query)?;
    alphabet.check_word(&query).map_err(CmdError::input)?;
    let oracle = SubmonoidOracle::new(&gens);
    println!("{}", oracle.contains(&query));
    Ok(())
}

fn cmd_fixtures(args: FixturesArgs) -> Result<(), CmdError> {
    let outcomes = fixtures::run_fixtures(args.filter.as_deref());
    if outcomes.is_empty() {
        eprintln!("warning: no fixture matches the filter");
        return Ok(());
    }
    let name_width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let anchor_width = outcomes.iter().map(|o| o.anchor.len()).max().unwrap_or(0);
    let mut failed = 0;
    for outcome in &outcomes {
        let (status, detail) = match &outcome.result {
            Ok(()) => ("PASS", String::new()),
            Err(message) => {
                failed += 1;
                ("FAIL", format!("  {message}"))
            }
        };
        println!(
            "{:name_width$}  {:anchor_width$}  {status}{detail}",
            outcome.name, outcome.anchor
        );
    }
    println!("{} passed, {} failed", outcomes.len() - failed, failed);
    if failed > 0 {
        return Err(CmdError::Verification(format!("{failed} fixture(s) failed")));
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), CmdError> {
    let word = parse_word(&args.word)?;
    let class = word.classify();
    let mut flags = Vec::new();
    if class.is_positive {
        flags.push("positive");
    }
    if class.is_reduced {
        flags.push("reduced");
    }
    if class.is_cyclically_reduced {
        flags.push("cyclically_reduced");
    }
    if class.is_self_overlap_free {
        flags.push("self_overlap_free");
    }
    if flags.is_empty() {
        flags.push("none");
    }
    println!("{}", flags.join(", "));
    Ok(())
}

fn cmd_stephen(args: StephenArgs) -> Result<(), CmdError> {
    let p = load_presentation(&args.file)?;
    let word = parse_word(&args.word)?;
    p.alphabet().check_word(&word).map_err(CmdError::input)?;
    let limits = Limits {
        max_rounds: args.max_rounds,
        max_vertices: args.max_vertices,
    };
    let result = if args.invertible {
        stephen::proves_invertible(&p, &word, &limits)
    } else {
        stephen::proves_identity(&p, &word, &limits)
    };
    if let Some(dot_path) = &args.dot {
        // Re-run the expansion to the same depth to export the graph.
        let mut session = stephen::ProofSession::new(&p);
        for _ in 0..result.rounds_used {
            session.advance(&limits);
        }
        write_file(dot_path, &session.graph().to_dot())?;
    }
    match result.status {
        stephen::ProofStatus::Proved => println!(
            "proved (rounds={}, vertices={})",
            result.rounds_used, result.vertices_used
        ),
        stephen::ProofStatus::Unknown => println!(
            "unknown (rounds={}, vertices={})",
            result.rounds_used, result.vertices_used
        ),
    }
    Ok(())
}

fn cmd_construct(command: ConstructCommand) -> Result<(), CmdError> {
    match command {
        ConstructCommand::Rwr(args) => {
            let input = construct::GroupPresentationInput::new(
                parse_alphabet(&args.gens)?,
                parse_word(&args.relator)?,
            );
            let p = construct::rwr_presentation(&input);
            emit_presentation(&p, args.json)
        }
        ConstructCommand::Positive(args) => {
            let input = construct::GroupPresentationInput::new(
                parse_alphabet(&args.gens)?,
                parse_word(&args.relator)?,
            );
            let p = construct::positive_transfer(&input).map_err(CmdError::input)?;
            emit_presentation(&p, args.json)
        }
        ConstructCommand::Ohare(args) => {
            let kind = match args.kind {
                MiddleKind::A => PowerKind::APower,
                MiddleKind::B => PowerKind::BPower,
            };
            let p = construct::ohare_family(kind, args.i);
            emit_presentation(&p, args.json)
        }
        ConstructCommand::Sampler(args) => {
            let alphabet = parse_alphabet(&args.gens)?;
            let u = parse_word(&args.u)?;
            let v = parse_word(&args.v)?;
            for word in [&u, &v] {
                alphabet.check_word(word).map_err(CmdError::input)?;
                if !word.is_positive() {
                    return Err(CmdError::Input(format!("{word} is not positive")));
                }
            }
            let report = construct::group_making_sampler(
                &alphabet,
                &u,
                &v,
                args.samples,
                args.max_len,
                args.seed,
            );
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "samples: {}  group: {}  unknown: {}",
                    report.samples, report.group_count, report.unknown_count
                );
                if let Some(witness) = &report.first_unknown {
                    println!("first_unknown_middle: {witness}");
                } else {
                    println!("no counterexample found (proves nothing)");
                }
            }
            Ok(())
        }
        ConstructCommand::PrefixProducts(args) => {
            let relator = parse_word(&args.relator)?;
            let factor_set = if args.prefixes_only {
                FactorSet::PrefixesOnly
            } else {
                FactorSet::PrefixesAndInverses
            };
            let report = construct::check_prefix_products(
                &relator,
                args.max_factors,
                factor_set,
                args.node_budget,
            )
            .map_err(CmdError::input)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "factors: {}  nodes: {}  vanishing: {}",
                    report.factors.len(),
                    report.nodes_explored,
                    report.vanishing.len()
                );
                for product in &report.vanishing {
                    let line: Vec<String> = product.iter().map(|f| f.to_string()).collect();
                    println!("  1 = {}", line.join(" · "));
                }
            }
            Ok(())
        }
    }
}

fn emit_presentation(p: &SpecialInversePresentation, json: bool) -> Result<(), CmdError> {
    if json {
        let report = FullReport::compute(p, None);
        println!("{}", report.to_json());
    } else {
        print!("{}", p.to_text());
    }
    Ok(())
}

//! Command-line front end: parses words and generator maps, dispatches to
//! the decision procedures and prints deterministic reports.
//!
//! Exit codes: 0 = yes/true, 1 = no/false, 2 = unknown, 3 = usage, parse or
//! I/O error. Diagnostics go to stderr; reports go to stdout.

mod report;

use std::fs;

use brinkmann_core::{
    brcp, brp, oracle_conj_coset_traced, oracle_coset_membership_traced, orbit_trace,
    parse_endomorphism, parse_word, render_expression, CycleMode, Decision, Endomorphism,
    OracleConfig, OrbitTrace, StallingsAutomaton, Word,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use report::{
    reason_slug, ConjReport, DecisionReport, ExpressReport, MemberReport, PreimageReport,
    TraceReport,
};

/// Environment variable holding the default orbit search depth.
const MAX_DEPTH_ENV: &str = "BRINKMANN_MAX_DEPTH";

#[derive(Parser)]
#[command(
    name = "brinkmann",
    version,
    about = "Decision procedures for orbit problems of free-group endomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether u·phi^k = v for some k >= 0
    Brp(DecisionArgs),
    /// Decide whether u·phi^k is conjugate to v for some k >= 0
    Brcp(DecisionArgs),
    /// Test conjugacy of two words in the free group
    Conj(ConjArgs),
    /// Test membership of a word in a finitely generated subgroup
    Member(SubgroupArgs),
    /// Express a member word over the subgroup generators
    Express(SubgroupArgs),
    /// Compute one preimage of a word under an endomorphism
    Preimage(PreimageArgs),
    /// Walk the orbit of a word under iterated application
    OrbitTrace(TraceArgs),
}

#[derive(Args)]
struct MapSource {
    /// Generator map, e.g. "a=ab;b=b"
    #[arg(long)]
    map: Option<String>,
    /// File with one entry per line ("a -> a b") or a JSON document
    /// {"rank": 2, "images": ["ab", "b"]}
    #[arg(long)]
    map_file: Option<String>,
}

#[derive(Args)]
struct DecisionArgs {
    /// Ambient free-group rank
    #[arg(long)]
    rank: usize,
    #[command(flatten)]
    map: MapSource,
    /// Orbit search depth (default: $BRINKMANN_MAX_DEPTH or 10000)
    #[arg(long)]
    max_depth: Option<usize>,
    /// Total-letter budget across stored orbit states
    #[arg(long)]
    length_budget: Option<usize>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Print the witness on a yes answer
    #[arg(long)]
    witness: bool,
    u: String,
    v: String,
}

#[derive(Args)]
struct ConjArgs {
    /// Ambient free-group rank
    #[arg(long)]
    rank: usize,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    u: String,
    v: String,
}

#[derive(Args)]
struct SubgroupArgs {
    /// Ambient free-group rank
    #[arg(long)]
    rank: usize,
    /// Subgroup generators, e.g. "aa;b"
    #[arg(long)]
    gens: String,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Write the subgroup automaton to FILE in DOT format
    #[arg(long, value_name = "FILE")]
    dot: Option<String>,
    word: String,
}

#[derive(Args)]
struct PreimageArgs {
    /// Ambient free-group rank
    #[arg(long)]
    rank: usize,
    #[command(flatten)]
    map: MapSource,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Write the image automaton to FILE in DOT format
    #[arg(long, value_name = "FILE")]
    dot: Option<String>,
    v: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TraceMode {
    Exact,
    Cyclic,
}

#[derive(Args)]
struct TraceArgs {
    /// Ambient free-group rank
    #[arg(long)]
    rank: usize,
    #[command(flatten)]
    map: MapSource,
    /// Orbit steps to walk (default: $BRINKMANN_MAX_DEPTH or 10000)
    #[arg(long)]
    max_depth: Option<usize>,
    /// Total-letter budget across stored orbit states
    #[arg(long)]
    length_budget: Option<usize>,
    /// Orbit states to track: exact words or canonical cyclic forms
    #[arg(long, value_enum, default_value = "exact")]
    mode: TraceMode,
    /// Evaluate the kernel-coset predicate against this target (exact mode)
    #[arg(long, value_name = "V1", conflicts_with = "conj")]
    coset: Option<String>,
    /// Evaluate the conjugacy-coset predicate against this target (cyclic mode)
    #[arg(long, value_name = "V")]
    conj: Option<String>,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    u: String,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            std::process::exit(code);
        }
    };
    let outcome = match cli.command {
        Command::Brp(args) => run_decision("brp", args),
        Command::Brcp(args) => run_decision("brcp", args),
        Command::Conj(args) => run_conj(args),
        Command::Member(args) => run_member(args),
        Command::Express(args) => run_express(args),
        Command::Preimage(args) => run_preimage(args),
        Command::OrbitTrace(args) => run_trace(args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(3);
        }
    }
}

/// JSON form of the endomorphism document format.
#[derive(Deserialize)]
struct EndoDoc {
    #[serde(default)]
    rank: Option<usize>,
    images: Vec<String>,
}

fn load_map(source: &MapSource, rank: usize) -> Result<Endomorphism, String> {
    match (&source.map, &source.map_file) {
        (Some(inline), None) => parse_endomorphism(inline, rank).map_err(|e| e.to_string()),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            if text.trim_start().starts_with('{') {
                let doc: EndoDoc =
                    serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
                if doc.rank.is_some_and(|r| r != rank) {
                    return Err(format!(
                        "{path}: document rank {} does not match --rank {rank}",
                        doc.rank.unwrap()
                    ));
                }
                if doc.images.len() != rank {
                    return Err(format!(
                        "{path}: expected {rank} images, found {}",
                        doc.images.len()
                    ));
                }
                let images = doc
                    .images
                    .iter()
                    .map(|img| parse_word(img, rank))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| e.to_string())?;
                Endomorphism::new(images).map_err(|e| e.to_string())
            } else {
                parse_endomorphism(&text, rank).map_err(|e| e.to_string())
            }
        }
        _ => Err("exactly one of --map and --map-file is required".to_string()),
    }
}

fn oracle_config(
    max_depth: Option<usize>,
    length_budget: Option<usize>,
) -> Result<OracleConfig, String> {
    let mut cfg = OracleConfig::default();
    match max_depth {
        Some(depth) => cfg.max_depth = depth,
        None => {
            if let Ok(text) = std::env::var(MAX_DEPTH_ENV) {
                cfg.max_depth = text
                    .parse()
                    .map_err(|_| format!("invalid {MAX_DEPTH_ENV} value {text:?}"))?;
            }
        }
    }
    if let Some(budget) = length_budget {
        cfg.length_budget = budget;
    }
    Ok(cfg)
}

fn map_strings(phi: &Endomorphism) -> Vec<String> {
    phi.images().iter().map(|w| w.to_string()).collect()
}

fn reason_human(slug: &str) -> String {
    slug.replace('-', " ")
}

fn run_decision(problem: &'static str, args: DecisionArgs) -> Result<i32, String> {
    let phi = load_map(&args.map, args.rank)?;
    let u = parse_word(&args.u, args.rank).map_err(|e| e.to_string())?;
    let v = parse_word(&args.v, args.rank).map_err(|e| e.to_string())?;
    let cfg = oracle_config(args.max_depth, args.length_budget)?;
    let decision = if problem == "brp" {
        brp(&u, &v, &phi, &cfg)
    } else {
        brcp(&u, &v, &phi, &cfg)
    };
    if args.json {
        let report = DecisionReport::new(
            problem,
            args.rank,
            map_strings(&phi),
            u.to_string(),
            v.to_string(),
            cfg.max_depth,
            &decision,
        );
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        match &decision {
            Decision::Yes { k, witness } => {
                println!("Yes (k = {k})");
                if args.witness {
                    let label = if problem == "brp" { "witness" } else { "conjugator" };
                    println!("{label}: {witness}");
                }
            }
            Decision::No { reason } => {
                println!("No ({})", reason_human(reason_slug(*reason)));
            }
            Decision::Unknown { depth } => println!("Unknown (depth {depth})"),
        }
    }
    Ok(match decision {
        Decision::Yes { .. } => 0,
        Decision::No { .. } => 1,
        Decision::Unknown { .. } => 2,
    })
}

fn run_conj(args: ConjArgs) -> Result<i32, String> {
    let u = parse_word(&args.u, args.rank).map_err(|e| e.to_string())?;
    let v = parse_word(&args.v, args.rank).map_err(|e| e.to_string())?;
    let conjugator = u.conjugator_to(&v);
    if args.json {
        let report = ConjReport {
            problem: "conj",
            rank: args.rank,
            u: u.to_string(),
            v: v.to_string(),
            conjugate: conjugator.is_some(),
            conjugator: conjugator.as_ref().map(Word::to_string),
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        match &conjugator {
            Some(g) => println!("Yes (conjugator: {g})"),
            None => println!("No"),
        }
    }
    Ok(if conjugator.is_some() { 0 } else { 1 })
}

fn parse_generators(text: &str, rank: usize) -> Result<Vec<Word>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|entry| !entry.is_empty())
        .map(|entry| parse_word(entry, rank).map_err(|e| e.to_string()))
        .collect()
}

fn export_dot(path: &Option<String>, aut: &StallingsAutomaton) -> Result<(), String> {
    if let Some(path) = path {
        fs::write(path, aut.to_dot()).map_err(|e| format!("{path}: {e}"))?;
    }
    Ok(())
}

fn run_member(args: SubgroupArgs) -> Result<i32, String> {
    let gens = parse_generators(&args.gens, args.rank)?;
    let word = parse_word(&args.word, args.rank).map_err(|e| e.to_string())?;
    let aut = StallingsAutomaton::build(args.rank, &gens);
    export_dot(&args.dot, &aut)?;
    let member = aut.member(&word);
    if args.json {
        let report = MemberReport {
            problem: "member",
            rank: args.rank,
            generators: gens.iter().map(Word::to_string).collect(),
            word: word.to_string(),
            member,
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("{}", if member { "yes" } else { "no" });
    }
    Ok(if member { 0 } else { 1 })
}

fn run_express(args: SubgroupArgs) -> Result<i32, String> {
    let gens = parse_generators(&args.gens, args.rank)?;
    let word = parse_word(&args.word, args.rank).map_err(|e| e.to_string())?;
    let aut = StallingsAutomaton::build(args.rank, &gens);
    export_dot(&args.dot, &aut)?;
    let table = aut.expression_table();
    let expression = aut.express(&table, &word).ok();
    if args.json {
        let report = ExpressReport {
            problem: "express",
            rank: args.rank,
            generators: gens.iter().map(Word::to_string).collect(),
            word: word.to_string(),
            member: expression.is_some(),
            expression: expression.as_ref().map(render_expression),
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        match &expression {
            Some(expr) => println!("{}", render_expression(expr)),
            None => println!("not in subgroup"),
        }
    }
    Ok(if expression.is_some() { 0 } else { 1 })
}

fn run_preimage(args: PreimageArgs) -> Result<i32, String> {
    let phi = load_map(&args.map, args.rank)?;
    let v = parse_word(&args.v, args.rank).map_err(|e| e.to_string())?;
    let aut = phi.image_automaton();
    export_dot(&args.dot, &aut)?;
    let preimage = brinkmann_core::preimage(&phi, &v);
    if args.json {
        let report = PreimageReport {
            problem: "preimage",
            rank: args.rank,
            map: map_strings(&phi),
            v: v.to_string(),
            in_image: preimage.is_some(),
            preimage: preimage.as_ref().map(Word::to_string),
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        match &preimage {
            Some(word) => println!("{word}"),
            None => println!("no preimage"),
        }
    }
    Ok(if preimage.is_some() { 0 } else { 1 })
}

fn run_trace(args: TraceArgs) -> Result<i32, String> {
    let phi = load_map(&args.map, args.rank)?;
    let u = parse_word(&args.u, args.rank).map_err(|e| e.to_string())?;
    let cfg = oracle_config(args.max_depth, args.length_budget)?;
    let (predicate, target_text, trace): (&'static str, Option<String>, OrbitTrace) =
        if let Some(text) = &args.coset {
            let v1 = parse_word(text, args.rank).map_err(|e| e.to_string())?;
            let (_, trace) = oracle_coset_membership_traced(&u, &v1, &phi, &cfg, true);
            ("coset", Some(v1.to_string()), trace)
        } else if let Some(text) = &args.conj {
            let v = parse_word(text, args.rank).map_err(|e| e.to_string())?;
            let (_, trace) = oracle_conj_coset_traced(&u, &v, &phi, &cfg, true);
            ("conj", Some(v.to_string()), trace)
        } else {
            let mode = match args.mode {
                TraceMode::Exact => CycleMode::ExactWord,
                TraceMode::Cyclic => CycleMode::CyclicClass,
            };
            ("none", None, orbit_trace(&phi, &u, &cfg, mode))
        };
    let mode = match (predicate, args.mode) {
        ("coset", _) => "exact",
        ("conj", _) => "cyclic",
        (_, TraceMode::Exact) => "exact",
        (_, TraceMode::Cyclic) => "cyclic",
    };
    if args.json {
        let (steps, cycle) = TraceReport::steps_from(&trace);
        let report = TraceReport {
            problem: "orbit-trace",
            rank: args.rank,
            map: map_strings(&phi),
            u: u.to_string(),
            mode,
            predicate,
            target: target_text,
            max_depth: cfg.max_depth,
            steps,
            cycle,
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        for step in &trace.steps {
            match step.predicate {
                Some(p) => println!("step {}: {}  pred={}", step.index, step.word, p),
                None => println!("step {}: {}", step.index, step.word),
            }
        }
        if let Some((preperiod, period)) = trace.cycle {
            println!("cycle: preperiod={preperiod} period={period}");
        } else if trace.steps.last().and_then(|s| s.predicate) == Some(true) {
            println!("hit: k={}", trace.steps.last().unwrap().index);
        } else {
            println!("end: depth {}", trace.steps.len());
        }
    }
    Ok(0)
}

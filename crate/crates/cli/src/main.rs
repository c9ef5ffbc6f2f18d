//! rootchips: reduced words in Coxeter groups, small roots, and the
//! roots-and-chips game.
//!
//! Exit codes: 0 the property holds / the word is reduced, 1 it does not /
//! is not, 2 usage or input errors.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rootchips::catalog::{catalog_from_tokens, CatalogEntry};
use rootchips::dfa::DEFAULT_DFA_CAP;
use rootchips::game::{
    bicoloured_position, check_diamond, explore, fire, initial_position, legal_moves,
    position_dot, ExploreOutcome, GamePosition,
};
use rootchips::recognizer::Recognizer;
use rootchips::root::{enumerate_small_roots_capped, poset_dot, root_order, Root, DEFAULT_STATE_CAP};
use rootchips::speyer::{check_speyer_property, SpeyerParams};
use rootchips::witness::find_affine_witness;
use rootchips::word::{bicoloured_word, intervening_violation, Word};
use rootchips::{CoxeterGraph, EdgeLabel};

#[derive(Parser)]
#[command(name = "rootchips", version, about = "Reduced words in Coxeter groups via the root automaton, plus the roots-and-chips game")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the intervening-neighbours property of a word
    #[command(name = "check-in")]
    CheckIn {
        /// Graph file (.cox line format or JSON)
        graph: String,
        /// Word letters, whitespace- or comma-separated
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// Decide whether a word is reduced; print a witness and a reduced word if not
    Reduce {
        graph: String,
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// Enumerate the small roots, one per line in canonical rendering
    Smallroots {
        graph: String,
        /// Emit the small-root poset as DOT instead
        #[arg(long)]
        dot: bool,
        /// Enumeration state cap
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        cap: usize,
    },
    /// Build the recognizing automaton over the small roots
    Dfa {
        graph: String,
        /// Emit the automaton as DOT instead of a summary
        #[arg(long)]
        dot: bool,
        /// Subset-construction state cap
        #[arg(long, default_value_t = DEFAULT_DFA_CAP)]
        cap: usize,
    },
    /// Print a prefix of the bicoloured word of a tree
    Bicolour {
        graph: String,
        /// Start vertex
        start: String,
        /// Prefix length
        len: usize,
    },
    /// Look for an affine witness certifying the group infinite
    Classify { graph: String },
    /// Emit a catalog graph as a .cox file
    Catalog {
        /// Family: At, Bt, Ct, Dt, E6t, E7t, E8t, F4t or G2t
        family: String,
        /// Rank, for the families that take one
        rank: Option<u32>,
        /// Emit JSON instead of the line format
        #[arg(long)]
        json: bool,
    },
    /// Play or explore the roots-and-chips game
    Game(GameArgs),
    /// Sample random intervening-neighbours words and assert they are reduced
    Speyer(SpeyerArgs),
}

#[derive(Args)]
struct GameArgs {
    graph: String,
    /// Intervening-neighbours word that mentions every vertex
    #[arg(long)]
    word: Option<String>,
    /// Explore all plays instead of following the word
    #[arg(long)]
    explore: bool,
    /// Depth cap for exploration
    #[arg(long, default_value_t = 50)]
    depth: usize,
    /// Position cap for exploration
    #[arg(long = "state-cap", default_value_t = 100_000)]
    state_cap: usize,
    /// Play at most this many moves of the word
    #[arg(long)]
    steps: Option<usize>,
    /// Print every intermediate position
    #[arg(long)]
    trace: bool,
    /// Use the bicoloured starting position when no word is given
    #[arg(long = "default-orientation", value_parser = ["bicoloured"])]
    default_orientation: Option<String>,
    /// Start vertex for the bicoloured position (default: first vertex)
    #[arg(long)]
    start: Option<String>,
    /// Print the final position as DOT
    #[arg(long)]
    dot: bool,
}

#[derive(Args)]
struct SpeyerArgs {
    /// Graph file
    #[arg(long, conflicts_with = "family")]
    graph: Option<String>,
    /// Catalog family and optional rank, e.g. `--family At 2` or `--family G2t`
    #[arg(long, num_args = 1..=2)]
    family: Option<Vec<String>>,
    #[arg(long)]
    samples: usize,
    #[arg(long = "max-len")]
    max_len: usize,
    #[arg(long)]
    seed: u64,
    /// Attach a fresh vertex to this one (label 3) before the run
    #[arg(long)]
    pendant: Option<String>,
    /// Raise the label of edge S T to M, e.g. `--raise a b inf`
    #[arg(long, num_args = 3, value_names = ["S", "T", "M"])]
    raise: Option<Vec<String>>,
    /// Skip the affine-witness precondition
    #[arg(long)]
    force: bool,
}

struct CliError(String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn load_graph(path: &str) -> Result<CoxeterGraph, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("cannot read `{path}`: {e}")))?;
    let g = CoxeterGraph::parse(&text).map_err(|e| CliError(format!("{path}: {e}")))?;
    let round = CoxeterGraph::parse(&g.to_cox_string())
        .map_err(|e| CliError(format!("{path}: canonical re-emit failed: {e}")))?;
    if round != g {
        return Err(CliError(format!("{path}: canonical re-emit does not round-trip")));
    }
    if !g.has_exact_labels() {
        eprintln!(
            "warning: `{path}` has labels outside {{3,4,5,6,inf}}; arithmetic is approximate and results are tainted"
        );
    }
    Ok(g)
}

fn parse_word(tokens: &[String], g: &CoxeterGraph) -> Result<Word, CliError> {
    Ok(Word::parse(&tokens.join(" "), g)?)
}

fn parse_label(token: &str) -> Result<EdgeLabel, CliError> {
    EdgeLabel::parse(token).ok_or_else(|| CliError(format!("bad edge label `{token}`")))
}

fn fresh_vertex_name(g: &CoxeterGraph) -> String {
    for c in b'a'..=b'z' {
        let name = (c as char).to_string();
        if g.vertex(&name).is_err() {
            return name;
        }
    }
    let mut i = 0;
    loop {
        let name = format!("p{i}");
        if g.vertex(&name).is_err() {
            return name;
        }
        i += 1;
    }
}

fn cmd_check_in(graph: &str, word: &[String]) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    let w = parse_word(word, &g)?;
    match intervening_violation(&w, &g)? {
        None => {
            println!("intervening neighbours: yes");
            Ok(0)
        }
        Some(v) => {
            println!(
                "intervening neighbours: no — letter `{}` at positions {} and {} misses neighbour `{}`",
                g.vertex_name(v.letter),
                v.first,
                v.second,
                g.vertex_name(v.missing)
            );
            Ok(1)
        }
    }
}

fn cmd_reduce(graph: &str, word: &[String]) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    let w = parse_word(word, &g)?;
    let recognizer = Recognizer::new(&g)?;
    let check = recognizer.is_reduced(&w)?;
    if check.reduced {
        println!("reduced");
        return Ok(0);
    }
    let witness = check.witness.expect("non-reduced words carry a witness");
    println!("not reduced: delete positions {} and {}", witness.i, witness.j);
    let reduced = recognizer.reduce_fully(&w)?;
    println!("reduced word: {}", reduced.display(&g));
    Ok(1)
}

fn cmd_smallroots(graph: &str, dot: bool, cap: usize) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    let set = enumerate_small_roots_capped(&g, cap)?;
    if dot {
        print!("{}", poset_dot(&set, &g));
    } else {
        let mut roots: Vec<Root> = set.roots().to_vec();
        roots.sort_by(root_order);
        for r in roots {
            println!("{}", r.render());
        }
    }
    Ok(0)
}

fn cmd_dfa(graph: &str, dot: bool, cap: usize) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    let recognizer = Recognizer::new(&g)?;
    let dfa = recognizer.build_dfa(cap)?;
    if dot {
        print!("{}", dfa.to_dot(&g, &recognizer));
    } else {
        println!("states: {} (including the dead state)", dfa.state_count());
        println!("alphabet: {} letters", dfa.alphabet());
        println!("small roots tracked: {}", recognizer.smalls().len());
    }
    Ok(0)
}

fn cmd_bicolour(graph: &str, start: &str, len: usize) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    let s = g.vertex(start)?;
    let w = bicoloured_word(&g, s, len)?;
    println!("{}", w.display(&g));
    Ok(0)
}

fn cmd_classify(graph: &str) -> Result<u8, CliError> {
    let g = load_graph(graph)?;
    match find_affine_witness(&g) {
        Some(w) => {
            println!("infinite: {}", w.describe(&g));
            Ok(0)
        }
        None => {
            println!("no affine witness found");
            Ok(1)
        }
    }
}

fn cmd_catalog(family: &str, rank: Option<u32>, json: bool) -> Result<u8, CliError> {
    let entry = catalog_from_tokens(family, rank)?;
    if json {
        println!("{}", entry.graph.to_json_string());
    } else {
        print!("{}", entry.graph.to_cox_string());
    }
    Ok(0)
}

fn game_start(args: &GameArgs, g: &CoxeterGraph) -> Result<GamePosition, CliError> {
    if let Some(text) = &args.word {
        let w = Word::parse(text, g)?;
        return Ok(initial_position(g, &w)?);
    }
    if args.default_orientation.as_deref() == Some("bicoloured") {
        let s = match &args.start {
            Some(name) => g.vertex(name)?,
            None => 0,
        };
        return Ok(bicoloured_position(g, s)?);
    }
    Err(CliError("pass --word <w> or --default-orientation bicoloured".into()))
}

fn cmd_game(args: &GameArgs) -> Result<u8, CliError> {
    let g = load_graph(&args.graph)?;
    let start = game_start(args, &g)?;
    if args.explore {
        match explore(&start, &g, args.depth, args.state_cap)? {
            ExploreOutcome::Converged { position, length } => {
                println!("converged after {length} moves");
                println!("{}", position.render(&g));
                if args.dot {
                    print!("{}", position_dot(&position, &g));
                }
            }
            ExploreOutcome::OpenBeyondCap { states_seen } => {
                println!("open beyond cap (depth {}; {} positions seen)", args.depth, states_seen);
            }
        }
        return Ok(0);
    }
    let mut position = start;
    if args.trace {
        println!("{}", position.render(&g));
    }
    let mut played = 0usize;
    if let Some(text) = &args.word {
        let w = Word::parse(text, &g)?;
        let budget = args.steps.unwrap_or(w.len().saturating_sub(1));
        for &letter in w.letters().iter().skip(1).take(budget) {
            position = fire(&position, letter, &g)?;
            played += 1;
            if args.trace {
                println!("{}", position.render(&g));
            }
        }
    }
    if !args.trace {
        println!("{}", position.render(&g));
    }
    let moves = legal_moves(&position, &g)?;
    let names: Vec<&str> = moves.iter().map(|&v| g.vertex_name(v)).collect();
    println!(
        "moves played: {played}; legal now: [{}]; diamond: {}",
        names.join(", "),
        check_diamond(&position, &g)?
    );
    if args.dot {
        print!("{}", position_dot(&position, &g));
    }
    Ok(0)
}

fn cmd_speyer(args: &SpeyerArgs) -> Result<u8, CliError> {
    let mut g = match (&args.graph, &args.family) {
        (Some(path), None) => load_graph(path)?,
        (None, Some(tokens)) => {
            let rank = match tokens.get(1) {
                Some(t) => Some(
                    t.parse::<u32>()
                        .map_err(|_| CliError(format!("bad rank `{t}`")))?,
                ),
                None => None,
            };
            let entry: CatalogEntry = catalog_from_tokens(&tokens[0], rank)?;
            entry.graph
        }
        _ => return Err(CliError("pass exactly one of --graph or --family".into())),
    };
    if let Some(vertex) = &args.pendant {
        let s = g.vertex(vertex)?;
        let name = fresh_vertex_name(&g);
        g = g.extend_pendant(s, &name, EdgeLabel::Finite(3))?;
        eprintln!("pendant `{name}` attached to `{vertex}` with label 3");
    }
    if let Some(raise) = &args.raise {
        let s = g.vertex(&raise[0])?;
        let t = g.vertex(&raise[1])?;
        let label = parse_label(&raise[2])?;
        g = g.increase_label(s, t, label)?;
    }
    let report = check_speyer_property(
        &g,
        SpeyerParams { samples: args.samples, max_len: args.max_len, seed: args.seed, force: args.force },
    )?;
    for w in &report.counterexamples {
        println!("counterexample: {}", w.display(&g));
    }
    println!("{} counterexamples", report.counterexamples.len());
    if report.tainted {
        eprintln!("warning: approximate labels; the verdict is tainted");
    }
    Ok(if report.holds() { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::CheckIn { graph, word } => cmd_check_in(graph, word),
        Command::Reduce { graph, word } => cmd_reduce(graph, word),
        Command::Smallroots { graph, dot, cap } => cmd_smallroots(graph, *dot, *cap),
        Command::Dfa { graph, dot, cap } => cmd_dfa(graph, *dot, *cap),
        Command::Bicolour { graph, start, len } => cmd_bicolour(graph, start, *len),
        Command::Classify { graph } => cmd_classify(graph),
        Command::Catalog { family, rank, json } => cmd_catalog(family, *rank, *json),
        Command::Game(args) => cmd_game(args),
        Command::Speyer(args) => cmd_speyer(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

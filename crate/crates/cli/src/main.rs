use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use hurwitz3::suite::{run_all, CheckConfig};
use hurwitz3::{
    apply_moves, bracket, components_g0, decide_equivalence, edge_to_moves, enumerate_v0, orbit_bfs,
    parse_factorization, validate_against, values_equal, BraidElement, Components, Decision, EquivalenceReport, Error,
    Factorization, MoveSequence, SignedWord, Verdict, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "hurwitz3", version, about = "Hurwitz equivalence of quasipositive factorizations of 3-braids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the normal form `U | p` of a word.
    Nf { word: String },
    /// List the weight-0 vertices of a braid.
    Vertices { word: String },
    /// Summarize the components of the weight-0 graph.
    Components {
        word: String,
        /// Write the graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two factorizations of a braid are Hurwitz equivalent.
    Equiv {
        word: String,
        file1: PathBuf,
        file2: PathBuf,
        /// Print a move sequence taking the first factorization to the second.
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Explore the Hurwitz orbit of a factorization by brute force.
    Orbit {
        word: String,
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run the property suites.
    Check {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

const PROPERTY: u8 = 1;
const PARSE: u8 = 2;
const INVALID: u8 = 3;

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => PARSE,
            Error::Consistency(_) => PROPERTY,
            _ => INVALID,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Nf { word } => cmd_nf(&word),
        Command::Vertices { word } => cmd_vertices(&word),
        Command::Components { word, dot, json } => cmd_components(&word, dot.as_deref(), json),
        Command::Equiv { word, file1, file2, certificate, json } => cmd_equiv(&word, &file1, &file2, certificate, json),
        Command::Orbit { word, file, budget } => cmd_orbit(&word, &file, budget),
        Command::Check { max_len, seed, jobs } => cmd_check(max_len, seed, jobs),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_word(text: &str) -> Result<BraidElement, Failure> {
    text.parse::<SignedWord>().map(|w| w.evaluate()).map_err(|e| Failure::new(PARSE, format!("word `{text}`: {e}")))
}

fn read_factorization(path: &Path, x: &BraidElement) -> Result<Factorization, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))?;
    let file = parse_factorization(&text).map_err(|e| Failure::new(PARSE, format!("{}: {e}", path.display())))?;
    Ok(file.into_factorization(x))
}

fn single_orbit_notice(x: &BraidElement) -> String {
    format!("{x}: p<0: single orbit")
}

fn cmd_nf(word: &str) -> CmdResult {
    println!("{}", parse_word(word)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_vertices(word: &str) -> CmdResult {
    let x = parse_word(word)?;
    if x.p() < 0 {
        println!("{}", single_orbit_notice(&x));
        return Ok(ExitCode::SUCCESS);
    }
    let v0 = enumerate_v0(&x)?;
    if v0.is_empty() {
        println!("{x}: not quasipositive");
    }
    for v in v0 {
        println!("{}", v.word);
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ComponentsJson {
    x: String,
    p: i64,
    k: i64,
    v0_size: usize,
    component_count: usize,
    vertices: Vec<VertexJson>,
}

#[derive(Serialize)]
struct VertexJson {
    word: String,
    component: usize,
}

fn components_json(g: &Components) -> ComponentsJson {
    ComponentsJson {
        x: g.x.to_string(),
        p: g.x.p(),
        k: g.x.band_length(),
        v0_size: g.vertices.len(),
        component_count: g.len(),
        vertices: g
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| VertexJson { word: v.word.to_string(), component: g.components[g.component_index(i)].id })
            .collect(),
    }
}

fn cmd_components(word: &str, dot: Option<&Path>, json: bool) -> CmdResult {
    let x = parse_word(word)?;
    if x.p() < 0 {
        println!("{}", single_orbit_notice(&x));
        return Ok(ExitCode::SUCCESS);
    }
    let g = components_g0(&x)?;
    if let Some(path) = dot {
        fs::write(path, g.to_dot()).map_err(|e| Failure::new(INVALID, format!("{}: {e}", path.display())))?;
    }
    if json {
        println!("{}", serde_json::to_string_pretty(&components_json(&g)).expect("serializable"));
        return Ok(ExitCode::SUCCESS);
    }
    println!("{x}: {} vertices, {} components", g.vertices.len(), g.len());
    if g.vertices.is_empty() {
        println!("not quasipositive");
    }
    for c in &g.components {
        let size = (0..g.vertices.len()).filter(|&i| g.components[g.component_index(i)].id == c.id).count();
        println!("  component {}: {} vertices, representative {}", c.id, size, c.representative.word);
    }
    Ok(ExitCode::SUCCESS)
}

/// A move sequence from the first input to the second, when both are
/// brackets of weight-0 vertices joined by horizontal edges only.
fn certificate(decision: &Decision, f1: &Factorization, f2: &Factorization) -> Result<Option<MoveSequence>, Failure> {
    let Some(g) = &decision.graph else {
        return Ok(None);
    };
    let vertex_of =
        |f: &Factorization| g.vertices.iter().find(|v| bracket(&v.word).map(|b| values_equal(&b, f)).unwrap_or(false));
    let (Some(a), Some(b)) = (vertex_of(f1), vertex_of(f2)) else {
        return Ok(None);
    };
    let Some(path) = g.path(&a.word, &b.word) else {
        return Ok(None);
    };
    let mut moves = MoveSequence::default();
    for e in &path {
        if !e.kind.is_horizontal() {
            return Ok(None);
        }
        moves.extend(&edge_to_moves(e)?);
    }
    let reached = apply_moves(f1, &moves)?;
    if !values_equal(&reached, f2) {
        return Err(Failure::new(PROPERTY, format!("certificate `{moves}` does not reach the second factorization")));
    }
    Ok(Some(moves))
}

#[derive(Serialize)]
struct EquivJson {
    #[serde(flatten)]
    report: EquivalenceReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Option<String>>,
}

fn cmd_equiv(word: &str, file1: &Path, file2: &Path, want_certificate: bool, json: bool) -> CmdResult {
    let x = parse_word(word)?;
    let f1 = read_factorization(file1, &x)?;
    let f2 = read_factorization(file2, &x)?;
    let decision = decide_equivalence(&f1, &f2, &x)?;
    let cert = match (&decision.verdict, want_certificate) {
        (Verdict::Equivalent, true) => Some(certificate(&decision, &f1, &f2)?.map(|m| m.to_string())),
        _ => None,
    };
    let code = match decision.verdict {
        Verdict::Invalid { .. } => ExitCode::from(INVALID),
        _ => ExitCode::SUCCESS,
    };
    if json {
        let out = EquivJson { report: decision.report(), certificate: cert };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
        return Ok(code);
    }
    if decision.single_orbit {
        println!("equivalent (p<0: single orbit)");
    } else {
        println!("{}", decision.verdict);
    }
    if let Some((a, b)) = decision.component_ids() {
        let g = decision.graph.as_ref().expect("graph with components");
        println!("components {a} and {b} ({} components, {} weight-0 vertices)", g.len(), g.vertices.len());
    }
    match cert {
        Some(Some(moves)) if moves.is_empty() => println!("certificate: empty (the factorizations agree)"),
        Some(Some(moves)) => println!("certificate: {moves}"),
        Some(None) if !decision.single_orbit => {
            println!("certificate: only a component certificate is available");
        }
        _ => {}
    }
    Ok(code)
}

fn cmd_orbit(word: &str, file: &Path, budget: usize) -> CmdResult {
    let x = parse_word(word)?;
    let f = read_factorization(file, &x)?;
    if let Err(reason) = validate_against(&f, &x) {
        return Err(Failure::new(INVALID, format!("invalid: {reason}")));
    }
    let orbit = orbit_bfs(&f, budget);
    let status = if orbit.saturated { "saturated" } else { "budget reached" };
    println!("{} factorizations ({status})", orbit.tuples.len());
    if x.p() >= 0 {
        let g = components_g0(&x)?;
        let reached =
            g.vertices.iter().filter(|v| bracket(&v.word).map(|b| orbit.contains(&b)).unwrap_or(false)).count();
        println!("{reached} of {} weight-0 brackets reached", g.vertices.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(max_len: usize, seed: u64, jobs: Option<usize>) -> CmdResult {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::new(INVALID, e.to_string()))?;
    }
    println!("seed {seed}, max-len {max_len}");
    let reports = run_all(CheckConfig { max_len, seed });
    let mut failed = false;
    for r in &reports {
        println!("{r}");
        for f in &r.failures {
            println!("    {f}");
        }
        failed |= !r.passed();
    }
    Ok(if failed { ExitCode::from(PROPERTY) } else { ExitCode::SUCCESS })
}

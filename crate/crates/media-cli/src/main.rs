//! `media`: generate, inspect, and search media from the command line.

mod input;
mod output;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use media_core::{
    all_complementary_pairs, all_pairs_shortest_paths, black_box_reset_sequence,
    brute_axiom_check, brute_closed_scan, brute_distances, find_closed_orientation,
    find_violating_triple, is_closed, lengths_from_json, medium_from_json, medium_to_json,
    orientation_from_json, orientation_to_json, reset_sequence, set_family_oracle, verify,
    wrap_explicit, BlackBoxMedium, LengthFunction, Medium,
};

use output::Report;

#[derive(Parser)]
#[command(name = "media", version, about = "Media toolkit: generators, verification, reset sequences, shortest paths, complements, closed orientations, and black-box enumeration")]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a medium and write it in the interchange format
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Verify that a file holds a medium; exit 2 with violations otherwise
    Check {
        file: PathBuf,
        /// Cross-check the verdict against the brute-force axiom oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Print state, token, and transition counts and the size bounds
    Stats { file: PathBuf },
    /// Print a reset word of length n - 1 and its sink
    Reset { file: PathBuf },
    /// Distances from every state to a target state
    Sssp {
        file: PathBuf,
        /// Target state id
        #[arg(long)]
        to: usize,
        /// Length-function file (JSON map token id -> number)
        #[arg(long)]
        lengths: Option<PathBuf>,
    },
    /// All-pairs distance and first-token tables
    Apsp {
        file: PathBuf,
        #[arg(long)]
        lengths: Option<PathBuf>,
        /// Cross-check distances against the brute-force oracle
        #[arg(long)]
        oracle: bool,
    },
    /// All complementary pairs of states
    Complements { file: PathBuf },
    /// Find a closed orientation, or report that none exists
    Orient {
        file: PathBuf,
        /// Cross-check against the exhaustive orientation scan (tau <= 16)
        #[arg(long)]
        oracle: bool,
    },
    /// Test whether an orientation is closed; exit 2 with a witness if not
    Closed {
        file: PathBuf,
        /// Orientation file (JSON map token id -> "+"/"-")
        #[arg(long)]
        orientation: PathBuf,
    },
    /// Stream the states of a black-box medium, one per line
    Enumerate {
        /// Emit the black-box reset word instead of the states
        #[arg(long)]
        reset: bool,
        #[command(subcommand)]
        source: EnumKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Permutations of k items under adjacent transpositions (k <= 8)
    Perm {
        k: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Topological orderings of a DAG file (arc lines)
    Toporder {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Acyclic orientations of a graph file (edge lines)
    Acyclic {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Medium of a well-graded family file (set lines)
    Family {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Medium of a downward-closed family file (closure checked)
    Downclosed {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Independent sets of a graph file
    Indep {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Binary trees of height at most k (k <= 3); --leaves bounds leaf count
    Btree {
        k: usize,
        #[arg(long)]
        leaves: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EnumKind {
    /// All subsets of k elements
    Powerset { k: usize },
    /// Subsets of size at most k over u elements
    Maxsize { k: usize, u: usize },
    /// Independent sets of a graph file
    Indep { file: PathBuf },
    /// Wrap an explicit medium file as a black box
    Wrap { file: PathBuf },
}

enum CliError {
    Validation(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Io(m) => m,
        }
    }
}

fn validation(message: impl Into<String>) -> CliError {
    CliError::Validation(message.into())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_medium(path: &Path) -> Result<Medium, CliError> {
    medium_from_json(&read_file(path)?).map_err(|e| validation(format!("{}: {e}", path.display())))
}

fn load_lengths(
    medium: &Medium,
    path: &Option<PathBuf>,
) -> Result<LengthFunction, CliError> {
    match path {
        None => Ok(LengthFunction::unit(medium.tokens())),
        Some(p) => lengths_from_json(&read_file(p)?, medium.tokens())
            .map_err(|e| validation(format!("{}: {e}", p.display()))),
    }
}

fn token_label(medium: &Medium, t: usize) -> String {
    medium
        .tokens()
        .label(t)
        .map(str::to_owned)
        .unwrap_or_else(|| t.to_string())
}

fn state_name(medium: &Medium, s: usize) -> String {
    medium
        .state_label(s)
        .map(str::to_owned)
        .unwrap_or_else(|| s.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes, everything else is usage
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let report = Report::new(cli.json);
    match run(cli.command, &report) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn run(command: Command, report: &Report) -> Result<ExitCode, CliError> {
    match command {
        Command::Gen { kind } => generate(kind, report),
        Command::Check { file, oracle } => check(&file, oracle, report),
        Command::Stats { file } => stats(&file, report),
        Command::Reset { file } => reset(&file, report),
        Command::Sssp { file, to, lengths } => sssp(&file, to, &lengths, report),
        Command::Apsp {
            file,
            lengths,
            oracle,
        } => apsp(&file, &lengths, oracle, report),
        Command::Complements { file } => complements(&file, report),
        Command::Orient { file, oracle } => orient(&file, oracle, report),
        Command::Closed { file, orientation } => closed(&file, &orientation, report),
        Command::Enumerate { reset, source } => enumerate(source, reset, report),
    }
}

fn write_medium(medium: &Medium, out: &Option<PathBuf>) -> Result<ExitCode, CliError> {
    let text = medium_to_json(medium);
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(kind: GenKind, _report: &Report) -> Result<ExitCode, CliError> {
    use media_core as mc;
    let fail = |e: mc::GeneratorError| validation(e.to_string());
    match kind {
        GenKind::Perm { k, out } => {
            write_medium(&mc::permutation_medium(k).map_err(fail)?, &out)
        }
        GenKind::Toporder { file, out } => {
            let graph = input::parse_graph(&read_file(&file)?).map_err(validation)?;
            if !graph.edges.is_empty() {
                return Err(validation("toporder input must use arc lines, not edge lines"));
            }
            write_medium(
                &mc::topological_ordering_medium(graph.vertices, &graph.arcs).map_err(fail)?,
                &out,
            )
        }
        GenKind::Acyclic { file, out } => {
            let graph = input::parse_graph(&read_file(&file)?).map_err(validation)?;
            if !graph.arcs.is_empty() {
                return Err(validation("acyclic input must use edge lines, not arc lines"));
            }
            write_medium(
                &mc::acyclic_orientation_medium(graph.vertices, &graph.edges).map_err(fail)?,
                &out,
            )
        }
        GenKind::Family { file, out } => {
            let family = input::parse_family(&read_file(&file)?).map_err(validation)?;
            write_medium(
                &mc::from_well_graded_family(&family).map_err(|e| validation(e.to_string()))?,
                &out,
            )
        }
        GenKind::Downclosed { file, out } => {
            let family = input::parse_family(&read_file(&file)?).map_err(validation)?;
            write_medium(&mc::downward_closed_medium(&family).map_err(fail)?, &out)
        }
        GenKind::Indep { file, out } => {
            let graph = input::parse_graph(&read_file(&file)?).map_err(validation)?;
            if !graph.arcs.is_empty() {
                return Err(validation("indep input must use edge lines, not arc lines"));
            }
            write_medium(
                &mc::independent_set_medium(graph.vertices, &graph.edges).map_err(fail)?,
                &out,
            )
        }
        GenKind::Btree { k, leaves, out } => {
            let medium = match leaves {
                None => mc::binary_tree_height_medium(k).map_err(fail)?,
                Some(l) => mc::binary_tree_medium(l, k).map_err(fail)?,
            };
            write_medium(&medium, &out)
        }
    }
}

fn check(file: &Path, oracle: bool, report: &Report) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    let result = verify(&medium);
    let violations: Vec<String> = result.violations.iter().map(|v| v.to_string()).collect();
    let mut oracle_verdict = None;
    if oracle {
        let brute = brute_axiom_check(&medium);
        oracle_verdict = Some(brute);
        if brute != result.passed() {
            return Err(validation(format!(
                "verifier and axiom oracle disagree: verifier={}, oracle={}",
                result.passed(),
                brute
            )));
        }
    }
    report.emit(
        json!({
            "passed": result.passed(),
            "violations": violations,
            "oracle_agrees": oracle_verdict.map(|_| true),
        }),
        |out| {
            if result.passed() {
                writeln!(out, "ok: file holds a medium")?;
            } else {
                writeln!(out, "not a medium:")?;
                for v in &violations {
                    writeln!(out, "  - {v}")?;
                }
            }
            if oracle_verdict.is_some() {
                writeln!(out, "axiom oracle agrees")?;
            }
            Ok(())
        },
    )?;
    Ok(if result.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn stats(file: &Path, report: &Report) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    let stats = medium.stats();
    report.emit(
        json!({
            "states": stats.states,
            "tokens": stats.tokens,
            "transitions": stats.transitions,
            "density_bound_holds": stats.density_bound_holds(),
            "size_bound_holds": stats.size_bound_holds(),
        }),
        |out| {
            writeln!(out, "states (n):      {}", stats.states)?;
            writeln!(out, "tokens (tau):    {}", stats.tokens)?;
            writeln!(out, "transitions (m): {}", stats.transitions)?;
            writeln!(
                out,
                "m <= n log2 n:   {}",
                if stats.density_bound_holds() { "holds" } else { "VIOLATED" }
            )?;
            writeln!(
                out,
                "n <= 2^(tau/2):  {}",
                if stats.size_bound_holds() { "holds" } else { "VIOLATED" }
            )?;
            Ok(())
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn reset(file: &Path, report: &Report) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    let result = reset_sequence(&medium).map_err(|e| validation(e.to_string()))?;
    let labels: Vec<String> = result.word.iter().map(|&t| token_label(&medium, t)).collect();
    report.emit(
        json!({
            "word": result.word,
            "labels": labels,
            "sink": result.sink,
            "sink_label": state_name(&medium, result.sink),
        }),
        |out| {
            writeln!(out, "word: {}", labels.join(" "))?;
            writeln!(out, "sink: {}", state_name(&medium, result.sink))?;
            Ok(())
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn sssp(
    file: &Path,
    to: usize,
    lengths: &Option<PathBuf>,
    report: &Report,
) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    if to >= medium.state_count() {
        return Err(validation(format!("state {to} out of range")));
    }
    let lambda = load_lengths(&medium, lengths)?;
    let dist = media_core::distances_to_state(&medium, &lambda, to)
        .map_err(|e| validation(e.to_string()))?;
    report.emit(json!({ "to": to, "distances": dist }), |out| {
        for (s, d) in dist.iter().enumerate() {
            writeln!(out, "{}\t{}", state_name(&medium, s), d)?;
        }
        Ok(())
    })?;
    Ok(ExitCode::SUCCESS)
}

fn apsp(
    file: &Path,
    lengths: &Option<PathBuf>,
    oracle: bool,
    report: &Report,
) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    let lambda = load_lengths(&medium, lengths)?;
    let table =
        all_pairs_shortest_paths(&medium, &lambda).map_err(|e| validation(e.to_string()))?;
    let n = medium.state_count();
    if oracle {
        let brute = brute_distances(&medium, &lambda);
        for s in 0..n {
            for q in 0..n {
                if table.distance(s, q) != brute[s][q] {
                    return Err(validation(format!(
                        "distance({s},{q}) disagrees with oracle: {} vs {}",
                        table.distance(s, q),
                        brute[s][q]
                    )));
                }
            }
        }
    }
    let dist: Vec<Vec<f64>> = (0..n)
        .map(|s| (0..n).map(|q| table.distance(s, q)).collect())
        .collect();
    let first: Vec<Vec<Option<usize>>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|q| (s != q).then(|| table.first_token(s, q)))
                .collect()
        })
        .collect();
    report.emit(
        json!({
            "distances": dist,
            "first_tokens": first,
            "oracle_agrees": oracle.then_some(true),
        }),
        |out| {
            writeln!(out, "distances:")?;
            for row in &dist {
                let cells: Vec<String> = row.iter().map(f64::to_string).collect();
                writeln!(out, "  {}", cells.join("\t"))?;
            }
            writeln!(out, "first tokens:")?;
            for row in &first {
                let cells: Vec<String> = row
                    .iter()
                    .map(|c| c.map_or("-".to_string(), |t| token_label(&medium, t)))
                    .collect();
                writeln!(out, "  {}", cells.join("\t"))?;
            }
            if oracle {
                writeln!(out, "distance oracle agrees")?;
            }
            Ok(())
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn complements(file: &Path, report: &Report) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    let pairs = all_complementary_pairs(&medium).map_err(|e| validation(e.to_string()))?;
    report.emit(json!({ "pairs": pairs }), |out| {
        if pairs.is_empty() {
            writeln!(out, "no complementary pairs")?;
        }
        for &(a, b) in &pairs {
            writeln!(out, "{}\t{}", state_name(&medium, a), state_name(&medium, b))?;
        }
        Ok(())
    })?;
    Ok(ExitCode::SUCCESS)
}

fn orient(file: &Path, oracle: bool, report: &Report) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    let found = find_closed_orientation(&medium);
    if oracle {
        if medium.token_count() > 16 {
            return Err(validation("orientation oracle needs tau <= 16"));
        }
        let scan = brute_closed_scan(&medium);
        if scan.is_empty() != found.is_none() {
            return Err(validation("search disagrees with exhaustive scan"));
        }
    }
    match found {
        None => {
            report.emit(json!({ "orientation": serde_json::Value::Null }), |out| {
                writeln!(out, "none")?;
                Ok(())
            })?;
        }
        Some(o) => {
            let text = orientation_to_json(&o, medium.tokens());
            report.emit(
                serde_json::from_str(&text).expect("orientation JSON"),
                |out| {
                    write!(out, "{text}")?;
                    Ok(())
                },
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn closed(file: &Path, orientation_file: &Path, report: &Report) -> Result<ExitCode, CliError> {
    let medium = load_medium(file)?;
    let orientation = orientation_from_json(&read_file(orientation_file)?, medium.tokens())
        .map_err(|e| validation(format!("{}: {e}", orientation_file.display())))?;
    let closed = is_closed(&medium, &orientation);
    let witness = find_violating_triple(&medium, &orientation);
    report.emit(
        json!({
            "closed": closed,
            "witness": witness.map(|w| json!({
                "state": w.state, "first": w.first, "second": w.second,
            })),
        }),
        |out| {
            if closed {
                writeln!(out, "closed")?;
            } else {
                let w = witness.expect("non-closed orientation has a witness");
                writeln!(
                    out,
                    "not closed: at state {} tokens {} and {} do not commute",
                    state_name(&medium, w.state),
                    token_label(&medium, w.first),
                    token_label(&medium, w.second),
                )?;
            }
            Ok(())
        },
    )?;
    Ok(if closed { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn enumerate(source: EnumKind, reset: bool, report: &Report) -> Result<ExitCode, CliError> {
    // the oracle must outlive the box; build both per source kind
    let explicit;
    let graph;
    let bb: BlackBoxMedium<'_> = match source {
        EnumKind::Powerset { k } => {
            if k > 60 {
                return Err(validation("powerset universe limited to 60 elements"));
            }
            set_family_oracle(k, |_| true, 0)
        }
        EnumKind::Maxsize { k, u } => {
            if u > 60 {
                return Err(validation("universe limited to 60 elements"));
            }
            set_family_oracle(u, move |m| m.count_ones() as usize <= k, 0)
        }
        EnumKind::Indep { file } => {
            graph = input::parse_graph(&read_file(&file)?).map_err(validation)?;
            if !graph.arcs.is_empty() {
                return Err(validation("indep input must use edge lines, not arc lines"));
            }
            if graph.vertices > 60 {
                return Err(validation("graph limited to 60 vertices"));
            }
            set_family_oracle(
                graph.vertices,
                |m| {
                    graph
                        .edges
                        .iter()
                        .all(|&(a, b)| m & (1 << a) == 0 || m & (1 << b) == 0)
                },
                0,
            )
        }
        EnumKind::Wrap { file } => {
            explicit = load_medium(&file)?;
            wrap_explicit(&explicit)
        }
    };
    if reset {
        let word = black_box_reset_sequence(&bb)
            .map_err(|e| validation(e.to_string()))?;
        report.emit(json!({ "word": word }), |out| {
            let cells: Vec<String> = word.iter().map(usize::to_string).collect();
            writeln!(out, "{}", cells.join(" "))?;
            Ok(())
        })?;
        return Ok(ExitCode::SUCCESS);
    }
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for state in bb.enumerate_states() {
        let state = state.map_err(|e| validation(e.to_string()))?;
        if report.json() {
            writeln!(out, "{}", json!(bb.render_state(&state)))
        } else {
            writeln!(out, "{}", bb.render_state(&state))
        }
        .map_err(|e| CliError::Io(e.to_string()))?;
        out.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(ExitCode::SUCCESS)
}

//! `heegaard`: recognize presentations realized by Heegaard diagrams with
//! planar cut-open surface.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use heegaard::dot::{diagram_dot, whitehead_dot};
use heegaard::enumeration::for_each_planar_diagram;
use heegaard::recognizer::{
    genus_upper_bound, recognize_exact_with, solve_two_generator_with, Verdict,
};
use heegaard::report::{exit_code, genus_record, graph_record, path_records, Report};
use heegaard::whitehead::reduce_monotone;
use heegaard::{Error, Presentation, SearchBudget, WhiteheadGraph};
use serde_json::json;

const EXIT_USAGE: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_PRECONDITION: u8 = 5;

#[derive(Parser)]
#[command(
    name = "heegaard",
    version,
    about = "Search for planar Heegaard diagrams realizing a group presentation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search the diagram class of the reduced presentation for a planar diagram.
    Check(Common),
    /// Apply degree-reducing Whitehead moves until none is left.
    Reduce(Common),
    /// Run every pipeline and emit the full report.
    Recognize {
        #[command(flatten)]
        common: Common,
        /// Trivial pairs that may be inserted by the expansion search.
        #[arg(long, default_value_t = 1)]
        pair_budget: usize,
    },
    /// Decide a two-generator presentation.
    Solve2(Common),
    /// Print the Whitehead graph.
    Wgraph {
        #[command(flatten)]
        common: Common,
        /// Emit Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Upper bound on the least genus of a diagram.
    Genus(Common),
    /// Stream every planar diagram of the words as written, one JSON line each.
    Enumerate {
        #[command(flatten)]
        common: Common,
        /// Stop after this many diagrams.
        #[arg(long)]
        limit: Option<u64>,
        /// Emit each diagram as Graphviz DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args)]
struct Common {
    /// Presentation file; standard input when absent or `-`.
    input: Option<PathBuf>,
    /// Diagrams examined before giving up, or `unlimited`.
    #[arg(long, default_value = "10000000", value_parser = parse_count)]
    max_diagrams: Limit<u64>,
    /// Seconds before giving up, or `unlimited`.
    #[arg(long, default_value = "60", value_parser = parse_seconds)]
    time_limit: Limit<Duration>,
    /// Worker threads for diagram searches.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    /// Lexicographically least witnesses and no timing fields.
    #[arg(long)]
    deterministic: bool,
    /// Human-readable summary on standard error.
    #[arg(long)]
    verbose: bool,
}

#[derive(Clone, Copy)]
struct Limit<T>(Option<T>);

fn parse_count(s: &str) -> Result<Limit<u64>, String> {
    if s == "unlimited" {
        return Ok(Limit(None));
    }
    s.parse()
        .map(|n| Limit(Some(n)))
        .map_err(|_| format!("expected an integer or `unlimited`, got `{s}`"))
}

fn parse_seconds(s: &str) -> Result<Limit<Duration>, String> {
    if s == "unlimited" {
        return Ok(Limit(None));
    }
    match s.parse::<f64>() {
        Ok(secs) if secs.is_finite() && secs >= 0.0 => {
            Ok(Limit(Some(Duration::from_secs_f64(secs))))
        }
        _ => Err(format!(
            "expected non-negative seconds or `unlimited`, got `{s}`"
        )),
    }
}

impl Common {
    fn budget(&self) -> SearchBudget {
        SearchBudget::desk()
            .with_max_diagrams(self.max_diagrams.0)
            .with_time_limit(self.time_limit.0)
            .with_parallelism(self.jobs as usize)
            .with_deterministic(self.deterministic)
    }

    fn read(&self) -> Result<Presentation, Failure> {
        let text = match &self.input {
            Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?,
            _ => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::input(format!("cannot read standard input: {e}")))?;
                s
            }
        };
        let name = self
            .input
            .as_ref()
            .map_or("<stdin>".to_string(), |p| p.display().to_string());
        Presentation::parse(&text).map_err(|e| Failure::input(format!("{name}: {e}")))
    }

    fn stamp(&self, report: &mut Report) {
        if !self.deterministic {
            report.generated_at_unix = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .ok()
                .map(|d| d.as_secs());
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: String) -> Self {
        Failure {
            code: EXIT_INPUT,
            message,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => EXIT_INPUT,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if informational { 0 } else { EXIT_USAGE });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn summarize(verbose: bool, p: &Presentation, verdict: &Verdict) {
    if !verbose {
        return;
    }
    eprintln!("generators: {}", p.generator_names().join(" "));
    eprintln!(
        "degree: raw {} reduced {}",
        p.raw_degree(),
        p.algebraic_degree()
    );
    eprintln!(
        "verdict: {}{}",
        verdict.kind.as_str(),
        if verdict.exhausted {
            " (exhausted)"
        } else {
            ""
        }
    );
    if let Some(w) = &verdict.witness {
        eprintln!("witness degree {}:", w.diagram.degree());
        for r in w.presentation.relator_strings() {
            eprintln!("  {r}");
        }
        for step in &w.path {
            eprintln!(
                "  via {} (delta {})",
                step.mv.display(p.generator_names()),
                step.delta
            );
        }
    }
    eprintln!(
        "diagrams examined {}, prune cuts {}, presentations searched {}",
        verdict.stats.diagrams_examined, verdict.stats.prune_cuts, verdict.presentations_searched
    );
}

/// Writes to standard output; a closed pipe ends the output silently.
fn out(text: &str) -> bool {
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .is_ok()
}

fn emit(report: &Report) {
    out(&(report.to_json() + "\n"));
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Check(c) => {
            let p = c.read()?;
            let budget = c.budget();
            let meter = budget.meter();
            let verdict = recognize_exact_with(&p, &budget, &meter);
            summarize(c.verbose, &p, &verdict);
            let mut report = Report::new(&p, &verdict, None, &budget, None, &meter);
            c.stamp(&mut report);
            emit(&report);
            Ok(exit_code(verdict.kind) as u8)
        }
        Command::Solve2(c) => {
            let p = c.read()?;
            let budget = c.budget();
            let meter = budget.meter();
            let verdict = solve_two_generator_with(&p, &budget, &meter)?;
            summarize(c.verbose, &p, &verdict);
            let mut report = Report::new(&p, &verdict, None, &budget, None, &meter);
            c.stamp(&mut report);
            emit(&report);
            Ok(exit_code(verdict.kind) as u8)
        }
        Command::Recognize {
            common: c,
            pair_budget,
        } => {
            let p = c.read()?;
            let mut report = heegaard::recognize(&p, &c.budget(), pair_budget)?;
            if c.verbose {
                eprintln!(
                    "degree: raw {} reduced {}",
                    report.degrees.raw, report.degrees.reduced
                );
                eprintln!("verdict: {}", report.verdict.kind.as_str());
                if let Some(g) = &report.genus_upper_bound {
                    eprintln!("genus upper bound: {}", g.genus);
                }
            }
            c.stamp(&mut report);
            emit(&report);
            Ok(exit_code(report.verdict.kind) as u8)
        }
        Command::Reduce(c) => {
            let p = c.read()?;
            let (q, path) = reduce_monotone(&p)?;
            if c.verbose {
                eprintln!(
                    "degree {} -> {} in {} moves",
                    p.algebraic_degree(),
                    q.algebraic_degree(),
                    path.len()
                );
                for step in &path {
                    eprintln!(
                        "  {} (delta {})",
                        step.mv.display(p.generator_names()),
                        step.delta
                    );
                }
            }
            let report = json!({
                "input": { "generators": p.generator_names(), "relators": p.relator_strings() },
                "degrees": { "raw": p.raw_degree(), "reduced": p.algebraic_degree() },
                "path": path_records(&p, &path),
                "result": { "relators": q.relator_strings(), "degree": q.algebraic_degree() },
            });
            out(&(serde_json::to_string_pretty(&report).expect("json") + "\n"));
            Ok(0)
        }
        Command::Wgraph { common: c, dot } => {
            let p = c.read()?;
            if dot {
                out(&whitehead_dot(&WhiteheadGraph::of(&p), p.generator_names()));
            } else {
                out(&(serde_json::to_string_pretty(&graph_record(&p)).expect("json") + "\n"));
            }
            Ok(0)
        }
        Command::Genus(c) => {
            let p = c.read()?;
            let budget = c.budget();
            let bound = genus_upper_bound(&p, &budget)?;
            if c.verbose {
                match &bound {
                    Some(b) => eprintln!(
                        "genus upper bound {} ({})",
                        b.genus,
                        if b.exhaustive {
                            "minimum"
                        } else {
                            "budget-limited"
                        }
                    ),
                    None => eprintln!("no complete diagram examined within budget"),
                }
            }
            let report = json!({
                "input": { "generators": p.generator_names(), "relators": p.relator_strings() },
                "genus_upper_bound": bound.as_ref().map(genus_record),
                "statistics": bound.as_ref().map(|b| &b.stats),
            });
            out(&(serde_json::to_string_pretty(&report).expect("json") + "\n"));
            Ok(if bound.is_some() { 0 } else { 2 })
        }
        Command::Enumerate {
            common: c,
            limit,
            dot,
        } => {
            let p = c.read()?;
            let meter = c.budget().meter();
            let mut found = 0u64;
            let (stats, exhausted) = for_each_planar_diagram(&p, &meter, |d| {
                found += 1;
                let written = if dot {
                    out(&diagram_dot(&d))
                } else {
                    out(&(serde_json::to_string(&d.record()).expect("json") + "\n"))
                };
                written && limit.is_none_or(|n| found < n)
            });
            let mut stats = stats;
            if !c.deterministic {
                stats = stats.with_elapsed(meter.elapsed());
            }
            let summary =
                json!({ "witnesses": found, "exhausted": exhausted, "statistics": stats });
            if dot {
                eprintln!("{summary}");
            } else {
                out(&format!("{summary}\n"));
            }
            Ok(if found > 0 { 0 } else { 2 })
        }
    }
}

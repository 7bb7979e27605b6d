use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use kouter::bench::{bench, Target};
use kouter::{
    canned, check_bd, check_td, compute_layers, generate, oracle_branchwidth, oracle_treewidth, parse_bd, parse_emb,
    parse_td, remember_numbers, run_branch, run_tree, write_bd, write_emb, write_forest, write_td, Embedding, FrontEnd,
    GenSpec, PhaseTimings,
};

#[derive(Parser)]
#[command(name = "kouter", version, about = "Tree and branch decompositions of k-outerplanar graphs")]
struct Cli {
    /// Print reports as one JSON object instead of key=value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a k-outerplanar instance or a named fixture.
    Gen {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        chords: f64,
        #[arg(long, default_value_t = 0.3)]
        spokes: f64,
        /// Fixture name: c{n}, p{n}, star{n}, wheel{n}, grid{r}x{c}, k4, nested, fig2.
        #[arg(long, conflicts_with_all = ["k", "n", "seed", "chords", "spokes"])]
        canned: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report size and outerplanarity index of an embedding.
    Index { input: PathBuf },
    /// Tree decomposition in PACE format.
    Tree {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Check the result before exiting.
        #[arg(long)]
        verify: bool,
        /// Add remember numbers of the spanning forest to the report.
        #[arg(long)]
        stats: bool,
        /// Write the spanning forest of the expanded graph to this file.
        #[arg(long)]
        dump_forest: Option<PathBuf>,
    },
    /// Branch decomposition, one block per connected component.
    Branch {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        dump_forest: Option<PathBuf>,
    },
    /// Validate a PACE tree decomposition against an embedding.
    CheckTd { graph: PathBuf, td: PathBuf },
    /// Validate a branch decomposition against an embedding.
    CheckBd { graph: PathBuf, bd: PathBuf },
    /// Exact treewidth for graphs with at most 10 vertices.
    OracleTw { input: PathBuf },
    /// Exact branchwidth for graphs with at most 8 edges.
    OracleBw { input: PathBuf },
    /// Time the pipeline on generated instances.
    Bench {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, value_enum, default_value_t = BenchTarget::Tree)]
        target: BenchTarget,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchTarget {
    Tree,
    Branch,
}

/// Ordered key/value report.
#[derive(Default)]
struct Report(Map<String, Value>);

impl Report {
    fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.0.insert(key.to_string(), value.into());
    }

    fn timings(&mut self, timings: &PhaseTimings) {
        let mut total = Duration::ZERO;
        for (phase, d) in timings {
            self.put(&format!("time_{phase}_ms"), ms(*d));
            total += *d;
        }
        self.put("time_total_ms", ms(total));
    }

    fn render(&self, json: bool) -> String {
        if json {
            return format!("{}\n", Value::Object(self.0.clone()));
        }
        self.0.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    fn print(&self, json: bool) {
        print!("{}", self.render(json));
    }

    /// Reports go to standard error when standard output carries the
    /// decomposition itself.
    fn print_to(&self, json: bool, stderr: bool) {
        if stderr {
            eprint!("{}", self.render(json));
        } else {
            self.print(json);
        }
    }
}

fn ms(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<Embedding> {
    parse_emb(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn front_stats(report: &mut Report, emb: &Embedding, front: Option<&FrontEnd>, stats: bool, dump: Option<&Path>) -> Result<()> {
    let computed;
    let front = match front {
        Some(f) => f,
        None if stats || dump.is_some() => {
            computed = FrontEnd::run(emb)?;
            &computed
        }
        None => return Ok(()),
    };
    report.put("expanded_n", front.expanded.n());
    report.put("expanded_m", front.expanded.m());
    report.put("k_prime", front.trace.k_prime);
    if stats {
        let r = remember_numbers(&front.expanded.to_graph(), &front.forest.in_forest)?;
        report.put("vr", r.vr);
        report.put("er", r.er);
    }
    if let Some(path) = dump {
        emit(Some(path), &write_forest(&front.expanded, &front.forest, &front.trace))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Gen {
            k,
            n,
            seed,
            chords,
            spokes,
            canned: name,
            output,
        } => {
            let emb = match name {
                Some(name) => canned(&name)?,
                None => generate(&GenSpec {
                    chord_density: chords,
                    spoke_density: spokes,
                    ..GenSpec::new(k, n, seed)
                })?,
            };
            emit(output.as_deref(), &write_emb(&emb))?;
        }
        Command::Index { input } => {
            let emb = load(&input)?;
            let layers = compute_layers(&emb);
            let mut report = Report::default();
            report.put("n", emb.n());
            report.put("m", emb.m());
            report.put("faces", emb.face_count());
            report.put("components", emb.component_count());
            report.put("max_degree", emb.max_degree());
            report.put("k", layers.index_k);
            report.print(json);
        }
        Command::Tree {
            input,
            output,
            verify,
            stats,
            dump_forest,
        } => {
            let emb = load(&input)?;
            let run = run_tree(&emb)?;
            let mut report = Report::default();
            report.put("n", emb.n());
            report.put("m", emb.m());
            report.put("k", run.k);
            front_stats(&mut report, &emb, run.front.as_ref(), stats, dump_forest.as_deref())?;
            report.put("bags", run.td.node_count());
            report.put("width", run.td.width());
            report.put("bound", (3 * run.k).saturating_sub(1));
            if verify {
                check_td(&emb.to_graph(), &run.td)?;
                report.put("verified", true);
            }
            report.timings(&run.timings);
            emit(output.as_deref(), &write_td(&run.td, emb.n()))?;
            report.print_to(json, output.is_none());
        }
        Command::Branch {
            input,
            output,
            verify,
            stats,
            dump_forest,
        } => {
            let emb = load(&input)?;
            let run = run_branch(&emb)?;
            let graph = emb.to_graph();
            let mut report = Report::default();
            report.put("n", emb.n());
            report.put("m", emb.m());
            report.put("k", run.k);
            front_stats(&mut report, &emb, Some(&run.front), stats, dump_forest.as_deref())?;
            report.put("components", run.bd.components.len());
            report.put("width", run.bd.width());
            report.put("bound", 2 * run.k + 1);
            if verify {
                check_bd(&graph, &run.bd)?;
                report.put("verified", true);
            }
            report.timings(&run.timings);
            emit(output.as_deref(), &write_bd(&run.bd, &graph))?;
            report.print_to(json, output.is_none());
        }
        Command::CheckTd { graph, td } => {
            let emb = load(&graph)?;
            let (td_value, n) = parse_td(&read(&td)?).with_context(|| format!("{}", td.display()))?;
            if n != emb.n() {
                eprintln!("decomposition is for {} vertices, graph has {}", n, emb.n());
                return Ok(ExitCode::FAILURE);
            }
            if let Err(v) = check_td(&emb.to_graph(), &td_value) {
                eprintln!("{v}");
                return Ok(ExitCode::FAILURE);
            }
            let mut report = Report::default();
            report.put("valid", true);
            report.put("width", td_value.width());
            report.print(json);
        }
        Command::CheckBd { graph, bd } => {
            let emb = load(&graph)?;
            let g = emb.to_graph();
            let bd_value = parse_bd(&read(&bd)?, &g).with_context(|| format!("{}", bd.display()))?;
            match check_bd(&g, &bd_value) {
                Ok(width) => {
                    let mut report = Report::default();
                    report.put("valid", true);
                    report.put("width", width);
                    report.print(json);
                }
                Err(v) => {
                    eprintln!("{v}");
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Command::OracleTw { input } => {
            let emb = load(&input)?;
            let mut report = Report::default();
            report.put("treewidth", oracle_treewidth(&emb.to_graph())?);
            report.print(json);
        }
        Command::OracleBw { input } => {
            let emb = load(&input)?;
            let mut report = Report::default();
            report.put("branchwidth", oracle_branchwidth(&emb.to_graph())?);
            report.print(json);
        }
        Command::Bench {
            k,
            n,
            seed,
            reps,
            target,
        } => {
            let pairs: Vec<(usize, usize)> = k.iter().flat_map(|&k| n.iter().map(move |&n| (k, n))).collect();
            let target = match target {
                BenchTarget::Tree => Target::Tree,
                BenchTarget::Branch => Target::Branch,
            };
            let rows = bench(&pairs, seed, reps, target)?;
            if json {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|r| serde_json::json!({"n": r.n, "k": r.k, "m": r.m, "time_ms": ms(r.time), "width": r.width}))
                    .collect();
                println!("{}", Value::Array(rows));
            } else {
                println!("n\tk\tm\ttime_ms\twidth");
                for r in rows {
                    println!("{}\t{}\t{}\t{}\t{}", r.n, r.k, r.m, ms(r.time), r.width);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphburn::bounds;
use graphburn::burn::{self, BurnSchedule, Strictness};
use graphburn::experiment::{self, ExperimentConfig};
use graphburn::ng;
use graphburn::{io as gio, Error, ExactConfig, GenSpec, Graph};

#[derive(Parser)]
#[command(name = "graphburn", version, about = "Burning numbers, burning schedules and complement-product checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for random generator families (overrides the seed in a spec).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest order handed to the exact solver.
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(u64).range(1..=64))]
    cap: u64,
    /// Worker threads for `ng` and `experiment`.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Require every source to be unburned when it is ignited.
    #[arg(long, global = true)]
    strict: bool,
    /// Format of input graph files.
    #[arg(long, global = true, value_enum, default_value_t = Format::Edges)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edges,
    Graph6,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Graph file.
    path: Option<PathBuf>,
    /// Generator spec instead of a file, e.g. "spider 3 2".
    #[arg(long = "gen", value_name = "SPEC")]
    spec: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Exact burning number with a witness schedule.
    Compute {
        #[command(flatten)]
        input: Input,
    },
    /// Closed-form round bounds for order n.
    Bound {
        /// Order; alternatively pass a graph with --graph.
        n: Option<u64>,
        #[arg(long, conflicts_with = "n")]
        graph: Option<PathBuf>,
    },
    /// Constructive cover and schedule with the construction log.
    Construct {
        #[command(flatten)]
        input: Input,
    },
    /// Check that a schedule burns the whole graph.
    Verify {
        #[command(flatten)]
        input: Input,
        /// Space-separated 0-based sources, e.g. "1 3".
        #[arg(long)]
        schedule: String,
    },
    /// Print the vertices burned in each round.
    Simulate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        schedule: String,
    },
    /// Write a generated graph as an edge list.
    Gen {
        /// Generator spec, e.g. `spider 3 2` or `random_tree 50 7`.
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Complement-product check over all graphs of order n, as CSV.
    Ng {
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Sample this many random doubly connected graphs instead of enumerating.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Run an experiment plan and write one CSV row per graph.
    Experiment {
        plan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Fill the runtime_ms column (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
}

enum Failure {
    Verification(String),
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

impl Cli {
    fn exact(&self) -> ExactConfig {
        ExactConfig { max_order: self.cap as usize }
    }

    fn strictness(&self) -> Strictness {
        if self.strict {
            Strictness::Strict
        } else {
            Strictness::Lenient
        }
    }

    fn spec(&self, text: &str) -> Result<GenSpec, Failure> {
        let spec: GenSpec = text.parse()?;
        Ok(match self.seed {
            Some(s) => spec.with_seed(s),
            None => spec,
        })
    }

    fn read_graph(&self, path: &PathBuf) -> Result<Graph, Failure> {
        let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        Ok(match self.format {
            Format::Edges => gio::parse_edge_list(&text)?,
            Format::Graph6 => gio::parse_graph6(&text)?,
        })
    }

    fn load(&self, input: &Input) -> Result<Graph, Failure> {
        match (&input.path, &input.spec) {
            (Some(path), None) => self.read_graph(path),
            (None, Some(spec)) => Ok(self.spec(spec)?.generate()?),
            _ => Err(Failure::Input("give exactly one of a graph file or --gen".into())),
        }
    }
}

fn parse_schedule(text: &str) -> Result<BurnSchedule, Failure> {
    let sources = text
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Failure::Input(format!("bad vertex id '{t}' in schedule"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BurnSchedule::new(sources)?)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn emit(output: &Option<PathBuf>, body: &[u8]) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            io::Write::write_all(&mut io::stdout(), body)?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Compute { input } => {
            let g = cli.load(input)?;
            let r = graphburn::burning_number_exact(&g, &cli.exact())?;
            Ok(format!("b = {}\nschedule = {}\n", r.value, join(r.witness.sources())))
        }
        Command::Bound { n, graph } => {
            let n = match (n, graph) {
                (Some(n), None) => *n,
                (None, Some(path)) => cli.read_graph(path)?.order() as u64,
                _ => return Err(Failure::Input("give n or --graph".into())),
            };
            let upper = bounds::burning_upper_bound(n)?;
            Ok(format!(
                "upper={upper} capacity_k={} simple_k={}\n",
                bounds::capacity_rounds(n),
                bounds::simple_upper_bound(n)
            ))
        }
        Command::Construct { input } => {
            let g = cli.load(input)?;
            let b = graphburn::burn_graph(&g)?;
            let mut out = format!("k = {}\n", b.rounds);
            let cover = b.cover.entries().iter().map(|(c, r)| format!("({c},{r})"));
            writeln!(out, "cover = {}", join(cover)).unwrap();
            writeln!(out, "schedule = {}", join(b.schedule.sources())).unwrap();
            out.push_str(&b.construction.log_text());
            Ok(out)
        }
        Command::Verify { input, schedule } => {
            let g = cli.load(input)?;
            let s = parse_schedule(schedule)?;
            match burn::simulate(&g, &s, cli.strictness()) {
                Ok(trace) if trace.all_burned() => Ok("ok\n".into()),
                Ok(trace) => {
                    let left = (0..g.order()).filter(|&v| trace.burned_at[v] == burn::NEVER);
                    Err(Failure::Verification(format!("fail: unburned {}", join(left))))
                }
                Err(e @ Error::AlreadyBurned { .. }) => Err(Failure::Verification(format!("fail: {e}"))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Simulate { input, schedule } => {
            let g = cli.load(input)?;
            let trace = burn::simulate(&g, &parse_schedule(schedule)?, cli.strictness())?;
            let mut out = String::new();
            for (i, burned) in trace.by_round().iter().enumerate() {
                writeln!(out, "round {}: {}", i + 1, join(burned)).unwrap();
            }
            let left: Vec<usize> = (0..g.order()).filter(|&v| trace.burned_at[v] == burn::NEVER).collect();
            if left.is_empty() {
                out.push_str("all burned\n");
            } else {
                writeln!(out, "unburned: {}", join(left)).unwrap();
            }
            Ok(out)
        }
        Command::Gen { spec, output } => {
            let g = cli.spec(&spec.join(" "))?.generate()?;
            emit(output, gio::write_edge_list(&g).as_bytes())?;
            Ok(String::new())
        }
        Command::Ng { n, output, trials } => {
            let workers = cli.workers as usize;
            if let Some(trials) = trials {
                let s = ng::ng_statistical(*n, *trials, cli.seed.unwrap_or(0), &cli.exact())?;
                let exact = s.max_exact().map_or("-".to_string(), |m| m.to_string());
                let line = format!(
                    "n={} trials={} max_upper_product={} majorant={} max_exact_product={exact} violations={}\n",
                    s.n,
                    s.trials,
                    s.max_upper(),
                    s.majorant,
                    s.majorant_violations + s.exact_violations
                );
                if s.majorant_violations + s.exact_violations > 0 {
                    return Err(Failure::Verification(line));
                }
                return Ok(line);
            }
            let r = ng::ng_exhaustive(*n, workers)?;
            let mut csv = Vec::new();
            ng::write_ng_csv(&mut csv, &r.records)?;
            let summary = format!(
                "n={} graphs={} doubly_connected={} max_product={} violations={} equality={}\n",
                r.n,
                r.graphs_examined,
                r.records.len(),
                r.max_product,
                r.violations,
                r.equality_masks.len()
            );
            emit(output, &csv)?;
            if r.violations > 0 {
                return Err(Failure::Verification(summary));
            }
            Ok(if output.is_some() { summary } else { String::new() })
        }
        Command::Experiment { plan, output, timing } => {
            let text = fs::read_to_string(plan).map_err(|e| Failure::Input(format!("{}: {e}", plan.display())))?;
            let mut entries = experiment::parse_plan(&text)?;
            if let Some(seed) = cli.seed {
                for e in &mut entries {
                    e.spec = e.spec.with_seed(seed);
                }
            }
            let cfg = ExperimentConfig { exact: cli.exact(), workers: cli.workers as usize, timing: *timing };
            let rows = experiment::run_experiment(&entries, &cfg)?;
            let mut csv = Vec::new();
            experiment::write_experiment_csv(&mut csv, &rows)?;
            emit(output, &csv)?;
            Ok(if output.is_some() { format!("rows={}\n", rows.len()) } else { String::new() })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(msg)) => {
            print!("{msg}");
            if !msg.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

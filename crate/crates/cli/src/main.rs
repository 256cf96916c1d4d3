use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use latin_graph::clique_color::{
    greedy_coloring, natural_order, structure_report, theory_bounds,
};
use latin_graph::connectivity::{
    connectivity_report, distance_metrics, hamiltonian_cycle_exact, is_connected,
    CONNECTIVITY_CAP, HAMILTON_CAP,
};
use latin_graph::experiment::{run_experiment, save_report, ExperimentConfig};
use latin_graph::graph::{
    build_graph, build_multigraph, degree_profile, sample_symbols_k, sample_symbols_p,
};
use latin_graph::latin::{
    cyclic_difference_table, group_table, paired_example_square, random_latin_square,
    read_square, write_square, GroupKind, GroupSpec, LatinSquare, TableMode,
};
use latin_graph::spectral::{spectrum, spectrum_regular};

#[derive(Parser)]
#[command(name = "lsgraph", version, about = "Random Latin square graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a Latin square in the plain-text format
    Gen(GenArgs),
    /// Build one graph from a square and report its properties
    Analyze(AnalyzeArgs),
    /// Run a Monte Carlo experiment described by a JSON config
    Experiment(ExperimentArgs),
    /// Print the closed-form clique and colouring bounds as JSON
    Bounds(BoundsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cyclic,
    Group,
    Paired,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Division,
    Multiplication,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Order (cyclic, random)
    #[arg(long)]
    n: Option<usize>,
    /// Half order of the paired square
    #[arg(long)]
    r: Option<usize>,
    /// Group such as z8, z2^3, d5, z2xz4
    #[arg(long)]
    group: Option<String>,
    #[arg(long, value_enum, default_value = "division")]
    table: Table,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Prop {
    Degrees,
    Structure,
    Spectral,
    Connectivity,
    Hamiltonian,
    Distance,
}

#[derive(Args)]
#[command(group = ArgGroup::new("sample").required(true).multiple(false))]
struct AnalyzeArgs {
    #[arg(long)]
    square: PathBuf,
    /// Explicit symbol set, comma separated
    #[arg(long, group = "sample", value_delimiter = ',', num_args = 0..)]
    subset: Option<Vec<usize>>,
    /// Explicit symbol multiset, comma separated; keeps the multigraph
    #[arg(long, group = "sample", value_delimiter = ',')]
    multiset: Option<Vec<usize>>,
    /// Keep each symbol independently with probability p
    #[arg(long, group = "sample")]
    p: Option<f64>,
    /// Draw k symbols uniformly with replacement
    #[arg(long, group = "sample")]
    k: Option<usize>,
    /// Seed for --p / --k
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "degrees,structure,spectral,connectivity,hamiltonian,distance")]
    props: Vec<Prop>,
    /// Print one JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Directory for report.json and records.csv
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    p: f64,
}

enum Failure {
    Usage(String),
    Violation(Vec<String>),
    /// The reader of stdout went away, e.g. `lsgraph gen ... | head`.
    Closed,
}

impl From<latin_graph::Error> for Failure {
    fn from(e: latin_graph::Error) -> Self {
        match e {
            latin_graph::Error::Io(e) => e.into(),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        match e.kind() {
            io::ErrorKind::BrokenPipe => Failure::Closed,
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn table_mode(t: Table) -> TableMode {
    match t {
        Table::Division => TableMode::Division,
        Table::Multiplication => TableMode::Multiplication,
    }
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--family {family} requires --{flag}")))
}

fn gen(args: GenArgs) -> Outcome {
    let square = match args.family {
        Family::Cyclic => {
            let n = need(args.n, "n", "cyclic")?;
            match args.table {
                Table::Division => cyclic_difference_table(n)?,
                Table::Multiplication => group_table(&GroupSpec {
                    group: GroupKind::Cyclic { n },
                    table: TableMode::Multiplication,
                })?,
            }
        }
        Family::Group => {
            let group: GroupKind = need(args.group, "group", "group")?.parse()?;
            group_table(&GroupSpec {
                group,
                table: table_mode(args.table),
            })?
        }
        Family::Paired => paired_example_square(need(args.r, "r", "paired")?)?,
        Family::Random => random_latin_square(need(args.n, "n", "random")?, args.seed)?,
    };
    match args.out {
        Some(path) => write_square(&square, fs::File::create(path)?)?,
        None => write_square(&square, io::stdout().lock())?,
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Outcome {
    let l: LatinSquare = read_square(fs::File::open(&args.square)?)?;
    let n = l.order();
    let (symbols, keep_multigraph) = match (&args.subset, &args.multiset, args.p, args.k) {
        (Some(s), ..) => (s.clone(), false),
        (_, Some(m), ..) => (m.clone(), true),
        (_, _, Some(p), _) => (sample_symbols_p(n, p, args.seed)?.symbols, false),
        (_, _, _, Some(k)) => (sample_symbols_k(n, k, args.seed)?.symbols, true),
        _ => unreachable!("clap enforces one sampling flag"),
    };
    let mut support = symbols.clone();
    support.sort_unstable();
    support.dedup();
    let g = build_graph(&l, &support)?;
    let multigraph = if keep_multigraph {
        Some(build_multigraph(&l, &symbols)?)
    } else {
        None
    };

    let mut out = Map::new();
    let mut violations = Vec::new();
    out.insert("n".into(), json!(n));
    out.insert("symbols".into(), json!(symbols));
    out.insert("edges".into(), json!(g.edge_count()));
    out.insert("connected".into(), json!(is_connected(&g)));

    for prop in &args.props {
        let value = match prop {
            Prop::Degrees => {
                let d = degree_profile(&g);
                let s = support.len();
                if s > 0 && !(s - 1 <= d.min && d.max <= 2 * s) {
                    violations.push(format!("degree bounds fail: |S| = {s}, min {}, max {}", d.min, d.max));
                }
                json!({"min": d.min, "max": d.max, "regular": g.is_regular()})
            }
            Prop::Structure => {
                let coloring = greedy_coloring(&g, &natural_order(n))?;
                if !coloring.is_proper(&g) {
                    violations.push("greedy colouring is not proper".into());
                }
                serde_json::to_value(structure_report(&g))?
            }
            Prop::Spectral => {
                let report = match &multigraph {
                    Some(m) if m.k() > 0 => Some(spectrum(m)?),
                    Some(_) => None,
                    None => spectrum_regular(&g).ok(),
                };
                match report {
                    Some(r) => {
                        if !r.is_consistent(1e-9, 1e-8) {
                            violations.push(format!("spectral residuals too large: {:?}", r.residuals));
                        }
                        if r.mu < 1.0 - 1e-9 && !is_connected(&g) {
                            violations.push(format!("mu = {} < 1 but the graph is disconnected", r.mu));
                        }
                        serde_json::to_value(r.summary())?
                    }
                    None => json!({"skipped": "needs a nonempty multiset or a regular graph"}),
                }
            }
            Prop::Connectivity if n <= CONNECTIVITY_CAP => {
                let r = connectivity_report(&g)?;
                if !r.whitney_chain_holds() {
                    violations.push(format!("kappa <= lambda <= delta fails: {r:?}"));
                }
                serde_json::to_value(r)?
            }
            Prop::Connectivity => json!({"skipped": format!("n > {CONNECTIVITY_CAP}")}),
            Prop::Hamiltonian if (3..=HAMILTON_CAP).contains(&n) => {
                json!({"cycle": hamiltonian_cycle_exact(&g)?})
            }
            Prop::Hamiltonian => json!({"skipped": format!("n outside 3..={HAMILTON_CAP}")}),
            Prop::Distance => serde_json::to_value(distance_metrics(&g))?,
        };
        let key = prop.to_possible_value().expect("named").get_name().to_string();
        out.insert(key, value);
    }
    out.insert("violations".into(), json!(violations));

    let mut stdout = io::stdout().lock();
    if args.json {
        writeln!(stdout, "{}", serde_json::to_string_pretty(&Value::Object(out))?)?;
    } else {
        for (key, value) in &out {
            writeln!(stdout, "{key}: {value}")?;
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(violations))
    }
}

fn experiment(args: ExperimentArgs) -> Outcome {
    let config = ExperimentConfig::from_json(&fs::read_to_string(&args.config)?)?;
    let report = run_experiment(&config, args.threads)?;
    let mut summary = json!({
        "property": config.property.to_string(),
        "points": report.points,
        "violations": report.violations,
        "checksum": report.checksum,
    });
    if let Some(dir) = &args.out_dir {
        let paths = save_report(&report, dir)?;
        summary["report"] = json!(paths.report);
        summary["records"] = json!(paths.records);
    }
    writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&summary)?)?;
    if report.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(
            report
                .violations
                .iter()
                .map(|v| format!("n = {}: {}: {}", v.n, v.check, v.detail))
                .collect(),
        ))
    }
}

fn bounds(args: BoundsArgs) -> Outcome {
    let sheet = theory_bounds(args.n, args.p)?;
    writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(&sheet)?)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Analyze(a) => analyze(a),
        Command::Experiment(a) => experiment(a),
        Command::Bounds(a) => bounds(a),
    };
    report(&outcome);
    ExitCode::from(status(&outcome))
}

fn status(outcome: &Outcome) -> u8 {
    match outcome {
        Ok(()) | Err(Failure::Closed) => 0,
        Err(Failure::Usage(_)) => 1,
        Err(Failure::Violation(_)) => 2,
    }
}

fn report(outcome: &Outcome) {
    match outcome {
        Ok(()) | Err(Failure::Closed) => {}
        Err(Failure::Usage(msg)) => eprintln!("error: {msg}"),
        Err(Failure::Violation(list)) => {
            for v in list {
                eprintln!("invariant violation: {v}");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(status(&Ok(())), 0);
        assert_eq!(status(&Err(Failure::Usage("x".into()))), 1);
        assert_eq!(status(&Err(Failure::Violation(vec!["x".into()]))), 2);
        let closed = io::Error::from(io::ErrorKind::BrokenPipe);
        assert_eq!(status(&Err(latin_graph::Error::Io(closed).into())), 0);
        let lib: Failure = latin_graph::Error::EmptySample.into();
        assert_eq!(status(&Err(lib)), 1);
    }
}

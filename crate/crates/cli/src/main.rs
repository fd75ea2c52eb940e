use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use symchaos_core::decomposition::Codec;
use symchaos_core::graph::{parse_graph, GraphPoint, GraphSystem};
use symchaos_core::interval::{baker, induced_baker, induced_tent, tent, UnitPoint};
use symchaos_core::symbolic::{bits_of, conjugacy_agreement, DEFAULT_MAX_BITS};
use symchaos_core::verifier::{
    dense_orbit_coverage, lemma6_commute_check, periodic_density, sensitivity_probe,
    transitivity_witness, ChaosReport, ChaosSystem, Control, IntervalChaos, Limits,
};
use symchaos_core::Rational;

#[derive(Parser)]
#[command(
    name = "symchaos",
    version,
    about = "Chaotic maps induced from symbolic dynamics, in exact arithmetic"
)]
struct Cli {
    /// Cap on enumeration sizes, in bits.
    #[arg(long, env = "SYMCHAOS_MAX_BITS", default_value_t = DEFAULT_MAX_BITS, global = true)]
    max_bits: u32,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one interval map to a point.
    Eval {
        #[arg(long, value_enum)]
        system: MapKind,
        #[arg(long)]
        x: UnitPoint,
    },
    /// Exact orbit of a point of [0,1].
    Orbit {
        #[arg(long, value_enum)]
        system: MapKind,
        #[arg(long)]
        x: UnitPoint,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact orbit of a point on a graph.
    GraphOrbit {
        #[arg(long)]
        file: PathBuf,
        /// `ARC:p/q` (arc id or 1-based index) or `node:ID`.
        #[arg(long)]
        start: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run one chaos check and print its JSON report.
    Verify(VerifyArgs),
    /// Compare S.R with R.C on every prefix of a given length.
    Conjugacy {
        #[arg(long)]
        length: u32,
    },
    /// Print every word addressing a point, one `pre:period` per line.
    Fiber {
        #[arg(long)]
        x: Rational,
        #[arg(long, requires = "arc")]
        file: Option<PathBuf>,
        #[arg(long, requires = "file")]
        arc: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MapKind {
    Tent,
    Baker,
    InducedTent,
    InducedBaker,
}

impl MapKind {
    fn apply(self, x: &UnitPoint) -> UnitPoint {
        match self {
            MapKind::Tent => tent(x),
            MapKind::Baker => baker(x),
            MapKind::InducedTent => induced_tent(x),
            MapKind::InducedBaker => induced_baker(x),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SystemKind {
    Tent,
    Baker,
    Graph,
    ConstantControl,
    IdentityControl,
    RotationControl,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyKind {
    PeriodicDensity,
    DenseOrbit,
    Transitivity,
    Sensitivity,
    Lemma6,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    system: SystemKind,
    #[arg(long, required_if_eq("system", "graph"))]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    property: PropertyKind,
    #[arg(long, default_value_t = 12)]
    max_period: u32,
    /// Cell resolution p [default: 7, or 5 on graphs, 4 for transitivity].
    #[arg(long)]
    resolution: Option<u32>,
    /// Orbit length [default: 25000, or 60000 on graphs, 20000 for lemma6].
    #[arg(long)]
    steps: Option<u64>,
    /// Iteration horizon [default: 20 for transitivity, 40 for sensitivity].
    #[arg(long)]
    horizon: Option<u32>,
    /// Separation threshold [default: 1/4, or 1/8 on graphs].
    #[arg(long)]
    eta: Option<Rational>,
    #[arg(long, default_value = "1/4096")]
    delta: Rational,
    #[arg(long, default_value_t = 256)]
    grid: u32,
}

type CliResult = Result<ExitCode, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits {
        max_bits: cli.max_bits,
    };
    match run(cli.command, limits) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, limits: Limits) -> CliResult {
    let mut out = io::stdout().lock();
    match command {
        Command::Eval { system, x } => {
            writeln!(out, "{}", system.apply(&x)).map_err(io_error)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit {
            system,
            x,
            steps,
            format,
        } => {
            let mut orbit = vec![x];
            for _ in 0..steps {
                let next = system.apply(orbit.last().expect("nonempty"));
                orbit.push(next);
            }
            let rows: Vec<[Value; 4]> = orbit
                .iter()
                .enumerate()
                .map(|(i, y)| {
                    let v = y.value();
                    [
                        json!(i),
                        json!(v.numer().to_string()),
                        json!(v.denom().to_string()),
                        json!(v.to_f64()),
                    ]
                })
                .collect();
            emit(&mut out, format, &["step", "num", "den", "approx"], &rows)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::GraphOrbit {
            file,
            start,
            steps,
            format,
        } => {
            let g = load_graph(&file)?;
            let p = g.parse_point(&start).map_err(|e| e.to_string())?;
            let rows: Vec<[Value; 5]> = g
                .graph_orbit(&p, steps)
                .iter()
                .enumerate()
                .map(|(i, q)| match q {
                    GraphPoint::Interior { arc, t } => [
                        json!(i),
                        json!(g.spec().arc(*arc).id),
                        json!(t.numer().to_string()),
                        json!(t.denom().to_string()),
                        json!(t.to_f64()),
                    ],
                    GraphPoint::Node(id) => [
                        json!(i),
                        json!(format!("node:{id}")),
                        Value::Null,
                        Value::Null,
                        Value::Null,
                    ],
                })
                .collect();
            emit(
                &mut out,
                format,
                &["step", "arc_or_node", "t_num", "t_den", "approx"],
                &rows,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let report = verify(&args, limits)?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            writeln!(out, "{text}").map_err(io_error)?;
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Conjugacy { length } => {
            let summary =
                conjugacy_agreement(length, limits.max_bits).map_err(|e| e.to_string())?;
            let text = serde_json::to_string_pretty(&summary).map_err(|e| e.to_string())?;
            writeln!(out, "{text}").map_err(io_error)?;
            Ok(if summary.holds() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Fiber { x, file, arc } => {
            if !x.is_unit_interval() {
                return Err(format!("{x} is outside [0,1]"));
            }
            let words = match (file, arc) {
                (Some(file), Some(arc)) => {
                    let g = load_graph(&file)?;
                    let index = g
                        .spec()
                        .resolve_arc(&arc)
                        .ok_or_else(|| format!("no arc `{arc}`"))?;
                    g.codec()
                        .fiber(&g.codec().point_on_arc(index, x))
                        .members()
                        .to_vec()
                }
                _ => bits_of(&x).map_err(|e| e.to_string())?,
            };
            for w in words {
                writeln!(out, "{w}").map_err(io_error)?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn io_error(e: io::Error) -> String {
    e.to_string()
}

fn load_graph(path: &PathBuf) -> Result<GraphSystem, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let spec = parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(GraphSystem::new(spec))
}

/// Numerators and denominators are JSON strings so that they stay exact.
fn emit<const N: usize>(
    out: &mut impl Write,
    format: Format,
    header: &[&str; N],
    rows: &[[Value; N]],
) -> Result<(), String> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", header.join(",")).map_err(io_error)?;
            for row in rows {
                let cells: Vec<String> = row
                    .iter()
                    .map(|v| match v {
                        Value::Null => String::new(),
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect();
                writeln!(out, "{}", cells.join(",")).map_err(io_error)?;
            }
        }
        Format::Json => {
            let records: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let obj: serde_json::Map<String, Value> = header
                        .iter()
                        .zip(row)
                        .map(|(key, value)| ((*key).to_string(), value.clone()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            let text = serde_json::to_string_pretty(&records).map_err(|e| e.to_string())?;
            writeln!(out, "{text}").map_err(io_error)?;
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs, limits: Limits) -> Result<ChaosReport, String> {
    match args.system {
        SystemKind::Tent => run_check(&IntervalChaos::tent(), args, limits, false),
        SystemKind::Baker => run_check(&IntervalChaos::baker(), args, limits, false),
        SystemKind::ConstantControl => run_check(&Control::Constant, args, limits, false),
        SystemKind::IdentityControl => run_check(&Control::Identity, args, limits, false),
        SystemKind::RotationControl => run_check(&Control::RotationThird, args, limits, false),
        SystemKind::Graph => {
            let file = args.file.as_ref().ok_or("--file is required for graphs")?;
            run_check(&load_graph(file)?, args, limits, true)
        }
    }
}

fn run_check<S: ChaosSystem>(
    sys: &S,
    args: &VerifyArgs,
    limits: Limits,
    graph: bool,
) -> Result<ChaosReport, String> {
    let resolution = |default| args.resolution.unwrap_or(default);
    let result = match args.property {
        PropertyKind::PeriodicDensity => periodic_density(
            sys,
            args.max_period,
            resolution(if graph { 5 } else { 7 }),
            limits,
        ),
        PropertyKind::DenseOrbit => dense_orbit_coverage(
            sys,
            args.steps.unwrap_or(if graph { 60_000 } else { 25_000 }),
            resolution(if graph { 5 } else { 8 }),
        ),
        PropertyKind::Transitivity => {
            transitivity_witness(sys, resolution(4), args.horizon.unwrap_or(20))
        }
        PropertyKind::Sensitivity => {
            let eta = args
                .eta
                .clone()
                .unwrap_or_else(|| Rational::from_u64_parts(1, if graph { 8 } else { 4 }));
            sensitivity_probe(
                sys,
                &eta,
                &args.delta,
                args.grid,
                args.horizon.unwrap_or(40),
            )
        }
        PropertyKind::Lemma6 => {
            lemma6_commute_check(sys, args.max_period, args.steps.unwrap_or(20_000), limits)
        }
    };
    result.map_err(|e| e.to_string())
}

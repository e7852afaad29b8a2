use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use ordist::circular::{is_circular_split_system, maximum_circular_system, order_distance_circular};
use ordist::compat::{first_incompatible_pair, six_point_witness};
use ordist::flatlab::{
    allowable_splits, express_in_basis, flat_routes, is_closed, orderly_test, pairwise_separation_check,
    pairwise_separation_check_exhaustive, split_rank, Evidence, OrderlyVerdict, Phase,
};
use ordist::io::{parse_distance_matrix, parse_split_system, write_distance_matrix, write_split_system, write_unweighted};
use ordist::random::{random_allowable_pair, random_binary_tree, random_circular_ordering, random_circular_system};
use ordist::rational::{format_rational, int, parse_rational};
use ordist::{
    fixtures, midpath_split_system, order_distance_eq1, order_distance_kendall, DistanceMatrix, Error, GroundSet,
    OrderParams, Rational, SplitSystem, WeightedSplitSystem,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "ordist", version, about = "Order distances and split system analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the order distance O_{p,q}(D).
    Order {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, value_parser = rational)]
        p: Rational,
        #[arg(short, value_parser = rational)]
        q: Rational,
        #[arg(long, value_enum, default_value_t = Algo::Eq1)]
        algo: Algo,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the midpath split system of a distance matrix.
    Midpath {
        #[arg(short, long)]
        input: PathBuf,
        /// Also search for a six-point witness of incompatibility.
        #[arg(long)]
        witness: bool,
    },
    /// Test a property of a split system.
    Check {
        #[arg(value_enum)]
        property: Property,
        /// Split system file or fixture name (S1_5, S2_5, tree5, circular4).
        #[arg(short, long)]
        splits: String,
        /// Exit with status 1 when the verdict is false.
        #[arg(long)]
        strict: bool,
        /// For pairsep: enumerate every bipartition instead of the splits separating each pair.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Express a distance matrix as a combination of split metrics.
    Decompose {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        splits: String,
    },
    /// Search for a weighting whose order distance leaves the cone of the system.
    Orderly {
        #[arg(short, long)]
        splits: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Generate a random split system.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(short)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the order distance engines on a random circular input.
    Bench {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Eq1,
    Kendall,
    Circular,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Compat,
    Circular,
    Flat,
    Independent,
    Closed,
    Pairsep,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Tree,
    Circular,
    Flat,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A failed precondition of an otherwise well-formed request.
#[derive(Debug)]
struct Precondition(String);

impl std::fmt::Display for Precondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Precondition {}

fn precondition(msg: impl Into<String>) -> anyhow::Error {
    Precondition(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Precondition>().is_some() {
        return 3;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::NotCircular
            | Error::Dependent
            | Error::EmptySystem
            | Error::Incompatible
            | Error::TooFewElements { .. }
            | Error::GroundMismatch
            | Error::NotAllowable(_),
        ) => 3,
        _ => 2,
    }
}

fn read_matrix(path: &Path) -> anyhow::Result<DistanceMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_distance_matrix(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_splits(source: &str) -> anyhow::Result<WeightedSplitSystem> {
    let path = Path::new(source);
    if !path.exists() {
        if let Some(system) = fixtures::split_system_by_name(source) {
            return Ok(system.with_unit_weights());
        }
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
    parse_split_system(&text).with_context(|| format!("parsing {source}"))
}

fn emit(text: &str, output: Option<&Path>) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn same_ground(d: &DistanceMatrix, system: &WeightedSplitSystem) -> anyhow::Result<()> {
    if d.ground() != system.ground() {
        return Err(precondition("matrix and split system have different labels"));
    }
    Ok(())
}

/// Runs a command and returns whether its verdict held.
fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Order { input, p, q, algo, output } => {
            let d = read_matrix(&input)?;
            let params = OrderParams::new(p.clone(), q)?;
            let o = match algo {
                Algo::Eq1 => order_distance_eq1(&d, &params),
                Algo::Kendall => order_distance_kendall(&d, &params),
                Algo::Circular => {
                    if !params.is_half() {
                        return Err(precondition("the circular engine requires q = p/2"));
                    }
                    order_distance_circular(&d, &p)?
                }
            };
            emit(&write_distance_matrix(&o), output.as_deref())?;
            Ok(true)
        }
        Command::Midpath { input, witness } => {
            let d = read_matrix(&input)?;
            let m = midpath_split_system(&d);
            let ground = d.ground();
            let mut out = String::new();
            writeln!(out, "x-splits:")?;
            for (s, k) in &m.x_splits {
                writeln!(out, "  {} x{k}", s.display(ground))?;
            }
            writeln!(out, "e-splits:")?;
            for (s, k) in &m.e_splits {
                writeln!(out, "  {} x{k}", s.display(ground))?;
            }
            let system = SplitSystem::new(ground.clone(), m.midpath_splits())?;
            writeln!(out, "size: {}", system.len())?;
            writeln!(out, "compatible: {}", first_incompatible_pair(&system).is_none())?;
            if witness {
                match six_point_witness(&d) {
                    Some(w) => {
                        let l = |i: usize| ground.label(i);
                        writeln!(
                            out,
                            "witness: a={} b={} s={} t={} x={} y={} condition={:?}",
                            l(w.a),
                            l(w.b),
                            l(w.s),
                            l(w.t),
                            l(w.x),
                            l(w.y),
                            w.condition
                        )?;
                    }
                    None => writeln!(out, "witness: none")?,
                }
            }
            print!("{out}");
            Ok(true)
        }
        Command::Check { property, splits, strict, exhaustive } => {
            let system = read_splits(&splits)?.splits();
            let ground = system.ground();
            let pair = |(a, b): (ordist::Split, ordist::Split)| format!("{}  {}", a.display(ground), b.display(ground));
            let (name, verdict, detail) = match property {
                Property::Compat => {
                    let bad = first_incompatible_pair(&system);
                    ("compatible", bad.is_none(), bad.map(|p| format!("incompatible pair: {}", pair(p))))
                }
                Property::Circular => {
                    let theta = is_circular_split_system(&system);
                    ("circular", theta.is_some(), theta.map(|t| format!("ordering: {}", t.display(ground))))
                }
                Property::Flat => {
                    let routes = flat_routes(&system);
                    let detail = format!(
                        "restrictions: {}\nseparation: {}",
                        routes.restriction, routes.separation
                    );
                    ("maximum flat", routes.restriction && routes.separation, Some(detail))
                }
                Property::Independent => {
                    let rank = split_rank(&system);
                    ("independent", rank == system.len(), Some(format!("rank: {rank} of {}", system.len())))
                }
                Property::Closed => {
                    let bad = is_closed(&system)?;
                    ("closed", bad.is_none(), bad.map(|p| format!("unclosed pair: {}", pair(p))))
                }
                Property::Pairsep => {
                    let bad = if exhaustive {
                        pairwise_separation_check_exhaustive(&system)
                    } else {
                        pairwise_separation_check(&system)
                    };
                    let detail = bad.map(|(x, y)| format!("failing pair: {} {}", ground.label(x), ground.label(y)));
                    ("pairwise separation", bad.is_none(), detail)
                }
            };
            println!("{name}: {verdict}");
            if let Some(detail) = detail {
                println!("{detail}");
            }
            Ok(verdict || !strict)
        }
        Command::Decompose { input, splits } => {
            let d = read_matrix(&input)?;
            let system = read_splits(&splits)?;
            same_ground(&d, &system)?;
            match express_in_basis(&d, &system.splits())? {
                None => println!("NOT-IN-SPAN"),
                Some(weights) => {
                    if weights.values().any(|w| w.is_negative()) {
                        println!("NEGATIVE-WEIGHT");
                    }
                    let ground = d.ground();
                    for (s, w) in &weights {
                        println!("{} : {}", s.display(ground), format_rational(w));
                    }
                }
            }
            Ok(true)
        }
        Command::Orderly { splits, trials, seed } => {
            let system = read_splits(&splits)?.splits();
            match orderly_test(&system, trials, seed)? {
                OrderlyVerdict::NoCounterexampleFound { trials } => {
                    println!("verdict: no counterexample found");
                    println!("trials: {trials}");
                }
                OrderlyVerdict::CounterexampleFound(c) => {
                    let ground = system.ground();
                    println!("verdict: counterexample found");
                    match &c.phase {
                        Phase::Adversarial { pair: (a, b) } => {
                            println!("phase: adversarial {}  {}", a.display(ground), b.display(ground))
                        }
                        Phase::Random { trial } => println!("phase: random trial {trial}"),
                    }
                    match &c.evidence {
                        Evidence::NotInSpan => println!("evidence: NOT-IN-SPAN"),
                        Evidence::NegativeWeight { split, weight } => println!(
                            "evidence: NEGATIVE-WEIGHT {} : {}",
                            split.display(ground),
                            format_rational(weight)
                        ),
                    }
                    println!("weighting:");
                    print!("{}", write_split_system(&c.weighting));
                }
            }
            Ok(true)
        }
        Command::Gen { kind, n, seed, output } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let system = match kind {
                GenKind::Tree => random_binary_tree(n, &mut rng)?,
                GenKind::Circular => {
                    if n < 2 {
                        return Err(precondition("need at least 2 elements"));
                    }
                    maximum_circular_system(&random_circular_ordering(n, &mut rng), GroundSet::alphabetic(n))?
                }
                GenKind::Flat => allowable_splits(&random_allowable_pair(n, &mut rng)?),
            };
            emit(&write_unweighted(&system), output.as_deref())?;
            Ok(true)
        }
        Command::Bench { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (_, ws) = random_circular_system(n, &mut rng)?;
            let d = ws.generate_distance();
            let p = int(2);
            let params = OrderParams::half(p.clone())?;
            let time = |f: &dyn Fn() -> DistanceMatrix| {
                let start = Instant::now();
                let o = f();
                (o, start.elapsed())
            };
            let (a, t_eq1) = time(&|| order_distance_eq1(&d, &params));
            let (b, t_kendall) = time(&|| order_distance_kendall(&d, &params));
            let (c, t_circular) = time(&|| order_distance_circular(&d, &p).expect("input is circular"));
            if a != b || a != c {
                bail!("engines disagree");
            }
            println!("n: {n}");
            println!("eq1: {t_eq1:.3?}");
            println!("kendall: {t_kendall:.3?}");
            println!("circular: {t_circular:.3?}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("ORDIST_THREADS").ok().and_then(|v| v.parse().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().ok();
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

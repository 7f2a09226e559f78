use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use iscount::basecase::verify_psi_kappa;
use iscount::count::{approximate_independent_sets, CountConfig};
use iscount::decompose::{extended_decomposition, standard_decomposition};
use iscount::exact::exact_z;
use iscount::potential::{self, parse_potential, parse_rational, PrePotential};
use iscount::{Graph, Vertex, WeightedGraph};

#[derive(Parser)]
#[command(name = "iscount", version, about = "Count independent sets of a graph")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate the number of independent sets to within a factor 1 ± eps.
    Count {
        graph: PathBuf,
        #[arg(long, value_parser = parse_eps)]
        eps: BigRational,
        /// `general`, `bipartite` or a potential CSV file.
        #[arg(long, default_value = "general")]
        potential: String,
        /// Print the value rounded half-to-even to this many decimals.
        #[arg(long)]
        decimal: Option<usize>,
        #[arg(long, env = "ISCOUNT_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        threads: u32,
        /// Write one line per recursive call to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        base_exact_threshold: usize,
        /// Fixed recursion depth for the walk-tree estimator.
        #[arg(long)]
        saw_depth: Option<u32>,
    },
    /// Exact number of independent sets.
    Exact {
        graph: PathBuf,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = 80, value_parser = clap::value_parser!(u32).range(1..))]
        exact_cap: u32,
    },
    /// Check a potential and print its running-time certificate.
    ValidatePotential {
        /// `general`, `bipartite` or a potential CSV file.
        potential: String,
    },
    /// Print D2(k) for a rational k >= 2.
    D2 {
        #[arg(value_parser = parse_number)]
        k: BigRational,
    },
    /// Exhaustive check of the psi table against kappa = 4.141.
    VerifyPsi,
    /// Print the standard (and, when |S| = 2, extended) decomposition at v.
    Analyze { graph: PathBuf, v: Vertex },
}

enum Failure {
    Invalid(String),
    Input(String),
}

impl From<iscount::Error> for Failure {
    fn from(e: iscount::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_number(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|_| format!("`{s}` is not an integer, fraction or decimal"))
}

fn parse_eps(s: &str) -> Result<BigRational, String> {
    let e = parse_number(s)?;
    if !e.is_positive() || e >= BigRational::one() {
        return Err(format!("epsilon must lie in (0, 1), got {s}"));
    }
    Ok(e)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    Graph::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_potential(name: &str) -> Result<PrePotential, Failure> {
    let text = match potential::builtin_text(name) {
        Some(t) => t.to_string(),
        None => read(Path::new(name))?,
    };
    parse_potential(&text).map_err(|e| Failure::Input(format!("{name}: {e}")))
}

/// Rounds half-to-even at `digits` decimals.
fn decimal(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * BigRational::from_integer(scale.clone());
    let mut n = scaled.floor().to_integer();
    let frac = scaled - BigRational::from_integer(n.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if frac > half || (frac == half && n.is_odd()) {
        n += 1;
    }
    let neg = n.is_negative();
    let (int_part, frac_part) = n.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{:0>digits$}", frac_part.to_string())
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Count { graph, eps, potential, decimal: digits, threads, trace, base_exact_threshold, saw_depth } => {
            let g = load_graph(&graph)?;
            let p = load_potential(&potential)?;
            let mut cfg = CountConfig {
                base_exact_threshold,
                trace: trace.is_some(),
                threads: threads as usize,
                ..CountConfig::default()
            };
            cfg.uni.depth_override = saw_depth;
            let out = approximate_independent_sets(&g, &eps, &p, &cfg)?;
            if let Some(path) = trace {
                std::fs::write(&path, out.trace.render())
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            let value = match digits {
                Some(d) => decimal(&out.value.value, d),
                None => out.value.value.to_string(),
            };
            let kind = if out.value.exact { "exact" } else { "approximate" };
            Ok(format!(
                "{value}\neps {}\n{kind}\ncalls {} prunes {} base {}\n",
                out.value.epsilon, out.trace.calls, out.trace.prunes, out.trace.base_hits
            ))
        }
        Command::Exact { graph, exact_cap } => {
            let g = load_graph(&graph)?;
            if g.order() > exact_cap as usize {
                return Err(Failure::Input(format!(
                    "graph has {} vertices, above the exact cap {exact_cap}",
                    g.order()
                )));
            }
            Ok(format!("{}\n", exact_z(&WeightedGraph::unit(g))))
        }
        Command::ValidatePotential { potential } => {
            let p = load_potential(&potential)?;
            let report = potential::validate(&p);
            if report.passed() {
                Ok(report.render())
            } else {
                Err(Failure::Invalid(report.render()))
            }
        }
        Command::D2 { k } => {
            if k < BigRational::from_integer(BigInt::from(2)) {
                return Err(Failure::Input(format!("d2 needs k >= 2, got {k}")));
            }
            Ok(format!("{}\n", potential::d2(&k)))
        }
        Command::VerifyPsi => {
            let bad = verify_psi_kappa();
            if bad.is_empty() {
                Ok("OK (no counterexample)\n".to_string())
            } else {
                Err(Failure::Invalid(bad.iter().map(|v| format!("{v}\n")).collect()))
            }
        }
        Command::Analyze { graph, v } => {
            let g = load_graph(&graph)?;
            if !g.contains(v) {
                return Err(Failure::Input(format!("unknown vertex {v}")));
            }
            let comp = g.components().into_iter().find(|c| c.contains(&v)).unwrap();
            let gv = g.induced(&comp);
            let dec = standard_decomposition(&gv, v)?;
            if dec.s_set.len() == 2 {
                Ok(extended_decomposition(&gv, v)?.to_string())
            } else {
                Ok(dec.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

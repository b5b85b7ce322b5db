use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use latdiam::bounds::bounds_report;
use latdiam::io as fmt;
use latdiam::sample::{run_suite, Suite};
use latdiam::search::{
    enumerate_max_diameter_2d, pruned_search, PruneBudget, SearchOutcome,
};
use latdiam::zonotope::{primitive_generators, zonotope_vertices};
use latdiam::{Error, Result};

/// Exact-arithmetic toolkit for graph diameters of lattice polytopes.
#[derive(Parser)]
#[command(name = "latdiam", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convex hull of a points file, written in the polytope text format.
    Hull {
        /// Input points file ('-' or omitted for stdin).
        input: Option<PathBuf>,
        /// Output polytope file (omitted for stdout).
        output: Option<PathBuf>,
    },
    /// BFS diameter and a witness vertex pair of a polytope file.
    Diameter {
        input: Option<PathBuf>,
    },
    /// The primitive generator set with 1-norm at most P, one per +/- pair.
    Generators {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        p: i64,
        output: Option<PathBuf>,
    },
    /// Vertices of the zonotope spanned by a generator file.
    Zonotope {
        input: Option<PathBuf>,
        output: Option<PathBuf>,
    },
    /// JSON report of diameter bounds for all d <= dmax, k <= kmax.
    Bounds {
        #[arg(long)]
        dmax: usize,
        #[arg(long)]
        kmax: i64,
        output: Option<PathBuf>,
    },
    /// Exhaustive maximum-diameter enumeration for lattice polygons.
    Search2d {
        #[arg(long)]
        k: i64,
        /// Certificate store destination (omitted for stdout).
        output: Option<PathBuf>,
    },
    /// Pruned search for a (d,k)-polytope of diameter at least the target.
    Prune {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        target: u32,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        budget: u64,
        /// Digest file consulted before expanding states and rewritten on exit.
        #[arg(long)]
        resume: Option<PathBuf>,
    },
    /// Randomized checker suites; nonzero exit on any violation.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: usize,
        /// Defaults to $LATDIAM_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Print every report, not only violations.
        #[arg(long)]
        verbose: bool,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<(String, String)> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            Ok((fmt::read_to_string(p)?, p.display().to_string()))
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Io { path: "<stdin>".into(), msg: e.to_string() })?;
            Ok((buf, "<stdin>".into()))
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => fmt::write_string(p, text),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("LATDIAM_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("LATDIAM_SEED must be an unsigned integer, got {v:?}"))
        }),
        Err(_) => Ok(0),
    }
}

fn run(cmd: Cmd) -> Result<u8> {
    match cmd {
        Cmd::Hull { input, output } => {
            let (text, origin) = read_input(&input)?;
            let file = fmt::parse_points(&text, &origin)?;
            let p = latdiam::geometry::LatticePolytope::from_points(file.points, file.d)?
                .with_declared_k(file.k)?;
            write_output(&output, &fmt::render_polytope(&p))?;
            Ok(0)
        }
        Cmd::Diameter { input } => {
            let (text, origin) = read_input(&input)?;
            let p = fmt::parse_polytope(&text, &origin)?;
            let (diam, (u, v)) = latdiam::graph::diameter(&p)?;
            let coords = |i: usize| {
                p.vertices()[i]
                    .coords()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("diameter {diam}");
            println!("witness {} -- {}", coords(u), coords(v));
            Ok(0)
        }
        Cmd::Generators { dim, p, output } => {
            let gens = primitive_generators(dim, p)?;
            write_output(&output, &fmt::render_generators(&gens))?;
            Ok(0)
        }
        Cmd::Zonotope { input, output } => {
            let (text, origin) = read_input(&input)?;
            let gens = fmt::parse_generators(&text, &origin)?;
            let p = zonotope_vertices(&gens)?;
            write_output(&output, &fmt::render_polytope(&p))?;
            Ok(0)
        }
        Cmd::Bounds { dmax, kmax, output } => {
            let report = bounds_report(dmax, kmax)?;
            let json = serde_json::to_string(&report)
                .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?;
            write_output(&output, &format!("{json}\n"))?;
            Ok(0)
        }
        Cmd::Search2d { k, output } => {
            let (value, certs) = enumerate_max_diameter_2d(k)?;
            eprintln!(
                "maximum diameter {value} over lattice (2,{k})-polytopes; {} maximizer class(es)",
                certs.len()
            );
            write_output(&output, &fmt::render_certificates(&certs))?;
            Ok(0)
        }
        Cmd::Prune { dim, k, target, budget, resume } => {
            let seen = match &resume {
                Some(path) if path.exists() => fmt::read_digests(path)?,
                _ => Default::default(),
            };
            let budget = PruneBudget {
                nodes: u64::MAX,
                time_limit: Some(Duration::from_secs(budget)),
            };
            let run = pruned_search(dim, k, target, &budget, &seen)?;
            if let Some(path) = &resume {
                fmt::write_string(path, &fmt::render_digests(&run.visited))?;
            }
            match run.outcome {
                SearchOutcome::Certificate(cert) => {
                    println!("certificate found after {} nodes", run.nodes);
                    print!("{}", fmt::render_certificates(&[cert]));
                    Ok(0)
                }
                SearchOutcome::Exhausted { complete: true, .. } => {
                    println!(
                        "exhausted: no lattice ({dim},{k})-polytope has diameter >= {target}"
                    );
                    Ok(0)
                }
                SearchOutcome::Exhausted { complete: false, assumptions } => {
                    println!(
                        "exhausted after {} nodes, under pruning assumptions (weaker than nonexistence):",
                        run.nodes
                    );
                    for a in &assumptions {
                        println!("- {a}");
                    }
                    Ok(0)
                }
                SearchOutcome::BudgetExceeded { nodes } => {
                    println!("budget exceeded after {nodes} nodes");
                    Ok(3)
                }
            }
        }
        Cmd::Verify { suite, n, seed, workers, verbose } => {
            let suite: Suite = suite.parse()?;
            let seed = resolve_seed(seed)?;
            let outcome = run_suite(suite, n, seed, workers)?;
            let mut violations = 0usize;
            for report in &outcome.reports {
                let is_violation = report.status == latdiam::lemmas::CheckStatus::Violated;
                violations += usize::from(is_violation);
                if verbose || is_violation {
                    let line = serde_json::to_string(report)
                        .map_err(|e| Error::Internal(format!("report serialization failed: {e}")))?;
                    println!("{line}");
                }
            }
            let holds = outcome.count(latdiam::lemmas::CheckStatus::Holds);
            let skipped = outcome.count(latdiam::lemmas::CheckStatus::NotApplicable);
            println!(
                "suite {} seed {} instances {}: holds {}, violated {}, not applicable {}",
                suite.as_str(),
                seed,
                outcome.instances,
                holds,
                violations,
                skipped
            );
            Ok(if violations > 0 { 1 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::SearchBudget { .. } => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

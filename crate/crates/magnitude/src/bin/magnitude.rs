//! Command-line surface for the magnitude toolkit.
//!
//! Spaces and graphs cross the boundary as JSON files; exact rationals are
//! `"p/q"` strings; profiles are CSV. Exit codes: 0 success, 2 parse or
//! validation error, 3 mathematical error, 4 cap exceeded.

use clap::{Args, Parser, Subcommand};
use magnitude::construct::construct_target_limit;
use magnitude::engine::{formal_magnitude, magnitude_profile, numeric_magnitude, one_point_report};
use magnitude::io::{
    format_float, profile_to_csv, space_from_str, space_to_string, ConstructionJson, GraphJson,
    NegativeTypeJson, ReportJson,
};
use magnitude::rational::parse_rational;
use magnitude::{Error, FiniteMetricSpace, Graph};
use num_traits::Zero;
use serde::Serialize;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "magnitude",
    about = "Exact and numerical magnitude computations for finite metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpaceArg {
    /// Path to a space JSON file ({"labels": [...], "dist": [["p/q", ...]]})
    #[arg(long)]
    space: String,
}

#[derive(Subcommand)]
enum Command {
    /// Numeric magnitude at one scale, or a CSV profile over a t-grid
    Magnitude {
        #[command(flatten)]
        space: SpaceArg,
        /// Single scale t > 0
        #[arg(long, conflicts_with_all = ["t_min", "t_max", "t_count"])]
        t: Option<f64>,
        /// Grid start (requires --t-max and --t-count)
        #[arg(long, requires_all = ["t_max", "t_count"])]
        t_min: Option<f64>,
        /// Grid end
        #[arg(long)]
        t_max: Option<f64>,
        /// Number of grid points
        #[arg(long)]
        t_count: Option<usize>,
        /// Log-spaced grid instead of linear
        #[arg(long)]
        log: bool,
    },
    /// Formal magnitude as a canonical generalized rational function
    Formal {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// One-point-property report: F_n, det d, C_n, C_n', exact limit
    Onepoint {
        #[command(flatten)]
        space: SpaceArg,
    },
    /// Build a space whose small-scale limit is a prescribed value >= 1
    Construct {
        /// Target limit as a rational "p/q"
        #[arg(long)]
        target: String,
        /// Bisection tolerance as a rational "p/q"
        #[arg(long, default_value = "1/1000000")]
        tol: String,
    },
    /// Join of two spaces (both must have diameter at most 2)
    Join {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// l1 product of two spaces
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Shortest-path metric of a graph, as a space JSON
    Graph {
        #[arg(long, conflicts_with_all = ["cycle", "complete", "star", "file"])]
        path: Option<usize>,
        #[arg(long, conflicts_with_all = ["complete", "star", "file"])]
        cycle: Option<usize>,
        #[arg(long, conflicts_with_all = ["star", "file"])]
        complete: Option<usize>,
        /// Complete bipartite graph, as "m,n"
        #[arg(long, conflicts_with_all = ["path", "cycle", "complete", "star", "file"])]
        bipartite: Option<String>,
        #[arg(long, conflicts_with_all = ["file"])]
        star: Option<usize>,
        /// Graph JSON file ({"n": k, "edges": [[i,j], ...]})
        #[arg(long)]
        file: Option<String>,
    },
    /// n points pairwise at distance r, as a space JSON
    Uniform {
        #[arg(long)]
        n: usize,
        /// Distance as a rational "p/q"
        #[arg(long)]
        r: String,
    },
    /// Negative-type eigenvalue evidence, Euclidean-embeddability, homogeneity
    Check {
        #[command(flatten)]
        space: SpaceArg,
        /// Scales for the eigenvalue check (repeatable)
        #[arg(long = "t", default_values_t = [0.1, 1.0, 10.0])]
        t_samples: Vec<f64>,
        #[arg(long, default_value_t = magnitude::space::DEFAULT_HOMOGENEITY_CAP)]
        homogeneity_cap: usize,
    },
    /// Count random n-point spaces with nonzero F_n (genericity experiment)
    Generic {
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read_space(path: &str) -> Result<FiniteMetricSpace, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    space_from_str(&text)
}

#[derive(Serialize)]
struct CheckJson {
    negative_type: NegativeTypeJson,
    schoenberg: Option<bool>,
    homogeneous: Option<bool>,
}

fn run() -> Result<(), Error> {
    match Cli::parse().command {
        Command::Magnitude {
            space,
            t,
            t_min,
            t_max,
            t_count,
            log,
        } => {
            let x = read_space(&space.space)?;
            match (t, t_min) {
                (Some(t), _) => println!("{}", format_float(numeric_magnitude(&x, t)?)),
                (None, Some(min)) => {
                    let max = t_max.unwrap();
                    let count = t_count.unwrap();
                    if !(min > 0.0) || max < min || count == 0 {
                        return Err(Error::OutOfRange(
                            "grid requires 0 < t-min <= t-max and t-count >= 1".into(),
                        ));
                    }
                    let grid: Vec<f64> = (0..count)
                        .map(|i| {
                            let s = if count == 1 {
                                0.0
                            } else {
                                i as f64 / (count - 1) as f64
                            };
                            if log {
                                min * (max / min).powf(s)
                            } else {
                                min + (max - min) * s
                            }
                        })
                        .collect();
                    print!("{}", profile_to_csv(&magnitude_profile(&x, &grid)));
                }
                (None, None) => {
                    return Err(Error::Parse(
                        "either --t or --t-min/--t-max/--t-count is required".into(),
                    ))
                }
            }
        }
        Command::Formal { space } => {
            let x = read_space(&space.space)?;
            println!("{}", formal_magnitude(&x)?);
        }
        Command::Onepoint { space } => {
            let x = read_space(&space.space)?;
            let report = one_point_report(&x)?;
            println!(
                "{}",
                serde_json::to_string(&ReportJson::from_report(&report)).unwrap()
            );
        }
        Command::Construct { target, tol } => {
            let target = parse_rational(&target)?;
            let tol = parse_rational(&tol)?;
            let result = construct_target_limit(&target, &tol)?;
            println!(
                "{}",
                serde_json::to_string(&ConstructionJson::from_result(&result)).unwrap()
            );
        }
        Command::Join { left, right } => {
            let j = read_space(&left)?.join(&read_space(&right)?)?;
            println!("{}", space_to_string(&j));
        }
        Command::Product { left, right } => {
            let p = read_space(&left)?.l1_product(&read_space(&right)?)?;
            println!("{}", space_to_string(&p));
        }
        Command::Graph {
            path,
            cycle,
            complete,
            bipartite,
            star,
            file,
        } => {
            let g = if let Some(n) = path {
                Graph::path(n)
            } else if let Some(n) = cycle {
                Graph::cycle(n)?
            } else if let Some(n) = complete {
                Graph::complete(n)
            } else if let Some(spec) = bipartite {
                let (m, n) = spec
                    .split_once(',')
                    .ok_or_else(|| Error::Parse("expected --bipartite m,n".into()))?;
                let parse = |s: &str| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("invalid part size: {s:?}")))
                };
                Graph::complete_bipartite(parse(m)?, parse(n)?)
            } else if let Some(n) = star {
                Graph::star(n)
            } else if let Some(path) = file {
                let text =
                    fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
                let json: GraphJson = serde_json::from_str(&text)
                    .map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
                json.to_graph()?
            } else {
                return Err(Error::Parse(
                    "one of --path/--cycle/--complete/--bipartite/--star/--file is required"
                        .into(),
                ));
            };
            println!("{}", space_to_string(&FiniteMetricSpace::from_graph(&g)?));
        }
        Command::Uniform { n, r } => {
            let r = parse_rational(&r)?;
            println!(
                "{}",
                space_to_string(&FiniteMetricSpace::uniform(n, &r)?)
            );
        }
        Command::Check {
            space,
            t_samples,
            homogeneity_cap,
        } => {
            let x = read_space(&space.space)?;
            let report = CheckJson {
                negative_type: NegativeTypeJson::from_report(&x.negative_type_check(&t_samples)),
                schoenberg: x.schoenberg_check().ok(),
                homogeneous: x.is_homogeneous(homogeneity_cap).ok(),
            };
            println!("{}", serde_json::to_string(&report).unwrap());
        }
        Command::Generic { samples, n, seed } => {
            let mut nonzero = 0u64;
            let mut counterexample = None;
            for i in 0..samples {
                let x = FiniteMetricSpace::sample_random(n, seed.wrapping_add(i))?;
                if magnitude::engine::f_n(&x)?.is_zero() {
                    counterexample.get_or_insert_with(|| space_to_string(&x));
                } else {
                    nonzero += 1;
                }
            }
            println!("{nonzero}/{samples} nonzero");
            if let Some(c) = counterexample {
                println!("{c}");
            }
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::SizeCapExceeded { .. }
        | Error::BisectionCapExceeded(_)
        | Error::ExponentLatticeTooLarge(_) => 4,
        Error::SingularAtThisScale(_)
        | Error::AssumptionViolated
        | Error::NotHomogeneous
        | Error::NotAForest
        | Error::ExactnessUnavailable
        | Error::ZeroDenominatorPolynomial
        | Error::DivisionByZeroGenRat
        | Error::InfiniteDistanceUnsupported
        | Error::Internal(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

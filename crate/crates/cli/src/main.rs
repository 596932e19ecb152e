use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use l2zeta::graph::VoltageGraph;
use l2zeta::zeta::{zeta_at, PuData};
use l2zeta::Error;
use l2zeta_cli::report::{analyze, oracles, AnalyzeOptions};
use l2zeta_cli::{parse_complex, svg};
use num_complex::Complex64;

#[derive(Parser)]
#[command(name = "l2zeta", version, about = "L2 zeta functions of periodic graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline and emit a JSON report.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the symbolic Ω and track sheets numerically.
        #[arg(long)]
        no_symbolic: bool,
    },
    /// Evaluate Z(u) from the closed form.
    Eval {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        u: Complex64,
    },
    /// Compare the closed form against the θ-integral and the geodesic census.
    Oracle {
        graph: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        u: Complex64,
        #[arg(long, default_value_t = 4096)]
        theta_samples: usize,
        #[arg(long, default_value_t = 8)]
        geodesic_len: usize,
    },
    /// Draw the branch points as an SVG.
    Plot {
        graph: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

enum Failure {
    Validation(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            Failure::Validation(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

fn load(path: &Path) -> Result<VoltageGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(VoltageGraph::parse(&text)?)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Numeric(format!("cannot write {}: {e}", path.display())))
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.15e}{:+.15e}i", z.re + 0.0, z.im + 0.0)
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Analyze { graph, out, no_symbolic } => {
            let g = load(&graph)?;
            let r = analyze(&g, &AnalyzeOptions { symbolic: !no_symbolic })?;
            let json = r.to_json();
            match out {
                Some(p) => write(&p, &json)?,
                None => print!("{json}"),
            }
        }
        Cmd::Eval { graph, u } => {
            let g = load(&graph)?;
            let z = zeta_at(&PuData::from_graph(&g)?, u)?;
            println!("Z({}) = {}", fmt_c(u), fmt_c(z.value));
            if z.limit_value {
                eprintln!("note: u = 0 gives the limit value 1");
            }
            println!("in_checked_region: {}", z.in_checked_region);
            if !z.in_checked_region && !z.limit_value {
                eprintln!("warning: u lies outside the checked validity region");
            }
            if z.branch_ambiguous {
                eprintln!("warning: a root r_i lies on [-1, 1]; the principal branch is ambiguous");
            }
        }
        Cmd::Oracle { graph, u, theta_samples, geodesic_len } => {
            let g = load(&graph)?;
            let pu = PuData::from_graph(&g)?;
            let o = oracles(&g, &pu, u, theta_samples, geodesic_len)?;
            println!("u = {}", fmt_c(u));
            println!("closed form 1/Z       {}", fmt_c(o.closed_form_inverse));
            match (o.theta_side, &o.theta_error) {
                (Some(t), _) => {
                    println!("theta integral ({theta_samples:>5}) {}", fmt_c(t));
                    println!("relative residual     {:.3e}", o.theta_residual().unwrap_or(f64::NAN));
                }
                (None, Some(e)) => println!("theta integral        failed: {e}"),
                (None, None) => {}
            }
            match (&o.taylor, &o.census, &o.census_error) {
                (Some(t), Some(c), _) => {
                    println!("{:>3}  {:>20}  {:>20}  {:>6}", "k", "taylor", "census", "match");
                    for (k, (a, b)) in t.iter().zip(c).enumerate() {
                        println!("{k:>3}  {a:>20}  {b:>20}  {:>6}", a == b);
                    }
                    println!("census match (L = {geodesic_len}): {}", t == c);
                }
                (_, _, Some(e)) => println!("census                failed: {e}"),
                _ => {}
            }
        }
        Cmd::Plot { graph, svg: out } => {
            let g = load(&graph)?;
            let r = analyze(&g, &AnalyzeOptions { symbolic: true })?;
            write(&out, &svg::render(&r))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

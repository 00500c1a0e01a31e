//! Command-line interface: bound tables, group construction summaries,
//! character-table export, minimal faithful dimensions, and the full
//! verification harness.

use clap::{Parser, Subcommand, ValueEnum};
use repdim::catalog::{
    build_expr_with_beta, build_from_forms_text, parse_expr, summarize, verification_table,
    MAXIMALITY_NOTE,
};
use repdim::rdim::{self, min_faithful_dim, min_faithful_dim_bruteforce};
use repdim::reptheory::CharacterTable;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "repdim",
    about = "Exact representation-dimension computations for finite p-groups",
    version
)]
struct Cli {
    /// Seed for the sampled validation checks (tables above the exhaustive
    /// associativity cap).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form dimension maxima and the rank-bound maxima per exponent.
    FpTable {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Build a group from an expression and print its structural summary.
    Build {
        #[arg(long, required_unless_present = "forms", conflicts_with = "forms")]
        spec: Option<String>,
        /// Generator-matrix file (optionally with a trailing twist table).
        #[arg(long)]
        forms: Option<String>,
        /// Twist-table file, applied to a top-level heisenberg expression
        /// or to a --forms space.
        #[arg(long)]
        beta: Option<String>,
    },
    /// Compute and export the exact character table of a group.
    Chartab {
        #[arg(long, required_unless_present = "forms", conflicts_with = "forms")]
        spec: Option<String>,
        /// Generator-matrix file (optionally with a trailing twist table).
        #[arg(long)]
        forms: Option<String>,
        #[arg(long, value_enum, default_value_t = ExportFormat::Json)]
        format: ExportFormat,
    },
    /// Minimal faithful representation dimension with its witness.
    Rdim {
        #[arg(long, required_unless_present = "forms", conflicts_with = "forms")]
        spec: Option<String>,
        /// Generator-matrix file (optionally with a trailing twist table).
        #[arg(long)]
        forms: Option<String>,
        /// Cross-check with the exhaustive subset oracle instead of greedy.
        #[arg(long)]
        brute_force: bool,
    },
    /// Rebuild and check the maximal-dimension table for a prime.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &str) -> repdim::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| repdim::Error::Parse(format!("cannot read {path}: {e}")))
}

fn load_group(
    spec: Option<String>,
    forms: Option<String>,
    seed: u64,
) -> repdim::Result<repdim::groups::GroupTable> {
    match (spec, forms) {
        (Some(spec), _) => build_expr_with_beta(&parse_expr(&spec)?, None, seed),
        (None, Some(path)) => build_from_forms_text(&read_file(&path)?, None, seed),
        (None, None) => unreachable!("clap enforces one input"),
    }
}

fn run(cli: Cli) -> repdim::Result<ExitCode> {
    match cli.command {
        Command::FpTable { p, nmax, format } => {
            if !repdim::ffield::is_prime(p) {
                return Err(repdim::Error::Domain(format!("{p} is not prime")));
            }
            if nmax == 0 {
                return Err(repdim::Error::Domain("nmax must be positive".into()));
            }
            let rows: Vec<(u32, u64, u64)> = (1..=nmax)
                .map(|n| (n, rdim::fp(p, n), rdim::rank_bound_max(n, p)))
                .collect();
            match format {
                TableFormat::Text => {
                    println!("{:>4} {:>12} {:>12}", "n", "fp", "rank-bound");
                    for (n, fp, eq2) in rows {
                        println!("{n:>4} {fp:>12} {eq2:>12}");
                    }
                }
                TableFormat::Csv => {
                    println!("n,fp,eq2");
                    for (n, fp, eq2) in rows {
                        println!("{n},{fp},{eq2}");
                    }
                }
                TableFormat::Json => {
                    let items: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|&(n, fp, eq2)| {
                            serde_json::json!({"n": n, "fp": fp, "eq2": eq2})
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&items).expect("serializable"));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Build { spec, forms, beta } => {
            let beta_text = match beta {
                Some(path) => Some(read_file(&path)?),
                None => None,
            };
            let (group, shown) = match (spec, forms) {
                (Some(spec), _) => {
                    let expr = parse_expr(&spec)?;
                    let g = build_expr_with_beta(&expr, beta_text.as_deref(), cli.seed)?;
                    (g, expr.to_string())
                }
                (None, Some(path)) => {
                    let text = read_file(&path)?;
                    let g = build_from_forms_text(&text, beta_text.as_deref(), cli.seed)?;
                    (g, path)
                }
                (None, None) => unreachable!("clap enforces one input"),
            };
            let summary = summarize(&group)?;
            println!("spec:             {shown}");
            println!("order:            {}", summary.order);
            println!("abelian:          {}", summary.abelian);
            println!("center order:     {}", summary.center_order);
            println!("commutator order: {}", summary.commutator_order);
            match summary.torsion_rank {
                Some(r) => println!("torsion rank:     {r}"),
                None => println!("torsion rank:     n/a (order is not a prime power)"),
            }
            println!("special:          {}", summary.special.unwrap_or(false));
            Ok(ExitCode::SUCCESS)
        }
        Command::Chartab {
            spec,
            forms,
            format,
        } => {
            let group = load_group(spec, forms, cli.seed)?;
            let table = CharacterTable::compute(&group)?;
            match format {
                ExportFormat::Csv => print!("{}", table.to_csv()?),
                ExportFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&table.to_json()).expect("serializable")
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rdim {
            spec,
            forms,
            brute_force,
        } => {
            let group = load_group(spec, forms, cli.seed)?;
            let table = CharacterTable::compute(&group)?;
            let result = if brute_force {
                min_faithful_dim_bruteforce(&table)?
            } else {
                min_faithful_dim(&table)?
            };
            let json = serde_json::json!({
                "value": result.value,
                "witness_degrees": result.witness_degrees,
                "central_vectors": result.central_vectors,
                "method": result.method.as_str(),
            });
            println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { p, nmax, format } => {
            let rows = verification_table(p, nmax, cli.seed)?;
            let all_pass = rows.iter().all(|r| r.pass);
            match format {
                ReportFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
                    eprintln!("{MAXIMALITY_NOTE}");
                }
                ReportFormat::Text => {
                    for row in &rows {
                        let status = if row.pass { "PASS" } else { "FAIL" };
                        let err = row
                            .error
                            .as_ref()
                            .map(|e| format!("  error: {e}"))
                            .unwrap_or_default();
                        println!(
                            "p={} n={} witness={} claimed={} computed={} fp={} eq2={} {status}{err}",
                            row.p,
                            row.n,
                            row.witness,
                            row.claimed,
                            row.computed,
                            row.bounds.fp,
                            row.bounds.eq2
                        );
                    }
                    println!("{MAXIMALITY_NOTE}");
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

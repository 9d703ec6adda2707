use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use wmesc::bench::{format_bench, run_bench};
use wmesc::{format_outcome, format_packing, parse_instance, parse_packing, serialize_instance};
use wmesc_core::analysis::{characteristic_root, recurrence_table};
use wmesc_core::generator::{gen_planted, gen_random, GenSpec};
use wmesc_core::oracle::brute_force;
use wmesc_core::reduction::{extract_packing, reduce};
use wmesc_core::{solve, Outcome, SearchStats, SolveOptions};

/// Exact solver for weighted mutually exclusive set cover.
#[derive(Parser)]
#[command(name = "wmesc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file with the branch-and-reduce search
    Solve {
        file: PathBuf,
        /// Disable weight-bound pruning
        #[arg(long)]
        no_prune: bool,
        /// Append search statistics as comment lines
        #[arg(long)]
        stats: bool,
        /// Print one JSON object instead of the text format
        #[arg(long)]
        json: bool,
    },
    /// Solve an instance file by exhaustive enumeration (at most 24 sets)
    Brute {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a seeded random instance to standard output
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
        /// Plant a partition: `blocks,distractors` (must sum to m)
        #[arg(long, value_parser = parse_pair)]
        planted: Option<(usize, usize)>,
    },
    /// Maximum set packing through the exact cover reduction
    Pack { file: PathBuf },
    /// Characteristic roots of the branching recurrences
    Roots,
    /// Leaf counts without pruning against the 1.30^m bound
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        m_list: Vec<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected `blocks,distractors`")?;
    let a = a.trim().parse().map_err(|e| format!("blocks: {e}"))?;
    let b = b.trim().parse().map_err(|e| format!("distractors: {e}"))?;
    Ok((a, b))
}

const EXIT_NO_SOLUTION: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_error = e.use_stderr();
            let _ = e.print();
            return if usage_error { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn outcome_code(outcome: &Outcome) -> ExitCode {
    match outcome {
        Outcome::Cover { .. } => ExitCode::SUCCESS,
        Outcome::NoSolution => ExitCode::from(EXIT_NO_SOLUTION),
    }
}

fn stats_json(stats: &SearchStats) -> serde_json::Value {
    let histogram: serde_json::Map<String, serde_json::Value> =
        stats.histogram().map(|(k, c)| (k.name().to_string(), json!(c))).collect();
    json!({
        "nodes": stats.nodes,
        "leaves": stats.leaves,
        "cover_leaves": stats.cover_leaves,
        "pruned": stats.pruned,
        "max_depth": stats.max_depth,
        "histogram": histogram,
    })
}

fn outcome_json(outcome: &Outcome, stats: Option<&SearchStats>) -> String {
    let stats = stats.map_or(serde_json::Value::Null, stats_json);
    let value = match outcome {
        Outcome::Cover { chosen, weight } => json!({
            "kind": "cover",
            "weight": weight,
            "chosen": chosen,
            "stats": stats,
        }),
        Outcome::NoSolution => json!({
            "kind": "no-solution",
            "weight": null,
            "chosen": null,
            "stats": stats,
        }),
    };
    value.to_string()
}

fn stats_lines(stats: &SearchStats) -> String {
    let histogram: Vec<String> = stats.histogram().map(|(k, c)| format!("{}:{c}", k.name())).collect();
    format!(
        "# nodes={} leaves={} depth={} histogram={}\n# pruned={} cover-leaves={}\n",
        stats.nodes,
        stats.leaves,
        stats.max_depth,
        histogram.join(","),
        stats.pruned,
        stats.cover_leaves
    )
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Solve {
            file,
            no_prune,
            stats,
            json,
        } => {
            let inst = parse_instance(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let (outcome, search) = solve(&inst, SolveOptions { prune: !no_prune });
            if json {
                println!("{}", outcome_json(&outcome, Some(&search)));
            } else {
                print!("{}", format_outcome(&outcome));
                if stats {
                    print!("{}", stats_lines(&search));
                }
            }
            Ok(outcome_code(&outcome))
        }
        Command::Brute { file, json } => {
            let inst = parse_instance(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let outcome = brute_force(&inst).map_err(|e| e.to_string())?;
            if json {
                println!("{}", outcome_json(&outcome, None));
            } else {
                print!("{}", format_outcome(&outcome));
            }
            Ok(outcome_code(&outcome))
        }
        Command::Gen {
            n,
            m,
            density,
            seed,
            planted,
        } => {
            let mut out = format!("# gen n={n} m={m} density={density} seed={seed}");
            let text = match planted {
                None => {
                    out.push('\n');
                    let inst = gen_random(&GenSpec::random(n, m, density, seed)).map_err(|e| e.to_string())?;
                    serialize_instance(&inst)
                }
                Some((blocks, distractors)) => {
                    out.push_str(&format!(" planted={blocks},{distractors}\n"));
                    let spec = GenSpec {
                        m,
                        ..GenSpec::planted(n, blocks, distractors, density, seed)
                    };
                    let (inst, plant) = gen_planted(&spec).map_err(|e| e.to_string())?;
                    let idx: Vec<String> = plant.iter().map(|i| i.to_string()).collect();
                    format!("{}# planted: {}\n", serialize_instance(&inst), idx.join(" "))
                }
            };
            out.push_str(&text);
            print!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Pack { file } => {
            let (pack, _) = parse_packing(&read(&file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            let reduced = reduce(&pack).map_err(|e| e.to_string())?;
            let (outcome, _) = solve(&reduced.wmesc, SolveOptions::default());
            let picked = extract_packing(&reduced, &outcome).map_err(|e| e.to_string())?;
            print!("{}", format_packing(&picked));
            Ok(ExitCode::SUCCESS)
        }
        Command::Roots => {
            println!("# id recurrence root claimed");
            for entry in recurrence_table() {
                let r = characteristic_root(&entry.vector);
                println!("{} {} {:.6} {:.3}", entry.id, entry.vector, r.root, entry.claimed);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { m_list, trials, seed } => {
            let rows = run_bench(&m_list, trials, seed).map_err(|e| e.to_string())?;
            print!("{}", format_bench(&rows));
            Ok(if rows.iter().all(|r| r.pass()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

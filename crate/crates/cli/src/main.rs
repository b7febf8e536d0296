use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use srreal::diagram::{emit_json, parse_json};
use srreal::*;

#[derive(Parser, Debug)]
#[command(
    name = "srreal",
    version,
    about = "Decide and construct realizations of graded Stanley-Reisner rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Extra progress on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide realizability (exit 0/10/20/30/40 by verdict).
    Check { input: Option<PathBuf> },
    /// Emit the colimit diagram as DOT or JSON.
    Construct { input: Option<PathBuf> },
    /// Check the diagram against the Stanley-Reisner ring up to degree D.
    Verify {
        input: Option<PathBuf>,
        /// Truncation degree (even); defaults to six times the largest
        /// generator degree.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Verify this diagram JSON instead of building one.
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Search for a vertex partition (exit 0 if found, 1 if not).
    Partition { input: Option<PathBuf> },
    /// Classify the degree multiset of every intersection of facets.
    Obstruct { input: Option<PathBuf> },
    /// Smallest prime above N in the progression 7 (16), 2 (3), 3 (5), 3 (7),
    /// 2 modulo each extra prime.
    Prime {
        #[arg(long, default_value_t = 0)]
        gt: u64,
        #[arg(long, num_args = 1..)]
        extra: Vec<u64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
    Dot,
}

const INPUT_ERROR: u8 = 2;

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Realizable { .. } => 0,
        Verdict::SufficientOnly { .. } => 10,
        Verdict::NotRealizable { .. } => 20,
        Verdict::Unknown => 30,
        Verdict::HypothesisViolated { .. } => 40,
    }
}

fn read_text(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            Ok(s)
        }
    }
}

fn read_complex(path: Option<&Path>) -> Result<ComplexWithDegrees> {
    let text = read_text(path)?;
    let c = ComplexWithDegrees::from_json(&text).context("invalid complex")?;
    Ok(c.canonical())
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("output serializes");
    s.push('\n');
    s
}

struct Run {
    out: String,
    code: u8,
}

impl Run {
    fn new(out: String, code: u8) -> Self {
        Run { out, code }
    }
}

fn reject_dot(format: Format, what: &str) -> Result<()> {
    if format == Format::Dot {
        bail!("--format dot only applies to construct, not {what}");
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Run> {
    match &cli.command {
        Command::Check { input } => {
            reject_dot(cli.format, "check")?;
            let c = read_complex(input.as_deref())?;
            let v = full_report(&c);
            if cli.verbose {
                eprintln!("verdict: {}", v.name());
            }
            let out = match cli.format {
                Format::Text => v.to_string(),
                _ => json_line(json!(v)),
            };
            Ok(Run::new(out, verdict_code(&v)))
        }
        Command::Construct { input } => {
            let c = read_complex(input.as_deref())?;
            let v = full_report(&c);
            let Some(p) = v.partition() else {
                eprintln!("no diagram: verdict is {}", v.name());
                return Ok(Run::new(String::new(), verdict_code(&v)));
            };
            let d = build_diagram(&c, p)?;
            if cli.verbose {
                eprintln!("{} nodes, {} edges", d.nodes.len(), d.edges.len());
            }
            let out = match cli.format {
                Format::Json => emit_json(&d),
                Format::Dot | Format::Text => emit_dot(&d),
            };
            Ok(Run::new(out, verdict_code(&v)))
        }
        Command::Verify {
            input,
            max_degree,
            diagram,
        } => {
            reject_dot(cli.format, "verify")?;
            let c = read_complex(input.as_deref())?;
            let d_max = match *max_degree {
                Some(d) if d == 0 || d % 2 == 1 => bail!("--max-degree must be even and positive"),
                Some(d) => d,
                None => 6 * c.max_degree(),
            };
            let d = match diagram {
                Some(path) => {
                    let text = read_text(Some(path))?;
                    parse_json(&text).context("invalid diagram")?
                }
                None => {
                    let v = full_report(&c);
                    let Some(p) = v.partition() else {
                        eprintln!("nothing to verify: verdict is {}", v.name());
                        return Ok(Run::new(String::new(), verdict_code(&v)));
                    };
                    build_diagram(&c, p)?
                }
            };
            let r = verify_construction(&c, &d, d_max);
            if cli.verbose {
                eprintln!("verified at D={d_max}");
            }
            if let Some(x) = r.first_discrepancy() {
                eprintln!("first discrepancy: {x}");
            }
            let out = match cli.format {
                Format::Text => r.to_text(),
                _ => r.to_json(),
            };
            Ok(Run::new(out, if r.passed { 0 } else { 1 }))
        }
        Command::Partition { input } => {
            reject_dot(cli.format, "partition")?;
            let c = read_complex(input.as_deref())?;
            let p = find_partition(&c);
            let out = match (cli.format, &p) {
                (Format::Text, Some(p)) => format!("{p}\n"),
                (Format::Text, None) => "no partition\n".to_string(),
                (_, p) => json_line(json!({ "partition": p })),
            };
            Ok(Run::new(out, if p.is_some() { 0 } else { 1 }))
        }
        Command::Obstruct { input } => {
            reject_dot(cli.format, "obstruct")?;
            let c = read_complex(input.as_deref())?;
            let rows: Vec<(Simplex, DegreeMultiset, AdmissibleClass)> = c
                .pmax()
                .elements()
                .iter()
                .map(|s| {
                    let m = c.degree_multiset(s).expect("poset elements are faces");
                    let class = classify(&m);
                    (s.clone(), m, class)
                })
                .collect();
            let out = match cli.format {
                Format::Text => rows
                    .iter()
                    .map(|(s, m, class)| format!("{s} {m}: {class}\n"))
                    .collect(),
                _ => json_line(
                    rows.iter()
                        .map(|(s, m, class)| json!({ "simplex": s, "multiset": m, "class": class }))
                        .collect(),
                ),
            };
            Ok(Run::new(out, 0))
        }
        Command::Prime { gt, extra } => {
            reject_dot(cli.format, "prime")?;
            let p = dirichlet_prime(extra, *gt)?;
            let moduli: Vec<u64> = [16, 3, 5, 7]
                .into_iter()
                .chain(extra.iter().copied())
                .collect();
            let out = match cli.format {
                Format::Text => {
                    let residues: Vec<String> = moduli
                        .iter()
                        .map(|m| format!("{} mod {m}", p % m))
                        .collect();
                    format!("{p}\n{}\n", residues.join(", "))
                }
                _ => {
                    let residues: Vec<serde_json::Value> = moduli
                        .iter()
                        .map(|m| json!({ "modulus": m, "residue": p % m }))
                        .collect();
                    json_line(json!({ "prime": p, "residues": residues }))
                }
            };
            Ok(Run::new(out, 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| {
        match &cli.output {
            Some(path) if !r.out.is_empty() => {
                fs::write(path, &r.out).with_context(|| format!("writing {}", path.display()))?
            }
            Some(_) => {}
            None => io::stdout().write_all(r.out.as_bytes())?,
        }
        Ok(r.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

//! `gqx`: exclusion runs, structure suites, quadrangle checks and group
//! fixtures.
//!
//! Exit status: 0 when every verdict passes, 1 on a falsification or a
//! failed check, 2 on usage or input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use gqx_core::permgroup::{format_group_fixture, Budget, DEFAULT_MEMORY_CAP};
use gqx_core::quadrangle::{gq_check, prime_power_gq_solve, IncidenceStructure};
use gqx_core::ree::{ree_group_with, ReeOptions};
use gqx_core::suzuki::{suzuki_group_with, SuzukiOptions};
use gqx_core::verifier::{run_exclusion, run_structural_suite, to_report_json, Family, RunOptions};

#[derive(Parser, Debug)]
#[command(name = "gqx", version, about = "Suzuki and Ree groups acting on generalized quadrangles")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "GQX_SEED", default_value_t = 1)]
    seed: u64,
    /// Memory cap for class enumeration, in bytes (suffixes K, M, G).
    #[arg(long, global = true, env = "GQX_MEMORY_CAP", value_parser = parse_bytes)]
    memory_cap: Option<u64>,
    /// Worker threads for exclusion runs.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Sz,
    Ree,
    All,
}

impl FamilyArg {
    fn families(self) -> Vec<Family> {
        match self {
            FamilyArg::Sz => vec![Family::Suzuki],
            FamilyArg::Ree => vec![Family::Ree],
            FamilyArg::All => vec![Family::Suzuki, Family::Ree],
        }
    }

    fn single(self) -> Result<Family> {
        match self {
            FamilyArg::Sz => Ok(Family::Suzuki),
            FamilyArg::Ree => Ok(Family::Ree),
            FamilyArg::All => bail!("this command takes a single family"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Arithmetic exclusion over a range of m.
    Exclude {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        m_min: u32,
        #[arg(long)]
        m_max: u32,
    },
    /// Structural lemma checks for one group.
    Structure {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        m: u32,
        /// Also enumerate the second non-real order-3 class of R(q).
        #[arg(long)]
        extended: bool,
    },
    /// Generalized quadrangle tools.
    Gq {
        #[command(subcommand)]
        command: GqCommand,
    },
    /// Print the generators of a group as a permutation fixture.
    DumpGroup {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Subcommand, Debug)]
enum GqCommand {
    /// Check an incidence file for the quadrangle axioms.
    Check {
        #[arg(long)]
        file: PathBuf,
    },
    /// Solve (s+1)(st+1) = p^a, (t+1)(st+1) = p^b.
    Solve {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
}

fn parse_bytes(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let (digits, mult) = match s.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&s[..s.len() - 1], 1u64 << 10),
        Some('M') => (&s[..s.len() - 1], 1 << 20),
        Some('G') => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    digits
        .trim()
        .parse::<u64>()
        .ok()
        .and_then(|n| n.checked_mul(mult))
        .ok_or_else(|| format!("invalid byte count '{s}'"))
}

enum Outcome {
    Pass,
    Fail,
}

fn write_report(path: &Option<PathBuf>, json: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, json).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome> {
    let g = &cli.global;
    let budget = Budget {
        memory_cap: g.memory_cap.unwrap_or(DEFAULT_MEMORY_CAP),
        seed: g.seed,
    };
    match cli.command {
        Command::Exclude { family, m_min, m_max } => {
            let opts = RunOptions {
                seed: g.seed,
                threads: g.threads,
            };
            let report = run_exclusion(&family.families(), m_min, m_max, &opts)?;
            for r in &report.runs {
                println!("{} m={} q={}: {}", r.family, r.m, r.q, r.verdict);
            }
            write_report(&g.report, &to_report_json(&report))?;
            Ok(if report.excluded() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Structure { family, m, extended } => {
            let report = run_structural_suite(family.single()?, m, extended, &budget)?;
            for c in &report.checks {
                println!("{:<48} {}", c.name, c.status.label());
            }
            println!("verdict: {}", report.verdict);
            write_report(&g.report, &to_report_json(&report))?;
            Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Gq { command: GqCommand::Check { file } } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let s = IncidenceStructure::parse(&text)?;
            let c = gq_check(&s);
            write_report(&g.report, &to_report_json(&c))?;
            match (c.order, &c.diagnosis) {
                (Some(o), _) => {
                    println!("{o}{}", if c.thin { " thin" } else { "" });
                    Ok(Outcome::Pass)
                }
                (None, Some(d)) => {
                    println!("not a generalized quadrangle: {d}");
                    Ok(Outcome::Fail)
                }
                (None, None) => Ok(Outcome::Fail),
            }
        }
        Command::Gq { command: GqCommand::Solve { p, a, b } } => {
            if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
                bail!("p = {p} is not prime");
            }
            let sols = prime_power_gq_solve(p, a, b);
            let items: Vec<String> = sols.iter().map(|(s, t)| format!("({s},{t})")).collect();
            println!("{{{}}}", items.join(","));
            Ok(Outcome::Pass)
        }
        Command::DumpGroup { family, m } => {
            let text = match family.single()? {
                Family::Suzuki => {
                    let opts = SuzukiOptions {
                        seed: g.seed,
                        ..Default::default()
                    };
                    let sz = suzuki_group_with(m, &opts)?;
                    format_group_fixture(sz.group.degree(), sz.group.generators())
                }
                Family::Ree => {
                    let opts = ReeOptions {
                        seed: g.seed,
                        ..Default::default()
                    };
                    let ree = ree_group_with(m, &opts)?;
                    format_group_fixture(ree.group.degree(), ree.group.generators())
                }
            };
            print!("{text}");
            Ok(Outcome::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::io::Write;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use wlink_cli::{dispatch, render, verify_all, Command, RunConfig, DEFAULT_VERIFY_BUDGET_S};
use wlink_core::replab::DEFAULT_SEED;

/// Exact checks on the character varieties and torsion of twisted Whitehead links.
#[derive(Parser)]
#[command(name = "wlink", version)]
struct Cli {
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
    /// Include reduced Gröbner bases (mpoly JSON) where a check computes one.
    #[arg(long, global = true)]
    emit_gb: bool,
    /// Leave `elapsed_ms` null so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Top,
}

#[derive(Subcommand)]
enum Top {
    /// Exact ideal-theoretic checks.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Chebyshev families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Matrix-representation oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// L-function of the deformation at points over F_p.
    Lfunction(LfArgs),
    /// Runs the whole acceptance suite.
    VerifyAll {
        #[arg(long, default_value_t = DEFAULT_VERIFY_BUDGET_S)]
        budget_s: u64,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    WhiteheadDivisor,
    Smooth {
        #[arg(long)]
        n: i64,
    },
    Nongeometric {
        #[arg(long)]
        n: i64,
    },
    GeometricMult {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        budget_s: Option<u64>,
    },
    Diagonal,
}

#[derive(Subcommand)]
enum FamilyCmd {
    Cheb {
        #[arg(long)]
        k: i64,
        #[arg(long, default_value = "S")]
        kind: char,
    },
    /// Recursion, special values, Laurent identities and separability.
    Suite {
        #[arg(long, default_value_t = 50)]
        k_max: i64,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    Reps {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        p: u64,
    },
    Peripheral {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    Order3 {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct LfArgs {
    #[command(subcommand)]
    survey: Option<LfSub>,
    #[command(flatten)]
    common: LfCommon,
    /// `a,b,c`; defaults to the first point of the study set.
    #[arg(long, value_parser = parse_point)]
    point: Option<(u64, u64, u64)>,
}

#[derive(Subcommand)]
enum LfSub {
    Survey(LfCommon),
}

#[derive(Args)]
struct LfCommon {
    #[arg(long, required = true)]
    n: Option<i64>,
    #[arg(long, required = true)]
    p: Option<u64>,
    #[arg(long, default_value_t = wlink_core::lseries::DEFAULT_PRECISION)]
    prec: u32,
    #[arg(long, default_value_t = wlink_core::lseries::DEFAULT_DEGREE)]
    deg: u32,
}

fn parse_point(s: &str) -> Result<(u64, u64, u64), String> {
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("{t}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(format!("expected a,b,c, got {s}")),
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), std::io::Error> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r,
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut seed = DEFAULT_SEED;
    let mut budget = None;
    let (command, lf) = match cli.cmd {
        Top::VerifyAll { budget_s } => {
            let v = verify_all(Duration::from_secs(budget_s), !cli.no_timing);
            let code = v.exit_code();
            if let Err(e) = emit(&render(&v, cli.pretty), cli.out.as_deref()) {
                eprintln!("wlink: {e}");
                return ExitCode::from(2);
            }
            return ExitCode::from(code as u8);
        }
        Top::Check(c) => (
            match c {
                CheckCmd::WhiteheadDivisor => Command::WhiteheadDivisor,
                CheckCmd::Smooth { n } => Command::Smooth { n },
                CheckCmd::Nongeometric { n } => Command::Nongeometric { n },
                CheckCmd::GeometricMult { n, budget_s } => {
                    budget = budget_s;
                    Command::GeometricMult { n }
                }
                CheckCmd::Diagonal => Command::Diagonal,
            },
            None,
        ),
        Top::Family(FamilyCmd::Cheb { k, kind }) => (Command::FamilyCheb { k, kind }, None),
        Top::Family(FamilyCmd::Suite { k_max }) => (Command::FamilySuite { k_max }, None),
        Top::Oracle(o) => (
            match o {
                OracleCmd::Reps { n, p } => Command::OracleReps { n, p },
                OracleCmd::Peripheral { samples, seed: s } => {
                    seed = s;
                    Command::OraclePeripheral { samples }
                }
                OracleCmd::Order3 { samples, seed: s } => {
                    seed = s;
                    Command::OracleOrder3 { samples }
                }
            },
            None,
        ),
        Top::Lfunction(a) => match a.survey {
            Some(LfSub::Survey(c)) => (
                Command::LfunctionSurvey {
                    n: c.n.expect("required"),
                    p: c.p.expect("required"),
                },
                Some((c.prec, c.deg)),
            ),
            None => (
                Command::Lfunction {
                    n: a.common.n.expect("required"),
                    p: a.common.p.expect("required"),
                    point: a.point,
                },
                Some((a.common.prec, a.common.deg)),
            ),
        },
    };
    let mut cfg = RunConfig::new(command);
    cfg.seed = seed;
    cfg.budget_s = budget;
    cfg.emit_gb = cli.emit_gb;
    cfg.timing = !cli.no_timing;
    if let Some((prec, deg)) = lf {
        cfg.precision = prec;
        cfg.degree = deg;
    }
    let report = dispatch(&cfg);
    if let Err(e) = emit(&render(&report, cli.pretty), cli.out.as_deref()) {
        eprintln!("wlink: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.status.exit_code() as u8)
}

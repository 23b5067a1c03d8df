mod commands;
mod config;
mod expr;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{AlgebraSpec, Outcome};
use config::{FileConfig, FlagConfig, OutputFormat, SessionConfig};

const SCHEMA: &str = "qdeform/1";

#[derive(Parser)]
#[command(name = "qdeform", version, about = "Two-parameter quantum groups at roots of unity, twists and deformations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Order of the root of unity θ.
    #[arg(long, global = true)]
    ell: Option<u32>,
    /// r = θ^y.
    #[arg(long, global = true)]
    y: Option<u32>,
    /// s = θ^z.
    #[arg(long, global = true)]
    z: Option<u32>,
    /// Work in the restricted quotient.
    #[arg(long, global = true)]
    restricted: bool,
    #[arg(long, global = true)]
    height_bound: Option<u32>,
    #[arg(long, global = true)]
    maxdeg: Option<u32>,
    /// Working order in t.
    #[arg(long, global = true)]
    order: Option<i64>,
    #[arg(long, value_enum, global = true)]
    format: Option<OutputFormat>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// TOML file with defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the quantum group and check its relations and PBW dimensions.
    Build,
    /// Normal form of an expression.
    Nf {
        #[arg(long)]
        expr: String,
    },
    /// Hopf pairing (left | right), left in U^{≤0}, right in U^{≥0}.
    Pair {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Gram matrix of the pairing in degree ζ.
    Gram {
        /// Degree as comma-separated coordinates, e.g. 1,1.
        #[arg(long)]
        zeta: String,
    },
    /// The coprimality condition on (n, ell, y, z).
    Relprime,
    /// The twisting element F.
    Twist,
    /// Build a catalog module algebra and check its axioms.
    Algebra {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(commands::KINDS))]
        kind: String,
        /// Truncation degree for tensor-trunc.
        #[arg(long)]
        p: Option<u32>,
        /// Smash-product scalars, one per simple root.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        beta: Vec<String>,
        /// Replace the action by the ∗-action.
        #[arg(long)]
        star: bool,
    },
    /// Twisted product of an algebra and its checks.
    Deform {
        /// kind[,p=3][,beta=b1:b2][,maxdeg=4][,star]
        #[arg(long)]
        algebra: String,
        /// builtin, identity, fc:<c> or a JSON file written by `twist`.
        #[arg(long, default_value = "builtin")]
        twist: String,
        #[arg(long, value_delimiter = ',', default_value = "assoc,mu0,cocycle")]
        checks: Vec<String>,
    },
    /// Identity suites on the natural module.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "qybe,hexagon,twist,wef,moreids,modhom,fid,xi")]
        suite: Vec<String>,
    },
}

fn session(g: &Global) -> Result<SessionConfig> {
    let file = g.config.as_deref().map(FileConfig::load).transpose()?;
    let flags = FlagConfig {
        n: g.n,
        ell: g.ell,
        y: g.y,
        z: g.z,
        restricted: g.restricted,
        height_bound: g.height_bound,
        maxdeg: g.maxdeg,
        working_order: g.order,
        format: g.format,
        out: g.out.clone(),
    };
    SessionConfig::resolve(&flags, file)
}

fn run(cli: &Cli, cfg: &SessionConfig) -> Result<Outcome> {
    let p = &cfg.params;
    match &cli.command {
        Command::Build => commands::build(cfg),
        Command::Nf { expr } => commands::nf(cfg, expr),
        Command::Pair { left, right } => commands::pair_cmd(cfg, left, right),
        Command::Gram { zeta } => commands::gram(cfg, zeta),
        Command::Relprime => Ok(commands::relprime(p.n, p.ell, p.y, p.z)),
        Command::Twist => commands::twist(cfg),
        Command::Algebra { kind, p, beta, star } => {
            let spec = AlgebraSpec { kind: kind.clone(), p: *p, beta: beta.clone(), star: *star, maxdeg: None };
            commands::algebra(cfg, &spec)
        }
        Command::Deform { algebra, twist, checks } => commands::deform(cfg, &AlgebraSpec::parse(algebra)?, twist, checks),
        Command::Verify { suite } => commands::verify(cfg, suite),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Build => "build",
        Command::Nf { .. } => "nf",
        Command::Pair { .. } => "pair",
        Command::Gram { .. } => "gram",
        Command::Relprime => "relprime",
        Command::Twist => "twist",
        Command::Algebra { .. } => "algebra",
        Command::Deform { .. } => "deform",
        Command::Verify { .. } => "verify",
    }
}

fn emit(cli: &Cli, cfg: &SessionConfig, out: &Outcome) -> Result<()> {
    let body = match cfg.format {
        OutputFormat::Text => format!("{}\n", out.text),
        OutputFormat::Json => {
            let p = &cfg.params;
            let env = json!({
                "schema": SCHEMA,
                "command": command_name(&cli.command),
                "params": {
                    "n": p.n, "ell": p.ell, "y": p.y, "z": p.z,
                    "restricted": p.restricted, "height_bound": p.height_bound,
                    "maxdeg": cfg.maxdeg, "working_order": cfg.working_order,
                },
                "result": out.result,
                "status": if out.ok { "pass" } else { "fail" },
            });
            format!("{}\n", serde_json::to_string_pretty(&env)?)
        }
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

/// Relprime takes raw `(n, ell, y, z)`, so parameter validation must not reject it first.
fn relprime_session(g: &Global) -> Result<SessionConfig> {
    let file = g.config.as_deref().map(FileConfig::load).transpose()?.unwrap_or_default();
    let flags = FlagConfig { format: g.format.or(file.format), out: g.out.clone().or(file.out), ..Default::default() };
    let mut cfg = SessionConfig::resolve(&flags, None)?;
    cfg.params.n = g.n.or(file.n).unwrap_or(2);
    cfg.params.ell = g.ell.or(file.ell).unwrap_or(2);
    cfg.params.y = g.y.or(file.y).unwrap_or(0);
    cfg.params.z = g.z.or(file.z).unwrap_or(1);
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = if matches!(cli.command, Command::Relprime) { relprime_session(&cli.global) } else { session(&cli.global) };
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qdeform: {e:#}");
            return ExitCode::from(2);
        }
    };
    let out = match run(&cli, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qdeform: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &cfg, &out) {
        eprintln!("qdeform: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(if out.ok { 0 } else { 1 })
}

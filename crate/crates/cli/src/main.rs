//! `irrhodge`: irregular Hodge numbers, Jordan types, exponents, flatness and
//! minuscule Betti checks from the command line.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource limit.

mod cache;
mod commands;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use irrhodge::rootdatum::SimpleType;
use irrhodge::Error;

use crate::cache::CharacterCache;
use crate::commands::{Env, Output};

const DEFAULT_MAX_DIM: u64 = 1_000_000;
const DEFAULT_SWEEP_DIM: u64 = 1_000;

#[derive(Parser)]
#[command(
    name = "irrhodge",
    version,
    about = "Principal gradings, Jordan types and flatness checks for d + (N + E t) dt/t"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Largest representation dimension to compute (for `sweep`: the enumeration bound,
    /// default 1000).
    #[arg(long, global = true)]
    max_dim: Option<u64>,

    /// Character cache directory.
    #[arg(long, global = true, env = "IRRHODGE_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Do not read or write the character cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Hodge numbers h^alpha of the connection attached to V_lambda.
    Hodge {
        #[arg(long = "type")]
        ty: SimpleType,
        /// Highest weight in fundamental-weight coordinates, e.g. 0,0,0,0,0,0,1.
        #[arg(long)]
        weight: String,
    },
    /// Jordan block sizes of the principal nilpotent on V_lambda.
    Jordan {
        #[arg(long = "type")]
        ty: SimpleType,
        #[arg(long)]
        weight: String,
    },
    /// Exponents with multiplicity.
    Exponents {
        #[arg(long = "type")]
        ty: SimpleType,
    },
    /// Build N, E, RHO explicitly and check Jordan type, Lie identities and flatness.
    Verify {
        #[arg(long = "type")]
        ty: SimpleType,
        #[arg(long, value_enum, default_value = "adjoint")]
        rep: Rep,
        /// Write N, E and RHO as triplet text files into this directory.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Compare weight-graph Betti numbers of G/P with shifted Hodge numbers.
    Kkp {
        #[arg(long = "type")]
        ty: SimpleType,
        /// Bourbaki node; all minuscule nodes when omitted.
        #[arg(long)]
        node: Option<usize>,
    },
    /// Check every dominant weight up to --max-dim over all types up to --max-rank.
    Sweep {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rep {
    Adjoint,
    Std,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Usage(_) | Error::Unsupported(_) => 2,
        Error::Resource(_) => 3,
        Error::Integrity(_) => 1,
    }
}

fn run(cli: Cli) -> irrhodge::Result<Output> {
    let cache_dir = if cli.no_cache {
        None
    } else {
        cli.cache_dir
            .or_else(|| dirs::cache_dir().map(|d| d.join("irrhodge")))
    };
    let sweeping = matches!(cli.command, Command::Sweep { .. });
    let default_dim = if sweeping {
        DEFAULT_SWEEP_DIM
    } else {
        DEFAULT_MAX_DIM
    };
    let env = Env {
        json: cli.json,
        max_dim: cli.max_dim.unwrap_or(default_dim),
        cache: CharacterCache::new(cache_dir),
    };
    match cli.command {
        Command::Hodge { ty, weight } => commands::hodge(&env, ty, &weight),
        Command::Jordan { ty, weight } => commands::jordan(&env, ty, &weight),
        Command::Exponents { ty } => commands::exponents_cmd(&env, ty),
        Command::Verify { ty, rep, dump_dir } => {
            let rep = match rep {
                Rep::Adjoint => "adjoint",
                Rep::Std => "std",
            };
            commands::verify(&env, ty, rep, dump_dir.as_deref())
        }
        Command::Kkp { ty, node } => commands::kkp(&env, ty, node),
        Command::Sweep { max_rank } => commands::sweep(&env, max_rank),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("irrhodge: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

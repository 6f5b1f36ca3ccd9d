//! `horotree`: reproducible tables and reports for horospherical Radon
//! transforms and zonal spectral analysis on homogeneous trees.

mod commands;
mod fnio;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use horotree::horo::HoroKind;
use horotree::scalar::parse_q;
use horotree::Q;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "horotree", version, about = "Horospherical integral geometry on homogeneous trees")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Branching number of the tree (degree q+1).
    #[arg(long, global = true, default_value_t = 2)]
    pub q: u32,
    /// Ball radius R (support of random functions, inversion ball, table range).
    #[arg(long, global = true, default_value_t = 3)]
    pub radius: u32,
    /// Ray depth D of the boundary partition (default: R+1, at least what the data needs).
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    /// Quadrature nodes N (even, at least 8).
    #[arg(long, global = true, default_value_t = 512)]
    pub grid: usize,
    /// Seed for randomized demos.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Inversion coefficient family (default: 1 for vertices, 2 for edges).
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub choice: Option<u8>,
    /// Weight λ of the flag lift, a rational such as 1/2.
    #[arg(long, global = true, default_value = "1/2", value_parser = rational)]
    pub lambda: Q,
    /// Flag metric parameter ξ in (0, 1/4), a rational such as 1/8.
    #[arg(long = "xi-flag", global = true, default_value = "1/8", value_parser = rational)]
    pub xi_flag: Q,
    /// Cross-check tables against brute-force enumeration before emitting them.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Output file (one document) or directory (several documents); stdout if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format (default: json for function I/O, csv otherwise).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

fn rational(s: &str) -> std::result::Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Vertex,
    Edge,
    Flag,
}

impl From<KindArg> for HoroKind {
    fn from(k: KindArg) -> HoroKind {
        match k {
            KindArg::Vertex => HoroKind::Vertex,
            KindArg::Edge => HoroKind::Edge,
            KindArg::Flag => HoroKind::Flag,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection tables k_V, k_E, kernels Ψ and inversion coefficients.
    Tables,
    /// Radon transform of a function (JSON input) or of a seeded random one.
    Radon {
        #[arg(long, value_enum, default_value = "vertex")]
        kind: KindArg,
        /// Function JSON: {"q":2,"kind":"vertex","values":{"01":"1/2"}}.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Inverts horospherical data (JSON as written by `radon`) on the ball of radius R.
    Invert {
        #[arg(long)]
        input: PathBuf,
    },
    /// Range test on horospherical data, or a demo on a seeded image and the canonical non-image.
    Cavalieri {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Seeded radon → range test → inversion for vertex, edge and flag functions.
    Roundtrip,
    /// Plancherel densities, spherical functions, spectra and residual report.
    Spectral,
    /// Symbols of the back-projection kernels and their spherical inversion.
    Symbol,
    /// Flag projections, lift and inversion, and the flag metric.
    FlagDemo,
    /// Support theorem on all convex sets of diameter at most 2.
    SupportDemo,
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = &cli.config;
    let function_io = matches!(cli.command, Command::Radon { .. } | Command::Invert { .. });
    let format = cfg.format.unwrap_or(if function_io { Format::Json } else { Format::Csv });
    let json = format == Format::Json;
    let report = match &cli.command {
        Command::Tables => commands::tables(cfg)?,
        Command::Radon { kind, input } => commands::radon(cfg, (*kind).into(), input.as_deref(), json)?,
        Command::Invert { input } => commands::invert(cfg, input, json)?,
        Command::Cavalieri { input } => commands::cavalieri(cfg, input.as_deref())?,
        Command::Roundtrip => commands::roundtrip(cfg)?,
        Command::Spectral => commands::spectral(cfg)?,
        Command::Symbol => commands::symbol(cfg)?,
        Command::FlagDemo => commands::flag_demo(cfg)?,
        Command::SupportDemo => commands::support_demo(cfg)?,
    };
    output::emit(&report, format, cfg.out.as_deref())?;
    output::print_checks(&report.checks);
    Ok(report.passes())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

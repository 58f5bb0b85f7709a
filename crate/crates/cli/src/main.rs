//! Experiment runner for the symmetra engine.
//!
//! Every subcommand is deterministic for a fixed seed and emits CSV or JSON;
//! complex numbers are always `[re, im]` pairs in JSON and split re/im
//! columns in CSV. Numerical invariant violations exit with code 1 naming the
//! violated property; usage errors exit with code 2.

mod commands;
mod spec;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "symmetra",
    about = "Finite-group symmetry engine: character tables, irrep projections, phase estimation, model sweeps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub(crate) struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
    /// Output format.
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Character table of a group (e.g. s3, z8, z4xz2).
    Characters {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quantum character transform matrix with its index maps (JSON).
    Qct {
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Project a state onto one irrep and report the post-selected state.
    Project {
        /// Representation: shift:m, sites:n, parity:n, blocks:n:m, ising:n, exchange.
        #[arg(long)]
        rep: String,
        /// Irrep index to post-select.
        #[arg(long)]
        irrep: usize,
        /// Input state: zero, basis:BITS, or random:SEED.
        #[arg(long, default_value = "zero")]
        state: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run the full symmetry-adapted transform and list every irrep branch.
    Tgsa {
        #[arg(long)]
        rep: String,
        #[arg(long, default_value = "zero")]
        state: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Symmetry-adapted phase estimation over a model.
    Sqpe {
        /// Model: h2, ising, or harper.
        #[arg(long)]
        model: String,
        /// Phase-register qubits.
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// JSON integrals file for the h2 model.
        #[arg(long)]
        config: Option<String>,
        /// Input state for the system register.
        #[arg(long, default_value = "default")]
        state: String,
        /// Sites for ising (default 4) or qubits per axis for harper (default 2).
        #[arg(long)]
        size: Option<usize>,
        /// Flux p/q or decimal for harper.
        #[arg(long, default_value = "1/2")]
        b: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Model spectra: ising blocks, harper butterfly, h2 sectors, para ranks.
    Model {
        #[command(subcommand)]
        which: ModelCommand,
    },
    /// Gate-count table for the cyclic-shift schemes and the unary-iteration bound.
    Resources {
        #[arg(long, default_value_t = 10)]
        max_m: u64,
        /// Optional unary-iteration point as N_CONJ/MAX_CLASS.
        #[arg(long)]
        unary: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the acceptance suite and print one pass/fail line per criterion.
    Selftest {
        /// Print every sub-check line, not just the verdicts.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Momentum-parity block spectra of the Ising chain.
    Ising {
        #[arg(long, default_value_t = 8)]
        sites: usize,
        /// Uniform transverse field.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        j: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Harper spectra: single flux blocks, or a butterfly sweep.
    Harper {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value = "1/2")]
        b: String,
        #[arg(long, default_value_t = 1.0)]
        jx: f64,
        #[arg(long, default_value_t = 1.0)]
        jy: f64,
        /// Sweep specification `q<=N`: emit (b, E) pairs over reduced fluxes.
        #[arg(long)]
        sweep: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sector-labeled exact spectrum of the two-electron Hamiltonian.
    H2 {
        /// JSON integrals file; a built-in sample is used when omitted.
        #[arg(long)]
        config: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Three-particle exchange-sector ranks.
    Para {
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Characters { group, output } => commands::characters(&group, &output),
        Command::Qct { group, out } => commands::qct(&group, out.as_deref()),
        Command::Project {
            rep,
            irrep,
            state,
            out,
        } => commands::project(&rep, irrep, &state, out.as_deref()),
        Command::Tgsa { rep, state, out } => commands::tgsa(&rep, &state, out.as_deref()),
        Command::Sqpe {
            model,
            n,
            config,
            state,
            size,
            b,
            output,
        } => commands::sqpe(&model, n, config.as_deref(), &state, size, &b, &output),
        Command::Model { which } => match which {
            ModelCommand::Ising { sites, a, j, output } => {
                commands::model_ising(sites, a, j, &output)
            }
            ModelCommand::Harper {
                m,
                b,
                jx,
                jy,
                sweep,
                output,
            } => commands::model_harper(m, &b, jx, jy, sweep.as_deref(), &output),
            ModelCommand::H2 { config, output } => commands::model_h2(config.as_deref(), &output),
            ModelCommand::Para { d, output } => commands::model_para(d, &output),
        },
        Command::Resources {
            max_m,
            unary,
            output,
        } => commands::resources(max_m, unary.as_deref(), &output),
        Command::Selftest { verbose } => return commands::selftest(verbose),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

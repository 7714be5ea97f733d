use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pq3_cli::{
    cmd_code, cmd_construct, cmd_decode, cmd_derive, cmd_hadamard, cmd_pipeline, CliResult, Kind,
    Outcome,
};

/// Build and certify pseudo quasi-3 designs and the codes they give.
///
/// Exit status: 0 on success, 1 when a verification fails, 2 on bad input.
#[derive(Parser)]
#[command(name = "pq3", version)]
struct Args {
    /// Print a JSON summary on stdout instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or import a Hadamard matrix and write it normalised.
    Hadamard {
        /// sylvester:k | paley:q | kron:A,B | import:FILE | FILE
        #[arg(long)]
        hadamard: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build P_u and its certificate.
    Construct {
        #[arg(long)]
        u: usize,
        /// Hadamard matrix of order u; chosen automatically when omitted.
        #[arg(long)]
        hadamard: Option<String>,
        /// Also count every block triple.
        #[arg(long)]
        full_triples: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Take the derived or residual design of a symmetric design at a block.
    Derive {
        #[arg(long)]
        design: PathBuf,
        #[arg(long, default_value_t = 0)]
        anchor: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
    },
    /// Turn a design into its self-complementary code and certify the bound.
    Code {
        #[arg(long)]
        design: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recover a design from the codewords of a given weight.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        weight: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run construct, derive and code end to end.
    Pipeline {
        #[arg(long)]
        u: usize,
        #[arg(long)]
        hadamard: Option<String>,
        #[arg(long, default_value_t = 0)]
        anchor: usize,
        #[arg(long)]
        full_triples: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(command: Command) -> CliResult<Outcome> {
    match command {
        Command::Hadamard { hadamard, out } => cmd_hadamard(&hadamard, &out),
        Command::Construct { u, hadamard, full_triples, out } => {
            cmd_construct(u, hadamard.as_deref(), full_triples, &out)
        }
        Command::Derive { design, anchor, kind, out } => cmd_derive(&design, anchor, kind, &out),
        Command::Code { design, out } => cmd_code(&design, &out),
        Command::Decode { code, weight, out } => cmd_decode(&code, weight, &out),
        Command::Pipeline { u, hadamard, anchor, full_triples, out } => {
            cmd_pipeline(u, hadamard.as_deref(), anchor, full_triples, &out)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            if args.json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("json value"));
            } else {
                println!("{}", outcome.summary);
                for a in &outcome.manifest.outputs {
                    println!("  {}  {}", a.sha256, a.path);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

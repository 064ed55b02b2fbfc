//! `semspace` — operator entry point.
//!
//! Subcommands: `serve` runs the HTTP service; `sdice` and `paths` inspect
//! an ontology locally; `write`/`read`/`take`/`read-by-id` talk to a
//! running service; `bench` measures operation latency. Every subcommand
//! accepts `--json` for machine-readable output.
//!
//! Exit codes: 0 success, 1 user error (bad flags, unreadable files,
//! client faults reported by the server), 2 internal fault.

mod commands;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

/// A user mistake (exit 1) or an internal fault (exit 2).
pub enum CliError {
    User(String),
    Internal(String),
}

impl CliError {
    fn internal(msg: impl Into<String>) -> Self {
        CliError::Internal(msg.into())
    }
}

#[derive(Parser)]
#[command(name = "semspace", version, about = "Semantic tuple space engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OntologyArgs {
    /// Ontology file with child/superconcept relations.
    #[arg(long)]
    ontology: std::path::PathBuf,
    /// Ingestion format of the ontology file.
    #[arg(long, default_value = "pairs")]
    format: String,
}

#[derive(Args)]
struct ServerArg {
    /// Base URL of a running service, e.g. http://127.0.0.1:7654
    #[arg(long)]
    server: String,
}

#[derive(Subcommand)]
enum Command {
    /// Run the HTTP service.
    Serve {
        /// host:port to listen on; port 0 picks an ephemeral port.
        #[arg(long, default_value = "127.0.0.1:7654")]
        listen: String,
        /// Upper bound on granted leases, milliseconds.
        #[arg(long, default_value_t = semspace_core::space::DEFAULT_MAX_LEASE_MS)]
        max_lease_ms: u64,
        /// Upper bound on request bodies and decoded payloads, bytes.
        #[arg(long, default_value_t = 64 * 1024 * 1024)]
        max_payload_bytes: usize,
        /// Period of the lease reaper, milliseconds.
        #[arg(long, default_value_t = 1000)]
        reaper_interval_ms: u64,
        /// Ontology file(s) to preload; repeatable, zipped with --format
        /// and --model occurrences.
        #[arg(long)]
        ontology: Vec<std::path::PathBuf>,
        /// Format per preloaded ontology (pairs|ntriples).
        #[arg(long)]
        format: Vec<String>,
        /// Model per preloaded ontology (RDFS|WSML).
        #[arg(long)]
        model: Vec<String>,
    },
    /// Similarity degree between two concepts of an ontology file.
    Sdice {
        #[command(flatten)]
        ontology: OntologyArgs,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        json: bool,
    },
    /// Root-to-concept paths of a concept, one per line.
    Paths {
        #[command(flatten)]
        ontology: OntologyArgs,
        #[arg(long)]
        concept: String,
        #[arg(long)]
        json: bool,
    },
    /// Write a payload (from --payload or stdin) to a running service.
    Write {
        #[command(flatten)]
        server: ServerArg,
        #[arg(long, default_value = "RDFS")]
        model: String,
        #[arg(long)]
        concept: String,
        #[arg(long)]
        lease_ms: u64,
        /// Payload file; stdin when omitted.
        #[arg(long)]
        payload: Option<std::path::PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Semantic read against a running service.
    Read {
        #[command(flatten)]
        server: ServerArg,
        #[arg(long, default_value = "RDFS")]
        model: String,
        #[arg(long)]
        concept: String,
        #[arg(long)]
        floor: f64,
        #[arg(long)]
        json: bool,
    },
    /// Take (retrieve and delete) entries of one concept.
    Take {
        #[command(flatten)]
        server: ServerArg,
        #[arg(long, default_value = "RDFS")]
        model: String,
        #[arg(long)]
        concept: String,
        #[arg(long)]
        json: bool,
    },
    /// Read one entry by its identifier.
    ReadById {
        #[command(flatten)]
        server: ServerArg,
        #[arg(long)]
        identifier: String,
        #[arg(long)]
        json: bool,
    },
    /// Measure operation latency on an in-process space.
    Bench {
        #[arg(long, default_value = "write")]
        op: String,
        /// Payload sizes in bytes.
        #[arg(long, value_delimiter = ',', default_value = "1024")]
        sizes: Vec<usize>,
        /// Concurrent worker counts.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        threads: Vec<usize>,
        /// Similarity floors for read cells.
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        floors: Vec<f64>,
        /// Timed operations per cell.
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 10)]
        warmup: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Prepopulated entries for read/take cells.
        #[arg(long, default_value_t = 3430)]
        entries: usize,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Ontology file; a bundled taxonomy when omitted.
        #[arg(long)]
        ontology: Option<std::path::PathBuf>,
        #[arg(long, default_value = "pairs")]
        format: String,
        #[arg(long, default_value = "RDFS")]
        model: String,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help/version are not errors
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::User(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}

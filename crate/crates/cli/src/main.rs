//! `tapphrase` command-line front end.
//!
//! Every command prints one JSON document on stdout and diagnostics on
//! stderr. Exit codes: 0 accept/success, 1 reject, 2 error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tapphrase::{MatcherKind, MatcherParams};

#[derive(Parser, Debug)]
#[command(
    name = "tapphrase",
    version,
    about = "Tap-phrase enrollment, verification and simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Matcher parameter overrides shared by all matching commands.
#[derive(Args, Debug, Clone, Default)]
struct ParamOverrides {
    /// Signal resolution (bins, >= 8)
    #[arg(long)]
    bins: Option<usize>,
    /// Maximum accepted Hamming distance, in (0, 1)
    #[arg(long)]
    tau: Option<f64>,
    /// Allowed relative span deviation, in (0, 1)
    #[arg(long = "span-tolerance")]
    span_tolerance: Option<f64>,
    /// Debounce floor in milliseconds
    #[arg(long = "min-segment-ms")]
    min_segment_ms: Option<f64>,
}

impl ParamOverrides {
    fn apply(&self, mut params: MatcherParams) -> tapphrase::Result<MatcherParams> {
        if let Some(v) = self.bins {
            params.bins = v;
        }
        if let Some(v) = self.tau {
            params.tau = v;
        }
        if let Some(v) = self.span_tolerance {
            params.span_tolerance = v;
        }
        if let Some(v) = self.min_segment_ms {
            params.min_segment_ms = v;
        }
        params.validate()?;
        Ok(params)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a template from an event trace
    Enroll {
        /// Event trace (JSON Lines of {"t": ms, "k": "d"|"u"})
        events: PathBuf,
        /// Where to write the template
        #[arg(short, long)]
        out: PathBuf,
        #[command(flatten)]
        params: ParamOverrides,
    },
    /// Check one attempt against a template
    Verify {
        template: PathBuf,
        events: PathBuf,
        #[arg(long, default_value = "hamming", value_parser = parse_matcher)]
        matcher: MatcherKind,
        #[command(flatten)]
        params: ParamOverrides,
    },
    /// Replay a trace through the streaming authenticator
    Stream {
        template: PathBuf,
        events: PathBuf,
        #[command(flatten)]
        params: ParamOverrides,
    },
    /// Estimate FRR under jitter or FAR against random phrases
    Simulate {
        template: PathBuf,
        /// Estimate the false reject rate at this jitter sigma
        #[arg(long, conflicts_with = "far", required_unless_present = "far")]
        frr: Option<f64>,
        /// Estimate the false accept rate against the random-guess attacker
        #[arg(long)]
        far: bool,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        params: ParamOverrides,
    },
    /// Summary statistics and a one-sample t test on completion times (seconds)
    Stats {
        /// CSV or whitespace-separated seconds; a non-numeric header line is skipped
        csv: Option<PathBuf>,
        /// Reference mean to test against
        #[arg(long)]
        mu0: f64,
        /// Use summary statistics instead of raw samples
        #[arg(long, requires_all = ["sd", "n"], conflicts_with = "csv")]
        mean: Option<f64>,
        #[arg(long, requires = "mean")]
        sd: Option<f64>,
        #[arg(long, requires = "mean")]
        n: Option<usize>,
    },
    /// Run the local HTTP API
    Serve {
        #[arg(long, default_value_t = tapphrase_service::DEFAULT_PORT)]
        port: u16,
        /// Interface to bind
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Persist templates in this directory
        #[arg(long = "data-dir", env = "TAPPHRASE_DATA_DIR")]
        data_dir: Option<PathBuf>,
    },
}

fn parse_matcher(s: &str) -> Result<MatcherKind, String> {
    s.parse().map_err(|e: tapphrase::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": err.name, "detail": err.detail })
            );
            2
        }
    };
    ExitCode::from(code)
}

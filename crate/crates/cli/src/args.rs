use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use zkaction::{SchemeId, DEFAULT_ROUNDS};

#[derive(Parser, Debug)]
#[command(name = "zkaction", version, about = "Zero-knowledge identification over graph and group actions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a key pair and write PREFIX.pub and PREFIX.key
    Keygen(KeygenArgs),
    /// Prove knowledge of a key to a listening verifier
    Prove(ProveArgs),
    /// Listen for provers and verify them against a public key
    Verify(VerifyArgs),
    /// Run prover and verifier against each other in-process
    Session(SessionArgs),
    /// Measure the success rate of a witness-less forger
    Attack(AttackArgs),
    /// Print one simulated round that verifies without the secret
    Simulate(SimulateArgs),
}

#[derive(Args, Debug)]
pub struct KeygenArgs {
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: SchemeId,
    /// Vertex count (graph schemes). Defaults: 16, or 8 for subgraph-iso
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of colors (coloring)
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Host graph size (subgraph-iso), default 2n
    #[arg(long)]
    pub host: Option<usize>,
    /// Prime modulus (modexp)
    #[arg(long, default_value = "1009")]
    pub p: String,
    /// Edge probability for random graphs (graph-iso)
    #[arg(long, default_value_t = 0.5)]
    pub edge_prob: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output prefix
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RoundArgs {
    #[arg(long, default_value_t = DEFAULT_ROUNDS as u32, value_parser = clap::value_parser!(u32).range(1..))]
    pub rounds: u32,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ProveArgs {
    #[arg(long)]
    pub key: PathBuf,
    /// Verifier address, HOST:PORT
    #[arg(long)]
    pub verifier: String,
    #[command(flatten)]
    pub run: RoundArgs,
    /// Per-message timeout in milliseconds
    #[arg(long, default_value_t = 5000)]
    pub timeout_ms: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    /// PORT (binds 127.0.0.1) or HOST:PORT; port 0 picks a free port
    #[arg(long)]
    pub listen: String,
    #[command(flatten)]
    pub run: RoundArgs,
    /// Handle a single connection and exit with its verdict
    #[arg(long)]
    pub once: bool,
    /// Per-message timeout in milliseconds
    #[arg(long, default_value_t = 5000)]
    pub timeout_ms: u64,
}

#[derive(Args, Debug)]
pub struct SessionArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[command(flatten)]
    pub run: RoundArgs,
}

#[derive(Args, Debug)]
pub struct AttackArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    #[command(flatten)]
    pub run: RoundArgs,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Print the report as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub challenge: u8,
    #[arg(long)]
    pub seed: Option<u64>,
}

fn parse_scheme(s: &str) -> Result<SchemeId, String> {
    s.parse()
}

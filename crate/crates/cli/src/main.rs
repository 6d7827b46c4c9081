//! `ldpc-floor` — error-floor exploration for binary LDPC codes.
//!
//! Subcommands wire the library end to end: single-frame decoding, Monte-
//! Carlo FER curves, pseudo-codeword search, instanton amoeba refinement,
//! spectrum aggregation, the dendro code transform, and the exact MAP
//! oracle. Exit codes: 0 success, 1 usage error, 2 compute anomaly.

mod commands;
mod config;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use config::CliError;

#[derive(Parser)]
#[command(
    name = "ldpc-floor",
    version = output::VERSION,
    about = "Decoding-error-floor exploration for binary LDPC codes over AWGN"
)]
struct Cli {
    /// Optional key=value config file; explicit flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode noise frames from a CSV file with one decoder.
    Decode(DecodeArgs),
    /// Monte-Carlo frame-error-rate curve over a list of s² values.
    Fer(FerArgs),
    /// Pseudo-codeword search: LP decoding alternated with weighted
    /// medians, aggregated into a spectrum.
    Pcs(PcsArgs),
    /// Instanton search by downhill simplex on the decoder error surface.
    Amoeba(AmoebaArgs),
    /// Aggregate stored traces/records into an effective-distance spectrum.
    Spectrum(SpectrumArgs),
    /// Apply the dendro transform to a code and emit the result as JSON.
    Dendro(DendroArgs),
    /// Exact MAP decoding by codebook enumeration (code dimension ≤ 24).
    Oracle(OracleArgs),
}

#[derive(Args)]
struct CodeArgs {
    /// Parity-check code in alist format; bare names are resolved against
    /// $LDPC_FLOOR_FIXTURES.
    #[arg(long, value_name = "FILE")]
    code: Option<String>,
    /// Apply the dendro transform before decoding: checks of degree > 3
    /// are split into chains of degree-3 checks over punctured auxiliary
    /// bits. Noise rows then cover only the original bits.
    #[arg(long)]
    dendro: bool,
}

#[derive(Args)]
struct DecoderArgs {
    /// Decoder: bp[:ITERS] | lp | oracle.
    #[arg(long, value_name = "SPEC")]
    decoder: Option<String>,
    /// BP iteration budget (with --decoder bp).
    #[arg(long, value_name = "K")]
    iters: Option<usize>,
    /// LP: solve with cut generation (the default).
    #[arg(long, conflicts_with = "full")]
    cuts: bool,
    /// LP: enumerate all odd-subset inequalities up front.
    #[arg(long)]
    full: bool,
}

#[derive(Args)]
struct DecodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Noise CSV: one frame per row, one float per transmitted bit.
    #[arg(long, value_name = "FILE")]
    noise: Option<PathBuf>,
    /// Signal-to-noise parameter s².
    #[arg(long, value_name = "V")]
    s2: Option<f64>,
    /// Also write per-bit BP soft outputs as CSV.
    #[arg(long, value_name = "FILE")]
    dump_soft: Option<PathBuf>,
    /// Output JSON path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FerArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Comma-separated list of s² values.
    #[arg(long, value_name = "A,B,C", value_delimiter = ',')]
    s2_list: Option<Vec<f64>>,
    /// Frame budget per s² point.
    #[arg(long, value_name = "N")]
    frames: Option<u64>,
    /// Stop a point early after this many block errors (0 = never).
    #[arg(long, value_name = "E")]
    min_errors: Option<u64>,
    /// Master seed.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Worker threads (1 is the determinism reference).
    #[arg(long, value_name = "W")]
    workers: Option<usize>,
    /// Let BP exit early on a zero syndrome (throughput only).
    #[arg(long)]
    early_stop: bool,
    /// Output CSV path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PcsArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Independent search restarts.
    #[arg(long, value_name = "T")]
    trials: Option<u64>,
    /// Signal-to-noise parameter s².
    #[arg(long, value_name = "V")]
    s2: Option<f64>,
    /// Master seed.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// LP: solve with cut generation (the default).
    #[arg(long, conflicts_with = "full")]
    cuts: bool,
    /// LP: enumerate all odd-subset inequalities up front.
    #[arg(long)]
    full: bool,
    /// Worker threads (1 is the determinism reference).
    #[arg(long, value_name = "W")]
    workers: Option<usize>,
    /// Also write one full trace JSON per trial into this directory.
    #[arg(long, value_name = "DIR")]
    dump_traces: Option<PathBuf>,
    /// Output JSON path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AmoebaArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[command(flatten)]
    decoder: DecoderArgs,
    /// Search variant: soft (penalized objective) or hard (surface rays).
    #[arg(long, value_name = "soft|hard")]
    variant: Option<String>,
    /// Independent search restarts.
    #[arg(long, value_name = "T")]
    trials: Option<u64>,
    /// Signal-to-noise parameter s².
    #[arg(long, value_name = "V")]
    s2: Option<f64>,
    /// Master seed.
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Refine the instantons stored in a pcs output file instead of
    /// starting from random noise.
    #[arg(long, value_name = "FILE")]
    seed_from: Option<PathBuf>,
    /// Decoder-call budget per restart.
    #[arg(long, value_name = "N")]
    max_evals: Option<usize>,
    /// Re-centered simplex rounds per restart.
    #[arg(long, value_name = "R")]
    rounds: Option<usize>,
    /// Worker threads (1 is the determinism reference).
    #[arg(long, value_name = "W")]
    workers: Option<usize>,
    /// Output JSON path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Directory of JSON traces/records (pcs traces, amoeba records, or
    /// whole pcs/amoeba output files).
    #[arg(long = "in", value_name = "DIR")]
    input: Option<PathBuf>,
    /// Also print exponential-accuracy FER estimates at these s² values.
    #[arg(long, value_name = "A,B,C", value_delimiter = ',')]
    estimate_s2: Option<Vec<f64>>,
    /// Output CSV path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DendroArgs {
    /// Parity-check code in alist format; bare names are resolved against
    /// $LDPC_FLOOR_FIXTURES.
    #[arg(long, value_name = "FILE")]
    code: Option<String>,
    /// Output JSON path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Noise CSV: one frame per row, one float per transmitted bit.
    #[arg(long, value_name = "FILE")]
    noise: Option<PathBuf>,
    /// Signal-to-noise parameter s².
    #[arg(long, value_name = "V")]
    s2: Option<f64>,
    /// Also compute exact per-bit posterior marginals.
    #[arg(long)]
    marginals: bool,
    /// Output JSON path (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version render on stdout and exit 0; real parse
            // errors are usage errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let file_config = match config::FileConfig::load(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => return report(e),
    };
    let result = match cli.command {
        Command::Decode(args) => commands::decode(&args, &file_config),
        Command::Fer(args) => commands::fer(&args, &file_config),
        Command::Pcs(args) => commands::pcs(&args, &file_config),
        Command::Amoeba(args) => commands::amoeba(&args, &file_config),
        Command::Spectrum(args) => commands::spectrum(&args, &file_config),
        Command::Dendro(args) => commands::dendro(&args, &file_config),
        Command::Oracle(args) => commands::oracle(&args, &file_config),
    };
    match result {
        Ok(anomalies) if anomalies > 0 => {
            eprintln!("ldpc-floor: {anomalies} anomalous trial(s) logged; outputs written");
            2
        }
        Ok(_) => 0,
        Err(e) => report(e),
    }
}

fn report(e: CliError) -> i32 {
    eprintln!("ldpc-floor: error: {e}");
    match e {
        CliError::Usage(_) => 1,
        CliError::Compute(_) => 2,
    }
}

//! `denoise`: noise injection, filtering, evaluation and density sweeps on
//! binary PGM images.
//!
//! Exit codes: 0 success, 2 I/O or format errors, 3 invalid parameters.
//! Standard output carries CSV only; diagnostics go to standard error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "denoise", version, about = "Grayscale denoising toolkit and benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Corrupt an image with salt & pepper, Gaussian or speckle noise.
    Noise(NoiseArgs),
    /// Apply one restoration filter.
    Filter(FilterArgs),
    /// Print "mse,psnr_db" for a reference/candidate pair.
    Eval(EvalArgs),
    /// Run the noise x density x filter sweep and write CSV/JSON results.
    Bench(BenchArgs),
    /// Write the synthetic planet-and-ring test image.
    GenTestImage(GenArgs),
}

#[derive(Debug, Args)]
struct NoiseArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// spn, rvin or spkn
    #[arg(long)]
    kind: String,
    /// Corruption probability (spn) or normalized variance (rvin, spkn).
    #[arg(long)]
    density: String,
    /// Decimal or 0x-prefixed hex; random (and reported) when omitted.
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Debug, Args)]
struct FilterArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// kind[:key=value,...], e.g. "smf:window=3", "gf:size=3,sigma=0.5", "amf:smax=7"
    #[arg(long)]
    spec: String,
}

#[derive(Debug, Args)]
struct EvalArgs {
    reference: PathBuf,
    candidate: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Input PGM; mutually exclusive with --gen-test-image.
    #[arg(short, long, conflicts_with = "gen_test_image")]
    input: Option<PathBuf>,
    /// Use the synthetic test image, optionally sized WxH.
    #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "256x256")]
    gen_test_image: Option<String>,
    /// Comma list of noise kinds.
    #[arg(long, default_value = "spn,rvin,spkn")]
    kind: String,
    /// Comma list of strictly increasing densities.
    #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6")]
    densities: String,
    /// Comma list of filter specs.
    #[arg(long, default_value = "mf,awf,gf,smf,amf")]
    filters: String,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long, default_value = "1")]
    trials: String,
    /// original or noisy
    #[arg(long, default_value = "original")]
    mse_reference: String,
    #[arg(long)]
    out_dir: PathBuf,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    workers: Option<String>,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(short, long)]
    output: PathBuf,
    /// WxH
    #[arg(long, default_value = "256x256")]
    size: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Noise(a) => commands::noise(a),
        Command::Filter(a) => commands::filter(a),
        Command::Eval(a) => commands::eval(a),
        Command::Bench(a) => commands::bench(a),
        Command::GenTestImage(a) => commands::gen_test_image(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("denoise: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}

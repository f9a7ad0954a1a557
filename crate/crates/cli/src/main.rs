use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qdel_cli::commands::{self, EvaluateArgs};
use qdel_cli::{exit, CliError};

/// No-reference fusion quality scoring, reference fusion methods and metric
/// ranking experiments.
#[derive(Parser)]
#[command(name = "qdel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse two registered images.
    Fuse {
        /// avg, max, pca or lp
        #[arg(long)]
        method: String,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Score a fused image against its sources. The last image is the fused one.
    Evaluate {
        /// qdel, std, entropy, ag, ei, mi or ssim
        #[arg(long)]
        metric: String,
        #[arg(num_args = 3.., required = true, value_name = "IMAGES")]
        images: Vec<PathBuf>,
        /// TOML file; only `smoothing.sigma` is used here.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the fused image's saliency map, scaled to its maximum.
        #[arg(long, value_name = "PATH")]
        dump_saliency: Option<PathBuf>,
        /// Write the per-pixel well-fused probability times 255.
        #[arg(long, value_name = "PATH")]
        dump_probability: Option<PathBuf>,
    },
    /// Run the experiments in a config file and write CSV reports.
    Rank {
        config: PathBuf,
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Generate a seeded synthetic source pair as `<prefix>_a` and `<prefix>_b`.
    Gen {
        /// complementary-edges, conflicting-regions or noise-pair
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 256)]
        size: usize,
        #[arg(short = 'o', long = "output", value_name = "PREFIX")]
        prefix: PathBuf,
        #[arg(long, default_value = "png", value_parser = ["png", "pgm"])]
        format: String,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fuse { method, a, b, output } => commands::fuse(&method, &a, &b, &output),
        Command::Evaluate {
            metric,
            images,
            config,
            dump_saliency,
            dump_probability,
        } => {
            let (fused, sources) = images.split_last().expect("clap enforces at least three images");
            let line = commands::evaluate(&EvaluateArgs {
                metric: &metric,
                sources,
                fused,
                config: config.as_deref(),
                dump_saliency: dump_saliency.as_deref(),
                dump_probability: dump_probability.as_deref(),
            })?;
            println!("{line}");
            Ok(())
        }
        Command::Rank { config, outdir } => commands::rank(&config, &outdir),
        Command::Gen {
            kind,
            seed,
            size,
            prefix,
            format,
        } => commands::gen(&kind, seed, size, &prefix, &format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::from(exit::OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use clap::{Args, Parser, Subcommand};
use near_align::edit::Mode;
use near_align::exact::StepMode;
use near_align_cli::{
    generate, render_alignment, render_stats, run_approx, run_exact, run_oracle, ApproxKind,
    GenKind, InputSpec,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Find the longest same-index substring pair of two synced streams within
/// an edit-distance budget.
#[derive(Parser)]
#[command(name = "near-align", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Edit-distance budget.
    #[arg(long)]
    d: usize,
    /// First stream (raw bytes).
    #[arg(long, required_unless_present = "paired", conflicts_with = "paired")]
    s: Option<PathBuf>,
    /// Second stream (raw bytes), same length as --s.
    #[arg(long, required_unless_present = "paired", conflicts_with = "paired")]
    t: Option<PathBuf>,
    /// Interleaved input: each record is two bytes, S then T.
    #[arg(long)]
    paired: Option<PathBuf>,
    /// Emit run counters as JSON on stderr.
    #[arg(long)]
    stats: bool,
    /// Size of the worker pool for checkpoint updates.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl InputArgs {
    fn spec(&self) -> InputSpec {
        match (&self.paired, &self.s, &self.t) {
            (Some(p), _, _) => InputSpec::Paired(p.clone()),
            (None, Some(s), Some(t)) => InputSpec::Files {
                s: s.clone(),
                t: t.clone(),
            },
            _ => unreachable!("clap enforces the pairing"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// One-pass exact engine: longest window plus its edit script.
    Exact {
        #[command(flatten)]
        input: InputArgs,
        /// Engine path: `cached` (default) or `recompute-always`.
        #[arg(long, default_value = "cached")]
        mode: String,
    },
    /// One-pass (1+epsilon)-multiplicative approximation.
    ApproxMult {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        epsilon: f64,
    },
    /// One-pass additive approximation with checkpoints every E positions.
    ApproxAdd {
        #[command(flatten)]
        input: InputArgs,
        /// Additive slack E.
        #[arg(long)]
        error: u64,
    },
    /// Exhaustive quadratic reference (inputs capped at 10000 bytes).
    Oracle {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Write a generated instance pair to <out>.s / <out>.t.
    Gen {
        /// One of: ham-pair, s-pair, t-pair.
        #[arg(long)]
        kind: String,
        /// Bit length of the underlying pair.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Defaults to $NEAR_ALIGN_SEED, then to fresh entropy.
        #[arg(long)]
        seed: Option<u64>,
        /// Output path prefix.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("near-align: {err}");
            ExitCode::from(2)
        }
    }
}

fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> anyhow::Result<T> {
    if threads <= 1 {
        return Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()?
            .install(f));
    }
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?
        .install(f))
}

fn dispatch(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Exact { input, mode } => {
            let step_mode = match mode.as_str() {
                "cached" => StepMode::Cached,
                "recompute-always" => StepMode::RecomputeAlways,
                other => anyhow::bail!("unknown --mode {other:?} (cached, recompute-always)"),
            };
            let spec = input.spec();
            let (result, stats) =
                with_pool(input.threads, || run_exact(&spec, input.d, step_mode))??;
            println!("{}", render_alignment(Mode::Exact, &result));
            if input.stats {
                eprintln!("{}", render_stats(&stats));
            }
        }
        Command::ApproxMult { input, epsilon } => {
            let spec = input.spec();
            let kind = ApproxKind::Multiplicative(epsilon);
            let (result, stats) = with_pool(input.threads, || run_approx(&spec, input.d, &kind))??;
            println!("{}", render_alignment(Mode::Multiplicative, &result));
            if input.stats {
                eprintln!("{}", render_stats(&stats));
            }
        }
        Command::ApproxAdd { input, error } => {
            let spec = input.spec();
            let kind = ApproxKind::Additive(error);
            let (result, stats) = with_pool(input.threads, || run_approx(&spec, input.d, &kind))??;
            println!("{}", render_alignment(Mode::Additive, &result));
            if input.stats {
                eprintln!("{}", render_stats(&stats));
            }
        }
        Command::Oracle { input } => {
            let spec = input.spec();
            let (result, stats) = run_oracle(&spec, input.d)?;
            println!("{}", render_alignment(Mode::Oracle, &result));
            if input.stats {
                eprintln!("{}", render_stats(&stats));
            }
        }
        Command::Gen {
            kind,
            n,
            d,
            seed,
            out,
        } => {
            let kind =
                GenKind::parse(&kind).ok_or_else(|| anyhow::anyhow!("unknown --kind {kind:?}"))?;
            let seed = match seed {
                Some(s) => s,
                None => match std::env::var("NEAR_ALIGN_SEED") {
                    Ok(v) => v
                        .parse()
                        .map_err(|_| anyhow::anyhow!("NEAR_ALIGN_SEED must be an integer"))?,
                    Err(_) => rand::random(),
                },
            };
            let manifest = generate(kind, n, d, seed, &out)?;
            println!("{}", serde_json::to_string(&manifest)?);
        }
    }
    Ok(())
}

//! Thin command-line front end over the library drivers in
//! [`semoverlap::cli`].
//!
//! Exit codes: 0 on success, 1 for usage and configuration problems, 2 for
//! data problems (unreadable or malformed inputs, per-record failures), 3
//! for internal invariant violations.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semoverlap::cli::{
    cmd_analyze, cmd_label, cmd_rerank, cmd_reward, cmd_score, resolve_config, FlagOverrides,
};
use semoverlap::Error;

#[derive(Parser)]
#[command(
    name = "semoverlap",
    version,
    about = "Semantic-overlap tools: extraction labels, similarity rewards, \
             trigram-blocked reranking, and summary evaluation"
)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Embedding table to load.
    #[arg(long, global = true, value_name = "PATH")]
    embeddings: Option<PathBuf>,

    /// Embedding file layout.
    #[arg(long, global = true, value_name = "FORMAT", value_parser = ["text", "binary"])]
    embeddings_format: Option<String>,

    /// Keep at most this many embedding entries.
    #[arg(long, global = true, value_name = "N")]
    limit: Option<usize>,

    /// Scale embedding rows to unit length after loading.
    #[arg(long, global = true)]
    normalize: bool,

    /// Stopword list file, one token per line.
    #[arg(long, global = true, value_name = "PATH")]
    stopwords: Option<PathBuf>,

    /// Disable stopword filtering entirely.
    #[arg(long, global = true, conflicts_with = "stopwords")]
    no_stopwords: bool,

    /// Similarity transform numerator shift.
    #[arg(long, global = true, value_name = "F")]
    a: Option<f64>,

    /// Similarity transform distance scale.
    #[arg(long, global = true, value_name = "F")]
    b: Option<f64>,

    /// Exemplary sentences to extract per summary sentence.
    #[arg(long, global = true, value_name = "N")]
    n: Option<usize>,

    /// Closest document sentences per summary sentence in the profile.
    #[arg(long, global = true, value_name = "N")]
    alpha: Option<usize>,

    /// Worker threads for per-pair work.
    #[arg(long, global = true, value_name = "N")]
    workers: Option<usize>,

    /// Disable lower-bound pruning during extraction.
    #[arg(long, global = true)]
    no_prune: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Label pairs with exemplary extraction indices and write paraphraser
    /// training examples.
    Label {
        /// Document-summary pairs, one JSON object per line.
        #[arg(long, value_name = "PATH")]
        pairs: PathBuf,
        /// Where the label records go.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Where the paraphraser examples go.
        #[arg(long, value_name = "PATH")]
        examples: PathBuf,
    },
    /// Score gold/generated sentence pairs streamed over stdin.
    Reward,
    /// Evaluate candidate summaries against references.
    Score {
        /// Candidate summaries, one JSON object per line.
        #[arg(long, value_name = "PATH")]
        candidates: PathBuf,
        /// Reference summaries, one JSON object per line.
        #[arg(long, value_name = "PATH")]
        references: PathBuf,
        /// Report destination; stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Optional per-pair CSV destination.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Profile closest-sentence distances; optionally probe attribution.
    Analyze {
        /// Document-summary pairs, one JSON object per line.
        #[arg(long, value_name = "PATH")]
        pairs: PathBuf,
        /// Profile CSV destination; stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Attribution probes, one JSON object per line.
        #[arg(long, value_name = "PATH", requires = "attribution_out")]
        attribution: Option<PathBuf>,
        /// Attribution results destination.
        #[arg(long, value_name = "PATH")]
        attribution_out: Option<PathBuf>,
    },
    /// Pick beam candidates per slot under trigram blocking.
    Rerank {
        /// Beam slots, one JSON object per line.
        #[arg(long, value_name = "PATH")]
        slots: PathBuf,
        /// Results destination; stdout when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Config(_) => 1,
        Error::Io { .. }
        | Error::Parse { .. }
        | Error::TruncatedPayload { .. }
        | Error::EmptyVocabulary { .. }
        | Error::Misaligned(_)
        | Error::NoPairs(_)
        | Error::InsufficientDocument { .. }
        | Error::EmptySlot { .. }
        | Error::EmptyDistribution { .. } => 2,
        Error::ShapeMismatch { .. } | Error::InvalidParameter(_) => 3,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    let flags = FlagOverrides {
        embeddings: cli.common.embeddings,
        embeddings_format: cli.common.embeddings_format,
        limit: cli.common.limit,
        normalize: cli.common.normalize,
        stopwords: cli.common.stopwords,
        no_stopwords: cli.common.no_stopwords,
        a: cli.common.a,
        b: cli.common.b,
        n: cli.common.n,
        alpha: cli.common.alpha,
        workers: cli.common.workers,
        no_prune: cli.common.no_prune,
    };
    let config = resolve_config(&flags)?;
    match cli.command {
        Command::Label {
            pairs,
            out,
            examples,
        } => {
            let stats = cmd_label(&config, &pairs, &out, &examples)?;
            Ok(if stats.errors > 0 { 2 } else { 0 })
        }
        Command::Reward => {
            let stdin = std::io::stdin().lock();
            let stdout = std::io::stdout().lock();
            cmd_reward(&config, stdin, stdout)?;
            Ok(0)
        }
        Command::Score {
            candidates,
            references,
            out,
            csv,
        } => {
            cmd_score(
                &config,
                &candidates,
                &references,
                out.as_deref(),
                csv.as_deref(),
            )?;
            Ok(0)
        }
        Command::Analyze {
            pairs,
            out,
            attribution,
            attribution_out,
        } => {
            cmd_analyze(
                &config,
                &pairs,
                out.as_deref(),
                attribution.as_deref(),
                attribution_out.as_deref(),
            )?;
            Ok(0)
        }
        Command::Rerank { slots, out } => {
            let stats = cmd_rerank(&config, &slots, out.as_deref())?;
            Ok(if stats.errors > 0 { 2 } else { 0 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                let _ = e.print();
                return ExitCode::from(1);
            }
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

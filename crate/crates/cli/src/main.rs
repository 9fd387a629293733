use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use techkb_cli::{PipelineConfig, DEFAULT_FOLDS, DEFAULT_FRACTION, DEFAULT_SEED, DEFAULT_TOP_K};
use techkb_core::classify::{SvmParams, DEFAULT_EXPANSION};
use techkb_core::dictionary::DEFAULT_THRESHOLD;
use techkb_core::eval::DEFAULT_CONFIDENCE;

/// Build, evaluate and use a knowledge base of technical concepts.
#[derive(Parser)]
#[command(name = "techkb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Parse wiki pages, glossaries and book indexes.
    Ingest,
    /// Build the entity dictionary and link synonyms.
    BuildDict,
    /// Extract triples into the knowledge base.
    Extract,
    /// Summarize the knowledge base.
    Stats,
    /// Draw a stratified sample of triples for judging.
    Sample,
    /// Score a judged sample sheet.
    Score,
    /// Run the classification benchmark.
    Classify,
    /// Run every stage except scoring.
    All,
}

#[derive(Args)]
struct Opts {
    /// Directory of wiki pages (first line of each file is the title).
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// Glossary file (JSON lines); repeatable.
    #[arg(long, global = true)]
    glossary: Vec<PathBuf>,
    /// Book index file; repeatable.
    #[arg(long, global = true)]
    index: Vec<PathBuf>,
    /// Labeled posts (JSON lines) for classification.
    #[arg(long, global = true)]
    posts: Option<PathBuf>,
    /// Relation spec file extending or overriding the shipped set.
    #[arg(long, global = true)]
    relations: Option<PathBuf>,
    /// Normalized edit distance at or below which names merge.
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD)]
    threshold: f64,
    /// Output directory for all artifacts.
    #[arg(long, global = true, default_value = "techkb-out")]
    out: PathBuf,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Share of each stratum to sample.
    #[arg(long, global = true, default_value_t = DEFAULT_FRACTION)]
    fraction: f64,
    /// Number of most frequent relations to sample from.
    #[arg(long, global = true, default_value_t = DEFAULT_TOP_K)]
    top_k: usize,
    /// Cross-validation folds.
    #[arg(long, global = true, default_value_t = DEFAULT_FOLDS)]
    folds: usize,
    /// Also put non-synonym pattern triples into the knowledge base.
    #[arg(long, global = true)]
    include_quarantined: bool,
    /// Confidence level for accuracy intervals.
    #[arg(long, global = true, default_value_t = DEFAULT_CONFIDENCE)]
    confidence: f64,
    /// Judged sheet to score (default: the sampled sheet).
    #[arg(long, global = true)]
    sheet: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = SvmParams::default().epochs)]
    epochs: usize,
    /// SVM L2 regularization strength.
    #[arg(long, global = true, default_value_t = SvmParams::default().regularization)]
    regularization: f64,
    /// Relation stems used for knowledge-base expansion, comma separated.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = DEFAULT_EXPANSION.map(String::from))]
    expansion: Vec<String>,
}

impl Opts {
    fn into_config(self) -> PipelineConfig {
        PipelineConfig {
            corpus: self.corpus,
            glossaries: self.glossary,
            indexes: self.index,
            posts: self.posts,
            relations: self.relations,
            threshold: self.threshold,
            out: self.out,
            seed: self.seed,
            fraction: self.fraction,
            top_k: self.top_k,
            folds: self.folds,
            include_quarantined: self.include_quarantined,
            confidence: self.confidence,
            sheet: self.sheet,
            svm: SvmParams {
                epochs: self.epochs,
                regularization: self.regularization,
                seed: self.seed,
            },
            expansion: self.expansion,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = cli.opts.into_config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    let result = match cli.command {
        Command::Ingest => techkb_cli::ingest(&cfg),
        Command::BuildDict => techkb_cli::build_dict(&cfg),
        Command::Extract => techkb_cli::extract(&cfg),
        Command::Stats => techkb_cli::stats(&cfg).map(|s| print!("{s}")),
        Command::Sample => techkb_cli::sample(&cfg),
        Command::Score => techkb_cli::score(&cfg).map(|r| print!("{r}")),
        Command::Classify => techkb_cli::classify(&cfg).map(|r| print!("{r}")),
        Command::All => techkb_cli::run_all(&cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "adr", version, about = "Adaptive divergence-from-randomness ranking pipeline")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an inverted index from a JSONL corpus of {"id", "text"} records.
    Index {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Train the term classifier on seed terms and label the whole vocabulary.
    Classify {
        #[arg(long)]
        index: PathBuf,
        /// Seed list (`<term> info|noninfo` lines); the built-in list when omitted.
        #[arg(long)]
        seeds: Option<PathBuf>,
        /// Term-class map output.
        #[arg(long)]
        out: PathBuf,
        /// Trained classifier output [default: classifier.txt next to --out].
        #[arg(long)]
        classifier: Option<PathBuf>,
        /// Cross-validation report [default: cv_report.txt next to --out].
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        /// Fixed feature subset, e.g. `gain,ridf`; searches all subsets when omitted.
        #[arg(long, value_delimiter = ',')]
        features: Option<Vec<String>>,
    },
    /// Fit every candidate family to the non-informative collection frequencies.
    Fit {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        classmap: PathBuf,
        /// Fitted models output.
        #[arg(long)]
        out: PathBuf,
        /// Frequency sample output.
        #[arg(long)]
        sample: PathBuf,
    },
    /// Select the best-fitting discrete family by AIC, with pairwise Vuong tests.
    Select {
        #[arg(long)]
        fits: PathBuf,
        #[arg(long)]
        sample: PathBuf,
        /// Machine-readable report.
        #[arg(long)]
        out: PathBuf,
        /// Human-readable summary [default: printed].
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Rank documents for every topic and write a TREC run.
    Search {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        topics: PathBuf,
        #[arg(long)]
        run: PathBuf,
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long, default_value_t = 1000)]
        k: usize,
    },
    /// Score a run against qrels.
    Evaluate {
        #[arg(long)]
        run: PathBuf,
        #[arg(long)]
        qrels: PathBuf,
        /// Report output [default: printed].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-validated grid search for c, or mu with --model lmdir.
    Tune {
        #[arg(long)]
        index: PathBuf,
        #[arg(long)]
        topics: PathBuf,
        #[arg(long)]
        qrels: PathBuf,
        #[command(flatten)]
        rank: RankArgs,
        /// Comma-separated grid [default: the standard c or mu grid].
        #[arg(long, value_delimiter = ',')]
        grid: Option<Vec<f64>>,
        #[arg(long, default_value_t = 3)]
        folds: usize,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Ndcg)]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 1000)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical frequency histogram alongside every fitted pmf.
    Fitplot {
        #[arg(long)]
        sample: PathBuf,
        #[arg(long)]
        fits: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Per-query metric differences between two runs, with a paired t-test.
    Diff {
        #[arg(long)]
        run_a: PathBuf,
        #[arg(long)]
        run_b: PathBuf,
        #[arg(long)]
        qrels: PathBuf,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Ndcg)]
        metric: ObjectiveArg,
        #[arg(long, default_value_t = 0.05)]
        alpha: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a synthetic collection with known bursty and uniform terms.
    Synth {
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        docs: usize,
        #[arg(long, default_value_t = 1500)]
        uniform_terms: usize,
        #[arg(long, default_value_t = 300)]
        bursty_terms: usize,
        #[arg(long, default_value_t = 20)]
        queries: usize,
        #[arg(long, default_value_t = 1.7)]
        rho: f64,
    },
    /// Run index, classify, fit, select, search and (with qrels) evaluate into one directory.
    Pipeline {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        topics: PathBuf,
        #[arg(long)]
        qrels: Option<PathBuf>,
        #[arg(long)]
        seeds: Option<PathBuf>,
        #[arg(long)]
        work_dir: PathBuf,
        #[command(flatten)]
        rank: RankArgs,
        #[arg(long, default_value_t = 1000)]
        k: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args, Clone)]
struct RankArgs {
    /// Ranking model [default: the one matching the selected family].
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Allow YSL2 without a selection report naming yule_simon.
    #[arg(long)]
    force_model: bool,
    /// Selection report written by `adr select`.
    #[arg(long)]
    selection: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = AfterEffectArg::Laplace)]
    after_effect: AfterEffectArg,
    #[arg(long, value_enum, default_value_t = InductionArg::Tc)]
    induction: InductionArg,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 1000.0)]
    mu: f64,
    /// Laplace after-effect on the raw in-document frequency.
    #[arg(long)]
    laplace_raw_tf: bool,
    /// Drop the after-effect from LLL2 and SPLL2.
    #[arg(long)]
    no_info_after_effect: bool,
    /// Use rho = T + 1 for YSL2.
    #[arg(long)]
    rho_plus_one: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ModelArg {
    Pl2,
    Inl2,
    Lll2,
    Spll2,
    Ysl2,
    Lmdir,
}

#[derive(ValueEnum, Clone, Copy)]
enum AfterEffectArg {
    Laplace,
    Bernoulli,
}

#[derive(ValueEnum, Clone, Copy)]
enum InductionArg {
    Tc,
    Dc,
}

#[derive(ValueEnum, Clone, Copy)]
enum ObjectiveArg {
    Ndcg,
    P10,
    Err20,
    Ndcg10,
    Bpref,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("adr: error: {msg}");
            ExitCode::FAILURE
        }
    }
}

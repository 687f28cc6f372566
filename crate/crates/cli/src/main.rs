use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hetealloc_cli::{
    cmd_compare, cmd_ingest, cmd_run, manifest_json, parse_years, write_corpus, CliError, CompareConfig, Inputs,
    Method, RunConfig,
};
use hetealloc_core::metrics::DEFAULT_PRODUCTIVE_THRESHOLD;
use hetealloc_core::synth::{generate, specialist_cohort, SynthConfig};
use hetealloc_core::Aggregation;

#[derive(Parser)]
#[command(name = "hetealloc", version, about = "Yearly topical expertise allocation over author-paper-MeSH networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// `year<TAB>author<TAB>paper` lines.
    #[arg(long)]
    links: PathBuf,
    /// `paper<TAB>mesh_unique_id` lines.
    #[arg(long)]
    mesh: PathBuf,
    /// `mesh_unique_id<TAB>tree_id` lines.
    #[arg(long)]
    taxonomy: PathBuf,
}

impl From<InputArgs> for Inputs {
    fn from(a: InputArgs) -> Self {
        Inputs {
            links: a.links,
            mesh: a.mesh,
            taxonomy: a.taxonomy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Bl,
    Hetesim,
    Ha1,
    Ha2,
    Ha3,
    Dha,
}

#[derive(Clone, Copy, ValueEnum)]
enum AggArg {
    Sum,
    Average,
}

#[derive(Subcommand)]
enum Command {
    /// Validate inputs and print the dataset manifest.
    Ingest {
        #[command(flatten)]
        inputs: InputArgs,
        /// Also write manifest.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute yearly expertise snapshots with one method.
    Run {
        #[command(flatten)]
        inputs: InputArgs,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Split each paper's category links evenly.
        #[arg(long)]
        weighted: bool,
        /// Focal-paper aggregation (ha3 only; default average).
        #[arg(long, value_enum)]
        agg: Option<AggArg>,
        /// Output years, FROM:TO inclusive.
        #[arg(long)]
        years: Option<String>,
        /// Worker threads; 1 runs sequentially. Defaults to all cores.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Summarize two snapshot series year by year.
    Compare {
        left: PathBuf,
        right: PathBuf,
        /// Link list used for per-author paper counts.
        #[arg(long)]
        links: PathBuf,
        /// Productive authors have strictly more papers than this.
        #[arg(long, default_value_t = DEFAULT_PRODUCTIVE_THRESHOLD)]
        min_papers: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a seeded synthetic corpus with specialist ground truth.
    Synth {
        #[arg(long, default_value_t = 10_000)]
        authors: usize,
        #[arg(long, default_value_t = 50_000)]
        papers: usize,
        #[arg(long, default_value_t = 10)]
        years: usize,
        #[arg(long, default_value_t = 127)]
        categories: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Solo single-category authors instead of the collaborative corpus.
        #[arg(long)]
        specialists: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ingest { inputs, out } => {
            let manifest = cmd_ingest(&inputs.into(), out.as_deref())?;
            print!("{}", manifest_json(&manifest));
        }
        Command::Run {
            inputs,
            method,
            weighted,
            agg,
            years,
            threads,
            out,
        } => {
            let cfg = RunConfig {
                method: match method {
                    MethodArg::Bl => Method::Bl,
                    MethodArg::Hetesim => Method::HeteSim,
                    MethodArg::Ha1 => Method::Ha1,
                    MethodArg::Ha2 => Method::Ha2,
                    MethodArg::Ha3 => Method::Ha3,
                    MethodArg::Dha => Method::Dha,
                },
                weighted,
                aggregation: agg.map(|a| match a {
                    AggArg::Sum => Aggregation::Sum,
                    AggArg::Average => Aggregation::Average,
                }),
                years: years.as_deref().map(parse_years).transpose()?,
                threads,
                inputs: inputs.into(),
                out,
            };
            let report = cmd_run(&cfg)?;
            println!("{}\t{} records\t{} years", report.output.display(), report.records, report.years.len());
        }
        Command::Compare {
            left,
            right,
            links,
            min_papers,
            out,
        } => {
            let report = cmd_compare(&CompareConfig {
                left,
                right,
                links,
                min_papers,
                out,
            })?;
            println!("{}", report.summary.display());
            for h in report.histograms {
                println!("{}", h.display());
            }
        }
        Command::Synth {
            authors,
            papers,
            years,
            categories,
            seed,
            specialists,
            out,
        } => {
            if authors == 0 || years == 0 || categories == 0 {
                return Err(CliError::Usage("authors, years and categories must be positive".into()));
            }
            let corpus = if specialists {
                specialist_cohort(authors, years, (papers / (authors * years)).max(1), categories, seed)
            } else {
                generate(&SynthConfig {
                    authors,
                    papers,
                    years,
                    categories,
                    seed,
                    ..SynthConfig::default()
                })
            };
            let inputs = write_corpus(&corpus, &out)?;
            println!("{}", inputs.links.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hetealloc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

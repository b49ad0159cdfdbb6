use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use turaev_verify::corpus::{load_corpus, CorpusSource};
use turaev_verify::dt::{parse_dt, DtCode, SignClass};
use turaev_verify::poly::{jones, span_t};
use turaev_verify::realize::realize;
use turaev_verify::tangle::{fraction, parse_word, synthesize_one_minus_one, ExtendedRational};
use turaev_verify::turaev_genus;
use turaev_verify::verify::{render, verify_all, ReportFormat};

#[derive(Parser)]
#[command(
    version,
    about = "Verify almost alternating representations of non-alternating knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every row of the corpus.
    Verify {
        /// Corpus file to use instead of the embedded one.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print the Jones polynomial of a DT code.
    Jones { dt: String },
    /// Print the Turaev surface genus of the diagram of a DT code.
    Genus { dt: String },
    /// Print the planar diagram realizing a DT code.
    Realize { dt: String },
    /// Classify the sign pattern of a DT code.
    Classify { dt: String },
    /// Print the fraction of a rational tangle word, e.g. "21 - 10".
    TangleFraction {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Find a tangle word with a single -1 and the given fraction, e.g. -3/4.
    TangleSynthesize {
        #[arg(allow_hyphen_values = true)]
        fraction: String,
    },
}

fn dt(text: &str) -> Result<DtCode, String> {
    parse_dt(text).map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Verify {
            corpus,
            report,
            format,
            workers,
        } => {
            let source = match &corpus {
                Some(path) => CorpusSource::File(path),
                None => CorpusSource::Embedded,
            };
            let rows = load_corpus(source).map_err(|e| format!("corpus validation failed: {e}"))?;
            let workers = workers
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let result = verify_all(&rows, workers);
            let format = match format {
                Format::Text => ReportFormat::Text,
                Format::Json => ReportFormat::Json,
                Format::Csv => ReportFormat::Csv,
            };
            let body = render(&result, format, false);
            match report {
                Some(path) => std::fs::write(&path, body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{body}"),
            }
            let t = result.totals;
            eprintln!(
                "verified {} failed {} open {} in {:.2}s",
                t.verified,
                t.failed,
                t.open,
                result.duration.as_secs_f64()
            );
            Ok(if result.exit_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Jones { dt: code } => {
            let pd = realize(&dt(&code)?).map_err(|e| e.to_string())?;
            let v = jones(&pd).map_err(|e| e.to_string())?;
            println!("{v}");
            if let Ok(span) = span_t(&v) {
                println!("span {span}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Genus { dt: code } => {
            let pd = realize(&dt(&code)?).map_err(|e| e.to_string())?;
            println!("{}", turaev_genus(&pd).map_err(|e| e.to_string())?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Realize { dt: code } => {
            let pd = realize(&dt(&code)?).map_err(|e| e.to_string())?;
            print!("{}", pd.dump());
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify { dt: code } => {
            match dt(&code)?.classify() {
                SignClass::Alternating => println!("alternating"),
                SignClass::AlmostAlternating { index } => {
                    println!("almost alternating (crossing {index})")
                }
                SignClass::Other => println!("other"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::TangleFraction { word } => {
            let w = parse_word(&word).map_err(|e| e.to_string())?;
            println!("{}", fraction(&w));
            Ok(ExitCode::SUCCESS)
        }
        Command::TangleSynthesize { fraction: q } => {
            let q: ExtendedRational = q
                .parse()
                .map_err(|e: turaev_verify::tangle::TangleError| e.to_string())?;
            let s = synthesize_one_minus_one(q).map_err(|e| e.to_string())?;
            if s.already_nonnegative {
                println!("{} (no -1 needed)", s.word.to_conway());
            } else {
                println!("{}", s.word.to_conway());
            }
            println!("{}", s.word);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

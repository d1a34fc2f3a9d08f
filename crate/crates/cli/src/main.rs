mod cache;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use charvar::gensets::{generating_set, GenOptions, Prune};
use charvar::group::Group;
use charvar::nilquot::{ComponentKey, IdealMode, QuotientEngine, QuotientProvider};
use charvar::verify::{run_suite, SuiteReport, DEFAULT_TRIALS, SUITES};
use charvar::words::Alphabet;
use clap::{Parser, Subcommand, ValueEnum};

use cache::DiskCache;

#[derive(Parser)]
#[command(name = "charvar", version, about = "Generators of coordinate rings of character varieties")]
struct Cli {
    /// Skip the on-disk quotient cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generating set.
    Gens {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value = "none", value_parser = parse_prune)]
        prune: Prune,
        /// List every ordered tuple of Q arguments.
        #[arg(long)]
        ordered_q: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Inspect a quotient component.
    Nilquot {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        letters: u32,
        /// Include starred letters.
        #[arg(long)]
        stars: bool,
        #[arg(long, value_enum, default_value_t = ModeArg::Plain)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = PrintArg::Basis)]
        print: PrintArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Sl,
    Gl,
    Sp,
    O,
    So,
}

impl GroupArg {
    fn name(self) -> &'static str {
        match self {
            GroupArg::Sl => "sl",
            GroupArg::Gl => "gl",
            GroupArg::Sp => "sp",
            GroupArg::O => "o",
            GroupArg::So => "so",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Plain,
    Symmetric,
    Commutative,
}

impl From<ModeArg> for IdealMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Plain => IdealMode::Plain,
            ModeArg::Symmetric => IdealMode::Symmetric,
            ModeArg::Commutative => IdealMode::Commutative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PrintArg {
    Basis,
    Dimension,
}

fn parse_prune(s: &str) -> Result<Prune, String> {
    s.parse().map_err(|e: charvar::Error| e.to_string())
}

/// Exit 2 for bad input, 1 for anything else.
enum Failure {
    Usage(String),
    Internal(anyhow::Error),
}

impl From<charvar::Error> for Failure {
    fn from(e: charvar::Error) -> Self {
        use charvar::Error::*;
        match e {
            InvalidParameter(_) | OddSize { .. } | OddSymmetric(_) | Unsupported(_) | ZeroLetterIndex
            | ParseWord(_) | EmptyWord | LetterOutOfRange { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

fn provider(no_cache: bool) -> Box<dyn QuotientProvider> {
    if no_cache {
        Box::new(QuotientEngine::new())
    } else {
        Box::new(DiskCache::from_env())
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Gens { group, n, rank, prune, ordered_q, format, out } => {
            let group = Group::resolve(group.name(), n)?;
            let p = provider(cli.no_cache);
            let set = generating_set(p.as_ref(), group, n, rank, &GenOptions { prune, ordered_q })?;
            let text = match format {
                Format::Json => set.to_json() + "\n",
                Format::Text => set.to_text(),
            };
            emit(&text, out.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, seed, trials, format } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(Failure::Usage(format!(
                    "unknown suite {suite:?}; expected one of {} or all",
                    SUITES.join(", ")
                )));
            };
            let reports = names.iter().map(|s| run_suite(s, seed, trials)).collect::<charvar::Result<Vec<_>>>()?;
            let text = match format {
                Format::Json if suite == "all" => {
                    serde_json::to_string(&reports).context("serializing reports")? + "\n"
                }
                Format::Json => reports[0].to_json() + "\n",
                Format::Text => reports.iter().map(SuiteReport::to_text).collect(),
            };
            emit(&text, None)?;
            Ok(if reports.iter().all(SuiteReport::passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Nilquot { n, degree, letters, stars, mode, print } => {
            if n == 0 || letters == 0 {
                return Err(Failure::Usage("--n and --letters must be positive".into()));
            }
            let alphabet = if stars { Alphabet::starred(letters) } else { Alphabet::plain(letters) };
            let key = ComponentKey::new(n, degree, alphabet, mode.into());
            let basis = provider(cli.no_cache).quotient_basis(&key)?;
            let text = match print {
                PrintArg::Basis => basis.iter().map(|w| format!("{w}\n")).collect(),
                PrintArg::Dimension => format!("{}\n", basis.len()),
            };
            emit(&text, None)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use burnside_core::obstruct::{
    compare_links, invariance_audit, parse_link, verdict, LinkFormat, LinkInput, VerdictOptions,
};
use burnside_core::pcgroup::coset::DEFAULT_COSET_LIMIT;
use burnside_core::reproduce::{bundled_link, reproduce, Target, CORPUS};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Burnside-group invariants of links and move obstructions.
#[derive(Parser, Debug)]
#[command(name = "burnside", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Computes the obstruction report of one link.
    Invariant {
        input: PathBuf,
        #[arg(long, short = 'n')]
        exponent: u64,
        /// Denominator of the n/q-move family.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        q: i64,
        #[command(flatten)]
        common: Common,
        /// Lie certificate class bound; must stay below the prime.
        #[arg(long, default_value_t = burnside_core::liering::DEFAULT_CLASS)]
        class: usize,
    },
    /// Compares the Burnside quotients of two links.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, short = 'n')]
        exponent: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Applies random n/q-moves and checks that the quotient is unchanged.
    Audit {
        input: PathBuf,
        #[arg(long, short = 'n')]
        exponent: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Prints an expected-versus-computed table for a named result.
    Reproduce {
        #[arg(long)]
        target: String,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Input format; detected from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Coset cap for the enumeration fallback.
    #[arg(long, default_value_t = DEFAULT_COSET_LIMIT)]
    budget: usize,
    /// Writes the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Braid,
    Pd,
    Pres,
}

impl From<Format> for LinkFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Braid => LinkFormat::Braid,
            Format::Pd => LinkFormat::Pd,
            Format::Pres => LinkFormat::Pres,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] burnside_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

type Result<T> = std::result::Result<T, CliError>;

fn link_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

/// Reads a link file. A bare corpus file name that does not exist on disk
/// resolves to the bundled copy.
fn load(path: &Path, format: Option<Format>) -> Result<LinkInput> {
    let format = match format {
        Some(f) => f.into(),
        None => LinkFormat::from_extension(path.extension().and_then(|e| e.to_str()).unwrap_or(""))?,
    };
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(parse_link(&text, format)?),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            let name = path.to_str().unwrap_or("");
            if CORPUS.iter().any(|(n, _)| *n == name) {
                Ok(bundled_link(name)?)
            } else {
                Err(CliError::Io { path: path.into(), source: e })
            }
        }
        Err(e) => Err(CliError::Io { path: path.into(), source: e }),
    }
}

fn emit(json: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, format!("{json}\n")).map_err(|source| CliError::Io { path: path.into(), source })
        }
        None => match writeln!(std::io::stdout().lock(), "{json}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(CliError::Io { path: "<stdout>".into(), source: e })
            }
            _ => Ok(()),
        },
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Invariant { input, exponent, q, common, class } => {
            let link = load(&input, common.format)?;
            let opts = VerdictOptions { class, coset_limit: common.budget };
            let report = verdict(&link, &link_name(&input), exponent, q, &opts)?;
            emit(&report.to_json(), common.out.as_deref())?;
        }
        Command::Compare { a, b, exponent, common } => {
            let (la, lb) = (load(&a, common.format)?, load(&b, common.format)?);
            let report = compare_links((&la, &link_name(&a)), (&lb, &link_name(&b)), exponent, common.budget)?;
            emit(&report.to_json(), common.out.as_deref())?;
        }
        Command::Audit { input, exponent, seed, trials, common } => {
            let LinkInput::Diagram(d) = load(&input, common.format)? else {
                return Err(CliError::Usage("audits need a diagram (braid or PD), not a presentation".into()));
            };
            let report = invariance_audit(&d, exponent, trials, seed, common.budget)?;
            let json = serde_json::to_string_pretty(&report).expect("audit reports serialize");
            emit(&json, common.out.as_deref())?;
            if !report.passed {
                return Ok(ExitCode::from(2));
            }
        }
        Command::Reproduce { target } => {
            let targets: Vec<Target> =
                if target == "all" { Target::ALL.to_vec() } else { vec![target.parse::<Target>()?] };
            let mut ok = true;
            for (i, t) in targets.into_iter().enumerate() {
                if i > 0 {
                    println!();
                }
                let table = reproduce(t)?;
                ok &= table.passed();
                println!("{table}");
            }
            if !ok {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use torus_strata::problem::{self, Kind, OptionOverrides, OutputFormat};
use torus_strata::shb_model::GradingConvention;

#[derive(Parser)]
#[command(name = "torus-strata", version, about = "Torus stability, Kempf-Ness and stratification reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    Default,
    Flipped,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKindArg {
    Stability,
    KempfNess,
    Stratify,
    Shb,
    Kuranishi,
}

#[derive(Subcommand)]
enum Command {
    /// Validate and run problem documents; several inputs run concurrently.
    Run {
        /// Problem document, `-` for stdin. Repeatable.
        #[arg(long, required = true)]
        input: Vec<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        convention: Option<Convention>,
        #[arg(long, action = clap::ArgAction::Set)]
        emit_certificates: Option<bool>,
    },
    /// Check problem documents without running them.
    Validate {
        #[arg(long, required = true)]
        input: Vec<String>,
    },
    /// Emit seeded random problem documents.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKindArg,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for `<kind>-<index>.json` files; stdout (a JSON array) if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn read_all(inputs: &[String]) -> Result<Vec<String>, ExitCode> {
    inputs
        .iter()
        .map(|p| read_input(p))
        .collect::<Result<_, _>>()
        .map_err(|e| {
            eprintln!("error: {e}");
            ExitCode::from(1)
        })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            input,
            format,
            tol,
            seed,
            convention,
            emit_certificates,
        } => {
            let texts = match read_all(&input) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let format = format.map(|f| match f {
                Format::Json => OutputFormat::Json,
                Format::Text => OutputFormat::Text,
            });
            let overrides = OptionOverrides {
                tol,
                seed,
                convention: convention.map(|c| match c {
                    Convention::Default => GradingConvention::Default,
                    Convention::Flipped => GradingConvention::Flipped,
                }),
                emit_certificates,
                format,
            };
            let outcomes = problem::run_batch(&texts, &overrides);
            let fmt = format.unwrap_or_default();
            if input.len() == 1 || fmt == OutputFormat::Text {
                for (path, o) in input.iter().zip(&outcomes) {
                    if input.len() > 1 {
                        println!("== {path} ==");
                    }
                    print!("{}", problem::format_report(&o.report, fmt));
                }
            } else {
                let all = serde_json::Value::Array(outcomes.iter().map(|o| o.report.clone()).collect());
                print!("{}", problem::format_report(&all, fmt));
            }
            ExitCode::from(problem::batch_exit_code(&outcomes) as u8)
        }
        Command::Validate { input } => {
            let texts = match read_all(&input) {
                Ok(t) => t,
                Err(c) => return c,
            };
            let mut ok = true;
            for (path, t) in input.iter().zip(&texts) {
                match problem::validate(t) {
                    Ok(spec) => println!("{path}: valid {} document", spec.kind.as_str()),
                    Err(errs) => {
                        ok = false;
                        for e in errs {
                            println!("{path}:{e}");
                        }
                    }
                }
            }
            ExitCode::from(if ok { 0 } else { 2 })
        }
        Command::Gen {
            kind,
            count,
            seed,
            out,
        } => {
            let kind = match kind {
                GenKindArg::Stability => Kind::Stability,
                GenKindArg::KempfNess => Kind::KempfNess,
                GenKindArg::Stratify => Kind::Stratify,
                GenKindArg::Shb => Kind::Shb,
                GenKindArg::Kuranishi => Kind::Kuranishi,
            };
            let docs = problem::generate(kind, seed, count);
            match out {
                None => {
                    let all = serde_json::Value::Array(docs);
                    print!("{}", problem::format_report(&all, OutputFormat::Json));
                }
                Some(dir) => {
                    if let Err(e) = std::fs::create_dir_all(&dir) {
                        eprintln!("error: {}: {e}", dir.display());
                        return ExitCode::from(1);
                    }
                    for (i, d) in docs.iter().enumerate() {
                        let path = dir.join(format!("{}-{i:04}.json", kind.as_str()));
                        let text = problem::format_report(d, OutputFormat::Json);
                        if let Err(e) = std::fs::write(&path, text) {
                            eprintln!("error: {}: {e}", path.display());
                            return ExitCode::from(1);
                        }
                    }
                }
            }
            ExitCode::SUCCESS
        }
    }
}

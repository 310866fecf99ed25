use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use involutive::SigmaMode;
use involutive_cli::{run, scheme_text, Command, Outcome, SessionConfig, EXIT_INPUT};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Escalier,
    IdealSlice,
}

/// Involutive structure, marked bases and marked-scheme equations for
/// monomial ideals.
#[derive(Debug, Parser)]
#[command(name = "involutive", version)]
struct Args {
    /// mult-vars, complete-check, stably-complete-check, complete, star-set,
    /// classify, pommaret, hilbert, sigma, involutive-test, reduce,
    /// is-marked-basis, oracle-check, scheme-equations, specialize
    command: String,

    /// Input JSON file.
    #[arg(long)]
    input: PathBuf,

    /// Report file; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Reduction step limit.
    #[arg(long, default_value_t = 100_000)]
    step_cap: usize,

    /// Degree bound, completion cap, or the degree p for sigma commands.
    #[arg(long)]
    degree_bound: Option<u32>,

    #[arg(long, value_enum, default_value_t = Mode::IdealSlice)]
    sigma_mode: Mode,

    /// Include full reduction traces.
    #[arg(long)]
    trace: bool,

    /// Plain-text equations instead of JSON (scheme-equations only).
    #[arg(long)]
    text: bool,
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), String> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let Some(command) = Command::from_name(&args.command) else {
        let out = Outcome::error("usage", format!("unknown subcommand `{}`", args.command));
        print!("{}", out.render());
        return ExitCode::from(EXIT_INPUT as u8);
    };
    let config = SessionConfig {
        input: args.input,
        output: args.output,
        step_cap: args.step_cap,
        degree_bound: args.degree_bound,
        sigma_mode: match args.sigma_mode {
            Mode::Escalier => SigmaMode::Escalier,
            Mode::IdealSlice => SigmaMode::IdealSlice,
        },
        trace: args.trace,
    };

    if args.text && command == Command::SchemeEquations {
        let text = std::fs::read_to_string(&config.input)
            .map_err(|e| Outcome::error("io", e))
            .and_then(|t| serde_json::from_str(&t).map_err(|e| Outcome::error("json", e)))
            .and_then(|v| scheme_text(&v));
        return match text {
            Ok(t) => match emit(&t, &config.output) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{e}");
                    ExitCode::from(EXIT_INPUT as u8)
                }
            },
            Err(o) => {
                print!("{}", o.render());
                ExitCode::from(o.code as u8)
            }
        };
    }

    let outcome = run(command, &config);
    if let Err(e) = emit(&outcome.render(), &config.output) {
        eprintln!("{e}");
        return ExitCode::from(EXIT_INPUT as u8);
    }
    ExitCode::from(outcome.code as u8)
}

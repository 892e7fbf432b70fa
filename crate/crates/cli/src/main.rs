use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nomrel::laws::SuiteConfig;
use nomrel_cli::ast::{Script, Stmt};
use nomrel_cli::{parse, Report, Runner};

#[derive(Parser)]
#[command(
    name = "nomrel",
    version,
    about = "Check laws of finitely supported relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Oracle universe size (total atoms); defaults to pinned + 3k + 2.
    #[arg(long, global = true)]
    universe: Option<usize>,
    #[arg(long, default_value_t = 7, global = true)]
    seed: u64,
    /// Random cases per law.
    #[arg(long, global = true)]
    cases: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a script file.
    Run { file: PathBuf },
    /// Run a built-in demonstration.
    Demo { name: String },
    /// Run a law suite, or `all`.
    Suite { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = SuiteConfig {
        seed: cli.seed,
        cases: cli.cases,
        universe: cli.universe,
        widen: 0,
    };
    let script = match &cli.command {
        Command::Run { file } => {
            let text = match std::fs::read_to_string(file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("nomrel: cannot read {}: {e}", file.display());
                    return ExitCode::from(2);
                }
            };
            match parse(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}: {e}", file.display());
                    return ExitCode::from(2);
                }
            }
        }
        Command::Demo { name } => Script {
            stmts: vec![Stmt::Demo { name: name.clone() }],
        },
        Command::Suite { name } => Script {
            stmts: vec![Stmt::Suite {
                name: name.clone(),
                seed: None,
                cases: None,
            }],
        },
    };
    let report: Report = Runner::new(cfg).run(&script);
    match cli.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code())
}

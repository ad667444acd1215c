use std::io::{self, IsTerminal};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cliffkernel::cli::{run_script, OutputMode, Repl};

#[derive(Parser)]
#[command(name = "cliffkernel", version, about = "Symbolic Clifford algebra and geometric calculus")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Interactive session reading statements from stdin.
    Repl {
        #[arg(long, default_value = "text")]
        mode: OutputMode,
    },
    /// Runs a script and prints a report; exits 1 if an assertZero fails, 2 on error.
    Run {
        script: PathBuf,
        #[arg(long, default_value = "text")]
        mode: OutputMode,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    match args.command {
        Command::Repl { mode } => {
            let mut repl = Repl::new();
            repl.session.set_mode(mode);
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            match repl.run(stdin.lock(), io::stdout().lock(), prompt) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("cliffkernel: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Run { script, mode, out } => {
            let src = match std::fs::read_to_string(&script) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("cliffkernel: {}: {e}", script.display());
                    return ExitCode::from(2);
                }
            };
            let report = run_script(&src, mode);
            let text = report.render();
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &text) {
                        eprintln!("cliffkernel: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if let Some((line, err)) = &report.error {
                eprintln!("cliffkernel: error at line {line}: {err}");
            }
            for line in report.failed_assertions() {
                eprintln!("cliffkernel: assertZero failed at line {line}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
    }
}

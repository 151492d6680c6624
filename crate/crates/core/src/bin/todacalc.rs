use clap::Parser;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use todacalc::cli::{emit, run_text, Command};

/// Exact obstruction calculus. Prints one JSON report on stdout; exit code 0
/// on success, 2 on a mathematical obstruction, 1 on invalid input.
#[derive(Parser)]
#[command(name = "todacalc", version)]
struct Cli {
    /// Presentation file, `-` for stdin.
    #[arg(short, long, global = true)]
    input: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn read(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors count as invalid input; help and version are not errors
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let text = match cli.input.as_ref().map(read).transpose() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("todacalc: cannot read input: {e}");
            return ExitCode::from(1);
        }
    };
    let report = run_text(&cli.command, text.as_deref());
    if let Command::Example { dsl: true, .. } = cli.command {
        if let Some(p) = report.payload.get("presentation").and_then(|p| p.as_str()) {
            let _ = write!(std::io::stdout(), "{p}");
            return ExitCode::SUCCESS;
        }
    }
    if let Some(err) = report.payload.get("error") {
        let loc = match (err.get("line"), err.get("col")) {
            (Some(l), Some(c)) => format!(":{l}:{c}"),
            _ => String::new(),
        };
        let file = cli.input.as_ref().map(|p| p.display().to_string()).unwrap_or_default();
        let code = err["code"].as_str().unwrap_or("");
        let msg = err["message"].as_str().unwrap_or("invalid input");
        if file.is_empty() {
            eprintln!("todacalc: {code}: {msg}");
        } else {
            eprintln!("todacalc: {file}{loc}: {code}: {msg}");
        }
    }
    // a closed stdout is not worth a panic
    let _ = writeln!(std::io::stdout(), "{}", emit(&report));
    ExitCode::from(report.exit_code() as u8)
}

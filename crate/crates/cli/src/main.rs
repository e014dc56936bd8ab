use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use frame_sync_cli::{
    configure_threads, run, Cli, CliError, Command, EXIT_OK, EXIT_SELF_CHECK, EXIT_USAGE,
};

fn execute(cli: &Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let cfg = cli.effective_config()?;
    let output = run(Command::from(cli.command), &cfg)?;
    for note in &output.table.notes {
        eprintln!("note: {note}");
    }
    match &cli.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            output.table.write(&mut file, cli.json)?;
            file.flush().map_err(|e| CliError::Io(e.to_string()))?;
        }
        None => output
            .table
            .write(&mut std::io::stdout().lock(), cli.json)?,
    }
    Ok(match output.self_check {
        Some(msg) => {
            eprintln!("self-check failed: {msg}");
            EXIT_SELF_CHECK
        }
        None => EXIT_OK,
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = execute(&cli).unwrap_or_else(|e| {
        eprintln!("frame-sync: {e}");
        EXIT_USAGE
    });
    ExitCode::from(code as u8)
}

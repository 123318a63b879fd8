use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use feqlab::cli::{run, thread_cap, Cli, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match thread_cap() {
        Ok(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            Ok(()) => run(&cli),
            Err(e) => Outcome::validation(format!("cannot start worker threads: {e}")),
        },
        Err(msg) => Outcome::validation(msg),
    };
    if let Some(out) = &outcome.stdout {
        let mut stdout = std::io::stdout().lock();
        // a closed pipe is not worth a panic
        let _ = writeln!(stdout, "{out}");
    }
    if let Some(err) = &outcome.stderr {
        eprintln!("{err}");
    }
    ExitCode::from(outcome.exit.code())
}

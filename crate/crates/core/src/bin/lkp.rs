use std::io::{self, BufRead, IsTerminal, Write};
use std::process::ExitCode;

use clap::Parser;

use lkprover::prover::Context;
use lkprover::session::{Session, SessionError, Status};

/// Interactive sequent prover. With no command, reads commands from standard
/// input; `help` lists them.
#[derive(Parser)]
#[command(name = "lkp", version)]
struct Args {
    /// Run the commands in FILE and exit.
    #[arg(long, value_name = "FILE")]
    script: Option<String>,
    /// Close goals with a random unifiable pair instead of the first.
    #[arg(long)]
    seed: Option<u64>,
    /// Do not add a formula to a goal that already contains it.
    #[arg(long)]
    dedup: bool,
    /// Default step cap for `run`.
    #[arg(long, value_name = "N")]
    max_steps: Option<usize>,
    /// A single command to execute, e.g. `check proof.txt`.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    command: Vec<String>,
}

fn quote(w: &str) -> String {
    if w.is_empty() || w.contains(char::is_whitespace) {
        format!("\"{w}\"")
    } else {
        w.to_string()
    }
}

fn code(status: Result<Status, SessionError>) -> u8 {
    match status {
        Ok(Status::Done | Status::Quit) => 0,
        Ok(Status::Negative) => 1,
        Err(e) => {
            eprintln!("Error: {e}");
            e.exit_code() as u8
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut cx = Context::new().with_dedup(args.dedup);
    if let Some(seed) = args.seed {
        cx = cx.with_random_solutions(seed);
    }
    let mut session = Session::new(cx).with_max_steps(args.max_steps);
    let stdout = io::stdout();
    let mut out = stdout.lock();

    if let Some(path) = &args.script {
        return ExitCode::from(code(session.execute(&format!("script {}", quote(path)), &mut out)));
    }
    if !args.command.is_empty() {
        let line: Vec<String> = args.command.iter().map(|w| quote(w)).collect();
        return ExitCode::from(code(session.execute(&line.join(" "), &mut out)));
    }

    let interactive = io::stdin().is_terminal();
    let mut worst = 0u8;
    if interactive {
        let _ = write!(out, "> ");
        let _ = out.flush();
    }
    for line in io::stdin().lock().lines() {
        let Ok(line) = line else { break };
        let r = session.execute(&line, &mut out);
        let quit = matches!(r, Ok(Status::Quit));
        let c = code(r);
        if !interactive {
            worst = worst.max(c);
        }
        if quit {
            break;
        }
        if interactive {
            let _ = write!(out, "> ");
            let _ = out.flush();
        }
    }
    ExitCode::from(worst)
}

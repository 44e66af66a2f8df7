//! The command interpreter: reading goals, stepping the automatic strategy,
//! bounded proving and proof checking.
//!
//! ```text
//! goal "<F>"                        read the goal |- F
//! goalseq "<A1>;...|-<B1>;..."      read a sequent
//! step | steps N | run [--max-steps N]
//! fail N "<F>"                      expect F to stay open after N steps
//! prove --bound N [--emit FILE] "<sequent>"
//! check FILE
//! script FILE
//! ```

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::checker::check_proof;
use crate::parse::{parse, ParseError};
use crate::proof::{FormatError, ProofTree};
use crate::prover::{initial_table, proof_steps_with, Context, GoalTable, StepError, StopReason, TraceEvent};
use crate::search::prove_iterative;
use crate::syntax::Formula;

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot parse {text:?}: {err}")]
    Parse { text: String, err: ParseError },
    #[error("{0}")]
    Step(#[from] StepError),
    #[error("This proof should have failed!")]
    ShouldHaveFailed,
    #[error("malformed proof file: {0}")]
    Format(#[from] FormatError),
    #[error("{path}: {err}")]
    Io { path: String, err: io::Error },
}

impl SessionError {
    /// Exit status for this error: 1 for a logical failure, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            SessionError::Step(_) | SessionError::ShouldHaveFailed => 1,
            _ => 2,
        }
    }
}

/// How a successfully executed command turned out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Done,
    /// `prove` found no proof, or `check` rejected the tree.
    Negative,
    Quit,
}

/// Splits a command line into words; double quotes group a word.
pub fn words(line: &str) -> Result<Vec<String>, SessionError> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut w = String::new();
            loop {
                match chars.next() {
                    Some('"') => break,
                    Some(ch) => w.push(ch),
                    None => return Err(SessionError::Usage("unterminated quote".into())),
                }
            }
            out.push(w);
        } else {
            let mut w = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '"' {
                    break;
                }
                w.push(ch);
                chars.next();
            }
            out.push(w);
        }
    }
    Ok(out)
}

fn formula(text: &str) -> Result<Formula, SessionError> {
    parse(text).map_err(|err| SessionError::Parse { text: text.to_string(), err })
}

fn formulas(text: &str) -> Result<Vec<Formula>, SessionError> {
    text.split(';').map(str::trim).filter(|s| !s.is_empty()).map(formula).collect()
}

/// Parses `A1;...;Am |- B1;...;Bn`. Without `|-` the text is the right side.
pub fn parse_sequent(text: &str) -> Result<(Vec<Formula>, Vec<Formula>), SessionError> {
    match text.split_once("|-") {
        Some((l, r)) => Ok((formulas(l)?, formulas(r)?)),
        None => Ok((Vec::new(), formulas(text)?)),
    }
}

fn number(w: Option<&String>, what: &str) -> Result<usize, SessionError> {
    w.and_then(|s| s.parse().ok()).ok_or_else(|| SessionError::Usage(format!("{what} expects a number")))
}

pub struct Session {
    pub table: GoalTable,
    pub cx: Context,
    pub history: Vec<TraceEvent>,
    /// Cap applied by `run` when no `--max-steps` is given.
    pub max_steps: Option<usize>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(Context::new())
    }
}

impl Session {
    pub fn new(cx: Context) -> Self {
        Session { table: GoalTable::default(), cx, history: Vec::new(), max_steps: None }
    }

    pub fn with_max_steps(mut self, max: Option<usize>) -> Self {
        self.max_steps = max;
        self
    }

    /// Reads the sequent `left |- right`, resetting the name supply.
    pub fn read_goalseq(&mut self, left: &[&str], right: &[&str], out: &mut dyn Write) -> Result<(), SessionError> {
        let l = left.iter().map(|s| formula(s)).collect::<Result<Vec<_>, _>>()?;
        let r = right.iter().map(|s| formula(s)).collect::<Result<Vec<_>, _>>()?;
        self.set_goal(&l, &r, out)
    }

    fn set_goal(&mut self, l: &[Formula], r: &[Formula], out: &mut dyn Write) -> Result<(), SessionError> {
        self.table = initial_table(l, r, &mut self.cx);
        self.history.clear();
        self.print_table(out)
    }

    fn print_table(&self, out: &mut dyn Write) -> Result<(), SessionError> {
        write!(out, "{}", self.table).map_err(io_err)
    }

    /// Runs up to `limit` steps, printing each event and then the table.
    pub fn steps(&mut self, limit: Option<usize>, out: &mut dyn Write) -> Result<StopReason, SessionError> {
        let mut sink = Ok(());
        let result = proof_steps_with(limit, self.table.clone(), &mut self.cx, |ev| {
            if sink.is_ok() {
                sink = writeln!(out, "{ev}");
            }
        });
        sink.map_err(io_err)?;
        let s = result?;
        self.history.extend(s.events);
        self.table = s.table;
        if s.stop == StopReason::NoRules {
            write!(out, "\n**No proof rules applicable**\n").map_err(io_err)?;
        }
        self.print_table(out)?;
        Ok(s.stop)
    }

    /// Executes one command line.
    pub fn execute(&mut self, line: &str, out: &mut dyn Write) -> Result<Status, SessionError> {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return Ok(Status::Done);
        }
        let ws = words(line)?;
        let args = &ws[1..];
        match ws[0].as_str() {
            "goal" => {
                let [f] = args else { return Err(SessionError::Usage("goal \"<formula>\"".into())) };
                self.set_goal(&[], &[formula(f)?], out)?;
            }
            "goalseq" => {
                let [s] = args else { return Err(SessionError::Usage("goalseq \"<A;...|-B;...>\"".into())) };
                let (l, r) = parse_sequent(s)?;
                self.set_goal(&l, &r, out)?;
            }
            "step" => {
                self.steps(Some(1), out)?;
            }
            "steps" => {
                let n = number(args.first(), "steps")?;
                self.steps(Some(n), out)?;
            }
            "run" => {
                let limit = match args {
                    [] => self.max_steps,
                    [flag, n] if flag == "--max-steps" => Some(number(Some(n), "--max-steps")?),
                    _ => return Err(SessionError::Usage("run [--max-steps N]".into())),
                };
                self.steps(limit, out)?;
            }
            "fail" => {
                let [n, f] = args else { return Err(SessionError::Usage("fail N \"<formula>\"".into())) };
                let n = number(Some(n), "fail")?;
                self.set_goal(&[], &[formula(f)?], out)?;
                self.steps(Some(n), out)?;
                if self.table.is_empty() {
                    return Err(SessionError::ShouldHaveFailed);
                }
                writeln!(out, "Failed, as expected").map_err(io_err)?;
            }
            "prove" => return self.prove(args, out),
            "check" => {
                let [path] = args else { return Err(SessionError::Usage("check FILE".into())) };
                let text = read_file(path)?;
                let tree = ProofTree::from_text(&text)?;
                let report = check_proof(&tree);
                write!(out, "{report}").map_err(io_err)?;
                if !report.accepted() {
                    return Ok(Status::Negative);
                }
            }
            "script" => {
                let [path] = args else { return Err(SessionError::Usage("script FILE".into())) };
                let text = read_file(path)?;
                return self.run_script(&text, out);
            }
            "quit" | "exit" => return Ok(Status::Quit),
            "help" => {
                writeln!(out, "{}", HELP).map_err(io_err)?;
            }
            other => return Err(SessionError::Usage(format!("unknown command `{other}`; try `help`"))),
        }
        Ok(Status::Done)
    }

    fn prove(&mut self, args: &[String], out: &mut dyn Write) -> Result<Status, SessionError> {
        let usage = || SessionError::Usage("prove --bound N [--emit FILE] \"<sequent>\"".into());
        let mut bound = None;
        let mut emit = None;
        let mut text = None;
        let mut it = args.iter();
        while let Some(a) = it.next() {
            match a.as_str() {
                "--bound" => bound = Some(number(it.next(), "--bound")?),
                "--emit" => emit = Some(it.next().ok_or_else(usage)?.clone()),
                _ if text.is_none() => text = Some(a.clone()),
                _ => return Err(usage()),
            }
        }
        let (Some(bound), Some(text)) = (bound, text) else { return Err(usage()) };
        let (l, r) = parse_sequent(&text)?;
        match prove_iterative(&l, &r, bound) {
            Some((n, tree)) => {
                writeln!(out, "Proved with bound {n}").map_err(io_err)?;
                match emit {
                    Some(path) => {
                        fs::write(&path, tree.to_text()).map_err(|err| SessionError::Io { path: path.clone(), err })?;
                        writeln!(out, "Proof written to {path}").map_err(io_err)?;
                    }
                    None => write!(out, "{}", tree.to_text()).map_err(io_err)?,
                }
                Ok(Status::Done)
            }
            None => {
                writeln!(out, "No proof within bound {bound}").map_err(io_err)?;
                Ok(Status::Negative)
            }
        }
    }

    /// Runs each line of `text`. Stops at the first error or `quit`;
    /// otherwise reports `Negative` if any command was negative.
    pub fn run_script(&mut self, text: &str, out: &mut dyn Write) -> Result<Status, SessionError> {
        let mut status = Status::Done;
        for line in text.lines() {
            match self.execute(line, out)? {
                Status::Quit => return Ok(Status::Quit),
                Status::Negative => status = Status::Negative,
                Status::Done => {}
            }
        }
        Ok(status)
    }
}

fn io_err(err: io::Error) -> SessionError {
    SessionError::Io { path: "<output>".into(), err }
}

fn read_file(path: &str) -> Result<String, SessionError> {
    fs::read_to_string(Path::new(path)).map_err(|err| SessionError::Io { path: path.to_string(), err })
}

pub const HELP: &str = "\
goal \"<F>\"                        read the goal |- F
goalseq \"<A;...|-B;...>\"          read a sequent
step                              one proof step
steps N                           up to N proof steps
run [--max-steps N]               steps until proved or stuck
fail N \"<F>\"                      expect F unproved after N steps
prove --bound N [--emit FILE] \"<sequent>\"
check FILE                        check a proof file
script FILE                       run commands from a file
quit";

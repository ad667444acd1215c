use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use super::builtins::FUNCTIONS;
use super::{CliError, OutputMode, Session};

/// One printed result or assertion of a script.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    /// 1-based source line.
    pub line: usize,
    pub source: String,
    pub output: Option<String>,
    pub assertion: Option<bool>,
}

/// Outcome of running a script.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub entries: Vec<Entry>,
    /// First error, which stops the run.
    pub error: Option<(usize, CliError)>,
}

impl Report {
    pub fn failed_assertions(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.assertion == Some(false)).map(|e| e.line).collect()
    }

    pub fn assertion_count(&self) -> usize {
        self.entries.iter().filter(|e| e.assertion.is_some()).count()
    }

    /// 0 when everything ran and every assertion held, 1 on a failed
    /// assertion, 2 on an error.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            2
        } else if !self.failed_assertions().is_empty() {
            1
        } else {
            0
        }
    }

    /// Rendered outputs in order, as the REPL would print them.
    pub fn outputs(&self) -> Vec<String> {
        self.entries.iter().filter_map(|e| e.output.clone()).collect()
    }

    /// Human-readable report. Empty for a script with no statements.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let _ = writeln!(s, "[{}] {}", e.line, e.source);
            match e.assertion {
                Some(true) => s.push_str("    assertZero: ok\n"),
                Some(false) => {
                    let _ = writeln!(s, "    assertZero: FAILED at line {}", e.line);
                }
                None => {}
            }
            if let Some(out) = &e.output {
                for l in out.lines() {
                    let _ = writeln!(s, "    {l}");
                }
            }
        }
        let n = self.assertion_count();
        if n > 0 {
            let failed = self.failed_assertions();
            let _ = writeln!(s, "assertions: {} passed, {} failed", n - failed.len(), failed.len());
        }
        if let Some((line, err)) = &self.error {
            let _ = writeln!(s, "error at line {line}: {err}");
        }
        s
    }
}

/// Runs a script in a fresh session. Lines hold `;`/`$`-separated
/// statements; `#` starts a comment.
pub fn run_script(src: &str, mode: OutputMode) -> Report {
    let mut session = Session::new();
    session.set_mode(mode);
    run_in(&mut session, src)
}

pub(super) fn run_in(session: &mut Session, src: &str) -> Report {
    let mut entries = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let lineno = i + 1;
        let outcomes = match session.run_line(line) {
            Ok(o) => o,
            Err(e) => return Report { entries, error: Some((lineno, e)) },
        };
        for o in outcomes {
            if o.output.is_some() || o.assertion.is_some() {
                entries.push(Entry { line: lineno, source: line.trim().to_string(), output: o.output, assertion: o.assertion });
            }
        }
    }
    Report { entries, error: None }
}

/// Line-at-a-time driver sharing [`Session::run_line`] with the batch runner.
#[derive(Debug, Default)]
pub struct Repl {
    pub session: Session,
}

impl Repl {
    pub fn new() -> Self {
        Self::default()
    }

    /// Feeds one line, returning what the REPL prints for it.
    pub fn feed(&mut self, line: &str) -> Vec<String> {
        match line.trim() {
            ":help" => return vec![format!("functions: {}", FUNCTIONS.join(", "))],
            ":bindings" => {
                let mode = self.session.mode();
                let basis = self.session.basis().to_string();
                return self
                    .session
                    .bindings()
                    .iter()
                    .map(|(k, v)| format!("{k}: {}", v.render(mode, &basis).unwrap_or_default()))
                    .collect();
            }
            _ => {}
        }
        match self.session.run_line(line) {
            Ok(outcomes) => outcomes
                .into_iter()
                .flat_map(|o| {
                    let mark = match o.assertion {
                        Some(false) => Some("assertZero: FAILED".to_string()),
                        _ => None,
                    };
                    mark.into_iter().chain(o.output)
                })
                .collect(),
            Err(e) => vec![format!("error: {e}")],
        }
    }

    /// Reads lines until EOF or `:quit`, printing a prompt when `prompt` is set.
    pub fn run(&mut self, input: impl BufRead, mut out: impl Write, prompt: bool) -> io::Result<()> {
        if prompt {
            write!(out, "cliff> ")?;
            out.flush()?;
        }
        for line in input.lines() {
            let line = line?;
            if line.trim() == ":quit" {
                break;
            }
            for l in self.feed(&line) {
                writeln!(out, "{l}")?;
            }
            if prompt {
                write!(out, "cliff> ")?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

//! Line-oriented interactive loop.

use std::io::{BufRead, Write};

use crate::bindings;
use crate::error::CliError;
use crate::session::{parse_signature, Outcome, Session};
use crate::table::print_table;

const HELP: &str = "\
expressions: e1 e2, a^b, a <| b, a |> b, a % b, ~a, !a, -a, a.dual, name = expr
functions:   grade exp inv norm project reject meet join point translator apply
             reflect rev invol conj dual undual
commands:    :sig p q r   :tol x   :prec n   :vars   :table
             :save FILE   :load FILE   :help   :quit";

/// What the loop should do after a line.
#[derive(Debug, PartialEq)]
pub enum Step {
    Continue,
    Quit,
}

/// Handle one line, writing any output to `out`.
pub fn handle_line(session: &mut Session, line: &str, out: &mut dyn Write) -> std::io::Result<Step> {
    let line = line.trim();
    if line.is_empty() {
        return Ok(Step::Continue);
    }
    if let Some(cmd) = line.strip_prefix(':') {
        return command(session, cmd, out);
    }
    match session.run(line) {
        Ok(Outcome::Value(v)) => writeln!(out, "{}", session.show(&v))?,
        Ok(Outcome::Assigned(name, v)) => writeln!(out, "{name} = {}", session.show(&v))?,
        Err(e) => writeln!(out, "error: {e}")?,
    }
    Ok(Step::Continue)
}

fn command(session: &mut Session, cmd: &str, out: &mut dyn Write) -> std::io::Result<Step> {
    let (name, rest) = cmd.split_once(char::is_whitespace).unwrap_or((cmd, ""));
    let rest = rest.trim();
    let result: Result<Option<String>, CliError> = match name {
        "q" | "quit" | "exit" => return Ok(Step::Quit),
        "help" => Ok(Some(HELP.to_string())),
        "sig" if rest.is_empty() => Ok(Some(session.signature().to_string())),
        "sig" => parse_signature(rest).map(|s| {
            session.set_signature(s);
            Some(s.to_string())
        }),
        "tol" => rest
            .parse::<f64>()
            .ok()
            .filter(|t| *t >= 0.0 && t.is_finite())
            .map(|t| {
                session.tolerance.abs = t;
                None
            })
            .ok_or_else(|| CliError::Usage(format!("bad tolerance `{rest}`"))),
        "prec" => rest
            .parse::<usize>()
            .ok()
            .filter(|p| (1..=17).contains(p))
            .map(|p| {
                session.precision = p;
                None
            })
            .ok_or_else(|| CliError::Usage(format!("precision must be 1..17, got `{rest}`"))),
        "vars" => Ok(Some(
            session.vars().iter().map(|(k, v)| format!("{k} = {}", session.show(v))).collect::<Vec<_>>().join("\n"),
        )),
        "table" => print_table(session.signature()).map(|t| Some(t.trim_end().to_string())),
        "save" if !rest.is_empty() => bindings::export(session)
            .and_then(|text| std::fs::write(rest, text).map_err(|e| CliError::Io(e.to_string())))
            .map(|_| None),
        "load" if !rest.is_empty() => std::fs::read_to_string(rest)
            .map_err(|e| CliError::Io(e.to_string()))
            .and_then(|text| bindings::import(session, &text))
            .map(|n| Some(format!("loaded {n} binding(s) in {}", session.signature()))),
        _ => Err(CliError::Usage(format!("unknown command `:{cmd}` (try :help)"))),
    };
    match result {
        Ok(Some(text)) if !text.is_empty() => writeln!(out, "{text}")?,
        Ok(_) => {}
        Err(e) => writeln!(out, "error: {e}")?,
    }
    Ok(Step::Continue)
}

/// Run until end of input or `:quit`.
pub fn run(session: &mut Session, input: &mut dyn BufRead, out: &mut dyn Write, prompt: bool) -> std::io::Result<()> {
    let mut line = String::new();
    loop {
        if prompt {
            write!(out, "{}> ", session.signature())?;
            out.flush()?;
        }
        line.clear();
        if input.read_line(&mut line)? == 0 {
            return Ok(());
        }
        if handle_line(session, &line, out)? == Step::Quit {
            return Ok(());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transcript(input: &str) -> String {
        let mut s = Session::new(parse_signature("2,0,0").unwrap());
        let mut out = Vec::new();
        run(&mut s, &mut input.as_bytes(), &mut out, false).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn session_flow() {
        let out = transcript("e1 e2\n:sig 3 0 0\na = e1^e2\na.dual\n:vars\nb\n:quit\ne1\n");
        assert_eq!(
            out,
            "e12\nCl(3,0,0)\na = e12\ne3\na = e12\nerror: evaluation error at column 1: unknown identifier `b`\n"
        );
    }

    #[test]
    fn settings() {
        let out = transcript(":prec 3\n1/3\npi\n:prec 0\n:tol -1\n:bogus\n");
        assert!(out.starts_with("error: syntax error"), "{out}");
        assert!(out.contains("3.14\n"));
        assert_eq!(out.matches("error:").count(), 4);
    }
}

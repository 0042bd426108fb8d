use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use clifford_cli::{bindings, parse_signature, print_table, repl, CliError, Outcome, Session};
use clifford_core::Signature;

/// Clifford algebra calculator.
#[derive(Parser)]
#[command(name = "clif", version)]
struct Cli {
    /// Relative size below which result coefficients count as zero.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    /// Significant digits in printed results.
    #[arg(long, short = 'p', global = true, default_value_t = clifford_cli::DEFAULT_PRECISION, value_parser = precision_arg)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SigArg {
    /// Signature as p,q,r.
    #[arg(short, long, default_value = "3,0,0", value_parser = sig_arg)]
    sig: Signature,
}

#[derive(Subcommand)]
enum Command {
    /// Interactive session.
    Repl {
        #[command(flatten)]
        sig: SigArg,
    },
    /// Evaluate expressions in order and print each result.
    Eval {
        #[command(flatten)]
        sig: SigArg,
        /// Expression or assignment; may be repeated.
        #[arg(short, long = "expr", required = true)]
        expr: Vec<String>,
        /// Start from the bindings in this JSON file.
        #[arg(long)]
        load: Option<PathBuf>,
    },
    /// Print the multiplication table of the basis blades.
    Table {
        #[command(flatten)]
        sig: SigArg,
    },
    /// Import or export named multivectors as JSON.
    #[command(subcommand)]
    Json(JsonCommand),
}

#[derive(Subcommand)]
enum JsonCommand {
    /// Evaluate assignments and write the resulting bindings as JSON.
    Export {
        #[command(flatten)]
        sig: SigArg,
        #[arg(short, long = "expr")]
        expr: Vec<String>,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Load bindings, then print them or evaluate expressions against them.
    Import {
        file: PathBuf,
        #[arg(short, long = "expr")]
        expr: Vec<String>,
    },
}

fn sig_arg(s: &str) -> Result<Signature, String> {
    parse_signature(s).map_err(|e| e.to_string())
}

fn precision_arg(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(p) if (1..=17).contains(&p) => Ok(p),
        _ => Err(format!("precision must be an integer in 1..=17, got `{s}`")),
    }
}

fn session(cli: &Cli, sig: Signature) -> Result<Session, CliError> {
    if !(cli.tol >= 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!("bad tolerance {}", cli.tol)));
    }
    let mut s = Session::new(sig);
    s.tolerance.abs = cli.tol;
    s.precision = cli.precision;
    Ok(s)
}

fn run_exprs(session: &mut Session, exprs: &[String], out: &mut dyn Write) -> Result<(), CliError> {
    for e in exprs {
        let line = match session.run(e)? {
            Outcome::Value(v) => session.show(&v),
            Outcome::Assigned(name, v) => format!("{name} = {}", session.show(&v)),
        };
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn dispatch(cli: &Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Repl { sig } => {
            let mut s = session(cli, sig.sig)?;
            let stdin = io::stdin();
            let prompt = stdin.is_terminal();
            repl::run(&mut s, &mut stdin.lock(), &mut out, prompt).map_err(io_err)
        }
        Command::Eval { sig, expr, load } => {
            let mut s = session(cli, sig.sig)?;
            if let Some(path) = load {
                bindings::import(&mut s, &read(path)?)?;
            }
            run_exprs(&mut s, expr, &mut out)
        }
        Command::Table { sig } => {
            let text = print_table(sig.sig)?;
            out.write_all(text.as_bytes()).map_err(io_err)
        }
        Command::Json(JsonCommand::Export { sig, expr, output }) => {
            let mut s = session(cli, sig.sig)?;
            run_exprs(&mut s, expr, &mut io::sink())?;
            let text = bindings::export(&s)?;
            match output {
                Some(path) => std::fs::write(path, text + "\n").map_err(io_err),
                None => writeln!(out, "{text}").map_err(io_err),
            }
        }
        Command::Json(JsonCommand::Import { file, expr }) => {
            let mut s = session(cli, Signature::euclidean(3).expect("valid"))?;
            bindings::import(&mut s, &read(file)?)?;
            if expr.is_empty() {
                for (name, v) in s.vars() {
                    writeln!(out, "{name} = {}", s.show(v)).map_err(io_err)?;
                }
                Ok(())
            } else {
                run_exprs(&mut s, expr, &mut out)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

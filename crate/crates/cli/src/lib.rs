//! Expression language over `clifford-core`: lexer, parser, evaluator,
//! multiplication tables and JSON bindings, shared by the `clif` binary.

pub mod bindings;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod repl;
pub mod session;
pub mod table;

pub use error::{CliError, EvalError, SyntaxError};
pub use session::{parse_signature, Outcome, Session, DEFAULT_PRECISION};
pub use table::print_table;

use clifford_core::Signature;

/// Evaluate one line in a fresh session and render the result.
pub fn eval_line(sig: Signature, line: &str) -> Result<String, CliError> {
    let mut session = Session::new(sig);
    let out = session.run(line)?;
    Ok(session.show(out.value()))
}

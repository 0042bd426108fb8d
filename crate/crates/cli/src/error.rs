use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct SyntaxError {
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        SyntaxError { column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("evaluation error at column {column}: {message}")]
pub struct EvalError {
    pub column: usize,
    pub message: String,
}

impl EvalError {
    pub fn new(column: usize, message: impl Into<String>) -> Self {
        EvalError { column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// Process exit status: 1 for syntax and usage errors, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax(_) | CliError::Usage(_) => 1,
            CliError::Eval(_) | CliError::Io(_) => 2,
        }
    }
}

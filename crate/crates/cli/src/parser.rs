//! Recursive-descent parser.
//!
//! ```text
//! statement := ident '=' expr | expr
//! expr      := scalar (('+' | '-') scalar)*
//! scalar    := contract ('%' contract)*
//! contract  := outer (('<|' | '|>') outer)*
//! outer     := product ('^' product)*
//! product   := factor (('*')? factor)*      juxtaposition is the geometric product
//! factor    := ('-' | '~' | '!')* atom ('.dual')?
//! atom      := number | blade | ident | ident '(' args ')' | '(' expr ')'
//! ```

use crate::error::SyntaxError;
use crate::lexer::{tokenize, Tok, Token};

const MAX_DEPTH: usize = 64;
/// Longest accepted line, in tokens; bounds the height of the tree.
const MAX_TOKENS: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Neg,
    Reverse,
    Involute,
    Dual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Geometric,
    Outer,
    LeftContract,
    RightContract,
    Scalar,
    Add,
    Sub,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Number(f64),
    /// Indices in the order written; `e31` is `e3 e1`.
    Blade(Vec<usize>),
    Ident(String),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    /// 1-based column of the node's first character.
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Assign { name: String, col: usize, value: Expr },
    Expr(Expr),
}

/// Built-in functions and their argument counts.
pub const FUNCTIONS: &[(&str, usize)] = &[
    ("grade", 2),
    ("exp", 1),
    ("inv", 1),
    ("norm", 1),
    ("project", 2),
    ("reject", 2),
    ("meet", 2),
    ("join", 2),
    ("point", 3),
    ("translator", 3),
    ("apply", 2),
    ("reflect", 2),
    ("rev", 1),
    ("invol", 1),
    ("conj", 1),
    ("dual", 1),
    ("undual", 1),
];

/// Names that evaluate to fixed values and cannot be rebound.
pub const CONSTANTS: &[&str] = &["pi", "tau", "I", "einf", "eo"];

pub fn is_reserved(name: &str) -> bool {
    CONSTANTS.contains(&name) || FUNCTIONS.iter().any(|(f, _)| *f == name)
}

/// Parse one input line for an algebra of dimension `dim`.
pub fn parse(input: &str, dim: usize) -> Result<Statement, SyntaxError> {
    let tokens = tokenize(input, dim)?;
    if let Some(t) = tokens.get(MAX_TOKENS) {
        return Err(SyntaxError::new(t.col, format!("expression longer than {MAX_TOKENS} tokens")));
    }
    let end = input.chars().count() + 1;
    let mut p = Parser { tokens, pos: 0, dim, end, depth: 0 };
    let stmt = p.statement()?;
    if let Some(t) = p.peek() {
        return Err(SyntaxError::new(t.col, format!("unexpected {}", t.tok.describe())));
    }
    Ok(stmt)
}

/// Parse a bare expression (assignments rejected).
pub fn parse_expr(input: &str, dim: usize) -> Result<Expr, SyntaxError> {
    match parse(input, dim)? {
        Statement::Expr(e) => Ok(e),
        Statement::Assign { col, .. } => Err(SyntaxError::new(col, "assignment not allowed here")),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    dim: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_tok(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.peek().map_or(self.end, |t| t.col)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), SyntaxError> {
        match self.next() {
            Some(t) if t.tok == want => Ok(()),
            Some(t) => {
                Err(SyntaxError::new(t.col, format!("expected {}, found {}", want.describe(), t.tok.describe())))
            }
            None => Err(SyntaxError::new(self.end, format!("expected {}, found end of input", want.describe()))),
        }
    }

    fn statement(&mut self) -> Result<Statement, SyntaxError> {
        if let (Some(Tok::Ident(name)), Some(Tok::Assign)) =
            (self.peek_tok().cloned(), self.tokens.get(self.pos + 1).map(|t| &t.tok))
        {
            let col = self.col();
            if is_reserved(&name) {
                return Err(SyntaxError::new(col, format!("`{name}` is reserved")));
            }
            self.pos += 2;
            let value = self.expr()?;
            return Ok(Statement::Assign { name, col, value });
        }
        if self.tokens.is_empty() {
            return Err(SyntaxError::new(1, "empty input"));
        }
        Ok(Statement::Expr(self.expr()?))
    }

    fn descend(&mut self) -> Result<(), SyntaxError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(SyntaxError::new(self.col(), "expression nested too deeply"));
        }
        Ok(())
    }

    fn binary_level(
        &mut self,
        ops: &[(Tok, BinOp)],
        next: fn(&mut Self) -> Result<Expr, SyntaxError>,
    ) -> Result<Expr, SyntaxError> {
        let mut lhs = next(self)?;
        while let Some(op) = self.peek_tok().and_then(|t| ops.iter().find(|(k, _)| k == t).map(|(_, op)| *op)) {
            self.pos += 1;
            let rhs = next(self)?;
            let col = lhs.col;
            lhs = Expr { kind: ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)), col };
        }
        Ok(lhs)
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        self.descend()?;
        let e = self.binary_level(&[(Tok::Plus, BinOp::Add), (Tok::Minus, BinOp::Sub)], Self::scalar);
        self.depth -= 1;
        e
    }

    fn scalar(&mut self) -> Result<Expr, SyntaxError> {
        self.binary_level(&[(Tok::Percent, BinOp::Scalar)], Self::contract)
    }

    fn contract(&mut self) -> Result<Expr, SyntaxError> {
        self.binary_level(
            &[(Tok::LeftContract, BinOp::LeftContract), (Tok::RightContract, BinOp::RightContract)],
            Self::outer,
        )
    }

    fn outer(&mut self) -> Result<Expr, SyntaxError> {
        self.binary_level(&[(Tok::Caret, BinOp::Outer)], Self::product)
    }

    fn product(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek_tok() {
                Some(Tok::Star) => self.pos += 1,
                Some(Tok::Number(_) | Tok::Blade(_) | Tok::Ident(_) | Tok::LParen | Tok::Tilde | Tok::Bang) => {}
                _ => break,
            }
            let rhs = self.factor()?;
            let col = lhs.col;
            lhs = Expr { kind: ExprKind::Binary(BinOp::Geometric, Box::new(lhs), Box::new(rhs)), col };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        let op = match self.peek_tok() {
            Some(Tok::Minus) => Some(UnaryOp::Neg),
            Some(Tok::Tilde) => Some(UnaryOp::Reverse),
            Some(Tok::Bang) => Some(UnaryOp::Involute),
            _ => None,
        };
        if let Some(op) = op {
            let col = self.col();
            self.pos += 1;
            self.descend()?;
            let inner = self.factor()?;
            self.depth -= 1;
            return Ok(Expr { kind: ExprKind::Unary(op, Box::new(inner)), col });
        }
        let atom = self.atom()?;
        if self.peek_tok() == Some(&Tok::Dot) {
            let dot = self.col();
            self.pos += 1;
            match self.next() {
                Some(Token { tok: Tok::Ident(s), .. }) if s == "dual" => {}
                _ => return Err(SyntaxError::new(dot, "expected `.dual`")),
            }
            let col = atom.col;
            return Ok(Expr { kind: ExprKind::Unary(UnaryOp::Dual, Box::new(atom)), col });
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        let Some(t) = self.next() else {
            return Err(SyntaxError::new(self.end, "unexpected end of input"));
        };
        let col = t.col;
        let kind = match t.tok {
            Tok::Number(v) => ExprKind::Number(v),
            Tok::Blade(indices) => {
                self.check_blade(&indices, col)?;
                ExprKind::Blade(indices)
            }
            Tok::Ident(name) if self.peek_tok() == Some(&Tok::LParen) => {
                let Some(&(_, arity)) = FUNCTIONS.iter().find(|(f, _)| *f == name) else {
                    return Err(SyntaxError::new(col, format!("unknown function `{name}`")));
                };
                self.pos += 1;
                self.descend()?;
                let mut args = Vec::new();
                if self.peek_tok() != Some(&Tok::RParen) {
                    args.push(self.expr()?);
                    while self.peek_tok() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                }
                self.expect(Tok::RParen)?;
                self.depth -= 1;
                if args.len() != arity {
                    return Err(SyntaxError::new(
                        col,
                        format!("`{name}` takes {arity} argument(s), got {}", args.len()),
                    ));
                }
                ExprKind::Call(name, args)
            }
            Tok::Ident(name) => ExprKind::Ident(name),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                return Ok(Expr { kind: inner.kind, col });
            }
            other => return Err(SyntaxError::new(col, format!("unexpected {}", other.describe()))),
        };
        Ok(Expr { kind, col })
    }

    fn check_blade(&self, indices: &[usize], col: usize) -> Result<(), SyntaxError> {
        for (i, &k) in indices.iter().enumerate() {
            if k == 0 || k > self.dim {
                return Err(SyntaxError::new(col, format!("e{k} is outside an algebra of dimension {}", self.dim)));
            }
            if indices[..i].contains(&k) {
                return Err(SyntaxError::new(col, format!("index {k} repeated in blade literal")));
            }
        }
        Ok(())
    }
}

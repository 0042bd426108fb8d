//! Tokenizer for the expression language.

use crate::error::SyntaxError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Number(f64),
    /// Basis vector indices (1-based) in the order written.
    Blade(Vec<usize>),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LeftContract,
    RightContract,
    Percent,
    Tilde,
    Bang,
    Dot,
    Comma,
    Assign,
    LParen,
    RParen,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Number(v) => format!("number {v}"),
            Tok::Blade(ix) => format!("blade e{}", ix.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LeftContract => "`<|`".into(),
            Tok::RightContract => "`|>`".into(),
            Tok::Percent => "`%`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Assign => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

/// A token and its 1-based column.
#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub col: usize,
}

/// Split `input` into tokens.
///
/// `dim` decides how blade literals read: below 10 every digit is an index
/// (`e123`); from 10 up a literal without commas is a single index (`e12`)
/// and indices are joined by commas with no spaces (`e1,11`).
pub fn tokenize(input: &str, dim: usize) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '%' => Some(Tok::Percent),
            '~' => Some(Tok::Tilde),
            '!' => Some(Tok::Bang),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Assign),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, col });
            i += 1;
            continue;
        }
        if c == '<' || c == '|' {
            let tok = match (c, chars.get(i + 1)) {
                ('<', Some('|')) => Tok::LeftContract,
                ('|', Some('>')) => Tok::RightContract,
                _ => return Err(SyntaxError::new(col, format!("unexpected character `{c}`"))),
            };
            out.push(Token { tok, col });
            i += 2;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text.parse().map_err(|_| SyntaxError::new(col, format!("bad number `{text}`")))?;
            if !value.is_finite() {
                return Err(SyntaxError::new(col, "number out of range"));
            }
            out.push(Token { tok: Tok::Number(value), col });
            continue;
        }
        if c == '.' {
            out.push(Token { tok: Tok::Dot, col });
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            let digits = &word[1..];
            if word.starts_with('e') && !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
                let mut indices = Vec::new();
                if dim < 10 {
                    indices.extend(digits.bytes().map(|b| (b - b'0') as usize));
                } else {
                    indices.push(parse_index(digits, col)?);
                    // comma-joined continuation: `,` directly followed by digits
                    while i + 1 < chars.len() && chars[i] == ',' && chars[i + 1].is_ascii_digit() {
                        let s = i + 1;
                        i = s;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        let part: String = chars[s..i].iter().collect();
                        indices.push(parse_index(&part, s + 1)?);
                    }
                }
                out.push(Token { tok: Tok::Blade(indices), col });
            } else {
                out.push(Token { tok: Tok::Ident(word), col });
            }
            continue;
        }
        return Err(SyntaxError::new(col, format!("unexpected character `{c}`")));
    }
    Ok(out)
}

fn parse_index(s: &str, col: usize) -> Result<usize, SyntaxError> {
    s.parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(|| SyntaxError::new(col, format!("bad blade index `{s}`")))
}

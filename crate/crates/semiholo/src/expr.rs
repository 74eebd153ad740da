//! Small expression language over codebook names.
//!
//! ```text
//! expr  := term ('+' term)*
//! term  := atom ('*' atom)*
//! atom  := name | 'inv' '(' name ')' | '(' expr ')'
//! ```
//!
//! `*` is binding and `+` superposition; both associate to the left and `*`
//! binds tighter.

use std::fmt;

use semiholo_core::algebra::{bind, superpose};
use semiholo_core::{Chain, Codebook, Error};

use crate::error::{CliError, Result};

/// Parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// A codebook entry.
    Name(String),
    /// Inverse of a codebook entry.
    Inv(String),
    /// Binding.
    Bind(Box<Expr>, Box<Expr>),
    /// Superposition.
    Superpose(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Star,
    Plus,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "name {s:?}"),
            Tok::Star => f.write_str("'*'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

// Tokens paired with their 1-based column.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let tok = match c {
            _ if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident(chars[i]) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            _ => {
                return Err(CliError::Syntax { column: col, message: format!("unexpected character {c:?}") })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let (tok, column) = &self.toks[self.pos];
        Err(CliError::Syntax { column: *column, message: format!("expected {expected}, found {tok}") })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            lhs = Expr::Superpose(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Bind(Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    fn name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail("a name"),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&tok.to_string())
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                if s == "inv" && *self.peek() == Tok::LParen {
                    self.bump();
                    let n = self.name()?;
                    self.expect(Tok::RParen)?;
                    Ok(Expr::Inv(n))
                } else {
                    Ok(Expr::Name(s))
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            _ => self.fail("a name or '('"),
        }
    }
}

/// Parses an expression.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail("'+', '*' or end of input");
    }
    Ok(e)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Inv(n) => write!(f, "inv({n})"),
            Expr::Superpose(a, b) => match **b {
                Expr::Superpose(..) => write!(f, "{a} + ({b})"),
                _ => write!(f, "{a} + {b}"),
            },
            Expr::Bind(a, b) => {
                match **a {
                    Expr::Superpose(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                f.write_str("*")?;
                match **b {
                    Expr::Superpose(..) | Expr::Bind(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

/// Evaluates an expression against a codebook.
pub fn eval(e: &Expr, cb: &Codebook) -> Result<Chain> {
    Ok(match e {
        Expr::Name(n) => cb.chain(n)?,
        Expr::Inv(n) => {
            let item = cb.get(n).ok_or_else(|| Error::UnknownName(n.clone()))?;
            Chain::singleton(*cb.params(), item.inverse())?
        }
        Expr::Bind(a, b) => bind(&eval(a, cb)?, &eval(b, cb)?)?,
        Expr::Superpose(a, b) => superpose(&eval(a, cb)?, &eval(b, cb)?)?,
    })
}

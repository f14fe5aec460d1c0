//! Recursive-descent parser for the tangle expression language.
//!
//! ```text
//! tangle := seq
//! seq    := par { ";" par }
//! par    := atom { "*" atom }
//! atom   := "xp" | "xm" | "cup" | "cap" | "id" "(" nat ")" | "(" tangle ")"
//! ```
//!
//! `*` binds tighter than `;`. Keywords are case-insensitive. Positions in
//! errors are byte offsets into the input.

use thiserror::Error;

use super::ast::{ArityError, Generator, TangleExpr};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("at offset {pos}: {source}")]
    Arity {
        pos: usize,
        #[source]
        source: ArityError,
    },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Arity { pos, .. } => *pos,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Nat(usize),
    LParen,
    RParen,
    Semi,
    Star,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Nat(n) => format!("number {n}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | ';' | '*' => {
                chars.next();
                let tok = match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ';' => Tok::Semi,
                    _ => Tok::Star,
                };
                out.push((pos, tok));
            }
            c if c.is_ascii_digit() => {
                let mut end = pos;
                while let Some(&(i, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                let n = text[pos..end].parse().map_err(|_| ParseError::Syntax {
                    pos,
                    message: format!("number `{}` is too large", &text[pos..end]),
                })?;
                out.push((pos, Tok::Nat(n)));
            }
            c if c.is_ascii_alphabetic() => {
                let mut end = pos;
                while let Some(&(i, d)) = chars.peek() {
                    if !(d.is_ascii_alphanumeric() || d == '_') {
                        break;
                    }
                    end = i + d.len_utf8();
                    chars.next();
                }
                out.push((pos, Tok::Word(text[pos..end].to_ascii_lowercase())));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push((text.len(), Tok::Eof));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", want.describe())))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        ParseError::Syntax { pos: self.pos(), message: format!("{what}, found {}", self.peek().describe()) }
    }

    fn seq(&mut self) -> Result<TangleExpr, ParseError> {
        let mut acc = self.par()?;
        while *self.peek() == Tok::Semi {
            let pos = self.pos();
            self.bump();
            let upper = self.par()?;
            acc = TangleExpr::then(acc, upper).map_err(|source| ParseError::Arity { pos, source })?;
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<TangleExpr, ParseError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.atom()?;
            acc = TangleExpr::beside(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<TangleExpr, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.seq()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Word(w) => {
                let gen = match w.as_str() {
                    "xp" => Generator::Xp,
                    "xm" => Generator::Xm,
                    "cup" => Generator::Cup,
                    "cap" => Generator::Cap,
                    "id" => {
                        self.bump();
                        self.expect(Tok::LParen)?;
                        let n = match self.peek() {
                            Tok::Nat(n) => *n,
                            _ => return Err(self.unexpected("expected a strand count")),
                        };
                        self.bump();
                        self.expect(Tok::RParen)?;
                        return Ok(TangleExpr::id(n));
                    }
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: self.pos(),
                            message: format!(
                                "unknown generator `{w}` (expected xp, xm, cup, cap or id(n))"
                            ),
                        })
                    }
                };
                self.bump();
                Ok(TangleExpr::atom(gen))
            }
            _ => Err(self.unexpected("expected a generator or `(`")),
        }
    }
}

/// Parses and arity-checks a tangle expression.
pub fn parse(text: &str) -> Result<TangleExpr, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let expr = p.seq()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("expected `;`, `*` or end of input"));
    }
    Ok(expr)
}

//! Recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula  := disj ("->" formula)?
//! disj     := conj ("|" conj)*
//! conj     := unary ("&" unary)*
//! unary    := "~" unary | quant | primary
//! quant    := ("forall" | "exists") ident "." formula
//! primary  := "(" formula ")" | ident "(" ident ("," ident)* ")" | ident "=" ident
//! ```
//!
//! Quantifier bodies extend as far right as possible.

use super::formula::{Formula, Hint};
use super::Signature;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    LParen,
    RParen,
    Comma,
    Dot,
    Arrow,
    And,
    Or,
    Not,
    Equals,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, col) = (line, column);
        let push = |out: &mut Vec<Token>, tok| {
            out.push(Token {
                tok,
                line: l,
                column: col,
            })
        };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            column += i - start;
            let tok = match word.as_str() {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word),
            };
            push(&mut out, tok);
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            '&' => Tok::And,
            '|' => Tok::Or,
            '~' => Tok::Not,
            '=' => Tok::Equals,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                column += 1;
                Tok::Arrow
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        push(&mut out, tok);
        i += 1;
        column += 1;
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    sig: &'a Signature,
    /// Bound variable names, innermost last.
    scope: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, t: &Token, message: String) -> Error {
        Error::Parse {
            line: t.line,
            column: t.column,
            message,
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let t = self.next();
        if t.tok == want {
            Ok(())
        } else {
            Err(self.error_at(&t, format!("expected {what}, found {}", describe(&t.tok))))
        }
    }

    fn ident(&mut self) -> Result<(String, Token)> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(name) => Ok((name.clone(), t)),
            other => Err(self.error_at(&t, format!("expected identifier, found {}", describe(other)))),
        }
    }

    fn variable(&self, name: &str) -> Result<usize> {
        self.scope
            .iter()
            .rev()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.next();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.next();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while *self.peek() == Tok::And {
            self.next();
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = *self.peek() == Tok::Forall;
                self.next();
                let (name, _) = self.ident()?;
                self.expect(Tok::Dot, "`.` after bound variable")?;
                self.scope.push(name.clone());
                let body = self.formula();
                self.scope.pop();
                let body = Box::new(body?);
                Ok(if universal {
                    Formula::Forall(Hint(name), body)
                } else {
                    Formula::Exists(Hint(name), body)
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::LParen {
            self.next();
            let f = self.formula()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(f);
        }
        let (name, at) = self.ident()?;
        match self.peek() {
            Tok::LParen => {
                self.next();
                let mut args = Vec::new();
                loop {
                    let (v, _) = self.ident()?;
                    args.push(self.variable(&v)?);
                    match self.next() {
                        Token { tok: Tok::Comma, .. } => continue,
                        Token { tok: Tok::RParen, .. } => break,
                        t => return Err(self.error_at(&t, format!("expected `,` or `)`, found {}", describe(&t.tok)))),
                    }
                }
                let Some(arity) = self.sig.arity(&name) else {
                    return Err(Error::UnknownSymbol(name));
                };
                if arity != args.len() {
                    return Err(Error::ArityMismatch {
                        symbol: name,
                        expected: arity,
                        found: args.len(),
                    });
                }
                Ok(Formula::Atom { symbol: name, args })
            }
            Tok::Equals => {
                self.next();
                let (rhs, _) = self.ident()?;
                Ok(Formula::Eq(self.variable(&name)?, self.variable(&rhs)?))
            }
            other => Err(self.error_at(
                &at,
                format!("expected `(` or `=` after `{name}`, found {}", describe(other)),
            )),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Not => "`~`".into(),
        Tok::Equals => "`=`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses a closed formula over `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
        sig,
        scope: Vec::new(),
    };
    let f = p.formula()?;
    let t = p.next();
    if t.tok != Tok::End {
        return Err(p.error_at(&t, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(f)
}

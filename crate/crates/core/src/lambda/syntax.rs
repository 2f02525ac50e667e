//! Concrete syntax: `\x. body` (or `λx.`), juxtaposition, parentheses.
//! Unbound identifiers are free variables.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::term::LambdaTerm;
use crate::error::{ArsError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Lambda,
    Dot,
    Open,
    Close,
    Ident(String),
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '\\' | 'λ' => {
                chars.next();
                out.push((i, Token::Lambda));
            }
            '.' => {
                chars.next();
                out.push((i, Token::Dot));
            }
            '(' => {
                chars.next();
                out.push((i, Token::Open));
            }
            ')' => {
                chars.next();
                out.push((i, Token::Close));
            }
            c if is_ident_char(c) => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                out.push((i, Token::Ident(name)));
            }
            other => {
                return Err(ArsError::Syntax {
                    offset: i,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
    scope: Vec<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |(o, _)| *o)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ArsError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn term(&mut self) -> Result<LambdaTerm> {
        let mut fun: Option<LambdaTerm> = None;
        loop {
            let arg = match self.peek() {
                Some(Token::Lambda) => self.abstraction()?,
                Some(Token::Open) => {
                    self.at += 1;
                    let t = self.term()?;
                    if self.peek() != Some(&Token::Close) {
                        return self.error("expected `)`");
                    }
                    self.at += 1;
                    t
                }
                Some(Token::Ident(name)) => {
                    let name = name.clone();
                    self.at += 1;
                    self.variable(&name)
                }
                _ => break,
            };
            fun = Some(match fun {
                None => arg,
                Some(f) => LambdaTerm::app(f, arg),
            });
        }
        match fun {
            Some(t) => Ok(t),
            None => self.error("expected a term"),
        }
    }

    fn variable(&self, name: &str) -> LambdaTerm {
        match self.scope.iter().rev().position(|n| *n == name) {
            Some(i) => LambdaTerm::Var(i),
            None => LambdaTerm::free(name),
        }
    }

    fn abstraction(&mut self) -> Result<LambdaTerm> {
        self.at += 1;
        let mut binders = Vec::new();
        while let Some(Token::Ident(name)) = self.peek() {
            binders.push(name.clone());
            self.at += 1;
        }
        if binders.is_empty() {
            return self.error("expected a binder after `\\`");
        }
        if self.peek() != Some(&Token::Dot) {
            return self.error("expected `.`");
        }
        self.at += 1;
        self.scope.extend(binders.iter().cloned());
        let body = self.term();
        for _ in &binders {
            self.scope.pop();
        }
        let mut t = body?;
        for b in binders.iter().rev() {
            t = LambdaTerm::lam(b, t);
        }
        Ok(t)
    }
}

impl FromStr for LambdaTerm {
    type Err = ArsError;

    fn from_str(src: &str) -> Result<Self> {
        parse_term(src)
    }
}

pub fn parse_term(src: &str) -> Result<LambdaTerm> {
    let tokens = lex(src)?;
    let mut parser = Parser {
        tokens,
        at: 0,
        end: src.len(),
        scope: Vec::new(),
    };
    let t = parser.term()?;
    if parser.at != parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(t)
}

fn free_names(t: &LambdaTerm, out: &mut HashSet<Arc<str>>) {
    match t {
        LambdaTerm::Free(n) => {
            out.insert(n.clone());
        }
        LambdaTerm::Var(_) => {}
        LambdaTerm::Lam(_, b) => free_names(b, out),
        LambdaTerm::App(f, a) => {
            free_names(f, out);
            free_names(a, out);
        }
    }
}

struct Printer<'a> {
    free: &'a HashSet<Arc<str>>,
    scope: Vec<String>,
}

impl Printer<'_> {
    fn fresh(&self, hint: &str) -> String {
        let mut name = hint.to_string();
        while self.free.contains(name.as_str()) || self.scope.contains(&name) {
            name.push('\'');
        }
        name
    }

    fn write(&mut self, t: &LambdaTerm, out: &mut String) {
        match t {
            LambdaTerm::Var(i) => match self.scope.len().checked_sub(i + 1) {
                Some(at) => out.push_str(&self.scope[at]),
                None => {
                    // dangling index; print it raw so the output stays readable
                    out.push('#');
                    out.push_str(&i.to_string());
                }
            },
            LambdaTerm::Free(n) => out.push_str(n),
            LambdaTerm::Lam(hint, body) => {
                let name = self.fresh(hint);
                out.push('\\');
                out.push_str(&name);
                out.push_str(". ");
                self.scope.push(name);
                self.write(body, out);
                self.scope.pop();
            }
            LambdaTerm::App(f, a) => {
                if matches!(**f, LambdaTerm::Lam(..)) {
                    out.push('(');
                    self.write(f, out);
                    out.push(')');
                } else {
                    self.write(f, out);
                }
                out.push(' ');
                if matches!(**a, LambdaTerm::Lam(..) | LambdaTerm::App(..)) {
                    out.push('(');
                    self.write(a, out);
                    out.push(')');
                } else {
                    self.write(a, out);
                }
            }
        }
    }
}

pub fn print_term(t: &LambdaTerm) -> String {
    let mut free = HashSet::new();
    free_names(t, &mut free);
    let mut printer = Printer {
        free: &free,
        scope: Vec::new(),
    };
    let mut out = String::new();
    printer.write(t, &mut out);
    out
}

impl fmt::Display for LambdaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

//! Rule files: one rule `lhs -> rhs` per line or `;`-separated item, `#`
//! comments, optional `name:` labels and `@head t1, t2` directives.
//!
//! Single lowercase letters are variables unless they occur as a whole
//! left-hand side (`a -> T` declares the constant `a`).

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use super::term::{Pattern, TrsTerm};
use crate::error::{ArsError, Result};

#[derive(Debug, Clone)]
struct Raw {
    name: String,
    offset: usize,
    args: Option<Vec<Raw>>,
}

struct TermParser<'a> {
    src: &'a str,
    at: usize,
    base: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.src[self.at..].starts_with(char::is_whitespace) {
            self.at += self.src[self.at..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(ArsError::Syntax {
            offset: self.base + self.at,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.src[self.at..].starts_with(c) {
            self.at += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<Raw> {
        self.skip_ws();
        let start = self.at;
        let len = self.src[start..]
            .find(|c: char| !(c.is_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return self.error("expected a symbol");
        }
        self.at += len;
        let name = self.src[start..self.at].to_string();
        let args = if self.eat('(') {
            let mut args = vec![self.term()?];
            while self.eat(',') {
                args.push(self.term()?);
            }
            if !self.eat(')') {
                return self.error("expected `)` or `,`");
            }
            Some(args)
        } else {
            None
        };
        Ok(Raw {
            name,
            offset: self.base + start,
            args,
        })
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at != self.src.len() {
            return self.error("unexpected trailing input");
        }
        Ok(())
    }
}

fn parse_raw(src: &str, base: usize) -> Result<Raw> {
    let mut p = TermParser { src, at: 0, base };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

fn parse_raw_list(src: &str, base: usize) -> Result<Vec<Raw>> {
    let mut p = TermParser { src, at: 0, base };
    let mut out = vec![p.term()?];
    while p.eat(',') {
        out.push(p.term()?);
    }
    p.finish()?;
    Ok(out)
}

fn is_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if c.is_ascii_lowercase())
}

/// Function symbols with their arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    symbols: BTreeMap<Arc<str>, usize>,
}

impl Signature {
    pub fn arity(&self, symbol: &str) -> Option<usize> {
        self.symbols.get(symbol).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(s, a)| (&**s, *a))
    }

    fn declare(&mut self, name: &str, arity: usize, context: &str) -> Result<()> {
        match self.symbols.get(name) {
            Some(&known) if known != arity => Err(ArsError::InvalidRule {
                rule: context.to_string(),
                reason: format!("`{name}` used with arities {known} and {arity}"),
            }),
            Some(_) => Ok(()),
            None => {
                self.symbols.insert(name.into(), arity);
                Ok(())
            }
        }
    }

    /// Parses a ground term over this signature.
    pub fn parse_ground_term(&self, text: &str) -> Result<TrsTerm> {
        self.ground(&parse_raw(text, 0)?)
    }

    fn ground(&self, raw: &Raw) -> Result<TrsTerm> {
        let arity = raw.args.as_ref().map_or(0, Vec::len);
        match self.arity(&raw.name) {
            None => Err(ArsError::UnknownSymbol(raw.name.clone())),
            Some(expected) if expected != arity => Err(ArsError::Syntax {
                offset: raw.offset,
                message: format!("`{}` expects {expected} arguments, got {arity}", raw.name),
            }),
            Some(_) => Ok(TrsTerm {
                head: raw.name.as_str().into(),
                args: raw
                    .args
                    .iter()
                    .flatten()
                    .map(|a| self.ground(a))
                    .collect::<Result<_>>()?,
            }),
        }
    }
}

/// A named rewrite rule `lhs -> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub name: String,
    pub lhs: Pattern,
    pub rhs: Pattern,
}

/// A parsed rule file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RuleFile {
    pub signature: Signature,
    pub rules: Vec<Rule>,
    pub head_values: Vec<TrsTerm>,
}

struct Item<'a> {
    text: &'a str,
    offset: usize,
}

fn items(text: &str) -> Vec<Item<'_>> {
    let mut out = Vec::new();
    let mut line_start = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let mut item_start = 0;
        for piece in content.split(';') {
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                let lead = piece.len() - piece.trim_start().len();
                out.push(Item {
                    text: trimmed,
                    offset: line_start + item_start + lead,
                });
            }
            item_start += piece.len() + 1;
        }
        line_start += line.len();
    }
    out
}

fn to_pattern(raw: &Raw, constants: &HashSet<String>) -> Pattern {
    match &raw.args {
        None if is_variable_name(&raw.name) && !constants.contains(&raw.name) => Pattern::Var(raw.name.as_str().into()),
        args => Pattern::Fun(
            raw.name.as_str().into(),
            args.iter().flatten().map(|a| to_pattern(a, constants)).collect(),
        ),
    }
}

fn declare_pattern(sig: &mut Signature, p: &Pattern, context: &str) -> Result<()> {
    if let Pattern::Fun(f, args) = p {
        sig.declare(f, args.len(), context)?;
        for a in args {
            declare_pattern(sig, a, context)?;
        }
    }
    Ok(())
}

/// Parses and validates a rule file.
pub fn parse_rule_file(text: &str) -> Result<RuleFile> {
    let mut raw_rules = Vec::new();
    let mut raw_heads = Vec::new();
    for item in items(text) {
        if let Some(rest) = item.text.strip_prefix("@head") {
            raw_heads.extend(parse_raw_list(rest, item.offset + 5)?);
            continue;
        }
        let Some(arrow) = item.text.find("->") else {
            return Err(ArsError::Syntax {
                offset: item.offset,
                message: format!("expected `lhs -> rhs` in `{}`", item.text),
            });
        };
        let (mut lhs_text, rhs_text) = (&item.text[..arrow], &item.text[arrow + 2..]);
        let mut lhs_offset = item.offset;
        let mut name = None;
        if let Some(colon) = lhs_text.find(':') {
            name = Some(lhs_text[..colon].trim().to_string());
            lhs_offset += colon + 1;
            lhs_text = &lhs_text[colon + 1..];
        }
        let lhs = parse_raw(lhs_text, lhs_offset)?;
        let rhs = parse_raw(rhs_text, item.offset + arrow + 2)?;
        raw_rules.push((name, item.text.to_string(), lhs, rhs));
    }

    let constants: HashSet<String> = raw_rules
        .iter()
        .filter(|(_, _, lhs, _)| lhs.args.is_none())
        .map(|(_, _, lhs, _)| lhs.name.clone())
        .collect();

    let mut file = RuleFile::default();
    for (i, (name, text, lhs, rhs)) in raw_rules.into_iter().enumerate() {
        let name = name.unwrap_or_else(|| format!("r{}", i + 1));
        let lhs = to_pattern(&lhs, &constants);
        let rhs = to_pattern(&rhs, &constants);
        if matches!(lhs, Pattern::Var(_)) {
            return Err(ArsError::InvalidRule {
                rule: text,
                reason: "left-hand side is a variable".into(),
            });
        }
        let lhs_vars = lhs.vars();
        let mut seen = HashSet::new();
        for v in &lhs_vars {
            if !seen.insert(v.clone()) {
                return Err(ArsError::NonLeftLinear {
                    rule: text,
                    var: v.to_string(),
                });
            }
        }
        if let Some(v) = rhs.vars().into_iter().find(|v| !seen.contains(v)) {
            return Err(ArsError::InvalidRule {
                rule: text,
                reason: format!("variable `{v}` occurs only on the right-hand side"),
            });
        }
        if file.rules.iter().any(|r| r.name == name) {
            return Err(ArsError::InvalidRule {
                rule: text,
                reason: format!("duplicate rule name `{name}`"),
            });
        }
        declare_pattern(&mut file.signature, &lhs, &text)?;
        declare_pattern(&mut file.signature, &rhs, &text)?;
        file.rules.push(Rule { name, lhs, rhs });
    }
    for raw in raw_heads {
        file.head_values.push(file.signature.ground(&raw)?);
    }
    Ok(file)
}

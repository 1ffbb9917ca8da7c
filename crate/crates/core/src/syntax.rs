//! Concrete term syntax: `label` or `label(child, …)`, `x1…xN` for variables,
//! `eps` for the empty-string constant. Adjunction marks `A!` and `A*` are
//! accepted by the raw parser and interpreted by the TAG reader.

use std::fmt;

use thiserror::Error;

use crate::symbol::{variable_index, Symbol};
use crate::tree::{Label, Term, Tree, Variable};

/// Syntax error with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// A parsed node before symbols are resolved against any alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawNode {
    pub name: String,
    pub bar: bool,
    pub foot: bool,
    pub children: Vec<RawNode>,
    pub line: usize,
    pub column: usize,
}

impl RawNode {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    column0: usize,
}

impl<'a> Cursor<'a> {
    /// `column0` is the 1-based column of `src[0]` within its line.
    pub fn new(src: &'a str, line: usize, column0: usize) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
            line,
            column0,
        }
    }

    pub fn column(&self) -> usize {
        self.column0 + self.pos
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", b as char)))
        }
    }

    pub fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.pos += 1,
            _ => return Err(self.error("expected an identifier")),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.peek() == Some(b'@') {
            self.pos += 1;
            let digits = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if self.pos == digits {
                return Err(self.error("expected digits after `@`"));
            }
        }
        // The slice only contains ASCII bytes checked above.
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    pub fn raw_node(&mut self) -> Result<RawNode, ParseError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column());
        let name = self.ident()?;
        let mut bar = false;
        let mut foot = false;
        if self.peek() == Some(b'!') {
            self.pos += 1;
            bar = true;
        }
        if self.peek() == Some(b'*') {
            self.pos += 1;
            foot = true;
        }
        let mut children = Vec::new();
        if self.eat(b'(') {
            loop {
                children.push(self.raw_node()?);
                if self.eat(b',') {
                    continue;
                }
                self.expect(b')')?;
                break;
            }
        }
        Ok(RawNode {
            name,
            bar,
            foot,
            children,
            line,
            column,
        })
    }

    pub fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|d| d.parse().ok())
            .ok_or_else(|| ParseError::new(self.line, self.column0 + start, "number out of range"))
    }
}

pub(crate) fn raw_to_term(raw: &RawNode) -> Result<Term, ParseError> {
    if raw.bar || raw.foot {
        return Err(raw.error("adjunction marks are only allowed in TAG trees"));
    }
    match variable_index(&raw.name) {
        Some(Ok(i)) => {
            if !raw.children.is_empty() {
                return Err(raw.error(format!("variable `{}` cannot have children", raw.name)));
            }
            Ok(Tree::leaf(Label::Var(Variable::new(i))))
        }
        Some(Err(())) => Err(raw.error(format!("`{}` is not a valid variable", raw.name))),
        None => {
            let children = raw
                .children
                .iter()
                .map(raw_to_term)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Tree::new(Label::Sym(Symbol::new(&raw.name)), children))
        }
    }
}

pub(crate) fn parse_raw(src: &str, line: usize, column0: usize) -> Result<RawNode, ParseError> {
    let mut cur = Cursor::new(src, line, column0);
    let node = cur.raw_node()?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(node)
}

/// Parses a single term written on one line.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    raw_to_term(&parse_raw(src, 1, 1)?)
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl fmt::Display for RawNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        if self.bar {
            write!(f, "!")?;
        }
        if self.foot {
            write!(f, "*")?;
        }
        if !self.children.is_empty() {
            write!(f, "(")?;
            for (i, c) in self.children.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

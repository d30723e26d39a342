//! Text form of a diagram.
//!
//! ```text
//! strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]
//! ```
//!
//! Whitespace is free and `#` starts a comment running to the end of the
//! line. Components may be separated by whitespace or commas. Power groups
//! `( ... )^r` are expanded while parsing; [`print`] never emits them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use super::{Chart, ChartError, Element, Shape, WiringDiagram};
use crate::braid::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Chart(ChartError),
    #[error("{element} does not fit on {strands} strands")]
    IndexOverflow { element: String, strands: usize },
    #[error("{0} has indices out of order")]
    Malformed(String),
    #[error("{0} spans an odd number of strands")]
    NestParity(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(usize),
    Ident(String),
    Punct(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("`{v}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Punct(c) => format!("`{c}`"),
        Tok::End => "end of input".to_string(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let mut bump = |chars: &mut core::iter::Peekable<core::str::Chars<'_>>| {
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut value: usize = 0;
            while let Some(&d) = chars.peek() {
                let Some(v) = d.to_digit(10) else { break };
                value = value
                    .checked_mul(10)
                    .and_then(|x| x.checked_add(v as usize))
                    .ok_or_else(|| ParseError {
                        line: l0,
                        col: c0,
                        kind: ParseErrorKind::Syntax("integer too large".to_string()),
                    })?;
                bump(&mut chars);
            }
            out.push(Token { tok: Tok::Int(value), line: l0, col: c0 });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                bump(&mut chars);
            }
            out.push(Token { tok: Tok::Ident(s), line: l0, col: c0 });
        } else if "[](),;:|^'".contains(c) {
            bump(&mut chars);
            out.push(Token { tok: Tok::Punct(c), line: l0, col: c0 });
        } else {
            return Err(ParseError {
                line: l0,
                col: c0,
                kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
            });
        }
    }
    out.push(Token { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    strands: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err_at(t: &Token, kind: ParseErrorKind) -> ParseError {
        ParseError { line: t.line, col: t.col, kind }
    }

    fn syntax(t: &Token, expected: &str) -> ParseError {
        Self::err_at(t, ParseErrorKind::Syntax(format!("expected {expected}, found {}", describe(&t.tok))))
    }

    fn punct(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Punct(c) {
            Ok(())
        } else {
            Err(Self::syntax(&t, &format!("`{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek().tok == Tok::Punct(c) {
            self.next();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<usize, ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Int(v) => Ok(v),
            _ => Err(Self::syntax(&t, "an integer")),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == word => Ok(()),
            _ => Err(Self::syntax(&t, &format!("`{word}`"))),
        }
    }

    fn header(&mut self) -> Result<Chart, ParseError> {
        self.keyword("strands")?;
        let count_tok = self.peek().clone();
        self.strands = self.int()?;
        if self.strands == 0 {
            return Err(Self::err_at(&count_tok, ParseErrorKind::Chart(ChartError::NoStrands)));
        }
        self.punct(';')?;
        let comps_tok = self.peek().clone();
        self.keyword("comps")?;
        let mut groups: Vec<(String, Vec<usize>)> = Vec::new();
        loop {
            let t = self.next();
            let name = match t.tok {
                Tok::Ident(s) => s,
                _ => return Err(Self::syntax(&t, "a component name")),
            };
            self.punct(':')?;
            let mut list = alloc::vec![self.int()?];
            loop {
                if self.peek().tok != Tok::Punct(',') {
                    break;
                }
                if matches!(self.toks[self.at + 1].tok, Tok::Ident(_)) {
                    self.next();
                    break;
                }
                self.next();
                list.push(self.int()?);
            }
            groups.push((name, list));
            if self.eat(';') {
                break;
            }
            if !matches!(self.peek().tok, Tok::Ident(_)) {
                return Err(Self::syntax(self.peek(), "`;` or another component"));
            }
        }
        Chart::from_groups(self.strands, groups).map_err(|e| Self::err_at(&comps_tok, ParseErrorKind::Chart(e)))
    }

    fn elems(&mut self, out: &mut Vec<Element>, nested: bool) -> Result<(), ParseError> {
        loop {
            match self.peek().tok {
                Tok::End => return Ok(()),
                Tok::Punct(')') if nested => return Ok(()),
                _ => {}
            }
            self.item(out)?;
            match self.peek().tok {
                Tok::Punct(';') => {
                    self.next();
                }
                Tok::End => return Ok(()),
                Tok::Punct(')') if nested => return Ok(()),
                _ => return Err(Self::syntax(self.peek(), "`;`")),
            }
        }
    }

    fn item(&mut self, out: &mut Vec<Element>) -> Result<(), ParseError> {
        let start = self.next();
        let element = match &start.tok {
            Tok::Punct('(') => {
                let mut body = Vec::new();
                self.elems(&mut body, true)?;
                self.punct(')')?;
                self.punct('^')?;
                let r = self.int()?;
                for _ in 0..r {
                    out.extend_from_slice(&body);
                }
                return Ok(());
            }
            Tok::Ident(name) => match name.as_str() {
                "I" => {
                    self.punct('[')?;
                    let i = self.int()?;
                    self.punct(',')?;
                    let j = self.int()?;
                    self.punct(']')?;
                    Element::I { i, j }
                }
                "X" => {
                    self.punct('[')?;
                    let i = self.int()?;
                    self.punct(',')?;
                    let j = self.int()?;
                    self.punct('|')?;
                    let bar = self.peek().clone();
                    let j1 = self.int()?;
                    self.punct(',')?;
                    let k = self.int()?;
                    self.punct(']')?;
                    if j1 != j + 1 {
                        return Err(Self::err_at(
                            &bar,
                            ParseErrorKind::Syntax(format!("grid bottom block must start at {}", j + 1)),
                        ));
                    }
                    Element::X { i, j, k }
                }
                "T" => {
                    self.punct('[')?;
                    let i = self.int()?;
                    self.punct(']')?;
                    Element::T { i }
                }
                "TN" => {
                    self.punct('[')?;
                    let a = self.int()?;
                    self.punct(',')?;
                    let b = self.int()?;
                    self.punct(']')?;
                    Element::TN { a, b }
                }
                "s" => {
                    let i = self.int()?;
                    self.letter(i)
                }
                s if s.len() > 1 && s.starts_with('s') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
                    let i = s[1..].parse::<usize>().map_err(|_| {
                        Self::err_at(&start, ParseErrorKind::Syntax("integer too large".to_string()))
                    })?;
                    self.letter(i)
                }
                _ => return Err(Self::syntax(&start, "an element")),
            },
            _ => return Err(Self::syntax(&start, "an element")),
        };
        let kind = match element.shape(self.strands) {
            Shape::Ok => None,
            Shape::OutOfRange => {
                Some(ParseErrorKind::IndexOverflow { element: element.to_string(), strands: self.strands })
            }
            Shape::Malformed => Some(ParseErrorKind::Malformed(element.to_string())),
            Shape::OddNest => Some(ParseErrorKind::NestParity(element.to_string())),
        };
        if let Some(kind) = kind {
            return Err(Self::err_at(&start, kind));
        }
        out.push(element);
        Ok(())
    }

    fn letter(&mut self, i: usize) -> Element {
        let sign = if self.eat('\'') { Sign::Neg } else { Sign::Pos };
        Element::S { i, sign }
    }
}

/// Reads a diagram. Element indices are checked against the strand count;
/// tangency legality is left to [`validate`](super::validate).
pub fn parse(text: &str) -> Result<WiringDiagram, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, strands: 0 };
    let chart = p.header()?;
    let mut elements = Vec::new();
    p.elems(&mut elements, false)?;
    if p.peek().tok != Tok::End {
        return Err(Parser::syntax(p.peek(), "end of input"));
    }
    Ok(WiringDiagram::new(p.strands, chart, elements).expect("chart built for this strand count"))
}

/// Canonical text: one line, components in declaration order with ascending
/// strands, elements separated by `; `.
pub fn print(d: &WiringDiagram) -> String {
    let mut s = String::new();
    let chart = d.chart();
    write!(s, "strands {}; comps", d.strands()).unwrap();
    for c in 0..chart.component_count() {
        let list: Vec<String> = chart.strands_of(c).iter().map(|x| x.to_string()).collect();
        write!(s, " {}:{}", chart.name(c), list.join(",")).unwrap();
    }
    s.push(';');
    for (idx, e) in d.elements().iter().enumerate() {
        s.push_str(if idx == 0 { " " } else { "; " });
        write!(s, "{e}").unwrap();
    }
    s.push('\n');
    s
}

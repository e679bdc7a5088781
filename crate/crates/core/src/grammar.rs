//! Text grammar for presentations and words:
//!
//! ```text
//! <g1, g2, ... | w1, w2, ...>
//! ```
//!
//! A word is a `*`-separated product of `name`, `name^-1`, `name^k`, and
//! the commutator sugar `[x,y]` (which expands to `x*y*x^-1*y^-1`). The
//! token `1` denotes the empty word and `w^0` normalizes to it. Whitespace
//! is insignificant. Printing is canonical (powers collapsed, no sugar),
//! so parse/print round-trips losslessly on normalized presentations.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::presentation::{Presentation, PresentationError};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    UnexpectedChar { pos: usize, found: char },
    UnexpectedEnd,
    UnknownGenerator(String),
    TrailingInput { pos: usize },
    BadPresentation(PresentationError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::UnexpectedChar { pos, found } => {
                write!(f, "unexpected `{found}` at byte {pos}")
            }
            ParseError::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseError::UnknownGenerator(name) => write!(f, "unknown generator `{name}`"),
            ParseError::TrailingInput { pos } => write!(f, "trailing input at byte {pos}"),
            ParseError::BadPresentation(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ParseError {}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.bump() {
            Some(found) if found == c => Ok(()),
            Some(found) => Err(ParseError::UnexpectedChar {
                pos: self.pos - 1,
                found: found as char,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            Some(&c) => {
                return Err(ParseError::UnexpectedChar {
                    pos: self.pos,
                    found: c as char,
                })
            }
            None => return Err(ParseError::UnexpectedEnd),
        }
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(String::from_utf8(self.src[start..self.pos].to_vec()).unwrap())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let mut neg = false;
        if self.src.get(self.pos) == Some(&b'-') {
            neg = true;
            self.pos += 1;
        }
        let start = self.pos;
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_digit() {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return match self.src.get(self.pos) {
                Some(&c) => Err(ParseError::UnexpectedChar {
                    pos: self.pos,
                    found: c as char,
                }),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let mut v: i64 = 0;
        for &c in &self.src[start..self.pos] {
            v = v * 10 + (c - b'0') as i64;
        }
        Ok(if neg { -v } else { v })
    }
}

fn parse_word_inner(
    lex: &mut Lexer<'_>,
    resolve: &dyn Fn(&str) -> Option<usize>,
) -> Result<Word, ParseError> {
    let mut word = Word::empty();
    loop {
        let factor = parse_factor(lex, resolve)?;
        word = word.multiply(&factor);
        if lex.peek() == Some(b'*') {
            lex.bump();
        } else {
            return Ok(word);
        }
    }
}

fn parse_factor(
    lex: &mut Lexer<'_>,
    resolve: &dyn Fn(&str) -> Option<usize>,
) -> Result<Word, ParseError> {
    let atom = match lex.peek() {
        Some(b'[') => {
            lex.bump();
            let x = parse_word_inner(lex, resolve)?;
            lex.expect(b',')?;
            let y = parse_word_inner(lex, resolve)?;
            lex.expect(b']')?;
            x.commutator(&y)
        }
        Some(b'1') => {
            lex.bump();
            Word::empty()
        }
        _ => {
            let name = lex.name()?;
            let gen = resolve(&name).ok_or(ParseError::UnknownGenerator(name))?;
            Word::gen(gen)
        }
    };
    if lex.peek() == Some(b'^') {
        lex.bump();
        let k = lex.integer()?;
        Ok(atom.pow(k))
    } else {
        Ok(atom)
    }
}

/// Parses a word over the given generator name list.
pub fn parse_word(src: &str, names: &[&str]) -> Result<Word, ParseError> {
    let mut lex = Lexer::new(src);
    let resolve = |n: &str| names.iter().position(|m| *m == n);
    let w = parse_word_inner(&mut lex, &resolve)?;
    lex.skip_ws();
    if lex.pos != lex.src.len() {
        return Err(ParseError::TrailingInput { pos: lex.pos });
    }
    Ok(w)
}

/// Parses a full `<gens | relators>` presentation.
pub fn parse_presentation(src: &str, label: &str) -> Result<Presentation, ParseError> {
    let mut lex = Lexer::new(src);
    lex.expect(b'<')?;
    let mut names: Vec<String> = Vec::new();
    if lex.peek() != Some(b'|') {
        loop {
            names.push(lex.name()?);
            match lex.peek() {
                Some(b',') => {
                    lex.bump();
                }
                _ => break,
            }
        }
    }
    lex.expect(b'|')?;
    let mut relators = Vec::new();
    if lex.peek() != Some(b'>') {
        let resolve = |n: &str| names.iter().position(|m| m == n);
        loop {
            relators.push(parse_word_inner(&mut lex, &resolve)?);
            match lex.peek() {
                Some(b',') => {
                    lex.bump();
                }
                _ => break,
            }
        }
    }
    lex.expect(b'>')?;
    lex.skip_ws();
    if lex.pos != lex.src.len() {
        return Err(ParseError::TrailingInput { pos: lex.pos });
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Presentation::from_names(&name_refs, relators, label).map_err(ParseError::BadPresentation)
}

/// Prints a word canonically: runs of one generator collapse to `name^k`,
/// factors join with `*`, the empty word prints as `1`.
pub fn print_word(w: &Word, names: &[&str]) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut run = 1usize;
        while i + run < letters.len() && letters[i + run] == l {
            run += 1;
        }
        let k = l.sign() * run as i64;
        let name = names[l.gen_index()];
        if k == 1 {
            parts.push(String::from(name));
        } else {
            parts.push(format!("{name}^{k}"));
        }
        i += run;
    }
    parts.join("*")
}

/// Prints a presentation in the `<gens | relators>` grammar.
pub fn print_presentation(p: &Presentation) -> String {
    let names = p.generator_names();
    let gens = names.join(", ");
    let rels: Vec<String> = p.relators().iter().map(|r| print_word(r, &names)).collect();
    format!("<{} | {}>", gens, rels.join(", "))
}

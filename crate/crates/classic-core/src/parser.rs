//! Concrete syntax for concept descriptions.
//!
//! A concept file is UTF-8 text with a preamble of declarations followed by
//! one or more concepts separated by blank lines:
//!
//! ```text
//! @concept Car
//! @attribute model
//! @role repairs
//! ; comments run to end of line
//!
//! (and Car (at-least 10 repairs) (same-as (model) (model)))
//!
//! Car
//! ```
//!
//! The concept grammar is
//!
//! ```text
//! concept := ID | "TOP" | "BOTTOM"
//!          | "(and" concept+ ")"
//!          | "(at-least" INT ID ")" | "(at-most" INT ID ")"
//!          | "(all" ID concept ")"
//!          | "(same-as" chain chain ")"
//! chain   := "(" ID* ")"
//! ```
//!
//! Every identifier must be declared in the preamble. Number restrictions on
//! attributes are accepted and desugared: `(at-least 1 a)` becomes
//! `(same-as (a) (a))`, `(at-least n a)` with `n ≥ 2` becomes `BOTTOM`,
//! `(at-least 0 a)` and `(at-most n a)` with `n ≥ 1` become `TOP`, and
//! `(at-most 0 a)` becomes `(all a BOTTOM)`.

use std::fmt;

use crate::concept::{AttrChain, Concept, RoleOrAttribute};
use crate::signature::{Signature, SignatureError, SymbolKind};

/// Keywords that cannot be declared as identifiers.
const RESERVED: &[&str] = &["TOP", "BOTTOM", "and", "at-least", "at-most", "all", "same-as"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnbalancedParen,
    UnexpectedEof,
    UnexpectedToken(String),
    ExpectedInt(String),
    IntOutOfRange(String),
    UnknownConstructor(String),
    EmptyConjunction,
    UndeclaredIdentifier(String),
    WrongKind {
        name: String,
        expected: &'static str,
        actual: SymbolKind,
    },
    ReservedWord(String),
    InvalidIdentifier(String),
    BadDirective(String),
    DirectiveAfterConcept,
    Signature(SignatureError),
    TrailingInput(String),
    NoConcept,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ParseErrorKind::*;
        match self {
            UnbalancedParen => write!(f, "unbalanced parenthesis"),
            UnexpectedEof => write!(f, "unexpected end of input"),
            UnexpectedToken(t) => write!(f, "unexpected token `{t}`"),
            ExpectedInt(t) => write!(f, "expected a nonnegative integer, found `{t}`"),
            IntOutOfRange(t) => write!(f, "integer out of range: `{t}`"),
            UnknownConstructor(t) => write!(f, "unknown constructor `{t}`"),
            EmptyConjunction => write!(f, "`and` needs at least one conjunct"),
            UndeclaredIdentifier(n) => write!(f, "undeclared identifier `{n}`"),
            WrongKind {
                name,
                expected,
                actual,
            } => write!(f, "`{name}` is a {actual}, expected {expected}"),
            ReservedWord(n) => write!(f, "`{n}` is a reserved word"),
            InvalidIdentifier(n) => write!(f, "invalid identifier `{n}`"),
            BadDirective(d) => write!(f, "malformed directive `{d}`"),
            DirectiveAfterConcept => write!(f, "declarations must precede all concepts"),
            Signature(e) => write!(f, "{e}"),
            TrailingInput(t) => write!(f, "trailing input after concept: `{t}`"),
            NoConcept => write!(f, "expected a concept"),
        }
    }
}

fn err<T>(line: usize, col: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, col, kind })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Atom(String),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

/// Tokenize `text`; `first_line` offsets reported line numbers so chunks of
/// a larger file keep their original positions.
fn lex(text: &str, first_line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = first_line + lineno;
        let mut col = 0usize;
        let chars: Vec<char> = raw.chars().collect();
        while col < chars.len() {
            let c = chars[col];
            if c == ';' {
                break;
            }
            if c.is_whitespace() {
                col += 1;
                continue;
            }
            match c {
                '(' => {
                    out.push(Spanned {
                        tok: Tok::LParen,
                        line,
                        col: col + 1,
                    });
                    col += 1;
                }
                ')' => {
                    out.push(Spanned {
                        tok: Tok::RParen,
                        line,
                        col: col + 1,
                    });
                    col += 1;
                }
                _ => {
                    let start = col;
                    while col < chars.len() {
                        let c = chars[col];
                        if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                            break;
                        }
                        col += 1;
                    }
                    let atom: String = chars[start..col].iter().collect();
                    out.push(Spanned {
                        tok: Tok::Atom(atom),
                        line,
                        col: start + 1,
                    });
                }
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a Signature,
    end_line: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Spanned, ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => err(self.end_line, 1, ParseErrorKind::UnexpectedEof),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::RParen => Ok(()),
            Tok::LParen => err(t.line, t.col, ParseErrorKind::UnbalancedParen),
            Tok::Atom(a) => err(t.line, t.col, ParseErrorKind::UnexpectedToken(a)),
        }
    }

    fn atom(&mut self) -> Result<(String, usize, usize), ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::Atom(a) => Ok((a, t.line, t.col)),
            Tok::LParen | Tok::RParen => err(t.line, t.col, ParseErrorKind::UnbalancedParen),
        }
    }

    fn identifier(&mut self) -> Result<(String, SymbolKind, usize, usize), ParseError> {
        let (name, line, col) = self.atom()?;
        match self.sig.kind_of(&name) {
            None => err(line, col, ParseErrorKind::UndeclaredIdentifier(name)),
            Some(kind) => Ok((name, kind, line, col)),
        }
    }

    fn concept(&mut self) -> Result<Concept, ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::RParen => err(t.line, t.col, ParseErrorKind::UnbalancedParen),
            Tok::Atom(a) => match a.as_str() {
                "TOP" => Ok(Concept::Top),
                "BOTTOM" => Ok(Concept::bottom()),
                _ => match self.sig.kind_of(&a) {
                    Some(SymbolKind::Concept) => Ok(Concept::Name(a)),
                    Some(kind) => err(
                        t.line,
                        t.col,
                        ParseErrorKind::WrongKind {
                            name: a,
                            expected: "a concept name",
                            actual: kind,
                        },
                    ),
                    None => err(t.line, t.col, ParseErrorKind::UndeclaredIdentifier(a)),
                },
            },
            Tok::LParen => {
                let (head, hline, hcol) = self.atom()?;
                match head.as_str() {
                    "and" => {
                        let mut parts = Vec::new();
                        loop {
                            match self.peek() {
                                Some(s) if s.tok == Tok::RParen => {
                                    self.pos += 1;
                                    break;
                                }
                                Some(_) => parts.push(self.concept()?),
                                None => {
                                    return err(self.end_line, 1, ParseErrorKind::UnexpectedEof)
                                }
                            }
                        }
                        if parts.is_empty() {
                            return err(hline, hcol, ParseErrorKind::EmptyConjunction);
                        }
                        Ok(Concept::And(parts))
                    }
                    "at-least" | "at-most" => {
                        let n = self.integer()?;
                        let (name, kind, iline, icol) = self.identifier()?;
                        self.expect_rparen()?;
                        match kind {
                            SymbolKind::Role => Ok(if head == "at-least" {
                                Concept::AtLeast(n, name)
                            } else {
                                Concept::AtMost(n, name)
                            }),
                            SymbolKind::Attribute => {
                                Ok(desugar_attr_restriction(&head, n, &name))
                            }
                            SymbolKind::Concept => err(
                                iline,
                                icol,
                                ParseErrorKind::WrongKind {
                                    name,
                                    expected: "a role or attribute",
                                    actual: SymbolKind::Concept,
                                },
                            ),
                        }
                    }
                    "all" => {
                        let (name, kind, iline, icol) = self.identifier()?;
                        if kind == SymbolKind::Concept {
                            return err(
                                iline,
                                icol,
                                ParseErrorKind::WrongKind {
                                    name,
                                    expected: "a role or attribute",
                                    actual: SymbolKind::Concept,
                                },
                            );
                        }
                        let body = self.concept()?;
                        self.expect_rparen()?;
                        let p = if kind == SymbolKind::Role {
                            RoleOrAttribute::Role(name)
                        } else {
                            RoleOrAttribute::Attribute(name)
                        };
                        Ok(Concept::All(p, Box::new(body)))
                    }
                    "same-as" => {
                        let u = self.chain()?;
                        let v = self.chain()?;
                        self.expect_rparen()?;
                        Ok(Concept::SameAs(u, v))
                    }
                    _ => err(hline, hcol, ParseErrorKind::UnknownConstructor(head)),
                }
            }
        }
    }

    fn integer(&mut self) -> Result<u32, ParseError> {
        let (a, line, col) = self.atom()?;
        if !a.chars().all(|c| c.is_ascii_digit()) {
            return err(line, col, ParseErrorKind::ExpectedInt(a));
        }
        a.parse::<u32>()
            .map_err(|_| ParseError {
                line,
                col,
                kind: ParseErrorKind::IntOutOfRange(a),
            })
    }

    fn chain(&mut self) -> Result<AttrChain, ParseError> {
        let t = self.next()?;
        match t.tok {
            Tok::LParen => {}
            Tok::RParen => return err(t.line, t.col, ParseErrorKind::UnbalancedParen),
            Tok::Atom(a) => return err(t.line, t.col, ParseErrorKind::UnexpectedToken(a)),
        }
        let mut attrs = Vec::new();
        loop {
            let t = self.next()?;
            match t.tok {
                Tok::RParen => break,
                Tok::LParen => return err(t.line, t.col, ParseErrorKind::UnbalancedParen),
                Tok::Atom(name) => match self.sig.kind_of(&name) {
                    Some(SymbolKind::Attribute) => attrs.push(name),
                    Some(kind) => {
                        return err(
                            t.line,
                            t.col,
                            ParseErrorKind::WrongKind {
                                name,
                                expected: "an attribute",
                                actual: kind,
                            },
                        )
                    }
                    None => {
                        return err(t.line, t.col, ParseErrorKind::UndeclaredIdentifier(name))
                    }
                },
            }
        }
        Ok(AttrChain(attrs))
    }
}

/// Number restrictions on an attribute `a` do not survive parsing; they are
/// replaced by equivalent restriction-free terms.
fn desugar_attr_restriction(head: &str, n: u32, attr: &str) -> Concept {
    if head == "at-least" {
        match n {
            0 => Concept::Top,
            1 => Concept::same_as([attr], [attr]),
            _ => Concept::bottom(),
        }
    } else {
        match n {
            0 => Concept::all_attr(attr, Concept::bottom()),
            _ => Concept::Top,
        }
    }
}

/// Parse a single concept with all identifiers already declared in `sig`.
pub fn parse_concept(text: &str, sig: &Signature) -> Result<Concept, ParseError> {
    parse_concept_at(text, sig, 1)
}

fn parse_concept_at(text: &str, sig: &Signature, first_line: usize) -> Result<Concept, ParseError> {
    let toks = lex(text, first_line)?;
    let end_line = first_line + text.lines().count();
    let mut p = Parser {
        toks,
        pos: 0,
        sig,
        end_line,
    };
    if p.peek().is_none() {
        return err(first_line, 1, ParseErrorKind::NoConcept);
    }
    let c = p.concept()?;
    if let Some(t) = p.peek() {
        let shown = match &t.tok {
            Tok::LParen => "(".to_string(),
            Tok::RParen => ")".to_string(),
            Tok::Atom(a) => a.clone(),
        };
        return err(t.line, t.col, ParseErrorKind::TrailingInput(shown));
    }
    Ok(c)
}

/// A parsed concept file: the declared signature and the concepts, in
/// order of appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptFile {
    pub signature: Signature,
    pub concepts: Vec<Concept>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// Strip a `;` comment and trailing whitespace from a line.
fn strip_comment(line: &str) -> &str {
    match line.find(';') {
        Some(i) => line[..i].trim_end(),
        None => line.trim_end(),
    }
}

impl ConceptFile {
    /// Parse a full concept file: preamble declarations, then concepts
    /// separated by blank lines.
    pub fn parse(text: &str) -> Result<ConceptFile, ParseError> {
        let lines: Vec<&str> = text.lines().collect();
        let mut sig = Signature::new();
        let mut i = 0usize;

        // Preamble: directives, blank lines, and comments.
        while i < lines.len() {
            let stripped = strip_comment(lines[i]).trim();
            if stripped.is_empty() {
                i += 1;
                continue;
            }
            if !stripped.starts_with('@') {
                break;
            }
            let parts: Vec<&str> = stripped.split_whitespace().collect();
            if parts.len() != 2 {
                return err(
                    i + 1,
                    1,
                    ParseErrorKind::BadDirective(stripped.to_string()),
                );
            }
            let name = parts[1];
            if RESERVED.contains(&name) {
                return err(i + 1, 1, ParseErrorKind::ReservedWord(name.to_string()));
            }
            if !is_identifier(name) {
                return err(
                    i + 1,
                    1,
                    ParseErrorKind::InvalidIdentifier(name.to_string()),
                );
            }
            let declared = match parts[0] {
                "@concept" => sig.declare_concept(name),
                "@role" => sig.declare_role(name),
                "@attribute" => sig.declare_attribute(name),
                _ => {
                    return err(
                        i + 1,
                        1,
                        ParseErrorKind::BadDirective(stripped.to_string()),
                    )
                }
            };
            if let Err(e) = declared {
                return err(i + 1, 1, ParseErrorKind::Signature(e));
            }
            i += 1;
        }

        // Concepts: chunks of consecutive non-blank lines.
        let mut concepts = Vec::new();
        while i < lines.len() {
            let stripped = strip_comment(lines[i]).trim();
            if stripped.is_empty() {
                i += 1;
                continue;
            }
            if stripped.starts_with('@') {
                return err(i + 1, 1, ParseErrorKind::DirectiveAfterConcept);
            }
            let start = i;
            let mut chunk = String::new();
            while i < lines.len() && !strip_comment(lines[i]).trim().is_empty() {
                chunk.push_str(lines[i]);
                chunk.push('\n');
                i += 1;
            }
            concepts.push(parse_concept_at(&chunk, &sig, start + 1)?);
        }

        Ok(ConceptFile {
            signature: sig,
            concepts,
        })
    }
}

//! Parsing of `.hn` source text into a statement list.
//!
//! The format is line-oriented: one statement per line, `#` starting a
//! comment that runs to the end of the line. Identifiers are ASCII
//! alphanumerics and underscores. An anti-vertex is declared through the
//! `anti` keyword and referenced in participant position as `~id`; a bare
//! identifier can never start with `~`.

use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use thiserror::Error;

use crate::model::{AggregationType, ElementId};

/// A syntax error pointing at one token.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: expected {expected}, found {found}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: String,
    pub found: String,
}

/// A parsed `.hn` file: statements in source order. The order is
/// significant; the builder folds it into the insertion order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceDocument {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    /// 1-based source line the statement starts on.
    pub line: usize,
    pub decl: Decl,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Boundary { id: ElementId, percolating: bool },
    Relation { symbol: String, roles: Vec<String> },
    Element(ElementDecl),
}

/// A declaration that produces an element. Conflict declarations nest two
/// further element declarations, mirroring the snapshots a name clash
/// records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementDecl {
    Vertex {
        id: ElementId,
        tags: Vec<ElementId>,
    },
    Anti {
        excludes: ElementId,
        tags: Vec<ElementId>,
    },
    Hypersimplex {
        id: ElementId,
        agg: AggregationType,
        participants: Vec<ElementId>,
        symbol: String,
        /// Inline role list; `None` means the roles come from a `relation`
        /// declaration or are synthesized as `r1..rn`.
        roles: Option<Vec<String>>,
        tags: Vec<ElementId>,
    },
    Conflict {
        id: ElementId,
        /// Documentation only; a rebuilt conflict record derives its tags
        /// from the two snapshots.
        tags: Vec<ElementId>,
        left: Box<ElementDecl>,
        right: Box<ElementDecl>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Equals,
    LAngle,
    RAngle,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Comma,
    At,
    Tilde,
    Pipe,
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::LAngle => f.write_str("`<`"),
            Tok::RAngle => f.write_str("`>`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::At => f.write_str("`@`"),
            Tok::Tilde => f.write_str("`~`"),
            Tok::Pipe => f.write_str("`|`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars: Peekable<Chars> = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\r' => {
                chars.next();
                col += 1;
            }
            '\n' => {
                tokens.push(Token { tok: Tok::Newline, line, col });
                chars.next();
                line += 1;
                col = 1;
            }
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                    col += 1;
                }
            }
            c if is_ident_char(c) => {
                let start = col;
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    col += 1;
                }
                tokens.push(Token { tok: Tok::Ident(s), line, col: start });
            }
            _ => {
                let tok = match c {
                    '=' => Tok::Equals,
                    '<' => Tok::LAngle,
                    '>' => Tok::RAngle,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ';' => Tok::Semi,
                    ',' => Tok::Comma,
                    '@' => Tok::At,
                    '~' => Tok::Tilde,
                    '|' => Tok::Pipe,
                    other => {
                        return Err(ParseError {
                            line,
                            column: col,
                            expected: "a statement token".to_string(),
                            found: format!("`{other}`"),
                        })
                    }
                };
                tokens.push(Token { tok, line, col });
                chars.next();
                col += 1;
            }
        }
    }
    tokens.push(Token { tok: Tok::Eof, line, col });
    Ok(tokens)
}

/// Parses `.hn` text. Returns the statement list or the first syntax
/// error; name clashes and scope problems are not syntax errors and are
/// handled when the document is built.
pub fn parse(text: &str) -> Result<SourceDocument, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let mut statements = Vec::new();
    loop {
        while parser.eat(&Tok::Newline) {}
        if parser.peek().tok == Tok::Eof {
            break;
        }
        let line = parser.peek().line;
        let decl = parser.decl()?;
        statements.push(Statement { line, decl });
        if parser.peek().tok != Tok::Eof {
            parser.expect(&Tok::Newline, "end of statement")?;
        }
    }
    Ok(SourceDocument { statements })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &str) -> ParseError {
        let t = self.peek();
        ParseError {
            line: t.line,
            column: t.col,
            expected: expected.to_string(),
            found: t.tok.to_string(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, expected: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.fail(expected))
        }
    }

    fn ident(&mut self, expected: &str) -> Result<String, ParseError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.fail(expected)),
        }
    }

    fn element_id(&mut self) -> Result<ElementId, ParseError> {
        let s = self.ident("an identifier")?;
        Ok(ElementId::new(s).expect("lexer yields non-empty identifiers"))
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let Tok::Ident(kw) = &self.peek().tok else {
            return Err(self.fail("a statement keyword"));
        };
        match kw.as_str() {
            "boundary" => {
                self.bump();
                let id = self.element_id()?;
                let percolating = matches!(&self.peek().tok, Tok::Ident(w) if w == "percolating");
                if percolating {
                    self.bump();
                }
                Ok(Decl::Boundary { id, percolating })
            }
            "relation" => {
                self.bump();
                let symbol = self.ident("a relation symbol")?;
                self.expect(&Tok::LParen, "`(`")?;
                let mut roles = vec![self.ident("a role name")?];
                while self.eat(&Tok::Comma) {
                    roles.push(self.ident("a role name")?);
                }
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Decl::Relation { symbol, roles })
            }
            _ => self.element_decl().map(Decl::Element),
        }
    }

    fn element_decl(&mut self) -> Result<ElementDecl, ParseError> {
        const EXPECTED: &str = "`vertex`, `anti`, `alpha`, `beta` or `conflict`";
        let Tok::Ident(kw) = &self.peek().tok else {
            return Err(self.fail(EXPECTED));
        };
        match kw.as_str() {
            "vertex" => {
                self.bump();
                let id = self.element_id()?;
                let tags = self.tags()?;
                Ok(ElementDecl::Vertex { id, tags })
            }
            "anti" => {
                self.bump();
                let excludes = self.element_id()?;
                let tags = self.tags()?;
                Ok(ElementDecl::Anti { excludes, tags })
            }
            "alpha" => self.hypersimplex(AggregationType::Alpha),
            "beta" => self.hypersimplex(AggregationType::Beta),
            "conflict" => {
                self.bump();
                let id = self.element_id()?;
                let tags = self.tags()?;
                self.expect(&Tok::LBrace, "`{`")?;
                let left = Box::new(self.element_decl()?);
                self.expect(&Tok::Pipe, "`|`")?;
                let right = Box::new(self.element_decl()?);
                self.expect(&Tok::RBrace, "`}`")?;
                Ok(ElementDecl::Conflict { id, tags, left, right })
            }
            _ => Err(self.fail(EXPECTED)),
        }
    }

    fn hypersimplex(&mut self, agg: AggregationType) -> Result<ElementDecl, ParseError> {
        self.bump();
        let id = self.element_id()?;
        self.expect(&Tok::Equals, "`=`")?;
        let (open, close, close_name) = match agg {
            AggregationType::Alpha => (Tok::LAngle, Tok::RAngle, "`>`"),
            AggregationType::Beta => (Tok::LBrace, Tok::RBrace, "`}`"),
        };
        self.expect(&open, if agg == AggregationType::Alpha { "`<`" } else { "`{`" })?;
        let mut participants = vec![self.participant()?];
        while self.eat(&Tok::Comma) {
            participants.push(self.participant()?);
        }
        self.expect(&Tok::Semi, "`;`")?;
        let symbol = self.ident("a relation symbol")?;
        let roles = if self.eat(&Tok::LParen) {
            let mut roles = vec![self.ident("a role name")?];
            while self.eat(&Tok::Comma) {
                roles.push(self.ident("a role name")?);
            }
            self.expect(&Tok::RParen, "`)`")?;
            Some(roles)
        } else {
            None
        };
        self.expect(&close, close_name)?;
        let tags = self.tags()?;
        Ok(ElementDecl::Hypersimplex { id, agg, participants, symbol, roles, tags })
    }

    fn participant(&mut self) -> Result<ElementId, ParseError> {
        if self.eat(&Tok::Tilde) {
            let id = self.ident("an identifier after `~`")?;
            Ok(ElementId::new(format!("~{id}")).expect("lexer yields non-empty identifiers"))
        } else {
            self.element_id()
        }
    }

    fn tags(&mut self) -> Result<Vec<ElementId>, ParseError> {
        if !self.eat(&Tok::At) {
            return Ok(Vec::new());
        }
        let mut tags = vec![self.element_id()?];
        while self.eat(&Tok::Comma) {
            tags.push(self.element_id()?);
        }
        Ok(tags)
    }
}

//! Lexer and recursive-descent parser.
//!
//! ```text
//! term  := "if" term "then" term "else" term
//!        | ident "<-" term ";" term
//!        | "bernoulli" | "choose" "[" rat {"," rat} "]"
//!        | "knight" "(" ident [":" nat] ")"
//!        | "flip" "(" ident ")" "(" term ")"
//!        | "perm" "(" ident "," "[" nat {"," nat} "]" ")" "(" term ")"
//!        | "(" term {"," term} ")" | ctor | ident
//! ctor  := "true" | "false" | "r" | "g" | "b" | "inj" nat "of" nat
//! rat   := int ["/" nat]
//! ```
//!
//! `--` starts a comment that runs to the end of the line.

use crate::error::{Error, Result};
use crate::finstoch::ProbVector;
use crate::lang::ast::{Regrading, Term, Type};
use crate::Rational;

const KEYWORDS: &[&str] = &[
    "if", "then", "else", "bernoulli", "choose", "knight", "flip", "perm", "true", "false", "r", "g", "b",
    "inj", "of",
];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Keyword(&'static str),
    Nat(String),
    Arrow,
    Semi,
    Comma,
    Colon,
    Slash,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(x) => format!("identifier `{x}`"),
            Tok::Keyword(k) => format!("`{k}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Arrow => "`<-`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Minus => "`-`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(source: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = source.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0, 1, 0);
    while i < chars.len() {
        let c = chars[i];
        let column = i - line_start + 1;
        if c == '\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c == '<' && chars.get(i + 1) == Some(&'-') {
            i += 2;
            Tok::Arrow
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Nat(chars[start..i].iter().collect())
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match KEYWORDS.iter().find(|k| **k == word) {
                Some(k) => Tok::Keyword(k),
                None => Tok::Ident(word),
            }
        } else {
            i += 1;
            match c {
                ';' => Tok::Semi,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '/' => Tok::Slash,
                '-' => Tok::Minus,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                other => return Err(parse_error(line, column, format!("unexpected character `{other}`"))),
            }
        };
        out.push(Spanned { tok, line, column });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: i - line_start + 1,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        parse_error(t.line, t.column, message)
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected {}, found {}", tok.describe(), self.peek().describe())))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.next();
                Ok(x)
            }
            other => Err(self.error_here(format!("expected identifier, found {}", other.describe()))),
        }
    }

    fn nat(&mut self) -> Result<usize> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                let value = n
                    .parse()
                    .map_err(|_| self.error_here(format!("number `{n}` is too large")))?;
                self.next();
                Ok(value)
            }
            other => Err(self.error_here(format!("expected number, found {}", other.describe()))),
        }
    }

    fn rat(&mut self) -> Result<Rational> {
        let negative = if *self.peek() == Tok::Minus {
            self.next();
            true
        } else {
            false
        };
        let digits = match self.peek().clone() {
            Tok::Nat(n) => {
                self.next();
                n
            }
            other => return Err(self.error_here(format!("expected number, found {}", other.describe()))),
        };
        let mut text = if negative { format!("-{digits}") } else { digits };
        if *self.peek() == Tok::Slash {
            self.next();
            let denom = match self.peek().clone() {
                Tok::Nat(d) if d.trim_start_matches('0').is_empty() => {
                    return Err(self.error_here("zero denominator"));
                }
                Tok::Nat(d) => {
                    self.next();
                    d
                }
                other => return Err(self.error_here(format!("expected denominator, found {}", other.describe()))),
            };
            text = format!("{text}/{denom}");
        }
        text.parse().map_err(|_| self.error_here(format!("malformed rational `{text}`")))
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Keyword("if") => {
                self.next();
                let b = self.term()?;
                self.expect(Tok::Keyword("then"))?;
                let t = self.term()?;
                self.expect(Tok::Keyword("else"))?;
                let u = self.term()?;
                Ok(Term::if_then_else(b, t, u))
            }
            Tok::Ident(x) if *self.peek2() == Tok::Arrow => {
                self.next();
                self.next();
                let t = self.term()?;
                self.expect(Tok::Semi)?;
                let u = self.term()?;
                Ok(Term::Let(x, Box::new(t), Box::new(u)))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let start = self.toks[self.pos].clone();
        match start.tok {
            Tok::Ident(x) => {
                self.next();
                Ok(Term::Var(x))
            }
            Tok::Keyword("bernoulli") => {
                self.next();
                Ok(Term::Bernoulli)
            }
            Tok::Keyword("choose") => {
                self.next();
                self.expect(Tok::LBracket)?;
                let mut entries = vec![self.rat()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    entries.push(self.rat()?);
                }
                self.expect(Tok::RBracket)?;
                let p = ProbVector::new(entries)
                    .map_err(|e| parse_error(start.line, start.column, e.to_string()))?;
                Ok(Term::Choose(p))
            }
            Tok::Keyword("knight") => {
                self.next();
                self.expect(Tok::LParen)?;
                let name = self.ident()?;
                let arity = if *self.peek() == Tok::Colon {
                    self.next();
                    let k = self.nat()?;
                    if k < 2 {
                        return Err(self.error_here("a Knightian choice needs at least two outcomes"));
                    }
                    k
                } else {
                    2
                };
                self.expect(Tok::RParen)?;
                Ok(Term::Knight(name, arity))
            }
            Tok::Keyword("flip") => {
                self.next();
                self.expect(Tok::LParen)?;
                let name = self.ident()?;
                self.expect(Tok::RParen)?;
                let body = self.parenthesized()?;
                Ok(Term::Regrade(Regrading::Flip(name), Box::new(body)))
            }
            Tok::Keyword("perm") => {
                self.next();
                self.expect(Tok::LParen)?;
                let name = self.ident()?;
                self.expect(Tok::Comma)?;
                self.expect(Tok::LBracket)?;
                let mut perm = vec![self.nat()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    perm.push(self.nat()?);
                }
                self.expect(Tok::RBracket)?;
                self.expect(Tok::RParen)?;
                let body = self.parenthesized()?;
                Ok(Term::Regrade(Regrading::Perm(name, perm), Box::new(body)))
            }
            Tok::Keyword("true") => self.ctor(0, Type::Bool),
            Tok::Keyword("false") => self.ctor(1, Type::Bool),
            Tok::Keyword("r") => self.ctor(0, Type::Three),
            Tok::Keyword("g") => self.ctor(1, Type::Three),
            Tok::Keyword("b") => self.ctor(2, Type::Three),
            Tok::Keyword("inj") => {
                self.next();
                let k = self.nat()?;
                self.expect(Tok::Keyword("of"))?;
                let n = self.nat()?;
                if k == 0 || k > n {
                    return Err(parse_error(
                        start.line,
                        start.column,
                        format!("injection index {k} out of range 1..={n}"),
                    ));
                }
                Ok(Term::Ctor(k - 1, Type::Fin(n)))
            }
            Tok::LParen => {
                self.next();
                let mut items = vec![self.term()?];
                while *self.peek() == Tok::Comma {
                    self.next();
                    items.push(self.term()?);
                }
                self.expect(Tok::RParen)?;
                if items.len() == 1 {
                    Ok(items.pop().unwrap())
                } else {
                    Ok(Term::Pair(items))
                }
            }
            other => Err(self.error_here(format!("expected a term, found {}", other.describe()))),
        }
    }

    fn ctor(&mut self, tag: usize, ty: Type) -> Result<Term> {
        self.next();
        Ok(Term::Ctor(tag, ty))
    }

    fn parenthesized(&mut self) -> Result<Term> {
        self.expect(Tok::LParen)?;
        let t = self.term()?;
        self.expect(Tok::RParen)?;
        Ok(t)
    }
}

/// Parses a whole program.
pub fn parse(source: &str) -> Result<Term> {
    let mut parser = Parser {
        toks: lex(source)?,
        pos: 0,
    };
    let t = parser.term()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error_here(format!("unexpected {} after the end of the term", parser.peek().describe())));
    }
    Ok(t)
}

//! Recursive-descent parser for the query dialect:
//!
//! ```text
//! query := SELECT DISTINCT ident ("," ident)* FROM ident (NATURAL JOIN ident)*
//!          [WHERE pred (AND pred)*]
//! pred  := ident "=" ( 'quoted string' | number )
//! ```
//!
//! Keywords are case-insensitive. Quotes inside strings are doubled.

use std::fmt;

use thiserror::Error;

use crate::sql_builder::{Literal, Predicate, SqlQuery};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at position {position}: {message}")]
pub struct SyntaxError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Keyword {
    Select,
    Distinct,
    From,
    Natural,
    Join,
    Where,
    And,
}

impl Keyword {
    fn lookup(word: &str) -> Option<Keyword> {
        Some(match word.to_ascii_uppercase().as_str() {
            "SELECT" => Keyword::Select,
            "DISTINCT" => Keyword::Distinct,
            "FROM" => Keyword::From,
            "NATURAL" => Keyword::Natural,
            "JOIN" => Keyword::Join,
            "WHERE" => Keyword::Where,
            "AND" => Keyword::And,
            _ => return None,
        })
    }
}

/// True when `word` would lex as a keyword and so cannot be an identifier.
pub fn is_keyword(word: &str) -> bool {
    Keyword::lookup(word).is_some()
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Keyword(Keyword),
    Ident(String),
    Str(String),
    Number(String),
    Comma,
    Equals,
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Keyword(k) => write!(f, "keyword {}", format!("{k:?}").to_uppercase()),
            TokenKind::Ident(s) => write!(f, "identifier {s:?}"),
            TokenKind::Str(s) => write!(f, "string {s:?}"),
            TokenKind::Number(n) => write!(f, "number {n}"),
            TokenKind::Comma => f.write_str("','"),
            TokenKind::Equals => f.write_str("'='"),
            TokenKind::End => f.write_str("end of input"),
        }
    }
}

struct Token {
    kind: TokenKind,
    position: usize,
}

fn error(position: usize, message: impl Into<String>) -> SyntaxError {
    SyntaxError { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let kind = if c.is_whitespace() {
            i += 1;
            continue;
        } else if c == ',' {
            i += 1;
            TokenKind::Comma
        } else if c == '=' {
            i += 1;
            TokenKind::Equals
        } else if c == '\'' {
            i += 1;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(error(start, "unterminated string literal")),
                    Some('\'') if chars.get(i + 1) == Some(&'\'') => {
                        s.push('\'');
                        i += 2;
                    }
                    Some('\'') => {
                        i += 1;
                        break;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            TokenKind::Str(s)
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(char::is_ascii_digit)) {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if chars.get(i) == Some(&'.') {
                if !chars.get(i + 1).is_some_and(char::is_ascii_digit) {
                    return Err(error(i, "expected digits after decimal point"));
                }
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            TokenKind::Number(chars[start..i].iter().collect())
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match Keyword::lookup(&word) {
                Some(k) => TokenKind::Keyword(k),
                None => TokenKind::Ident(word),
            }
        } else {
            return Err(error(start, format!("unexpected character {c:?}")));
        };
        tokens.push(Token { kind, position: start });
    }
    tokens.push(Token { kind: TokenKind::End, position: chars.len() });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> &Token {
        let t = &self.tokens[self.pos];
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        let t = self.peek();
        error(t.position, format!("expected {wanted}, found {}", t.kind))
    }

    fn keyword(&mut self, k: Keyword) -> Result<(), SyntaxError> {
        if self.peek().kind == TokenKind::Keyword(k) {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&format!("keyword {}", format!("{k:?}").to_uppercase())))
        }
    }

    fn eat_keyword(&mut self, k: Keyword) -> bool {
        let matched = self.peek().kind == TokenKind::Keyword(k);
        if matched {
            self.advance();
        }
        matched
    }

    fn ident(&mut self) -> Result<String, SyntaxError> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    fn query(&mut self) -> Result<SqlQuery, SyntaxError> {
        self.keyword(Keyword::Select)?;
        self.keyword(Keyword::Distinct)?;
        let mut projection = vec![self.ident()?];
        while self.peek().kind == TokenKind::Comma {
            self.advance();
            projection.push(self.ident()?);
        }
        self.keyword(Keyword::From)?;
        let mut tables = vec![self.ident()?];
        while self.eat_keyword(Keyword::Natural) {
            self.keyword(Keyword::Join)?;
            tables.push(self.ident()?);
        }
        let mut predicates = Vec::new();
        if self.eat_keyword(Keyword::Where) {
            predicates.push(self.predicate()?);
            while self.eat_keyword(Keyword::And) {
                predicates.push(self.predicate()?);
            }
        }
        if self.peek().kind != TokenKind::End {
            return Err(self.unexpected("end of input"));
        }
        Ok(SqlQuery { projection, tables, predicates })
    }

    fn predicate(&mut self) -> Result<Predicate, SyntaxError> {
        let column = self.ident()?;
        if self.peek().kind != TokenKind::Equals {
            return Err(self.unexpected("'='"));
        }
        self.advance();
        let value = match &self.peek().kind {
            TokenKind::Str(s) => Literal::Text(s.clone()),
            TokenKind::Number(n) => Literal::Number(n.clone()),
            _ => return Err(self.unexpected("string or number")),
        };
        self.advance();
        Ok(Predicate { column, value })
    }
}

/// Parses one query. Unknown tables and columns are not detected here;
/// execution reports them.
pub fn parse_sql(text: &str) -> Result<SqlQuery, SyntaxError> {
    let tokens = lex(text)?;
    Parser { tokens, pos: 0 }.query()
}

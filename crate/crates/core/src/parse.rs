//! Scanner and precedence parser for the ASCII formula syntax.
//!
//! ```text
//! ~  &  |  -->  <->      decreasing precedence; infixes associate right
//! ALL x. A   EXISTS x. A quantifier scope extends as far right as possible
//! ?a                     metavariable
//! c  f(t,...)            constants and function applications
//! ```

use thiserror::Error;

use crate::syntax::{Connective, Formula, Quantifier, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Key(String),
    Id(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("Symbol ) expected")]
    RightParenExpected,
    #[error("Syntax of term")]
    TermSyntax,
    #[error("Syntax of formula")]
    FormulaSyntax,
    #[error("Extra characters in formula")]
    ExtraCharacters,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric()
}

fn ident_token(s: String) -> Token {
    if Quantifier::from_keyword(&s).is_some() {
        Token::Key(s)
    } else {
        Token::Id(s)
    }
}

/// Splits the input into tokens. Unknown characters become one-character
/// keys; the parser rejects them.
pub fn scan(input: &str) -> Vec<Token> {
    let mut toks = Vec::new();
    let mut rest = input;
    while let Some(c) = rest.chars().next() {
        if let Some(tail) = rest.strip_prefix("-->") {
            toks.push(Token::Key("-->".into()));
            rest = tail;
        } else if let Some(tail) = rest.strip_prefix("<->") {
            toks.push(Token::Key("<->".into()));
            rest = tail;
        } else if c == ' ' || c == '\t' || c == '\n' || c == '\r' {
            rest = &rest[1..];
        } else if is_ident_char(c) {
            let end = rest.find(|ch: char| !is_ident_char(ch)).unwrap_or(rest.len());
            toks.push(ident_token(rest[..end].to_string()));
            rest = &rest[end..];
        } else {
            toks.push(Token::Key(c.to_string()));
            rest = &rest[c.len_utf8()..];
        }
    }
    toks
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, k: usize) -> Option<&Token> {
        self.toks.get(self.pos + k)
    }

    fn is_key(&self, k: usize, key: &str) -> bool {
        matches!(self.peek_at(k), Some(Token::Key(s)) if s == key)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn right_paren(&mut self) -> Result<(), ParseError> {
        if self.is_key(0, ")") {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::RightParenExpected)
        }
    }

    /// `t1, t2, ..., tn` (at least one).
    fn term_list(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut ts = vec![self.term()?];
        while self.is_key(0, ",") {
            self.pos += 1;
            ts.push(self.term()?);
        }
        Ok(ts)
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Token::Id(a)) => {
                self.pos += 1;
                if self.is_key(0, "(") {
                    self.pos += 1;
                    let args = self.term_list()?;
                    self.right_paren()?;
                    Ok(Term::Fun(a, args))
                } else {
                    Ok(Term::Fun(a, Vec::new()))
                }
            }
            Some(Token::Key(k)) if k == "?" => match self.peek_at(1).cloned() {
                Some(Token::Id(a)) => {
                    self.pos += 2;
                    Ok(Term::Var(a))
                }
                _ => Err(ParseError::TermSyntax),
            },
            _ => Err(ParseError::TermSyntax),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        if let (Some(Token::Key(q)), Some(Token::Id(x))) = (self.peek(), self.peek_at(1)) {
            if let Some(q) = Quantifier::from_keyword(q) {
                if self.is_key(2, ".") {
                    let x = x.clone();
                    self.pos += 3;
                    let body = self.formula()?;
                    return Ok(Formula::quant(q, x, body));
                }
            }
        }
        let atom = self.atom()?;
        self.infix(0, atom)
    }

    fn infix_connective(&self) -> Option<Connective> {
        match self.peek() {
            Some(Token::Key(k)) => Connective::from_symbol(k).filter(|c| *c != Connective::Not),
            _ => None,
        }
    }

    /// Extends `lhs` with infix operators binding at least as tightly as
    /// `prec`; equal precedence nests to the right.
    fn infix(&mut self, prec: u8, mut lhs: Formula) -> Result<Formula, ParseError> {
        while let Some(c) = self.infix_connective() {
            if c.precedence() < prec {
                break;
            }
            self.pos += 1;
            let atom = self.atom()?;
            let rhs = self.infix(c.precedence(), atom)?;
            lhs = Formula::binary(c, lhs, rhs);
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.bump() {
            Some(Token::Key(k)) if k == "~" => Ok(Formula::not(self.atom()?)),
            Some(Token::Key(k)) if k == "(" => {
                let a = self.formula()?;
                self.right_paren()?;
                Ok(a)
            }
            Some(Token::Id(p)) => {
                if self.is_key(0, "(") {
                    self.pos += 1;
                    let args = self.term_list()?;
                    self.right_paren()?;
                    Ok(Formula::Pred(p, args))
                } else {
                    Ok(Formula::Pred(p, Vec::new()))
                }
            }
            _ => Err(ParseError::FormulaSyntax),
        }
    }

    fn finish<T>(&self, x: T) -> Result<T, ParseError> {
        if self.pos >= self.toks.len() {
            Ok(x)
        } else {
            Err(ParseError::ExtraCharacters)
        }
    }
}

/// Parses a closed formula.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { toks: scan(input), pos: 0 };
    let a = p.formula()?;
    p.finish(a)
}

/// Parses a single term.
pub fn parse_term(input: &str) -> Result<Term, ParseError> {
    let mut p = Parser { toks: scan(input), pos: 0 };
    let t = p.term()?;
    p.finish(t)
}

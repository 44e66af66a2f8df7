//! Proof trees and their text format.
//!
//! A tree is written as nested parenthesized lists:
//!
//! ```text
//! (RULE (seq ("A1" ...) ("B1" ...)) [(witness "t")] PREMISE*)
//! ```
//!
//! `RULE` is `basic` or a connective or quantifier symbol followed by
//! `:left` or `:right`. Formulae and the witness term are double-quoted
//! strings in the ASCII formula syntax; inside a string `\"` and `\\`
//! escape a quote and a backslash. Whitespace between items is free.
//! See `docs/proof-format.md` for the full grammar.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::parse::{parse, parse_term, ParseError};
use crate::print::{term_to_string, unparse_fresh};
use crate::syntax::{Connective, Formula, Quantifier, Side, Term};

/// The inference at a proof-tree node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// A leaf whose sequent has a formula common to both sides.
    Basic,
    Conn(Connective, Side),
    Quant(Quantifier, Side),
}

impl Rule {
    /// All fifteen labels: `basic` and the fourteen reductions.
    pub fn all() -> Vec<Rule> {
        let mut rules = vec![Rule::Basic];
        for side in [Side::Left, Side::Right] {
            for c in [Connective::Not, Connective::And, Connective::Or, Connective::Implies, Connective::Iff] {
                rules.push(Rule::Conn(c, side));
            }
            for q in [Quantifier::All, Quantifier::Exists] {
                rules.push(Rule::Quant(q, side));
            }
        }
        rules
    }

    pub fn label(self) -> String {
        match self {
            Rule::Basic => "basic".to_string(),
            Rule::Conn(c, s) => format!("{}{}", c.symbol(), s.suffix()),
            Rule::Quant(q, s) => format!("{}{}", q.keyword(), s.suffix()),
        }
    }

    pub fn from_label(s: &str) -> Option<Rule> {
        if s == "basic" {
            return Some(Rule::Basic);
        }
        let (head, side) = if let Some(h) = s.strip_suffix(":left") {
            (h, Side::Left)
        } else {
            (s.strip_suffix(":right")?, Side::Right)
        };
        Connective::from_symbol(head)
            .map(|c| Rule::Conn(c, side))
            .or_else(|| Quantifier::from_keyword(head).map(|q| Rule::Quant(q, side)))
    }

    /// Number of premises the rule takes.
    pub fn arity(self) -> usize {
        use Connective::*;
        match self {
            Rule::Basic => 0,
            Rule::Conn(And, Side::Right)
            | Rule::Conn(Or, Side::Left)
            | Rule::Conn(Implies, Side::Left)
            | Rule::Conn(Iff, _) => 2,
            Rule::Conn(..) | Rule::Quant(..) => 1,
        }
    }

    /// Whether the node records a witness term or eigenvariable.
    pub fn takes_witness(self) -> bool {
        matches!(self, Rule::Quant(..))
    }

    /// Side of the principal formula, if any.
    pub fn side(self) -> Option<Side> {
        match self {
            Rule::Basic => None,
            Rule::Conn(_, s) | Rule::Quant(_, s) => Some(s),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequent {
    pub left: Vec<Formula>,
    pub right: Vec<Formula>,
}

impl Sequent {
    pub fn new(left: Vec<Formula>, right: Vec<Formula>) -> Self {
        Sequent { left, right }
    }

    pub fn side(&self, s: Side) -> &[Formula] {
        match s {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn side_mut(&mut self, s: Side) -> &mut Vec<Formula> {
        match s {
            Side::Left => &mut self.left,
            Side::Right => &mut self.right,
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<_> = self.left.iter().map(unparse_fresh).collect();
        let r: Vec<_> = self.right.iter().map(unparse_fresh).collect();
        write!(f, "{} |- {}", l.join(", "), r.join(", "))
    }
}

/// A derivation: the conclusion sequent, the rule that yields it, and the
/// derivations of the premises.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofTree {
    pub rule: Rule,
    pub sequent: Sequent,
    /// Instance term of `ALL:left`/`EXISTS:right`, or eigenvariable of
    /// `ALL:right`/`EXISTS:left`.
    pub witness: Option<Term>,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn basic(sequent: Sequent) -> Self {
        ProofTree { rule: Rule::Basic, sequent, witness: None, premises: Vec::new() }
    }

    pub fn node(rule: Rule, sequent: Sequent, witness: Option<Term>, premises: Vec<ProofTree>) -> Self {
        ProofTree { rule, sequent, witness, premises }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    /// Paths to every node in preorder; a path lists premise indices from the root.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(t: &ProofTree, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(path.clone());
            for (i, p) in t.premises.iter().enumerate() {
                path.push(i);
                go(p, path, out);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn at(&self, path: &[usize]) -> Option<&ProofTree> {
        path.iter().try_fold(self, |t, &i| t.premises.get(i))
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut ProofTree> {
        path.iter().try_fold(self, |t, &i| t.premises.get_mut(i))
    }

    /// Serializes with two-space indentation, one node per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out.push('\n');
        out
    }

    fn write_text(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let side = |xs: &[Formula]| {
            let parts: Vec<_> = xs.iter().map(|a| quote(&unparse_fresh(a))).collect();
            format!("({})", parts.join(" "))
        };
        let _ = write!(out, "{pad}({} (seq {} {})", self.rule, side(&self.sequent.left), side(&self.sequent.right));
        if let Some(t) = &self.witness {
            let _ = write!(out, " (witness {})", quote(&term_to_string(t)));
        }
        for p in &self.premises {
            out.push('\n');
            p.write_text(depth + 1, out);
        }
        out.push(')');
    }

    pub fn from_text(text: &str) -> Result<ProofTree, FormatError> {
        let sx = read_sexp(text)?;
        tree_of(&sx)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unexpected `{0}` at byte {1}")]
    Unexpected(char, usize),
    #[error("unterminated string")]
    UnterminatedString,
    #[error("trailing input at byte {0}")]
    Trailing(usize),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("malformed node: {0}")]
    Shape(String),
    #[error("bad formula {text:?}: {err}")]
    Formula { text: String, err: ParseError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Sexp {
    Atom(String),
    Str(String),
    List(Vec<Sexp>),
}

fn read_sexp(text: &str) -> Result<Sexp, FormatError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut pos = 0;
    let sx = read_at(&bytes, &mut pos)?;
    skip_ws(&bytes, &mut pos);
    match bytes.get(pos) {
        None => Ok(sx),
        Some(&(i, _)) => Err(FormatError::Trailing(i)),
    }
}

fn skip_ws(cs: &[(usize, char)], pos: &mut usize) {
    while cs.get(*pos).is_some_and(|(_, c)| c.is_whitespace()) {
        *pos += 1;
    }
}

fn read_at(cs: &[(usize, char)], pos: &mut usize) -> Result<Sexp, FormatError> {
    skip_ws(cs, pos);
    let &(at, c) = cs.get(*pos).ok_or(FormatError::Eof)?;
    match c {
        '(' => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                skip_ws(cs, pos);
                match cs.get(*pos) {
                    None => return Err(FormatError::Eof),
                    Some((_, ')')) => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read_at(cs, pos)?),
                }
            }
        }
        ')' => Err(FormatError::Unexpected(')', at)),
        '"' => {
            *pos += 1;
            let mut s = String::new();
            loop {
                match cs.get(*pos) {
                    None => return Err(FormatError::UnterminatedString),
                    Some((_, '"')) => {
                        *pos += 1;
                        return Ok(Sexp::Str(s));
                    }
                    Some((_, '\\')) => {
                        let &(_, e) = cs.get(*pos + 1).ok_or(FormatError::UnterminatedString)?;
                        s.push(e);
                        *pos += 2;
                    }
                    Some(&(_, ch)) => {
                        s.push(ch);
                        *pos += 1;
                    }
                }
            }
        }
        _ => {
            let mut s = String::new();
            while let Some(&(_, ch)) = cs.get(*pos) {
                if ch.is_whitespace() || ch == '(' || ch == ')' || ch == '"' {
                    break;
                }
                s.push(ch);
                *pos += 1;
            }
            Ok(Sexp::Atom(s))
        }
    }
}

fn formulas_of(sx: &Sexp) -> Result<Vec<Formula>, FormatError> {
    let Sexp::List(items) = sx else {
        return Err(FormatError::Shape("sequent side must be a list".into()));
    };
    items
        .iter()
        .map(|it| match it {
            Sexp::Str(s) => parse(s).map_err(|err| FormatError::Formula { text: s.clone(), err }),
            _ => Err(FormatError::Shape("formula must be a string".into())),
        })
        .collect()
}

fn tree_of(sx: &Sexp) -> Result<ProofTree, FormatError> {
    let Sexp::List(items) = sx else {
        return Err(FormatError::Shape("node must be a list".into()));
    };
    let mut it = items.iter();
    let rule = match it.next() {
        Some(Sexp::Atom(a)) => Rule::from_label(a).ok_or_else(|| FormatError::UnknownRule(a.clone()))?,
        _ => return Err(FormatError::Shape("node must start with a rule".into())),
    };
    let sequent = match it.next() {
        Some(Sexp::List(seq)) if seq.len() == 3 && seq[0] == Sexp::Atom("seq".into()) => {
            Sequent::new(formulas_of(&seq[1])?, formulas_of(&seq[2])?)
        }
        _ => return Err(FormatError::Shape("expected (seq (...) (...))".into())),
    };
    let mut rest: Vec<&Sexp> = it.collect();
    let mut witness = None;
    if let Some(Sexp::List(w)) = rest.first() {
        if w.first() == Some(&Sexp::Atom("witness".into())) {
            match w.as_slice() {
                [_, Sexp::Str(t)] => {
                    witness = Some(parse_term(t).map_err(|err| FormatError::Formula { text: t.clone(), err })?);
                }
                _ => return Err(FormatError::Shape("expected (witness \"term\")".into())),
            }
            rest.remove(0);
        }
    }
    let premises = rest.into_iter().map(tree_of).collect::<Result<_, _>>()?;
    Ok(ProofTree { rule, sequent, witness, premises })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn swap_tree() -> ProofTree {
        let ab = || f("A & B");
        let leaf = |x: &str| ProofTree::basic(Sequent::new(vec![f("A"), f("B")], vec![f(x)]));
        ProofTree::node(
            Rule::Conn(Connective::And, Side::Left),
            Sequent::new(vec![ab()], vec![f("B & A")]),
            None,
            vec![ProofTree::node(
                Rule::Conn(Connective::And, Side::Right),
                Sequent::new(vec![f("A"), f("B")], vec![f("B & A")]),
                None,
                vec![leaf("B"), leaf("A")],
            )],
        )
    }

    #[test]
    fn labels_round_trip() {
        let all = Rule::all();
        assert_eq!(all.len(), 15);
        for r in all {
            assert_eq!(Rule::from_label(&r.label()), Some(r));
        }
        assert_eq!(Rule::from_label("&:middle"), None);
        assert_eq!(Rule::Quant(Quantifier::All, Side::Right).label(), "ALL:right");
    }

    #[test]
    fn text_round_trip() {
        let t = swap_tree();
        let text = t.to_text();
        assert!(text.starts_with("(&:left (seq (\"A & B\") (\"B & A\"))"));
        assert_eq!(ProofTree::from_text(&text).unwrap(), t);
        let squashed: String = text.split_whitespace().collect::<Vec<_>>().join(" ");
        assert_eq!(ProofTree::from_text(&squashed).unwrap(), t);
    }

    #[test]
    fn witness_round_trip() {
        let t = ProofTree::node(
            Rule::Quant(Quantifier::All, Side::Left),
            Sequent::new(vec![f("ALL x. P(x)")], vec![f("P(f(a))")]),
            Some(Term::fun("f", vec![Term::constant("a")])),
            vec![ProofTree::basic(Sequent::new(vec![f("ALL x. P(x)"), f("P(f(a))")], vec![f("P(f(a))")]))],
        );
        let text = t.to_text();
        assert!(text.contains("(witness \"f(a)\")"));
        assert_eq!(ProofTree::from_text(&text).unwrap(), t);
    }

    #[test]
    fn capture_is_avoided_in_text() {
        let body = Formula::pred("E", vec![Term::Bound(0), Term::constant("y")]);
        let a = Formula::Quant(Quantifier::Exists, "y".into(), Box::new(body));
        let t = ProofTree::basic(Sequent::new(vec![a.clone()], vec![a]));
        assert_eq!(ProofTree::from_text(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn malformed_inputs() {
        assert_eq!(ProofTree::from_text(""), Err(FormatError::Eof));
        assert_eq!(ProofTree::from_text("(basic (seq () ())"), Err(FormatError::Eof));
        assert!(matches!(ProofTree::from_text("(frob (seq () ()))"), Err(FormatError::UnknownRule(_))));
        assert!(matches!(ProofTree::from_text("(basic (seq (\"P &\") ()))"), Err(FormatError::Formula { .. })));
        assert!(matches!(ProofTree::from_text("(basic (seq () ())) x"), Err(FormatError::Trailing(_))));
        assert!(matches!(ProofTree::from_text("(basic (seq (\"P) ()))"), Err(FormatError::UnterminatedString)));
        assert!(matches!(ProofTree::from_text("(basic)"), Err(FormatError::Shape(_))));
    }

    #[test]
    fn paths_and_lookup() {
        let t = swap_tree();
        assert_eq!(t.paths(), vec![vec![], vec![0], vec![0, 0], vec![0, 1]]);
        assert_eq!(t.at(&[0, 1]).unwrap().sequent.right, vec![f("A")]);
        assert!(t.at(&[1]).is_none());
        assert_eq!(t.size(), 4);
        assert_eq!(t.height(), 3);
    }
}

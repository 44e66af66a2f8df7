//! Terms and formulae.
//!
//! Bound variables use de Bruijn indices: `Bound(i)` refers to the quantifier
//! `i` levels out from the occurrence. Quantifiers keep the name the user wrote
//! only so the printer can reproduce it; that name takes no part in equality.

use std::fmt;
use std::hash::{Hash, Hasher};

/// A first-order term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// Metavariable `?name`, a placeholder resolved by unification.
    Var(String),
    /// Parameter `name[?d1,...,?dn]`: an eigenvariable together with the
    /// metavariables it must not depend on.
    Param(String, Vec<String>),
    /// de Bruijn index of a bound variable.
    Bound(usize),
    /// Function application; constants are nullary applications.
    Fun(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Fun(name.into(), Vec::new())
    }

    pub fn fun(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Fun(name.into(), args)
    }

    pub fn param<S: Into<String>>(name: impl Into<String>, deps: impl IntoIterator<Item = S>) -> Self {
        Term::Param(name.into(), deps.into_iter().map(Into::into).collect())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Fun(_, args) => args.iter().all(Term::is_ground),
            Term::Param(..) | Term::Bound(_) => true,
        }
    }

    fn has_bound(&self) -> bool {
        match self {
            Term::Bound(_) => true,
            Term::Fun(_, args) => args.iter().any(Term::has_bound),
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Not,
    And,
    Or,
    Implies,
    Iff,
}

impl Connective {
    pub const BINARY: [Connective; 4] = [
        Connective::And,
        Connective::Or,
        Connective::Implies,
        Connective::Iff,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Not => "~",
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "-->",
            Connective::Iff => "<->",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        Some(match s {
            "~" => Connective::Not,
            "&" => Connective::And,
            "|" => Connective::Or,
            "-->" => Connective::Implies,
            "<->" => Connective::Iff,
            _ => return None,
        })
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            Connective::Not => 4,
            Connective::And => 3,
            Connective::Or => 2,
            Connective::Implies | Connective::Iff => 1,
        }
    }

    pub fn arity(self) -> usize {
        if self == Connective::Not {
            1
        } else {
            2
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    All,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::All => "ALL",
            Quantifier::Exists => "EXISTS",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "ALL" => Some(Quantifier::All),
            "EXISTS" => Some(Quantifier::Exists),
            _ => None,
        }
    }
}

/// Which side of a sequent a formula stands on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn suffix(self) -> &'static str {
        match self {
            Side::Left => ":left",
            Side::Right => ":right",
        }
    }
}

/// A formula. Equality and hashing ignore quantifier display names, so
/// alpha-equivalent formulae compare equal.
#[derive(Clone, Debug)]
pub enum Formula {
    Pred(String, Vec<Term>),
    /// Connective applied to one operand (`~`) or two (all others).
    Conn(Connective, Vec<Formula>),
    /// Quantifier, display name of the bound variable, body.
    Quant(Quantifier, String, Box<Formula>),
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Formula::Pred(a, ts), Formula::Pred(b, us)) => a == b && ts == us,
            (Formula::Conn(c, xs), Formula::Conn(d, ys)) => c == d && xs == ys,
            (Formula::Quant(q, _, a), Formula::Quant(r, _, b)) => q == r && a == b,
            _ => false,
        }
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Formula::Pred(a, ts) => {
                0u8.hash(state);
                a.hash(state);
                ts.hash(state);
            }
            Formula::Conn(c, xs) => {
                1u8.hash(state);
                c.hash(state);
                xs.hash(state);
            }
            Formula::Quant(q, _, body) => {
                2u8.hash(state);
                q.hash(state);
                body.hash(state);
            }
        }
    }
}

impl Formula {
    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Pred(name.into(), args)
    }

    /// 0-place predicate (a propositional letter).
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Pred(name.into(), Vec::new())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Formula::Conn(Connective::Not, vec![a])
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Self {
        debug_assert!(c != Connective::Not);
        Formula::Conn(c, vec![a, b])
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Self::binary(Connective::And, a, b)
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Self::binary(Connective::Or, a, b)
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Self::binary(Connective::Implies, a, b)
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Self::binary(Connective::Iff, a, b)
    }

    /// Builds `q x. body`, where `body` mentions `x` as the constant `x`.
    pub fn quant(q: Quantifier, name: impl Into<String>, body: Formula) -> Self {
        let name = name.into();
        let body = abstract_over(&Term::constant(name.clone()), &body);
        Formula::Quant(q, name, Box::new(body))
    }

    pub fn forall(name: impl Into<String>, body: Formula) -> Self {
        Self::quant(Quantifier::All, name, body)
    }

    pub fn exists(name: impl Into<String>, body: Formula) -> Self {
        Self::quant(Quantifier::Exists, name, body)
    }

    pub fn is_pred(&self) -> bool {
        matches!(self, Formula::Pred(..))
    }

    /// Name of the outermost symbol: predicate, connective or quantifier.
    pub fn head_symbol(&self) -> &str {
        match self {
            Formula::Pred(a, _) => a,
            Formula::Conn(c, _) => c.symbol(),
            Formula::Quant(q, _, _) => q.keyword(),
        }
    }

    /// Number of connectives and quantifiers.
    pub fn size(&self) -> usize {
        match self {
            Formula::Pred(..) => 0,
            Formula::Conn(_, xs) => 1 + xs.iter().map(Formula::size).sum::<usize>(),
            Formula::Quant(_, _, body) => 1 + body.size(),
        }
    }

    /// Calls `f` on every predicate argument, left to right.
    pub fn for_each_term<'a>(&'a self, f: &mut impl FnMut(&'a Term)) {
        match self {
            Formula::Pred(_, ts) => ts.iter().for_each(f),
            Formula::Conn(_, xs) => xs.iter().for_each(|x| x.for_each_term(f)),
            Formula::Quant(_, _, body) => body.for_each_term(f),
        }
    }

    /// Rebuilds the formula with `f` applied to every predicate argument.
    pub fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> Formula {
        match self {
            Formula::Pred(a, ts) => Formula::Pred(a.clone(), ts.iter().map(&mut *f).collect()),
            Formula::Conn(c, xs) => Formula::Conn(*c, xs.iter().map(|x| x.map_terms(f)).collect()),
            Formula::Quant(q, b, body) => Formula::Quant(*q, b.clone(), Box::new(body.map_terms(f))),
        }
    }

    /// True when every `Bound(i)` sits under more than `i` quantifiers.
    pub fn is_closed(&self) -> bool {
        loose_bound_depth(self).is_none()
    }

    /// Checks connective arities and the absence of loose bound indices.
    pub fn is_well_formed(&self) -> bool {
        fn arities(a: &Formula) -> bool {
            match a {
                Formula::Pred(..) => true,
                Formula::Conn(c, xs) => xs.len() == c.arity() && xs.iter().all(arities),
                Formula::Quant(_, _, body) => arities(body),
            }
        }
        arities(self) && self.is_closed()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::unparse(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::print::term_to_string(self))
    }
}

/// Smallest quantifier depth at which a loose index was found, if any.
///
/// Returns `Some(depth)` where `depth` is the number of enclosing quantifiers
/// of the first offending `Bound`.
pub fn loose_bound_depth(a: &Formula) -> Option<usize> {
    fn term(depth: usize, t: &Term) -> bool {
        match t {
            Term::Bound(i) => *i >= depth,
            Term::Fun(_, args) => args.iter().any(|u| term(depth, u)),
            _ => false,
        }
    }
    fn form(depth: usize, a: &Formula) -> Option<usize> {
        match a {
            Formula::Pred(_, ts) => ts.iter().any(|t| term(depth, t)).then_some(depth),
            Formula::Conn(_, xs) => xs.iter().find_map(|x| form(depth, x)),
            Formula::Quant(_, _, body) => form(depth + 1, body),
        }
    }
    form(0, a)
}

/// Replaces every occurrence of the atomic term `old` by `new` throughout `t`.
pub fn replace_term(old: &Term, new: &Term, t: &Term) -> Term {
    if t == old {
        return new.clone();
    }
    match t {
        Term::Fun(a, ts) => Term::Fun(a.clone(), ts.iter().map(|u| replace_term(old, new, u)).collect()),
        _ => t.clone(),
    }
}

/// Replaces `t` by the bound variable of a new outermost quantifier.
///
/// The caller attaches the quantifier node to the result.
pub fn abstract_over(t: &Term, a: &Formula) -> Formula {
    debug_assert!(!t.has_bound());
    fn abs(t: &Term, i: usize, a: &Formula) -> Formula {
        match a {
            Formula::Pred(p, ts) => Formula::Pred(
                p.clone(),
                ts.iter().map(|u| replace_term(t, &Term::Bound(i), u)).collect(),
            ),
            Formula::Conn(c, xs) => Formula::Conn(*c, xs.iter().map(|x| abs(t, i, x)).collect()),
            Formula::Quant(q, b, body) => Formula::Quant(*q, b.clone(), Box::new(abs(t, i + 1, body))),
        }
    }
    abs(t, 0, a)
}

/// Substitutes `t` for the outermost bound variable of a quantifier body.
pub fn subst_bound(t: &Term, a: &Formula) -> Formula {
    debug_assert!(!t.has_bound());
    fn subst(t: &Term, i: usize, a: &Formula) -> Formula {
        match a {
            Formula::Pred(p, ts) => Formula::Pred(
                p.clone(),
                ts.iter().map(|u| replace_term(&Term::Bound(i), t, u)).collect(),
            ),
            Formula::Conn(c, xs) => Formula::Conn(*c, xs.iter().map(|x| subst(t, i, x)).collect()),
            Formula::Quant(q, b, body) => Formula::Quant(*q, b.clone(), Box::new(subst(t, i + 1, body))),
        }
    }
    subst(t, 0, a)
}

/// Supply of fresh names `a, b, ..., z, aa, ab, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameSupply {
    counter: u64,
}

impl NameSupply {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of names drawn so far.
    pub fn drawn(&self) -> u64 {
        self.counter
    }

    pub fn reset(&mut self) {
        self.counter = 0;
    }

    pub fn fresh(&mut self) -> String {
        let name = Self::name_of(self.counter);
        self.counter += 1;
        name
    }

    /// The `n`-th name of the sequence, counting from zero.
    pub fn name_of(n: u64) -> String {
        let mut n = n + 1;
        let mut letters = Vec::new();
        while n > 0 {
            n -= 1;
            letters.push(b'a' + (n % 26) as u8);
            n /= 26;
        }
        letters.reverse();
        String::from_utf8(letters).expect("ascii letters")
    }
}

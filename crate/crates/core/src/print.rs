//! Conversion of terms and formulae back to the ASCII syntax.
//!
//! Quantified bodies are printed by substituting a constant carrying the
//! bound variable's display name. If the body already mentions a constant of
//! that name the output is ambiguous; [`unparse_fresh`] renames instead.

use std::collections::HashSet;

use crate::syntax::{subst_bound, Connective, Formula, Term};

pub fn term_to_string(t: &Term) -> String {
    match t {
        Term::Param(a, _) => a.clone(),
        Term::Var(a) => format!("?{a}"),
        Term::Bound(i) => format!("B.{i}"),
        Term::Fun(a, ts) => format!("{a}{}", args_to_string(ts)),
    }
}

/// `(t1,...,tn)`, or the empty string for no arguments.
pub fn args_to_string(ts: &[Term]) -> String {
    if ts.is_empty() {
        String::new()
    } else {
        let parts: Vec<_> = ts.iter().map(term_to_string).collect();
        format!("({})", parts.join(","))
    }
}

fn form_to_string(prec: u8, a: &Formula, fresh: bool) -> String {
    match a {
        Formula::Pred(p, ts) => format!("{p}{}", args_to_string(ts)),
        Formula::Conn(Connective::Not, xs) => {
            format!("~{}", form_to_string(Connective::Not.precedence(), &xs[0], fresh))
        }
        Formula::Conn(c, xs) => {
            let inner = c.precedence().max(prec);
            let z = format!(
                "{} {} {}",
                form_to_string(inner, &xs[0], fresh),
                c.symbol(),
                form_to_string(inner, &xs[1], fresh)
            );
            if c.precedence() <= prec {
                format!("({z})")
            } else {
                z
            }
        }
        Formula::Quant(q, b, body) => {
            let name = if fresh { unused_name(b, body) } else { b.clone() };
            let inst = subst_bound(&Term::constant(name.clone()), body);
            let z = format!("{} {name}. {}", q.keyword(), form_to_string(0, &inst, fresh));
            if prec > 0 {
                format!("({z})")
            } else {
                z
            }
        }
    }
}

/// Prints a formula exactly as the classic printer does.
pub fn unparse(a: &Formula) -> String {
    form_to_string(0, a, false)
}

/// Like [`unparse`], but renames bound variables whose display name clashes
/// with a symbol already visible in the body, so the output parses back to
/// the same formula.
pub fn unparse_fresh(a: &Formula) -> String {
    form_to_string(0, a, true)
}

fn symbols_in(a: &Formula, out: &mut HashSet<String>) {
    fn term(t: &Term, out: &mut HashSet<String>) {
        match t {
            Term::Fun(f, ts) => {
                out.insert(f.clone());
                ts.iter().for_each(|u| term(u, out));
            }
            Term::Param(p, _) => {
                out.insert(p.clone());
            }
            Term::Var(_) | Term::Bound(_) => {}
        }
    }
    a.for_each_term(&mut |t| term(t, out));
}

fn unused_name(preferred: &str, body: &Formula) -> String {
    let mut taken = HashSet::new();
    symbols_in(body, &mut taken);
    if !taken.contains(preferred) {
        return preferred.to_string();
    }
    (1..)
        .map(|i| format!("{preferred}{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded search")
}

/// Comma-separated formulae, or `empty`.
pub fn formulas_to_string<'a>(xs: impl IntoIterator<Item = &'a Formula>) -> String {
    let parts: Vec<_> = xs.into_iter().map(unparse).collect();
    if parts.is_empty() {
        "empty".to_string()
    } else {
        parts.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    #[test]
    fn drops_redundant_parentheses() {
        let a = parse("(P | Q) & (P | R) --> P | (Q & R)").unwrap();
        assert_eq!(unparse(&a), "(P | Q) & (P | R) --> P | Q & R");
    }

    #[test]
    fn zero_place_predicate() {
        assert_eq!(unparse(&Formula::atom("P")), "P");
    }

    #[test]
    fn right_nested_implications_keep_parentheses() {
        let a = parse("(P --> (Q-->R)) --> (P | Q --> R)").unwrap();
        assert_eq!(unparse(&a), "(P --> (Q --> R)) --> (P | Q --> R)");
    }

    #[test]
    fn quantifiers() {
        let a = parse("ALL x. EXISTS y. R(x,y)").unwrap();
        assert_eq!(unparse(&a), "ALL x. EXISTS y. R(x,y)");
        let b = parse("(ALL x. P(x)) & (ALL x. Q(x)) <-> ~(EXISTS y. P(y))").unwrap();
        assert_eq!(unparse(&b), "(ALL x. P(x)) & (ALL x. Q(x)) <-> ~(EXISTS y. P(y))");
    }

    #[test]
    fn terms() {
        assert_eq!(term_to_string(&Term::var("a")), "?a");
        assert_eq!(term_to_string(&Term::param("b", ["a"])), "b");
        assert_eq!(term_to_string(&Term::Bound(3)), "B.3");
        let t = Term::fun("g", vec![Term::constant("0"), Term::var("c")]);
        assert_eq!(term_to_string(&t), "g(0,?c)");
    }

    #[test]
    fn loose_bound_prints_debug_form() {
        let a = Formula::pred("P", vec![Term::Bound(0)]);
        assert_eq!(unparse(&a), "P(B.0)");
    }

    #[test]
    fn shadowing_printer_is_ambiguous() {
        // body mentions constant y; the classic printer reuses the name
        let body = Formula::pred("E", vec![Term::Bound(0), Term::constant("y")]);
        let a = Formula::Quant(crate::syntax::Quantifier::Exists, "y".into(), Box::new(body));
        assert_eq!(unparse(&a), "EXISTS y. E(y,y)");
        assert_ne!(parse(&unparse(&a)).unwrap(), a);
        assert_eq!(unparse_fresh(&a), "EXISTS y1. E(y1,y)");
        assert_eq!(parse(&unparse_fresh(&a)).unwrap(), a);
    }

    #[test]
    fn sequent_lists() {
        assert_eq!(formulas_to_string([]), "empty");
        let a = Formula::atom("P");
        let b = Formula::atom("Q");
        assert_eq!(formulas_to_string([&a, &b]), "P, Q");
    }
}

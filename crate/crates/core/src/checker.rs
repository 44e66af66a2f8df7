//! Independent validation of proof trees against the sequent rules.
//!
//! Works on ground trees only and relies on nothing but the syntax and the
//! tree type: no unification, no goal tables.

use std::collections::HashMap;
use std::fmt;

use crate::proof::{ProofTree, Rule, Sequent};
use crate::syntax::{subst_bound, Connective, Formula, Quantifier, Side, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root")?;
        for i in &self.path {
            write!(f, ".{i}")?;
        }
        write!(f, ": {}", self.reason)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted() {
            return writeln!(f, "accepted");
        }
        writeln!(f, "rejected")?;
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every node of `tree`, collecting one violation per bad node.
pub fn check_proof(tree: &ProofTree) -> CheckReport {
    let mut report = CheckReport::default();
    let mut path = Vec::new();
    walk(tree, &mut path, &mut report);
    report
}

fn walk(t: &ProofTree, path: &mut Vec<usize>, report: &mut CheckReport) {
    if let Err(reason) = check_node(t) {
        report.violations.push(Violation { path: path.clone(), reason });
    }
    for (i, p) in t.premises.iter().enumerate() {
        path.push(i);
        walk(p, path, report);
        path.pop();
    }
}

fn is_plain(t: &Term) -> bool {
    match t {
        Term::Fun(_, ts) => ts.iter().all(is_plain),
        Term::Var(_) | Term::Param(..) | Term::Bound(_) => false,
    }
}

fn formula_is_plain(a: &Formula) -> bool {
    let mut ok = a.is_closed();
    a.for_each_term(&mut |t| {
        if !is_plain_or_bound(t) {
            ok = false;
        }
    });
    ok
}

fn is_plain_or_bound(t: &Term) -> bool {
    match t {
        Term::Fun(_, ts) => ts.iter().all(is_plain_or_bound),
        Term::Bound(_) => true,
        Term::Var(_) | Term::Param(..) => false,
    }
}

fn check_node(t: &ProofTree) -> Result<(), String> {
    let seq = &t.sequent;
    if let Some(a) = seq.left.iter().chain(&seq.right).find(|a| !formula_is_plain(a)) {
        return Err(format!("formula {a} is not closed and ground"));
    }
    let arity = t.rule.arity();
    if t.premises.len() != arity {
        return Err(format!("{} takes {arity} premise(s), found {}", t.rule, t.premises.len()));
    }
    match (&t.witness, t.rule.takes_witness()) {
        (None, true) => return Err(format!("{} needs a witness", t.rule)),
        (Some(_), false) => return Err(format!("{} takes no witness", t.rule)),
        (Some(w), true) if !is_plain(w) => return Err(format!("witness {w} is not a ground term")),
        _ => {}
    }
    if t.rule == Rule::Basic {
        return if seq.left.iter().any(|a| seq.right.contains(a)) {
            Ok(())
        } else {
            Err("basic sequent has no formula common to both sides".into())
        };
    }
    let side = t.rule.side().expect("non-basic rule");
    let mut candidates: Vec<&Formula> = Vec::new();
    for a in seq.side(side) {
        if matches_rule(t.rule, a) && !candidates.contains(&a) {
            candidates.push(a);
        }
    }
    if candidates.is_empty() {
        return Err(format!("no principal formula for {} in the conclusion", t.rule));
    }
    if let (Rule::Quant(q, s), Some(w)) = (t.rule, &t.witness) {
        if is_eigen(q, s) {
            let Term::Fun(name, args) = w else { unreachable!() };
            if !args.is_empty() {
                return Err(format!("eigenvariable {w} must be a constant"));
            }
            if occurs_in_sequent(name, seq) {
                return Err(format!("eigenvariable {name} occurs in the conclusion"));
            }
        }
    }
    for a in candidates {
        let expected = premises_for(t.rule, a, seq, t.witness.as_ref());
        if expected.len() == t.premises.len()
            && expected.iter().zip(&t.premises).all(|(e, p)| same_sequent(e, &p.sequent))
        {
            return Ok(());
        }
    }
    Err(format!("premises do not follow from the conclusion by {}", t.rule))
}

fn is_eigen(q: Quantifier, s: Side) -> bool {
    matches!((q, s), (Quantifier::All, Side::Right) | (Quantifier::Exists, Side::Left))
}

fn matches_rule(rule: Rule, a: &Formula) -> bool {
    match (rule, a) {
        (Rule::Conn(c, _), Formula::Conn(d, _)) => c == *d,
        (Rule::Quant(q, _), Formula::Quant(r, _, _)) => q == *r,
        _ => false,
    }
}

fn term_mentions(name: &str, t: &Term) -> bool {
    match t {
        Term::Fun(f, ts) => f == name || ts.iter().any(|u| term_mentions(name, u)),
        Term::Param(p, _) => p == name,
        Term::Var(_) | Term::Bound(_) => false,
    }
}

fn occurs_in_sequent(name: &str, seq: &Sequent) -> bool {
    seq.left.iter().chain(&seq.right).any(|a| {
        let mut hit = false;
        a.for_each_term(&mut |t| hit |= term_mentions(name, t));
        hit
    })
}

fn without(xs: &[Formula], a: &Formula) -> Vec<Formula> {
    let mut out = xs.to_vec();
    if let Some(i) = out.iter().position(|x| x == a) {
        out.remove(i);
    }
    out
}

/// The premises the rule demands when `a` is the principal formula.
fn premises_for(rule: Rule, a: &Formula, seq: &Sequent, witness: Option<&Term>) -> Vec<Sequent> {
    use Side::*;
    let side = rule.side().expect("non-basic rule");
    let mut rest = seq.clone();
    *rest.side_mut(side) = without(seq.side(side), a);
    let with = |adds: &[(Side, &Formula)]| {
        let mut s = rest.clone();
        for (sd, f) in adds {
            s.side_mut(*sd).push((*f).clone());
        }
        s
    };
    match (rule, a) {
        (Rule::Conn(Connective::Not, _), Formula::Conn(_, xs)) => {
            let flip = if side == Left { Right } else { Left };
            vec![with(&[(flip, &xs[0])])]
        }
        (Rule::Conn(c, _), Formula::Conn(_, xs)) => {
            let (x, y) = (&xs[0], &xs[1]);
            match (c, side) {
                (Connective::And, Left) => vec![with(&[(Left, x), (Left, y)])],
                (Connective::And, Right) => vec![with(&[(Right, x)]), with(&[(Right, y)])],
                (Connective::Or, Left) => vec![with(&[(Left, x)]), with(&[(Left, y)])],
                (Connective::Or, Right) => vec![with(&[(Right, x), (Right, y)])],
                (Connective::Implies, Left) => vec![with(&[(Right, x)]), with(&[(Left, y)])],
                (Connective::Implies, Right) => vec![with(&[(Left, x), (Right, y)])],
                (Connective::Iff, Left) => vec![with(&[(Left, x), (Left, y)]), with(&[(Right, x), (Right, y)])],
                (Connective::Iff, Right) => vec![with(&[(Left, x), (Right, y)]), with(&[(Right, x), (Left, y)])],
                (Connective::Not, _) => unreachable!(),
            }
        }
        (Rule::Quant(q, _), Formula::Quant(_, _, body)) => {
            let Some(w) = witness else { return Vec::new() };
            let inst = subst_bound(w, body);
            if is_eigen(q, side) {
                vec![with(&[(side, &inst)])]
            } else {
                // the quantified formula stays in the premise
                let mut s = seq.clone();
                s.side_mut(side).push(inst);
                vec![s]
            }
        }
        _ => Vec::new(),
    }
}

fn multiset(xs: &[Formula]) -> HashMap<&Formula, usize> {
    let mut m = HashMap::new();
    for x in xs {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

/// Equality of sequents up to the order of formulae on each side.
pub fn same_sequent(a: &Sequent, b: &Sequent) -> bool {
    a.left.len() == b.left.len()
        && a.right.len() == b.right.len()
        && multiset(&a.left) == multiset(&b.left)
        && multiset(&a.right) == multiset(&b.right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn seq(l: &[&str], r: &[&str]) -> Sequent {
        Sequent::new(l.iter().map(|s| f(s)).collect(), r.iter().map(|s| f(s)).collect())
    }

    fn swap_tree() -> ProofTree {
        ProofTree::node(
            Rule::Conn(Connective::And, Side::Left),
            seq(&["A & B"], &["B & A"]),
            None,
            vec![ProofTree::node(
                Rule::Conn(Connective::And, Side::Right),
                seq(&["A", "B"], &["B & A"]),
                None,
                vec![ProofTree::basic(seq(&["A", "B"], &["B"])), ProofTree::basic(seq(&["B", "A"], &["A"]))],
            )],
        )
    }

    #[test]
    fn accepts_conjunction_swap() {
        let r = check_proof(&swap_tree());
        assert!(r.accepted(), "{r}");
        assert_eq!(r.to_string(), "accepted\n");
    }

    #[test]
    fn accepts_basic_leaf() {
        assert!(check_proof(&ProofTree::basic(seq(&["A"], &["A"]))).accepted());
        assert!(!check_proof(&ProofTree::basic(seq(&["A"], &["B"]))).accepted());
    }

    #[test]
    fn premise_order_within_sides_is_free() {
        let mut t = swap_tree();
        t.premises[0].sequent.left.reverse();
        assert!(check_proof(&t).accepted());
    }

    #[test]
    fn rejects_wrong_arity_and_label() {
        let mut t = swap_tree();
        t.premises[0].premises.pop();
        let r = check_proof(&t);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].path, vec![0]);
        let mut t = swap_tree();
        t.rule = Rule::Conn(Connective::Or, Side::Left);
        assert!(!check_proof(&t).accepted());
    }

    #[test]
    fn eigenvariable_in_conclusion_is_rejected() {
        let t = ProofTree::node(
            Rule::Quant(Quantifier::All, Side::Right),
            seq(&["P(a)"], &["ALL x. P(x)"]),
            Some(Term::constant("a")),
            vec![ProofTree::basic(seq(&["P(a)"], &["P(a)"]))],
        );
        let r = check_proof(&t);
        assert!(!r.accepted());
        assert!(r.violations[0].reason.contains("eigenvariable a occurs"), "{r}");
    }

    #[test]
    fn forall_left_must_retain_formula() {
        let good = ProofTree::node(
            Rule::Quant(Quantifier::All, Side::Left),
            seq(&["ALL x. P(x)"], &["P(c)"]),
            Some(Term::constant("c")),
            vec![ProofTree::basic(seq(&["ALL x. P(x)", "P(c)"], &["P(c)"]))],
        );
        assert!(check_proof(&good).accepted());
        let mut bad = good.clone();
        bad.premises[0].sequent = seq(&["P(c)"], &["P(c)"]);
        assert!(!check_proof(&bad).accepted());
        let mut bad = good;
        bad.witness = None;
        assert!(!check_proof(&bad).accepted());
    }

    #[test]
    fn metavariables_are_rejected() {
        let t = ProofTree::basic(seq(&["P(?a)"], &["P(?a)"]));
        assert!(!check_proof(&t).accepted());
    }

    #[test]
    fn report_paths_print() {
        let v = Violation { path: vec![0, 1], reason: "x".into() };
        assert_eq!(v.to_string(), "root.0.1: x");
    }

    #[test]
    fn checker_does_not_use_unification() {
        let src = include_str!("checker.rs");
        let needle = ["crate::", "unify"].concat();
        assert!(!src.contains(&needle));
    }
}

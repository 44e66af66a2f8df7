//! Reference implementations the library is tested against. Nothing here
//! calls into the prover; each oracle works by brute force.
#![allow(dead_code)]

use std::collections::BTreeSet;

use lkprover::proof::Sequent;
use lkprover::session::Session;
use lkprover::syntax::{Connective, Formula, Quantifier, Term};
use rand::Rng;

pub const LETTERS: [&str; 4] = ["P", "Q", "R", "S"];

fn letters_of(a: &Formula, acc: &mut BTreeSet<String>) {
    match a {
        Formula::Pred(p, _) => {
            acc.insert(p.clone());
        }
        Formula::Conn(_, xs) => xs.iter().for_each(|x| letters_of(x, acc)),
        Formula::Quant(_, _, b) => letters_of(b, acc),
    }
}

fn eval(a: &Formula, val: &dyn Fn(&str) -> bool) -> bool {
    match a {
        Formula::Pred(p, _) => val(p),
        Formula::Conn(c, xs) => {
            let v = |i: usize| eval(&xs[i], val);
            match c {
                Connective::Not => !v(0),
                Connective::And => v(0) && v(1),
                Connective::Or => v(0) || v(1),
                Connective::Implies => !v(0) || v(1),
                Connective::Iff => v(0) == v(1),
            }
        }
        Formula::Quant(..) => panic!("propositional formulas only"),
    }
}

/// Is the propositional sequent true under every assignment?
pub fn truth_table_valid(left: &[Formula], right: &[Formula]) -> bool {
    let mut names = BTreeSet::new();
    left.iter().chain(right).for_each(|a| letters_of(a, &mut names));
    let names: Vec<String> = names.into_iter().collect();
    (0u32..1 << names.len()).all(|bits| {
        let val = |p: &str| bits >> names.iter().position(|n| n == p).unwrap() & 1 == 1;
        !left.iter().all(|a| eval(a, &val)) || right.iter().any(|a| eval(a, &val))
    })
}

/// All formulas over [`LETTERS`] with exactly `k` connectives, for each
/// `k <= max`.
pub fn formulas_by_size(max: usize) -> Vec<Vec<Formula>> {
    let mut by: Vec<Vec<Formula>> = vec![LETTERS.iter().map(|p| Formula::atom(*p)).collect()];
    for k in 1..=max {
        let mut now: Vec<Formula> = by[k - 1].iter().map(|a| Formula::not(a.clone())).collect();
        for c in [Connective::And, Connective::Or, Connective::Implies, Connective::Iff] {
            for i in 0..k {
                for a in &by[i] {
                    for b in &by[k - 1 - i] {
                        now.push(Formula::binary(c, a.clone(), b.clone()));
                    }
                }
            }
        }
        by.push(now);
    }
    by
}

/// `|- A` and `A |-` with at most three connectives, `A |- B` with at most
/// two in total and `A, B |- C` with at most one.
pub fn propositional_sequents() -> Vec<Sequent> {
    let by = formulas_by_size(3);
    let upto = |n: usize| by[..=n].iter().flatten();
    let mut out = Vec::new();
    for a in upto(3) {
        out.push(Sequent::new(vec![], vec![a.clone()]));
        out.push(Sequent::new(vec![a.clone()], vec![]));
    }
    for i in 0..=2 {
        for j in 0..=2 - i {
            for a in &by[i] {
                for b in &by[j] {
                    out.push(Sequent::new(vec![a.clone()], vec![b.clone()]));
                }
            }
        }
    }
    for i in 0..=1 {
        for j in 0..=1 - i {
            for k in 0..=1 - i - j {
                for a in &by[i] {
                    for b in &by[j] {
                        for c in &by[k] {
                            out.push(Sequent::new(vec![a.clone(), b.clone()], vec![c.clone()]));
                        }
                    }
                }
            }
        }
    }
    out
}

const FUNS: [(&str, usize); 4] = [("a", 0), ("b", 0), ("f", 1), ("g", 2)];
const PREDS: [(&str, usize); 4] = [("P", 0), ("Q", 1), ("R", 2), ("S", 1)];
const BINDERS: [&str; 3] = ["x", "y", "z"];

fn random_term(rng: &mut impl Rng, depth: usize) -> Term {
    let pick = rng.gen_range(0..if depth == 0 { 4 } else { 6 });
    match pick {
        0 => Term::var(["u", "v"][rng.gen_range(0..2)]),
        1 | 2 => Term::constant(["a", "b", "x", "y"][rng.gen_range(0..4)]),
        3 => Term::constant("z"),
        _ => {
            let (f, n) = FUNS[rng.gen_range(2..4)];
            Term::fun(f, (0..n).map(|_| random_term(rng, depth - 1)).collect())
        }
    }
}

/// A formula of depth at most `depth` built with the public constructors,
/// quantifiers binding whatever constants of that name sit in their body.
pub fn random_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    let pick = if depth == 0 { 0 } else { rng.gen_range(0..9) };
    match pick {
        0 | 1 => {
            let (p, n) = PREDS[rng.gen_range(0..PREDS.len())];
            Formula::pred(p, (0..n).map(|_| random_term(rng, 2)).collect())
        }
        2 => Formula::not(random_formula(rng, depth - 1)),
        3..=6 => {
            let c = [Connective::And, Connective::Or, Connective::Implies, Connective::Iff][pick - 3];
            Formula::binary(c, random_formula(rng, depth - 1), random_formula(rng, depth - 1))
        }
        _ => {
            let q = if pick == 7 { Quantifier::All } else { Quantifier::Exists };
            Formula::quant(q, BINDERS[rng.gen_range(0..3)], random_formula(rng, depth - 1))
        }
    }
}

/// Every term over `a/0`, `f/1`, `g/2` and the given variables with height
/// at most `height`; leaves have height 1.
pub fn term_universe(vars: &[&str], height: usize) -> Vec<Term> {
    let mut all: Vec<Term> = vec![Term::constant("a")];
    all.extend(vars.iter().map(|v| Term::var(*v)));
    for _ in 1..height {
        let prev = all.clone();
        let mut next = vec![Term::constant("a")];
        next.extend(vars.iter().map(|v| Term::var(*v)));
        next.extend(prev.iter().map(|t| Term::fun("f", vec![t.clone()])));
        for s in &prev {
            for t in &prev {
                next.push(Term::fun("g", vec![s.clone(), t.clone()]));
            }
        }
        all = next;
    }
    all
}

/// Replaces variables by their values in `sigma`, leaving others alone.
pub fn ground(sigma: &[(&str, &Term)], t: &Term) -> Term {
    match t {
        Term::Var(v) => sigma.iter().find(|(n, _)| n == v).map_or_else(|| t.clone(), |(_, u)| (*u).clone()),
        Term::Fun(f, ts) => Term::fun(f.clone(), ts.iter().map(|u| ground(sigma, u)).collect()),
        _ => t.clone(),
    }
}

/// Strips trailing blanks and collapses runs of spaces so that transcripts
/// can be compared independent of column alignment.
pub fn normalize(text: &str) -> String {
    text.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("\n")
}

/// Runs each command in a fresh session and returns everything printed.
pub fn transcript(commands: &[&str]) -> String {
    let mut s = Session::default();
    let mut out = Vec::new();
    for c in commands {
        let _ = s.execute(c, &mut out);
    }
    String::from_utf8(out).unwrap()
}

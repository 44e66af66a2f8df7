//! Depth-first proof search with backtracking and a bound on quantifier
//! expansions. Unlike the committed strategy it retries other closing pairs
//! and other instantiations when a later branch fails, and it returns a
//! proof tree.
//!
//! At each sequent the search first tries every way of closing it by
//! unifying a left atom with a right atom. If none of those leads to a
//! proof it commits to the cheapest reducible formula (cost 1 before cost
//! 2, left before right). When only atoms and `ALL:left`/`EXISTS:right`
//! formulae remain and the budget is positive, all of those are expanded
//! at once and the budget of that branch drops by one.

use std::collections::{HashMap, HashSet};

use crate::proof::{ProofTree, Rule, Sequent};
use crate::prover::cost;
use crate::syntax::{subst_bound, Connective, Formula, NameSupply, Side, Term};
use crate::unify::{instantiate_formula, instantiate_term, unify_atoms, vars_in_formula, Env};

/// Remaining number of quantifier-expansion rounds on a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SearchLimit(pub usize);

type Cont<'k> = dyn FnMut(&mut Search, &Env, ProofTree) -> Option<ProofTree> + 'k;
type ContAll<'k> = dyn FnMut(&mut Search, &Env, Vec<ProofTree>) -> Option<ProofTree> + 'k;

struct Search {
    names: NameSupply,
    taken: HashSet<String>,
}

impl Search {
    fn fresh(&mut self) -> String {
        loop {
            let n = self.names.fresh();
            if !self.taken.contains(&n) {
                return n;
            }
        }
    }

    fn solve(&mut self, seq: &Sequent, n: usize, env: &Env, k: &mut Cont<'_>) -> Option<ProofTree> {
        let seq = Sequent::new(
            seq.left.iter().map(|a| instantiate_formula(env, a)).collect(),
            seq.right.iter().map(|b| instantiate_formula(env, b)).collect(),
        );
        for a in seq.left.iter().filter(|a| a.is_pred()) {
            for b in seq.right.iter().filter(|b| b.is_pred()) {
                if let Ok(env2) = unify_atoms(a, b, env.clone()) {
                    let grew = env2.len() > env.len();
                    if let Some(done) = k(self, &env2, ProofTree::basic(seq.clone())) {
                        return Some(done);
                    }
                    if !grew {
                        // nothing cheaper than a closure without bindings
                        return None;
                    }
                }
            }
        }
        if let Some((side, a)) = cheapest(&seq) {
            return self.reduce(&seq, side, a, n, env, k);
        }
        if n == 0 {
            return None;
        }
        self.expand(&seq, n, env, k)
    }

    fn solve_all(
        &mut self,
        goals: &[Sequent],
        n: usize,
        env: &Env,
        done: Vec<ProofTree>,
        k: &mut ContAll<'_>,
    ) -> Option<ProofTree> {
        match goals.split_first() {
            None => k(self, env, done),
            Some((g, rest)) => self.solve(g, n, env, &mut |s, env2, tree| {
                let mut done = done.clone();
                done.push(tree);
                s.solve_all(rest, n, env2, done, k)
            }),
        }
    }

    fn reduce(
        &mut self,
        seq: &Sequent,
        side: Side,
        principal: Formula,
        n: usize,
        env: &Env,
        k: &mut Cont<'_>,
    ) -> Option<ProofTree> {
        let mut rest = seq.clone();
        let at = rest.side(side).iter().position(|x| *x == principal).expect("principal in sequent");
        rest.side_mut(side).remove(at);
        let with = |adds: Vec<(Side, Formula)>| {
            let mut s = rest.clone();
            for (sd, f) in adds {
                s.side_mut(sd).insert(0, f);
            }
            s
        };
        use Side::*;
        let (rule, witness, premises) = match &principal {
            Formula::Conn(c, xs) => {
                let x = xs[0].clone();
                let flip = if side == Left { Right } else { Left };
                let premises = match (c, side) {
                    (Connective::Not, _) => vec![with(vec![(flip, x)])],
                    (c, side) => {
                        let y = xs[1].clone();
                        match (c, side) {
                            (Connective::And, Left) => vec![with(vec![(Left, x), (Left, y)])],
                            (Connective::And, Right) => vec![with(vec![(Right, x)]), with(vec![(Right, y)])],
                            (Connective::Or, Left) => vec![with(vec![(Left, x)]), with(vec![(Left, y)])],
                            (Connective::Or, Right) => vec![with(vec![(Right, x), (Right, y)])],
                            (Connective::Implies, Left) => vec![with(vec![(Right, x)]), with(vec![(Left, y)])],
                            (Connective::Implies, Right) => vec![with(vec![(Left, x), (Right, y)])],
                            (Connective::Iff, Left) => {
                                vec![with(vec![(Left, x.clone()), (Left, y.clone())]), with(vec![(Right, x), (Right, y)])]
                            }
                            (Connective::Iff, Right) => {
                                vec![with(vec![(Left, x.clone()), (Right, y.clone())]), with(vec![(Right, x), (Left, y)])]
                            }
                            (Connective::Not, _) => unreachable!(),
                        }
                    }
                };
                (Rule::Conn(*c, side), None, premises)
            }
            Formula::Quant(q, _, body) => {
                let mut deps = Vec::new();
                for a in seq.left.iter().chain(&seq.right) {
                    vars_in_formula(a, &mut deps);
                }
                let p = Term::Param(self.fresh(), deps);
                let inst = subst_bound(&p, body);
                (Rule::Quant(*q, side), Some(p), vec![with(vec![(side, inst)])])
            }
            Formula::Pred(..) => unreachable!("atoms are never reduced"),
        };
        let conclusion = seq.clone();
        self.solve_all(&premises, n, env, Vec::new(), &mut |s, env2, trees| {
            k(s, env2, ProofTree::node(rule, conclusion.clone(), witness.clone(), trees))
        })
    }

    fn expand(&mut self, seq: &Sequent, n: usize, env: &Env, k: &mut Cont<'_>) -> Option<ProofTree> {
        let targets: Vec<(Side, Formula)> = seq
            .left
            .iter()
            .map(|a| (Side::Left, a))
            .chain(seq.right.iter().map(|b| (Side::Right, b)))
            .filter(|(s, a)| cost(*s, a) == 3)
            .map(|(s, a)| (s, a.clone()))
            .collect();
        if targets.is_empty() {
            return None;
        }
        // one node per expansion, each adding its instance to the sequent
        let mut chain: Vec<(Rule, Sequent, Term)> = Vec::new();
        let mut cur = seq.clone();
        for (side, a) in targets {
            let Formula::Quant(q, _, body) = &a else { unreachable!() };
            let v = Term::Var(self.fresh());
            let inst = subst_bound(&v, body);
            let next = {
                let mut s = cur.clone();
                s.side_mut(side).insert(0, inst);
                s
            };
            chain.push((Rule::Quant(*q, side), cur, v));
            cur = next;
        }
        self.solve(&cur, n - 1, env, &mut |s, env2, tree| {
            let tree = chain
                .iter()
                .rev()
                .fold(tree, |t, (rule, sq, w)| ProofTree::node(*rule, sq.clone(), Some(w.clone()), vec![t]));
            k(s, env2, tree)
        })
    }

    /// Instantiates the tree and turns parameters and leftover
    /// metavariables into constants.
    fn finish(&mut self, env: &Env, tree: ProofTree) -> ProofTree {
        let mut leftovers: HashMap<String, String> = HashMap::new();
        self.finish_node(env, tree, &mut leftovers)
    }

    fn finish_node(&mut self, env: &Env, t: ProofTree, left: &mut HashMap<String, String>) -> ProofTree {
        let witness = t.witness.as_ref().map(|w| self.ground_term(&instantiate_term(env, w), left));
        let mut sides = [Vec::new(), Vec::new()];
        for (out, xs) in sides.iter_mut().zip([&t.sequent.left, &t.sequent.right]) {
            for a in xs {
                let a = instantiate_formula(env, a);
                out.push(a.map_terms(&mut |x| self.ground_term(x, left)));
            }
        }
        let [l, r] = sides;
        let sequent = Sequent::new(l, r);
        let premises = t.premises.into_iter().map(|p| self.finish_node(env, p, left)).collect();
        ProofTree { rule: t.rule, sequent, witness, premises }
    }

    fn ground_term(&mut self, t: &Term, left: &mut HashMap<String, String>) -> Term {
        match t {
            Term::Param(a, _) => Term::constant(a.clone()),
            Term::Var(v) => {
                if !left.contains_key(v) {
                    let c = self.fresh();
                    left.insert(v.clone(), c);
                }
                Term::constant(left[v].clone())
            }
            Term::Fun(f, ts) => Term::Fun(f.clone(), ts.iter().map(|u| self.ground_term(u, left)).collect()),
            Term::Bound(_) => t.clone(),
        }
    }
}

/// The first formula of cost 1, else of cost 2; left before right.
fn cheapest(seq: &Sequent) -> Option<(Side, Formula)> {
    for c in [1, 2] {
        for side in [Side::Left, Side::Right] {
            if let Some(a) = seq.side(side).iter().find(|a| cost(side, a) == c) {
                return Some((side, a.clone()));
            }
        }
    }
    None
}

/// Every identifier in the formulae: function, predicate and bound names.
pub fn identifiers(formulas: &[Formula]) -> HashSet<String> {
    fn term(t: &Term, out: &mut HashSet<String>) {
        match t {
            Term::Fun(f, ts) => {
                out.insert(f.clone());
                ts.iter().for_each(|u| term(u, out));
            }
            Term::Var(a) | Term::Param(a, _) => {
                out.insert(a.clone());
            }
            Term::Bound(_) => {}
        }
    }
    fn form(a: &Formula, out: &mut HashSet<String>) {
        match a {
            Formula::Pred(p, ts) => {
                out.insert(p.clone());
                ts.iter().for_each(|t| term(t, out));
            }
            Formula::Conn(_, xs) => xs.iter().for_each(|x| form(x, out)),
            Formula::Quant(_, b, body) => {
                out.insert(b.clone());
                form(body, out);
            }
        }
    }
    let mut out = HashSet::new();
    formulas.iter().for_each(|a| form(a, &mut out));
    out
}

/// Searches for a proof of `left |- right` within `limit` expansion rounds
/// per branch. The tree returned is ground: eigenvariables appear as fresh
/// constants.
pub fn prove_bounded(left: &[Formula], right: &[Formula], limit: SearchLimit) -> Option<ProofTree> {
    let all: Vec<Formula> = left.iter().chain(right).cloned().collect();
    let mut s = Search { names: NameSupply::new(), taken: identifiers(&all) };
    let root = Sequent::new(left.to_vec(), right.to_vec());
    s.solve(&root, limit.0, &Env::new(), &mut |s, env, tree| Some(s.finish(env, tree)))
}

/// Tries bounds `0..=max` in turn and returns the first that succeeds.
pub fn prove_iterative(left: &[Formula], right: &[Formula], max: usize) -> Option<(usize, ProofTree)> {
    (0..=max).find_map(|n| prove_bounded(left, right, SearchLimit(n)).map(|t| (n, t)))
}

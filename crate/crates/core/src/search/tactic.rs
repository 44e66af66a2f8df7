//! Tactics over proof states and the tacticals that combine them.
//!
//! A tactic maps a state to a lazy sequence of successor states; an empty
//! sequence means failure. Sequences are pulled on demand, so a combinator
//! never runs a tactic whose outcomes nobody asks for.

use std::iter;
use std::rc::Rc;

use crate::prover::{cost, proof_step, reduce_goal, solutions, Context, Goal, GoalTable};
use crate::syntax::NameSupply;

pub type Outcomes<S> = Box<dyn Iterator<Item = S>>;

pub struct Tactic<S>(Rc<dyn Fn(S) -> Outcomes<S>>);

impl<S> Clone for Tactic<S> {
    fn clone(&self) -> Self {
        Tactic(Rc::clone(&self.0))
    }
}

impl<S: Clone + 'static> Tactic<S> {
    pub fn new(f: impl Fn(S) -> Outcomes<S> + 'static) -> Self {
        Tactic(Rc::new(f))
    }

    /// A tactic with at most one outcome.
    pub fn from_fn(f: impl Fn(S) -> Option<S> + 'static) -> Self {
        Tactic::new(move |s| Box::new(f(s).into_iter()))
    }

    pub fn apply(&self, s: S) -> Outcomes<S> {
        (self.0)(s)
    }
}

/// Succeeds once, leaving the state unchanged.
pub fn all_tac<S: Clone + 'static>() -> Tactic<S> {
    Tactic::new(|s| Box::new(iter::once(s)))
}

/// Always fails.
pub fn no_tac<S: Clone + 'static>() -> Tactic<S> {
    Tactic::new(|_| Box::new(iter::empty()))
}

/// `t2` applied to every outcome of `t1`.
pub fn then<S: Clone + 'static>(t1: Tactic<S>, t2: Tactic<S>) -> Tactic<S> {
    Tactic::new(move |s: S| {
        let t2 = t2.clone();
        Box::new(t1.apply(s).flat_map(move |s2| t2.apply(s2)))
    })
}

/// The outcomes of `t1` if it has any, otherwise those of `t2`.
pub fn orelse<S: Clone + 'static>(t1: Tactic<S>, t2: Tactic<S>) -> Tactic<S> {
    Tactic::new(move |s: S| {
        let mut first = t1.apply(s.clone()).peekable();
        if first.peek().is_some() {
            Box::new(first)
        } else {
            t2.apply(s)
        }
    })
}

/// The outcomes of `t1` followed by those of `t2`; `t2` runs only once
/// `t1`'s are exhausted.
pub fn append<S: Clone + 'static>(t1: Tactic<S>, t2: Tactic<S>) -> Tactic<S> {
    Tactic::new(move |s: S| {
        let t2 = t2.clone();
        let later = s.clone();
        Box::new(t1.apply(s).chain(iter::once(()).flat_map(move |()| t2.apply(later.clone()))))
    })
}

/// Applies `t` as often as possible, then stops.
pub fn repeat<S: Clone + 'static>(t: Tactic<S>) -> Tactic<S> {
    // the recursive call is built only when the state is supplied
    Tactic::new(move |s| orelse(then(t.clone(), repeat(t.clone())), all_tac()).apply(s))
}

/// Outcomes of `t` that satisfy `keep`.
pub fn filter<S: Clone + 'static>(keep: impl Fn(&S) -> bool + 'static, t: Tactic<S>) -> Tactic<S> {
    let keep = Rc::new(keep);
    Tactic::new(move |s: S| {
        let keep = Rc::clone(&keep);
        Box::new(t.apply(s).filter(move |x| keep(x)))
    })
}

/// Explores the tree of outcomes of `t` depth first and yields each state
/// satisfying `done` without expanding it further.
pub fn depth_first<S: Clone + 'static>(done: impl Fn(&S) -> bool + 'static, t: Tactic<S>) -> Tactic<S> {
    let done: Rc<dyn Fn(&S) -> bool> = Rc::new(done);
    Tactic::new(move |s| Box::new(DepthFirst { stack: vec![Box::new(iter::once(s))], done: Rc::clone(&done), t: t.clone() }))
}

struct DepthFirst<S> {
    stack: Vec<Outcomes<S>>,
    done: Rc<dyn Fn(&S) -> bool>,
    t: Tactic<S>,
}

impl<S: Clone + 'static> Iterator for DepthFirst<S> {
    type Item = S;

    fn next(&mut self) -> Option<S> {
        while let Some(top) = self.stack.last_mut() {
            match top.next() {
                None => {
                    self.stack.pop();
                }
                Some(s) if (self.done)(&s) => return Some(s),
                Some(s) => {
                    let more = self.t.apply(s);
                    self.stack.push(more);
                }
            }
        }
        None
    }
}

/// A goal table together with its fresh-name supply and the number of
/// quantifier expansions made so far.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProofState {
    pub table: GoalTable,
    pub names: NameSupply,
    pub expansions: usize,
}

impl ProofState {
    /// The state right after reading a goal.
    pub fn new(table: GoalTable, names: NameSupply) -> Self {
        ProofState { table, names, expansions: 0 }
    }

    pub fn is_finished(&self) -> bool {
        self.table.is_empty()
    }
}

fn head_is_expansion(tab: &GoalTable) -> bool {
    tab.goals()
        .first()
        .and_then(|g| g.entries().first())
        .is_some_and(|e| cost(e.side, &e.formula) == 3)
}

/// One step of the committed strategy; fails where it reports that no
/// rules apply.
pub fn engine_step_tactic() -> Tactic<ProofState> {
    Tactic::from_fn(|s: ProofState| {
        let mut cx = Context::new();
        cx.names = s.names;
        let expanding = head_is_expansion(&s.table);
        let (_, table) = proof_step(&s.table, &mut cx).ok()?;
        Some(ProofState { table, names: cx.names, expansions: s.expansions + usize::from(expanding) })
    })
}

/// Closes the current goal, one outcome per unifiable pair of atoms.
pub fn close_tac() -> Tactic<ProofState> {
    Tactic::new(|s: ProofState| {
        let Some((head, rest)) = s.table.goals().split_first() else {
            return Box::new(iter::empty());
        };
        let rest = GoalTable::new(rest.to_vec());
        let outs: Vec<ProofState> = solutions(head)
            .map(|(_, env)| ProofState { table: rest.instantiate(&env), names: s.names.clone(), expansions: s.expansions })
            .collect();
        Box::new(outs.into_iter())
    })
}

/// Reduces the first formula of the current goal without trying to close
/// the subgoals.
pub fn reduce_tac() -> Tactic<ProofState> {
    Tactic::from_fn(|s: ProofState| {
        let (head, rest) = s.table.goals().split_first()?;
        let (entry, tail) = head.entries().split_first()?;
        let mut cx = Context::new();
        cx.names = s.names.clone();
        let subgoals = reduce_goal(entry, &Goal::from(tail.to_vec()), &mut cx).ok()?;
        let mut table = GoalTable::new(rest.to_vec());
        for g in subgoals {
            table.push_front(g);
        }
        let expansions = s.expansions + usize::from(entry.cost == 3);
        Some(ProofState { table, names: cx.names, expansions })
    })
}

/// Discards outcomes of `t` that exceed `n` quantifier expansions.
pub fn expansion_limit(n: usize, t: Tactic<ProofState>) -> Tactic<ProofState> {
    filter(move |s: &ProofState| s.expansions <= n, t)
}

/// Backtracking search over closures and reductions with at most `n`
/// quantifier expansions in total.
pub fn search_tac(n: usize) -> Tactic<ProofState> {
    depth_first(ProofState::is_finished, expansion_limit(n, append(close_tac(), reduce_tac())))
}

//! The automatic strategy: cost-ordered goals, a LIFO goal table, rule
//! reduction on the cheapest formula, and closure of new goals by
//! unification.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::print::{args_to_string, formulas_to_string, unparse};
pub use crate::syntax::Side;
use crate::syntax::{subst_bound, Connective, Formula, NameSupply, Quantifier, Term};
use crate::unify::{
    instantiate_formula, params_in_formula, unify_atoms, vars_in_formula, Env,
};

/// Cost of reducing `a` on `side`: 1 for one subgoal, 2 for two, 3 for a
/// quantifier expansion, 4 when no rule applies.
pub fn cost(side: Side, a: &Formula) -> u8 {
    use Connective::*;
    use Side::*;
    match (side, a) {
        (_, Formula::Conn(Not, _)) => 1,
        (Left, Formula::Conn(And, _)) => 1,
        (Right, Formula::Conn(Or, _)) => 1,
        (Right, Formula::Conn(Implies, _)) => 1,
        (Right, Formula::Quant(Quantifier::All, ..)) => 1,
        (Left, Formula::Quant(Quantifier::Exists, ..)) => 1,
        (Right, Formula::Conn(And, _)) => 2,
        (Left, Formula::Conn(Or, _)) => 2,
        (Left, Formula::Conn(Implies, _)) => 2,
        (_, Formula::Conn(Iff, _)) => 2,
        (Left, Formula::Quant(Quantifier::All, ..)) => 3,
        (Right, Formula::Quant(Quantifier::Exists, ..)) => 3,
        _ => 4,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub cost: u8,
    pub side: Side,
    pub formula: Formula,
}

impl Entry {
    pub fn new(side: Side, formula: Formula) -> Self {
        Entry { cost: cost(side, &formula), side, formula }
    }
}

/// A sequent as a list of entries ordered by nondecreasing cost.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Goal {
    entries: Vec<Entry>,
}

impl Goal {
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Inserts before any entries of equal cost.
    pub fn insert_early(&mut self, e: Entry) {
        let at = self.entries.iter().position(|y| y.cost >= e.cost).unwrap_or(self.entries.len());
        self.entries.insert(at, e);
    }

    /// Inserts after any entries of equal cost.
    pub fn insert_late(&mut self, e: Entry) {
        let at = self.entries.iter().position(|y| y.cost > e.cost).unwrap_or(self.entries.len());
        self.entries.insert(at, e);
    }

    /// The goal extended by `pairs`, each inserted early in turn.
    pub fn extended(&self, pairs: impl IntoIterator<Item = (Side, Formula)>) -> Goal {
        let mut g = self.clone();
        for (side, a) in pairs {
            g.insert_early(Entry::new(side, a));
        }
        g
    }

    /// Builds the initial goal `left |- right`; later formulae of each list
    /// end up before earlier ones of the same cost.
    pub fn from_sequent(left: &[Formula], right: &[Formula]) -> Goal {
        let pairs = left
            .iter()
            .map(|a| (Side::Left, a.clone()))
            .chain(right.iter().map(|b| (Side::Right, b.clone())));
        Goal::default().extended(pairs)
    }

    /// Left and right formulae, each in goal order.
    pub fn split(&self) -> (Vec<&Formula>, Vec<&Formula>) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for e in &self.entries {
            match e.side {
                Side::Left => left.push(&e.formula),
                Side::Right => right.push(&e.formula),
            }
        }
        (left, right)
    }

    pub fn instantiate(&self, env: &Env) -> Goal {
        if env.is_empty() {
            return self.clone();
        }
        Goal {
            entries: self
                .entries
                .iter()
                .map(|e| Entry { cost: e.cost, side: e.side, formula: instantiate_formula(env, &e.formula) })
                .collect(),
        }
    }

    /// Metavariables of the goal, gathered like `vars_in_term` (front insertion).
    pub fn vars(&self, acc: &mut Vec<String>) {
        for e in &self.entries {
            vars_in_formula(&e.formula, acc);
        }
    }

    pub fn params(&self, acc: &mut Vec<(String, Vec<String>)>) {
        for e in &self.entries {
            params_in_formula(&e.formula, acc);
        }
    }

    fn contains(&self, side: Side, a: &Formula) -> bool {
        self.entries.iter().any(|e| e.side == side && e.formula == *a)
    }

    /// Every entry's cost matches the cost table and costs never decrease.
    pub fn is_ordered(&self) -> bool {
        self.entries.iter().all(|e| e.cost == cost(e.side, &e.formula))
            && self.entries.windows(2).all(|w| w[0].cost <= w[1].cost)
    }
}

impl From<Vec<Entry>> for Goal {
    fn from(entries: Vec<Entry>) -> Self {
        Goal { entries }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (left, right) = self.split();
        write!(f, "{} |- {}", formulas_to_string(left), formulas_to_string(right))
    }
}

/// The open goals; the first is the current one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GoalTable {
    goals: Vec<Goal>,
}

impl GoalTable {
    pub fn new(goals: Vec<Goal>) -> Self {
        GoalTable { goals }
    }

    pub fn goals(&self) -> &[Goal] {
        &self.goals
    }

    pub fn is_empty(&self) -> bool {
        self.goals.is_empty()
    }

    pub fn len(&self) -> usize {
        self.goals.len()
    }

    pub fn push_front(&mut self, g: Goal) {
        self.goals.insert(0, g);
    }

    pub fn instantiate(&self, env: &Env) -> GoalTable {
        if env.is_empty() {
            return self.clone();
        }
        GoalTable { goals: self.goals.iter().map(|g| g.instantiate(env)).collect() }
    }

    /// Distinct parameters with their dependency lists, for display.
    pub fn params(&self) -> Vec<(String, Vec<String>)> {
        let mut acc = Vec::new();
        for g in &self.goals {
            g.params(&mut acc);
        }
        acc
    }

    fn split_first(&self) -> Option<(&Goal, GoalTable)> {
        self.goals
            .split_first()
            .map(|(g, rest)| (g, GoalTable { goals: rest.to_vec() }))
    }
}

impl fmt::Display for GoalTable {
    /// Goals one per paragraph, then the parameter table, then a goal count
    /// when there are several.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.goals.is_empty() {
            return writeln!(f, "No more goals: proof finished");
        }
        writeln!(f)?;
        for g in &self.goals {
            writeln!(f, "{g}\n")?;
        }
        let params = self.params();
        if !params.is_empty() {
            writeln!(f, "Param          Not allowed in")?;
            for (name, deps) in &params {
                let deps: Vec<Term> = deps.iter().map(|d| Term::Var(d.clone())).collect();
                writeln!(f, "{name}          {}", args_to_string(&deps))?;
            }
            writeln!(f)?;
        }
        if self.goals.len() > 1 {
            writeln!(f, "{} goals", self.goals.len())?;
        }
        Ok(())
    }
}

/// Every way of closing `goal`: each unifiable (left atom, right atom) pair,
/// in scan order, with the unifier. The formula returned is the
/// uninstantiated left atom.
pub fn solutions(goal: &Goal) -> impl Iterator<Item = (Formula, Env)> + '_ {
    let (left, right) = goal.split();
    let right: Vec<&Formula> = right.into_iter().filter(|b| b.is_pred()).collect();
    left.into_iter().filter(|a| a.is_pred()).flat_map(move |a| {
        right
            .clone()
            .into_iter()
            .filter_map(move |b| unify_atoms(a, b, Env::new()).ok().map(|env| (a.clone(), env)))
    })
}

/// The first unifiable pair of atoms, if any.
pub fn solve_goal(goal: &Goal) -> Option<(Formula, Env)> {
    solutions(goal).next()
}

/// How a goal is closed when several atom pairs unify.
#[derive(Clone, Debug)]
pub enum SolvePolicy {
    First,
    /// Picks uniformly among all solutions; reproducible for a fixed seed.
    Random(Box<ChaCha8Rng>),
}

/// Mutable state of one proving session: fresh names and strategy options.
#[derive(Clone, Debug)]
pub struct Context {
    pub names: NameSupply,
    solve: SolvePolicy,
    dedup: bool,
}

impl Default for Context {
    fn default() -> Self {
        Context { names: NameSupply::new(), solve: SolvePolicy::First, dedup: false }
    }
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_random_solutions(mut self, seed: u64) -> Self {
        self.solve = SolvePolicy::Random(Box::new(ChaCha8Rng::seed_from_u64(seed)));
        self
    }

    /// Skip adding a formula to a goal that already holds it on that side.
    pub fn with_dedup(mut self, dedup: bool) -> Self {
        self.dedup = dedup;
        self
    }

    fn solve(&mut self, goal: &Goal) -> Option<(Formula, Env)> {
        match &mut self.solve {
            SolvePolicy::First => solve_goal(goal),
            SolvePolicy::Random(rng) => {
                let mut all: Vec<_> = solutions(goal).collect();
                if all.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..all.len());
                    Some(all.swap_remove(i))
                }
            }
        }
    }

    fn extend(&self, g: &Goal, pairs: Vec<(Side, Formula)>) -> Goal {
        if !self.dedup {
            return g.extended(pairs);
        }
        let mut g = g.clone();
        for (side, a) in pairs {
            if !g.contains(side, &a) {
                g.insert_early(Entry::new(side, a));
            }
        }
        g
    }
}

/// The atomic formula a rule cannot reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
#[error("no proof rules applicable")]
pub struct Irreducible;

/// Applies the rule for `entry` (the cheapest formula of its goal) against
/// the rest of the goal, returning the subgoals.
pub fn reduce_goal(entry: &Entry, rest: &Goal, cx: &mut Context) -> Result<Vec<Goal>, Irreducible> {
    use Connective::*;
    use Side::*;
    let goals = |cx: &Context, pairs: Vec<Vec<(Side, Formula)>>| -> Vec<Goal> {
        pairs.into_iter().map(|p| cx.extend(rest, p)).collect()
    };
    let bin = |xs: &[Formula]| (xs[0].clone(), xs[1].clone());
    Ok(match (entry.side, &entry.formula) {
        (Right, Formula::Conn(Not, xs)) => goals(cx, vec![vec![(Left, xs[0].clone())]]),
        (Left, Formula::Conn(Not, xs)) => goals(cx, vec![vec![(Right, xs[0].clone())]]),
        (Right, Formula::Conn(And, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Right, a)], vec![(Right, b)]])
        }
        (Left, Formula::Conn(And, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Left, a), (Left, b)]])
        }
        (Right, Formula::Conn(Or, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Right, a), (Right, b)]])
        }
        (Left, Formula::Conn(Or, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Left, a)], vec![(Left, b)]])
        }
        (Right, Formula::Conn(Implies, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Left, a), (Right, b)]])
        }
        (Left, Formula::Conn(Implies, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Right, a)], vec![(Left, b)]])
        }
        (Right, Formula::Conn(Iff, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Left, a.clone()), (Right, b.clone())], vec![(Right, a), (Left, b)]])
        }
        (Left, Formula::Conn(Iff, xs)) => {
            let (a, b) = bin(xs);
            goals(cx, vec![vec![(Left, a.clone()), (Left, b.clone())], vec![(Right, a), (Right, b)]])
        }
        (side @ Right, Formula::Quant(Quantifier::All, _, body))
        | (side @ Left, Formula::Quant(Quantifier::Exists, _, body)) => {
            let name = cx.names.fresh();
            let mut deps = Vec::new();
            vars_in_formula(body, &mut deps);
            rest.vars(&mut deps);
            let inst = subst_bound(&Term::Param(name, deps), body);
            goals(cx, vec![vec![(side, inst)]])
        }
        (side @ Left, Formula::Quant(Quantifier::All, _, body))
        | (side @ Right, Formula::Quant(Quantifier::Exists, _, body)) => {
            let inst = subst_bound(&Term::Var(cx.names.fresh()), body);
            let mut g = rest.clone();
            g.insert_late(entry.clone());
            if !(cx.dedup && g.contains(side, &inst)) {
                g.insert_early(Entry::new(side, inst));
            }
            vec![g]
        }
        _ => return Err(Irreducible),
    })
}

/// Adds the new goals to `tab`, closing each that can be closed by
/// unification. Returns the success formulae, in closing order, and the new
/// table.
pub fn insert_goals(new: Vec<Goal>, tab: GoalTable, cx: &mut Context) -> (Vec<Formula>, GoalTable) {
    let mut closed = Vec::new();
    let mut tab = tab;
    let mut pending: std::collections::VecDeque<Goal> = new.into();
    while let Some(g) = pending.pop_front() {
        match cx.solve(&g) {
            Some((a, env)) => {
                for other in pending.iter_mut() {
                    *other = other.instantiate(&env);
                }
                closed.push(instantiate_formula(&env, &a));
                tab = tab.instantiate(&env);
            }
            None => tab.push_front(g),
        }
    }
    (closed, tab)
}

/// The rule applied in a step and the success formulae of the subgoals it
/// closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    /// Connective or quantifier symbol followed by `:left` or `:right`.
    pub rule: String,
    /// Number of other goals open when the rule was applied.
    pub indent: usize,
    pub closed: Vec<Formula>,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", " ".repeat(self.indent), self.rule)?;
        for a in &self.closed {
            write!(f, "  {}", unparse(a))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("No goals")]
    NoGoals,
    #[error("Empty goal")]
    EmptyGoal,
    #[error("**No proof rules applicable**")]
    NoRules,
}

/// Reduces the first entry of the current goal and inserts the subgoals in
/// front of the remaining goals.
pub fn proof_step(tab: &GoalTable, cx: &mut Context) -> Result<(TraceEvent, GoalTable), StepError> {
    let (goal, rest) = tab.split_first().ok_or(StepError::NoGoals)?;
    let (entry, tail) = goal.entries.split_first().ok_or(StepError::EmptyGoal)?;
    let tail = Goal { entries: tail.to_vec() };
    let subgoals = reduce_goal(entry, &tail, cx).map_err(|_| StepError::NoRules)?;
    let indent = rest.len();
    let (closed, tab) = insert_goals(subgoals, rest, cx);
    let rule = format!("{}{}", entry.formula.head_symbol(), entry.side.suffix());
    Ok((TraceEvent { rule, indent, closed }, tab))
}

/// Why [`proof_steps`] stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// No goals remain.
    Proved,
    /// The step budget ran out with goals open.
    Limit,
    /// The current goal is all atomic and cannot be closed.
    NoRules,
}

#[derive(Clone, Debug)]
pub struct Steps {
    pub events: Vec<TraceEvent>,
    pub table: GoalTable,
    pub stop: StopReason,
}

/// Runs up to `limit` steps (`None` for no limit), reporting each event to
/// `observe` as it happens.
pub fn proof_steps_with(
    limit: Option<usize>,
    tab: GoalTable,
    cx: &mut Context,
    mut observe: impl FnMut(&TraceEvent),
) -> Result<Steps, StepError> {
    let mut tab = tab;
    let mut events = Vec::new();
    let mut taken = 0usize;
    loop {
        if tab.is_empty() {
            return Ok(Steps { events, table: tab, stop: StopReason::Proved });
        }
        if limit.is_some_and(|n| taken >= n) {
            return Ok(Steps { events, table: tab, stop: StopReason::Limit });
        }
        match proof_step(&tab, cx) {
            Ok((ev, next)) => {
                observe(&ev);
                events.push(ev);
                tab = next;
                taken += 1;
            }
            Err(StepError::NoRules) => return Ok(Steps { events, table: tab, stop: StopReason::NoRules }),
            Err(e) => return Err(e),
        }
    }
}

pub fn proof_steps(limit: Option<usize>, tab: GoalTable, cx: &mut Context) -> Result<Steps, StepError> {
    proof_steps_with(limit, tab, cx, |_| {})
}

/// The table for `left |- right`, with the initial goal closed at once when
/// possible. Resets the name supply.
pub fn initial_table(left: &[Formula], right: &[Formula], cx: &mut Context) -> GoalTable {
    cx.names.reset();
    let left: Vec<_> = left.iter().rev().cloned().collect();
    let right: Vec<_> = right.iter().rev().cloned().collect();
    let goal = Goal::from_sequent(&left, &right);
    insert_goals(vec![goal], GoalTable::default(), cx).1
}

//! Unification of atomic formulae against an environment of metavariable
//! assignments, with the occurs check extended to parameter dependencies.
//!
//! Environments are persistent association lists, newest assignment first.
//! Terms are interpreted through the environment on the fly ("chasing");
//! [`instantiate_term`] copies the assignments out.

use crate::syntax::{Formula, Term};

/// Metavariable assignments, newest first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Env {
    // stored oldest first; lookups scan from the end
    assignments: Vec<(String, Term)>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn lookup(&self, name: &str) -> Option<&Term> {
        self.assignments.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// Assignments, newest first.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.assignments.iter().rev().map(|(n, t)| (n.as_str(), t))
    }

    fn bind(mut self, name: &str, t: Term) -> Self {
        self.assignments.push((name.to_string(), t));
        self
    }

    /// Follows assignments while the term is an assigned variable.
    pub fn chase<'a>(&'a self, t: &'a Term) -> &'a Term {
        let mut t = t;
        while let Term::Var(a) = t {
            match self.lookup(a) {
                Some(u) => t = u,
                None => break,
            }
        }
        t
    }
}

/// Marker for a failed unification; carries no partial environment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnifyFailure;

pub type UnifyOutcome = Result<Env, UnifyFailure>;

/// Does `a` occur in `t`, reading `t` through `env`?
///
/// A parameter contributes the variables its dependencies instantiate to,
/// gathered the way [`instantiate_term`] rebuilds dependency lists.
fn occurs(env: &Env, a: &str, t: &Term) -> bool {
    match t {
        Term::Var(b) => a == b || env.lookup(b).is_some_and(|u| occurs(env, a, u)),
        Term::Fun(_, ts) => ts.iter().any(|u| occurs(env, a, u)),
        Term::Param(_, deps) => deps.iter().any(|d| occurs_in_dep(env, a, d)),
        Term::Bound(_) => false,
    }
}

fn occurs_in_dep(env: &Env, a: &str, dep: &str) -> bool {
    fn go(env: &Env, a: &str, t: &Term) -> bool {
        match t {
            Term::Var(b) => a == b || env.lookup(b).is_some_and(|u| go(env, a, u)),
            Term::Fun(_, ts) => ts.iter().any(|u| go(env, a, u)),
            Term::Param(..) | Term::Bound(_) => false,
        }
    }
    go(env, a, &Term::Var(dep.to_string()))
}

fn unify_var(a: &str, t: &Term, env: Env) -> UnifyOutcome {
    if matches!(t, Term::Var(b) if b == a) {
        Ok(env)
    } else if occurs(&env, a, t) {
        Err(UnifyFailure)
    } else {
        Ok(env.bind(a, t.clone()))
    }
}

fn unify_term(t: &Term, u: &Term, env: Env) -> UnifyOutcome {
    let t = env.chase(t).clone();
    let u = env.chase(u).clone();
    match (&t, &u) {
        (Term::Var(a), _) => unify_var(a, &u, env),
        (_, Term::Var(a)) => unify_var(a, &t, env),
        (Term::Param(a, _), Term::Param(b, _)) => {
            if a == b {
                Ok(env)
            } else {
                Err(UnifyFailure)
            }
        }
        (Term::Fun(f, ts), Term::Fun(g, us)) if f == g => unify_terms(ts, us, env),
        _ => Err(UnifyFailure),
    }
}

/// Unifies two argument lists pairwise.
pub fn unify_terms(ts: &[Term], us: &[Term], env: Env) -> UnifyOutcome {
    if ts.len() != us.len() {
        return Err(UnifyFailure);
    }
    ts.iter().zip(us).try_fold(env, |env, (t, u)| unify_term(t, u, env))
}

/// Unifies two atomic formulae, extending `env`.
pub fn unify_atoms(a: &Formula, b: &Formula, env: Env) -> UnifyOutcome {
    match (a, b) {
        (Formula::Pred(p, ts), Formula::Pred(q, us)) if p == q => unify_terms(ts, us, env),
        _ => Err(UnifyFailure),
    }
}

/// Inserts `x` at the front of `xs` unless already present.
fn ins<T: PartialEq>(x: T, xs: &mut Vec<T>) {
    if !xs.contains(&x) {
        xs.insert(0, x);
    }
}

/// Adds the variables of `t` to `acc`, skipping those attached to parameters.
///
/// Each new name goes to the front, so the result lists names in reverse
/// order of first encounter.
pub fn vars_in_term(t: &Term, acc: &mut Vec<String>) {
    match t {
        Term::Var(a) => ins(a.clone(), acc),
        Term::Fun(_, ts) => ts.iter().for_each(|u| vars_in_term(u, acc)),
        Term::Param(..) | Term::Bound(_) => {}
    }
}

pub fn vars_in_formula(a: &Formula, acc: &mut Vec<String>) {
    a.for_each_term(&mut |t| vars_in_term(t, acc));
}

/// Variables of the instantiated dependency `dep`, in the order
/// `vars_in_term` would gather them from `instantiate_term(env, ?dep)`.
fn dep_vars(env: &Env, t: &Term, acc: &mut Vec<String>) {
    match t {
        Term::Var(a) => match env.lookup(a) {
            Some(u) => dep_vars(env, u, acc),
            None => ins(a.clone(), acc),
        },
        Term::Fun(_, ts) => ts.iter().for_each(|u| dep_vars(env, u, acc)),
        Term::Param(..) | Term::Bound(_) => {}
    }
}

pub fn instantiate_term(env: &Env, t: &Term) -> Term {
    match t {
        Term::Fun(f, ts) => Term::Fun(f.clone(), ts.iter().map(|u| instantiate_term(env, u)).collect()),
        Term::Param(p, deps) => {
            let mut acc = Vec::new();
            for d in deps {
                dep_vars(env, &Term::Var(d.clone()), &mut acc);
            }
            Term::Param(p.clone(), acc)
        }
        Term::Var(a) => match env.lookup(a) {
            Some(u) => instantiate_term(env, u),
            None => t.clone(),
        },
        Term::Bound(_) => t.clone(),
    }
}

pub fn instantiate_formula(env: &Env, a: &Formula) -> Formula {
    if env.is_empty() {
        return a.clone();
    }
    a.map_terms(&mut |t| instantiate_term(env, t))
}

/// Adds the distinct `(name, deps)` parameters of `t` to `acc`, newest first.
pub fn params_in_term(t: &Term, acc: &mut Vec<(String, Vec<String>)>) {
    match t {
        Term::Param(p, deps) => ins((p.clone(), deps.clone()), acc),
        Term::Fun(_, ts) => ts.iter().for_each(|u| params_in_term(u, acc)),
        Term::Var(_) | Term::Bound(_) => {}
    }
}

pub fn params_in_formula(a: &Formula, acc: &mut Vec<(String, Vec<String>)>) {
    a.for_each_term(&mut |t| params_in_term(t, acc));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn p(args: Vec<Term>) -> Formula {
        Formula::pred("P", args)
    }

    fn inst(env: &Env, s: &str) -> Term {
        instantiate_term(env, &t(s))
    }

    #[test]
    fn distinct_constants_clash() {
        let r = unify_terms(&[t("g(a,c)")], &[t("g(?b,?b)")], Env::new());
        assert_eq!(r, Err(UnifyFailure));
    }

    #[test]
    fn indirect_cycle_is_rejected() {
        let r = unify_terms(&[t("g(?a,f(?a))")], &[t("g(?b,?b)")], Env::new());
        assert_eq!(r, Err(UnifyFailure));
        let r = unify_atoms(&p(vec![t("?a")]), &p(vec![t("f(?a)")]), Env::new());
        assert_eq!(r, Err(UnifyFailure));
    }

    #[test]
    fn worked_unifier() {
        let env = unify_terms(&[t("h(?a,f(?a),?d)")], &[t("h(g(0,?d),?b,?c)")], Env::new()).unwrap();
        assert_eq!(inst(&env, "?a"), t("g(0,?c)"));
        assert_eq!(inst(&env, "?b"), t("f(g(0,?c))"));
        assert_eq!(inst(&env, "?d"), t("?c"));
        assert_eq!(inst(&env, "?c"), t("?c"));
    }

    #[test]
    fn identity_stores_nothing() {
        let env = unify_atoms(&p(vec![t("?a")]), &p(vec![t("?a")]), Env::new()).unwrap();
        assert!(env.is_empty());
    }

    #[test]
    fn predicate_clash() {
        let a = Formula::pred("P", vec![t("?a")]);
        let b = Formula::pred("Q", vec![t("f(y)")]);
        assert_eq!(unify_atoms(&a, &b, Env::new()), Err(UnifyFailure));
        let c = Formula::pred("P", vec![t("?a"), t("?b")]);
        assert_eq!(unify_atoms(&a, &c, Env::new()), Err(UnifyFailure));
    }

    #[test]
    fn dependency_cycle_through_function() {
        // ?a = g(?c), ?c = b[?a]
        let lhs = [t("?a"), t("?c")];
        let rhs = [t("g(?c)"), Term::param("b", ["a"])];
        assert_eq!(unify_terms(&lhs, &rhs, Env::new()), Err(UnifyFailure));
    }

    #[test]
    fn dependency_through_parameter_is_dropped() {
        // ?a = d[?c], ?c = b[?a]: b[d[?c]] is just b
        let lhs = [t("?a"), t("?c")];
        let rhs = [Term::param("d", ["c"]), Term::param("b", ["a"])];
        let env = unify_terms(&lhs, &rhs, Env::new()).unwrap();
        assert_eq!(instantiate_term(&env, &t("?c")), Term::param("b", Vec::<String>::new()));
        assert_eq!(instantiate_term(&env, &t("?a")), Term::param("d", Vec::<String>::new()));
        for (l, r) in lhs.iter().zip(&rhs) {
            assert_eq!(instantiate_term(&env, l), instantiate_term(&env, r));
        }
    }

    #[test]
    fn parameter_with_no_dependencies() {
        // ?a = d, ?c = b[?a]
        let lhs = [t("?a"), t("?c")];
        let rhs = [Term::param("d", Vec::<String>::new()), Term::param("b", ["a"])];
        assert!(unify_terms(&lhs, &rhs, Env::new()).is_ok());
    }

    #[test]
    fn direct_dependency_blocks() {
        let b = Term::param("b", ["a"]);
        let r = unify_atoms(&Formula::pred("R", vec![t("?c"), t("?c")]), &Formula::pred("R", vec![b, t("?a")]), Env::new());
        assert_eq!(r, Err(UnifyFailure));
    }

    #[test]
    fn parameters_compare_by_name() {
        let r = unify_terms(&[Term::param("b", ["x"])], &[Term::param("c", ["x"])], Env::new());
        assert_eq!(r, Err(UnifyFailure));
        let r = unify_terms(&[Term::param("b", ["x"])], &[t("f(?y)")], Env::new());
        assert_eq!(r, Err(UnifyFailure));
    }

    #[test]
    fn chased_instantiation() {
        let env = Env::new().bind("b", t("?c")).bind("a", t("?b"));
        assert_eq!(inst(&env, "?a"), t("?c"));
        assert_eq!(env.chase(&t("?a")), &t("?c"));
    }

    #[test]
    fn empty_env_instantiation() {
        let x = t("f(?x, g(a, ?y))");
        assert_eq!(instantiate_term(&Env::new(), &x), x);
    }

    #[test]
    fn parameter_deps_rebuilt() {
        let env = Env::new().bind("a", t("f(?b)"));
        let got = instantiate_term(&env, &Term::param("c", ["a", "d"]));
        // gathered by front insertion: ?b then ?d gives [d, b]
        assert_eq!(got, Term::param("c", ["d", "b"]));
    }

    #[test]
    fn formula_instantiation() {
        let env = Env::new().bind("a", t("g(0,?c)"));
        let a = p(vec![t("?a"), t("?d")]);
        assert_eq!(instantiate_formula(&env, &a), p(vec![t("g(0,?c)"), t("?d")]));
    }

    #[test]
    fn collecting_variables() {
        let mut acc = Vec::new();
        vars_in_term(&t("f(?x, g(?y, ?x))"), &mut acc);
        assert_eq!(acc, vec!["y".to_string(), "x".to_string()]);

        let mut acc = Vec::new();
        vars_in_term(&t("f(a, g(b))"), &mut acc);
        assert!(acc.is_empty());

        let mut acc = Vec::new();
        vars_in_term(&Term::param("b", ["a"]), &mut acc);
        assert!(acc.is_empty());
    }

    #[test]
    fn collecting_parameters() {
        let a = Formula::pred("R", vec![Term::param("b", ["a"]), Term::param("c", Vec::<String>::new())]);
        let mut acc = Vec::new();
        params_in_formula(&a, &mut acc);
        assert_eq!(
            acc,
            vec![("c".to_string(), vec![]), ("b".to_string(), vec!["a".to_string()])]
        );
    }
}

mod common;

use lkprover::batch::{self, Mode};
use lkprover::checker::check_proof;
use lkprover::parse::parse;
use lkprover::print::unparse;
use lkprover::proof::{ProofTree, Sequent};
use lkprover::prover::{initial_table, proof_step, Context};
use lkprover::search::{prove_bounded, SearchLimit};
use lkprover::syntax::{Connective, Formula, Term};
use lkprover::unify::{instantiate_term, unify_terms, vars_in_term, Env};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{random_formula, truth_table_valid, LETTERS};

fn propositional() -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(&LETTERS[..]).prop_map(Formula::atom);
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (0..4usize, inner.clone(), inner).prop_map(|(c, a, b)| {
                let c = [Connective::And, Connective::Or, Connective::Implies, Connective::Iff][c];
                Formula::binary(c, a, b)
            }),
        ]
    })
}

fn sequent() -> impl Strategy<Value = (Vec<Formula>, Vec<Formula>)> {
    (prop::collection::vec(propositional(), 0..3), prop::collection::vec(propositional(), 0..3))
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["a", "b"]).prop_map(Term::constant),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|t| Term::fun("f", vec![t])),
            (inner.clone(), inner).prop_map(|(s, t)| Term::fun("g", vec![s, t])),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn unparse_then_parse_is_identity(seed in any::<u64>(), depth in 0..6usize) {
        let a = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), depth);
        let text = unparse(&a);
        let b = parse(&text).unwrap();
        prop_assert_eq!(&b, &a);
        prop_assert_eq!(unparse(&b), text);
    }

    #[test]
    fn unifiers_are_sound(ts in prop::collection::vec(term(), 1..3), us in prop::collection::vec(term(), 1..3)) {
        prop_assume!(ts.len() == us.len());
        if let Ok(env) = unify_terms(&ts, &us, Env::new()) {
            let inst = |xs: &[Term]| xs.iter().map(|t| instantiate_term(&env, t)).collect::<Vec<_>>();
            prop_assert_eq!(inst(&ts), inst(&us));
            for (v, t) in env.iter() {
                let mut vs = Vec::new();
                vars_in_term(&instantiate_term(&env, t), &mut vs);
                prop_assert!(!vs.iter().any(|w| w == v), "?{} bound to a term containing itself", v);
            }
        }
    }

    #[test]
    fn unification_is_symmetric_in_outcome(t in term(), u in term()) {
        let a = unify_terms(std::slice::from_ref(&t), std::slice::from_ref(&u), Env::new()).is_ok();
        let b = unify_terms(&[u], &[t], Env::new()).is_ok();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn goals_stay_cost_ordered((l, r) in sequent()) {
        let mut cx = Context::new();
        let mut tab = initial_table(&l, &r, &mut cx);
        for _ in 0..200 {
            prop_assert!(tab.goals().iter().all(|g| g.is_ordered()));
            match proof_step(&tab, &mut cx) {
                Ok((_, next)) => tab = next,
                Err(_) => break,
            }
        }
    }

    #[test]
    fn bound_zero_search_decides_propositional_sequents((l, r) in sequent()) {
        let tree = prove_bounded(&l, &r, SearchLimit(0));
        prop_assert_eq!(tree.is_some(), truth_table_valid(&l, &r));
        if let Some(t) = tree {
            let report = check_proof(&t);
            prop_assert!(report.accepted(), "{}", report);
            prop_assert_eq!(&t.sequent, &Sequent::new(l, r));
            prop_assert_eq!(ProofTree::from_text(&t.to_text()).unwrap(), t);
        }
    }

    #[test]
    fn search_is_monotone_in_the_bound(seed in any::<u64>()) {
        let a = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        prop_assume!(a.is_closed());
        let mut found = false;
        for n in 0..3 {
            match prove_bounded(&[], std::slice::from_ref(&a), SearchLimit(n)) {
                Some(t) => {
                    prop_assert!(check_proof(&t).accepted(), "{}", t.to_text());
                    found = true;
                }
                None => prop_assert!(!found, "{} proved at a smaller bound than {}", unparse(&a), n),
            }
        }
    }

    #[test]
    fn batch_modes_agree(seqs in prop::collection::vec(sequent(), 0..12)) {
        let seqs: Vec<Sequent> = seqs.into_iter().map(|(l, r)| Sequent::new(l, r)).collect();
        prop_assert_eq!(
            batch::run_all(Mode::Sequential, &seqs, Some(500)),
            batch::run_all(Mode::Parallel, &seqs, Some(500))
        );
    }
}

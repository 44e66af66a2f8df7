//! Sequent-calculus theorem proving for classical first-order logic.
//!
//! - [`syntax`], [`parse`], [`print`]: terms, formulae and their ASCII syntax
//! - [`unify`]: unification with parameter dependencies
//! - [`prover`]: the committed, cost-ordered automatic strategy
//! - [`search`]: bounded backtracking search and tactics
//! - [`proof`], [`checker`]: proof trees, their text format, and an
//!   independent checker
//! - [`session`]: the command interpreter behind the `lkp` binary
//! - [`batch`]: data-parallel helpers for running many problems

pub mod batch;
pub mod checker;
pub mod parse;
pub mod print;
pub mod proof;
pub mod prover;
pub mod search;
pub mod session;
pub mod syntax;
pub mod unify;

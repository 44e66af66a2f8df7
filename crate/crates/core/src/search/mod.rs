//! Complete bounded search producing proof trees, and tactics.

pub mod bounded;
pub mod tactic;

pub use bounded::{prove_bounded, prove_iterative, SearchLimit};
pub use tactic::{ProofState, Tactic};

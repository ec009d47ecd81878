//! Finite normal-form games with translucent players: exact-arithmetic game
//! representation, iterated minimax domination, minimax rationalizability,
//! counterfactual belief structures, and a model checker for the associated
//! epistemic logic.

pub mod domination;
pub mod game;
pub mod harness;
pub mod logic;
pub mod minimax_rat;
pub mod rational;
pub mod structures;
pub mod witness;

pub use rational::Rational;

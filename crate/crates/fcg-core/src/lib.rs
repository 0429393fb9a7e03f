//! Two-player first-cycle games on finite labeled arenas.
//!
//! A first-cycle game is played by moving a token along the edges of an
//! arena until a vertex repeats and a simple cycle is formed; Player 0 wins
//! iff the label word of that cycle belongs to a fixed cycle property.
//! This crate provides:
//!
//! * [`arena`] — labeled game arenas, validation, and a line-oriented text
//!   format with exact (arbitrary-precision rational) payoff labels;
//! * [`cycle_properties`] — decidable cycle properties, their complements,
//!   and falsification of the two closure laws (cyclic permutation and
//!   concatenation);
//! * [`decomposition`] — the stack-based cycles-decomposition of play
//!   prefixes and ultimately-periodic plays (lassos);
//! * [`fcg_solver`] — exact solving of first-cycle games by backward
//!   induction over simple paths;
//! * [`strategy_analysis`] — exhaustive enumeration of memoryless
//!   strategies and small Moore machines, pointwise/uniform memoryless
//!   determinacy classification, and memory measurement;
//! * [`infinite_games`] — parity, mean-payoff and energy conditions on
//!   lassos, all-cycles / suffix-all-cycles objectives, greediness and
//!   unambiguity checks, and solving infinite-duration games through their
//!   associated first-cycle games;
//! * [`reductions`] — generalised geography as a first-cycle game, with a
//!   direct memoized solver as oracle;
//! * [`gallery`] — small arenas of independent interest, used throughout
//!   the test suites.
//!
//! The crate is `no_std` (it requires `alloc`); everything is deterministic,
//! and all randomized searches take explicit seeds.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arena;
pub mod cycle_properties;
pub mod decomposition;
pub mod fcg_solver;
pub mod gallery;
pub mod infinite_games;
pub mod random;
pub mod reductions;
pub mod rng;
pub mod strategy_analysis;

pub use arena::{Arena, ArenaBuilder, Label, LabelKind, Lasso, Player, Vertex};
pub use cycle_properties::{CycleProperty, LabelWord};
pub use decomposition::{decompose_lasso, decompose_prefix, first_cycle};
pub use fcg_solver::{solve_fcg, solve_fcg_all};
pub use strategy_analysis::{classify_determinacy, MemorylessStrategy, MooreMachine};

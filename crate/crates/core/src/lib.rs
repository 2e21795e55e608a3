//! Optimal seedings for knockout tournaments in which the stronger player
//! always wins.
//!
//! An [`Instance`] assigns a value to every possible game; a [`Seeding`] fixes
//! the bracket and [`evaluate`] sums the values of the games it produces. The
//! solvers search for a seeding of maximum total value:
//!
//! * [`exact::brute_force`] for small brackets of any kind,
//! * [`exact::dp_wincount`] when a game's value depends only on its winner and round,
//! * [`greedy`] for popularity-based values,
//! * [`matching::approx_matching`] as an approximation for round-oblivious values.
//!
//! [`reductions`] turns Max (2,3)-SAT formulas into tournament instances and back.

pub mod brackets;
pub mod error;
pub mod exact;
pub mod families;
pub mod greedy;
pub mod io;
pub mod matching;
pub mod model;
pub mod reductions;
pub mod solve;

pub use error::{Error, Result};
pub use model::{
    detect_win_count, evaluate, rounds_for, shift, symmetrize, EvaluationReport, Game,
    GameValueFunction, Instance, Player, PlayerEval, Round, Seeding, Value, ValueKind,
};
pub use solve::{solve, Algorithm, SolveResult};

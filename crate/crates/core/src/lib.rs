//! The GM-rule dynamical system on integer vectors and its use as an exact
//! remoteness solver for exact slow NIM(n, n-1).
//!
//! Given a modulus `ell >= 2` and a sorted integer vector, a GM-move keeps
//! the rightmost minimal entry divisible by `ell` (the *pivot*) and lowers
//! every other entry by one. The crate provides
//!
//! * single moves and naive simulation ([`gm_move`], [`simulate`]),
//! * the period structure of absorbed sequences and a fast forward that
//!   costs `O(n * ell)` moves regardless of the target step
//!   ([`fast_forward`], [`period_word`]),
//! * settling of wide vectors and the finish-line stopping count in time
//!   logarithmic in the entries ([`settle`], [`position_at`],
//!   [`moves_to_finish`]),
//! * the game layer in [`nim`]: remoteness, optimal moves, an independent
//!   retrograde oracle and an equilibrium checker for the multi-player game.

pub mod error;
pub mod fastpath;
pub mod nim;
pub mod periodicity;
pub mod rule;
pub mod vector;

pub use error::{Error, Result};
pub use fastpath::{
    finish_traced, leaders, moves_to_finish, moves_to_finish_naive, position_at, settle,
    settle_naive, FinishOutcome, FinishSpec, LeaderPhase, SettleResult,
};
pub use periodicity::{
    fast_forward, left_shift_holds, period_word, pivot_log, pivot_return_gaps, pivot_shift_check,
    return_gaps, Letter, PeriodSummary, Word, WordStructure,
};
pub use rule::{
    gm_move, is_absorbed, pivot, range_of, shift_by_periods, simulate, simulate_logged, Fallback,
    PivotResult, RuleParams, StepRecord,
};
pub use vector::PileVector;

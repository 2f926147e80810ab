//! Fast paths for vectors of any range.
//!
//! An entry is a *leader* when it lies within `ell` of the minimum. While
//! the leaders hold a multiple of `ell`, the pivot stays among them and the
//! leader block evolves as an absorbed vector of its own: every `m * ell`
//! moves the `m` leaders drop by `(m - 1) * ell` and every outsider drops by
//! `m * ell`. Outsiders therefore close in on the leaders by `ell` per block,
//! and whole blocks can be skipped with big-integer arithmetic.
//!
//! A block skip is only taken when it provably ends before any outsider
//! joins the leaders (and, for the finish line, before the stopping entry
//! crosses the level). The remaining moves are simulated one by one.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::periodicity::fast_forward_unchecked;
use crate::rule::{self, has_multiple, is_absorbed, RuleParams};
use crate::vector::PileVector;

/// Number of leaders `m`: the largest `m` with `x_m - x_1 <= ell`.
pub fn leaders(x: &PileVector, params: &RuleParams) -> usize {
    let bound = x.first() + params.ell_big();
    x.entries().partition_point(|v| *v <= bound)
}

/// Steps spent while the leader set had a given size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeaderPhase {
    pub leaders: usize,
    /// Steps covered by block skips.
    pub skipped: BigUint,
    /// Steps simulated one at a time.
    pub naive: u64,
    /// Blocks allowed before an outsider could join, at the last skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub join_bound: Option<BigUint>,
    /// Blocks allowed before the finish line could be crossed, at the last skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finish_bound: Option<BigUint>,
}

/// Where the pre-absorbing prefix of a GM-sequence ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SettleResult {
    /// Index of the first vector with `range <= ell`; `None` when the input
    /// is already absorbed (empty prefix).
    pub prefix_len: Option<BigUint>,
    pub first_absorbed: PileVector,
    pub trace: Vec<LeaderPhase>,
}

impl SettleResult {
    /// Index of the last unabsorbed vector, if there is one.
    pub fn last_unabsorbed(&self) -> Option<BigUint> {
        self.prefix_len.as_ref().map(|p| p - 1u32)
    }
}

/// Stop once at least `d` entries are at or below `level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinishSpec {
    pub d: usize,
    pub level: BigInt,
}

impl FinishSpec {
    pub fn new(d: usize, level: impl Into<BigInt>) -> Self {
        Self {
            d,
            level: level.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinishOutcome {
    pub moves: BigUint,
    /// Entries already at or below the level at the start.
    pub initially_finished: usize,
    pub initial_leaders: usize,
    pub trace: Vec<LeaderPhase>,
}

struct Walker<'a> {
    params: &'a RuleParams,
    x: PileVector,
    steps: BigUint,
    trace: Vec<LeaderPhase>,
}

impl<'a> Walker<'a> {
    fn new(x: &PileVector, params: &'a RuleParams) -> Self {
        Self {
            params,
            x: x.clone(),
            steps: BigUint::zero(),
            trace: Vec::new(),
        }
    }

    fn phase(&mut self, m: usize) -> &mut LeaderPhase {
        if self.trace.last().map(|p| p.leaders) != Some(m) {
            self.trace.push(LeaderPhase {
                leaders: m,
                skipped: BigUint::zero(),
                naive: 0,
                join_bound: None,
                finish_bound: None,
            });
        }
        self.trace.last_mut().unwrap()
    }

    fn step(&mut self) {
        let m = leaders(&self.x, self.params);
        rule::step_in_place(&mut self.x, self.params);
        self.steps += 1u32;
        self.phase(m).naive += 1;
    }

    /// Skips `blocks` blocks of `m * ell` moves of the leader dynamics.
    fn skip(&mut self, m: usize, blocks: &BigUint) {
        let ell = self.params.ell_big();
        let blocks_i = BigInt::from(blocks.clone());
        let leader_drop = &blocks_i * BigInt::from(m - 1) * ell;
        let outsider_drop = &blocks_i * BigInt::from(m) * ell;
        for (i, v) in self.x.entries_mut().iter_mut().enumerate() {
            *v -= if i < m { &leader_drop } else { &outsider_drop };
        }
        self.x.assert_sorted();
        let covered = blocks * BigUint::from(m as u64 * self.params.ell());
        self.steps += &covered;
        self.phase(m).skipped += covered;
    }

    fn leader_block_ready(&self, m: usize) -> bool {
        has_multiple(&self.x.entries()[..m], self.params)
    }

    /// Largest block count after which no outsider has joined the leaders
    /// at any intermediate step; `None` when there are no outsiders.
    fn join_bound(&self, m: usize) -> Option<BigUint> {
        let e = self.x.entries();
        if m == e.len() {
            return None;
        }
        // In block k the leader minimum is at most x_1 - k(m-1)ell and the
        // nearest outsider at least x_{m+1} - (k+1)m*ell + 1, so the gap
        // stays above ell while x_{m+1} - x_1 >= (k + m + 1) * ell.
        let gap = &e[m] - &e[0];
        let k = gap.div_floor(self.params.ell_big()) - BigInt::from(m);
        Some(non_negative(k))
    }

    /// Largest block count after which the `d`-th entry is still above
    /// `level` at every intermediate step; `None` when it never crosses.
    fn finish_bound(&self, m: usize, spec: &FinishSpec) -> Option<BigUint> {
        let ell = self.params.ell_big();
        let gap = &self.x.entries()[spec.d - 1] - &spec.level;
        debug_assert!(gap.is_positive());
        if spec.d <= m {
            // a leader: drops (m-1)ell per block and never rises
            if m == 1 {
                return None;
            }
            let per_block = BigInt::from(m - 1) * ell;
            Some(non_negative(gap.div_ceil(&per_block) - 1))
        } else {
            // an outsider: drops by one every move
            let per_block = BigInt::from(m) * ell;
            Some(non_negative(gap.div_floor(&per_block)))
        }
    }

    fn record_bounds(&mut self, m: usize, join: Option<BigUint>, finish: Option<BigUint>) {
        let phase = self.phase(m);
        phase.join_bound = join;
        phase.finish_bound = finish;
    }
}

fn non_negative(k: BigInt) -> BigUint {
    k.to_biguint().unwrap_or_default()
}

fn min_bound(a: Option<BigUint>, b: Option<BigUint>) -> Option<BigUint> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Finds where the absorbing tail of the GM-sequence from `x` begins: the
/// first step from which `range <= ell` holds forever.
///
/// ```
/// use gmrule::{settle, PileVector, RuleParams};
/// use num_bigint::BigUint;
/// let x: PileVector = "16,17,20,20,21".parse().unwrap();
/// let s = settle(&x, &RuleParams::new(3).unwrap());
/// assert_eq!(s.prefix_len, Some(BigUint::from(7u32)));
/// assert_eq!(s.first_absorbed.to_string(), "12,13,13,13,15");
/// ```
pub fn settle(x: &PileVector, params: &RuleParams) -> SettleResult {
    let mut w = Walker::new(x, params);
    // Without a multiple of ell the fallback may widen an in-range vector,
    // so the absorbing tail can only start once a multiple exists. At most
    // ell - 1 such moves are needed.
    let mut candidate: Option<(BigUint, PileVector)> = None;
    // a lone entry is kept by either rule and never moves
    while x.len() > 1 && !has_multiple(w.x.entries(), params) {
        if is_absorbed(&w.x, params) {
            candidate.get_or_insert_with(|| (w.steps.clone(), w.x.clone()));
        } else {
            candidate = None;
        }
        w.step();
    }
    if let (Some((steps, first)), true) = (candidate, is_absorbed(&w.x, params)) {
        return SettleResult {
            prefix_len: (!steps.is_zero()).then_some(steps),
            first_absorbed: first,
            trace: w.trace,
        };
    }
    while !is_absorbed(&w.x, params) {
        let m = leaders(&w.x, params);
        if w.leader_block_ready(m) {
            if let Some(k) = w.join_bound(m).filter(|k| !k.is_zero()) {
                w.record_bounds(m, Some(k.clone()), None);
                w.skip(m, &k);
                continue;
            }
        }
        w.step();
    }
    SettleResult {
        prefix_len: (!w.steps.is_zero()).then_some(w.steps),
        first_absorbed: w.x,
        trace: w.trace,
    }
}

/// `x^j` for any `x`: settles if needed, then uses the period drop.
pub fn position_at(x: &PileVector, params: &RuleParams, steps: &BigUint) -> PileVector {
    if x.len() == 1 {
        // kept by either rule, so a fixed point
        return x.clone();
    }
    let mut w = Walker::new(x, params);
    loop {
        let remaining = steps - &w.steps;
        if remaining.is_zero() {
            return w.x;
        }
        if is_absorbed(&w.x, params) && has_multiple(w.x.entries(), params) {
            return fast_forward_unchecked(&w.x, params, &remaining);
        }
        let m = leaders(&w.x, params);
        if m < w.x.len() && w.leader_block_ready(m) {
            let budget = &remaining / BigUint::from(m as u64 * params.ell());
            let k = min_bound(w.join_bound(m), Some(budget)).unwrap();
            if !k.is_zero() {
                w.skip(m, &k);
                continue;
            }
        }
        w.step();
    }
}

/// Number of GM-moves until at least `spec.d` entries are `<= spec.level`.
///
/// ```
/// use gmrule::{moves_to_finish, FinishSpec, PileVector, RuleParams};
/// use num_bigint::BigUint;
/// let x: PileVector = "1,2,3".parse().unwrap();
/// let moves = moves_to_finish(&x, &RuleParams::new(2).unwrap(), &FinishSpec::new(2, 0)).unwrap();
/// assert_eq!(moves, BigUint::from(3u32));
/// ```
pub fn moves_to_finish(x: &PileVector, params: &RuleParams, spec: &FinishSpec) -> Result<BigUint> {
    finish_traced(x, params, spec).map(|o| o.moves)
}

/// [`moves_to_finish`] together with the per-phase trace.
pub fn finish_traced(x: &PileVector, params: &RuleParams, spec: &FinishSpec) -> Result<FinishOutcome> {
    let n = x.len();
    if spec.d == 0 || spec.d > n {
        return Err(Error::InvalidFinish { d: spec.d, n });
    }
    let never = || Error::NeverFinishes {
        d: spec.d,
        level: spec.level.to_string(),
    };
    let mut w = Walker::new(x, params);
    let initially_finished = x.count_at_most(&spec.level);
    let initial_leaders = leaders(x, params);
    loop {
        if w.x.entries()[spec.d - 1] <= spec.level {
            return Ok(FinishOutcome {
                moves: w.steps,
                initially_finished,
                initial_leaders,
                trace: w.trace,
            });
        }
        if n == 1 {
            // a lone entry is always kept
            return Err(never());
        }
        let m = leaders(&w.x, params);
        if w.leader_block_ready(m) {
            let join = w.join_bound(m);
            let finish = w.finish_bound(m, spec);
            let k = min_bound(join.clone(), finish.clone()).ok_or_else(never)?;
            if !k.is_zero() {
                w.record_bounds(m, join, finish);
                w.skip(m, &k);
                continue;
            }
        }
        w.step();
    }
}

/// Naive count of moves to the finish line; gives up after `limit` moves.
pub fn moves_to_finish_naive(
    x: &PileVector,
    params: &RuleParams,
    spec: &FinishSpec,
    limit: u64,
) -> Option<u64> {
    let mut cur = x.clone();
    for k in 0..=limit {
        if cur.count_at_most(&spec.level) >= spec.d {
            return Some(k);
        }
        rule::step_in_place(&mut cur, params);
    }
    None
}

/// Start of the absorbing tail by naive simulation: simulates until a
/// vector with `range <= ell` and a multiple of `ell` appears (absorbing
/// from then on) and returns the step after the last out-of-range vector.
/// Gives up after `limit` moves.
pub fn settle_naive(x: &PileVector, params: &RuleParams, limit: u64) -> Option<(u64, PileVector)> {
    let mut cur = x.clone();
    let mut first: Option<(u64, PileVector)> = None;
    for k in 0..=limit {
        if is_absorbed(&cur, params) {
            first.get_or_insert_with(|| (k, cur.clone()));
            if cur.len() == 1 || has_multiple(cur.entries(), params) {
                return first;
            }
        } else {
            first = None;
        }
        rule::step_in_place(&mut cur, params);
    }
    None
}

//! Exact slow NIM with `n` piles where every move lowers `n - 1` piles by
//! one stone.
//!
//! With `ell = 2` the GM-rule is the M-rule: keep the smallest even pile,
//! or the largest pile when all are odd. Played by both sides it realizes
//! the remoteness function, so the remoteness of a position is the number
//! of GM-moves until two piles reach zero.

mod nash;
mod smith;

pub use nash::{check_nash, check_nash_grid, MultiPlayerGameSpec, NashGridReport, NashReport, PlayerReport};
pub use smith::SmithOracle;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fastpath::{moves_to_finish, FinishSpec};
use crate::rule::{gm_move, RuleParams};
use crate::vector::PileVector;

/// A position of exact slow NIM(n, n-1): at least two non-negative piles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PileVector", into = "PileVector")]
pub struct GamePosition(PileVector);

impl GamePosition {
    pub fn new<I, T>(piles: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::try_from(PileVector::new(piles)?)
    }

    pub fn piles(&self) -> &PileVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Terminal once two piles are empty.
    pub fn is_terminal(&self) -> bool {
        self.0.count_at_most(&BigInt::zero()) >= 2
    }

    /// Whether keeping pile `index` (0-based) leaves every other pile
    /// with at least one stone to remove.
    pub fn can_keep(&self, index: usize) -> bool {
        index < self.len()
            && self
                .0
                .entries()
                .iter()
                .enumerate()
                .all(|(i, v)| i == index || v.is_positive())
    }

    pub fn legal_keeps(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.can_keep(i)).collect()
    }

    /// Keeps pile `index` (0-based) and removes one stone from each other
    /// pile. The result is re-sorted.
    pub fn keep(&self, index: usize) -> Result<GamePosition> {
        if self.is_terminal() {
            return Err(Error::Terminal);
        }
        if !self.can_keep(index) {
            return Err(Error::IllegalMove);
        }
        let next = self
            .0
            .entries()
            .iter()
            .enumerate()
            .map(|(i, v)| if i == index { v.clone() } else { v - 1 });
        Ok(GamePosition(PileVector::new(next)?))
    }
}

impl TryFrom<PileVector> for GamePosition {
    type Error = Error;

    fn try_from(v: PileVector) -> Result<Self> {
        if v.len() < 2 {
            return Err(Error::TooFewPiles(v.len()));
        }
        if v.first().is_negative() {
            return Err(Error::NegativePile);
        }
        Ok(GamePosition(v))
    }
}

impl From<GamePosition> for PileVector {
    fn from(g: GamePosition) -> Self {
        g.0
    }
}

impl fmt::Display for GamePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// The previous player wins.
    P,
    /// The next player wins.
    N,
}

impl Outcome {
    pub fn from_remoteness(r: &BigUint) -> Self {
        if r.bit(0) {
            Outcome::N
        } else {
            Outcome::P
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::P => "P",
            Outcome::N => "N",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemotenessResult {
    pub remoteness: BigUint,
    pub outcome: Outcome,
    /// 0-based pile the M-rule keeps; `None` at terminals.
    pub best_move: Option<usize>,
}

fn m_rule() -> RuleParams {
    RuleParams::new(2).expect("2 is a valid modulus")
}

/// One move of the M-rule. Returns the new position and the kept pile.
pub fn m_rule_move(x: &GamePosition) -> Result<(GamePosition, usize)> {
    if x.is_terminal() {
        return Err(Error::Terminal);
    }
    let (next, rec) = gm_move(x.piles(), &m_rule());
    debug_assert!(!next.first().is_negative());
    Ok((GamePosition(next), rec.kept))
}

/// Remoteness, outcome and optimal move of `x`.
///
/// ```
/// use gmrule::nim::{remoteness, GamePosition, Outcome};
/// use num_bigint::BigUint;
/// let r = remoteness(&GamePosition::new([1, 2, 3]).unwrap());
/// assert_eq!(r.remoteness, BigUint::from(3u32));
/// assert_eq!(r.outcome, Outcome::N);
/// assert_eq!(r.best_move, Some(1));
/// ```
pub fn remoteness(x: &GamePosition) -> RemotenessResult {
    let moves = moves_to_finish(x.piles(), &m_rule(), &FinishSpec::new(2, 0))
        .expect("a position with two or more piles always terminates");
    let best_move = m_rule_move(x).ok().map(|(_, kept)| kept);
    RemotenessResult {
        outcome: Outcome::from_remoteness(&moves),
        remoteness: moves,
        best_move,
    }
}

/// The M-rule trajectory from `x` to a terminal position, inclusive.
pub fn play_line(x: &GamePosition) -> Vec<GamePosition> {
    let mut line = vec![x.clone()];
    while let Ok((next, _)) = m_rule_move(line.last().unwrap()) {
        line.push(next);
    }
    line
}

/// One row of a grid sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub piles: Vec<u64>,
    pub remoteness: u64,
    pub outcome: Outcome,
    /// 0-based kept pile; `None` at terminals.
    pub best_move: Option<usize>,
}

/// Every sorted position in `[0..=max]^n`, in lexicographic order.
pub fn sorted_box(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        out.push(cur.clone());
        // next non-decreasing tuple
        let Some(i) = (0..n).rev().find(|&i| cur[i] < max) else {
            return out;
        };
        let v = cur[i] + 1;
        for c in &mut cur[i..] {
            *c = v;
        }
    }
}

/// Remoteness of every sorted position in `[0..=max]^n`.
pub fn sweep(n: usize, max: u32) -> Result<Vec<SweepRow>> {
    sorted_box(n, max)
        .into_iter()
        .map(|piles| {
            let pos = GamePosition::new(piles.iter().copied())?;
            let r = remoteness(&pos);
            Ok(SweepRow {
                piles: piles.into_iter().map(u64::from).collect(),
                remoteness: num_traits::ToPrimitive::to_u64(&r.remoteness)
                    .expect("small box"),
                outcome: r.outcome,
                best_move: r.best_move,
            })
        })
        .collect()
}

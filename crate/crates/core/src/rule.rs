//! Pivot selection and the GM-move.
//!
//! The GM-rule keeps the rightmost minimal entry that is a multiple of the
//! modulus `ell` and lowers every other entry by one. When no entry is a
//! multiple, the [`Fallback`] policy decides which entry is kept.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::PileVector;

/// What a move keeps when no entry is a multiple of the modulus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Fallback {
    /// Keep the largest entry `x_n`.
    #[default]
    KeepLargest,
}

/// The modulus and fallback policy governing pivot selection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleParams {
    ell: u64,
    ell_big: BigInt,
    fallback: Fallback,
}

impl RuleParams {
    pub fn new(ell: u64) -> Result<Self> {
        Self::with_fallback(ell, Fallback::KeepLargest)
    }

    pub fn with_fallback(ell: u64, fallback: Fallback) -> Result<Self> {
        if ell < 2 {
            return Err(Error::InvalidModulus(ell));
        }
        Ok(Self {
            ell,
            ell_big: BigInt::from(ell),
            fallback,
        })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn ell_big(&self) -> &BigInt {
        &self.ell_big
    }

    pub fn fallback(&self) -> Fallback {
        self.fallback
    }

    pub fn is_multiple(&self, v: &BigInt) -> bool {
        v.is_multiple_of(&self.ell_big)
    }
}

/// Location of the pivot, if the vector has an entry divisible by the modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PivotResult {
    Present {
        /// 0-based index of the pivotal entry.
        index: usize,
        value: BigInt,
    },
    Absent,
}

impl PivotResult {
    pub fn index(&self) -> Option<usize> {
        match self {
            PivotResult::Present { index, .. } => Some(*index),
            PivotResult::Absent => None,
        }
    }
}

/// Which entry a move kept and whether the fallback policy chose it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    /// 0-based index of the kept entry.
    pub kept: usize,
    pub fallback: bool,
}

/// Index of the rightmost minimal entry divisible by `ell`.
///
/// ```
/// use gmrule::{pivot, PileVector, RuleParams};
/// let x: PileVector = "15,15,17,18".parse().unwrap();
/// let p = pivot(&x, &RuleParams::new(3).unwrap());
/// assert_eq!(p.index(), Some(1));
/// ```
pub fn pivot(x: &PileVector, params: &RuleParams) -> PivotResult {
    match pivot_index(x.entries(), params) {
        Some(index) => PivotResult::Present {
            index,
            value: x.entries()[index].clone(),
        },
        None => PivotResult::Absent,
    }
}

pub(crate) fn pivot_index(entries: &[BigInt], params: &RuleParams) -> Option<usize> {
    // Sorted, so the first multiple found is the minimal one; equal values
    // after it are multiples too and the last of them wins.
    let first = entries.iter().position(|v| params.is_multiple(v))?;
    let value = &entries[first];
    let run = entries[first..].iter().take_while(|v| *v == value).count();
    Some(first + run - 1)
}

/// Index the GM-rule keeps, applying the fallback when needed.
pub(crate) fn kept_index(entries: &[BigInt], params: &RuleParams) -> StepRecord {
    match pivot_index(entries, params) {
        Some(kept) => StepRecord {
            kept,
            fallback: false,
        },
        None => match params.fallback {
            Fallback::KeepLargest => StepRecord {
                kept: entries.len() - 1,
                fallback: true,
            },
        },
    }
}

/// Advances `x` by one GM-move in place.
pub(crate) fn step_in_place(x: &mut PileVector, params: &RuleParams) -> StepRecord {
    let record = kept_index(x.entries(), params);
    for (i, v) in x.entries_mut().iter_mut().enumerate() {
        if i != record.kept {
            *v -= 1;
        }
    }
    x.assert_sorted();
    record
}

/// One GM-move: keep the pivot (or `x_n` under the fallback) and lower the
/// other entries by one.
///
/// ```
/// use gmrule::{gm_move, PileVector, RuleParams};
/// let x: PileVector = "5,5,7,8,9".parse().unwrap();
/// let (next, rec) = gm_move(&x, &RuleParams::new(7).unwrap());
/// assert_eq!(next.to_string(), "4,4,7,7,8");
/// assert_eq!(rec.kept, 2);
/// ```
pub fn gm_move(x: &PileVector, params: &RuleParams) -> (PileVector, StepRecord) {
    let mut next = x.clone();
    let record = step_in_place(&mut next, params);
    (next, record)
}

/// Naive simulation: `steps` successive GM-moves.
pub fn simulate(x: &PileVector, params: &RuleParams, steps: u64) -> PileVector {
    let mut cur = x.clone();
    for _ in 0..steps {
        step_in_place(&mut cur, params);
    }
    cur
}

/// Naive simulation that also returns the record of every move.
pub fn simulate_logged(
    x: &PileVector,
    params: &RuleParams,
    steps: u64,
) -> (PileVector, Vec<StepRecord>) {
    let mut cur = x.clone();
    let log = (0..steps).map(|_| step_in_place(&mut cur, params)).collect();
    (cur, log)
}

/// `x_n - x_1`.
pub fn range_of(x: &PileVector) -> BigInt {
    x.range()
}

/// True when `range(x) <= ell`.
pub fn is_absorbed(x: &PileVector, params: &RuleParams) -> bool {
    x.range() <= *params.ell_big()
}

pub(crate) fn has_multiple(entries: &[BigInt], params: &RuleParams) -> bool {
    entries.iter().any(|v| params.is_multiple(v))
}

/// Adds `k * ell` to every entry.
pub fn shift_by_periods(x: &PileVector, params: &RuleParams, k: &BigInt) -> PileVector {
    x.shifted(&(k * params.ell_big()))
}

//! Periodic structure of absorbed GM-sequences.
//!
//! Once `range(x) <= ell` and some entry is a multiple of `ell`, the pivot
//! moves one column to the left every `ell` steps (wrapping from the first
//! column to the last) and the whole sequence repeats every `n * ell` steps
//! with every entry lowered by `(n - 1) * ell`. That drop lets
//! [`fast_forward`] reach step `j` with at most `n * ell` real moves.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rule::{self, has_multiple, is_absorbed, RuleParams};
use crate::vector::PileVector;

/// One letter of a column word: `S` when the column is the pivot at that
/// step, `R` when it is reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    S,
    R,
}

impl Letter {
    fn as_char(self) -> char {
        match self {
            Letter::S => 's',
            Letter::R => 'r',
        }
    }
}

/// A finite word over `{s, r}`.
///
/// Displays in run-length form, `s^2 r^3 s r^6`, and parses the same form
/// as well as the tuple spelling `(s^2, r^3, s, r^6)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Maximal runs read left to right, without wrapping.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((last, len)) if *last == l => *len += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    /// Maximal runs of the word read as a cycle. A constant word is one run
    /// spanning the whole word.
    pub fn cyclic_runs(&self) -> Vec<(Letter, usize)> {
        let mut runs = self.runs();
        if runs.len() > 1 && runs[0].0 == runs[runs.len() - 1].0 {
            let (_, tail) = runs.pop().unwrap();
            runs[0].1 += tail;
        }
        runs
    }

    /// True if `other` is a cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        let n = self.0.len();
        if n != other.0.len() {
            return false;
        }
        if n == 0 {
            return true;
        }
        (0..n).any(|shift| (0..n).all(|i| self.0[(i + shift) % n] == other.0[i]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, len)) in self.runs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if len == 1 {
                write!(f, "{}", l.as_char())?;
            } else {
                write!(f, "{}^{}", l.as_char(), len)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let cleaned = s.replace(['(', ')', ',', '{', '}'], " ");
        for tok in cleaned.split_whitespace() {
            let (head, power) = match tok.split_once('^') {
                Some((h, p)) => (
                    h,
                    p.parse::<usize>()
                        .map_err(|_| Error::Parse(tok.to_string()))?,
                ),
                None => (tok, 1),
            };
            let letter = match head {
                "s" => Letter::S,
                "r" => Letter::R,
                _ => return Err(Error::Parse(tok.to_string())),
            };
            letters.extend(std::iter::repeat(letter).take(power));
        }
        Ok(Word(letters))
    }
}

/// One period of a column word together with its counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodSummary {
    /// `n * ell`.
    pub period_length: u64,
    /// 0-based column the word was read from.
    pub column: usize,
    #[serde(serialize_with = "word_as_text")]
    pub word: Word,
    pub s_count: usize,
    pub r_count: usize,
    /// `(n - 1) * ell`, the amount every entry drops per period.
    pub drop_per_period: BigInt,
}

fn word_as_text<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

/// Outcome of checking the run structure of a period word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WordStructure {
    pub s_count_is_ell: bool,
    pub r_runs_are_multiples: bool,
    pub s_runs_bounded: bool,
}

impl WordStructure {
    pub fn holds(&self) -> bool {
        self.s_count_is_ell && self.r_runs_are_multiples && self.s_runs_bounded
    }
}

impl PeriodSummary {
    /// Checks the letter counts and the cyclic run lengths against `ell`.
    pub fn structure(&self, ell: u64) -> WordStructure {
        let ell = ell as usize;
        let runs = self.word.cyclic_runs();
        WordStructure {
            s_count_is_ell: self.s_count == ell,
            r_runs_are_multiples: runs
                .iter()
                .filter(|(l, _)| *l == Letter::R)
                .all(|(_, len)| len % ell == 0),
            s_runs_bounded: runs
                .iter()
                .filter(|(l, _)| *l == Letter::S)
                .all(|(_, len)| *len <= ell),
        }
    }
}

fn require_absorbed(x: &PileVector, params: &RuleParams) -> Result<()> {
    if !is_absorbed(x, params) {
        return Err(Error::NotAbsorbed {
            range: x.range().to_string(),
            ell: params.ell(),
        });
    }
    if !has_multiple(x.entries(), params) {
        return Err(Error::NoMultiple(params.ell()));
    }
    Ok(())
}

fn period_len(x: &PileVector, params: &RuleParams) -> u64 {
    x.len() as u64 * params.ell()
}

/// `x^j` for an absorbed `x`, using the period drop instead of `j` moves.
///
/// ```
/// use gmrule::{fast_forward, PileVector, RuleParams};
/// use num_bigint::BigUint;
/// let x: PileVector = "16,17,20,20,21".parse().unwrap();
/// let y = fast_forward(&x, &RuleParams::new(5).unwrap(), &BigUint::from(25u32)).unwrap();
/// assert_eq!(y.to_string(), "-4,-3,0,0,1");
/// ```
pub fn fast_forward(x: &PileVector, params: &RuleParams, steps: &BigUint) -> Result<PileVector> {
    require_absorbed(x, params)?;
    Ok(fast_forward_unchecked(x, params, steps))
}

pub(crate) fn fast_forward_unchecked(
    x: &PileVector,
    params: &RuleParams,
    steps: &BigUint,
) -> PileVector {
    let n = x.len() as u64;
    let (periods, rest) = steps.div_rem(&BigUint::from(period_len(x, params)));
    let rest = rest.to_u64().expect("remainder below n * ell");
    let mut cur = rule::simulate(x, params, rest);
    let drop = BigInt::from(periods) * BigInt::from(n - 1) * params.ell_big();
    cur.lower_all(&drop);
    cur
}

/// Reads one period of the word of `column` (0-based), starting at `x`.
pub fn period_word(x: &PileVector, params: &RuleParams, column: usize) -> Result<PeriodSummary> {
    require_absorbed(x, params)?;
    if column >= x.len() {
        return Err(Error::ColumnOutOfBounds {
            column,
            len: x.len(),
        });
    }
    let p = period_len(x, params);
    let (_, log) = rule::simulate_logged(x, params, p);
    let word = Word(
        log.iter()
            .map(|rec| if rec.kept == column { Letter::S } else { Letter::R })
            .collect(),
    );
    let s_count = word.count(Letter::S);
    Ok(PeriodSummary {
        period_length: p,
        column,
        r_count: word.len() - s_count,
        s_count,
        word,
        drop_per_period: BigInt::from(x.len() as u64 - 1) * params.ell_big(),
    })
}

/// Pivot (kept) indices of the first `steps` moves from `x`.
pub fn pivot_log(x: &PileVector, params: &RuleParams, steps: u64) -> Vec<usize> {
    rule::simulate_logged(x, params, steps)
        .1
        .into_iter()
        .map(|rec| rec.kept)
        .collect()
}

/// True iff every entry `ell` positions later in `log` is one column to
/// the left, with column 0 wrapping to column `n - 1`.
pub fn left_shift_holds(log: &[usize], n: usize, ell: u64) -> bool {
    let ell = ell as usize;
    log.iter()
        .zip(log.iter().skip(ell))
        .all(|(&now, &later)| later == (now + n - 1) % n)
}

/// Checks the left shift of pivots over `window` starting steps.
pub fn pivot_shift_check(x: &PileVector, params: &RuleParams, window: u64) -> Result<bool> {
    require_absorbed(x, params)?;
    if window < params.ell() {
        return Err(Error::WindowTooShort {
            window,
            min: params.ell(),
        });
    }
    let log = pivot_log(x, params, window + params.ell());
    Ok(left_shift_holds(&log, x.len(), params.ell()))
}

/// For each column, the number of non-pivot steps separating consecutive
/// pivot tenures within the first `window` moves.
pub fn pivot_return_gaps(x: &PileVector, params: &RuleParams, window: u64) -> Result<Vec<Vec<u64>>> {
    require_absorbed(x, params)?;
    Ok(return_gaps(&pivot_log(x, params, window), x.len()))
}

/// Gap extraction over an arbitrary pivot log.
pub fn return_gaps(log: &[usize], n: usize) -> Vec<Vec<u64>> {
    let mut last_seen: Vec<Option<usize>> = vec![None; n];
    let mut gaps = vec![Vec::new(); n];
    for (step, &col) in log.iter().enumerate() {
        if let Some(prev) = last_seen[col] {
            if step > prev + 1 {
                gaps[col].push((step - prev - 1) as u64);
            }
        }
        last_seen[col] = Some(step);
    }
    gaps
}

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A sorted integer vector, the state of the GM dynamical system.
///
/// Entries are arbitrary-precision and may be negative. The vector is kept
/// in non-decreasing order; constructors sort once and every move asserts
/// that the order survived.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PileVector {
    // Invariant: non-empty, non-decreasing
    entries: Vec<BigInt>,
}

impl PileVector {
    /// Builds a vector from entries in any order.
    pub fn new<I, T>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut entries: Vec<BigInt> = entries.into_iter().map(Into::into).collect();
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        entries.sort_unstable();
        Ok(Self { entries })
    }

    /// Builds a vector from entries that must already be sorted.
    pub fn from_sorted(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        if !is_sorted(&entries) {
            return Err(Error::Unsorted);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.entries
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn first(&self) -> &BigInt {
        &self.entries[0]
    }

    pub fn last(&self) -> &BigInt {
        &self.entries[self.entries.len() - 1]
    }

    /// `x_n - x_1`, never negative.
    pub fn range(&self) -> BigInt {
        self.last() - self.first()
    }

    /// Adds `delta` to every entry.
    pub fn shifted(&self, delta: &BigInt) -> Self {
        Self {
            entries: self.entries.iter().map(|v| v + delta).collect(),
        }
    }

    /// Number of entries at or below `level`.
    pub fn count_at_most(&self, level: &BigInt) -> usize {
        self.entries.partition_point(|v| v <= level)
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [BigInt] {
        &mut self.entries
    }

    pub(crate) fn assert_sorted(&self) {
        assert!(
            is_sorted(&self.entries),
            "GM-move broke the entry order: {self}"
        );
    }

    /// Subtracts `amount` from every entry.
    pub(crate) fn lower_all(&mut self, amount: &BigInt) {
        if amount.is_zero() {
            return;
        }
        for v in &mut self.entries {
            *v -= amount;
        }
    }

    /// Converts to machine integers when every entry fits.
    pub fn to_u32s(&self) -> Option<Vec<u32>> {
        self.entries.iter().map(|v| u32::try_from(v).ok()).collect()
    }
}

fn is_sorted(entries: &[BigInt]) -> bool {
    entries.windows(2).all(|w| w[0] <= w[1])
}

impl fmt::Display for PileVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Parses the canonical comma-separated form. Entries may arrive unsorted
/// and surrounding parentheses or whitespace are ignored.
impl FromStr for PileVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Err(Error::EmptyVector);
        }
        let entries = body
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<BigInt>()
                    .map_err(|_| Error::Parse(tok.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl Serialize for PileVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PileVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

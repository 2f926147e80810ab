use std::collections::HashMap;

use crate::error::{Error, Result};

/// Smith's remoteness by memoized recursion over every legal move.
///
/// Independent of the GM-rule: it enumerates all ways to keep one pile and
/// lower the rest. Terminals have remoteness 0. Otherwise, if some
/// successor has even remoteness the value is one more than the smallest
/// such; if not, one more than the largest successor value.
///
/// The memo table belongs to one instance; use one oracle per thread.
#[derive(Debug)]
pub struct SmithOracle {
    memo: HashMap<Vec<u32>, u32>,
    budget: usize,
}

impl SmithOracle {
    /// `budget` caps the number of memoized positions.
    pub fn new(budget: usize) -> Self {
        Self {
            memo: HashMap::new(),
            budget,
        }
    }

    pub fn states(&self) -> usize {
        self.memo.len()
    }

    /// Remoteness of `piles` (any order).
    pub fn remoteness(&mut self, piles: &[u32]) -> Result<u32> {
        if piles.len() < 2 {
            return Err(Error::TooFewPiles(piles.len()));
        }
        let mut key = piles.to_vec();
        key.sort_unstable();
        self.eval(key)
    }

    fn eval(&mut self, key: Vec<u32>) -> Result<u32> {
        if let Some(&r) = self.memo.get(&key) {
            return Ok(r);
        }
        let zeros = key.iter().filter(|&&v| v == 0).count();
        let value = if zeros >= 2 {
            0
        } else {
            let mut best_even: Option<u32> = None;
            let mut worst: u32 = 0;
            for keep in 0..key.len() {
                if keep > 0 && key[keep] == key[keep - 1] {
                    continue;
                }
                if key.iter().enumerate().any(|(i, &v)| i != keep && v == 0) {
                    continue;
                }
                let mut next: Vec<u32> = key
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if i == keep { v } else { v - 1 })
                    .collect();
                next.sort_unstable();
                let r = self.eval(next)?;
                if r % 2 == 0 {
                    best_even = Some(best_even.map_or(r, |b| b.min(r)));
                }
                worst = worst.max(r);
            }
            1 + best_even.unwrap_or(worst)
        };
        if self.memo.len() >= self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        self.memo.insert(key, value);
        Ok(value)
    }
}

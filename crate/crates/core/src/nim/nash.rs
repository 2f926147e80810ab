//! Equilibrium checker for the `ell`-player version of the game.
//!
//! Players move in cyclic order; the player who cannot move loses and pays
//! `C - L`, where `L` is the play length, and each of the other `ell - 1`
//! players receives `(C - L) / (ell - 1)`. Every player following the
//! GM-rule with modulus `ell` is a candidate equilibrium. For each player
//! in turn the checker fixes everyone else to that rule and computes the
//! player's best response by backward induction over the reachable
//! positions.
//!
//! Every move removes exactly `n - 1` stones, so the play length and the
//! player to move are functions of the position alone.

use std::collections::HashMap;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nim::{sorted_box, GamePosition};
use crate::rule::{gm_move, RuleParams};
use crate::vector::PileVector;

/// Exact payoff.
pub type Payoff = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPlayerGameSpec {
    pub players: u64,
    /// Defaults to one more than the total number of stones.
    pub payoff_constant: Option<u64>,
    pub initial: GamePosition,
}

impl MultiPlayerGameSpec {
    pub fn new(players: u64, initial: GamePosition) -> Self {
        Self {
            players,
            payoff_constant: None,
            initial,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayerReport {
    /// 0-based seat; seat 0 moves first.
    pub player: u64,
    #[serde(serialize_with = "ratio_text")]
    pub gm_payoff: Payoff,
    #[serde(serialize_with = "ratio_text")]
    pub best_payoff: Payoff,
    pub profitable: bool,
    /// The best-response play when it beats the GM payoff.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deviation_line: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NashReport {
    pub players: u64,
    pub initial: String,
    pub payoff_constant: u64,
    /// Length of the play when everybody follows the GM-rule.
    pub gm_play_length: u64,
    pub gm_loser: u64,
    pub per_player: Vec<PlayerReport>,
    pub states_explored: usize,
}

impl NashReport {
    pub fn has_profitable_deviation(&self) -> bool {
        self.per_player.iter().any(|p| p.profitable)
    }
}

fn ratio_text<S: serde::Serializer>(r: &Payoff, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

type Key = Vec<u32>;

struct Game {
    players: u64,
    params: RuleParams,
    total: u64,
    n: u64,
    constant: i64,
    budget: usize,
    explored: usize,
}

impl Game {
    fn depth(&self, pos: &Key) -> u64 {
        let sum: u64 = pos.iter().map(|&v| u64::from(v)).sum();
        (self.total - sum) / (self.n - 1)
    }

    fn mover(&self, pos: &Key) -> u64 {
        self.depth(pos) % self.players
    }

    fn is_terminal(pos: &Key) -> bool {
        pos.iter().filter(|&&v| v == 0).count() >= 2
    }

    fn payoff(&self, player: u64, pos: &Key) -> Payoff {
        let stake = self.constant - self.depth(pos) as i64;
        if self.mover(pos) == player {
            Ratio::from_integer(-stake)
        } else {
            Ratio::new(stake, self.players as i64 - 1)
        }
    }

    fn gm_successor(&self, pos: &Key) -> Key {
        let v = PileVector::new(pos.iter().copied()).expect("non-empty");
        let (next, _) = gm_move(&v, &self.params);
        to_key(&next)
    }

    fn successors(pos: &Key) -> Vec<Key> {
        let mut out = Vec::new();
        for keep in 0..pos.len() {
            if keep > 0 && pos[keep] == pos[keep - 1] {
                continue;
            }
            if pos.iter().enumerate().any(|(i, &v)| i != keep && v == 0) {
                continue;
            }
            let mut next: Key = pos
                .iter()
                .enumerate()
                .map(|(i, &v)| if i == keep { v } else { v - 1 })
                .collect();
            next.sort_unstable();
            out.push(next);
        }
        out
    }

    /// Best payoff `player` can secure from `pos` when all others follow the GM-rule.
    fn best_response(
        &mut self,
        player: u64,
        pos: &Key,
        memo: &mut HashMap<Key, (Payoff, Option<Key>)>,
    ) -> Result<Payoff> {
        if let Some((v, _)) = memo.get(pos) {
            return Ok(*v);
        }
        let entry = if Self::is_terminal(pos) {
            (self.payoff(player, pos), None)
        } else if self.mover(pos) == player {
            let mut best: Option<(Payoff, Key)> = None;
            for next in Self::successors(pos) {
                let v = self.best_response(player, &next, memo)?;
                if best.as_ref().is_none_or(|(b, _)| v > *b) {
                    best = Some((v, next));
                }
            }
            let (v, next) = best.expect("non-terminal positions have a legal move");
            (v, Some(next))
        } else {
            let next = self.gm_successor(pos);
            (self.best_response(player, &next, memo)?, Some(next))
        };
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let v = entry.0;
        memo.insert(pos.clone(), entry);
        Ok(v)
    }
}

fn to_key(v: &PileVector) -> Key {
    v.to_u32s().expect("piles stay within the starting box")
}

/// Checks every player's best response against the all-GM profile.
///
/// `budget` caps the number of positions evaluated across all players.
pub fn check_nash(spec: &MultiPlayerGameSpec, budget: usize) -> Result<NashReport> {
    let params = RuleParams::new(spec.players)?;
    let start = spec
        .initial
        .piles()
        .to_u32s()
        .ok_or_else(|| Error::PileTooLarge(spec.initial.to_string()))?;
    let total: u64 = start.iter().map(|&v| u64::from(v)).sum();
    let constant = spec.payoff_constant.unwrap_or(total + 1);
    let mut game = Game {
        players: spec.players,
        params,
        total,
        n: start.len() as u64,
        constant: i64::try_from(constant).map_err(|_| Error::PileTooLarge(constant.to_string()))?,
        budget,
        explored: 0,
    };

    let mut gm_end = start.clone();
    while !Game::is_terminal(&gm_end) {
        gm_end = game.gm_successor(&gm_end);
    }
    let gm_play_length = game.depth(&gm_end);
    let gm_loser = game.mover(&gm_end);

    let mut per_player = Vec::new();
    for player in 0..spec.players {
        let mut memo = HashMap::new();
        let best_payoff = game.best_response(player, &start, &mut memo)?;
        let gm_payoff = game.payoff(player, &gm_end);
        let profitable = best_payoff > gm_payoff;
        let deviation_line = profitable.then(|| {
            let mut line = vec![start.clone()];
            while let Some((_, Some(next))) = memo.get(line.last().unwrap()) {
                line.push(next.clone());
            }
            line.iter()
                .map(|k| k.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                .collect()
        });
        per_player.push(PlayerReport {
            player,
            gm_payoff,
            best_payoff,
            profitable,
            deviation_line,
        });
    }

    Ok(NashReport {
        players: spec.players,
        initial: spec.initial.to_string(),
        payoff_constant: constant,
        gm_play_length,
        gm_loser,
        per_player,
        states_explored: game.explored,
    })
}

/// Summary of [`check_nash`] over every sorted start in `[0..=max]^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NashGridReport {
    pub players: u64,
    pub piles: usize,
    pub max: u32,
    pub positions_checked: usize,
    pub states_explored: usize,
    pub counterexamples: Vec<NashReport>,
}

pub fn check_nash_grid(players: u64, n: usize, max: u32, budget: usize) -> Result<NashGridReport> {
    let mut report = NashGridReport {
        players,
        piles: n,
        max,
        positions_checked: 0,
        states_explored: 0,
        counterexamples: Vec::new(),
    };
    for piles in sorted_box(n, max) {
        let spec = MultiPlayerGameSpec::new(players, GamePosition::new(piles)?);
        let remaining = budget.saturating_sub(report.states_explored);
        let r = check_nash(&spec, remaining)?;
        report.positions_checked += 1;
        report.states_explored += r.states_explored;
        if r.has_profitable_deviation() {
            report.counterexamples.push(r);
        }
    }
    Ok(report)
}

//! The GM-rule solver against the retrograde oracle.

use gmrule::nim::{
    check_nash_grid, m_rule_move, play_line, remoteness, sorted_box, sweep, GamePosition, Outcome,
    SmithOracle,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

fn r_of(piles: &[u32]) -> u64 {
    let pos = GamePosition::new(piles.iter().copied()).unwrap();
    remoteness(&pos).remoteness.to_u64().unwrap()
}

#[test]
fn remoteness_equals_oracle_on_small_boxes() {
    let mut oracle = SmithOracle::new(1 << 22);
    for (n, max) in [(2, 10), (3, 10), (4, 8), (5, 5)] {
        for piles in sorted_box(n, max) {
            let expected = oracle.remoteness(&piles).unwrap();
            assert_eq!(r_of(&piles), u64::from(expected), "{piles:?}");
        }
    }
}

#[test]
fn engine_moves_are_optimal() {
    let mut oracle = SmithOracle::new(1 << 22);
    for piles in sorted_box(3, 10).into_iter().chain(sorted_box(4, 7)) {
        let pos = GamePosition::new(piles.iter().copied()).unwrap();
        if pos.is_terminal() {
            continue;
        }
        let r = oracle.remoteness(&piles).unwrap();
        let (next, _) = m_rule_move(&pos).unwrap();
        let after = oracle.remoteness(&next.piles().to_u32s().unwrap()).unwrap();
        assert_eq!(after + 1, r, "{piles:?}");
        if r % 2 == 0 {
            // from a P-position no move lasts longer than the engine's
            for keep in pos.legal_keeps() {
                let alt = pos.keep(keep).unwrap();
                let alt_r = oracle.remoteness(&alt.piles().to_u32s().unwrap()).unwrap();
                assert!(alt_r < r, "{piles:?} keep {keep}");
                assert_eq!(alt_r % 2, 1);
            }
        }
    }
}

#[test]
fn outcome_parity() {
    for row in sweep(3, 12).unwrap() {
        let expected = if row.remoteness % 2 == 0 { Outcome::P } else { Outcome::N };
        assert_eq!(row.outcome, expected);
        assert_eq!(row.best_move.is_none(), row.remoteness == 0);
    }
}

#[test]
fn play_line_length_is_remoteness() {
    for piles in sorted_box(4, 6) {
        let pos = GamePosition::new(piles.iter().copied()).unwrap();
        let line = play_line(&pos);
        assert_eq!(BigUint::from(line.len() - 1), remoteness(&pos).remoteness);
        assert!(line.last().unwrap().is_terminal());
    }
}

#[test]
fn binary_size_positions() {
    let pos = GamePosition::new([
        1_000_000_000_000_001u64,
        1_234_567_890_123_456,
        3_000_000_000_000_000,
    ])
    .unwrap();
    let r = remoteness(&pos);
    // at least two piles must be emptied, one stone per move from each
    assert!(r.remoteness >= BigUint::from(1_000_000_000_000_001u64));
    assert_eq!(r.outcome, Outcome::from_remoteness(&r.remoteness));
}

#[test]
fn two_player_equilibrium_on_small_box() {
    let report = check_nash_grid(2, 3, 5, 10_000_000).unwrap();
    assert_eq!(report.positions_checked, 56);
    assert!(report.counterexamples.is_empty());
}

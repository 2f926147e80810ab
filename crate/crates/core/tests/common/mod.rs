#![allow(dead_code)]

use gmrule::{PileVector, RuleParams};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(s: &str) -> PileVector {
    s.parse().unwrap()
}

pub fn p(ell: u64) -> RuleParams {
    RuleParams::new(ell).unwrap()
}

/// A rule-table row: the vector and the 1-based pivot.
pub type Row = ([i64; 4], usize);

/// The four n=4, ell=3 reference tables as printed, with their caption words.
pub const TABLES_N4_ELL3: [(&str, [Row; 13], &str); 4] = [
    (
        "a",
        [
            ([15, 15, 17, 18], 2),
            ([14, 15, 16, 17], 2),
            ([13, 15, 15, 16], 3),
            ([12, 14, 15, 15], 1),
            ([12, 13, 14, 14], 1),
            ([12, 12, 13, 13], 2),
            ([11, 12, 12, 12], 4),
            ([10, 11, 11, 12], 4),
            ([9, 10, 10, 12], 1),
            ([9, 9, 9, 11], 3),
            ([8, 8, 9, 10], 3),
            ([7, 7, 9, 9], 4),
            ([6, 6, 8, 9], 2),
        ],
        "s^2 r^3 s r^6",
    ),
    (
        "b",
        [
            ([15, 16, 17, 17], 1),
            ([15, 15, 16, 16], 2),
            ([14, 15, 15, 15], 4),
            ([13, 14, 14, 15], 4),
            ([12, 13, 13, 15], 1),
            ([12, 12, 12, 14], 3),
            ([11, 11, 12, 13], 3),
            ([10, 10, 12, 13], 4),
            ([9, 9, 11, 12], 2),
            ([8, 9, 10, 11], 2),
            ([7, 9, 9, 10], 3),
            ([6, 8, 9, 9], 1),
            ([6, 7, 8, 8], 1),
        ],
        "s^2 r^3 s r^6",
    ),
    (
        "c",
        [
            ([15, 17, 17, 18], 1),
            ([15, 16, 16, 17], 1),
            ([15, 15, 15, 16], 3),
            ([14, 14, 15, 15], 4),
            ([13, 13, 14, 15], 4),
            ([12, 12, 13, 15], 2),
            ([11, 12, 12, 14], 3),
            ([10, 11, 12, 13], 3),
            ([9, 10, 12, 12], 1),
            ([9, 9, 11, 11], 2),
            ([9, 9, 10, 10], 2),
            ([7, 9, 9, 9], 4),
            ([6, 8, 8, 9], 1),
        ],
        "s^2 r^6 s r^3",
    ),
    (
        "d",
        [
            ([15, 18, 18, 18], 1),
            ([15, 17, 17, 17], 1),
            ([15, 16, 16, 16], 1),
            ([15, 15, 15, 15], 4),
            ([14, 14, 14, 15], 4),
            ([13, 13, 13, 15], 4),
            ([12, 12, 12, 15], 3),
            ([11, 11, 12, 14], 3),
            ([10, 10, 12, 13], 3),
            ([9, 9, 12, 12], 2),
            ([8, 9, 11, 11], 2),
            ([7, 9, 10, 10], 2),
            ([6, 9, 9, 9], 1),
        ],
        "s^3 r^9",
    ),
];

/// The printed n=5, ell=7 sequence.
pub const SEQ_ELL_7: [[i64; 5]; 9] = [
    [5, 5, 7, 8, 9],
    [4, 4, 7, 7, 8],
    [3, 3, 6, 7, 7],
    [2, 2, 5, 6, 7],
    [1, 1, 4, 5, 7],
    [0, 0, 3, 4, 7],
    [-1, 0, 2, 3, 6],
    [-2, 0, 1, 2, 5],
    [-3, 0, 0, 1, 4],
];

/// Random absorbed vector with a multiple of `ell`: n in 1..=8,
/// ell in 2..=9, entries within +-1000.
pub fn random_absorbed(rng: &mut ChaCha8Rng) -> (PileVector, RuleParams) {
    let n = rng.gen_range(1..=8usize);
    let ell = rng.gen_range(2..=9u64);
    let base: i64 = rng.gen_range(-1000..=1000 - ell as i64);
    let mut entries: Vec<i64> = (0..n).map(|_| base + rng.gen_range(0..=ell as i64)).collect();
    let lo = *entries.iter().min().unwrap();
    // smallest multiple of ell at or above the minimum; inside the range window
    let m = lo.div_euclid(ell as i64) * ell as i64;
    let m = if m < lo { m + ell as i64 } else { m };
    let hi = lo + ell as i64;
    let slot = rng.gen_range(0..n);
    entries[slot] = m.min(hi);
    let x = PileVector::new(entries).unwrap();
    (x, p(ell))
}

/// Random vector of arbitrary range: n in 1..=8, ell in 2..=9, range up to `spread`.
pub fn random_wide(rng: &mut ChaCha8Rng, spread: i64) -> (PileVector, RuleParams) {
    let n = rng.gen_range(1..=8usize);
    let ell = rng.gen_range(2..=9u64);
    let base: i64 = rng.gen_range(-1000..=1000);
    let entries: Vec<i64> = (0..n).map(|_| base + rng.gen_range(0..=spread)).collect();
    (PileVector::new(entries).unwrap(), p(ell))
}

pub fn row_vector(row: &[i64]) -> PileVector {
    PileVector::new(row.iter().map(|&v| BigInt::from(v))).unwrap()
}

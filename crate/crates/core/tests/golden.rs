//! Worked sequences for n=4, n=5 reproduced from their first vector.

mod common;

use common::{p, row_vector, v, SEQ_ELL_7, TABLES_N4_ELL3};
use gmrule::{
    fast_forward, period_word, pivot_log, pivot_return_gaps, pivot_shift_check, position_at,
    settle, simulate, simulate_logged, Word,
};
use num_bigint::BigUint;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[test]
fn wide_start_with_five_moduli() {
    let x0 = v("16,17,20,20,21");
    // (ell, prefix_len, first absorbed, [(j, x^j)], word)
    let cases: [(u64, Option<u64>, &str, &[(u64, &str)], &str); 5] = [
        (2, Some(5), "14,14,15,15,16", &[(5, "14,14,15,15,16"), (15, "6,6,7,7,8"), (17, "4,5,5,6,6")], "s r^4 s r^4"),
        (3, Some(7), "12,13,13,13,15", &[(7, "12,13,13,13,15"), (22, "0,1,1,1,3")], "s^2 r^3 s r^9"),
        (4, Some(1), "16,16,19,19,20", &[(2, "15,16,18,18,19"), (22, "-1,0,2,2,3")], "s^3 r^8 s r^8"),
        (5, None, "16,17,20,20,21", &[(25, "-4,-3,0,0,1")], "s^3 r^5 s r^10 s r^5"),
        (7, None, "16,17,20,20,21", &[(35, "-12,-11,-8,-8,-7")], "s^3 r^7 s r^7 s^3 r^14"),
    ];
    for (ell, prefix, first, points, word) in cases {
        let s = settle(&x0, &p(ell));
        assert_eq!(s.prefix_len, prefix.map(big), "ell={ell}");
        assert_eq!(s.first_absorbed, v(first), "ell={ell}");
        for &(j, expected) in points {
            assert_eq!(position_at(&x0, &p(ell), &big(j)), v(expected), "ell={ell} j={j}");
            assert_eq!(simulate(&x0, &p(ell), j), v(expected), "ell={ell} j={j}");
        }
        let expected: Word = word.parse().unwrap();
        for column in 0..5 {
            let w = period_word(&s.first_absorbed, &p(ell), column).unwrap();
            assert!(w.word.is_rotation_of(&expected), "ell={ell} column={column}: {}", w.word);
            assert!(w.structure(ell).holds());
        }
        // one period lowers everything by (n-1) ell
        let period = 5 * ell;
        let later = fast_forward(&s.first_absorbed, &p(ell), &big(period)).unwrap();
        assert_eq!(later, s.first_absorbed.shifted(&-(num_bigint::BigInt::from(4 * ell))));
    }
}

#[test]
fn first_move_for_ell_4_already_absorbs() {
    let x1 = simulate(&v("16,17,20,20,21"), &p(4), 1);
    assert_eq!(x1, v("16,16,19,19,20"));
    assert_eq!(x1.range(), 4.into());
}

/// Rows of the four n=4, ell=3 tables. Two printed cells disagree with the
/// rule, and with their own neighbouring rows: table (b) row 8 and table (c)
/// row 11. Everything else, including every pivot, matches.
#[test]
fn four_tables_for_n4_ell3() {
    let mut mismatches = Vec::new();
    for (name, rows, caption) in TABLES_N4_ELL3 {
        let start = row_vector(&rows[0].0);
        let (_, log) = simulate_logged(&start, &p(3), 13);
        let mut cur = start.clone();
        for (i, (row, pivot)) in rows.iter().enumerate() {
            assert_eq!(log[i].kept + 1, *pivot, "table {name} row {}", i + 1);
            if cur != row_vector(row) {
                mismatches.push((name, i + 1, cur.to_string()));
            }
            cur = simulate(&cur, &p(3), 1);
        }
        let expected: Word = caption.parse().unwrap();
        for column in 0..4 {
            let w = period_word(&start, &p(3), column).unwrap();
            assert!(w.word.is_rotation_of(&expected), "table {name} column {column}");
        }
        assert!(pivot_shift_check(&start, &p(3), 10).unwrap());
        let gaps = pivot_return_gaps(&start, &p(3), 13).unwrap();
        assert!(gaps.iter().flatten().all(|g| g % 3 == 0), "table {name}: {gaps:?}");
    }
    assert_eq!(
        mismatches,
        vec![("b", 8, "10,10,12,12".to_string()), ("c", 11, "8,9,10,10".to_string())]
    );
}

#[test]
fn ell_7_sequence() {
    let start = row_vector(&SEQ_ELL_7[0]);
    let mut cur = start.clone();
    for row in SEQ_ELL_7 {
        assert_eq!(cur, row_vector(&row));
        cur = simulate(&cur, &p(7), 1);
    }
    // column 5 keeps its value for three moves, leaves, and returns after a multiple of 7
    let log = pivot_log(&start, &p(7), 70);
    assert_eq!(&log[..8], &[2, 3, 4, 4, 4, 1, 1, 1]);
    let gaps = pivot_return_gaps(&start, &p(7), 70).unwrap();
    assert!(!gaps[4].is_empty());
    assert!(gaps.iter().flatten().all(|g| g % 7 == 0), "{gaps:?}");
}

#![allow(dead_code)]

use contact_surgery::braid::BraidWord;
use proptest::prelude::*;

/// `s1 s2 … s_{m-1}` with pure squares `s_i^{±2}` spliced in, padded with
/// positive squares until `c+ − 2c− − m ≥ 1`. The closure stays a knot and
/// the parity condition holds because squares change the length by 2.
pub fn knot_from_squares(m: usize, squares: &[(usize, bool, usize)]) -> BraidWord {
    let mut letters: Vec<i64> = (1..m as i64).collect();
    for &(g, positive, at) in squares {
        let g = 1 + g % (m - 1);
        let s = if positive { g as i64 } else { -(g as i64) };
        let at = at % (letters.len() + 1);
        letters.splice(at..at, [s, s]);
    }
    let tb = |ls: &[i64]| {
        let plus = ls.iter().filter(|&&x| x > 0).count() as i64;
        let minus = ls.len() as i64 - plus;
        plus - 2 * minus - m as i64
    };
    while tb(&letters) < 1 {
        letters.extend([1, 1]);
    }
    BraidWord::from_signed(m, &letters).unwrap()
}

pub fn hypothesis_knot() -> impl Strategy<Value = BraidWord> {
    (2usize..6)
        .prop_flat_map(|m| (Just(m), prop::collection::vec((0usize..8, any::<bool>(), 0usize..64), 0..6)))
        .prop_map(|(m, sq)| knot_from_squares(m, &sq))
}

pub fn word(strands: std::ops::Range<usize>, len: std::ops::Range<usize>) -> impl Strategy<Value = BraidWord> {
    strands.prop_flat_map(move |m| {
        prop::collection::vec((1..m as i64, any::<bool>()), len.clone()).prop_map(move |ls| {
            let signed: Vec<i64> = ls.into_iter().map(|(g, p)| if p { g } else { -g }).collect();
            BraidWord::from_signed(m, &signed).unwrap()
        })
    })
}

//! Published reference tables used by the `paper` command, the examples and
//! the tests. Coefficient arrays list the coefficient of `s^0` first.

use std::sync::Arc;

use crate::codes::{gray_level_code, LinearCode};
use crate::error::Result;
use crate::loss::{GTable, LossPolynomial, RealPolynomial, TTable};
use crate::words::{Alphabet, Word};

/// The [5;2] binary code in the published label order `c_0..c_3`.
pub const FIVE_BIT_CODEWORDS: [&str; 4] = ["00000", "11100", "00111", "11011"];

/// Published loss table of a Hamming decoder of the [5;2] code.
pub const FIVE_BIT_HAMMING_TABLE: [&[i64]; 4] = [
    &[4, 20, 8],
    &[0, 0, 12, 12, 8],
    &[0, 0, 12, 12, 8],
    &[0, 0, 8, 16, 4, 4],
];

/// Published loss table of a chain decoder of the [5;2] code. Its entries sum
/// to 22 at `s^4`, where every genuine decoder table sums to 20.
pub const FIVE_BIT_CHAIN_TABLE: [&[i64]; 4] = [
    &[4, 10, 10, 6, 4],
    &[0, 6, 14, 10, 2],
    &[0, 2, 6, 10, 10, 4],
    &[0, 2, 10, 14, 6],
];

/// Published difference (Hamming minus chain) for the [5;2] code. The `s^4`
/// coefficient of the first row does not follow from the two tables above.
pub const FIVE_BIT_DIFFERENCE: [&[i64]; 4] = [
    &[0, 10, -2, -6, 2],
    &[0, -6, -2, 2, 6],
    &[0, -2, 6, 2, -2, -4],
    &[0, -2, -2, 2, -2, 4],
];

/// Published difference (Hamming minus chain) for the length-3 repetition
/// code; exhaustive computation gives `2s - 2s^2` and `-2s + 2s^2` instead.
pub const REPETITION_DIFFERENCE_PUBLISHED: [&[i64]; 2] = [&[0, 2, -1], &[0, -2, 1]];

/// Published Hamming-decoder entries of the gray-level code, as (label, coefficients).
pub const GRAY_HAMMING_ENTRIES: [(usize, &[i64]); 4] = [
    (0, &[16, 112]),
    (13, &[0, 0, 48, 16, 64]),
    (14, &[0, 0, 0, 64, 16, 48]),
    (15, &[0, 0, 0, 0, 0, 0, 112, 16]),
];

/// Published chain-decoder table of the gray-level code, labels `c_0..c_15`.
pub const GRAY_CHAIN_TABLE: [&[i64]; 16] = [
    &[16, 39, 39, 25, 9],
    &[0, 25, 57, 39, 7],
    &[0, 10, 42, 54, 22],
    &[0, 6, 22, 42, 42, 16],
    &[0, 7, 39, 57, 25],
    &[0, 9, 25, 39, 39, 16],
    &[0, 0, 16, 42, 42, 22, 6],
    &[0, 0, 0, 22, 54, 42, 10],
    &[0, 10, 42, 54, 22],
    &[0, 6, 22, 42, 42, 16],
    &[0, 0, 16, 39, 39, 25, 9],
    &[0, 0, 0, 25, 57, 39, 7],
    &[0, 0, 16, 42, 42, 22, 6],
    &[0, 0, 0, 22, 54, 42, 10],
    &[0, 0, 0, 7, 39, 57, 25],
    &[0, 0, 0, 9, 25, 39, 39, 16],
];

/// Published expected-loss difference (chain minus Hamming) for the gray-level
/// values, rounded to two decimals.
pub const GRAY_DIFFERENCE: [f64; 7] = [0.0, 27.10, -58.34, -58.79, 58.97, 40.33, -9.27];

/// Published crossover: the chain decoder wins for `s` above about 0.4.
pub const GRAY_CROSSOVER_BRACKET: (f64, f64) = (0.39, 0.41);

fn polys(rows: &[&[i64]]) -> Vec<LossPolynomial> {
    rows.iter().map(|r| LossPolynomial::new(r.to_vec())).collect()
}

/// The [5;2] code with labels in published order.
pub fn five_bit_code() -> Arc<LinearCode> {
    let b = Alphabet::binary();
    let words: Vec<Word> = FIVE_BIT_CODEWORDS
        .iter()
        .map(|w| Word::parse(b, w).expect("valid word"))
        .collect();
    let code = LinearCode::from_generator(b, vec![words[1].clone(), words[2].clone()])
        .expect("independent rows");
    Arc::new(code.relabel(&words).expect("same code"))
}

pub fn five_bit_hamming_table(code: &Arc<LinearCode>) -> Result<GTable> {
    GTable::from_entries(Arc::clone(code), polys(&FIVE_BIT_HAMMING_TABLE), "published hamming")
}

pub fn five_bit_chain_table(code: &Arc<LinearCode>) -> Result<GTable> {
    GTable::from_entries(Arc::clone(code), polys(&FIVE_BIT_CHAIN_TABLE), "published chain")
}

pub fn five_bit_difference(code: &Arc<LinearCode>) -> Result<TTable> {
    TTable::from_entries(Arc::clone(code), polys(&FIVE_BIT_DIFFERENCE))
}

pub fn repetition_code() -> Arc<LinearCode> {
    let b = Alphabet::binary();
    Arc::new(
        LinearCode::from_generator(b, vec![Word::parse(b, "111").expect("valid word")])
            .expect("nonzero row"),
    )
}

pub fn repetition_difference_published(code: &Arc<LinearCode>) -> Result<TTable> {
    TTable::from_entries(Arc::clone(code), polys(&REPETITION_DIFFERENCE_PUBLISHED))
}

pub fn gray_code() -> Arc<LinearCode> {
    Arc::new(gray_level_code().0)
}

pub fn gray_chain_table(code: &Arc<LinearCode>) -> Result<GTable> {
    GTable::from_entries(Arc::clone(code), polys(&GRAY_CHAIN_TABLE), "published chain")
}

pub fn gray_difference() -> RealPolynomial {
    RealPolynomial::new(GRAY_DIFFERENCE.to_vec())
}

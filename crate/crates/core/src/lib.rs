//! Value-weighted decoding over poset metrics.
//!
//! The crate builds linear codes over prime fields, nearest-neighbour decoders
//! under Hamming and poset metrics, and the exact expected-loss polynomials
//! that compare two decoders for a given assignment of values to codewords.
//! Channel and constellation simulators check the analytic results by sampling.

pub mod channel;
pub mod cli;
pub mod codes;
pub mod constellation;
pub mod decoders;
pub mod error;
pub mod fixtures;
pub mod loss;
pub mod posets;
pub mod report;
pub mod words;

use std::sync::OnceLock;

pub use codes::LinearCode;
pub use decoders::{Decoder, Metric, TieBreak};
pub use error::{Error, Result};
pub use loss::{GTable, LossPolynomial, TTable, ValueFunction};
pub use posets::{Family, Poset};
pub use words::{Alphabet, Coords, Word, WordSpace};

/// Default cap on `q^n`, the number of received words a decoder table covers.
pub const DEFAULT_MAX_TABLE: usize = 1 << 20;

/// Cap on `q^n`, overridable through the `POSETLOSS_MAX_TABLE` environment
/// variable (read once per process).
pub fn max_table_size() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var("POSETLOSS_MAX_TABLE")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0)
            .unwrap_or(DEFAULT_MAX_TABLE)
    })
}

pub(crate) fn check_table_size(space: &WordSpace) -> Result<()> {
    let cap = max_table_size();
    if space.size() > cap {
        return Err(Error::TooLarge {
            what: "received-word table",
            size: space.size(),
            cap,
        });
    }
    Ok(())
}

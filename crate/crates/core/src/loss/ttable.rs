//! Decoder-difference tables `T(c) = G_P(c) - G_Q(c)` and sign witnesses.

use std::sync::Arc;

use serde::Serialize;

use super::gtable::GTable;
use super::poly::LossPolynomial;
use super::sign::{sign_profile, Sign, SignProfile};
use super::value::ValueFunction;
use crate::codes::LinearCode;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TTable {
    code: Arc<LinearCode>,
    entries: Vec<LossPolynomial>,
}

/// `T = G_first - G_second`, per codeword.
pub fn t_table(first: &GTable, second: &GTable) -> Result<TTable> {
    if **first.code() != **second.code() {
        return Err(Error::CodeMismatch);
    }
    let entries = first
        .entries()
        .iter()
        .zip(second.entries())
        .map(|(a, b)| a - b)
        .collect();
    Ok(TTable {
        code: Arc::clone(first.code()),
        entries,
    })
}

impl TTable {
    pub fn from_entries(code: Arc<LinearCode>, entries: Vec<LossPolynomial>) -> Result<Self> {
        if entries.len() != code.len() {
            return Err(Error::DimensionMismatch {
                expected: code.len(),
                found: entries.len(),
            });
        }
        Ok(Self { code, entries })
    }

    pub fn code(&self) -> &Arc<LinearCode> {
        &self.code
    }

    pub fn entries(&self) -> &[LossPolynomial] {
        &self.entries
    }

    pub fn entry(&self, c: usize) -> &LossPolynomial {
        &self.entries[c]
    }

    /// Sum of all entries; zero for tables of two genuine decoders.
    pub fn total(&self) -> LossPolynomial {
        self.entries.iter().cloned().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LossPolynomial::is_zero)
    }

    /// `Σ_c T(c) μ(c)` at `s`: positive means the second decoder has lower
    /// expected loss for `μ`, negative means the first does.
    pub fn membership(&self, mu: &ValueFunction, s: f64) -> Result<f64> {
        mu.check(&self.code)?;
        Ok(self
            .entries
            .iter()
            .enumerate()
            .map(|(c, t)| t.eval(s) * mu.get(c))
            .sum())
    }

    pub fn profiles(&self) -> Vec<SignProfile> {
        self.entries.iter().map(sign_profile).collect()
    }

    pub fn rendered(&self) -> Vec<String> {
        self.entries.iter().map(LossPolynomial::to_string).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum WitnessMode {
    /// Signs at a single value of `s`.
    AtS { s: f64 },
    /// Signs holding on all of (0, 1).
    Everywhere,
}

/// Codewords with `T(negative) < 0 < T(positive)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub negative: usize,
    pub positive: usize,
}

/// Finds a pair of codewords whose T entries have strictly opposite signs.
///
/// Nonzero codewords are preferred; the zero codeword is used only when no
/// pair of nonzero codewords qualifies. Within that preference the smallest
/// labels win.
pub fn opposite_sign_witness(t: &TTable, mode: WitnessMode) -> Option<Witness> {
    let signs: Vec<Option<Sign>> = t
        .entries
        .iter()
        .map(|e| match mode {
            WitnessMode::AtS { s } => Some(Sign::of(e.eval(s))),
            WitnessMode::Everywhere => sign_profile(e).uniform_sign(),
        })
        .collect();
    let zero = t.code.zero_label();
    let pick = |want: Sign, allow_zero: bool| {
        (0..signs.len()).find(|&c| signs[c] == Some(want) && (allow_zero || c != zero))
    };
    let strict = pick(Sign::Negative, false).zip(pick(Sign::Positive, false));
    let (negative, positive) = strict.or_else(|| {
        let neg = pick(Sign::Negative, false).or_else(|| pick(Sign::Negative, true));
        let pos = pick(Sign::Positive, false).or_else(|| pick(Sign::Positive, true));
        neg.zip(pos)
    })?;
    Some(Witness { negative, positive })
}

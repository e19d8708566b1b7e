//! Exact loss tables `G_a(τ) = Σ_y s^{d_H(y, a(y) - τ)}`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::poly::LossPolynomial;
use crate::codes::LinearCode;
use crate::decoders::Decoder;
use crate::error::{Error, Result};
use crate::check_table_size;

/// One `G_a(τ)` polynomial per codeword label `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GTable {
    code: Arc<LinearCode>,
    label: String,
    entries: Vec<LossPolynomial>,
}

/// A coefficient where `Σ_τ G(τ)` differs from `M (1 + (q-1) s)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantViolation {
    pub degree: usize,
    pub expected: i64,
    pub actual: i64,
}

/// `M (1 + (q-1) s)^n`, the decoder-independent total of every G table.
pub fn expected_total(code: &LinearCode) -> LossPolynomial {
    let p = LossPolynomial::binomial_power(i64::from(code.q()) - 1, code.n());
    LossPolynomial::new(p.coeffs().iter().map(|c| c * code.len() as i64).collect())
}

/// Coefficients where the entries fail to sum to `M (1 + (q-1) s)^n`.
pub fn sum_invariant_violations(code: &LinearCode, entries: &[LossPolynomial]) -> Vec<InvariantViolation> {
    let total: LossPolynomial = entries.iter().cloned().sum();
    let expected = expected_total(code);
    let len = total.coeffs().len().max(expected.coeffs().len());
    (0..len)
        .filter(|&d| total.coeff(d) != expected.coeff(d))
        .map(|d| InvariantViolation {
            degree: d,
            expected: expected.coeff(d),
            actual: total.coeff(d),
        })
        .collect()
}

impl GTable {
    /// A table given directly, e.g. a published one.
    pub fn from_entries(code: Arc<LinearCode>, entries: Vec<LossPolynomial>, label: impl Into<String>) -> Result<Self> {
        if entries.len() != code.len() {
            return Err(Error::DimensionMismatch {
                expected: code.len(),
                found: entries.len(),
            });
        }
        Ok(Self {
            code,
            label: label.into(),
            entries,
        })
    }

    pub fn code(&self) -> &Arc<LinearCode> {
        &self.code
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &[LossPolynomial] {
        &self.entries
    }

    pub fn entry(&self, tau: usize) -> &LossPolynomial {
        &self.entries[tau]
    }

    pub fn total(&self) -> LossPolynomial {
        self.entries.iter().cloned().sum()
    }

    pub fn invariant_violations(&self) -> Vec<InvariantViolation> {
        sum_invariant_violations(&self.code, &self.entries)
    }

    pub fn rendered(&self) -> Vec<String> {
        self.entries.iter().map(LossPolynomial::to_string).collect()
    }
}

/// Weight distribution of the error patterns `y - a(y)`: `counts[e]` is the
/// number of received words whose error pattern has enumeration index `e`.
pub(crate) fn error_pattern_counts(decoder: &Decoder) -> Vec<u32> {
    let code = decoder.code();
    let space = code.space();
    let mut counts = vec![0u32; space.size()];
    for (y, &c) in decoder.table().iter().enumerate() {
        counts[space.sub(y, code.position(c as usize))] += 1;
    }
    counts
}

/// Builds the G table of `decoder` by exhausting F_q^n.
pub fn g_table(decoder: &Decoder) -> Result<GTable> {
    let code = decoder.code();
    let space = *code.space();
    check_table_size(&space)?;
    let counts = error_pattern_counts(decoder);
    let patterns: Vec<(usize, i64)> = counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(e, &k)| (e, i64::from(k)))
        .collect();
    let n = code.n();
    let entries = (0..code.len())
        .into_par_iter()
        .map(|tau| {
            let t = code.position(tau);
            let mut coeffs = vec![0i64; n + 1];
            for &(e, k) in &patterns {
                coeffs[space.weight(space.add(e, t))] += k;
            }
            LossPolynomial::new(coeffs)
        })
        .collect();
    Ok(GTable {
        code: Arc::clone(code),
        label: decoder.label().to_string(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::{nn_decoder, Metric, TieBreak};
    use crate::posets::Poset;
    use crate::words::{Alphabet, Word};

    fn repetition() -> Arc<LinearCode> {
        let b = Alphabet::binary();
        Arc::new(LinearCode::from_generator(b, vec![Word::parse(b, "111").unwrap()]).unwrap())
    }

    /// Direct double loop over y, used as the oracle.
    fn brute(decoder: &Decoder) -> Vec<Vec<i64>> {
        let code = decoder.code();
        let space = code.space();
        (0..code.len())
            .map(|tau| {
                let mut c = vec![0i64; code.n() + 1];
                for y in space.words() {
                    let a = code.codeword(decoder.decode(&y).unwrap());
                    let target = a.subtract(code.codeword(tau)).unwrap();
                    c[y.hamming_distance(&target).unwrap()] += 1;
                }
                c
            })
            .collect()
    }

    #[test]
    fn repetition_code_tables() {
        let rep = repetition();
        let h = nn_decoder(&rep, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let g = g_table(&h).unwrap();
        assert_eq!(g.rendered(), ["2 + 6s", "6s^2 + 2s^3"]);
        let chain = Metric::Poset(Poset::chain(3).unwrap());
        let p = nn_decoder(&rep, &chain, &TieBreak::Canonical).unwrap();
        let g = g_table(&p).unwrap();
        assert_eq!(g.rendered(), ["2 + 4s + 2s^2", "2s + 4s^2 + 2s^3"]);
        assert!(g.invariant_violations().is_empty());
    }

    #[test]
    fn matches_brute_force_and_invariant() {
        let t = Alphabet::new(3).unwrap();
        let code = Arc::new(
            LinearCode::from_generator(t, vec![Word::new(t, vec![1, 2, 0, 1]).unwrap()]).unwrap(),
        );
        for metric in [Metric::Hamming, Metric::Poset(Poset::nrt(2, 2).unwrap())] {
            let d = nn_decoder(&code, &metric, &TieBreak::Canonical).unwrap();
            let g = g_table(&d).unwrap();
            let oracle = brute(&d);
            for (entry, want) in g.entries().iter().zip(oracle) {
                assert_eq!(entry, &LossPolynomial::new(want));
            }
            assert!(g.invariant_violations().is_empty());
            assert_eq!(g.entry(code.zero_label()).coeff(0), code.len() as i64);
        }
        assert_eq!(expected_total(&code).coeffs(), [3, 24, 72, 96, 48]);
    }
}

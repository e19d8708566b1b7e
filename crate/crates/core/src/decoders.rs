//! Total decoding tables and nearest-neighbour decoders.
//!
//! A [`Decoder`] stores one codeword label per received word, indexed by the
//! enumeration order of F_q^n. Nearest-neighbour decoders are built under the
//! Hamming metric or a poset metric with an explicit tie-break policy.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::loss::LossPolynomial;
use crate::posets::Poset;
use crate::words::{Coords, Word, WordSpace};
use crate::check_table_size;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Metric {
    Hamming,
    Poset(Poset),
}

impl Metric {
    /// Distance between the words with enumeration indices `a` and `b`.
    #[inline]
    pub fn distance_at(&self, space: &WordSpace, a: usize, b: usize) -> usize {
        match self {
            Metric::Hamming => space.distance(a, b),
            Metric::Poset(p) => p.weight_of_support(space.support_of_difference(a, b)),
        }
    }

    pub fn distance(&self, x: &Word, y: &Word) -> Result<usize> {
        match self {
            Metric::Hamming => x.hamming_distance(y),
            Metric::Poset(p) => p.distance(x, y),
        }
    }

    fn check_len(&self, n: usize) -> Result<()> {
        match self {
            Metric::Poset(p) if p.len() != n => Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            }),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Metric::Hamming => "hamming".into(),
            Metric::Poset(p) if p.is_antichain() => format!("poset(antichain {})", p.len()),
            Metric::Poset(p) => format!("poset(n={}, covers={:?})", p.len(), p.covers()),
        }
    }
}

/// How a nearest-neighbour decoder chooses among equally near codewords.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Smallest Hamming distance to the received word, then smallest label.
    #[default]
    Canonical,
    /// Smallest label.
    Lex,
    /// Listed words go to the given labels; all other words follow `Canonical`.
    Explicit(BTreeMap<Word, usize>),
}

#[derive(Clone, Debug)]
pub struct Decoder {
    code: Arc<LinearCode>,
    table: Vec<u32>,
    label: String,
}

impl PartialEq for Decoder {
    fn eq(&self, other: &Self) -> bool {
        *self.code == *other.code && self.table == other.table
    }
}

/// First received word where a decoder is not nearest-neighbour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NnViolation {
    pub word: Word,
    pub decoded: Word,
    pub distance: usize,
    pub min_distance: usize,
}

impl Decoder {
    /// Wraps a table of codeword labels, one per word of F_q^n.
    pub fn from_table(code: Arc<LinearCode>, table: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        if table.len() != code.space().size() {
            return Err(Error::DimensionMismatch {
                expected: code.space().size(),
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&c| c as usize >= code.len()) {
            return Err(Error::InvalidArgument(format!(
                "table entry {bad} is not a codeword label"
            )));
        }
        Ok(Self {
            code,
            table,
            label: label.into(),
        })
    }

    /// The decoder sending every word to codeword `c`.
    pub fn constant(code: &Arc<LinearCode>, c: usize) -> Result<Self> {
        if c >= code.len() {
            return Err(Error::InvalidArgument(format!("no codeword with label {c}")));
        }
        check_table_size(code.space())?;
        let table = vec![c as u32; code.space().size()];
        let label = format!("constant {} (unreasonable)", code.codeword(c));
        Ok(Self {
            code: Arc::clone(code),
            table,
            label,
        })
    }

    pub fn code(&self) -> &Arc<LinearCode> {
        &self.code
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Codeword label decoded from the word with enumeration index `pos`.
    #[inline]
    pub fn decode_at(&self, pos: usize) -> usize {
        self.table[pos] as usize
    }

    pub fn decode(&self, y: &Word) -> Result<usize> {
        Ok(self.decode_at(self.code.space().index_of(y)?))
    }

    /// `a(c) = c` for every codeword.
    pub fn is_reasonable(&self) -> bool {
        (0..self.code.len()).all(|c| self.decode_at(self.code.position(c)) == c)
    }

    /// A copy with `y` decoded to codeword `c`.
    pub fn override_at(&self, y: &Word, c: usize) -> Result<Decoder> {
        if c >= self.code.len() {
            return Err(Error::InvalidArgument(format!("no codeword with label {c}")));
        }
        let pos = self.code.space().index_of(y)?;
        let mut out = self.clone();
        out.table[pos] = c as u32;
        out.label = format!("{} with {y} -> {}", self.label, self.code.codeword(c));
        Ok(out)
    }

    /// Decision regions: enumeration indices of the words decoded to each codeword.
    pub fn regions(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.code.len()];
        for (pos, &c) in self.table.iter().enumerate() {
            out[c as usize].push(pos);
        }
        out
    }

    /// Enumeration indices where the two decoders disagree.
    pub fn disagreements(&self, other: &Decoder) -> Result<Vec<usize>> {
        if *self.code != *other.code {
            return Err(Error::CodeMismatch);
        }
        Ok(self
            .table
            .iter()
            .zip(&other.table)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
            .collect())
    }

    /// `word,codeword` rows in enumeration order.
    pub fn to_csv(&self) -> String {
        let space = self.code.space();
        let mut out = String::from("word,codeword\n");
        for (pos, &c) in self.table.iter().enumerate() {
            let _ = writeln!(out, "{},{}", space.word(pos), self.code.codeword(c as usize));
        }
        out
    }

    /// The same table relative to a code object equal to this one.
    pub fn rebind(&self, code: Arc<LinearCode>) -> Result<Decoder> {
        if *code != *self.code {
            return Err(Error::CodeMismatch);
        }
        Ok(Decoder {
            code,
            table: self.table.clone(),
            label: self.label.clone(),
        })
    }
}

/// Minimum distance from word `pos` to the code and the labels attaining it.
pub fn argmin_at(code: &LinearCode, metric: &Metric, pos: usize) -> (usize, Vec<usize>) {
    let space = code.space();
    let mut best = usize::MAX;
    let mut set = Vec::new();
    for (label, &c) in code.positions().iter().enumerate() {
        let d = metric.distance_at(space, pos, c);
        if d < best {
            best = d;
            set.clear();
        }
        if d == best {
            set.push(label);
        }
    }
    (best, set)
}

/// All codewords nearest to `y` under `metric`.
pub fn argmin_set(code: &LinearCode, metric: &Metric, y: &Word) -> Result<Vec<usize>> {
    metric.check_len(code.n())?;
    let pos = code.space().index_of(y)?;
    Ok(argmin_at(code, metric, pos).1)
}

fn canonical_choice(code: &LinearCode, pos: usize, set: &[usize]) -> usize {
    let space = code.space();
    *set.iter()
        .min_by_key(|&&c| (space.distance(pos, code.position(c)), c))
        .expect("argmin set is never empty")
}

/// Nearest-neighbour decoder under `metric`.
pub fn nn_decoder(code: &Arc<LinearCode>, metric: &Metric, tiebreak: &TieBreak) -> Result<Decoder> {
    metric.check_len(code.n())?;
    check_table_size(code.space())?;
    let space = *code.space();
    let mut table = vec![0u32; space.size()];
    let lex = matches!(tiebreak, TieBreak::Lex);
    table
        .par_chunks_mut(1 << 12)
        .enumerate()
        .for_each(|(chunk, slots)| {
            let base = chunk << 12;
            for (k, slot) in slots.iter_mut().enumerate() {
                let (_, set) = argmin_at(code, metric, base + k);
                let c = if lex { set[0] } else { canonical_choice(code, base + k, &set) };
                *slot = c as u32;
            }
        });
    if let TieBreak::Explicit(overrides) = tiebreak {
        for (word, &c) in overrides {
            let pos = space.index_of(word)?;
            let (_, set) = argmin_at(code, metric, pos);
            if !set.contains(&c) {
                return Err(Error::InvalidTieBreak {
                    word: word.to_string(),
                });
            }
            table[pos] = c as u32;
        }
    }
    let policy = match tiebreak {
        TieBreak::Canonical => "canonical".to_string(),
        TieBreak::Lex => "lex".to_string(),
        TieBreak::Explicit(m) => format!("explicit ({} overrides)", m.len()),
    };
    Decoder::from_table(
        Arc::clone(code),
        table,
        format!("nn {} tie-break {policy}", metric.name()),
    )
}

/// Checks that every word is decoded to a nearest codeword; returns the first
/// violation in enumeration order.
pub fn verify_nn(decoder: &Decoder, metric: &Metric) -> Result<Option<NnViolation>> {
    let code = decoder.code();
    metric.check_len(code.n())?;
    let space = code.space();
    let first = (0..space.size()).into_par_iter().find_first(|&pos| {
        let (min, _) = argmin_at(code, metric, pos);
        metric.distance_at(space, pos, code.position(decoder.decode_at(pos))) != min
    });
    Ok(first.map(|pos| {
        let (min, _) = argmin_at(code, metric, pos);
        let c = decoder.decode_at(pos);
        NnViolation {
            word: space.word(pos),
            decoded: code.codeword(c).clone(),
            distance: metric.distance_at(space, pos, code.position(c)),
            min_distance: min,
        }
    }))
}

/// Two Hamming nearest-neighbour decoders that differ only at the all-ones
/// word, which is sent to `c1` by one and `c2` by the other.
#[derive(Clone, Debug)]
pub struct TieSwap {
    pub reference: Decoder,
    pub swapped: Decoder,
    pub y_tilde: Word,
    pub c1: usize,
    pub c2: usize,
    /// `d_H(ỹ, c2 - c1)`.
    pub m: usize,
    /// Code length.
    pub n: usize,
}

/// [`tie_swap_pair_with`] using the canonical choice at the all-ones word as
/// `c1` and the next nearest codeword as `c2`.
pub fn tie_swap_pair(code: &Arc<LinearCode>) -> Result<TieSwap> {
    let ones = all_ones(code)?;
    let set = argmin_set(code, &Metric::Hamming, &ones)?;
    if set.len() < 2 {
        return Err(tie_hypothesis(&ones));
    }
    let pos = code.space().index_of(&ones)?;
    let c1 = canonical_choice(code, pos, &set);
    let c2 = *set.iter().find(|&&c| c != c1).expect("two or more nearest codewords");
    tie_swap_pair_with(code, c1, c2)
}

fn all_ones(code: &LinearCode) -> Result<Word> {
    if code.q() != 2 {
        return Err(Error::HypothesisViolated(
            "the tie swap construction needs a binary code".into(),
        ));
    }
    Word::indicator(code.alphabet(), code.n(), Coords::full(code.n()))
}

fn tie_hypothesis(y: &Word) -> Error {
    Error::HypothesisViolated(format!("{y} has a unique nearest codeword"))
}

/// Hamming NN decoders sending the all-ones word `ỹ` to `c1` and `c2`
/// respectively; both must be nearest to `ỹ`.
pub fn tie_swap_pair_with(code: &Arc<LinearCode>, c1: usize, c2: usize) -> Result<TieSwap> {
    let ones = all_ones(code)?;
    let set = argmin_set(code, &Metric::Hamming, &ones)?;
    if set.len() < 2 {
        return Err(tie_hypothesis(&ones));
    }
    if c1 == c2 || !set.contains(&c1) || !set.contains(&c2) {
        return Err(Error::InvalidTieBreak {
            word: ones.to_string(),
        });
    }
    let reference = nn_decoder(
        code,
        &Metric::Hamming,
        &TieBreak::Explicit(BTreeMap::from([(ones.clone(), c1)])),
    )?;
    let swapped = reference.override_at(&ones, c2)?;
    let m = code
        .codeword(code.diff(c2, c1))
        .hamming_distance(&ones)?;
    Ok(TieSwap {
        reference,
        swapped,
        y_tilde: ones,
        c1,
        c2,
        m,
        n: code.n(),
    })
}

impl TieSwap {
    /// `T(c) = s^{d_H(ỹ, c1 - c)} - s^{d_H(ỹ, c2 - c)}` for every codeword,
    /// the reference table minus the swapped one.
    pub fn closed_form(&self) -> Vec<LossPolynomial> {
        single_swap_difference(self.reference.code(), &self.y_tilde, self.c1, self.c2)
    }
}

/// Difference of the G tables of two decoders that agree except at `y`,
/// which the first sends to `from` and the second to `to`.
fn single_swap_difference(code: &LinearCode, y: &Word, from: usize, to: usize) -> Vec<LossPolynomial> {
    let space = code.space();
    let pos = space.index_of(y).expect("word of the code's space");
    (0..code.len())
        .map(|c| {
            let d_from = space.distance(pos, code.position(code.diff(from, c)));
            let d_to = space.distance(pos, code.position(code.diff(to, c)));
            &LossPolynomial::monomial(1, d_from) - &LossPolynomial::monomial(1, d_to)
        })
        .collect()
}

/// Decoders of a BGL code built around an (I, J)-decomposable poset.
#[derive(Clone, Debug)]
pub struct DecomposablePair {
    pub code: Arc<LinearCode>,
    /// Decodes every `y` to `y_{I-J}`; nearest-neighbour under the reference poset.
    pub reference: Decoder,
    /// Agrees with `reference` except at `ỹ`, which goes to `c̃`.
    pub poset: Decoder,
    pub y_tilde: Word,
    pub c1: usize,
    pub c2: usize,
    pub n1: usize,
    pub m1: usize,
    pub n2: usize,
    pub m2: usize,
}

/// Builds the pair of decoders on `C_(I,J)`.
///
/// `reference` defaults to the antichain. `x_tilde` must vanish on `I`;
/// `c_tilde` must be a nonzero word supported on `I_J^-`.
pub fn decomposable_pair(
    poset: &Poset,
    reference: Option<&Poset>,
    i_set: Coords,
    j_set: Coords,
    x_tilde: &Word,
    c_tilde: &Word,
) -> Result<DecomposablePair> {
    let n = poset.len();
    let antichain;
    let reference = match reference {
        Some(r) => r,
        None => {
            antichain = Poset::antichain(n)?;
            &antichain
        }
    };
    if reference.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: reference.len(),
        });
    }
    let d = poset.decompose(i_set, j_set)?;
    if !d.decomposable {
        return Err(Error::NotDecomposable {
            i: i_set.to_string(),
            j: j_set.to_string(),
        });
    }
    if !reference.is_filter(i_set) {
        return Err(Error::NotAFilter(format!("{i_set} (reference poset)")));
    }
    let alphabet = x_tilde.alphabet();
    for w in [x_tilde, c_tilde] {
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.len(),
            });
        }
    }
    if !x_tilde.support().intersection(i_set).is_empty() {
        return Err(Error::Support(format!("x̃ = {x_tilde} must vanish on I = {i_set}")));
    }
    if c_tilde.weight() == 0 || !c_tilde.support().is_subset(&d.i_minus) {
        return Err(Error::Support(format!(
            "c̃ = {c_tilde} must be nonzero and supported on I_J^- = {}",
            d.i_minus
        )));
    }
    let code = Arc::new(LinearCode::bgl(alphabet, poset, i_set, j_set)?);
    let space = *code.space();
    check_table_size(&space)?;
    let keep = i_set.difference(j_set);
    let mut table = Vec::with_capacity(space.size());
    for y in space.words() {
        let c = code
            .label_of(&y.project(keep)?)
            .expect("projection onto I - J lies in the code");
        table.push(c as u32);
    }
    let reference_dec = Decoder::from_table(Arc::clone(&code), table, "y -> y_(I-J)")?;
    if let Some(v) = verify_nn(&reference_dec, &Metric::Poset(reference.clone()))? {
        return Err(Error::HypothesisViolated(format!(
            "projection decoder is not nearest-neighbour for the reference poset at {}",
            v.word
        )));
    }
    let e_j = Word::indicator(alphabet, n, j_set)?;
    let y_tilde = x_tilde.add(&e_j)?;
    let c2 = code.label_of(c_tilde).expect("c̃ is supported on I - J");
    let poset_dec = reference_dec
        .override_at(&y_tilde, c2)?
        .with_label(format!("y -> y_(I-J), {y_tilde} -> {c_tilde}"));
    if let Some(v) = verify_nn(&poset_dec, &Metric::Poset(poset.clone()))? {
        return Err(Error::HypothesisViolated(format!(
            "reassigned decoder is not poset nearest-neighbour at {}",
            v.word
        )));
    }
    let c1_word = Word::indicator(alphabet, n, d.i_plus)?;
    let c1 = code.label_of(&c1_word).expect("I_J^+ lies in I - J");
    let wy = y_tilde.weight();
    let wc = c_tilde.weight();
    let plus = d.i_plus.len();
    Ok(DecomposablePair {
        code,
        reference: reference_dec,
        poset: poset_dec,
        y_tilde,
        c1,
        c2,
        n1: wy + plus,
        m1: wy + wc + plus,
        n2: wy + wc,
        m2: wy,
    })
}

impl DecomposablePair {
    /// `T(c) = s^{d_H(ỹ, -c)} - s^{d_H(ỹ, c̃ - c)}` for every codeword, the
    /// reference table minus the poset one.
    pub fn closed_form(&self) -> Vec<LossPolynomial> {
        let from = self.reference.decode(&self.y_tilde).expect("ỹ has the code's length");
        single_swap_difference(&self.code, &self.y_tilde, from, self.c2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;

    fn b(s: &str) -> Word {
        Word::parse(Alphabet::binary(), s).unwrap()
    }

    fn code(rows: &[&str]) -> Arc<LinearCode> {
        Arc::new(LinearCode::from_generator(Alphabet::binary(), rows.iter().map(|r| b(r)).collect()).unwrap())
    }

    fn gray() -> Arc<LinearCode> {
        Arc::new(crate::codes::gray_level_code().0)
    }

    #[test]
    fn hamming_code_decoding_is_tie_free() {
        let c = gray();
        for y in c.space().words() {
            assert_eq!(argmin_set(&c, &Metric::Hamming, &y).unwrap().len(), 1);
        }
        let canon = nn_decoder(&c, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let lex = nn_decoder(&c, &Metric::Hamming, &TieBreak::Lex).unwrap();
        assert_eq!(canon, lex);
        assert_eq!(canon.decode(&b("1110001")).unwrap(), 1);
        assert!(canon.is_reasonable());
    }

    #[test]
    fn repetition_code_under_chain() {
        let c = code(&["111"]);
        let chain = Metric::Poset(Poset::chain(3).unwrap());
        for y in c.space().words() {
            assert_eq!(argmin_set(&c, &chain, &y).unwrap().len(), 1);
        }
        let d = nn_decoder(&c, &chain, &TieBreak::Canonical).unwrap();
        let region: Vec<String> = d.regions()[0].iter().map(|&p| c.space().word(p).to_string()).collect();
        assert_eq!(region, ["000", "010", "100", "110"]);
    }

    #[test]
    fn argmin_examples() {
        let cw = code(&["110", "011"]);
        let set = argmin_set(&cw, &Metric::Hamming, &b("111")).unwrap();
        let words: Vec<String> = set.iter().map(|&l| cw.codeword(l).to_string()).collect();
        assert_eq!(words, ["011", "110", "101"]);
        assert_eq!(argmin_set(&cw, &Metric::Hamming, &b("110")).unwrap(), [2]);

        let ex = code(&["11100", "00111"]);
        // 11011 is one flip away; the other two nonzero codewords are two away
        let set = argmin_set(&ex, &Metric::Hamming, &b("11111")).unwrap();
        assert_eq!(set, [ex.label_of(&b("11011")).unwrap()]);
        let set = argmin_set(&ex, &Metric::Hamming, &b("10101")).unwrap();
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn constant_decoder_is_not_nn() {
        let c = gray();
        let a0 = Decoder::constant(&c, 0).unwrap();
        assert_eq!(a0.regions()[0].len(), 128);
        assert!(!a0.is_reasonable());
        let v = verify_nn(&a0, &Metric::Hamming).unwrap().unwrap();
        assert!(v.distance > v.min_distance);
        let rep = code(&["111"]);
        assert_eq!(Decoder::constant(&rep, 0).unwrap().decode(&b("111")).unwrap(), 0);
    }

    #[test]
    fn override_is_a_point_update() {
        let c = gray();
        let d = nn_decoder(&c, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let y = b("0101010");
        let o = d.override_at(&y, 3).unwrap();
        assert_eq!(o.decode(&y).unwrap(), 3);
        assert_eq!(d.disagreements(&o).unwrap().len(), 1);
        let same = d.override_at(&y, d.decode(&y).unwrap()).unwrap();
        assert_eq!(same.table(), d.table());
    }

    #[test]
    fn explicit_tie_break_is_checked() {
        let cw = code(&["110", "011"]);
        let bad = TieBreak::Explicit(BTreeMap::from([(b("111"), 0)]));
        assert!(matches!(
            nn_decoder(&cw, &Metric::Hamming, &bad),
            Err(Error::InvalidTieBreak { .. })
        ));
        let good = TieBreak::Explicit(BTreeMap::from([(b("111"), 3)]));
        let d = nn_decoder(&cw, &Metric::Hamming, &good).unwrap();
        assert_eq!(d.decode(&b("111")).unwrap(), 3);
        assert!(verify_nn(&d, &Metric::Hamming).unwrap().is_none());
    }

    #[test]
    fn antichain_metric_matches_hamming() {
        let c = code(&["11100", "00111"]);
        let anti = Metric::Poset(Poset::antichain(5).unwrap());
        for tb in [TieBreak::Canonical, TieBreak::Lex] {
            assert_eq!(
                nn_decoder(&c, &Metric::Hamming, &tb).unwrap().table(),
                nn_decoder(&c, &anti, &tb).unwrap().table()
            );
        }
    }

    #[test]
    fn tie_swap_on_constant_weight_code() {
        let cw = code(&["110", "011"]);
        let (c1, c2) = (cw.label_of(&b("110")).unwrap(), cw.label_of(&b("011")).unwrap());
        let pair = tie_swap_pair_with(&cw, c1, c2).unwrap();
        assert_eq!((pair.m, pair.n), (1, 3));
        assert_eq!(pair.reference.disagreements(&pair.swapped).unwrap().len(), 1);
        assert!(verify_nn(&pair.reference, &Metric::Hamming).unwrap().is_none());
        assert!(verify_nn(&pair.swapped, &Metric::Hamming).unwrap().is_none());
        let default = tie_swap_pair(&cw).unwrap();
        assert_ne!(default.c1, default.c2);

        let rep = code(&["111"]);
        assert!(matches!(tie_swap_pair(&rep), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn decomposable_pair_on_chain() {
        let chain5 = Poset::chain(5).unwrap();
        let i = Coords::from_indices(5, [3, 4, 5]).unwrap();
        let pair = decomposable_pair(&chain5, None, i, Coords::singleton(4), &b("00000"), &b("00100")).unwrap();
        assert_eq!(pair.y_tilde.to_string(), "00010");
        assert_eq!(pair.code.codeword(pair.c1).to_string(), "00001");
        assert_eq!(pair.code.codeword(pair.c2).to_string(), "00100");
        assert_eq!((pair.n1, pair.m1, pair.n2, pair.m2), (2, 3, 2, 1));
        assert_eq!(pair.reference.disagreements(&pair.poset).unwrap().len(), 1);

        assert!(matches!(
            decomposable_pair(&chain5, None, i, Coords::singleton(4), &b("00000"), &b("00001")),
            Err(Error::Support(_))
        ));
        assert!(matches!(
            decomposable_pair(&chain5, None, i, Coords::singleton(4), &b("00100"), &b("00100")),
            Err(Error::Support(_))
        ));
        assert!(matches!(
            decomposable_pair(&chain5, None, Coords::from_indices(5, [3, 4]).unwrap(), Coords::singleton(4), &b("00000"), &b("00100")),
            Err(Error::NotAFilter(_))
        ));
        let anti = Poset::antichain(5).unwrap();
        assert!(matches!(
            decomposable_pair(&anti, None, i, Coords::singleton(4), &b("00000"), &b("00100")),
            Err(Error::NotDecomposable { .. })
        ));
    }

    #[test]
    fn csv_dump() {
        let rep = code(&["111"]);
        let d = nn_decoder(&rep, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let csv = d.to_csv();
        assert!(csv.starts_with("word,codeword\n000,000\n001,000\n"));
        assert_eq!(csv.lines().count(), 9);
    }
}

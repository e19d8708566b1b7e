//! Linear codes over F_q, stored fully enumerated.
//!
//! Codewords carry stable labels `0..M`. By default codeword `u·G` gets the
//! label equal to the lexicographic index of the information word `u`; a code
//! can be relabelled to pin an externally given order.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::posets::Poset;
use crate::words::{Alphabet, Coords, Word, WordSpace};

/// Largest supported number of codewords.
pub const MAX_CODEWORDS: usize = 4096;

#[derive(Clone)]
pub struct LinearCode {
    space: WordSpace,
    info_space: WordSpace,
    generator: Vec<Word>,
    codewords: Vec<Word>,
    /// Enumeration index in F_q^n of each codeword.
    positions: Vec<usize>,
    by_position: HashMap<usize, usize>,
    /// Label of the codeword `u·G`, indexed by information word index.
    label_of_info: Vec<usize>,
    info_of_label: Vec<usize>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.codewords == other.codewords
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LinearCode([{}; {}]_{}, {} codewords)",
            self.n(),
            self.k(),
            self.q(),
            self.len()
        )
    }
}

/// Rank of `rows` over F_q by Gaussian elimination.
fn rank_mod_q(rows: &[Word], q: u32) -> usize {
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.symbols().iter().map(|&s| u32::from(s)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = mod_inverse(m[rank][col], q);
        for v in m[rank].iter_mut() {
            *v = *v * inv % q;
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                let pivot = m[rank].clone();
                for (v, p) in m[r].iter_mut().zip(&pivot) {
                    *v = (*v + q * q - f * p) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u32, q: u32) -> u32 {
    // q is prime: a^(q-2)
    let (mut base, mut exp, mut acc) = (a % q, q - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

impl LinearCode {
    /// All F_q-combinations of `rows`, labelled by lexicographic information word.
    pub fn from_generator(alphabet: Alphabet, rows: Vec<Word>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidArgument("generator has no rows".into()))?;
        let n = first.len();
        for r in &rows {
            if r.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch {
                    left: alphabet.q(),
                    right: r.alphabet().q(),
                });
            }
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let k = rows.len();
        let rank = rank_mod_q(&rows, alphabet.q());
        if rank < k {
            return Err(Error::DegenerateGenerator { rank, rows: k });
        }
        let info_space = WordSpace::with_dimension(alphabet, k)?;
        if info_space.size() > MAX_CODEWORDS {
            return Err(Error::TooLarge {
                what: "code",
                size: info_space.size(),
                cap: MAX_CODEWORDS,
            });
        }
        let space = WordSpace::new(alphabet, n)?;
        let q = alphabet.q();
        let mut codewords = Vec::with_capacity(info_space.size());
        for u in info_space.words() {
            let mut acc = vec![0u32; n];
            for (coef, row) in u.symbols().iter().zip(&rows) {
                for (a, &g) in acc.iter_mut().zip(row.symbols()) {
                    *a = (*a + u32::from(*coef) * u32::from(g)) % q;
                }
            }
            codewords.push(Word::new(alphabet, acc.into_iter().map(|v| v as u8).collect())?);
        }
        let identity: Vec<usize> = (0..codewords.len()).collect();
        Self::assemble(space, info_space, rows, codewords, identity.clone(), identity)
    }

    fn assemble(
        space: WordSpace,
        info_space: WordSpace,
        generator: Vec<Word>,
        codewords: Vec<Word>,
        label_of_info: Vec<usize>,
        info_of_label: Vec<usize>,
    ) -> Result<Self> {
        let positions: Vec<usize> = codewords
            .iter()
            .map(|c| space.index_of(c))
            .collect::<Result<_>>()?;
        let by_position = positions.iter().enumerate().map(|(l, &p)| (p, l)).collect();
        Ok(Self {
            space,
            info_space,
            generator,
            codewords,
            positions,
            by_position,
            label_of_info,
            info_of_label,
        })
    }

    /// The zero code `{0}` of length `n` (k = 0, M = 1).
    pub fn zero_code(alphabet: Alphabet, n: usize) -> Result<Self> {
        let space = WordSpace::new(alphabet, n)?;
        let info_space = WordSpace::with_dimension(alphabet, 0)?;
        Self::assemble(space, info_space, Vec::new(), vec![Word::zero(alphabet, n)], vec![0], vec![0])
    }

    /// The same code with labels reassigned so that `order[i]` is codeword `i`.
    pub fn relabel(&self, order: &[Word]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: order.len(),
            });
        }
        let mut old_of_new = Vec::with_capacity(order.len());
        for w in order {
            let old = self.label_of(w).ok_or_else(|| {
                Error::InvalidArgument(format!("{w} is not a codeword of this code"))
            })?;
            if old_of_new.contains(&old) {
                return Err(Error::InvalidArgument(format!("{w} listed twice")));
            }
            old_of_new.push(old);
        }
        let mut new_of_old = vec![0; order.len()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let label_of_info = self.label_of_info.iter().map(|&l| new_of_old[l]).collect();
        let info_of_label = old_of_new.iter().map(|&l| self.info_of_label[l]).collect();
        Self::assemble(
            self.space,
            self.info_space,
            self.generator.clone(),
            order.to_vec(),
            label_of_info,
            info_of_label,
        )
    }

    /// `span{e_i : i ∈ I - J}` for an (I, J)-decomposable pair of `poset`.
    pub fn bgl(alphabet: Alphabet, poset: &Poset, i_set: Coords, j_set: Coords) -> Result<Self> {
        let d = poset.decompose(i_set, j_set)?;
        if !d.decomposable {
            return Err(Error::NotDecomposable {
                i: i_set.to_string(),
                j: j_set.to_string(),
            });
        }
        let rows = i_set
            .difference(j_set)
            .iter()
            .map(|i| Word::unit(alphabet, poset.len(), i))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator(alphabet, rows)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.space.alphabet()
    }

    pub fn q(&self) -> u32 {
        self.space.q()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn k(&self) -> usize {
        self.info_space.n()
    }

    /// M = q^k.
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn space(&self) -> &WordSpace {
        &self.space
    }

    pub fn generator(&self) -> &[Word] {
        &self.generator
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn codeword(&self, label: usize) -> &Word {
        &self.codewords[label]
    }

    /// Enumeration index in F_q^n of codeword `label`.
    pub fn position(&self, label: usize) -> usize {
        self.positions[label]
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    /// Label of the codeword at enumeration index `pos`, if it is one.
    pub fn label_at(&self, pos: usize) -> Option<usize> {
        self.by_position.get(&pos).copied()
    }

    pub fn label_of(&self, word: &Word) -> Option<usize> {
        self.space
            .index_of(word)
            .ok()
            .and_then(|p| self.label_at(p))
    }

    /// Label of the zero codeword.
    pub fn zero_label(&self) -> usize {
        self.label_of_info[0]
    }

    /// Label of `u·G` for the information word with lexicographic index `info`.
    pub fn encode_index(&self, info: usize) -> usize {
        self.label_of_info[info]
    }

    pub fn encode(&self, info: &Word) -> Result<usize> {
        Ok(self.label_of_info[self.info_space.index_of(info)?])
    }

    /// Information word of codeword `label`.
    pub fn information(&self, label: usize) -> Word {
        self.info_space.word(self.info_of_label[label])
    }

    /// Label of `c_a - c_b`.
    pub fn diff(&self, a: usize, b: usize) -> usize {
        let u = self
            .info_space
            .sub(self.info_of_label[a], self.info_of_label[b]);
        self.label_of_info[u]
    }

    /// Label of `c_a + c_b`.
    pub fn sum(&self, a: usize, b: usize) -> usize {
        let u = self
            .info_space
            .add(self.info_of_label[a], self.info_of_label[b]);
        self.label_of_info[u]
    }

    /// Label of `-c_a`.
    pub fn neg(&self, a: usize) -> usize {
        self.diff(self.zero_label(), a)
    }

    pub fn min_distance(&self) -> Option<usize> {
        self.codewords
            .iter()
            .map(Word::weight)
            .filter(|&w| w > 0)
            .min()
    }

    /// `A_w` for `w = 0..=n`.
    pub fn weight_distribution(&self) -> Vec<usize> {
        let mut out = vec![0; self.n() + 1];
        for c in &self.codewords {
            out[c.weight()] += 1;
        }
        out
    }

    /// Parses `q=<prime> n=<int> k=<int>` followed by `k` generator rows of
    /// space-separated (or concatenated single-digit) symbols. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty code description"))?;
        let (mut q, mut n, mut k) = (None, None, None);
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(hline, format!("expected key=value, got {field:?}")))?;
            let value: usize = value
                .parse()
                .map_err(|_| Error::parse(hline, format!("bad number in {field:?}")))?;
            match key {
                "q" => q = Some(value),
                "n" => n = Some(value),
                "k" => k = Some(value),
                _ => return Err(Error::parse(hline, format!("unknown key {key:?}"))),
            }
        }
        let missing = |name| Error::parse(hline, format!("missing {name}="));
        let q = q.ok_or_else(|| missing("q"))?;
        let n = n.ok_or_else(|| missing("n"))?;
        let k = k.ok_or_else(|| missing("k"))?;
        let alphabet = Alphabet::new(u32::try_from(q).unwrap_or(0))?;
        let mut rows = Vec::with_capacity(k);
        for (no, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let symbols: Option<Vec<u8>> = if tokens.len() == 1 && n > 1 {
                tokens[0].chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect()
            } else {
                tokens.iter().map(|t| t.parse().ok()).collect()
            };
            let symbols = symbols.ok_or_else(|| Error::parse(no, "bad symbol"))?;
            if symbols.len() != n {
                return Err(Error::parse(no, format!("row has {} symbols, expected {n}", symbols.len())));
            }
            rows.push(Word::new(alphabet, symbols).map_err(|e| Error::parse(no, e.to_string()))?);
        }
        if rows.len() != k {
            return Err(Error::parse(
                hline,
                format!("expected {k} generator rows, found {}", rows.len()),
            ));
        }
        Self::from_generator(alphabet, rows)
    }

    /// Text form accepted by [`LinearCode::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("q={} n={} k={}\n", self.q(), self.n(), self.k());
        for row in &self.generator {
            let parts: Vec<String> = row.symbols().iter().map(u8::to_string).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> CodeSummary {
        CodeSummary {
            q: self.q(),
            n: self.n(),
            k: self.k(),
            size: self.len(),
            min_distance: self.min_distance(),
            weight_distribution: self.weight_distribution(),
            generator: self.generator.clone(),
            codewords: self.codewords.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeSummary {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub size: usize,
    pub min_distance: Option<usize>,
    pub weight_distribution: Vec<usize>,
    pub generator: Vec<Word>,
    pub codewords: Vec<Word>,
}

/// One row of the gray-level codebook: a gray level, its codeword label and value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrayLevel {
    pub gray: u8,
    pub label: usize,
    pub value: f64,
}

/// Codewords of the gray-level [7;4] Hamming code in label order `c_0..c_15`.
pub const GRAY_CODEWORDS: [&str; 16] = [
    "0000000", "1110000", "1101100", "0011100", "0101010", "1011010", "1000110", "0110110",
    "1001001", "0111001", "0100101", "1010101", "1100011", "0010011", "0001111", "1111111",
];

/// (gray level, codeword label, value) triples of the gray-level codebook.
pub const GRAY_LEVELS: [(u8, usize, f64); 16] = [
    (101, 15, 1.00),
    (102, 14, 0.90),
    (103, 13, 0.89),
    (104, 12, 0.88),
    (105, 11, 0.87),
    (106, 10, 0.86),
    (107, 9, 0.85),
    (108, 8, 0.84),
    (109, 7, 0.83),
    (110, 6, 0.82),
    (187, 5, 0.50),
    (188, 4, 0.40),
    (189, 3, 0.30),
    (190, 2, 0.20),
    (191, 1, 0.10),
    (192, 0, 0.00),
];

/// The [7;4] binary Hamming code used for gray-level images, with labels
/// `c_0..c_15` pinned to [`GRAY_CODEWORDS`], and its codebook rows.
pub fn gray_level_code() -> (LinearCode, Vec<GrayLevel>) {
    let b = Alphabet::binary();
    let rows = ["1000110", "0100101", "0010011", "0001111"]
        .iter()
        .map(|r| Word::parse(b, r).expect("valid row"))
        .collect();
    let code = LinearCode::from_generator(b, rows).expect("full-rank generator");
    let order: Vec<Word> = GRAY_CODEWORDS
        .iter()
        .map(|c| Word::parse(b, c).expect("valid codeword"))
        .collect();
    let code = code.relabel(&order).expect("listed words form the code");
    let levels = GRAY_LEVELS
        .iter()
        .map(|&(gray, label, value)| GrayLevel { gray, label, value })
        .collect();
    (code, levels)
}

/// Value per codeword label of the gray-level codebook.
pub fn gray_level_values() -> Vec<f64> {
    let mut values = vec![0.0; 16];
    for &(_, label, value) in &GRAY_LEVELS {
        values[label] = value;
    }
    values
}

//! Words over a prime field F_q, Hamming geometry and coordinate projections.
//!
//! Coordinates are numbered from 1 in every public interface. The space F_q^n
//! is enumerated lexicographically with coordinate 1 most significant, so the
//! word with enumeration index `i` has symbols equal to the base-q digits of
//! `i`, most significant first.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported word length (coordinate sets are 32-bit masks).
pub const MAX_LENGTH: usize = 32;

/// Prime alphabet size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Alphabet {
    q: u32,
}

impl Alphabet {
    pub fn new(q: u32) -> Result<Self> {
        if !(2..256).contains(&q) || !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(Self { q })
    }

    pub const fn binary() -> Self {
        Self { q: 2 }
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// A set of coordinates from `{1..=32}`, stored as a bit mask (bit `i - 1`
/// holds coordinate `i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coords(u32);

impl Coords {
    pub const fn empty() -> Self {
        Coords(0)
    }

    /// `{1..=n}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_LENGTH);
        if n == 32 {
            Coords(u32::MAX)
        } else {
            Coords((1u32 << n) - 1)
        }
    }

    pub const fn from_mask(mask: u32) -> Self {
        Coords(mask)
    }

    pub const fn mask(&self) -> u32 {
        self.0
    }

    /// Builds a set from 1-based indices, each required to lie in `1..=n`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Result<Self> {
        let mut mask = 0u32;
        for i in indices {
            if i == 0 || i > n || i > MAX_LENGTH {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Coords(mask))
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!((1..=MAX_LENGTH).contains(&i));
        Coords(1 << (i - 1))
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=MAX_LENGTH).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Coords) -> Coords {
        Coords(self.0 | other.0)
    }

    pub fn intersection(self, other: Coords) -> Coords {
        Coords(self.0 & other.0)
    }

    pub fn difference(self, other: Coords) -> Coords {
        Coords(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Coords {
        Coords(!self.0 & Coords::full(n).0)
    }

    pub fn is_subset(&self, other: &Coords) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest index in the set, if any.
    pub fn max_index(&self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    /// 1-based indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i + 1)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Coords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Coords {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// A length-n vector over F_q.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    alphabet: Alphabet,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() || symbols.len() > MAX_LENGTH {
            return Err(Error::InvalidArgument(format!(
                "word length {} outside 1..={MAX_LENGTH}",
                symbols.len()
            )));
        }
        if let Some(&s) = symbols.iter().find(|&&s| u32::from(s) >= alphabet.q()) {
            return Err(Error::SymbolOutOfRange {
                symbol: s.into(),
                q: alphabet.q(),
            });
        }
        Ok(Self { alphabet, symbols })
    }

    pub fn zero(alphabet: Alphabet, n: usize) -> Self {
        Self {
            alphabet,
            symbols: vec![0; n],
        }
    }

    /// The unit word e_i (1-based).
    pub fn unit(alphabet: Alphabet, n: usize, i: usize) -> Result<Self> {
        Self::indicator(alphabet, n, Coords::from_indices(n, [i])?)
    }

    /// The word with symbol 1 on every coordinate of `set` and 0 elsewhere.
    pub fn indicator(alphabet: Alphabet, n: usize, set: Coords) -> Result<Self> {
        if set.max_index().is_some_and(|m| m > n) {
            return Err(Error::IndexOutOfRange {
                index: set.max_index().unwrap_or(0),
                n,
            });
        }
        let symbols = (1..=n).map(|i| u8::from(set.contains(i))).collect();
        Word::new(alphabet, symbols)
    }

    /// Parses a digit string (`"1110000"`) or, for q > 10, a dot-separated list.
    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let symbols: Option<Vec<u8>> = if text.contains('.') {
            text.split('.').map(|t| t.trim().parse::<u8>().ok()).collect()
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect()
        };
        let symbols =
            symbols.ok_or_else(|| Error::parse(1, format!("cannot parse word {text:?}")))?;
        Word::new(alphabet, symbols)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based coordinate `i`.
    pub fn get(&self, i: usize) -> u8 {
        self.symbols[i - 1]
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.q(),
                right: other.alphabet.q(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// Componentwise `self - other` mod q.
    pub fn subtract(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let q = self.alphabet.q();
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| ((u32::from(a) + q - u32::from(b)) % q) as u8)
            .collect();
        Ok(Word {
            alphabet: self.alphabet,
            symbols,
        })
    }

    /// Componentwise `self + other` mod q.
    pub fn add(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let q = self.alphabet.q();
        let symbols = self
            .symbols
            .iter()
            .zip(&other.symbols)
            .map(|(&a, &b)| ((u32::from(a) + u32::from(b)) % q) as u8)
            .collect();
        Ok(Word {
            alphabet: self.alphabet,
            symbols,
        })
    }

    pub fn hamming_distance(&self, other: &Word) -> Result<usize> {
        self.check_compatible(other)?;
        Ok(self
            .symbols
            .iter()
            .zip(&other.symbols)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    pub fn support(&self) -> Coords {
        let mut mask = 0u32;
        for (i, &s) in self.symbols.iter().enumerate() {
            if s != 0 {
                mask |= 1 << i;
            }
        }
        Coords::from_mask(mask)
    }

    /// Coordinates where `self` and `other` differ.
    pub fn difference_support(&self, other: &Word) -> Result<Coords> {
        Ok(self.subtract(other)?.support())
    }

    /// Keeps coordinates in `set`, zeroes the rest.
    pub fn project(&self, set: Coords) -> Result<Word> {
        if let Some(m) = set.max_index() {
            if m > self.len() {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    n: self.len(),
                });
            }
        }
        let symbols = self
            .symbols
            .iter()
            .enumerate()
            .map(|(i, &s)| if set.contains(i + 1) { s } else { 0 })
            .collect();
        Ok(Word {
            alphabet: self.alphabet,
            symbols,
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.q() <= 10 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else {
            for (i, s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    write!(f, ".")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The ambient space F_q^n with index-level arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WordSpace {
    alphabet: Alphabet,
    n: usize,
    size: usize,
}

impl WordSpace {
    pub fn new(alphabet: Alphabet, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("length 0 word space".into()));
        }
        Self::with_dimension(alphabet, n)
    }

    /// Like [`WordSpace::new`] but admits the one-point space of dimension 0
    /// (information space of the zero code).
    pub(crate) fn with_dimension(alphabet: Alphabet, n: usize) -> Result<Self> {
        if n > MAX_LENGTH {
            return Err(Error::InvalidArgument(format!(
                "length {n} outside 1..={MAX_LENGTH}"
            )));
        }
        let size = (alphabet.q() as usize)
            .checked_pow(n as u32)
            .filter(|&s| s <= 1 << 40)
            .ok_or(Error::TooLarge {
                what: "word space",
                size: usize::MAX,
                cap: 1 << 40,
            })?;
        Ok(Self { alphabet, n, size })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn q(&self) -> u32 {
        self.alphabet.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// q^n.
    pub fn size(&self) -> usize {
        self.size
    }

    fn is_binary(&self) -> bool {
        self.alphabet.q() == 2
    }

    pub fn word(&self, index: usize) -> Word {
        debug_assert!(index < self.size);
        let mut symbols = vec![0u8; self.n];
        self.digits_into(index, &mut symbols);
        Word {
            alphabet: self.alphabet,
            symbols,
        }
    }

    /// Writes the symbols of word `index` into `out` (coordinate 1 first).
    pub fn digits_into(&self, mut index: usize, out: &mut [u8]) {
        let q = self.q() as usize;
        for slot in out.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
    }

    pub fn index_of(&self, word: &Word) -> Result<usize> {
        if word.alphabet != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.q(),
                right: word.alphabet.q(),
            });
        }
        if word.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: word.len(),
            });
        }
        let q = self.q() as usize;
        Ok(word
            .symbols
            .iter()
            .fold(0usize, |acc, &s| acc * q + s as usize))
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.size).map(|i| self.word(i))
    }

    /// Index of `word(a) - word(b)`.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        if self.is_binary() {
            return a ^ b;
        }
        let q = self.q() as usize;
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0usize, 1usize);
        for _ in 0..self.n {
            let d = (a % q + q - b % q) % q;
            out += d * place;
            place *= q;
            a /= q;
            b /= q;
        }
        out
    }

    /// Index of `word(a) + word(b)`.
    pub fn add(&self, a: usize, b: usize) -> usize {
        if self.is_binary() {
            return a ^ b;
        }
        let q = self.q() as usize;
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0usize, 1usize);
        for _ in 0..self.n {
            let d = (a % q + b % q) % q;
            out += d * place;
            place *= q;
            a /= q;
            b /= q;
        }
        out
    }

    /// Hamming weight of word `a`.
    pub fn weight(&self, a: usize) -> usize {
        if self.is_binary() {
            return a.count_ones() as usize;
        }
        let q = self.q() as usize;
        let mut a = a;
        let mut w = 0;
        for _ in 0..self.n {
            w += usize::from(!a.is_multiple_of(q));
            a /= q;
        }
        w
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        if self.is_binary() {
            return (a ^ b).count_ones() as usize;
        }
        let q = self.q() as usize;
        let (mut a, mut b) = (a, b);
        let mut d = 0;
        for _ in 0..self.n {
            d += usize::from(a % q != b % q);
            a /= q;
            b /= q;
        }
        d
    }

    /// Coordinates where words `a` and `b` differ.
    pub fn support_of_difference(&self, a: usize, b: usize) -> Coords {
        if self.is_binary() {
            // index bit (n - i) holds coordinate i
            let diff = (a ^ b) as u32;
            return Coords::from_mask(diff.reverse_bits() >> (32 - self.n));
        }
        let q = self.q() as usize;
        let (mut a, mut b) = (a, b);
        let mut mask = 0u32;
        for pos in (0..self.n).rev() {
            if a % q != b % q {
                mask |= 1 << pos;
            }
            a /= q;
            b /= q;
        }
        Coords::from_mask(mask)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(Alphabet::binary(), s).unwrap()
    }

    fn w3(s: &str) -> Word {
        Word::parse(Alphabet::new(3).unwrap(), s).unwrap()
    }

    #[test]
    fn primality_is_enforced() {
        assert!(Alphabet::new(2).is_ok());
        assert!(Alphabet::new(7).is_ok());
        assert_eq!(Alphabet::new(4), Err(Error::NotPrime(4)));
        assert_eq!(Alphabet::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Alphabet::new(0), Err(Error::NotPrime(0)));
    }

    #[test]
    fn subtract_examples() {
        assert_eq!(w("1110000").subtract(&w("0001111")).unwrap(), w("1111111"));
        let x = w("1101100");
        assert_eq!(x.subtract(&x).unwrap(), w("0000000"));
        assert_eq!(w3("21").subtract(&w3("12")).unwrap(), w3("12"));
    }

    #[test]
    fn subtract_rejects_mismatches() {
        assert!(matches!(
            w("101").subtract(&w("10")),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            w("10").subtract(&w3("10")),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(w("11100").hamming_distance(&w("00111")).unwrap(), 4);
        assert_eq!(w("10110").hamming_distance(&w("10110")).unwrap(), 0);
        assert_eq!(w("1111111").hamming_distance(&w("0000000")).unwrap(), 7);
        assert_eq!(w("1111111").weight(), 7);
    }

    #[test]
    fn project_examples() {
        let y = w("11011");
        let set = Coords::from_indices(5, [3, 4, 5]).unwrap();
        assert_eq!(y.project(set).unwrap(), w("00011"));
        assert_eq!(y.project(Coords::empty()).unwrap(), w("00000"));
        assert_eq!(y.project(Coords::full(5)).unwrap(), y);
        assert!(matches!(
            y.project(Coords::from_indices(6, [6]).unwrap()),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(Coords::from_indices(5, [0]).is_err());
    }

    #[test]
    fn three_way_decomposition_reassembles() {
        let n = 5;
        let i_set = Coords::from_indices(n, [3, 4, 5]).unwrap();
        let j_set = Coords::from_indices(n, [4]).unwrap();
        let y = w("10110");
        let a = y.project(i_set.complement(n)).unwrap();
        let b = y.project(j_set).unwrap();
        let c = y.project(i_set.difference(j_set)).unwrap();
        assert_eq!(a, w("10000"));
        assert_eq!(b, w("00010"));
        assert_eq!(c, w("00100"));
        assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), y);

        let space = WordSpace::new(Alphabet::binary(), n).unwrap();
        let mut rng = 0x9e3779b97f4a7c15u64;
        for _ in 0..20 {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let y = space.word((rng >> 33) as usize % space.size());
            let parts = [
                y.project(i_set.complement(n)).unwrap(),
                y.project(j_set).unwrap(),
                y.project(i_set.difference(j_set)).unwrap(),
            ];
            let sum = parts[0].add(&parts[1]).unwrap().add(&parts[2]).unwrap();
            assert_eq!(sum, y);
        }
    }

    #[test]
    fn rendering_matches_digit_strings() {
        assert_eq!(w("1110000").to_string(), "1110000");
        let a = Alphabet::new(11).unwrap();
        let x = Word::new(a, vec![10, 0, 3]).unwrap();
        assert_eq!(x.to_string(), "10.0.3");
        assert_eq!(Word::parse(a, "10.0.3").unwrap(), x);
    }

    #[test]
    fn enumeration_is_lexicographic_coordinate_one_first() {
        let space = WordSpace::new(Alphabet::binary(), 3).unwrap();
        let all: Vec<String> = space.words().map(|x| x.to_string()).collect();
        assert_eq!(all, ["000", "001", "010", "011", "100", "101", "110", "111"]);
        let s3 = WordSpace::new(Alphabet::new(3).unwrap(), 2).unwrap();
        assert_eq!(s3.word(5).to_string(), "12");
    }

    #[test]
    fn coords_iteration_and_display() {
        let c = Coords::from_indices(7, [7, 1, 3]).unwrap();
        assert_eq!(c.to_vec(), vec![1, 3, 7]);
        assert_eq!(c.to_string(), "{1,3,7}");
        assert_eq!(c.max_index(), Some(7));
        assert_eq!(c.complement(7).to_vec(), vec![2, 4, 5, 6]);
    }

    fn space_strategy() -> impl Strategy<Value = WordSpace> {
        prop_oneof![
            (1usize..=10).prop_map(|n| WordSpace::new(Alphabet::binary(), n).unwrap()),
            (1usize..=6).prop_map(|n| WordSpace::new(Alphabet::new(3).unwrap(), n).unwrap()),
            (1usize..=4).prop_map(|n| WordSpace::new(Alphabet::new(5).unwrap(), n).unwrap()),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn hamming_is_a_translation_invariant_metric(
            space in space_strategy(), a in any::<usize>(), b in any::<usize>(), c in any::<usize>()
        ) {
            let (x, y, z) = (space.word(a % space.size()), space.word(b % space.size()), space.word(c % space.size()));
            let dxy = x.hamming_distance(&y).unwrap();
            prop_assert_eq!(dxy, y.hamming_distance(&x).unwrap());
            prop_assert_eq!(dxy == 0, x == y);
            prop_assert!(dxy <= x.hamming_distance(&z).unwrap() + z.hamming_distance(&y).unwrap());
            prop_assert_eq!(dxy, x.subtract(&y).unwrap().weight());
            let xi = space.index_of(&x).unwrap();
            let yi = space.index_of(&y).unwrap();
            prop_assert_eq!(space.distance(xi, yi), dxy);
            prop_assert_eq!(space.word(space.sub(xi, yi)), x.subtract(&y).unwrap());
            prop_assert_eq!(space.word(space.add(xi, yi)), x.add(&y).unwrap());
            prop_assert_eq!(space.support_of_difference(xi, yi), x.difference_support(&y).unwrap());
        }

        #[test]
        fn projection_splits_words(space in space_strategy(), a in any::<usize>(), mask in any::<u32>()) {
            let y = space.word(a % space.size());
            let set = Coords::from_mask(mask).intersection(Coords::full(space.n()));
            let back = y.project(set).unwrap().add(&y.project(set.complement(space.n())).unwrap()).unwrap();
            prop_assert_eq!(back, y);
        }
    }
}

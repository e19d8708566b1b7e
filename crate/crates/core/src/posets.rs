//! Partial orders on `{1..n}` and the poset metric they induce.
//!
//! A [`Poset`] stores, for every element, the bit mask of its down-set and
//! up-set. The P-distance between two words is the size of the ideal
//! generated by the coordinates where they differ.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Coords, Word, MAX_LENGTH};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    /// `down[i]` = `{j : j ⪯ i}` for element `i + 1`.
    down: Vec<u32>,
    /// `up[i]` = `{j : i ⪯ j}` for element `i + 1`.
    up: Vec<u32>,
}

/// Standard families of posets with fixed ground-set layouts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    Antichain { n: usize },
    /// The total order `1 ⪯ 2 ⪯ … ⪯ n`.
    Chain { n: usize },
    /// Disjoint union of `chains` chains of `length` elements; chain `t`
    /// occupies the consecutive indices `(t-1)*length + 1 ..= t*length`.
    Nrt { chains: usize, length: usize },
    /// Levels of the given sizes on consecutive index blocks, every element of
    /// a lower level below every element of a higher level.
    Hierarchical { levels: Vec<usize> },
}

impl Family {
    pub fn len(&self) -> usize {
        match self {
            Family::Antichain { n } | Family::Chain { n } => *n,
            Family::Nrt { chains, length } => chains * length,
            Family::Hierarchical { levels } => levels.iter().sum(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn build(&self) -> Result<Poset> {
        match self {
            Family::Antichain { n } => Poset::antichain(*n),
            Family::Chain { n } => Poset::chain(*n),
            Family::Nrt { chains, length } => Poset::nrt(*chains, *length),
            Family::Hierarchical { levels } => Poset::hierarchical(levels),
        }
    }

    /// Builds the poset, requiring its ground set to have exactly `n` elements.
    pub fn build_with_len(&self, n: usize) -> Result<Poset> {
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.len(),
            });
        }
        self.build()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Antichain { n } => write!(f, "antichain {n}"),
            Family::Chain { n } => write!(f, "chain {n}"),
            Family::Nrt { chains, length } => write!(f, "nrt {chains} {length}"),
            Family::Hierarchical { levels } => {
                write!(f, "hier")?;
                for l in levels {
                    write!(f, " {l}")?;
                }
                Ok(())
            }
        }
    }
}

/// Result of splitting a filter `I` around `J ⊂ I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub i: Coords,
    pub j: Coords,
    /// Elements of `I - J` strictly above some element of `J`.
    pub i_plus: Coords,
    /// Elements of `I - J` strictly below some element of `J`.
    pub i_minus: Coords,
    pub decomposable: bool,
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_LENGTH {
        return Err(Error::InvalidArgument(format!(
            "poset size {n} outside 1..={MAX_LENGTH}"
        )));
    }
    Ok(())
}

impl Poset {
    /// Reflexive-transitive closure of `relations`, each pair `(i, j)` read as
    /// `i ⪯ j` with 1-based indices.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        check_size(n)?;
        let mut down: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        for &(i, j) in relations {
            for x in [i, j] {
                if x == 0 || x > n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            down[j - 1] |= 1 << (i - 1);
        }
        // Warshall on down-set masks.
        for k in 0..n {
            let dk = down[k];
            for d in down.iter_mut() {
                if *d & (1 << k) != 0 {
                    *d |= dk;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && down[i] & (1 << j) != 0 && down[j] & (1 << i) != 0 {
                    return Err(Error::NotAPoset(i.min(j) + 1, i.max(j) + 1));
                }
            }
        }
        Ok(Self::from_down_sets(down))
    }

    fn from_down_sets(down: Vec<u32>) -> Self {
        let n = down.len();
        let mut up = vec![0u32; n];
        for (i, &d) in down.iter().enumerate() {
            for j in Coords::from_mask(d).iter() {
                up[j - 1] |= 1 << i;
            }
        }
        Self { n, down, up }
    }

    pub fn antichain(n: usize) -> Result<Self> {
        Self::from_relations(n, &[])
    }

    pub fn chain(n: usize) -> Result<Self> {
        check_size(n)?;
        let down = (0..n).map(|i| Coords::full(i + 1).mask()).collect();
        Ok(Self::from_down_sets(down))
    }

    pub fn nrt(chains: usize, length: usize) -> Result<Self> {
        if chains == 0 || length == 0 {
            return Err(Error::InvalidArgument("NRT sizes must be positive".into()));
        }
        check_size(chains * length)?;
        let mut relations = Vec::new();
        for t in 0..chains {
            for r in 1..length {
                relations.push((t * length + r, t * length + r + 1));
            }
        }
        Self::from_relations(chains * length, &relations)
    }

    pub fn hierarchical(levels: &[usize]) -> Result<Self> {
        if levels.is_empty() || levels.contains(&0) {
            return Err(Error::InvalidArgument(
                "hierarchical level sizes must be positive".into(),
            ));
        }
        let n: usize = levels.iter().sum();
        check_size(n)?;
        let mut down = Vec::with_capacity(n);
        let mut below = 0u32;
        let mut start = 0usize;
        for &l in levels {
            for i in start..start + l {
                down.push(below | (1 << i));
            }
            for i in start..start + l {
                below |= 1 << i;
            }
            start += l;
        }
        Ok(Self::from_down_sets(down))
    }

    pub fn family(kind: &Family) -> Result<Self> {
        kind.build()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `i ⪯ j` (1-based).
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.down[j - 1] & (1 << (i - 1)) != 0
    }

    /// `i ≺ j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn down_set(&self, i: usize) -> Coords {
        Coords::from_mask(self.down[i - 1])
    }

    pub fn up_set(&self, i: usize) -> Coords {
        Coords::from_mask(self.up[i - 1])
    }

    fn check_set(&self, set: Coords) -> Result<()> {
        match set.max_index() {
            Some(m) if m > self.n => Err(Error::IndexOutOfRange { index: m, n: self.n }),
            _ => Ok(()),
        }
    }

    /// Smallest ideal containing `set`.
    pub fn ideal_of(&self, set: Coords) -> Result<Coords> {
        self.check_set(set)?;
        Ok(self.ideal_unchecked(set))
    }

    #[inline]
    pub(crate) fn ideal_unchecked(&self, set: Coords) -> Coords {
        let mut mask = 0u32;
        for i in set.iter() {
            mask |= self.down[i - 1];
        }
        Coords::from_mask(mask)
    }

    /// Smallest filter (up-set) containing `set`.
    pub fn filter_of(&self, set: Coords) -> Result<Coords> {
        self.check_set(set)?;
        let mut mask = 0u32;
        for i in set.iter() {
            mask |= self.up[i - 1];
        }
        Ok(Coords::from_mask(mask))
    }

    pub fn is_ideal(&self, set: Coords) -> bool {
        self.ideal_of(set).is_ok_and(|s| s == set)
    }

    pub fn is_filter(&self, set: Coords) -> bool {
        self.filter_of(set).is_ok_and(|s| s == set)
    }

    /// The reversed order.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }

    /// Relation pairs `(i, j)` with `i ≺ j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..=self.n {
            for i in self.down_set(j).iter().filter(|&i| i != j) {
                let between = self
                    .down_set(j)
                    .iter()
                    .any(|k| k != i && k != j && self.lt(i, k));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.n).all(|i| self.down[i] == 1 << i)
    }

    /// Splits the filter `i_set` around `j_set`.
    pub fn decompose(&self, i_set: Coords, j_set: Coords) -> Result<Decomposition> {
        self.check_set(i_set)?;
        self.check_set(j_set)?;
        if !self.is_filter(i_set) {
            return Err(Error::NotAFilter(i_set.to_string()));
        }
        if j_set.is_empty() || !j_set.is_subset(&i_set) {
            return Err(Error::InvalidArgument(format!(
                "J = {j_set} must be a nonempty subset of I = {i_set}"
            )));
        }
        let rest = i_set.difference(j_set);
        let mut plus = 0u32;
        let mut minus = 0u32;
        for i in rest.iter() {
            if j_set.iter().any(|j| self.lt(j, i)) {
                plus |= 1 << (i - 1);
            }
            if j_set.iter().any(|j| self.lt(i, j)) {
                minus |= 1 << (i - 1);
            }
        }
        let (i_plus, i_minus) = (Coords::from_mask(plus), Coords::from_mask(minus));
        let decomposable = !i_plus.is_empty()
            && !i_minus.is_empty()
            && i_plus.intersection(i_minus).is_empty()
            && i_plus.union(i_minus) == rest;
        Ok(Decomposition {
            i: i_set,
            j: j_set,
            i_plus,
            i_minus,
            decomposable,
        })
    }

    /// The decomposable `(I, J)` with the smallest `I` mask, then the
    /// smallest `J` mask. Searches posets of up to 16 elements.
    pub fn first_decomposition(&self) -> Option<Decomposition> {
        if self.n > 16 {
            return None;
        }
        for i_mask in 1u32..(1 << self.n) {
            let i_set = Coords::from_mask(i_mask);
            if !self.is_filter(i_set) {
                continue;
            }
            for j_mask in 1..=i_mask {
                if j_mask & !i_mask != 0 {
                    continue;
                }
                let d = self.decompose(i_set, Coords::from_mask(j_mask)).ok()?;
                if d.decomposable {
                    return Some(d);
                }
            }
        }
        None
    }

    /// `d_P(x, y) = |⟨supp(x - y)⟩|`.
    pub fn distance(&self, x: &Word, y: &Word) -> Result<usize> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let support = x.difference_support(y)?;
        Ok(self.ideal_unchecked(support).len())
    }

    /// P-weight of a difference given by its support.
    #[inline]
    pub fn weight_of_support(&self, support: Coords) -> usize {
        self.ideal_unchecked(support).len()
    }

    /// Parses the text format: a first line `n=<int>` followed by
    /// `<i> < <j>` relation lines, or a family shorthand (`chain 7`,
    /// `antichain 5`, `nrt 2 3`, `hier 4 2 3`). `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty poset description"))?;
        if let Some(rest) = first.strip_prefix("n=") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(first_no, "bad size"))?;
            let mut relations = Vec::new();
            for (no, line) in lines {
                let (a, b) = line
                    .split_once('<')
                    .ok_or_else(|| Error::parse(no, "expected `<i> < <j>`"))?;
                let a = a.trim().parse().map_err(|_| Error::parse(no, "bad index"))?;
                let b = b.trim().parse().map_err(|_| Error::parse(no, "bad index"))?;
                relations.push((a, b));
            }
            return Poset::from_relations(n, &relations);
        }
        let family = parse_family(first).map_err(|msg| Error::parse(first_no, msg))?;
        if let Some((no, _)) = lines.next() {
            return Err(Error::parse(no, "unexpected content after family shorthand"));
        }
        family.build()
    }

    /// Text form accepted by [`Poset::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (i, j) in self.covers() {
            out.push_str(&format!("{i} < {j}\n"));
        }
        out
    }
}

/// Parses a family shorthand such as `chain 7` or `hier 4 2 3`.
pub fn parse_family(text: &str) -> std::result::Result<Family, String> {
    let mut parts = text.split_whitespace();
    let name = parts.next().ok_or("empty family")?;
    let nums: Vec<usize> = parts
        .map(|p| p.parse().map_err(|_| format!("bad number {p:?}")))
        .collect::<std::result::Result<_, _>>()?;
    match (name, nums.as_slice()) {
        ("antichain", [n]) => Ok(Family::Antichain { n: *n }),
        ("chain", [n]) => Ok(Family::Chain { n: *n }),
        ("nrt", [c, l]) => Ok(Family::Nrt {
            chains: *c,
            length: *l,
        }),
        ("hier", levels) if !levels.is_empty() => Ok(Family::Hierarchical {
            levels: levels.to_vec(),
        }),
        _ => Err(format!("unknown poset family {text:?}")),
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.n, self.covers())
    }
}

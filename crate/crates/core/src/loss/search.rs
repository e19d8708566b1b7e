//! Searches over decoders: reproducing a target G table by choosing among
//! nearest codewords, and ranking poset decoders by expected loss.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::expected::expected_loss_poly;
use super::gtable::{g_table, sum_invariant_violations, GTable, InvariantViolation};
use super::value::ValueFunction;
use crate::codes::LinearCode;
use crate::decoders::{argmin_at, nn_decoder, Decoder, Metric, TieBreak};
use crate::error::{Error, Result};
use crate::posets::Poset;
use crate::check_table_size;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: 200_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

#[derive(Clone, Debug)]
pub enum MatchOutcome {
    /// A nearest-neighbour decoder whose G table equals the target.
    Found(Decoder),
    /// No choice of nearest codewords reproduces the target.
    Exhausted,
    /// The node or time budget ran out first.
    BudgetExhausted,
    /// The target cannot be the G table of any decoder: its entries do not sum
    /// to `M (1 + (q-1) s)^n`.
    InvariantViolation(Vec<InvariantViolation>),
}

impl MatchOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            MatchOutcome::Found(_) => "found",
            MatchOutcome::Exhausted => "exhausted",
            MatchOutcome::BudgetExhausted => "budget_exhausted",
            MatchOutcome::InvariantViolation(_) => "invariant_violation",
        }
    }

    pub fn decoder(&self) -> Option<&Decoder> {
        match self {
            MatchOutcome::Found(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MatchReport {
    pub outcome: MatchOutcome,
    /// Received words with more than one nearest codeword.
    pub tied_words: usize,
    /// Classes of tied words with interchangeable choices.
    pub groups: usize,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Degree of `s` that choosing a codeword adds to each `G(τ)`, one entry per τ.
type Contribution = Vec<u8>;

/// Option contributions shared by a class of tied words, and the words with
/// the label realising each option.
type TiedClass = (Vec<Contribution>, Vec<(usize, Vec<usize>)>);

struct Group {
    words: Vec<usize>,
    options: Vec<Contribution>,
}

struct Searcher<'a> {
    groups: &'a [Group],
    cells: usize,
    stride: usize,
    /// `suffix_min[g][cell]`: least total the groups `g..` can add to `cell`.
    suffix_min: Vec<Vec<i64>>,
    suffix_max: Vec<Vec<i64>>,
    residual: Vec<i64>,
    counts: Vec<Vec<usize>>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    out_of_budget: bool,
}

impl Searcher<'_> {
    fn apply(&mut self, option: &Contribution, k: i64) -> bool {
        let mut ok = true;
        for (tau, &d) in option.iter().enumerate() {
            let cell = tau * self.stride + d as usize;
            self.residual[cell] -= k;
            ok &= self.residual[cell] >= 0;
        }
        ok
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes >= self.budget.max_nodes
            || (self.nodes & 0x3ff == 0 && self.start.elapsed() >= self.budget.max_time)
        {
            self.out_of_budget = true;
        }
        !self.out_of_budget
    }

    fn feasible(&self, g: usize) -> bool {
        (0..self.cells).all(|c| {
            self.suffix_min[g][c] <= self.residual[c] && self.residual[c] <= self.suffix_max[g][c]
        })
    }

    fn search_group(&mut self, g: usize) -> bool {
        if g == self.groups.len() {
            return self.residual.iter().all(|&r| r == 0);
        }
        if !self.feasible(g) {
            return false;
        }
        let size = self.groups[g].words.len();
        self.search_option(g, 0, size)
    }

    fn search_option(&mut self, g: usize, j: usize, remaining: usize) -> bool {
        if !self.tick() {
            return false;
        }
        let options = self.groups[g].options.len();
        if j + 1 == options {
            let option = self.groups[g].options[j].clone();
            let ok = self.apply(&option, remaining as i64);
            self.counts[g][j] = remaining;
            if ok && self.search_group(g + 1) {
                return true;
            }
            self.apply(&option, -(remaining as i64));
            return false;
        }
        let option = self.groups[g].options[j].clone();
        for k in 0..=remaining {
            // each extra unit only lowers residual cells, so a negative cell ends the loop
            let ok = k == 0 || self.apply(&option, 1);
            if !ok {
                self.apply(&option, -(k as i64));
                return false;
            }
            self.counts[g][j] = k;
            if self.search_option(g, j + 1, remaining - k) {
                return true;
            }
            if self.out_of_budget {
                self.apply(&option, -(k as i64));
                return false;
            }
        }
        self.apply(&option, -(remaining as i64));
        false
    }
}

/// Looks for a nearest-neighbour decoder under `metric` whose G table equals
/// `target` exactly.
///
/// Received words with a unique nearest codeword are fixed. A tied word only
/// influences the table through its error pattern, so tied words with the same
/// set of candidate contributions are interchangeable and the search runs over
/// how many words of each class take each candidate.
pub fn decoder_match_search(
    code: &Arc<LinearCode>,
    metric: &Metric,
    target: &GTable,
    budget: SearchBudget,
) -> Result<MatchReport> {
    let start = Instant::now();
    if **target.code() != **code {
        return Err(Error::CodeMismatch);
    }
    let violations = sum_invariant_violations(code, target.entries());
    if !violations.is_empty() {
        return Ok(MatchReport {
            outcome: MatchOutcome::InvariantViolation(violations),
            tied_words: 0,
            groups: 0,
            nodes: 0,
            elapsed: start.elapsed(),
        });
    }
    let space = *code.space();
    check_table_size(&space)?;
    let n = code.n();
    let m = code.len();
    let stride = n + 1;
    let cells = m * stride;
    let mut residual = vec![0i64; cells];
    for (tau, entry) in target.entries().iter().enumerate() {
        if entry.degree().is_some_and(|d| d > n) || entry.coeffs().iter().any(|&c| c < 0) {
            return Ok(report(MatchOutcome::Exhausted, 0, 0, 0, start));
        }
        for (d, &c) in entry.coeffs().iter().enumerate() {
            residual[tau * stride + d] = c;
        }
    }

    let contribution = |y: usize, c: usize| -> Contribution {
        let e = space.sub(y, code.position(c));
        code.positions()
            .iter()
            .map(|&t| space.weight(space.add(e, t)) as u8)
            .collect()
    };

    let mut table = vec![0u32; space.size()];
    // per tied word: its options (sorted by contribution) with the label realising each
    let mut tied: BTreeMap<Vec<Contribution>, Vec<(usize, Vec<usize>)>> = BTreeMap::new();
    let mut tied_words = 0;
    for (y, slot) in table.iter_mut().enumerate() {
        let (_, set) = argmin_at(code, metric, y);
        let mut options: BTreeMap<Contribution, usize> = BTreeMap::new();
        for &c in &set {
            options.entry(contribution(y, c)).or_insert(c);
        }
        if options.len() == 1 {
            let (contrib, &c) = options.iter().next().expect("nonempty");
            *slot = c as u32;
            for (tau, &d) in contrib.iter().enumerate() {
                residual[tau * stride + d as usize] -= 1;
            }
        } else {
            tied_words += 1;
            let (keys, labels): (Vec<Contribution>, Vec<usize>) = options.into_iter().unzip();
            tied.entry(keys).or_default().push((y, labels));
        }
    }
    if residual.iter().any(|&r| r < 0) {
        return Ok(report(MatchOutcome::Exhausted, tied_words, tied.len(), 0, start));
    }

    let mut classes: Vec<TiedClass> = tied.into_iter().collect();
    classes.sort_by(|a, b| {
        b.0.len()
            .cmp(&a.0.len())
            .then(b.1.len().cmp(&a.1.len()))
            .then(a.0.cmp(&b.0))
    });
    let groups: Vec<Group> = classes
        .iter()
        .map(|(options, words)| Group {
            words: words.iter().map(|(y, _)| *y).collect(),
            options: options.clone(),
        })
        .collect();

    let mut suffix_min = vec![vec![0i64; cells]; groups.len() + 1];
    let mut suffix_max = vec![vec![0i64; cells]; groups.len() + 1];
    for g in (0..groups.len()).rev() {
        let size = groups[g].words.len() as i64;
        let mut hits = vec![0usize; cells];
        for option in &groups[g].options {
            for (tau, &d) in option.iter().enumerate() {
                hits[tau * stride + d as usize] += 1;
            }
        }
        let r = groups[g].options.len();
        for c in 0..cells {
            let (lo, hi) = match hits[c] {
                0 => (0, 0),
                h if h == r => (size, size),
                _ => (0, size),
            };
            suffix_min[g][c] = suffix_min[g + 1][c] + lo;
            suffix_max[g][c] = suffix_max[g + 1][c] + hi;
        }
    }

    let mut searcher = Searcher {
        groups: &groups,
        cells,
        stride,
        suffix_min,
        suffix_max,
        residual,
        counts: groups.iter().map(|g| vec![0; g.options.len()]).collect(),
        nodes: 0,
        budget,
        start,
        out_of_budget: false,
    };
    let found = searcher.search_group(0);
    let nodes = searcher.nodes;
    if !found {
        let outcome = if searcher.out_of_budget {
            MatchOutcome::BudgetExhausted
        } else {
            MatchOutcome::Exhausted
        };
        return Ok(report(outcome, tied_words, groups.len(), nodes, start));
    }
    for (g, (_, words)) in classes.iter().enumerate() {
        let mut assigned = words.iter();
        for (j, &k) in searcher.counts[g].iter().enumerate() {
            for (y, labels) in assigned.by_ref().take(k) {
                table[*y] = labels[j] as u32;
            }
        }
    }
    let decoder = Decoder::from_table(
        Arc::clone(code),
        table,
        format!("nn {} matched to {}", metric.name(), target.label()),
    )?;
    if g_table(&decoder)?.entries() != target.entries() {
        return Err(Error::HypothesisViolated(
            "matched decoder does not reproduce the target table".into(),
        ));
    }
    Ok(report(MatchOutcome::Found(decoder), tied_words, groups.len(), nodes, start))
}

fn report(outcome: MatchOutcome, tied_words: usize, groups: usize, nodes: u64, start: Instant) -> MatchReport {
    MatchReport {
        outcome,
        tied_words,
        groups,
        nodes,
        elapsed: start.elapsed(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankedPoset {
    /// Position in the input list.
    pub index: usize,
    pub relations: usize,
    /// Unscaled expected loss `Σ_τ μ(τ) G(τ)` at `s₀`.
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct PosetRanking {
    pub ranking: Vec<RankedPoset>,
    pub best: Decoder,
    pub best_poset: Poset,
}

/// Ranks the canonical nearest-neighbour decoders of the given posets by
/// expected loss at `s0`. Values within a relative 1e-12 count as equal and
/// are ordered by number of strict relations, then input position.
pub fn poset_bayes_search(
    code: &Arc<LinearCode>,
    posets: &[Poset],
    mu: &ValueFunction,
    s0: f64,
) -> Result<PosetRanking> {
    if posets.is_empty() {
        return Err(Error::InvalidArgument("no posets to rank".into()));
    }
    if !(s0 > 0.0 && s0 < 1.0) {
        return Err(Error::InvalidArgument(format!("s0 = {s0} outside (0, 1)")));
    }
    let mut decoders = Vec::with_capacity(posets.len());
    let mut ranking = Vec::with_capacity(posets.len());
    for (index, p) in posets.iter().enumerate() {
        let d = nn_decoder(code, &Metric::Poset(p.clone()), &TieBreak::Canonical)?;
        let value = expected_loss_poly(&g_table(&d)?, mu)?.eval(s0);
        let relations = (1..=p.len()).map(|i| p.down_set(i).len() - 1).sum();
        ranking.push(RankedPoset {
            index,
            relations,
            value,
        });
        decoders.push(d);
    }
    ranking.sort_by(|a, b| {
        let tol = 1e-12 * a.value.abs().max(b.value.abs());
        if (a.value - b.value).abs() <= tol {
            a.relations.cmp(&b.relations).then(a.index.cmp(&b.index))
        } else {
            a.value.total_cmp(&b.value)
        }
    });
    let best = ranking[0].index;
    Ok(PosetRanking {
        ranking,
        best: decoders.swap_remove(best),
        best_poset: posets[best].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loss::poly::LossPolynomial;
    use crate::words::{Alphabet, Word};

    fn code(rows: &[&str]) -> Arc<LinearCode> {
        let b = Alphabet::binary();
        Arc::new(LinearCode::from_generator(b, rows.iter().map(|r| Word::parse(b, r).unwrap()).collect()).unwrap())
    }

    #[test]
    fn recovers_tables_of_known_decoders() {
        let c = code(&["11100", "00111"]);
        let chain = Metric::Poset(Poset::chain(5).unwrap());
        for (metric, tb) in [
            (Metric::Hamming, TieBreak::Lex),
            (Metric::Hamming, TieBreak::Canonical),
            (chain.clone(), TieBreak::Lex),
        ] {
            let d = nn_decoder(&c, &metric, &tb).unwrap();
            let target = g_table(&d).unwrap();
            let r = decoder_match_search(&c, &metric, &target, SearchBudget::default()).unwrap();
            let found = r.outcome.decoder().expect("found");
            assert_eq!(g_table(found).unwrap().entries(), target.entries());
        }
    }

    #[test]
    fn rejects_tables_breaking_the_sum_invariant() {
        let c = code(&["111"]);
        let bad = GTable::from_entries(
            Arc::clone(&c),
            vec![LossPolynomial::new(vec![2, 6]), LossPolynomial::new(vec![0, 0, 6, 3])],
            "bad",
        )
        .unwrap();
        let r = decoder_match_search(&c, &Metric::Hamming, &bad, SearchBudget::default()).unwrap();
        match r.outcome {
            MatchOutcome::InvariantViolation(v) => {
                assert_eq!(v, [InvariantViolation { degree: 3, expected: 2, actual: 3 }]);
            }
            other => panic!("unexpected {}", other.kind()),
        }
        // sums correctly but is not reachable by any Hamming NN decoder
        let swapped = GTable::from_entries(
            Arc::clone(&c),
            vec![LossPolynomial::new(vec![0, 0, 6, 2]), LossPolynomial::new(vec![2, 6])],
            "swapped",
        )
        .unwrap();
        let r = decoder_match_search(&c, &Metric::Hamming, &swapped, SearchBudget::default()).unwrap();
        assert_eq!(r.outcome.kind(), "exhausted");
    }

    #[test]
    fn zero_one_values_rank_the_antichain_first() {
        let c = code(&["11100", "00111"]);
        let mu = ValueFunction::zero_one(&c);
        let posets = [Poset::chain(5).unwrap(), Poset::antichain(5).unwrap(), Poset::nrt(1, 5).unwrap()];
        let r = poset_bayes_search(&c, &posets, &mu, 0.4).unwrap();
        assert_eq!(r.ranking[0].index, 1);
        assert!(r.best_poset.is_antichain());
        let single = poset_bayes_search(&c, &posets[..1], &mu, 0.4).unwrap();
        assert_eq!(single.ranking.len(), 1);
        assert!(poset_bayes_search(&c, &[], &mu, 0.4).is_err());
    }
}

//! Random instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use posetloss::channel::{monte_carlo_loss, ChannelSpec, TrialStats};
use posetloss::codes::gray_level_values;
use posetloss::decoders::{argmin_set, decomposable_pair, nn_decoder, tie_swap_pair_with, verify_nn};
use posetloss::loss::{
    bayes_decoder, error_probability, expected_loss_exact, expected_loss_poly, expected_total, g_table, p_of_s,
    opposite_sign_witness, s_of_p, sign_profile, t_table, z_of_p, Sign, TTable, WitnessMode,
};
use posetloss::fixtures;
use posetloss::{Alphabet, Coords, Decoder, Error, LinearCode, LossPolynomial, Metric, Poset, TieBreak, ValueFunction, Word};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SUITE_SEED: u64 = 0x1D_EC0D;
pub const SUITE_SIZE: usize = 100;
pub const S_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

pub fn binary() -> Alphabet {
    Alphabet::binary()
}

pub fn word(text: &str) -> Word {
    Word::parse(binary(), text).unwrap()
}

pub fn code_from_rows(rows: &[&str]) -> Arc<LinearCode> {
    Arc::new(LinearCode::from_generator(binary(), rows.iter().map(|r| word(r)).collect()).unwrap())
}

/// A random full-rank binary code of length `n` and dimension `k`.
pub fn random_code(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Arc<LinearCode> {
    loop {
        let rows: Vec<Word> = (0..k)
            .map(|_| {
                let symbols = (0..n).map(|_| rng.random_range(0..2u8)).collect();
                Word::new(binary(), symbols).unwrap()
            })
            .collect();
        match LinearCode::from_generator(binary(), rows) {
            Ok(code) => return Arc::new(code),
            Err(Error::DegenerateGenerator { .. }) => continue,
            Err(e) => panic!("unexpected generator error: {e}"),
        }
    }
}

/// Random poset on `n` elements: a random DAG over a shuffled order, closed
/// transitively.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let density: f64 = rng.random_range(0.0..0.6);
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(density) {
                relations.push((order[a], order[b]));
            }
        }
    }
    Poset::from_relations(n, &relations).unwrap()
}

/// Canonical, lexicographic, or explicit random picks among nearest codewords.
pub fn random_tiebreak(rng: &mut ChaCha8Rng, code: &LinearCode, metric: &Metric) -> TieBreak {
    match rng.random_range(0..3) {
        0 => TieBreak::Canonical,
        1 => TieBreak::Lex,
        _ => {
            let mut picks = BTreeMap::new();
            for y in code.space().words() {
                let set = argmin_set(code, metric, &y).unwrap();
                if set.len() > 1 {
                    let c = set[rng.random_range(0..set.len())];
                    picks.insert(y, c);
                }
            }
            TieBreak::Explicit(picks)
        }
    }
}

pub struct Instance {
    pub id: usize,
    pub code: Arc<LinearCode>,
    pub poset: Poset,
    pub hamming: Decoder,
    pub poset_nn: Decoder,
    /// Values in [0, 1] with zero on the zero codeword.
    pub canonical_values: Vec<f64>,
}

impl Instance {
    pub fn describe(&self) -> String {
        format!(
            "instance {} (n={}, k={}, poset covers {:?})",
            self.id,
            self.code.n(),
            self.code.k(),
            self.poset.covers()
        )
    }
}

/// The randomized suite: binary codes with n ≤ 10 and k ≤ 5.
pub fn suite(seed: u64, count: usize) -> Vec<Instance> {
    (0..count)
        .map(|id| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(id as u64);
            let n = rng.random_range(2..=10);
            let k = rng.random_range(1..=n.min(5));
            let code = random_code(&mut rng, n, k);
            let poset = random_poset(&mut rng, n);
            let metric = Metric::Poset(poset.clone());
            let ht = random_tiebreak(&mut rng, &code, &Metric::Hamming);
            let pt = random_tiebreak(&mut rng, &code, &metric);
            let hamming = nn_decoder(&code, &Metric::Hamming, &ht).unwrap();
            let poset_nn = nn_decoder(&code, &metric, &pt).unwrap();
            let zero = code.zero_label();
            let canonical_values = (0..code.len())
                .map(|c| if c == zero { 0.0 } else { rng.random_range(0.0..=1.0) })
                .collect();
            Instance {
                id,
                code,
                poset,
                hamming,
                poset_nn,
                canonical_values,
            }
        })
        .collect()
}

/// `G(τ) = Σ_y s^{d_H(y, a(y) - τ)}` straight from the definition, using only
/// word arithmetic.
pub fn naive_g_table(decoder: &Decoder) -> Vec<LossPolynomial> {
    let code = decoder.code();
    let n = code.n();
    let mut coeffs = vec![vec![0i64; n + 1]; code.len()];
    for y in code.space().words() {
        let a = code.codeword(decoder.decode(&y).unwrap());
        for (tau, row) in coeffs.iter_mut().enumerate() {
            let target = a.subtract(code.codeword(tau)).unwrap();
            row[y.hamming_distance(&target).unwrap()] += 1;
        }
    }
    coeffs.into_iter().map(LossPolynomial::new).collect()
}

/// `Σ_c Σ_y μ(a(y) - c) P(y|c) / M` by direct enumeration over words.
pub fn naive_expected_loss(decoder: &Decoder, values: &[f64], p: f64) -> f64 {
    let code = decoder.code();
    let n = code.n() as i32;
    let q = f64::from(code.q());
    let mut total = 0.0;
    for y in code.space().words() {
        let a = decoder.decode(&y).unwrap();
        for c in 0..code.len() {
            let d = y.hamming_distance(code.codeword(c)).unwrap() as i32;
            let likelihood = (1.0 - p).powi(n - d) * (p / (q - 1.0)).powi(d);
            let diff = code.label_of(&code.codeword(a).subtract(code.codeword(c)).unwrap()).unwrap();
            total += values[diff] * likelihood;
        }
    }
    total / code.len() as f64
}

/// Relative closeness for positive quantities.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

/// Termwise dominance of the Hamming decoder's `G(0)` over the poset
/// decoder's, and the resulting 0-1 loss ordering, on the `s` grid.
pub fn dominance_violations(inst: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    let zero = inst.code.zero_label();
    let gh = g_table(&inst.hamming).unwrap();
    let gp = g_table(&inst.poset_nn).unwrap();
    let mu = ValueFunction::zero_one(&inst.code);
    for s in S_GRID {
        let (h, a) = (gh.entry(zero).eval(s), gp.entry(zero).eval(s));
        if h < a * (1.0 - 1e-12) {
            out.push(format!("{}: G_H(0)({s}) = {h} < G_P(0)({s}) = {a}", inst.describe()));
        }
        let p = p_of_s(s, 2);
        let eh = expected_loss_exact(&inst.hamming, &mu, p).unwrap();
        let ep = expected_loss_exact(&inst.poset_nn, &mu, p).unwrap();
        if eh > ep + 1e-12 {
            out.push(format!("{}: 0-1 loss at s={s}: hamming {eh} > poset {ep}", inst.describe()));
        }
    }
    out
}

/// Size of the ideal generated by `support`, counted element by element.
fn ideal_size(poset: &Poset, support: &[usize]) -> usize {
    (1..=poset.len())
        .filter(|&i| support.iter().any(|&j| poset.leq(i, j)))
        .count()
}

pub fn metric_violations(inst: &Instance, samples: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0xD157);
    rng.set_stream(inst.id as u64);
    let metric = Metric::Poset(inst.poset.clone());
    let space = inst.code.space();
    let pick = |rng: &mut ChaCha8Rng| space.word(rng.random_range(0..space.size()));
    for _ in 0..samples {
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let dxy = metric.distance(&x, &y).unwrap();
        let support: Vec<usize> = (1..=x.len()).filter(|&i| x.get(i) != y.get(i)).collect();
        let mut bad = Vec::new();
        if dxy != ideal_size(&inst.poset, &support) {
            bad.push("ideal size");
        }
        if dxy != metric.distance(&y, &x).unwrap() {
            bad.push("symmetry");
        }
        if (dxy == 0) != (x == y) || metric.distance(&x, &x).unwrap() != 0 {
            bad.push("identity");
        }
        if dxy > metric.distance(&x, &z).unwrap() + metric.distance(&z, &y).unwrap() {
            bad.push("triangle");
        }
        if dxy < x.hamming_distance(&y).unwrap() {
            bad.push("below hamming");
        }
        if !bad.is_empty() {
            out.push(format!("{}: {x} {y} {z}: {}", inst.describe(), bad.join(", ")));
        }
    }
    out
}

/// Sum invariant, agreement with the brute-force G oracle, and the constant
/// term of `G(0)`.
pub fn table_violations(inst: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    let expected = expected_total(&inst.code);
    for d in [&inst.hamming, &inst.poset_nn] {
        let g = g_table(d).unwrap();
        if g.total() != expected || !g.invariant_violations().is_empty() {
            out.push(format!("{}: {} sums to {}", inst.describe(), d.label(), g.total()));
        }
        if g.entries() != naive_g_table(d).as_slice() {
            out.push(format!("{}: {} differs from the brute-force table", inst.describe(), d.label()));
        }
        if g.entry(inst.code.zero_label()).coeff(0) != inst.code.len() as i64 {
            out.push(format!("{}: {} constant term of G(0)", inst.describe(), d.label()));
        }
    }
    out
}

/// Decision regions partition the words, contain their own codeword, and
/// consist of nearest words.
pub fn partition_violations(inst: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    let size = inst.code.space().size();
    for (d, metric) in [
        (&inst.hamming, Metric::Hamming),
        (&inst.poset_nn, Metric::Poset(inst.poset.clone())),
    ] {
        let regions = d.regions();
        let mut seen = vec![0u8; size];
        for r in &regions {
            for &pos in r {
                seen[pos] += 1;
            }
        }
        if seen.iter().any(|&k| k != 1) {
            out.push(format!("{}: {} regions do not partition", inst.describe(), d.label()));
        }
        if (0..inst.code.len()).any(|c| !regions[c].contains(&inst.code.position(c))) {
            out.push(format!("{}: {} misses its own codeword", inst.describe(), d.label()));
        }
        if let Some(v) = verify_nn(d, &metric).unwrap() {
            out.push(format!("{}: {} not nearest at {}", inst.describe(), d.label(), v.word));
        }
    }
    out
}

pub const P_GRID: [f64; 3] = [0.05, 0.2, 0.4];

/// The Bayes decoder beats every other decoder we can name for the same μ.
pub fn bayes_violations(inst: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    let code = &inst.code;
    let mu = ValueFunction::new(code, inst.canonical_values.clone()).unwrap();
    let mut rivals = vec![inst.hamming.clone(), inst.poset_nn.clone()];
    for c in [0, code.len() - 1] {
        rivals.push(Decoder::constant(code, c).unwrap());
    }
    for p in P_GRID {
        let bayes = bayes_decoder(code, &mu, p).unwrap();
        let eb = expected_loss_exact(&bayes, &mu, p).unwrap();
        for other in rivals.iter().chain([&bayes_decoder(code, &ValueFunction::zero_one(code), p).unwrap()]) {
            let e = expected_loss_exact(other, &mu, p).unwrap();
            if eb > e + 1e-12 {
                out.push(format!("{}: p={p} bayes {eb} > {} {e}", inst.describe(), other.label()));
            }
        }
    }
    out
}

/// For values in [0, 1] vanishing at zero, the expected loss is at most the
/// decoding error probability; also checks the z·poly(s) scaling against
/// direct enumeration.
pub fn bound_violations(inst: &Instance) -> Vec<String> {
    let mut out = Vec::new();
    let code = &inst.code;
    let mu = ValueFunction::new(code, inst.canonical_values.clone()).unwrap();
    for d in [&inst.hamming, &inst.poset_nn] {
        let g = g_table(d).unwrap();
        let poly = expected_loss_poly(&g, &mu).unwrap();
        for p in P_GRID {
            let e = expected_loss_exact(d, &mu, p).unwrap();
            let pe = error_probability(d, p).unwrap();
            if e > pe + 1e-12 {
                out.push(format!("{}: p={p} {} loss {e} > error probability {pe}", inst.describe(), d.label()));
            }
            let scaled = z_of_p(p, code.n(), code.len()) * poly.eval(s_of_p(p, 2));
            let naive = naive_expected_loss(d, &inst.canonical_values, p);
            if !close(e, scaled, 1e-12) || !close(e, naive, 1e-12) {
                out.push(format!(
                    "{}: p={p} {} exact {e}, scaled {scaled}, enumerated {naive}",
                    inst.describe(),
                    d.label()
                ));
            }
        }
    }
    out
}

/// Problems with a T table and its closed form: mismatch, a nonzero total,
/// or a missing or invalid everywhere-witness.
fn closed_form_problems(t: &TTable, closed: Vec<LossPolynomial>) -> Vec<String> {
    let mut out = Vec::new();
    if t.entries() != closed.as_slice() {
        out.push(format!("closed form {:?} != table {:?}", closed, t.rendered()));
    }
    if !t.total().is_zero() {
        out.push(format!("T sums to {}", t.total()));
    }
    match opposite_sign_witness(t, WitnessMode::Everywhere) {
        None => out.push("no everywhere witness".into()),
        Some(w) => {
            let neg = sign_profile(t.entry(w.negative)).uniform_sign();
            let pos = sign_profile(t.entry(w.positive)).uniform_sign();
            if neg != Some(Sign::Negative) || pos != Some(Sign::Positive) {
                out.push(format!("witness {w:?} has signs {neg:?}, {pos:?}"));
            }
        }
    }
    out
}

/// Tie swap on the constant-weight code {000, 011, 110, 101}: sending 111 to
/// 110 rather than 011 changes only those two entries, by ±(s³ − s).
pub fn tie_swap_problems() -> Vec<String> {
    let code = code_from_rows(&["011", "110"]);
    let c1 = code.label_of(&word("110")).unwrap();
    let c2 = code.label_of(&word("011")).unwrap();
    let pair = tie_swap_pair_with(&code, c1, c2).unwrap();
    let t = t_table(&g_table(&pair.reference).unwrap(), &g_table(&pair.swapped).unwrap()).unwrap();
    let mut out = closed_form_problems(&t, pair.closed_form());
    let (n, m) = (pair.n, pair.m);
    if (n, m) != (3, 1) {
        out.push(format!("exponents n={n}, m={m}"));
    }
    let expected: Vec<LossPolynomial> = (0..code.len())
        .map(|c| {
            if c == c1 {
                &LossPolynomial::monomial(1, n) - &LossPolynomial::monomial(1, m)
            } else if c == c2 {
                &LossPolynomial::monomial(1, m) - &LossPolynomial::monomial(1, n)
            } else {
                LossPolynomial::zero()
            }
        })
        .collect();
    if t.entries() != expected.as_slice() {
        out.push(format!("table {:?} is not ±(s^n − s^m)", t.rendered()));
    }
    out
}

/// A decomposable-poset instance: the generic T table equals
/// `s^{d_H(ỹ,c)} − s^{d_H(ỹ,c̃−c)}` for every codeword.
pub fn decomposable_problems(
    poset: &Poset,
    reference: Option<&Poset>,
    i: &[usize],
    j: &[usize],
    c_tilde: &str,
) -> Vec<String> {
    let n = poset.len();
    let i_set = Coords::from_indices(n, i.iter().copied()).unwrap();
    let j_set = Coords::from_indices(n, j.iter().copied()).unwrap();
    let x_tilde = Word::zero(binary(), n);
    let pair = match decomposable_pair(poset, reference, i_set, j_set, &x_tilde, &word(c_tilde)) {
        Ok(p) => p,
        Err(e) => return vec![format!("construction failed: {e}")],
    };
    let code = &pair.code;
    let t = t_table(&g_table(&pair.reference).unwrap(), &g_table(&pair.poset).unwrap()).unwrap();
    // Independent form of the closed expression, from word arithmetic.
    let y = &pair.y_tilde;
    let c_t = word(c_tilde);
    let direct: Vec<LossPolynomial> = (0..code.len())
        .map(|c| {
            let cw = code.codeword(c);
            let a = y.hamming_distance(cw).unwrap();
            let b = y.hamming_distance(&c_t.subtract(cw).unwrap()).unwrap();
            &LossPolynomial::monomial(1, a) - &LossPolynomial::monomial(1, b)
        })
        .collect();
    let mut out = closed_form_problems(&t, pair.closed_form());
    if t.entries() != direct.as_slice() {
        out.push(format!("table {:?} differs from s^d(y,c) - s^d(y,c~-c)", t.rendered()));
    }
    let pow = |e: usize| LossPolynomial::monomial(1, e);
    if *t.entry(pair.c1) != &pow(pair.n1) - &pow(pair.m1) || *t.entry(pair.c2) != &pow(pair.n2) - &pow(pair.m2) {
        out.push(format!(
            "exponents ({}, {}, {}, {}) disagree with T(c1) = {}, T(c2) = {}",
            pair.n1,
            pair.m1,
            pair.n2,
            pair.m2,
            t.entry(pair.c1),
            t.entry(pair.c2)
        ));
    }
    out
}

/// Every closed-form construction case, by name.
pub fn construction_cases() -> Vec<(&'static str, Vec<String>)> {
    let chain5 = Poset::chain(5).unwrap();
    let nrt17 = Poset::nrt(1, 7).unwrap();
    let nrt24 = Poset::nrt(2, 4).unwrap();
    // On chain(5) the filter {3,4,5} is also a filter of this reference.
    let reference = Poset::from_relations(5, &[(1, 2), (2, 3)]).unwrap();
    vec![
        ("tie swap on the [3;2] constant-weight code", tie_swap_problems()),
        ("chain(5), I={3,4,5}, J={4}", decomposable_problems(&chain5, None, &[3, 4, 5], &[4], "00100")),
        ("NRT(1,7), I={4..7}, J={5}", decomposable_problems(&nrt17, None, &[4, 5, 6, 7], &[5], "0001000")),
        ("NRT(2,4), I={2,3,4}, J={3}", decomposable_problems(&nrt24, None, &[2, 3, 4], &[3], "01000000")),
        (
            "chain(5) against a non-antichain reference",
            decomposable_problems(&chain5, Some(&reference), &[3, 4, 5], &[4], "00100"),
        ),
    ]
}

/// Ten decoder/value/channel configurations for sampling checks, each with
/// its exact expected loss.
pub fn monte_carlo_cases(trials: u64) -> Vec<(String, f64, TrialStats)> {
    let gray = fixtures::gray_code();
    let gray_mu = ValueFunction::new(&gray, gray_level_values()).unwrap();
    let five = fixtures::five_bit_code();
    let rep = fixtures::repetition_code();
    let ternary = Arc::new(
        LinearCode::from_generator(
            Alphabet::new(3).unwrap(),
            ["1120", "0112"].iter().map(|r| Word::parse(Alphabet::new(3).unwrap(), r).unwrap()).collect(),
        )
        .unwrap(),
    );
    let chain = |n| Metric::Poset(Poset::chain(n).unwrap());
    let nn = |code: &Arc<LinearCode>, m: &Metric| nn_decoder(code, m, &TieBreak::Canonical).unwrap();
    let random = suite(SUITE_SEED, 2);
    let values = |inst: &Instance| ValueFunction::new(&inst.code, inst.canonical_values.clone()).unwrap();
    let five_mu = ValueFunction::new(&five, vec![0.0, 0.25, 1.0, 0.5]).unwrap();
    let configs: Vec<(&str, Decoder, ValueFunction, f64)> = vec![
        ("[7;4] hamming, gray values, p=0.1", nn(&gray, &Metric::Hamming), gray_mu.clone(), 0.1),
        ("[7;4] hamming, gray values, p=0.3", nn(&gray, &Metric::Hamming), gray_mu.clone(), 0.3),
        ("[7;4] chain(7), gray values, p=0.35", nn(&gray, &chain(7)), gray_mu.clone(), 0.35),
        ("[7;4] bayes, gray values, p=0.3", bayes_decoder(&gray, &gray_mu, 0.3).unwrap(), gray_mu, 0.3),
        ("five-bit hamming, 0-1, p=0.2", nn(&five, &Metric::Hamming), ValueFunction::zero_one(&five), 0.2),
        ("five-bit chain(5), weighted, p=0.25", nn(&five, &chain(5)), five_mu, 0.25),
        ("repetition chain(3), 1-0, p=0.4", nn(&rep, &chain(3)), ValueFunction::one_zero(&rep), 0.4),
        ("random instance 0, poset decoder, p=0.15", random[0].poset_nn.clone(), values(&random[0]), 0.15),
        ("random instance 1, hamming decoder, p=0.05", random[1].hamming.clone(), values(&random[1]), 0.05),
        ("ternary [4;2] hamming, 0-1, p=0.3", nn(&ternary, &Metric::Hamming), ValueFunction::zero_one(&ternary), 0.3),
    ];
    configs
        .into_iter()
        .enumerate()
        .map(|(i, (name, decoder, mu, p))| {
            let channel = ChannelSpec::new(decoder.code().alphabet(), p, 0xC0FFEE + i as u64).unwrap();
            let exact = expected_loss_exact(&decoder, &mu, p).unwrap();
            let stats = monte_carlo_loss(&decoder, &mu, &channel, trials).unwrap();
            (name.to_string(), exact, stats)
        })
        .collect()
}

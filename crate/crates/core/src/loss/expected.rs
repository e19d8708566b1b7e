//! Expected loss of a decoder over a discrete symmetric memoryless channel,
//! and the Bayes decoder minimising it.

use std::sync::Arc;

use rayon::prelude::*;

use super::gtable::GTable;
use super::poly::RealPolynomial;
use super::value::ValueFunction;
use crate::codes::LinearCode;
use crate::decoders::Decoder;
use crate::error::{Error, Result};
use crate::words::Word;
use crate::check_table_size;

/// Received words per parallel work unit; partial sums are combined in chunk
/// order so results do not depend on the thread count.
const CHUNK: usize = 1 << 12;

/// `s(p) = p / ((1 - p)(q - 1))`.
pub fn s_of_p(p: f64, q: u32) -> f64 {
    p / ((1.0 - p) * f64::from(q - 1))
}

/// Inverse of [`s_of_p`].
pub fn p_of_s(s: f64, q: u32) -> f64 {
    let k = s * f64::from(q - 1);
    k / (1.0 + k)
}

/// `z(p) = (1 - p)^n / M`.
pub fn z_of_p(p: f64, n: usize, m: usize) -> f64 {
    (1.0 - p).powi(n as i32) / m as f64
}

fn check_p(p: f64, q: u32, open: bool) -> Result<()> {
    let max = f64::from(q - 1) / f64::from(q);
    let ok = if open {
        p > 0.0 && p < max
    } else {
        (0.0..=max).contains(&p)
    };
    if !ok || p.is_nan() {
        let range = if open {
            format!("(0, {max})")
        } else {
            format!("[0, {max}]")
        };
        return Err(Error::ProbabilityOutOfRange { p, range });
    }
    Ok(())
}

/// `Σ_τ μ(τ) G(τ)`, the loss polynomial without the `z(p)` factor.
pub fn expected_loss_poly(g: &GTable, mu: &ValueFunction) -> Result<RealPolynomial> {
    mu.check(g.code())?;
    let mut out = RealPolynomial::zero();
    for (tau, entry) in g.entries().iter().enumerate() {
        let v = mu.get(tau);
        if v != 0.0 {
            out.add_scaled(entry, v);
        }
    }
    Ok(out)
}

/// `z(p) · Σ_τ μ(τ) G(τ)(s(p))`.
pub fn expected_loss_from_table(g: &GTable, mu: &ValueFunction, p: f64) -> Result<f64> {
    let code = g.code();
    check_p(p, code.q(), false)?;
    let poly = expected_loss_poly(g, mu)?;
    if p == 0.0 {
        return Ok(poly.coeff(0) * z_of_p(0.0, code.n(), code.len()));
    }
    Ok(z_of_p(p, code.n(), code.len()) * poly.eval(s_of_p(p, code.q())))
}

/// `P(y | c)` indexed by Hamming distance.
fn likelihoods(p: f64, q: u32, n: usize) -> Vec<f64> {
    let off = p / f64::from(q - 1);
    (0..=n)
        .map(|d| (1.0 - p).powi((n - d) as i32) * off.powi(d as i32))
        .collect()
}

/// `Σ_c Σ_y μ(a(y) - c) P(y|c) / M`, summed directly over codewords and
/// received words.
pub fn expected_loss_exact(decoder: &Decoder, mu: &ValueFunction, p: f64) -> Result<f64> {
    let code = decoder.code();
    mu.check(code)?;
    check_p(p, code.q(), false)?;
    let space = *code.space();
    let lik = likelihoods(p, code.q(), code.n());
    let partials: Vec<f64> = (0..space.size())
        .collect::<Vec<_>>()
        .par_chunks(CHUNK)
        .map(|ys| {
            let mut acc = 0.0;
            for &y in ys {
                let a = decoder.decode_at(y);
                for c in 0..code.len() {
                    let v = mu.get(code.diff(a, c));
                    if v != 0.0 {
                        acc += v * lik[space.distance(y, code.position(c))];
                    }
                }
            }
            acc
        })
        .collect();
    Ok(partials.iter().sum::<f64>() / code.len() as f64)
}

/// Decoding error probability: the expected loss under the 0-1 value function.
pub fn error_probability(decoder: &Decoder, p: f64) -> Result<f64> {
    expected_loss_exact(decoder, &ValueFunction::zero_one(decoder.code()), p)
}

/// `L_y(a, μ) = Σ_c μ(a(y) - c) P(c | y)` under a uniform prior.
pub fn conditional_loss(decoder: &Decoder, mu: &ValueFunction, y: &Word, p: f64) -> Result<f64> {
    let code = decoder.code();
    mu.check(code)?;
    check_p(p, code.q(), false)?;
    let space = code.space();
    let pos = space.index_of(y)?;
    let lik = likelihoods(p, code.q(), code.n());
    let a = decoder.decode_at(pos);
    let (mut num, mut den) = (0.0, 0.0);
    for c in 0..code.len() {
        let w = lik[space.distance(pos, code.position(c))];
        num += mu.get(code.diff(a, c)) * w;
        den += w;
    }
    if den == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "{y} has probability zero at p = {p}"
        )));
    }
    Ok(num / den)
}

/// Per received word, the codeword minimising the posterior expected loss;
/// ties within a relative 1e-12 go to the smallest label.
pub fn bayes_decoder(code: &Arc<LinearCode>, mu: &ValueFunction, p: f64) -> Result<Decoder> {
    mu.check(code)?;
    check_p(p, code.q(), true)?;
    let space = *code.space();
    check_table_size(&space)?;
    let s = s_of_p(p, code.q());
    let pow: Vec<f64> = (0..=code.n()).map(|d| s.powi(d as i32)).collect();
    let m = code.len();
    let mut table = vec![0u32; space.size()];
    table.par_chunks_mut(CHUNK).enumerate().for_each(|(chunk, slots)| {
        let mut weight = vec![0.0; m];
        let mut loss = vec![0.0; m];
        for (k, slot) in slots.iter_mut().enumerate() {
            let y = chunk * CHUNK + k;
            for (c, w) in weight.iter_mut().enumerate() {
                *w = pow[space.distance(y, code.position(c))];
            }
            for (cand, l) in loss.iter_mut().enumerate() {
                *l = (0..m).map(|c| mu.get(code.diff(cand, c)) * weight[c]).sum();
            }
            let best = loss.iter().copied().fold(f64::INFINITY, f64::min);
            let tol = best.abs() * 1e-12;
            *slot = loss.iter().position(|&l| l <= best + tol).unwrap_or(0) as u32;
        }
    });
    Decoder::from_table(Arc::clone(code), table, format!("bayes p={p}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::gray_level_code;
    use crate::decoders::{nn_decoder, verify_nn, Metric, TieBreak};
    use crate::loss::gtable::g_table;
    use crate::words::Alphabet;

    fn gray() -> Arc<LinearCode> {
        Arc::new(gray_level_code().0)
    }

    fn rep() -> Arc<LinearCode> {
        let b = Alphabet::binary();
        Arc::new(LinearCode::from_generator(b, vec![Word::parse(b, "111").unwrap()]).unwrap())
    }

    #[test]
    fn error_probability_of_perfect_code() {
        let c = gray();
        let h = nn_decoder(&c, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let pe = error_probability(&h, 0.3).unwrap();
        let closed = 1.0 - 0.7f64.powi(7) - 7.0 * 0.3 * 0.7f64.powi(6);
        assert!((pe - closed).abs() < 1e-12);
        assert!((pe - 0.67058).abs() < 1e-5);
        assert_eq!(error_probability(&h, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn one_zero_values_favour_the_constant_decoder() {
        let c = gray();
        let h = nn_decoder(&c, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let mu = ValueFunction::one_zero(&c);
        let e = expected_loss_exact(&h, &mu, 0.3).unwrap();
        let closed = 0.7f64.powi(7) / 16.0 * (16.0 + 112.0 * 3.0 / 7.0);
        assert!((e - closed).abs() < 1e-12);
        assert!((e - 0.32942).abs() < 1e-5);
        let a0 = Decoder::constant(&c, 0).unwrap();
        assert!((expected_loss_exact(&a0, &mu, 0.3).unwrap() - 0.0625).abs() < 1e-15);
        // posterior loss of decoding to c' is P(c'|y): Bayes picks a farthest codeword
        let bayes = bayes_decoder(&c, &mu, 0.3).unwrap();
        let space = c.space();
        for y in 0..space.size() {
            let far = c.positions().iter().map(|&p| space.distance(y, p)).max().unwrap();
            assert_eq!(space.distance(y, c.position(bayes.decode_at(y))), far);
        }
        assert!(expected_loss_exact(&bayes, &mu, 0.3).unwrap() < 0.0625);
    }

    #[test]
    fn polynomial_route_agrees_with_direct_sum() {
        let c = gray();
        let mu = ValueFunction::new(&c, crate::codes::gray_level_values()).unwrap();
        let chain = Metric::Poset(crate::posets::Poset::chain(7).unwrap());
        for metric in [Metric::Hamming, chain] {
            let d = nn_decoder(&c, &metric, &TieBreak::Canonical).unwrap();
            let g = g_table(&d).unwrap();
            for p in [0.0, 0.05, 0.3, 0.5] {
                let a = expected_loss_exact(&d, &mu, p).unwrap();
                let b = expected_loss_from_table(&g, &mu, p).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-300), "p={p}: {a} vs {b}");
            }
        }
        assert!(matches!(
            expected_loss_exact(&Decoder::constant(&c, 0).unwrap(), &mu, 0.7),
            Err(Error::ProbabilityOutOfRange { .. })
        ));
    }

    #[test]
    fn conditional_loss_examples() {
        let r = rep();
        let h = nn_decoder(&r, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let mu = ValueFunction::zero_one(&r);
        let zero = Word::parse(Alphabet::binary(), "000").unwrap();
        assert!((conditional_loss(&h, &mu, &zero, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert!(conditional_loss(&h, &mu, &zero, 1e-9).unwrap() < 1e-20);

        let c = gray();
        let d = nn_decoder(&c, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let mu = ValueFunction::new(&c, crate::codes::gray_level_values()).unwrap();
        let p = 0.2;
        let space = c.space();
        let lik = likelihoods(p, 2, 7);
        let mut total = 0.0;
        for y in space.words() {
            let py: f64 = c.positions().iter().map(|&cp| lik[space.distance(space.index_of(&y).unwrap(), cp)]).sum::<f64>() / 16.0;
            total += py * conditional_loss(&d, &mu, &y, p).unwrap();
        }
        let exact = expected_loss_exact(&d, &mu, p).unwrap();
        assert!((total - exact).abs() < 1e-12);
    }

    #[test]
    fn bayes_with_zero_one_values_is_nearest_neighbour() {
        let c = gray();
        let mu = ValueFunction::zero_one(&c);
        let b = bayes_decoder(&c, &mu, 0.1).unwrap();
        assert!(verify_nn(&b, &Metric::Hamming).unwrap().is_none());
        let h = nn_decoder(&c, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        assert_eq!(b.table(), h.table());
        let scaled = ValueFunction::new(&c, mu.values().iter().map(|v| v * 7.0).collect()).unwrap();
        assert_eq!(bayes_decoder(&c, &scaled, 0.1).unwrap().table(), bayes_decoder(&c, &scaled.canonicalize().unwrap(), 0.1).unwrap().table());

    }

    #[test]
    fn trivial_code_has_one_decoder() {
        let zero = Arc::new(LinearCode::zero_code(Alphabet::binary(), 4).unwrap());
        let mu = ValueFunction::new(&zero, vec![0.0]).unwrap();
        let b = bayes_decoder(&zero, &mu, 0.2).unwrap();
        assert!(b.table().iter().all(|&l| l == 0));
        assert_eq!(expected_loss_exact(&b, &mu, 0.2).unwrap(), 0.0);
    }
}

//! Discrete symmetric memoryless channel sampling, Monte-Carlo loss
//! estimation and the gray-level image round trip.
//!
//! Every trial (or pixel) draws from its own ChaCha8 stream, keyed by the
//! master seed and the trial index, so results are identical for any thread
//! count and traversal order.

use std::io::Cursor;
use std::sync::Arc;

use image::codecs::pnm::{PnmDecoder, PnmEncoder, PnmSubtype, SampleEncoding};
use image::{DynamicImage, ExtendedColorType, GrayImage, ImageEncoder};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{gray_level_code, GrayLevel, LinearCode};
use crate::decoders::Decoder;
use crate::error::{Error, Result};
use crate::loss::ValueFunction;
use crate::words::{Alphabet, Word};

/// Trials per parallel work unit.
const CHUNK: usize = 1 << 14;

/// Confusion counts are kept only for codes up to this many codewords.
pub const MAX_CONFUSION: usize = 256;

/// A q-ary symmetric channel: each symbol survives with probability `1 - p`
/// and otherwise becomes one of the other `q - 1` symbols uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChannelSpec {
    q: u32,
    p: f64,
    seed: u64,
}

impl ChannelSpec {
    pub fn new(alphabet: Alphabet, p: f64, seed: u64) -> Result<Self> {
        let q = alphabet.q();
        let max = f64::from(q - 1) / f64::from(q);
        if !(0.0..=max).contains(&p) {
            return Err(Error::ProbabilityOutOfRange {
                p,
                range: format!("[0, {max}]"),
            });
        }
        Ok(ChannelSpec { q, p, seed })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The random stream for trial or pixel `stream`.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn corrupt(&self, symbols: &mut [u8], rng: &mut ChaCha8Rng) {
        for x in symbols.iter_mut() {
            if rng.random::<f64>() < self.p {
                let shift = if self.q == 2 {
                    1
                } else {
                    1 + rng.random_range(0..self.q - 1)
                };
                *x = ((u32::from(*x) + shift) % self.q) as u8;
            }
        }
    }

    fn check(&self, code: &LinearCode) -> Result<()> {
        if code.q() != self.q {
            return Err(Error::AlphabetMismatch {
                left: code.q(),
                right: self.q,
            });
        }
        Ok(())
    }
}

/// Sends `x` through the channel using stream `stream`.
pub fn transmit(x: &Word, channel: &ChannelSpec, stream: u64) -> Result<Word> {
    if x.alphabet().q() != channel.q {
        return Err(Error::AlphabetMismatch {
            left: x.alphabet().q(),
            right: channel.q,
        });
    }
    let mut symbols = x.symbols().to_vec();
    channel.corrupt(&mut symbols, &mut channel.rng(stream));
    Word::new(x.alphabet(), symbols)
}

/// Summary of a batch of simulated transmissions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialStats {
    pub trials: u64,
    /// Mean realised loss `μ(a(y) - c)`.
    pub mean: f64,
    /// Standard error of `mean`.
    pub stderr: f64,
    /// Trials decoded to a codeword other than the one sent.
    pub errors: u64,
    /// `confusion[sent][decoded]`; empty for codes above [`MAX_CONFUSION`] codewords.
    pub confusion: Vec<Vec<u64>>,
}

impl TrialStats {
    pub fn fraction_correct(&self) -> f64 {
        1.0 - self.errors as f64 / self.trials as f64
    }

    pub fn error_rate(&self) -> f64 {
        self.errors as f64 / self.trials as f64
    }
}

#[derive(Clone, Debug)]
struct Accumulator {
    trials: u64,
    sum: f64,
    sum_sq: f64,
    errors: u64,
    confusion: Vec<u64>,
    m: usize,
}

impl Accumulator {
    fn new(m: usize) -> Self {
        let cells = if m <= MAX_CONFUSION { m * m } else { 0 };
        Accumulator {
            trials: 0,
            sum: 0.0,
            sum_sq: 0.0,
            errors: 0,
            confusion: vec![0; cells],
            m,
        }
    }

    fn push(&mut self, sent: usize, decoded: usize, loss: f64) {
        self.trials += 1;
        self.sum += loss;
        self.sum_sq += loss * loss;
        if sent != decoded {
            self.errors += 1;
        }
        if !self.confusion.is_empty() {
            self.confusion[sent * self.m + decoded] += 1;
        }
    }

    fn merge(mut self, other: &Accumulator) -> Self {
        self.trials += other.trials;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.errors += other.errors;
        for (a, b) in self.confusion.iter_mut().zip(&other.confusion) {
            *a += b;
        }
        self
    }

    fn finish(self) -> TrialStats {
        let (mean, stderr) = mean_and_stderr(self.trials, self.sum, self.sum_sq);
        let confusion = if self.confusion.is_empty() {
            Vec::new()
        } else {
            self.confusion.chunks(self.m).map(<[u64]>::to_vec).collect()
        };
        TrialStats {
            trials: self.trials,
            mean,
            stderr,
            errors: self.errors,
            confusion,
        }
    }
}

fn mean_and_stderr(n: u64, sum: f64, sum_sq: f64) -> (f64, f64) {
    let nf = n as f64;
    let mean = sum / nf;
    if n < 2 {
        return (mean, 0.0);
    }
    let var = ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0);
    (mean, (var / nf).sqrt())
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    Ok(())
}

/// Sends `sent` through the channel on `rng` and returns the received word's
/// enumeration index.
fn receive(code: &LinearCode, channel: &ChannelSpec, sent: usize, buf: &mut [u8], rng: &mut ChaCha8Rng) -> usize {
    buf.copy_from_slice(code.codeword(sent).symbols());
    channel.corrupt(buf, rng);
    let q = code.q() as usize;
    buf.iter().fold(0, |acc, &x| acc * q + x as usize)
}

/// Uniform codeword and its received word for trial `t`.
fn draw_trial(code: &LinearCode, channel: &ChannelSpec, t: u64, buf: &mut [u8]) -> (usize, usize) {
    let mut rng = channel.rng(t);
    let sent = rng.random_range(0..code.len());
    let y = receive(code, channel, sent, buf, &mut rng);
    (sent, y)
}

fn chunks(trials: u64) -> Vec<(u64, u64)> {
    let step = CHUNK as u64;
    (0..trials.div_ceil(step))
        .map(|k| (k * step, ((k + 1) * step).min(trials)))
        .collect()
}

/// Monte-Carlo estimate of the expected loss: trial `t` uses stream `t` to
/// pick a uniform codeword and corrupt it.
pub fn monte_carlo_loss(decoder: &Decoder, mu: &ValueFunction, channel: &ChannelSpec, trials: u64) -> Result<TrialStats> {
    let code = decoder.code();
    mu.check(code)?;
    channel.check(code)?;
    check_trials(trials)?;
    let m = code.len();
    let parts: Vec<Accumulator> = chunks(trials)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = Accumulator::new(m);
            let mut buf = vec![0u8; code.n()];
            for t in lo..hi {
                let (sent, y) = draw_trial(code, channel, t, &mut buf);
                let decoded = decoder.decode_at(y);
                acc.push(sent, decoded, mu.get(code.diff(decoded, sent)));
            }
            acc
        })
        .collect();
    Ok(parts.iter().fold(Accumulator::new(m), Accumulator::merge).finish())
}

/// Two decoders run on identical transmissions (common random numbers).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairedStats {
    pub first: TrialStats,
    pub second: TrialStats,
    /// Mean of the per-trial loss difference `first - second`.
    pub mean_difference: f64,
    pub stderr_difference: f64,
}

impl PairedStats {
    /// `mean_difference / stderr_difference`; infinite when every trial agrees
    /// and the mean difference is nonzero.
    pub fn z_score(&self) -> f64 {
        self.mean_difference / self.stderr_difference
    }
}

/// Runs two decoders of the same code on the same sampled transmissions.
pub fn paired_loss_difference(
    first: &Decoder,
    second: &Decoder,
    mu: &ValueFunction,
    channel: &ChannelSpec,
    trials: u64,
) -> Result<PairedStats> {
    let code = first.code();
    if **code != **second.code() {
        return Err(Error::CodeMismatch);
    }
    mu.check(code)?;
    channel.check(code)?;
    check_trials(trials)?;
    let m = code.len();
    let parts: Vec<(Accumulator, Accumulator, f64, f64)> = chunks(trials)
        .into_par_iter()
        .map(|(lo, hi)| {
            let (mut a, mut b) = (Accumulator::new(m), Accumulator::new(m));
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            let mut buf = vec![0u8; code.n()];
            for t in lo..hi {
                let (sent, y) = draw_trial(code, channel, t, &mut buf);
                let (da, db) = (first.decode_at(y), second.decode_at(y));
                let la = mu.get(code.diff(da, sent));
                let lb = mu.get(code.diff(db, sent));
                a.push(sent, da, la);
                b.push(sent, db, lb);
                sum += la - lb;
                sum_sq += (la - lb) * (la - lb);
            }
            (a, b, sum, sum_sq)
        })
        .collect();
    let (mut a, mut b) = (Accumulator::new(m), Accumulator::new(m));
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for (pa, pb, s, s2) in &parts {
        a = a.merge(pa);
        b = b.merge(pb);
        sum += s;
        sum_sq += s2;
    }
    let (mean_difference, stderr_difference) = mean_and_stderr(trials, sum, sum_sq);
    Ok(PairedStats {
        first: a.finish(),
        second: b.finish(),
        mean_difference,
        stderr_difference,
    })
}

/// Bijection between gray levels and codewords, with a value per level.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageCodebook {
    /// Sorted by gray level.
    levels: Vec<GrayLevel>,
}

impl ImageCodebook {
    /// Validates that `levels` pairs distinct gray levels with every codeword
    /// of `code` exactly once, with values in `[0, 1]`.
    pub fn new(code: &LinearCode, mut levels: Vec<GrayLevel>) -> Result<Self> {
        if levels.len() != code.len() {
            return Err(Error::InvalidArgument(format!(
                "codebook lists {} levels for {} codewords",
                levels.len(),
                code.len()
            )));
        }
        levels.sort_by_key(|l| l.gray);
        let mut seen = vec![false; code.len()];
        for (k, l) in levels.iter().enumerate() {
            if k > 0 && levels[k - 1].gray == l.gray {
                return Err(Error::InvalidArgument(format!("gray level {} listed twice", l.gray)));
            }
            if l.label >= code.len() || std::mem::replace(&mut seen[l.label], true) {
                return Err(Error::InvalidArgument(format!(
                    "codeword label {} is out of range or listed twice",
                    l.label
                )));
            }
            if !(0.0..=1.0).contains(&l.value) {
                return Err(Error::InvalidArgument(format!(
                    "value {} of gray level {} outside [0, 1]",
                    l.value, l.gray
                )));
            }
        }
        Ok(ImageCodebook { levels })
    }

    /// The embedded gray-level codebook and its [7;4] code.
    pub fn gray_levels() -> (Arc<LinearCode>, ImageCodebook) {
        let (code, levels) = gray_level_code();
        let book = ImageCodebook::new(&code, levels).expect("embedded codebook is valid");
        (Arc::new(code), book)
    }

    /// Reads `gray,codeword,value` rows. The codeword column holds either a
    /// label (`13` or `c13`) or the codeword itself as `n` symbols.
    pub fn from_csv(code: &LinearCode, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut levels = Vec::new();
        for (k, record) in reader.records().enumerate() {
            let line = k + 2;
            let record = record.map_err(|e| Error::parse(line, e.to_string()))?;
            if record.len() != 3 {
                return Err(Error::parse(line, "expected gray,codeword,value"));
            }
            let gray: u8 = record[0]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad gray level {:?}", &record[0])))?;
            let label = parse_codeword_field(code, &record[1]).map_err(|m| Error::parse(line, m))?;
            let value: f64 = record[2]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad value {:?}", &record[2])))?;
            levels.push(GrayLevel { gray, label, value });
        }
        ImageCodebook::new(code, levels)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("gray,codeword,value\n");
        for l in &self.levels {
            out.push_str(&format!("{},{},{}\n", l.gray, l.label, l.value));
        }
        out
    }

    pub fn levels(&self) -> &[GrayLevel] {
        &self.levels
    }

    /// The value function induced on the code.
    pub fn values(&self, code: &LinearCode) -> Result<ValueFunction> {
        let mut values = vec![0.0; code.len()];
        for l in &self.levels {
            values[l.label] = l.value;
        }
        ValueFunction::new(code, values)
    }

    /// Nearest listed level to `gray`; ties go to the darker level.
    pub fn quantize(&self, gray: u8) -> &GrayLevel {
        // levels are sorted, so the first minimum is the darker one
        self.levels
            .iter()
            .min_by_key(|l| l.gray.abs_diff(gray))
            .expect("codebook is nonempty")
    }

    pub fn gray_of_label(&self, label: usize) -> Option<u8> {
        self.levels.iter().find(|l| l.label == label).map(|l| l.gray)
    }

    /// Snaps every pixel to its nearest listed level.
    pub fn quantize_image(&self, image: &GrayImage) -> GrayImage {
        let mut out = image.clone();
        for px in out.pixels_mut() {
            px.0[0] = self.quantize(px.0[0]).gray;
        }
        out
    }
}

fn parse_codeword_field(code: &LinearCode, field: &str) -> std::result::Result<usize, String> {
    let label = if let Some(rest) = field.strip_prefix('c') {
        rest.parse().map_err(|_| format!("bad codeword label {field:?}"))?
    } else if field.len() == code.n() && code.n() > 2 {
        let word = Word::parse(code.alphabet(), field).map_err(|e| e.to_string())?;
        code.label_of(&word)
            .ok_or_else(|| format!("{field} is not a codeword"))?
    } else {
        field.parse().map_err(|_| format!("bad codeword {field:?}"))?
    };
    Ok(label)
}

/// Reads a binary PGM (P5) raster with maxval 255.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if !bytes.starts_with(b"P5") {
        return Err(Error::Format("expected a binary PGM (P5) header".into()));
    }
    let decoder = PnmDecoder::new(Cursor::new(bytes)).map_err(|e| Error::Format(e.to_string()))?;
    let maxval = decoder.header().maximal_sample();
    if maxval != 255 {
        return Err(Error::Format(format!("maxval {maxval}, expected 255")));
    }
    let image = DynamicImage::from_decoder(decoder).map_err(|e| Error::Format(e.to_string()))?;
    match image {
        DynamicImage::ImageLuma8(gray) => Ok(gray),
        other => Err(Error::Format(format!("unexpected pixel type {:?}", other.color()))),
    }
}

/// Writes a binary PGM (P5) raster with maxval 255.
pub fn write_pgm(image: &GrayImage) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    PnmEncoder::new(&mut out)
        .with_subtype(PnmSubtype::Graymap(SampleEncoding::Binary))
        .write_image(image.as_raw(), image.width(), image.height(), ExtendedColorType::L8)
        .map_err(|e| Error::Format(e.to_string()))?;
    Ok(out)
}

/// Result of sending a raster one codeword per pixel.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub image: GrayImage,
    /// Realised value loss `μ(decoded - sent)` per pixel; `fraction_correct`
    /// counts pixels whose gray level survives.
    pub stats: TrialStats,
}

/// Quantizes each pixel, sends its codeword on stream `pixel index`, decodes
/// and maps back to a gray level.
pub fn image_roundtrip(
    image: &GrayImage,
    codebook: &ImageCodebook,
    decoder: &Decoder,
    channel: &ChannelSpec,
) -> Result<RoundTrip> {
    let code = decoder.code();
    channel.check(code)?;
    if codebook.levels.len() != code.len() {
        return Err(Error::CodeMismatch);
    }
    let mu = codebook.values(code)?;
    let mut gray_of = vec![0u8; code.len()];
    for l in &codebook.levels {
        gray_of[l.label] = l.gray;
    }
    let mut out = image.clone();
    let m = code.len();
    let parts: Vec<Accumulator> = out
        .as_mut()
        .par_chunks_mut(CHUNK)
        .zip(image.as_raw().par_chunks(CHUNK))
        .enumerate()
        .map(|(k, (dst, src))| {
            let mut acc = Accumulator::new(m);
            let mut buf = vec![0u8; code.n()];
            for (i, (d, &g)) in dst.iter_mut().zip(src).enumerate() {
                let sent = codebook.quantize(g).label;
                let mut rng = channel.rng((k * CHUNK + i) as u64);
                let y = receive(code, channel, sent, &mut buf, &mut rng);
                let decoded = decoder.decode_at(y);
                acc.push(sent, decoded, mu.get(code.diff(decoded, sent)));
                *d = gray_of[decoded];
            }
            acc
        })
        .collect();
    if parts.is_empty() {
        return Err(Error::Format("raster has no pixels".into()));
    }
    let stats = parts.iter().fold(Accumulator::new(m), Accumulator::merge).finish();
    Ok(RoundTrip { image: out, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::{nn_decoder, Metric, TieBreak};
    use crate::loss::expected_loss_exact;
    use crate::posets::Poset;

    #[test]
    fn noiseless_channel_is_identity() {
        let b = Alphabet::binary();
        let ch = ChannelSpec::new(b, 0.0, 1).unwrap();
        let x = Word::parse(b, "1011001").unwrap();
        for s in 0..50 {
            assert_eq!(transmit(&x, &ch, s).unwrap(), x);
        }
    }

    #[test]
    fn transmit_is_deterministic_per_stream() {
        let t = Alphabet::new(3).unwrap();
        let ch = ChannelSpec::new(t, 0.5, 99).unwrap();
        let x = Word::parse(t, "0120120120").unwrap();
        assert_eq!(transmit(&x, &ch, 4).unwrap(), transmit(&x, &ch, 4).unwrap());
        let outputs: std::collections::HashSet<_> = (0..20).map(|s| transmit(&x, &ch, s).unwrap()).collect();
        assert!(outputs.len() > 1);
    }

    #[test]
    fn flip_fraction_concentrates() {
        let b = Alphabet::binary();
        let ch = ChannelSpec::new(b, 0.3, 0x5EED).unwrap();
        let x = Word::zero(b, 1);
        let n = 1_000_000u64;
        let flips: u64 = (0..n).into_par_iter().map(|s| transmit(&x, &ch, s).unwrap().weight() as u64).sum();
        let f = flips as f64 / n as f64;
        assert!((f - 0.3).abs() < 0.002, "{f}");
    }

    #[test]
    fn ternary_errors_are_uniform_over_other_symbols() {
        let t = Alphabet::new(3).unwrap();
        let ch = ChannelSpec::new(t, 0.6, 5).unwrap();
        let x = Word::zero(t, 1);
        let mut counts = [0u64; 3];
        for s in 0..60_000 {
            counts[transmit(&x, &ch, s).unwrap().get(1) as usize] += 1;
        }
        // expected 24000 / 18000 / 18000; 4-sigma bands
        assert!((counts[0] as f64 - 24000.0).abs() < 4.0 * 120.0);
        assert!((counts[1] as f64 - 18000.0).abs() < 4.0 * 112.0);
        assert!((counts[2] as f64 - 18000.0).abs() < 4.0 * 112.0);
    }

    #[test]
    fn rejects_out_of_range_p() {
        assert!(ChannelSpec::new(Alphabet::binary(), 0.6, 0).is_err());
        assert!(ChannelSpec::new(Alphabet::new(3).unwrap(), 0.6, 0).is_ok());
        assert!(ChannelSpec::new(Alphabet::binary(), f64::NAN, 0).is_err());
    }

    #[test]
    fn monte_carlo_matches_closed_form() {
        let (code, _) = ImageCodebook::gray_levels();
        let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let ch = ChannelSpec::new(Alphabet::binary(), 0.3, 0x5EED).unwrap();
        let stats = monte_carlo_loss(&h, &ValueFunction::zero_one(&code), &ch, 100_000).unwrap();
        assert!((stats.mean - 0.67058).abs() < 4.0 * stats.stderr);
        assert_eq!(stats.errors as f64 / stats.trials as f64, stats.mean);
        let zero = monte_carlo_loss(&h, &ValueFunction::zero(&code), &ch, 1000).unwrap();
        assert_eq!(zero.mean, 0.0);
        assert_eq!(stats.confusion.iter().flatten().sum::<u64>(), 100_000);
    }

    #[test]
    fn results_do_not_depend_on_thread_count() {
        let (code, book) = ImageCodebook::gray_levels();
        let mu = book.values(&code).unwrap();
        let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let ch = ChannelSpec::new(Alphabet::binary(), 0.2, 3).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| monte_carlo_loss(&h, &mu, &ch, 50_000).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn paired_difference_uses_common_draws() {
        let (code, book) = ImageCodebook::gray_levels();
        let mu = book.values(&code).unwrap();
        let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let c = nn_decoder(&code, &Metric::Poset(Poset::chain(7).unwrap()), &TieBreak::Canonical).unwrap();
        let ch = ChannelSpec::new(Alphabet::binary(), 0.3, 11).unwrap();
        let paired = paired_loss_difference(&c, &h, &mu, &ch, 20_000).unwrap();
        assert_eq!(paired.first, monte_carlo_loss(&c, &mu, &ch, 20_000).unwrap());
        assert!((paired.mean_difference - (paired.first.mean - paired.second.mean)).abs() < 1e-12);
        let self_pair = paired_loss_difference(&h, &h, &mu, &ch, 1000).unwrap();
        assert_eq!(self_pair.mean_difference, 0.0);
        let exact = expected_loss_exact(&c, &mu, 0.3).unwrap() - expected_loss_exact(&h, &mu, 0.3).unwrap();
        assert!((paired.mean_difference - exact).abs() < 4.0 * paired.stderr_difference);
    }

    #[test]
    fn quantization_snaps_and_is_idempotent() {
        let (_, book) = ImageCodebook::gray_levels();
        assert_eq!(book.quantize(0).gray, 101);
        assert_eq!(book.quantize(255).gray, 192);
        assert_eq!(book.quantize(148).gray, 110);
        // 148.5 is the midpoint of 110 and 187; 149 is closer to 187
        assert_eq!(book.quantize(149).gray, 187);
        for g in 0..=255u8 {
            let once = book.quantize(g).gray;
            assert_eq!(book.quantize(once).gray, once);
        }
        let tie = ImageCodebook::new(
            &LinearCode::zero_code(Alphabet::binary(), 1).unwrap(),
            vec![GrayLevel { gray: 10, label: 0, value: 0.0 }],
        )
        .unwrap();
        assert_eq!(tie.quantize(200).gray, 10);
    }

    #[test]
    fn quantization_ties_go_darker() {
        let b = Alphabet::binary();
        let code = LinearCode::from_generator(b, vec![Word::parse(b, "1").unwrap()]).unwrap();
        let book = ImageCodebook::new(
            &code,
            vec![
                GrayLevel { gray: 20, label: 1, value: 1.0 },
                GrayLevel { gray: 10, label: 0, value: 0.0 },
            ],
        )
        .unwrap();
        assert_eq!(book.quantize(15).gray, 10);
        assert_eq!(book.quantize(16).gray, 20);
    }

    #[test]
    fn codebook_csv_round_trip() {
        let (code, book) = ImageCodebook::gray_levels();
        let again = ImageCodebook::from_csv(&code, &book.to_csv()).unwrap();
        assert_eq!(again, book);
        let words = "gray,codeword,value\n# comment\n101,1111111,1\n102,c14,0.9\n";
        assert!(ImageCodebook::from_csv(&code, words).is_err()); // incomplete
        let dup = book.to_csv().replace("102,14", "102,15");
        assert!(ImageCodebook::from_csv(&code, &dup).is_err());
    }

    #[test]
    fn pgm_round_trip_is_bit_exact() {
        let img = GrayImage::from_fn(7, 5, |x, y| image::Luma([(x * 31 + y * 7) as u8]));
        let bytes = write_pgm(&img).unwrap();
        assert!(bytes.starts_with(b"P5"));
        assert_eq!(read_pgm(&bytes).unwrap(), img);
        assert_eq!(read_pgm(b"P2 1 1 255 0").unwrap_err().kind(), "format");
        assert_eq!(read_pgm(b"P5 1 1 15 \x00").unwrap_err().kind(), "format");
        assert_eq!(read_pgm(b"P5 2 2 255 \x00").unwrap_err().kind(), "format");
    }

    #[test]
    fn noiseless_round_trip_returns_quantized_raster() {
        let (code, book) = ImageCodebook::gray_levels();
        let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let ch = ChannelSpec::new(Alphabet::binary(), 0.0, 1).unwrap();
        let img = GrayImage::from_fn(40, 30, |x, y| image::Luma([((x * 7 + y * 13) % 256) as u8]));
        let rt = image_roundtrip(&img, &book, &h, &ch).unwrap();
        assert_eq!(rt.image, book.quantize_image(&img));
        assert_eq!(rt.stats.errors, 0);
        assert_eq!(rt.stats.mean, 0.0);
    }

    #[test]
    fn constant_raster_fraction_correct_matches_error_probability() {
        let (code, book) = ImageCodebook::gray_levels();
        let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical).unwrap();
        let ch = ChannelSpec::new(Alphabet::binary(), 0.3, 0x5EED).unwrap();
        let img = GrayImage::from_pixel(80, 80, image::Luma([101]));
        let rt = image_roundtrip(&img, &book, &h, &ch).unwrap();
        let pc: f64 = 1.0 - 0.67058;
        let sd = (pc * (1.0 - pc) / 6400.0).sqrt();
        assert!((rt.stats.fraction_correct() - pc).abs() < 4.0 * sd);
        let again = image_roundtrip(&img, &book, &h, &ch).unwrap();
        assert_eq!(write_pgm(&rt.image).unwrap(), write_pgm(&again.image).unwrap());
    }
}

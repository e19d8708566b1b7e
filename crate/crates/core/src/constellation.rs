//! Expected loss over a continuous channel: a finite signal constellation in
//! R^N with isotropic Gaussian noise, decision regions given as membership
//! rules, and Monte-Carlo estimates of the per-difference loss terms
//! `G_a(τ) = Σ_{s_j - s_i = τ} P(y ∈ R(s_j) | s_i) / M`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Tolerance for comparing points and difference vectors.
pub const TOLERANCE: f64 = 1e-9;

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.5758293035489004;

/// Samples per parallel work unit.
const CHUNK: u64 = 1 << 16;

/// Directions probed on a ball boundary when validating a perturbation.
const BOUNDARY_PROBES: usize = 256;

/// Signal points with a common noise level and a uniform prior.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constellation {
    points: Vec<Vec<f64>>,
    sigma: f64,
}

impl Constellation {
    pub fn new(points: Vec<Vec<f64>>, sigma: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("constellation has no points".into()));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidArgument(format!("noise level {sigma} must be positive")));
        }
        let dim = points[0].len();
        if dim == 0 {
            return Err(Error::InvalidArgument("points must have at least one coordinate".into()));
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument("point coordinates must be finite".into()));
            }
        }
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                if max_abs_diff(&points[a], &points[b]) <= TOLERANCE {
                    return Err(Error::InvalidArgument(format!("points {a} and {b} coincide")));
                }
            }
        }
        Ok(Constellation { points, sigma })
    }

    /// One point per row, comma separated; `#` starts a comment line.
    pub fn from_csv(text: &str, sigma: f64) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut points = Vec::new();
        for (k, record) in reader.records().enumerate() {
            let record = record.map_err(|e| Error::parse(k + 1, e.to_string()))?;
            let point = record
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| Error::parse(k + 1, format!("bad coordinate {f:?}"))))
                .collect::<Result<Vec<_>>>()?;
            points.push(point);
        }
        Constellation::new(points, sigma)
    }

    pub fn to_csv(&self) -> String {
        self.points
            .iter()
            .map(|p| p.iter().map(f64::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i]
    }

    /// `s_j - s_i`.
    pub fn difference(&self, i: usize, j: usize) -> Vec<f64> {
        self.points[j].iter().zip(&self.points[i]).map(|(a, b)| a - b).collect()
    }

    /// Ordered pairs `(i, j)` with `s_j - s_i = τ` up to [`TOLERANCE`].
    pub fn pairs_with_difference(&self, tau: &[f64]) -> Vec<(usize, usize)> {
        if tau.len() != self.dim() {
            return Vec::new();
        }
        let m = self.len();
        (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| max_abs_diff(&self.difference(i, j), tau) <= TOLERANCE)
            .collect()
    }

    /// The distinct elements of `S - S`, in first-seen order over `(i, j)`.
    pub fn differences(&self) -> Vec<Vec<f64>> {
        let mut out: Vec<Vec<f64>> = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                let d = self.difference(i, j);
                if !out.iter().any(|e| max_abs_diff(e, &d) <= TOLERANCE) {
                    out.push(d);
                }
            }
        }
        out
    }

    fn sample(&self, i: usize, rng: &mut ChaCha8Rng, out: &mut [f64]) {
        for (y, s) in out.iter_mut().zip(&self.points[i]) {
            let z: f64 = rng.sample(StandardNormal);
            *y = s + self.sigma * z;
        }
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// An open ball reassigned from `donor` to `receiver`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Donation {
    pub donor: usize,
    pub receiver: usize,
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Donation {
    fn contains(&self, y: &[f64]) -> bool {
        dist_sq(y, &self.center) < self.radius * self.radius
    }
}

/// Decision regions: nearest point in Euclidean distance, then each donated
/// ball in order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegionDecoder {
    #[serde(skip)]
    constellation: Arc<Constellation>,
    donations: Vec<Donation>,
}

/// Nearest-point decoding; ties go to the smallest index.
pub fn voronoi_decoder(constellation: &Arc<Constellation>) -> RegionDecoder {
    RegionDecoder {
        constellation: Arc::clone(constellation),
        donations: Vec::new(),
    }
}

impl RegionDecoder {
    pub fn constellation(&self) -> &Arc<Constellation> {
        &self.constellation
    }

    pub fn donations(&self) -> &[Donation] {
        &self.donations
    }

    pub fn kind(&self) -> &'static str {
        if self.donations.is_empty() {
            "voronoi"
        } else {
            "perturbed"
        }
    }

    pub fn decode(&self, y: &[f64]) -> usize {
        let s = &self.constellation;
        let mut best = 0;
        let mut best_d = dist_sq(y, s.point(0));
        for i in 1..s.len() {
            let d = dist_sq(y, s.point(i));
            if d < best_d {
                best = i;
                best_d = d;
            }
        }
        for don in &self.donations {
            if don.contains(y) {
                best = don.receiver;
            }
        }
        best
    }

    /// Moves the open ball `B(center, radius)` from the region of `donor` to
    /// `receiver`. The ball must lie in the donor's current region (checked at
    /// the centre and on sampled boundary points) and exclude the donor point.
    pub fn perturb(&self, donor: usize, receiver: usize, center: Vec<f64>, radius: f64) -> Result<RegionDecoder> {
        let s = &self.constellation;
        for idx in [donor, receiver] {
            if idx >= s.len() {
                return Err(Error::Region(format!("signal index {idx} out of range")));
            }
        }
        if donor == receiver {
            return Err(Error::Region("donor and receiver coincide".into()));
        }
        if center.len() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: s.dim(),
                found: center.len(),
            });
        }
        if !(radius.is_finite() && radius >= 0.0) || center.iter().any(|x| !x.is_finite()) {
            return Err(Error::Region(format!("invalid ball radius {radius}")));
        }
        let donation = Donation {
            donor,
            receiver,
            center,
            radius,
        };
        if radius > 0.0 {
            if donation.contains(s.point(donor)) {
                return Err(Error::Region(format!("ball contains signal point {donor}")));
            }
            for probe in ball_probes(&donation.center, radius) {
                if self.decode(&probe) != donor {
                    return Err(Error::Region(format!(
                        "ball leaves the decision region of signal {donor} near {probe:?}"
                    )));
                }
            }
        }
        let mut out = self.clone();
        out.donations.push(donation);
        Ok(out)
    }
}

/// The centre and points just inside the boundary of an open ball: both
/// directions along every axis plus fixed pseudo-random directions.
fn ball_probes(center: &[f64], radius: f64) -> Vec<Vec<f64>> {
    let dim = center.len();
    let r = radius * (1.0 - 1e-9);
    let mut out = vec![center.to_vec()];
    let mut push = |dir: &[f64]| {
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            out.push(center.iter().zip(dir).map(|(c, d)| c + r * d / norm).collect());
        }
    };
    for axis in 0..dim {
        for sign in [1.0, -1.0] {
            let mut dir = vec![0.0; dim];
            dir[axis] = sign;
            push(&dir);
        }
    }
    if dim > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..BOUNDARY_PROBES {
            let dir: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
            push(&dir);
        }
    }
    out
}

/// Monte-Carlo estimate with its standard error.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    /// Contributing pairs `(i, j)` with `s_j - s_i = τ`.
    pub pairs: Vec<(usize, usize)>,
    pub samples_per_pair: u64,
}

/// Stream for noise around signal `i`, chunk `chunk`. Noise depends only on
/// the transmitted point and the sample index, so estimates for different
/// decoders share their draws.
fn stream_id(i: usize, chunk: u64) -> u64 {
    ((i as u64) << 40) | chunk
}

fn sample_chunks(samples: u64) -> Vec<(u64, u64)> {
    (0..samples.div_ceil(CHUNK))
        .map(|k| (k, ((k + 1) * CHUNK).min(samples) - k * CHUNK))
        .collect()
}

/// Sums `f(y)` over `samples` draws around signal `i`, returning the sum and
/// the sum of squares.
fn sample_sum<F>(s: &Constellation, i: usize, samples: u64, seed: u64, f: F) -> (f64, f64)
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let parts: Vec<(f64, f64)> = sample_chunks(samples)
        .into_par_iter()
        .map(|(chunk, count)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream_id(i, chunk));
            let mut y = vec![0.0; s.dim()];
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..count {
                s.sample(i, &mut rng, &mut y);
                let v = f(&y);
                sum += v;
                sum_sq += v * v;
            }
            (sum, sum_sq)
        })
        .collect();
    parts.iter().fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d))
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidArgument("at least two samples are required".into()));
    }
    Ok(())
}

/// Estimates `G_a(τ)` with `samples` draws per contributing pair.
pub fn g_estimate(decoder: &RegionDecoder, tau: &[f64], samples: u64, seed: u64) -> Result<Estimate> {
    check_samples(samples)?;
    let s = decoder.constellation();
    if tau.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: tau.len(),
        });
    }
    let pairs = s.pairs_with_difference(tau);
    if pairs.is_empty() {
        return Err(Error::InvalidArgument(format!("{tau:?} is not a difference of two signal points")));
    }
    let weight = 1.0 / s.len() as f64;
    let n = samples as f64;
    let (mut value, mut var) = (0.0, 0.0);
    for &(i, j) in &pairs {
        let (hits, _) = sample_sum(s, i, samples, seed, |y| f64::from(u8::from(decoder.decode(y) == j)));
        let frac = hits / n;
        value += weight * frac;
        var += weight * weight * frac * (1.0 - frac) / (n - 1.0);
    }
    Ok(Estimate {
        value,
        stderr: var.sqrt(),
        pairs,
        samples_per_pair: samples,
    })
}

/// Estimates of `G_a(τ)` for every distinct `τ ∈ S - S`.
pub fn g_estimates(decoder: &RegionDecoder, samples: u64, seed: u64) -> Result<Vec<(Vec<f64>, Estimate)>> {
    decoder
        .constellation()
        .differences()
        .into_iter()
        .map(|tau| g_estimate(decoder, &tau, samples, seed).map(|e| (tau, e)))
        .collect()
}

/// A difference estimate with a 99% confidence interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub estimate: f64,
    pub stderr: f64,
    pub lo: f64,
    pub hi: f64,
    /// `normal` or, when every sampled difference is zero, `clopper-pearson`.
    pub method: &'static str,
}

impl Interval {
    pub fn excludes_zero(&self) -> bool {
        self.lo > 0.0 || self.hi < 0.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

/// Result of reassigning a ball from `donor` to `receiver`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DonationDemo {
    pub donation: Donation,
    pub samples: u64,
    /// `τ = s_donor - s_receiver`.
    pub tau: Vec<f64>,
    /// `T(τ) = G_base(τ) - G_perturbed(τ)`, predicted positive.
    pub forward: Interval,
    /// `T(-τ)`, predicted negative.
    pub backward: Interval,
}

impl DonationDemo {
    /// Both intervals exclude zero with the predicted signs.
    pub fn confirms_signs(&self) -> bool {
        self.forward.lo > 0.0 && self.backward.hi < 0.0
    }
}

fn interval(sum: f64, sum_sq: f64, samples: u64, weight: f64) -> Interval {
    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    if var == 0.0 {
        // one-sided 99% Clopper-Pearson bound for zero events out of n
        let bound = weight * (1.0 - 0.01f64.powf(1.0 / n));
        let estimate = weight * mean;
        return Interval {
            estimate,
            stderr: 0.0,
            lo: estimate - bound,
            hi: estimate + bound,
            method: "clopper-pearson",
        };
    }
    let estimate = weight * mean;
    let stderr = weight * (var / n).sqrt();
    Interval {
        estimate,
        stderr,
        lo: estimate - Z99 * stderr,
        hi: estimate + Z99 * stderr,
        method: "normal",
    }
}

/// Reassigns the open ball `B(center, radius)` from the region of `donor` to
/// `receiver` and estimates the two affected difference terms. Both
/// decoders see the same noise draws, so the per-sample difference is
/// nonzero only inside the ball.
#[allow(clippy::too_many_arguments)]
pub fn donation_demo(
    base: &RegionDecoder,
    receiver: usize,
    donor: usize,
    center: Vec<f64>,
    radius: f64,
    samples: u64,
    seed: u64,
) -> Result<DonationDemo> {
    check_samples(samples)?;
    let perturbed = base.perturb(donor, receiver, center, radius)?;
    let s = base.constellation();
    let tau = s.difference(receiver, donor);
    let pairs = s.pairs_with_difference(&tau);
    if pairs.len() != 1 {
        return Err(Error::NotUnique(pairs.len()));
    }
    let weight = 1.0 / s.len() as f64;
    let hit = |region: usize| {
        let (base, perturbed) = (&base, &perturbed);
        move |y: &[f64]| {
            f64::from(u8::from(base.decode(y) == region)) - f64::from(u8::from(perturbed.decode(y) == region))
        }
    };
    let (f, f2) = sample_sum(s, receiver, samples, seed, hit(donor));
    let (b, b2) = sample_sum(s, donor, samples, seed, hit(receiver));
    Ok(DonationDemo {
        donation: perturbed.donations.last().expect("just pushed").clone(),
        samples,
        tau,
        forward: interval(f, f2, samples, weight),
        backward: interval(b, b2, samples, weight),
    })
}

/// Exact `(T(τ), T(-τ))` for a one-dimensional constellation when the
/// interval `(lo, hi)` moves from `donor` to `receiver`.
pub fn exact_interval_donation(s: &Constellation, receiver: usize, donor: usize, lo: f64, hi: f64) -> Result<(f64, f64)> {
    if s.dim() != 1 {
        return Err(Error::InvalidArgument("exact donation values need a one-dimensional constellation".into()));
    }
    let mass = |i: usize| {
        let n = Normal::new(s.point(i)[0], s.sigma()).expect("sigma is positive");
        n.cdf(hi) - n.cdf(lo)
    };
    let weight = 1.0 / s.len() as f64;
    Ok((weight * mass(receiver), -weight * mass(donor)))
}

//! Command-line interface. Every subcommand writes one JSON document (or CSV
//! with `--table`) to stdout or `--out`.
//!
//! Exit status: 0 on success, 1 on domain errors (with an error JSON object on
//! stderr), 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::channel::{
    image_roundtrip, monte_carlo_loss, paired_loss_difference, read_pgm, write_pgm, ChannelSpec, ImageCodebook,
};
use crate::codes::{gray_level_values, LinearCode};
use crate::constellation::{
    donation_demo, exact_interval_donation, g_estimates, voronoi_decoder, Constellation,
};
use crate::decoders::{argmin_at, decomposable_pair, nn_decoder, Decoder, Metric, TieBreak};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::loss::{
    decoder_match_search, error_probability, expected_loss_exact, expected_loss_poly, g_table, opposite_sign_witness,
    p_of_s, poset_bayes_search, s_of_p, sign_profile, t_table, z_of_p, bayes_decoder, LossPolynomial,
    SearchBudget, TTable, ValueFunction, WitnessMode,
};
use crate::posets::Poset;
use crate::report::{to_json, ErrorReport, GTableReport, MatchSummary, TTableReport, WitnessReport};
use crate::words::{Alphabet, Coords, Word};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Debug, Parser)]
#[command(name = "posetloss", version, about = "Value-weighted decoding with poset metrics")]
pub struct Cli {
    /// Master seed for all random streams (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0x5EED", value_parser = parse_seed)]
    pub seed: u64,
    /// Worker threads. Results are identical for any value.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Covers, ideals, filters, (I, J) decompositions and distances of a poset.
    Poset(PosetArgs),
    /// Parameters, codewords and distance profile of a linear code.
    Code(CodeArgs),
    /// Nearest-neighbour decoding of words, or the full decoding table.
    Decode(DecodeArgs),
    /// Loss tables of two decoders, their difference, sign profiles and witness.
    Analyze(AnalyzeArgs),
    /// Bayes decoder for a value function, compared with nearest-neighbour decoders.
    Bayes(BayesArgs),
    /// Monte-Carlo expected loss over the symmetric channel.
    Simulate(SimulateArgs),
    /// Send a PGM image through the channel, one codeword per pixel.
    Image(ImageArgs),
    /// Decision-region loss estimates for a Gaussian signal constellation.
    Constellation(ConstellationArgs),
    /// Reproduce the published examples.
    #[command(subcommand)]
    Paper(PaperCommand),
}

/// Poset sources: a file with an `n=<size>` line followed by `i < j` lines, or
/// a family shorthand such as `chain5`, `antichain4`, `nrt2x4`, `hier:2,3`.
const POSET_HELP: &str = "poset file or shorthand (chain5, antichain4, nrt2x4, hier:2,3)";
/// Code sources: a code file (`q= n= k=` header, one generator row per line)
/// or `builtin:gray`, `builtin:five-bit`, `builtin:repetition`.
const CODE_HELP: &str = "code file or builtin:gray | builtin:five-bit | builtin:repetition";
const VALUES_HELP: &str = "CSV `codeword,value`, or zero-one | one-zero | gray";

#[derive(Debug, Args)]
pub struct PosetArgs {
    #[arg(long, help = POSET_HELP)]
    pub poset: String,
    /// Index set whose ideal to compute, e.g. `2,4`.
    #[arg(long)]
    pub ideal: Option<String>,
    /// Index set whose filter to compute.
    #[arg(long)]
    pub filter: Option<String>,
    /// Filter I for a decomposition.
    #[arg(long = "i", requires = "j_set")]
    pub i_set: Option<String>,
    /// Subset J of I for a decomposition.
    #[arg(long = "j", requires = "i_set")]
    pub j_set: Option<String>,
    /// First word for a distance.
    #[arg(long, requires = "y")]
    pub x: Option<String>,
    /// Second word for a distance.
    #[arg(long, requires = "x")]
    pub y: Option<String>,
    /// Alphabet size for --x and --y.
    #[arg(long, default_value_t = 2)]
    pub q: u32,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    #[arg(long, help = CODE_HELP)]
    pub code: String,
    /// Also report the minimum poset distance.
    #[arg(long, help = POSET_HELP)]
    pub poset: Option<String>,
    /// Print the code in its text format instead of JSON.
    #[arg(long)]
    pub text: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TieBreakArg {
    /// Smallest Hamming distance, then smallest label.
    Canonical,
    /// Smallest label.
    Lex,
}

impl From<TieBreakArg> for TieBreak {
    fn from(t: TieBreakArg) -> Self {
        match t {
            TieBreakArg::Canonical => TieBreak::Canonical,
            TieBreakArg::Lex => TieBreak::Lex,
        }
    }
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[arg(long, help = CODE_HELP)]
    pub code: String,
    /// Poset for the metric; Hamming when absent.
    #[arg(long, help = POSET_HELP)]
    pub poset: Option<String>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub tiebreak: TieBreakArg,
    /// Received word to decode (repeatable).
    #[arg(long = "word")]
    pub words: Vec<String>,
    /// Emit the full decoding table as CSV `word,codeword`.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long, help = CODE_HELP)]
    pub code: String,
    /// Poset of the second decoder.
    #[arg(long, help = POSET_HELP)]
    pub poset: String,
    #[arg(long, help = VALUES_HELP)]
    pub values: String,
    /// Poset of the first decoder; Hamming when absent.
    #[arg(long, help = POSET_HELP)]
    pub reference: Option<String>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub tiebreak: TieBreakArg,
    /// Values of s at which to report the loss difference (repeatable).
    #[arg(long = "s")]
    pub s_points: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct BayesArgs {
    #[arg(long, help = CODE_HELP)]
    pub code: String,
    #[arg(long, help = VALUES_HELP)]
    pub values: String,
    /// Crossover probability, strictly inside (0, (q-1)/q).
    #[arg(long)]
    pub p: f64,
    /// Candidate poset to rank (repeatable).
    #[arg(long = "poset", help = POSET_HELP)]
    pub posets: Vec<String>,
    /// Emit the Bayes decoding table as CSV.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, help = CODE_HELP)]
    pub code: String,
    #[arg(long, help = VALUES_HELP, default_value = "zero-one")]
    pub values: String,
    /// Poset for the decoder's metric; Hamming when absent.
    #[arg(long, help = POSET_HELP)]
    pub poset: Option<String>,
    #[arg(long, value_enum, default_value = "canonical")]
    pub tiebreak: TieBreakArg,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Second decoder run on the same transmissions: `hamming` or a poset.
    #[arg(long)]
    pub compare: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ImageDecoderArg {
    /// Hamming nearest neighbour.
    Hamming,
    /// Chain-poset nearest neighbour with the canonical tie-break.
    Chain,
    /// Chain-poset nearest neighbour reproducing the published chain table.
    Matched,
}

#[derive(Debug, Args)]
pub struct ImageArgs {
    /// Binary PGM (P5, maxval 255) input.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub p: f64,
    #[arg(long, value_enum, default_value = "hamming")]
    pub decoder: ImageDecoderArg,
    /// CSV `gray,codeword,value`; the embedded gray-level table when absent.
    #[arg(long)]
    pub codebook: Option<PathBuf>,
    /// Decoded PGM path; `<input stem>.decoded.pgm` next to the input when absent.
    #[arg(long)]
    pub image_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstellationArgs {
    /// CSV with one point per row.
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    /// Samples per contributing pair.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Index of the signal gaining the ball.
    #[arg(long, requires_all = ["donor", "center", "radius"])]
    pub receiver: Option<usize>,
    /// Index of the signal whose region gives up the ball.
    #[arg(long, requires_all = ["receiver", "center", "radius"])]
    pub donor: Option<usize>,
    /// Ball centre, comma separated.
    #[arg(long, requires_all = ["receiver", "donor", "radius"])]
    pub center: Option<String>,
    #[arg(long, requires_all = ["receiver", "donor", "center"])]
    pub radius: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum PaperCommand {
    /// [5;2] code: Hamming vs chain decoder tables and the published difference.
    #[command(name = "example1")]
    FiveBit,
    /// Length-3 repetition code under a chain of length 3.
    #[command(name = "example2")]
    Repetition,
    /// Decoder pair on a BGL code built from an (I, J)-decomposable poset.
    #[command(name = "theorem6")]
    Decomposable(DecomposableArgs),
    /// Gray-level [7;4] code: Hamming and chain tables, loss difference, crossover.
    #[command(name = "appendix11")]
    GrayLevels(GrayLevelArgs),
    /// Donating part of a decision region on a two-point line constellation.
    #[command(name = "theorem8")]
    Donation(DonationArgs),
}

#[derive(Debug, Args)]
pub struct DecomposableArgs {
    #[arg(long, default_value = "chain5", help = POSET_HELP)]
    pub poset: String,
    /// Reference poset (must have I as a filter); antichain when absent.
    #[arg(long, help = POSET_HELP)]
    pub reference: Option<String>,
    /// Filter I; the first decomposable pair is used when absent.
    #[arg(long = "i", requires = "j_set")]
    pub i_set: Option<String>,
    #[arg(long = "j", requires = "i_set")]
    pub j_set: Option<String>,
    /// Word vanishing on I; zero when absent.
    #[arg(long)]
    pub x_tilde: Option<String>,
    /// Nonzero word supported on I_J^-; the unit vector of its smallest element when absent.
    #[arg(long)]
    pub c_tilde: Option<String>,
}

#[derive(Debug, Args)]
pub struct GrayLevelArgs {
    /// Time budget for the table-matching search, in seconds.
    #[arg(long, default_value_t = 60)]
    pub budget_secs: u64,
}

#[derive(Debug, Args)]
pub struct DonationArgs {
    /// Samples per direction.
    #[arg(long, default_value_t = 10_000_000)]
    pub samples: u64,
}

fn parse_seed(text: &str) -> std::result::Result<u64, String> {
    let t = text.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {text:?}: {e}"))
}

/// Parses arguments, runs the command and writes its output; returns the
/// process exit status.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprint!("{}", to_json(&ErrorReport::from(&e)));
            1
        }
    }
}

/// Runs the command and writes its report to `--out` or stdout.
pub fn execute(cli: &Cli) -> Result<()> {
    let text = run(cli)?;
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Runs the command and returns its report.
pub fn run(cli: &Cli) -> Result<String> {
    match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Poset(a) => poset_cmd(a),
        Command::Code(a) => code_cmd(a),
        Command::Decode(a) => decode_cmd(a),
        Command::Analyze(a) => analyze_cmd(a),
        Command::Bayes(a) => bayes_cmd(a),
        Command::Simulate(a) => simulate_cmd(a, cli.seed),
        Command::Image(a) => image_cmd(a, cli.seed),
        Command::Constellation(a) => constellation_cmd(a, cli.seed),
        Command::Paper(p) => match p {
            PaperCommand::FiveBit => paper_example1(),
            PaperCommand::Repetition => paper_example2(),
            PaperCommand::Decomposable(a) => paper_decomposable(a),
            PaperCommand::GrayLevels(a) => paper_gray_levels(a),
            PaperCommand::Donation(a) => paper_donation(a, cli.seed),
        },
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// A poset from a file, or from shorthand like `chain5`, `nrt2x4`, `hier:2,3`.
pub fn load_poset(source: &str) -> Result<Poset> {
    let path = Path::new(source);
    if path.is_file() {
        return Poset::parse(&read(path)?);
    }
    let mut spec = String::new();
    let mut prev_alpha = false;
    for ch in source.trim().chars() {
        let alpha = ch.is_ascii_alphabetic() && ch != 'x';
        if ch.is_ascii_digit() && prev_alpha {
            spec.push(' ');
        }
        match ch {
            ':' | ',' | 'x' | '-' | '_' => spec.push(' '),
            _ => spec.push(ch),
        }
        prev_alpha = alpha;
    }
    let spec = spec.replace("hierarchical", "hier");
    Poset::parse(&spec)
}

/// A code from a file or `builtin:<name>`.
pub fn load_code(source: &str) -> Result<Arc<LinearCode>> {
    match source {
        "builtin:gray" => Ok(fixtures::gray_code()),
        "builtin:five-bit" => Ok(fixtures::five_bit_code()),
        "builtin:repetition" => Ok(fixtures::repetition_code()),
        _ if source.starts_with("builtin:") => Err(Error::InvalidArgument(format!("unknown builtin code {source:?}"))),
        _ => Ok(Arc::new(LinearCode::parse(&read(Path::new(source))?)?)),
    }
}

/// Values from a CSV file or one of `zero-one`, `one-zero`, `gray`.
pub fn load_values(code: &LinearCode, source: &str) -> Result<ValueFunction> {
    match source {
        "zero-one" => Ok(ValueFunction::zero_one(code)),
        "one-zero" => Ok(ValueFunction::one_zero(code)),
        "gray" => ValueFunction::new(code, gray_level_values()),
        _ => ValueFunction::from_csv(code, &read(Path::new(source))?),
    }
}

fn load_metric(source: Option<&str>) -> Result<Metric> {
    match source {
        None | Some("hamming") => Ok(Metric::Hamming),
        Some(s) => Ok(Metric::Poset(load_poset(s)?)),
    }
}

fn parse_set(n: usize, text: &str) -> Result<Coords> {
    let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
    let indices = trimmed
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad index {t:?} in {text:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Coords::from_indices(n, indices)
}

fn parse_vector(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad coordinate {t:?}")))
        })
        .collect()
}

fn poset_cmd(a: &PosetArgs) -> Result<String> {
    let poset = load_poset(&a.poset)?;
    let n = poset.len();
    let mut out = json!({
        "n": n,
        "covers": poset.covers(),
        "relations": (1..=n).map(|i| poset.down_set(i).len() - 1).sum::<usize>(),
        "antichain": poset.is_antichain(),
        "text": poset.to_text(),
        "first_decomposition": poset.first_decomposition(),
    });
    if let Some(s) = &a.ideal {
        let set = parse_set(n, s)?;
        out["ideal"] = json!({"set": set, "ideal": poset.ideal_of(set)?});
    }
    if let Some(s) = &a.filter {
        let set = parse_set(n, s)?;
        out["filter"] = json!({"set": set, "filter": poset.filter_of(set)?});
    }
    if let (Some(i), Some(j)) = (&a.i_set, &a.j_set) {
        out["decomposition"] = json!(poset.decompose(parse_set(n, i)?, parse_set(n, j)?)?);
    }
    if let (Some(x), Some(y)) = (&a.x, &a.y) {
        let alphabet = Alphabet::new(a.q)?;
        let (x, y) = (Word::parse(alphabet, x)?, Word::parse(alphabet, y)?);
        out["distance"] = json!({
            "x": x,
            "y": y,
            "poset": poset.distance(&x, &y)?,
            "hamming": x.hamming_distance(&y)?,
        });
    }
    Ok(to_json(&out))
}

fn code_cmd(a: &CodeArgs) -> Result<String> {
    let code = load_code(&a.code)?;
    if a.text {
        return Ok(code.to_text());
    }
    let mut out = json!(code.summary());
    if let Some(p) = &a.poset {
        let poset = load_poset(p)?;
        if poset.len() != code.n() {
            return Err(Error::DimensionMismatch {
                expected: code.n(),
                found: poset.len(),
            });
        }
        let min = code
            .codewords()
            .iter()
            .filter(|c| c.weight() > 0)
            .map(|c| poset.weight_of_support(c.support()))
            .min();
        out["poset_min_distance"] = json!(min);
    }
    Ok(to_json(&out))
}

fn tied_words(code: &LinearCode, metric: &Metric) -> usize {
    (0..code.space().size())
        .filter(|&y| argmin_at(code, metric, y).1.len() > 1)
        .count()
}

fn decode_cmd(a: &DecodeArgs) -> Result<String> {
    let code = load_code(&a.code)?;
    let metric = load_metric(a.poset.as_deref())?;
    let decoder = nn_decoder(&code, &metric, &a.tiebreak.into())?;
    if a.table {
        return Ok(decoder.to_csv());
    }
    let space = code.space();
    let mut results = Vec::new();
    for w in &a.words {
        let y = Word::parse(code.alphabet(), w)?;
        let pos = space.index_of(&y)?;
        let (distance, nearest) = argmin_at(&code, &metric, pos);
        let decoded = decoder.decode_at(pos);
        results.push(json!({
            "word": y,
            "distance": distance,
            "nearest": nearest.iter().map(|&c| code.codeword(c).to_string()).collect::<Vec<_>>(),
            "decoded": code.codeword(decoded),
            "label": decoded,
        }));
    }
    let regions: Vec<usize> = decoder.regions().iter().map(Vec::len).collect();
    Ok(to_json(&json!({
        "metric": metric.name(),
        "tiebreak": format!("{:?}", a.tiebreak).to_lowercase(),
        "tied_words": tied_words(&code, &metric),
        "region_sizes": regions,
        "results": results,
    })))
}

fn analyze_cmd(a: &AnalyzeArgs) -> Result<String> {
    let code = load_code(&a.code)?;
    let mu = load_values(&code, &a.values)?;
    let tb: TieBreak = a.tiebreak.into();
    let first_metric = load_metric(a.reference.as_deref())?;
    let second_metric = Metric::Poset(load_poset(&a.poset)?);
    let first = nn_decoder(&code, &first_metric, &tb)?.with_label(first_metric.name());
    let second = nn_decoder(&code, &second_metric, &tb)?.with_label(second_metric.name());
    let (g1, g2) = (g_table(&first)?, g_table(&second)?);
    let t = t_table(&g1, &g2)?;
    let (e1, e2) = (expected_loss_poly(&g1, &mu)?, expected_loss_poly(&g2, &mu)?);
    let diff = &e1 - &e2;
    let at: Vec<Value> = a
        .s_points
        .iter()
        .map(|&s| -> Result<Value> {
            Ok(json!({
                "s": s,
                "p": p_of_s(s, code.q()),
                "difference": diff.eval(s),
                "membership": t.membership(&mu, s)?,
                "witness": opposite_sign_witness(&t, WitnessMode::AtS { s }).map(|w| WitnessReport::new(&code, w)),
            }))
        })
        .collect::<Result<_>>()?;
    Ok(to_json(&json!({
        "code": code.summary(),
        "values": mu.values(),
        "first": GTableReport::new(&g1),
        "second": GTableReport::new(&g2),
        "difference": TTableReport::new(&t),
        "loss": {
            "first": e1,
            "second": e2,
            "difference": diff,
            "difference_profile": sign_profile(&diff),
        },
        "at": at,
    })))
}

fn bayes_cmd(a: &BayesArgs) -> Result<String> {
    let code = load_code(&a.code)?;
    let mu = load_values(&code, &a.values)?;
    let bayes = bayes_decoder(&code, &mu, a.p)?;
    if a.table {
        return Ok(bayes.to_csv());
    }
    let hamming = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?;
    let zero = Decoder::constant(&code, code.zero_label())?;
    let mut out = json!({
        "p": a.p,
        "s": s_of_p(a.p, code.q()),
        "bayes": {
            "expected_loss": expected_loss_exact(&bayes, &mu, a.p)?,
            "error_probability": error_probability(&bayes, a.p)?,
            "reasonable": bayes.is_reasonable(),
        },
        "hamming": {
            "expected_loss": expected_loss_exact(&hamming, &mu, a.p)?,
            "error_probability": error_probability(&hamming, a.p)?,
        },
        "constant_zero": {
            "expected_loss": expected_loss_exact(&zero, &mu, a.p)?,
        },
    });
    if !a.posets.is_empty() {
        let posets = a.posets.iter().map(|p| load_poset(p)).collect::<Result<Vec<_>>>()?;
        let s0 = s_of_p(a.p, code.q());
        let ranking = poset_bayes_search(&code, &posets, &mu, s0)?;
        let z = z_of_p(a.p, code.n(), code.len());
        out["posets"] = ranking
            .ranking
            .iter()
            .map(|r| {
                json!({
                    "poset": a.posets[r.index],
                    "relations": r.relations,
                    "expected_loss": z * r.value,
                })
            })
            .collect();
    }
    Ok(to_json(&out))
}

fn simulate_cmd(a: &SimulateArgs, seed: u64) -> Result<String> {
    let code = load_code(&a.code)?;
    let mu = load_values(&code, &a.values)?;
    let tb: TieBreak = a.tiebreak.into();
    let metric = load_metric(a.poset.as_deref())?;
    let decoder = nn_decoder(&code, &metric, &tb)?;
    let channel = ChannelSpec::new(code.alphabet(), a.p, seed)?;
    let exact = expected_loss_exact(&decoder, &mu, a.p)?;
    let stats = monte_carlo_loss(&decoder, &mu, &channel, a.trials)?;
    let mut out = json!({
        "decoder": metric.name(),
        "channel": channel,
        "exact": exact,
        "deviation_in_stderr": if stats.stderr > 0.0 { (stats.mean - exact) / stats.stderr } else { 0.0 },
        "stats": stats,
    });
    if let Some(other) = &a.compare {
        let other_metric = load_metric(Some(other))?;
        let other_dec = nn_decoder(&code, &other_metric, &tb)?;
        let paired = paired_loss_difference(&decoder, &other_dec, &mu, &channel, a.trials)?;
        out["compare"] = json!({
            "decoder": other_metric.name(),
            "exact_difference": exact - expected_loss_exact(&other_dec, &mu, a.p)?,
            "paired": paired,
        });
    }
    Ok(to_json(&out))
}

/// The chain(7) decoder of the gray-level code whose table equals the
/// published chain table.
pub fn matched_gray_chain_decoder(code: &Arc<LinearCode>, budget: SearchBudget) -> Result<(Decoder, MatchSummary)> {
    let target = fixtures::gray_chain_table(code)?;
    let metric = Metric::Poset(Poset::chain(7)?);
    let report = decoder_match_search(code, &metric, &target, budget)?;
    let summary = MatchSummary::new(&report);
    match report.outcome.decoder() {
        Some(d) => Ok((d.clone().with_label("chain (matched)"), summary)),
        None => Err(Error::HypothesisViolated(format!(
            "no chain decoder reproduces the published table ({})",
            report.outcome.kind()
        ))),
    }
}

fn image_cmd(a: &ImageArgs, seed: u64) -> Result<String> {
    let bytes = fs::read(&a.input).map_err(|e| Error::Io(format!("{}: {e}", a.input.display())))?;
    let image = read_pgm(&bytes)?;
    let (code, default_book) = ImageCodebook::gray_levels();
    let book = match &a.codebook {
        Some(p) => ImageCodebook::from_csv(&code, &read(p)?)?,
        None => default_book,
    };
    let decoder = match a.decoder {
        ImageDecoderArg::Hamming => nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?,
        ImageDecoderArg::Chain => nn_decoder(&code, &Metric::Poset(Poset::chain(7)?), &TieBreak::Canonical)?,
        ImageDecoderArg::Matched => matched_gray_chain_decoder(&code, SearchBudget::default())?.0,
    };
    let channel = ChannelSpec::new(code.alphabet(), a.p, seed)?;
    let rt = image_roundtrip(&image, &book, &decoder, &channel)?;
    let out_path = match &a.image_out {
        Some(p) => p.clone(),
        None => {
            let stem = a.input.file_stem().and_then(|s| s.to_str()).unwrap_or("image");
            a.input.with_file_name(format!("{stem}.decoded.pgm"))
        }
    };
    fs::write(&out_path, write_pgm(&rt.image)?)?;
    let mu = book.values(&code)?;
    Ok(to_json(&json!({
        "input": a.input,
        "output": out_path,
        "width": image.width(),
        "height": image.height(),
        "decoder": format!("{:?}", a.decoder).to_lowercase(),
        "channel": channel,
        "fraction_correct": rt.stats.fraction_correct(),
        "expected_loss": expected_loss_exact(&decoder, &mu, a.p)?,
        "stats": rt.stats,
    })))
}

fn constellation_cmd(a: &ConstellationArgs, seed: u64) -> Result<String> {
    let s = Arc::new(Constellation::from_csv(&read(&a.points)?, a.sigma)?);
    let base = voronoi_decoder(&s);
    if let (Some(receiver), Some(donor), Some(center), Some(radius)) = (a.receiver, a.donor, &a.center, a.radius) {
        let demo = donation_demo(&base, receiver, donor, parse_vector(center)?, radius, a.samples, seed)?;
        return Ok(to_json(&json!({
            "constellation": &*s,
            "demo": demo,
            "confirms_signs": demo.confirms_signs(),
        })));
    }
    let estimates: Vec<Value> = g_estimates(&base, a.samples, seed)?
        .into_iter()
        .map(|(tau, e)| json!({"tau": tau, "estimate": e}))
        .collect();
    Ok(to_json(&json!({
        "constellation": &*s,
        "decoder": base.kind(),
        "g": estimates,
    })))
}

fn published_vs_computed(published: &[LossPolynomial], computed: &[LossPolynomial]) -> Vec<Value> {
    let mut out = Vec::new();
    for (label, (p, c)) in published.iter().zip(computed).enumerate() {
        let len = p.coeffs().len().max(c.coeffs().len());
        for d in 0..len {
            if p.coeff(d) != c.coeff(d) {
                out.push(json!({"label": label, "degree": d, "published": p.coeff(d), "computed": c.coeff(d)}));
            }
        }
    }
    out
}

fn paper_example1() -> Result<String> {
    let code = fixtures::five_bit_code();
    let chain = Metric::Poset(Poset::chain(5)?);
    let published_h = fixtures::five_bit_hamming_table(&code)?;
    let published_p = fixtures::five_bit_chain_table(&code)?;
    let budget = SearchBudget::default();
    let h_search = decoder_match_search(&code, &Metric::Hamming, &published_h, budget)?;
    let p_search = decoder_match_search(&code, &chain, &published_p, budget)?;
    let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?.with_label("hamming (canonical)");
    let p = nn_decoder(&code, &chain, &TieBreak::Canonical)?.with_label("chain (canonical)");
    let (gh, gp) = (g_table(&h)?, g_table(&p)?);
    let t = t_table(&gh, &gp)?;
    let published_t = fixtures::five_bit_difference(&code)?;
    let from_tables = t_table(&published_h, &published_p)?;
    let diagnosis = p_search
        .outcome
        .decoder()
        .is_none()
        .then(|| {
            published_p
                .invariant_violations()
                .iter()
                .map(|v| {
                    format!(
                        "published chain table sums to {} at s^{}; every decoder table sums to {}",
                        v.actual, v.degree, v.expected
                    )
                })
                .collect::<Vec<_>>()
        });
    Ok(to_json(&json!({
        "codewords": code.codewords(),
        "hamming": {
            "published": GTableReport::new(&published_h),
            "search": MatchSummary::new(&h_search),
            "canonical": GTableReport::new(&gh),
        },
        "chain": {
            "published": GTableReport::new(&published_p),
            "search": MatchSummary::new(&p_search),
            "diagnosis": diagnosis,
            "canonical": GTableReport::new(&gp),
        },
        "difference": {
            "published": TTableReport::new(&published_t),
            "from_published_tables": TTableReport::new(&from_tables),
            "published_vs_tables": published_vs_computed(published_t.entries(), from_tables.entries()),
            "canonical_decoders": TTableReport::new(&t),
        },
    })))
}

fn paper_example2() -> Result<String> {
    let code = fixtures::repetition_code();
    let chain = Metric::Poset(Poset::chain(3)?);
    let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?.with_label("hamming");
    let p = nn_decoder(&code, &chain, &TieBreak::Canonical)?.with_label("chain");
    let (gh, gp) = (g_table(&h)?, g_table(&p)?);
    let t = t_table(&gh, &gp)?;
    let published = fixtures::repetition_difference_published(&code)?;
    let signs: Vec<Value> = t
        .entries()
        .iter()
        .zip(published.entries())
        .enumerate()
        .map(|(label, (c, pub_))| {
            let (sc, sp) = (sign_profile(c).uniform_sign(), sign_profile(pub_).uniform_sign());
            json!({"label": label, "computed": sc, "published": sp, "agree": sc == sp})
        })
        .collect();
    Ok(to_json(&json!({
        "codewords": code.codewords(),
        "tied_words": {
            "hamming": tied_words(&code, &Metric::Hamming),
            "chain": tied_words(&code, &chain),
        },
        "hamming": GTableReport::new(&gh),
        "chain": GTableReport::new(&gp),
        "difference": TTableReport::new(&t),
        "published_difference": TTableReport::new(&published),
        "signs": signs,
        "published_vs_computed": published_vs_computed(published.entries(), t.entries()),
    })))
}

fn paper_decomposable(a: &DecomposableArgs) -> Result<String> {
    let poset = load_poset(&a.poset)?;
    let n = poset.len();
    let reference = a.reference.as_deref().map(load_poset).transpose()?;
    let d = match (&a.i_set, &a.j_set) {
        (Some(i), Some(j)) => poset.decompose(parse_set(n, i)?, parse_set(n, j)?)?,
        _ => poset.first_decomposition().ok_or_else(|| {
            Error::HypothesisViolated(format!("{} has no decomposable (I, J)", a.poset))
        })?,
    };
    let b = Alphabet::binary();
    let x_tilde = match &a.x_tilde {
        Some(w) => Word::parse(b, w)?,
        None => Word::zero(b, n),
    };
    let c_tilde = match &a.c_tilde {
        Some(w) => Word::parse(b, w)?,
        None => {
            let first = d.i_minus.iter().next().ok_or_else(|| Error::NotDecomposable {
                i: d.i.to_string(),
                j: d.j.to_string(),
            })?;
            Word::unit(b, n, first)?
        }
    };
    let pair = decomposable_pair(&poset, reference.as_ref(), d.i, d.j, &x_tilde, &c_tilde)?;
    let code = &pair.code;
    let t = t_table(&g_table(&pair.reference)?, &g_table(&pair.poset)?)?;
    let closed = TTable::from_entries(Arc::clone(code), pair.closed_form())?;
    let pow = |e: usize| LossPolynomial::monomial(1, e);
    let predicted_c1 = &pow(pair.n1) - &pow(pair.m1);
    let predicted_c2 = &pow(pair.n2) - &pow(pair.m2);
    Ok(to_json(&json!({
        "poset": poset.to_text(),
        "decomposition": d,
        "codewords": code.codewords(),
        "y_tilde": pair.y_tilde,
        "c1": {"label": pair.c1, "codeword": code.codeword(pair.c1)},
        "c2": {"label": pair.c2, "codeword": code.codeword(pair.c2)},
        "exponents": {"n1": pair.n1, "m1": pair.m1, "n2": pair.n2, "m2": pair.m2},
        "difference": TTableReport::new(&t),
        "closed_form": closed.rendered(),
        "closed_form_matches": closed == t,
        "exponents_match": *t.entry(pair.c1) == predicted_c1 && *t.entry(pair.c2) == predicted_c2,
    })))
}

fn paper_gray_levels(a: &GrayLevelArgs) -> Result<String> {
    let code = fixtures::gray_code();
    let mu = ValueFunction::new(&code, gray_level_values())?;
    let h = nn_decoder(&code, &Metric::Hamming, &TieBreak::Canonical)?.with_label("hamming");
    let gh = g_table(&h)?;
    let published_entries: Vec<Value> = fixtures::GRAY_HAMMING_ENTRIES
        .iter()
        .map(|&(label, coeffs)| {
            let published = LossPolynomial::new(coeffs.to_vec());
            json!({
                "label": label,
                "published": published.to_string(),
                "computed": gh.entry(label).to_string(),
                "equal": *gh.entry(label) == published,
            })
        })
        .collect();
    let published_chain = fixtures::gray_chain_table(&code)?;
    let budget = SearchBudget {
        max_time: std::time::Duration::from_secs(a.budget_secs),
        ..SearchBudget::default()
    };
    let (matched, search) = matched_gray_chain_decoder(&code, budget)?;
    let gp = g_table(&matched)?;
    let diff = &expected_loss_poly(&gp, &mu)? - &expected_loss_poly(&gh, &mu)?;
    let published_diff = fixtures::gray_difference();
    let profile = sign_profile(&diff);
    let (lo, hi) = fixtures::GRAY_CROSSOVER_BRACKET;
    let roots: Vec<Value> = profile
        .roots
        .iter()
        .map(|r| json!({"lo": r.lo, "hi": r.hi, "s": r.midpoint(), "p": p_of_s(r.midpoint(), 2)}))
        .collect();
    Ok(to_json(&json!({
        "codewords": code.codewords(),
        "values": mu.values(),
        "hamming": {
            "table": GTableReport::new(&gh),
            "published_entries": published_entries,
        },
        "chain": {
            "published": GTableReport::new(&published_chain),
            "search": search,
            "matched": GTableReport::new(&gp),
        },
        "loss_difference": {
            "coefficients": diff,
            "published": published_diff,
            "max_coefficient_error": diff.max_abs_diff(&published_diff),
            "profile": profile,
            "roots": roots,
            "published_bracket": [lo, hi],
            "root_in_published_bracket": profile.roots.len() == 1
                && profile.roots[0].lo >= lo
                && profile.roots[0].hi <= hi,
        },
    })))
}

#[derive(Serialize)]
struct Exact {
    forward: f64,
    backward: f64,
}

fn paper_donation(a: &DonationArgs, seed: u64) -> Result<String> {
    let s = Arc::new(Constellation::new(vec![vec![-1.0], vec![1.0]], 1.0)?);
    let base = voronoi_decoder(&s);
    let (lo, hi) = (0.2, 0.4);
    let demo = donation_demo(&base, 0, 1, vec![0.5 * (lo + hi)], 0.5 * (hi - lo), a.samples, seed)?;
    let (forward, backward) = exact_interval_donation(&s, 0, 1, lo, hi)?;
    Ok(to_json(&json!({
        "constellation": &*s,
        "interval": [lo, hi],
        "demo": demo,
        "confirms_signs": demo.confirms_signs(),
        "exact": Exact { forward, backward },
        "exact_within_interval": demo.forward.contains(forward) && demo.backward.contains(backward),
    })))
}

//! JSON reports shared by the command-line tool and the examples.
//!
//! Integer polynomials are written as exact coefficient arrays (constant term
//! first); other numbers use 17 significant digits so output is stable across
//! platforms.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::codes::LinearCode;
use crate::error::Error;
use crate::loss::{
    opposite_sign_witness, sign_profile, GTable, InvariantViolation, LossPolynomial, MatchOutcome, MatchReport,
    SignProfile, TTable, Witness, WitnessMode,
};

/// Pretty printer writing every float with 17 significant digits.
struct FixedDigits<'a>(PrettyFormatter<'a>);

/// `x` with 17 significant digits, as plain decimal where that stays short.
pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-6..=16).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let (int_part, frac_part) = if point <= 0 {
        ("0".to_string(), "0".repeat((-point) as usize) + &digits)
    } else {
        let p = point as usize;
        (digits[..p].to_string(), digits[p..].to_string())
    };
    let frac = frac_part.trim_end_matches('0');
    let frac = if frac.is_empty() { "0" } else { frac };
    format!("{sign}{int_part}.{frac}")
}

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Pretty JSON with 17-significant-digit floats and a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report types serialize");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON is UTF-8")
}

/// Machine-readable error written to stderr on domain failures.
#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub error: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport {
            error: e.kind(),
            message: e.to_string(),
        }
    }
}

/// One polynomial indexed by a codeword.
#[derive(Clone, Debug, Serialize)]
pub struct PolyEntry {
    pub label: usize,
    pub codeword: String,
    pub coefficients: LossPolynomial,
    pub rendered: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign_profile: Option<SignProfile>,
}

fn entries(code: &LinearCode, polys: &[LossPolynomial], profiles: bool) -> Vec<PolyEntry> {
    polys
        .iter()
        .enumerate()
        .map(|(label, p)| PolyEntry {
            label,
            codeword: code.codeword(label).to_string(),
            coefficients: p.clone(),
            rendered: p.to_string(),
            sign_profile: profiles.then(|| sign_profile(p)),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GTableReport {
    pub decoder: String,
    pub entries: Vec<PolyEntry>,
    pub total: LossPolynomial,
    pub invariant_violations: Vec<InvariantViolation>,
}

impl GTableReport {
    pub fn new(g: &GTable) -> Self {
        GTableReport {
            decoder: g.label().to_string(),
            entries: entries(g.code(), g.entries(), false),
            total: g.total(),
            invariant_violations: g.invariant_violations(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub negative: usize,
    pub negative_codeword: String,
    pub positive: usize,
    pub positive_codeword: String,
}

impl WitnessReport {
    pub fn new(code: &LinearCode, w: Witness) -> Self {
        WitnessReport {
            negative: w.negative,
            negative_codeword: code.codeword(w.negative).to_string(),
            positive: w.positive,
            positive_codeword: code.codeword(w.positive).to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TTableReport {
    pub entries: Vec<PolyEntry>,
    pub total: LossPolynomial,
    /// A pair with opposite signs on all of (0, 1), if any.
    pub witness: Option<WitnessReport>,
}

impl TTableReport {
    pub fn new(t: &TTable) -> Self {
        TTableReport {
            entries: entries(t.code(), t.entries(), true),
            total: t.total(),
            witness: opposite_sign_witness(t, WitnessMode::Everywhere).map(|w| WitnessReport::new(t.code(), w)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatchSummary {
    pub outcome: &'static str,
    pub tied_words: usize,
    pub groups: usize,
    pub nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_violations: Option<Vec<InvariantViolation>>,
    /// Decoding table of the matching decoder, in word enumeration order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<u32>>,
}

impl MatchSummary {
    /// Summary without the wall-clock time, so reports are reproducible.
    pub fn new(report: &MatchReport) -> Self {
        let invariant_violations = match &report.outcome {
            MatchOutcome::InvariantViolation(v) => Some(v.clone()),
            _ => None,
        };
        MatchSummary {
            outcome: report.outcome.kind(),
            tied_words: report.tied_words,
            groups: report.groups,
            nodes: report.nodes,
            invariant_violations,
            table: report.outcome.decoder().map(|d| d.table().to_vec()),
        }
    }
}

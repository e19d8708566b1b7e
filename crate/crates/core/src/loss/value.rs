//! Value functions: a nonnegative value per codeword.

use serde::Serialize;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValueFunction {
    values: Vec<f64>,
    /// Label of the zero codeword of the code the values refer to.
    zero: usize,
}

impl ValueFunction {
    pub fn new(code: &LinearCode, values: Vec<f64>) -> Result<Self> {
        if values.len() != code.len() {
            return Err(Error::DimensionMismatch {
                expected: code.len(),
                found: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidArgument(format!(
                "values must be finite and nonnegative, got {v}"
            )));
        }
        Ok(Self {
            values,
            zero: code.zero_label(),
        })
    }

    /// 1 on every nonzero codeword: every decoding error costs 1.
    pub fn zero_one(code: &LinearCode) -> Self {
        let mut values = vec![1.0; code.len()];
        values[code.zero_label()] = 0.0;
        Self {
            values,
            zero: code.zero_label(),
        }
    }

    /// 1 on the zero codeword only.
    pub fn one_zero(code: &LinearCode) -> Self {
        let mut values = vec![0.0; code.len()];
        values[code.zero_label()] = 1.0;
        Self {
            values,
            zero: code.zero_label(),
        }
    }

    pub fn zero(code: &LinearCode) -> Self {
        Self {
            values: vec![0.0; code.len()],
            zero: code.zero_label(),
        }
    }

    /// Parses `codeword,value` rows (an optional header line is skipped).
    pub fn from_csv(code: &LinearCode, text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut values = vec![None; code.len()];
        for (k, record) in reader.records().enumerate() {
            let line = k + 1;
            let record = record.map_err(|e| Error::parse(line, e.to_string()))?;
            if record.len() != 2 {
                return Err(Error::parse(line, "expected `codeword,value`"));
            }
            let Ok(value) = record[1].parse::<f64>() else {
                if k == 0 {
                    continue; // header
                }
                return Err(Error::parse(line, format!("bad value {:?}", &record[1])));
            };
            let word = Word::parse(code.alphabet(), &record[0])
                .map_err(|e| Error::parse(line, e.to_string()))?;
            let label = code
                .label_of(&word)
                .ok_or_else(|| Error::parse(line, format!("{word} is not a codeword")))?;
            if values[label].replace(value).is_some() {
                return Err(Error::parse(line, format!("{word} listed twice")));
            }
        }
        if let Some(missing) = values.iter().position(Option::is_none) {
            return Err(Error::parse(
                0,
                format!("no value for codeword {}", code.codeword(missing)),
            ));
        }
        Self::new(code, values.into_iter().map(|v| v.unwrap_or(0.0)).collect())
    }

    pub fn to_csv(&self, code: &LinearCode) -> String {
        let mut out = String::from("codeword,value\n");
        for (label, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{v}\n", code.codeword(label)));
        }
        out
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn get(&self, label: usize) -> f64 {
        self.values[label]
    }

    /// `μ(0) = 0`.
    pub fn is_reasonable(&self) -> bool {
        self.values[self.zero] == 0.0
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// The representative of `[μ]` with largest value 1.
    pub fn canonicalize(&self) -> Result<Self> {
        let m = self.max();
        if m == 0.0 {
            return Err(Error::DegenerateValue("identically zero".into()));
        }
        Ok(Self {
            values: self.values.iter().map(|v| v / m).collect(),
            zero: self.zero,
        })
    }

    pub(crate) fn check(&self, code: &LinearCode) -> Result<()> {
        if self.values.len() != code.len() || self.zero != code.zero_label() {
            return Err(Error::CodeMismatch);
        }
        Ok(())
    }
}

//! Dowker–Thistlethwaite codes: parsing, canonical formatting and sign
//! classification.
//!
//! A code `{{n},{a1,...,an}}` pairs the odd traversal label `2i-1` with the
//! even label `|ai|`. The sign of `ai` records over/under at that crossing:
//! a positive label means the strand is under at the even visit. With this
//! convention a uniform-sign code describes an alternating diagram.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DtError {
    #[error("malformed DT code: {0}")]
    MalformedSyntax(String),
    #[error("DT code declares {declared} crossings but lists {actual} labels")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("invalid DT permutation: {0}")]
    InvalidPermutation(String),
    #[error("crossing position {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
}

/// A validated signed DT code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DtCode {
    labels: Vec<i32>,
}

/// Sign structure of a DT code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    Alternating,
    /// Exactly one entry carries the minority sign; `index` is 1-based.
    AlmostAlternating {
        index: usize,
    },
    Other,
}

impl DtCode {
    /// Builds a code from its signed even labels, checking that the absolute
    /// values are a permutation of `2, 4, ..., 2n`.
    pub fn new(labels: Vec<i32>) -> Result<Self, DtError> {
        let n = labels.len();
        let mut seen = vec![false; n];
        for &a in &labels {
            if a == 0 {
                return Err(DtError::InvalidPermutation("zero label".into()));
            }
            if a % 2 != 0 {
                return Err(DtError::InvalidPermutation(format!("odd label {a}")));
            }
            let m = a.unsigned_abs() as usize;
            if m > 2 * n {
                return Err(DtError::InvalidPermutation(format!(
                    "|{a}| exceeds 2n = {}",
                    2 * n
                )));
            }
            let slot = m / 2 - 1;
            if seen[slot] {
                return Err(DtError::InvalidPermutation(format!("repeated label {m}")));
            }
            seen[slot] = true;
        }
        Ok(DtCode { labels })
    }

    pub fn crossing_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn classify(&self) -> SignClass {
        let n = self.labels.len();
        if n <= 1 {
            return SignClass::Alternating;
        }
        let negatives = self.labels.iter().filter(|&&a| a < 0).count();
        if negatives == 0 || negatives == n {
            SignClass::Alternating
        } else if negatives == 1 {
            let index = self.labels.iter().position(|&a| a < 0).unwrap() + 1;
            SignClass::AlmostAlternating { index }
        } else if negatives == n - 1 {
            let index = self.labels.iter().position(|&a| a > 0).unwrap() + 1;
            SignClass::AlmostAlternating { index }
        } else {
            SignClass::Other
        }
    }

    /// Negates the label at 1-based position `index` (a crossing change).
    pub fn flip_crossing(&self, index: usize) -> Result<DtCode, DtError> {
        let n = self.labels.len();
        if index == 0 || index > n {
            return Err(DtError::IndexOutOfRange { index, n });
        }
        let mut labels = self.labels.clone();
        labels[index - 1] = -labels[index - 1];
        Ok(DtCode { labels })
    }
}

pub fn parse_dt(text: &str) -> Result<DtCode, DtError> {
    text.parse()
}

pub fn format_dt(code: &DtCode) -> String {
    code.to_string()
}

pub fn classify_signs(code: &DtCode) -> SignClass {
    code.classify()
}

pub fn flip_crossing(code: &DtCode, index: usize) -> Result<DtCode, DtError> {
    code.flip_crossing(index)
}

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{{{}}},{{", self.labels.len())?;
        for (i, a) in self.labels.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}}")
    }
}

impl FromStr for DtCode {
    type Err = DtError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let malformed = || DtError::MalformedSyntax(text.trim().to_string());

        let inner = compact
            .strip_prefix("{{")
            .and_then(|s| s.strip_suffix("}}"))
            .ok_or_else(malformed)?;
        let (count, list) = inner.split_once("},{").ok_or_else(malformed)?;
        if count.is_empty() || !count.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let declared: usize = count.parse().map_err(|_| malformed())?;

        let labels = if list.is_empty() {
            Vec::new()
        } else {
            list.split(',')
                .map(|tok| {
                    let digits = tok.strip_prefix('-').unwrap_or(tok);
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(malformed());
                    }
                    tok.parse::<i32>().map_err(|_| malformed())
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        if labels.len() != declared {
            return Err(DtError::LengthMismatch {
                declared,
                actual: labels.len(),
            });
        }
        DtCode::new(labels)
    }
}

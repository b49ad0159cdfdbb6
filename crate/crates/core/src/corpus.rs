//! The census of non-alternating 11- and 12-crossing knots whose Turaev genus
//! was in question, with their minimal DT codes and, where one was found, an
//! almost alternating representation.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::dt::{parse_dt, DtCode, SignClass};
use crate::tangle::{extract_substitutions, Alignment};

/// The corpus compiled into the binary.
pub const EMBEDDED_CORPUS: &str = include_str!("../data/corpus.tsv");

/// Expected counts of a complete corpus.
pub const EXPECTED_SUMMARY: CorpusSummary = CorpusSummary {
    resolved_12: 154,
    open_12: 35,
    resolved_11: 1,
    open_11: 2,
};

/// Representation diagrams in the census have at most this many crossings.
pub const MAX_REP_CROSSINGS: usize = 17;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("{name}: {message}")]
    Join { name: String, message: String },
    #[error("corpus counts {actual} differ from the expected {expected}")]
    CountMismatch {
        expected: CorpusSummary,
        actual: CorpusSummary,
    },
    #[error("{name}: {message}")]
    Validation { name: String, message: String },
    #[error("cannot read corpus: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Resolved,
    Open,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    /// Conway pair and DT pair tables.
    Tables,
    /// Knots left open.
    OpenTable,
    /// The 11-crossing knots discussed in the text.
    Prose,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConwayCheck {
    Applicable,
    NotAlignable,
    Anomalous,
}

impl Status {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "resolved" => Some(Status::Resolved),
            "open" => Some(Status::Open),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Resolved => "resolved",
            Status::Open => "open",
        }
    }
}

impl Source {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "table1+2" => Some(Source::Tables),
            "table3" => Some(Source::OpenTable),
            "prose" => Some(Source::Prose),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Tables => "table1+2",
            Source::OpenTable => "table3",
            Source::Prose => "prose",
        }
    }
}

impl ConwayCheck {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "applicable" => Some(ConwayCheck::Applicable),
            "not-alignable" => Some(ConwayCheck::NotAlignable),
            "anomalous" => Some(ConwayCheck::Anomalous),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ConwayCheck::Applicable => "applicable",
            ConwayCheck::NotAlignable => "not-alignable",
            ConwayCheck::Anomalous => "anomalous",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRow {
    pub name: String,
    pub status: Status,
    pub conway_min: String,
    pub conway_rep: Option<String>,
    pub dt_min: DtCode,
    pub dt_rep: Option<DtCode>,
    pub source: Source,
    pub conway_check: ConwayCheck,
}

impl CorpusRow {
    /// Crossing number encoded in the census name (`K12n176` → 12).
    pub fn census_crossings(&self) -> Option<usize> {
        census_crossings(&self.name)
    }
}

fn census_crossings(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('K')?;
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    let tail = &rest[digits.len()..];
    let index = tail.strip_prefix('n').or_else(|| tail.strip_prefix('a'))?;
    if index.is_empty() || !index.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CorpusSummary {
    pub resolved_12: usize,
    pub open_12: usize,
    pub resolved_11: usize,
    pub open_11: usize,
}

impl CorpusSummary {
    pub fn total(&self) -> usize {
        self.resolved_12 + self.open_12 + self.resolved_11 + self.open_11
    }
}

impl fmt::Display for CorpusSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}, {})",
            self.resolved_12, self.open_12, self.resolved_11, self.open_11
        )
    }
}

pub enum CorpusSource<'a> {
    Embedded,
    File(&'a Path),
}

/// Loads and validates a corpus.
pub fn load_corpus(source: CorpusSource<'_>) -> Result<Vec<CorpusRow>, CorpusError> {
    let text = match source {
        CorpusSource::Embedded => EMBEDDED_CORPUS.to_string(),
        CorpusSource::File(path) => std::fs::read_to_string(path)
            .map_err(|e| CorpusError::Io(format!("{}: {e}", path.display())))?,
    };
    let rows = parse_corpus(&text)?;
    validate_corpus(&rows)?;
    Ok(rows)
}

/// Parses corpus text without validating it.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusRow>, CorpusError> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        rows.push(parse_line(line, line_no)?);
    }
    Ok(rows)
}

fn parse_line(line: &str, line_no: usize) -> Result<CorpusRow, CorpusError> {
    let schema = |message: String| CorpusError::Schema {
        line: line_no,
        message,
    };
    let fields: Vec<&str> = line.split('\t').collect();
    if !(7..=8).contains(&fields.len()) {
        return Err(schema(format!(
            "expected 7 or 8 fields, found {}",
            fields.len()
        )));
    }
    let name = fields[0].trim();
    if census_crossings(name).is_none() {
        return Err(schema(format!("bad census name {name:?}")));
    }
    let status =
        Status::parse(fields[1]).ok_or_else(|| schema(format!("bad status {:?}", fields[1])))?;
    let conway_min = fields[2].trim().to_string();
    let conway_rep = Some(fields[3].trim())
        .filter(|s| !s.is_empty())
        .map(str::to_string);
    let dt_min = parse_dt(fields[4]).map_err(|e| schema(format!("dt_min: {e}")))?;
    let dt_rep = match fields[5].trim() {
        "" => None,
        s => Some(parse_dt(s).map_err(|e| schema(format!("dt_rep: {e}")))?),
    };
    let source =
        Source::parse(fields[6]).ok_or_else(|| schema(format!("bad source {:?}", fields[6])))?;
    let explicit = match fields.get(7).map(|s| s.trim()) {
        None | Some("") => None,
        Some(s) => {
            Some(ConwayCheck::parse(s).ok_or_else(|| schema(format!("bad conway_check {s:?}")))?)
        }
    };
    let conway_check = explicit.unwrap_or_else(|| match &conway_rep {
        Some(rep) => match extract_substitutions(&conway_min, rep) {
            Alignment::Aligned(subs) if !subs.is_empty() => ConwayCheck::Applicable,
            _ => ConwayCheck::NotAlignable,
        },
        None => ConwayCheck::NotAlignable,
    });
    if conway_rep.is_some() != dt_rep.is_some() {
        return Err(CorpusError::Join {
            name: name.to_string(),
            message: "present in only one of the Conway and DT tables".into(),
        });
    }
    Ok(CorpusRow {
        name: name.to_string(),
        status,
        conway_min,
        conway_rep,
        dt_min,
        dt_rep,
        source,
        conway_check,
    })
}

/// Re-checks every row invariant, then the totals.
pub fn validate_corpus(rows: &[CorpusRow]) -> Result<CorpusSummary, CorpusError> {
    let mut seen = HashSet::new();
    let mut summary = CorpusSummary::default();
    for row in rows {
        let fail = |message: String| CorpusError::Validation {
            name: row.name.clone(),
            message,
        };
        if !seen.insert(row.name.as_str()) {
            return Err(fail("duplicate name".into()));
        }
        let c = row
            .census_crossings()
            .ok_or_else(|| fail("bad census name".into()))?;
        if row.dt_min.crossing_count() != c {
            return Err(fail(format!(
                "dt_min has {} crossings, name says {c}",
                row.dt_min.crossing_count()
            )));
        }
        if row.dt_min.classify() != SignClass::Other {
            return Err(fail("dt_min does not have mixed signs".into()));
        }
        match (row.status, &row.dt_rep, &row.conway_rep) {
            (Status::Resolved, Some(rep), Some(_)) => {
                if !matches!(rep.classify(), SignClass::AlmostAlternating { .. }) {
                    return Err(fail("dt_rep is not almost alternating".into()));
                }
                let n = rep.crossing_count();
                if n <= c || n > MAX_REP_CROSSINGS {
                    return Err(fail(format!("dt_rep has {n} crossings")));
                }
            }
            (Status::Open, None, None) => {}
            (Status::Resolved, ..) => {
                return Err(fail("resolved row lacks a representation".into()))
            }
            (Status::Open, ..) => return Err(fail("open row carries a representation".into())),
        }
        match (c, row.status) {
            (12, Status::Resolved) => summary.resolved_12 += 1,
            (12, Status::Open) => summary.open_12 += 1,
            (11, Status::Resolved) => summary.resolved_11 += 1,
            (11, Status::Open) => summary.open_11 += 1,
            _ => return Err(fail(format!("unexpected crossing number {c}"))),
        }
    }
    if summary != EXPECTED_SUMMARY {
        return Err(CorpusError::CountMismatch {
            expected: EXPECTED_SUMMARY,
            actual: summary,
        });
    }
    Ok(summary)
}

/// Formats a row back into the corpus file format.
pub fn format_row(row: &CorpusRow) -> String {
    [
        row.name.clone(),
        row.status.as_str().to_string(),
        row.conway_min.clone(),
        row.conway_rep.clone().unwrap_or_default(),
        row.dt_min.to_string(),
        row.dt_rep
            .as_ref()
            .map(DtCode::to_string)
            .unwrap_or_default(),
        row.source.as_str().to_string(),
        row.conway_check.as_str().to_string(),
    ]
    .join("\t")
}

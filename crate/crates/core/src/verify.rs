//! Per-row verification of the census and the report built from it.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::corpus::{format_row, ConwayCheck, CorpusRow, Status};
use crate::diagram::turaev_genus;
use crate::dt::SignClass;
use crate::poly::{equal_up_to_mirror, jones, span_t, LaurentPoly};
use crate::realize::{realize, PlanarDiagram};
use crate::tangle::{extract_substitutions, verify_substitution, Alignment};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Stated in every report: what the checks do not establish.
pub const TRUST_NOTE: &str =
    "knot-level facts (no alternating diagram exists, minimal crossing number) \
are taken from the census; the checks establish diagram-level genus and Jones equivalence only";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CheckOutcome {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
    /// A failure on a row whose Conway data is known to be suspect.
    #[serde(rename = "warn")]
    Warning,
}

impl CheckOutcome {
    fn of(ok: bool) -> Self {
        if ok {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckOutcome::Pass => "pass",
            CheckOutcome::Fail => "fail",
            CheckOutcome::NotApplicable => "n/a",
            CheckOutcome::Warning => "warn",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Checks {
    pub realizable_min: CheckOutcome,
    pub realizable_rep: CheckOutcome,
    pub rep_almost_alternating: CheckOutcome,
    pub jones_match_up_to_mirror: CheckOutcome,
    pub genus_rep_equals_1: CheckOutcome,
    pub genus_min_at_least_1: CheckOutcome,
    pub span_lt_crossing_number: CheckOutcome,
    pub conway_substitutions_ok: CheckOutcome,
}

pub const CHECK_NAMES: [&str; 8] = [
    "realizable_min",
    "realizable_rep",
    "rep_almost_alternating",
    "jones_match_up_to_mirror",
    "genus_rep_equals_1",
    "genus_min_at_least_1",
    "span_lt_crossing_number",
    "conway_substitutions_ok",
];

impl Checks {
    fn not_applicable() -> Self {
        let na = CheckOutcome::NotApplicable;
        Checks {
            realizable_min: na,
            realizable_rep: na,
            rep_almost_alternating: na,
            jones_match_up_to_mirror: na,
            genus_rep_equals_1: na,
            genus_min_at_least_1: na,
            span_lt_crossing_number: na,
            conway_substitutions_ok: na,
        }
    }

    /// Outcomes in the order the checks run.
    pub fn outcomes(&self) -> [CheckOutcome; 8] {
        [
            self.realizable_min,
            self.realizable_rep,
            self.rep_almost_alternating,
            self.jones_match_up_to_mirror,
            self.genus_rep_equals_1,
            self.genus_min_at_least_1,
            self.span_lt_crossing_number,
            self.conway_substitutions_ok,
        ]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, CheckOutcome)> {
        CHECK_NAMES.into_iter().zip(self.outcomes())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "VERIFIED")]
    Verified,
    #[serde(rename = "FAILED")]
    Failed,
    #[serde(rename = "OPEN")]
    Open,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Verified => "VERIFIED",
            Verdict::Failed => "FAILED",
            Verdict::Open => "OPEN",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowResult {
    pub name: String,
    pub verdict: Verdict,
    pub checks: Checks,
    pub jones_min: Option<String>,
    pub span: Option<u32>,
    pub genus_min: Option<usize>,
    pub genus_rep: Option<usize>,
    pub warnings: Vec<String>,
}

fn jones_of(pd: Option<&PlanarDiagram>) -> Option<LaurentPoly> {
    pd.and_then(|pd| jones(pd).ok())
}

/// Runs every check on one row. Failures are recorded, never raised.
pub fn verify_row(row: &CorpusRow) -> RowResult {
    let mut checks = Checks::not_applicable();
    let mut warnings = Vec::new();
    let crossing_number = row
        .census_crossings()
        .unwrap_or(row.dt_min.crossing_count());

    let min_pd = realize(&row.dt_min).ok();
    checks.realizable_min = CheckOutcome::of(min_pd.is_some());

    let rep = match (row.status, &row.dt_rep) {
        (Status::Resolved, Some(code)) => Some(code),
        _ => None,
    };
    let rep_pd = rep.and_then(|code| realize(code).ok());
    let jones_min = jones_of(min_pd.as_ref());

    if let Some(code) = rep {
        checks.realizable_rep = CheckOutcome::of(rep_pd.is_some());
        checks.rep_almost_alternating = CheckOutcome::of(matches!(
            code.classify(),
            SignClass::AlmostAlternating { .. }
        ));
        let jones_rep = jones_of(rep_pd.as_ref());
        checks.jones_match_up_to_mirror = CheckOutcome::of(match (&jones_min, &jones_rep) {
            (Some(a), Some(b)) => equal_up_to_mirror(a, b),
            _ => false,
        });
    }
    let genus_rep = rep_pd.as_ref().and_then(|pd| turaev_genus(pd).ok());
    if rep.is_some() {
        checks.genus_rep_equals_1 = CheckOutcome::of(genus_rep == Some(1));
    }

    let genus_min = min_pd.as_ref().and_then(|pd| turaev_genus(pd).ok());
    checks.genus_min_at_least_1 = CheckOutcome::of(genus_min.is_some_and(|g| g >= 1));
    let span = jones_min.as_ref().and_then(|p| span_t(p).ok());
    checks.span_lt_crossing_number =
        CheckOutcome::of(span.is_some_and(|s| (s as usize) < crossing_number));

    if let (Some(_), Some(conway_rep)) = (rep, &row.conway_rep) {
        checks.conway_substitutions_ok = conway_check(row, conway_rep, &mut warnings);
    }

    let verdict = match row.status {
        Status::Open => Verdict::Open,
        Status::Resolved if checks.outcomes().contains(&CheckOutcome::Fail) => Verdict::Failed,
        Status::Resolved => Verdict::Verified,
    };
    RowResult {
        name: row.name.clone(),
        verdict,
        checks,
        jones_min: jones_min.map(|p| p.to_string()),
        span,
        genus_min,
        genus_rep,
        warnings,
    }
}

fn conway_check(row: &CorpusRow, conway_rep: &str, warnings: &mut Vec<String>) -> CheckOutcome {
    if row.conway_check == ConwayCheck::NotAlignable {
        return CheckOutcome::NotApplicable;
    }
    let failure = match extract_substitutions(&row.conway_min, conway_rep) {
        Alignment::Aligned(subs) if subs.is_empty() => return CheckOutcome::NotApplicable,
        Alignment::Aligned(subs) => {
            let bad: Vec<String> = subs
                .iter()
                .filter(|s| !verify_substitution(&s.left, &s.right))
                .map(|s| {
                    format!(
                        "substitution {} -> {} changes the fraction from {} to {}",
                        s.left.to_conway(),
                        s.right.to_conway(),
                        s.left.fraction(),
                        s.right.fraction()
                    )
                })
                .collect();
            if bad.is_empty() {
                return CheckOutcome::Pass;
            }
            bad.join("; ")
        }
        Alignment::NotAlignable(reason) => format!("Conway strings do not align: {reason}"),
    };
    if row.conway_check == ConwayCheck::Anomalous {
        warnings.push(format!("suspected Conway erratum: {failure}"));
        CheckOutcome::Warning
    } else {
        warnings.push(failure);
        CheckOutcome::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Totals {
    pub verified: usize,
    pub failed: usize,
    pub open: usize,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub rows: Vec<RowResult>,
    pub totals: Totals,
    pub duration: Duration,
    pub tool_version: &'static str,
    pub corpus_digest: String,
}

impl VerificationReport {
    pub fn exit_ok(&self) -> bool {
        self.totals.failed == 0
    }
}

/// SHA-256 of the canonical rendering of the rows.
pub fn corpus_digest(rows: &[CorpusRow]) -> String {
    let mut hasher = Sha256::new();
    for row in rows {
        hasher.update(format_row(row).as_bytes());
        hasher.update(b"\n");
    }
    hasher
        .finalize()
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// Census order: crossing number, then index (`K11n183` < `K12n176` < `K12n1000`).
fn census_key(name: &str) -> (usize, String, u64, String) {
    let rest = name.strip_prefix('K').unwrap_or(name);
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    let crossings = rest[..digits].parse().unwrap_or(usize::MAX);
    let tail = &rest[digits..];
    let kind: String = tail.chars().take_while(|c| !c.is_ascii_digit()).collect();
    let index = tail[kind.len()..].parse().unwrap_or(u64::MAX);
    (crossings, kind, index, name.to_string())
}

/// Verifies every row on a pool of `workers` threads. The report does not
/// depend on the worker count.
pub fn verify_all(rows: &[CorpusRow], workers: usize) -> VerificationReport {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let mut results: Vec<RowResult> = pool.install(|| rows.par_iter().map(verify_row).collect());
    results.sort_by_cached_key(|r| census_key(&r.name));
    let mut totals = Totals::default();
    for r in &results {
        match r.verdict {
            Verdict::Verified => totals.verified += 1,
            Verdict::Failed => totals.failed += 1,
            Verdict::Open => totals.open += 1,
        }
    }
    VerificationReport {
        rows: results,
        totals,
        duration: start.elapsed(),
        tool_version: TOOL_VERSION,
        corpus_digest: corpus_digest(rows),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

/// Renders the report. The body is deterministic unless `with_duration`.
pub fn render(report: &VerificationReport, format: ReportFormat, with_duration: bool) -> String {
    match format {
        ReportFormat::Text => render_text(report, with_duration),
        ReportFormat::Json => render_json(report, with_duration),
        ReportFormat::Csv => render_csv(report),
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn render_text(report: &VerificationReport, with_duration: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "turaev-verify {}", report.tool_version);
    let _ = writeln!(out, "corpus sha256 {}", report.corpus_digest);
    let _ = writeln!(out);
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{:<9} {:<8} genus_min={} genus_rep={} span={}",
            r.name,
            r.verdict.as_str(),
            opt(&r.genus_min),
            opt(&r.genus_rep),
            opt(&r.span)
        );
        let failing: Vec<String> = r
            .checks
            .iter()
            .filter(|(_, o)| matches!(o, CheckOutcome::Fail | CheckOutcome::Warning))
            .map(|(name, o)| format!("{name}={}", o.as_str()))
            .collect();
        if !failing.is_empty() {
            let _ = writeln!(out, "          checks: {}", failing.join(" "));
        }
        for w in &r.warnings {
            let _ = writeln!(out, "          warning: {w}");
        }
    }
    let t = report.totals;
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "verified {}  failed {}  open {}  total {}",
        t.verified,
        t.failed,
        t.open,
        report.rows.len()
    );
    let _ = writeln!(out, "note: {TRUST_NOTE}");
    if with_duration {
        let _ = writeln!(out, "duration {:.3}s", report.duration.as_secs_f64());
    }
    out
}

#[derive(Serialize)]
struct JsonSummary<'a> {
    verified: usize,
    failed: usize,
    open: usize,
    total: usize,
    tool_version: &'a str,
    corpus_digest: &'a str,
    note: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    duration_seconds: Option<f64>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    rows: &'a [RowResult],
    summary: JsonSummary<'a>,
}

fn render_json(report: &VerificationReport, with_duration: bool) -> String {
    let doc = JsonReport {
        rows: &report.rows,
        summary: JsonSummary {
            verified: report.totals.verified,
            failed: report.totals.failed,
            open: report.totals.open,
            total: report.rows.len(),
            tool_version: report.tool_version,
            corpus_digest: &report.corpus_digest,
            note: TRUST_NOTE,
            duration_seconds: with_duration.then_some(report.duration.as_secs_f64()),
        },
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn render_csv(report: &VerificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["name", "verdict"];
    header.extend(CHECK_NAMES);
    header.extend(["jones_min", "span", "genus_min", "genus_rep", "warnings"]);
    w.write_record(&header).expect("in-memory write");
    for r in &report.rows {
        let mut rec = vec![r.name.clone(), r.verdict.as_str().to_string()];
        rec.extend(r.checks.outcomes().iter().map(|o| o.as_str().to_string()));
        rec.push(r.jones_min.clone().unwrap_or_default());
        rec.push(r.span.map(|s| s.to_string()).unwrap_or_default());
        rec.push(r.genus_min.map(|g| g.to_string()).unwrap_or_default());
        rec.push(r.genus_rep.map(|g| g.to_string()).unwrap_or_default());
        rec.push(r.warnings.join("; "));
        w.write_record(&rec).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

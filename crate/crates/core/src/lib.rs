//! Almost alternating knot diagrams: DT code realization, Kauffman states,
//! the Jones polynomial, Turaev surface genus and rational tangle rewriting,
//! plus a verifier for a census of non-alternating knots.

pub mod corpus;
pub mod diagram;
pub mod dt;
pub mod poly;
pub mod realize;
pub mod tangle;
mod unionfind;
pub mod verify;

pub use corpus::{load_corpus, validate_corpus, CorpusRow, CorpusSource, CorpusSummary};
pub use diagram::{mirror, state_loops, turaev_genus, writhe, Smoothing, State};
pub use dt::{classify_signs, flip_crossing, format_dt, parse_dt, DtCode, SignClass};
pub use poly::{bracket, equal_up_to_mirror, jones, span_t, LaurentPoly, Variable};
pub use realize::{realize, Crossing, PlanarDiagram};
pub use tangle::{
    extract_substitutions, fraction, parse_word, synthesize_one_minus_one, verify_substitution,
    ExtendedRational, TangleWord,
};
pub use verify::{verify_all, verify_row, RowResult, Verdict, VerificationReport};

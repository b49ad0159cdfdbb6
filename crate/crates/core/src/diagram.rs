//! Kauffman states, loop counts, writhe, mirroring and the genus of the
//! Turaev surface of a diagram.
//!
//! At a crossing with slots `a, b, c, d` (counterclockwise from the incoming
//! under-strand) the over-strand is `b–d`. The A-smoothing joins strand end
//! `b` to `c` and `d` to `a`; the B-smoothing joins `a` to `b` and `c` to `d`.
//! Paired with the crossing sign of [`Crossing::sign`] this keeps the
//! normalized bracket invariant under a first Reidemeister move. Jones
//! polynomials therefore come out mirrored relative to the right-handed
//! convention, which every comparison here absorbs.

use thiserror::Error;

use crate::realize::{Crossing, PlanarDiagram};
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("state has {state} entries but the diagram has {crossings} crossings")]
    StateLengthMismatch { state: usize, crossings: usize },
    #[error("diagram is disconnected")]
    DisconnectedDiagram,
    #[error("state sums are limited to 63 crossings, got {0}")]
    TooManyCrossings(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

/// A choice of smoothing at every crossing, packed as bits (set = B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct State {
    len: usize,
    bits: u64,
}

impl State {
    pub fn all_a(len: usize) -> Self {
        State { len, bits: 0 }
    }

    pub fn all_b(len: usize) -> Self {
        let bits = if len >= 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        State { len, bits }
    }

    /// Bit `i` of `bits` selects the B-smoothing at crossing `i + 1`.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        let mask = if len >= 64 {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        State {
            len,
            bits: bits & mask,
        }
    }

    pub fn from_smoothings(smoothings: &[Smoothing]) -> Self {
        let bits = smoothings
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Smoothing::B)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        State {
            len: smoothings.len(),
            bits,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn smoothing(&self, crossing: usize) -> Smoothing {
        if self.bits >> crossing & 1 == 1 {
            Smoothing::B
        } else {
            Smoothing::A
        }
    }

    /// Number of A-smoothings.
    pub fn a_count(&self) -> usize {
        self.len - self.bits.count_ones() as usize
    }

    /// Number of B-smoothings.
    pub fn b_count(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

/// Loop counts of the all-A and all-B states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateLoopCounts {
    pub s_a: usize,
    pub s_b: usize,
}

/// Reusable loop counter for evaluating many states of one diagram.
pub(crate) struct LoopCounter<'a> {
    crossings: &'a [Crossing],
    uf: UnionFind,
}

impl<'a> LoopCounter<'a> {
    pub(crate) fn new(pd: &'a PlanarDiagram) -> Self {
        LoopCounter {
            crossings: pd.crossings(),
            uf: UnionFind::new(pd.edge_count()),
        }
    }

    pub(crate) fn loops(&mut self, bits: u64) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        self.uf.reset(2 * self.crossings.len());
        for (i, c) in self.crossings.iter().enumerate() {
            let [a, b, cc, d] = c.slots.map(|e| e - 1);
            if bits >> i & 1 == 0 {
                self.uf.union(b, cc);
                self.uf.union(d, a);
            } else {
                self.uf.union(a, b);
                self.uf.union(cc, d);
            }
        }
        self.uf.components()
    }
}

/// Number of closed curves after smoothing every crossing according to `state`.
pub fn state_loops(pd: &PlanarDiagram, state: &State) -> Result<usize, DiagramError> {
    let n = pd.crossing_count();
    if state.len() != n {
        return Err(DiagramError::StateLengthMismatch {
            state: state.len(),
            crossings: n,
        });
    }
    if n > 63 {
        return Err(DiagramError::TooManyCrossings(n));
    }
    Ok(LoopCounter::new(pd).loops(state.bits()))
}

pub fn extreme_state_loops(pd: &PlanarDiagram) -> Result<StateLoopCounts, DiagramError> {
    let n = pd.crossing_count();
    Ok(StateLoopCounts {
        s_a: state_loops(pd, &State::all_a(n))?,
        s_b: state_loops(pd, &State::all_b(n))?,
    })
}

/// Genus of the Turaev surface of `pd`: `(c + 2 - s_A - s_B) / 2`.
pub fn turaev_genus(pd: &PlanarDiagram) -> Result<usize, DiagramError> {
    if !pd.is_connected() {
        return Err(DiagramError::DisconnectedDiagram);
    }
    let counts = extreme_state_loops(pd)?;
    let c = pd.crossing_count();
    let total = counts.s_a + counts.s_b;
    debug_assert!(total <= c + 2 && (c + total).is_multiple_of(2));
    Ok((c + 2 - total) / 2)
}

pub fn writhe(pd: &PlanarDiagram) -> i32 {
    pd.crossings().iter().map(Crossing::sign).sum()
}

/// Reflection of the diagram: every rotation is reversed, keeping the incoming
/// under-strand in slot 0.
pub fn mirror(pd: &PlanarDiagram) -> PlanarDiagram {
    let crossings = pd
        .crossings()
        .iter()
        .map(|c| {
            let [a, b, cc, d] = c.slots;
            Crossing {
                slots: [a, d, cc, b],
                over_in: 4 - c.over_in,
            }
        })
        .collect();
    PlanarDiagram::from_crossings_unchecked(crossings)
}

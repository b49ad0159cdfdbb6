//! Planar diagrams and the realization of DT codes.
//!
//! A [`PlanarDiagram`] stores, for each crossing, the four incident edges in
//! counterclockwise order starting from the incoming under-strand (the PD
//! convention). Edges are numbered `1..=2n` along the traversal; edge `k` runs
//! from the `k`-th crossing visit to the `(k+1)`-th.
//!
//! Realization searches the local orientations of the crossings. At each
//! crossing the strand of the even visit crosses the strand of the odd visit
//! either from its right or from its left; for a fixed Gauss sequence these
//! `n` bits determine the rotation system, which is planar exactly when face
//! tracing finds `n + 2` faces. The bit of crossing 1 is pinned to resolve the
//! mirror ambiguity.

use std::fmt;

use thiserror::Error;

use crate::dt::DtCode;

/// Largest crossing count accepted by the orientation search.
pub const MAX_REALIZE_CROSSINGS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("not realizable: {0}")]
    NotRealizable(String),
    #[error("code has {0} crossings, above the search limit of {MAX_REALIZE_CROSSINGS}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("edge {0} must appear exactly twice")]
    EdgeMultiplicity(usize),
    #[error("edge label {0} out of range")]
    EdgeRange(usize),
    #[error("crossing {0}: under-strand edges are not consecutive")]
    UnderStrand(usize),
    #[error("crossing {0}: over-strand edges are not consecutive")]
    OverStrand(usize),
    #[error("rotation system is not planar: {faces} faces, expected {expected}")]
    NotPlanar { faces: usize, expected: usize },
}

/// One crossing of a planar diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Edge labels (1-based) in counterclockwise order; slot 0 is the incoming
    /// under-strand and slot 2 the outgoing under-strand.
    pub slots: [usize; 4],
    /// Slot (1 or 3) holding the incoming over-strand.
    pub over_in: u8,
}

impl Crossing {
    /// `+1` when the over-strand runs from slot 1 to slot 3. Rotating the
    /// under-strand direction a quarter turn counterclockwise then points
    /// along the over-strand.
    pub fn sign(&self) -> i32 {
        if self.over_in == 1 {
            1
        } else {
            -1
        }
    }

    fn is_head_slot(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in as usize
    }
}

/// A knot diagram on the sphere with its rotation system and crossing data.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
}

impl PlanarDiagram {
    /// The crossingless unknot diagram.
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
        }
    }

    /// Builds a diagram from PD quadruples `[a, b, c, d]` listed
    /// counterclockwise from the incoming under-edge, with edges numbered
    /// consecutively along the knot.
    pub fn from_pd(pd: &[[usize; 4]]) -> Result<Self, PdError> {
        let n = pd.len();
        let edges = 2 * n;
        let mut count = vec![0usize; edges + 1];
        for quad in pd {
            for &e in quad {
                if e == 0 || e > edges {
                    return Err(PdError::EdgeRange(e));
                }
                count[e] += 1;
            }
        }
        if let Some(e) = (1..=edges).find(|&e| count[e] != 2) {
            return Err(PdError::EdgeMultiplicity(e));
        }
        let next = |e: usize| e % edges + 1;

        let mut crossings = Vec::with_capacity(n);
        for (i, &[a, b, c, d]) in pd.iter().enumerate() {
            if next(a) != c {
                return Err(PdError::UnderStrand(i + 1));
            }
            let over_in = if n == 1 {
                // both over slots satisfy the successor test; the over-strand
                // enters on the edge that leaves along the under-strand
                if b == c {
                    1
                } else {
                    3
                }
            } else if next(b) == d {
                1
            } else if next(d) == b {
                3
            } else {
                return Err(PdError::OverStrand(i + 1));
            };
            crossings.push(Crossing {
                slots: [a, b, c, d],
                over_in,
            });
        }
        let pd = PlanarDiagram { crossings };
        let faces = pd.face_count();
        if faces != n + 2 {
            return Err(PdError::NotPlanar {
                faces,
                expected: n + 2,
            });
        }
        Ok(pd)
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// PD quadruples, one per crossing.
    pub fn pd_code(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(|c| c.slots).collect()
    }

    /// Number of faces of the embedded 4-valent graph, i.e. orbits of the
    /// face-tracing permutation. The crossingless diagram has 2 faces.
    pub fn face_count(&self) -> usize {
        if self.crossings.is_empty() {
            return 2;
        }
        count_faces(&self.crossings)
    }

    /// Whether the underlying 4-valent graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        if n == 0 {
            return true;
        }
        let ends = edge_ends(&self.crossings);
        let mut uf = crate::unionfind::UnionFind::new(n);
        for [(c0, _), (c1, _)] in ends {
            uf.union(c0, c1);
        }
        uf.components() == 1
    }

    /// Text dump, one line per crossing: `Xi: (a, b, c, d) sign=±1`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.crossings.iter().enumerate() {
            let [a, b, cc, d] = c.slots;
            let sign = if c.sign() > 0 { "+1" } else { "-1" };
            out.push_str(&format!("X{}: ({a}, {b}, {cc}, {d}) sign={sign}\n", i + 1));
        }
        out
    }

    pub(crate) fn from_crossings_unchecked(crossings: Vec<Crossing>) -> Self {
        PlanarDiagram { crossings }
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dump())
    }
}

pub fn face_count(pd: &PlanarDiagram) -> usize {
    pd.face_count()
}

/// For each edge (0-based), its `(crossing, slot)` tail and head.
pub(crate) fn edge_ends(crossings: &[Crossing]) -> Vec<[(usize, usize); 2]> {
    let mut ends = vec![[(usize::MAX, 0); 2]; 2 * crossings.len()];
    for (ci, c) in crossings.iter().enumerate() {
        for s in 0..4 {
            let e = c.slots[s] - 1;
            let which = usize::from(c.is_head_slot(s));
            ends[e][which] = (ci, s);
        }
    }
    ends
}

fn count_faces(crossings: &[Crossing]) -> usize {
    let darts = 4 * crossings.len();
    // opposite[d] = dart at the other end of the same edge
    let mut opposite = vec![0usize; darts];
    for [(c0, s0), (c1, s1)] in edge_ends(crossings) {
        let d0 = 4 * c0 + s0;
        let d1 = 4 * c1 + s1;
        opposite[d0] = d1;
        opposite[d1] = d0;
    }
    trace_orbits(&opposite)
}

/// Counts orbits of `d -> rot(opposite(d))`, where `rot` advances one slot
/// counterclockwise around the same crossing.
fn trace_orbits(opposite: &[usize]) -> usize {
    let darts = opposite.len();
    let mut seen = vec![false; darts];
    let mut faces = 0;
    for start in 0..darts {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            let o = opposite[d];
            d = (o & !3) | ((o + 1) & 3);
        }
    }
    faces
}

/// Gauss data of a DT code: the two visits of each crossing, and which one
/// passes under.
struct Gauss {
    /// (odd visit, even visit, even visit is under), visits 1-based
    visits: Vec<(usize, usize, bool)>,
}

impl Gauss {
    fn new(code: &DtCode) -> Self {
        let visits = code
            .labels()
            .iter()
            .enumerate()
            .map(|(i, &a)| (2 * i + 1, a.unsigned_abs() as usize, a > 0))
            .collect();
        Gauss { visits }
    }

    /// Crossing records for a choice of local orientations. With `bit` clear
    /// the even-visit strand crosses the odd-visit strand from its right.
    fn crossings(&self, bits: u64) -> Vec<Crossing> {
        let edges = 2 * self.visits.len();
        let incoming = |v: usize| if v == 1 { edges } else { v - 1 };
        self.visits
            .iter()
            .enumerate()
            .map(|(i, &(p, q, even_under))| {
                let (in_p, out_p, in_q, out_q) = (incoming(p), p, incoming(q), q);
                let right = bits >> i & 1 == 0;
                // counterclockwise, starting at the incoming odd strand
                let ring = if right {
                    [in_p, in_q, out_p, out_q]
                } else {
                    [in_p, out_q, out_p, in_q]
                };
                let (slots, over_in) = match (even_under, right) {
                    (false, true) => (ring, 1),
                    (false, false) => (ring, 3),
                    (true, true) => ([ring[1], ring[2], ring[3], ring[0]], 3),
                    (true, false) => ([ring[3], ring[0], ring[1], ring[2]], 1),
                };
                Crossing { slots, over_in }
            })
            .collect()
    }
}

/// Realizes a DT code as a planar diagram.
///
/// Orientation assignments are tried in increasing binary order with crossing
/// 1 fixed, and the first planar one is returned, so the output is
/// deterministic.
pub fn realize(code: &DtCode) -> Result<PlanarDiagram, RealizeError> {
    let n = code.crossing_count();
    if n == 0 {
        return Ok(PlanarDiagram::unknot());
    }
    if n > MAX_REALIZE_CROSSINGS {
        return Err(RealizeError::TooLarge(n));
    }
    let gauss = Gauss::new(code);
    let target = n + 2;
    let candidates: u64 = 1 << (n - 1);
    for mask in 0..candidates {
        let crossings = gauss.crossings(mask << 1);
        if count_faces(&crossings) == target {
            let pd = PlanarDiagram { crossings };
            if !pd.is_connected() {
                return Err(RealizeError::NotRealizable(
                    "diagram graph is disconnected".into(),
                ));
            }
            return Ok(pd);
        }
    }
    Err(RealizeError::NotRealizable(format!(
        "none of the {candidates} orientation assignments yields {target} faces"
    )))
}

//! Reference implementations used only by the tests. Each one is written
//! against PD quadruples or raw DT labels, not against library internals.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use turaev_verify::corpus::{parse_corpus, CorpusRow, EMBEDDED_CORPUS};
use turaev_verify::poly::{LaurentPoly, Variable};
use turaev_verify::{DtCode, PlanarDiagram};

pub type Poly = BTreeMap<i32, i64>;

pub fn corpus() -> Vec<CorpusRow> {
    parse_corpus(EMBEDDED_CORPUS).expect("embedded corpus parses")
}

pub fn to_laurent(var: Variable, p: &Poly) -> LaurentPoly {
    LaurentPoly::from_terms(var, p.iter().map(|(&e, &c)| (e, c)))
}

fn poly_mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            *out.entry(e1 + e2).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Position `4 * crossing + slot`.
fn edge_partner(pd: &[[usize; 4]]) -> Vec<usize> {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    let mut partner = vec![usize::MAX; 4 * pd.len()];
    for (x, quad) in pd.iter().enumerate() {
        for (s, &e) in quad.iter().enumerate() {
            let p = 4 * x + s;
            if let Some(q) = seen.remove(&e) {
                partner[p] = q;
                partner[q] = p;
            } else {
                seen.insert(e, p);
            }
        }
    }
    assert!(seen.is_empty(), "every edge appears twice");
    partner
}

/// Closed curves formed by following edges and the given in-crossing joins.
fn trace_loops(edge: &[usize], join: &[usize]) -> usize {
    let mut visited = vec![false; edge.len()];
    let mut loops = 0;
    for start in 0..edge.len() {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut p = start;
        loop {
            visited[p] = true;
            let q = edge[p];
            visited[q] = true;
            p = join[q];
            if p == start {
                break;
            }
        }
    }
    loops
}

/// Kauffman bracket by recursive skein expansion: `<X> = A <A-smoothing> +
/// A^-1 <B-smoothing>`, evaluating each fully smoothed diagram by tracing its
/// curves. The A-smoothing joins slots 1-2 and 3-0 of each quadruple.
pub fn skein_bracket(pd: &[[usize; 4]]) -> Poly {
    if pd.is_empty() {
        return Poly::from([(0, 1)]);
    }
    let edge = edge_partner(pd);
    let mut join = vec![0; 4 * pd.len()];
    let mut out = Poly::new();
    let delta = Poly::from([(2, -1), (-2, -1)]);
    expand(pd.len(), 0, 0, &edge, &mut join, &delta, &mut out);
    out.retain(|_, c| *c != 0);
    out
}

fn expand(
    n: usize,
    x: usize,
    a_exp: i32,
    edge: &[usize],
    join: &mut [usize],
    delta: &Poly,
    out: &mut Poly,
) {
    if x == n {
        let loops = trace_loops(edge, join);
        let mut term = Poly::from([(a_exp, 1)]);
        for _ in 1..loops {
            term = poly_mul(&term, delta);
        }
        for (e, c) in term {
            *out.entry(e).or_insert(0) += c;
        }
        return;
    }
    let [a, b, c, d] = [4 * x, 4 * x + 1, 4 * x + 2, 4 * x + 3];
    for (pairs, step) in [([(b, c), (d, a)], 1), ([(a, b), (c, d)], -1)] {
        for (p, q) in pairs {
            join[p] = q;
            join[q] = p;
        }
        expand(n, x + 1, a_exp + step, edge, join, delta, out);
    }
}

/// Loops of one state, bit `i` set meaning the B-smoothing at crossing `i`.
pub fn traced_state_loops(pd: &[[usize; 4]], bits: u64) -> usize {
    if pd.is_empty() {
        return 1;
    }
    let edge = edge_partner(pd);
    let mut join = vec![0; 4 * pd.len()];
    for x in 0..pd.len() {
        let [a, b, c, d] = [4 * x, 4 * x + 1, 4 * x + 2, 4 * x + 3];
        let pairs = if bits >> x & 1 == 0 {
            [(b, c), (d, a)]
        } else {
            [(a, b), (c, d)]
        };
        for (p, q) in pairs {
            join[p] = q;
            join[q] = p;
        }
    }
    trace_loops(&edge, &join)
}

/// A Gauss word that splits: some proper cyclic block of visits contains
/// both visits of every crossing it touches.
pub fn dt_is_split(labels: &[i32]) -> bool {
    let n = labels.len();
    let m = 2 * n;
    let mut partner = vec![0usize; m];
    for (i, &a) in labels.iter().enumerate() {
        let (p, q) = (2 * i, a.unsigned_abs() as usize - 1);
        partner[p] = q;
        partner[q] = p;
    }
    (0..m).any(|start| {
        (1..n).any(|k| {
            let len = 2 * k;
            let inside = |v: usize| (v + m - start) % m < len;
            (0..len).all(|j| inside(partner[(start + j) % m]))
        })
    })
}

/// Writhe read off PD quadruples: a crossing is positive when its over-strand
/// runs from slot 1 to slot 3.
pub fn pd_writhe(pd: &[[usize; 4]]) -> i32 {
    let m = 2 * pd.len();
    let next = |e: usize| e % m + 1;
    pd.iter()
        .map(|&[_, b, c, d]| {
            let forward = if pd.len() == 1 { b == c } else { next(b) == d };
            if forward {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// Jones polynomial in `t` from the skein bracket.
pub fn skein_jones(pd: &[[usize; 4]]) -> Poly {
    let w = pd_writhe(pd);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    skein_bracket(pd)
        .into_iter()
        .map(|(e, c)| {
            let e = e - 3 * w;
            assert_eq!(e % 4, 0, "normalized bracket exponent {e}");
            (-e / 4, sign * c)
        })
        .collect()
}

/// Faces of the rotation system given by PD quadruples, counted as orbits of
/// "cross the edge, then step to the next slot counterclockwise".
pub fn pd_face_count(pd: &[[usize; 4]]) -> usize {
    if pd.is_empty() {
        return 2;
    }
    let edge = edge_partner(pd);
    let mut visited = vec![false; edge.len()];
    let mut faces = 0;
    for start in 0..edge.len() {
        if visited[start] {
            continue;
        }
        faces += 1;
        let mut p = start;
        while !visited[p] {
            visited[p] = true;
            let q = edge[p];
            p = q - q % 4 + (q % 4 + 1) % 4;
        }
    }
    faces
}

/// Number of local-orientation assignments of a DT code's crossings whose
/// rotation system is planar. Tries all `2^n` assignments.
pub fn planar_assignments(labels: &[i32]) -> usize {
    let n = labels.len();
    let m = 2 * n;
    let prev = |v: usize| if v == 1 { m } else { v - 1 };
    let mut count = 0;
    for mask in 0u32..1 << n {
        let mut pd = vec![[0usize; 4]; n];
        for (i, &a) in labels.iter().enumerate() {
            let (p, q) = (2 * i + 1, a.unsigned_abs() as usize);
            // the edge ending at visit v is v - 1, the one leaving it is v
            pd[i] = if mask >> i & 1 == 0 {
                [prev(p), prev(q), p, q]
            } else {
                [prev(p), q, p, prev(q)]
            };
        }
        if pd_face_count(&pd) == n + 2 {
            count += 1;
        }
    }
    count
}

pub fn dt_realizable(labels: &[i32]) -> bool {
    labels.is_empty() || planar_assignments(labels) > 0
}

/// Checks that a diagram traverses the crossings in the order the DT code
/// describes, with the right strand on top at each crossing.
pub fn matches_dt(pd: &PlanarDiagram, code: &DtCode) -> bool {
    let quads = pd.pd_code();
    let n = quads.len();
    if n != code.crossing_count() {
        return false;
    }
    let m = 2 * n;
    let next = |e: usize| e % m + 1;
    let mut from_pd = BTreeSet::new();
    for &[a, b, c, d] in &quads {
        if next(a) != c {
            return false;
        }
        let under_visit = c;
        let over_visit = if n == 1 {
            if b == c {
                d
            } else {
                b
            }
        } else if next(b) == d {
            d
        } else if next(d) == b {
            b
        } else {
            return false;
        };
        let (odd, even) = if under_visit % 2 == 1 {
            (under_visit, over_visit)
        } else {
            (over_visit, under_visit)
        };
        from_pd.insert((odd, even, under_visit == even));
    }
    let from_dt: BTreeSet<_> = code
        .labels()
        .iter()
        .enumerate()
        .map(|(i, &a)| (2 * i + 1, a.unsigned_abs() as usize, a > 0))
        .collect();
    from_pd == from_dt
}

/// Parses a KnotInfo polynomial such as `t^(-2)-3*t^(-1)+5-7*t+t^3`.
pub fn parse_knotinfo(text: &str) -> Poly {
    let mut out = Poly::new();
    let mut terms = Vec::new();
    let mut current = String::new();
    let mut depth = 0;
    for ch in text.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && !current.is_empty() => {
                terms.push(std::mem::take(&mut current));
            }
            _ => {}
        }
        current.push(ch);
    }
    terms.push(current);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.trim_start_matches('+')),
        };
        let (coeff, power) = match body.split_once('t') {
            None => (body.parse::<i64>().expect("constant"), 0),
            Some((c, p)) => {
                let c = c.trim_end_matches('*');
                let c = if c.is_empty() {
                    1
                } else {
                    c.parse().expect("coefficient")
                };
                let p = match p.strip_prefix('^') {
                    None => 1,
                    Some(p) => p
                        .trim_matches(|ch| ch == '(' || ch == ')')
                        .parse()
                        .expect("power"),
                };
                (c, p)
            }
        };
        *out.entry(power).or_insert(0) += sign * coeff;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// KnotInfo Jones polynomials of the corpus knots, keyed by name.
pub fn knotinfo_jones() -> BTreeMap<String, Poly> {
    include_str!("../data/knotinfo_jones.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (name, poly) = l.split_once('\t').expect("two fields");
            (name.to_string(), parse_knotinfo(poly))
        })
        .collect()
}

/// PD code of the standard pretzel diagram `P(p_1, ..., p_k)`: vertical twist
/// columns side by side, neighbouring columns joined at the top and bottom
/// and the outer columns joined by arcs around the whole picture.
pub fn pretzel_pd(twists: &[i32]) -> Vec<[usize; 4]> {
    // ports of a crossing, counterclockwise
    const SW: usize = 0;
    const SE: usize = 1;
    const NE: usize = 2;
    const NW: usize = 3;
    let mut crossings = Vec::new(); // positive twist: NW-SE strand on top
    let mut link: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let connect = |link: &mut BTreeMap<_, _>, p: (usize, usize), q: (usize, usize)| {
        link.insert(p, q);
        link.insert(q, p);
    };
    let mut tops = Vec::new();
    let mut bottoms = Vec::new();
    for &p in twists {
        let first = crossings.len();
        let k = p.unsigned_abs() as usize;
        assert!(k > 0);
        for j in 0..k {
            crossings.push(p > 0);
            if j > 0 {
                connect(&mut link, (first + j - 1, SW), (first + j, NW));
                connect(&mut link, (first + j - 1, SE), (first + j, NE));
            }
        }
        tops.push(((first, NW), (first, NE)));
        bottoms.push(((first + k - 1, SW), (first + k - 1, SE)));
    }
    let cols = twists.len();
    for i in 0..cols {
        let j = (i + 1) % cols;
        connect(&mut link, tops[i].1, tops[j].0);
        connect(&mut link, bottoms[i].1, bottoms[j].0);
    }

    // walk the knot, numbering edges by the passage they leave
    let n = crossings.len();
    let mut edge_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut incoming = vec![Vec::new(); n];
    let start = (0usize, NW);
    let mut port = start;
    let mut label = 0;
    loop {
        let (x, s) = port;
        let out = (x, (s + 2) % 4);
        label += 1;
        incoming[x].push(s);
        edge_at.insert(out, label);
        let arrive = link[&out];
        edge_at.insert(arrive, label);
        port = arrive;
        if port == start {
            break;
        }
    }
    assert_eq!(
        label,
        2 * n,
        "pretzel with these twists is a link, not a knot"
    );

    (0..n)
        .map(|x| {
            let over = if crossings[x] { [NW, SE] } else { [NE, SW] };
            let under_in = *incoming[x]
                .iter()
                .find(|s| !over.contains(s))
                .expect("under-strand passes through");
            std::array::from_fn(|i| edge_at[&(x, (under_in + i) % 4)])
        })
        .collect()
}

/// Random DT code with `n` crossings: a random pairing of odd and even
/// labels with random signs. Not necessarily realizable.
pub fn random_dt(rng: &mut StdRng, n: usize) -> Vec<i32> {
    let mut evens: Vec<i32> = (1..=n as i32).map(|i| 2 * i).collect();
    evens.shuffle(rng);
    evens
        .into_iter()
        .map(|e| if rng.gen_bool(0.5) { e } else { -e })
        .collect()
}

/// Realizable random codes with between `lo` and `hi` crossings.
pub fn random_realizable(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<Vec<i32>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(lo..=hi);
        let code = random_dt(&mut rng, n);
        if dt_realizable(&code) {
            out.push(code);
        }
    }
    out
}

/// All permutations of `2, 4, ..., 2n` as DT labels with positive signs.
pub fn all_unsigned_codes(n: usize) -> Vec<Vec<i32>> {
    fn rec(rest: &mut Vec<i32>, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(
        &mut (1..=n as i32).map(|i| 2 * i).collect(),
        &mut Vec::new(),
        &mut out,
    );
    out
}

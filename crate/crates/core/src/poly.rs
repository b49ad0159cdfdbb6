//! Exact integer Laurent polynomials, the Kauffman bracket and the Jones
//! polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{writhe, LoopCounter};
use crate::realize::PlanarDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("span of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("expected a polynomial in {expected}, got one in {actual}")]
    VariableMismatch {
        expected: Variable,
        actual: Variable,
    },
    #[error("A-exponent {0} of the normalized bracket is not divisible by 4")]
    NormalizationFailure(i32),
    #[error("state sums are limited to 63 crossings, got {0}")]
    TooManyCrossings(usize),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variable {
    A,
    T,
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variable::A => "A",
            Variable::T => "t",
        })
    }
}

/// A Laurent polynomial with `i64` coefficients. Zero coefficients are never
/// stored. Arithmetic panics on overflow rather than wrapping.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Variable,
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero(var: Variable) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Variable, exp: i32, coeff: i64) -> Self {
        let mut p = Self::zero(var);
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(var: Variable, terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot.checked_add(coeff).expect("coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Substitutes the variable by its inverse.
    pub fn mirror(&self) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Multiplies by `coeff * var^exp`.
    pub fn scale(&self, exp: i32, coeff: i64) -> Self {
        if coeff == 0 {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e + exp, c.checked_mul(coeff).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(0, -1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = LaurentPoly::zero(self.var);
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.checked_mul(c2).expect("coefficient overflow"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// `c*t^e` terms in ascending exponent order joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{}^{e}", self.var)?;
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Parses the rendering produced by `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || PolyError::Parse(s.to_string());
        if s == "0" {
            return Ok(LaurentPoly::zero(Variable::T));
        }
        let mut var = None;
        let mut terms = Vec::new();
        for term in s.split(" + ") {
            let (coeff, rest) = term.split_once('*').ok_or_else(bad)?;
            let (v, exp) = rest.split_once('^').ok_or_else(bad)?;
            let v = match v {
                "t" => Variable::T,
                "A" => Variable::A,
                _ => return Err(bad()),
            };
            if var.replace(v).is_some_and(|old| old != v) {
                return Err(bad());
            }
            let coeff: i64 = coeff.parse().map_err(|_| bad())?;
            let exp: i32 = exp.parse().map_err(|_| bad())?;
            terms.push((exp, coeff));
        }
        Ok(LaurentPoly::from_terms(var.unwrap_or(Variable::T), terms))
    }
}

/// Loop-count histogram of all `2^n` states: `hist[b][l]` is the number of
/// states with `b` B-smoothings and `l` loops.
fn state_histogram(pd: &PlanarDiagram) -> Vec<Vec<u64>> {
    let n = pd.crossing_count();
    let mut hist = vec![vec![0u64; n + 2]; n + 1];
    let mut counter = LoopCounter::new(pd);
    for bits in 0..1u64 << n {
        let loops = counter.loops(bits);
        hist[bits.count_ones() as usize][loops] += 1;
    }
    hist
}

/// Kauffman bracket by the full state sum
/// `sum_s A^(a(s) - b(s)) (-A^2 - A^-2)^(loops(s) - 1)`.
pub fn bracket(pd: &PlanarDiagram) -> Result<LaurentPoly, PolyError> {
    let n = pd.crossing_count();
    if n > 63 {
        return Err(PolyError::TooManyCrossings(n));
    }
    let hist = state_histogram(pd);
    let delta = LaurentPoly::from_terms(Variable::A, [(2, -1), (-2, -1)]);
    let mut delta_pow = vec![LaurentPoly::one(Variable::A)];
    for l in 1..=n + 1 {
        let next = &delta_pow[l - 1] * &delta;
        delta_pow.push(next);
    }
    let mut out = LaurentPoly::zero(Variable::A);
    for (b, row) in hist.iter().enumerate() {
        let exp = n as i32 - 2 * b as i32;
        for (loops, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let count = i64::try_from(count).expect("state count overflow");
            out = &out + &delta_pow[loops - 1].scale(exp, count);
        }
    }
    Ok(out)
}

/// Jones polynomial `(-A)^(-3w) <D>` with `t = A^-4`.
pub fn jones(pd: &PlanarDiagram) -> Result<LaurentPoly, PolyError> {
    let w = writhe(pd);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = bracket(pd)?.scale(-3 * w, sign);
    let mut terms = Vec::new();
    for (e, c) in normalized.terms() {
        if e % 4 != 0 {
            return Err(PolyError::NormalizationFailure(e));
        }
        terms.push((-e / 4, c));
    }
    Ok(LaurentPoly::from_terms(Variable::T, terms))
}

/// Difference between the largest and smallest exponent.
pub fn span_t(p: &LaurentPoly) -> Result<u32, PolyError> {
    if p.variable() != Variable::T {
        return Err(PolyError::VariableMismatch {
            expected: Variable::T,
            actual: p.variable(),
        });
    }
    match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => Ok((hi - lo) as u32),
        _ => Err(PolyError::ZeroPolynomial),
    }
}

/// `p == q` or `p` equals `q` with every exponent negated.
pub fn equal_up_to_mirror(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    p.variable() == q.variable() && (p == q || *p == q.mirror())
}

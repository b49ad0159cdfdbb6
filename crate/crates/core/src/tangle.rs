//! Rational tangles in Conway notation.
//!
//! A word `a1 a2 ... ak` denotes the rational tangle whose fraction is the
//! continued fraction `ak + 1/(a(k-1) + 1/(... + 1/a1))`. Two rational
//! tangles are equivalent exactly when their fractions agree, so replacing a
//! tangle by a word of equal fraction leaves the knot type unchanged.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Bound on entry magnitudes.
pub const MAX_ENTRY: i32 = 64;
/// Longest word produced by synthesis.
pub const MAX_SYNTH_LEN: usize = 12;
/// Largest entry tried after the `-1` during synthesis.
pub const MAX_SYNTH_SUFFIX_ENTRY: i32 = 9;
/// Most slots two Conway strings may differ in and still be aligned.
pub const MAX_DIFFERING_SLOTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("malformed tangle word {0:?}: {1}")]
    MalformedWord(String, &'static str),
    #[error("malformed fraction {0:?}")]
    MalformedFraction(String),
    #[error("no word of length <= {MAX_SYNTH_LEN} with a single -1 has fraction {0}")]
    NotFound(ExtendedRational),
    #[error("the infinite tangle cannot be synthesized")]
    InfiniteTarget,
}

/// A rational number or `∞`, kept in lowest terms with a non-negative
/// denominator. `∞` is stored as `1/0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtendedRational {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl ExtendedRational {
    pub const INFINITY: ExtendedRational = ExtendedRational { num: 1, den: 0 };

    /// Panics on `0/0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(num != 0 || den != 0, "0/0 is not an extended rational");
        if den == 0 {
            return Self::INFINITY;
        }
        let g = gcd(num, den);
        let s = den.signum();
        ExtendedRational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn integer(n: i64) -> Self {
        ExtendedRational { num: n, den: 1 }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// `1/x`, with `1/0 = ∞` and `1/∞ = 0`.
    pub fn recip(self) -> Self {
        if self.is_infinite() {
            Self::integer(0)
        } else if self.num == 0 {
            Self::INFINITY
        } else {
            Self::new(self.den, self.num)
        }
    }

    /// `x + n`, with `∞ + n = ∞`.
    pub fn add_int(self, n: i64) -> Self {
        if self.is_infinite() {
            self
        } else {
            let num = n
                .checked_mul(self.den)
                .and_then(|v| v.checked_add(self.num))
                .expect("fraction overflow");
            Self::new(num, self.den)
        }
    }

    /// Compares finite values; `∞` sorts above everything.
    fn cmp_finite(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => {
                (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
            }
        }
    }

    fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || TangleError::MalformedFraction(s.to_string());
        if matches!(t, "inf" | "∞" | "1/0") {
            return Ok(Self::INFINITY);
        }
        let (p, q) = t.split_once('/').unwrap_or((t, "1"));
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q < 0 || (p == 0 && q == 0) {
            return Err(bad());
        }
        Ok(Self::new(p, q))
    }
}

/// A Conway rational tangle word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangleWord(Vec<i32>);

impl TangleWord {
    pub fn new(entries: Vec<i32>) -> Result<Self, TangleError> {
        let shown = || format!("{entries:?}");
        if entries.is_empty() {
            return Err(TangleError::MalformedWord(shown(), "empty word"));
        }
        if entries[..entries.len() - 1].contains(&0) {
            return Err(TangleError::MalformedWord(shown(), "interior zero"));
        }
        if entries.iter().any(|a| a.abs() > MAX_ENTRY) {
            return Err(TangleError::MalformedWord(shown(), "entry out of range"));
        }
        Ok(TangleWord(entries))
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn minus_one_count(&self) -> usize {
        self.0.iter().filter(|&&a| a == -1).count()
    }

    /// Exactly one `-1` and every other entry non-negative.
    pub fn has_single_minus_one(&self) -> bool {
        self.minus_one_count() == 1 && self.0.iter().all(|&a| a == -1 || a >= 0)
    }

    /// Rendering in the LinKnot style, e.g. `4 - 111`. Only meaningful when
    /// every entry is a single digit.
    pub fn to_conway(&self) -> String {
        let mut out = String::new();
        for (i, &a) in self.0.iter().enumerate() {
            if a < 0 {
                if i > 0 {
                    out.push_str(" - ");
                } else {
                    out.push('-');
                }
                out.push_str(&(-a).to_string());
            } else {
                out.push_str(&a.to_string());
            }
        }
        out
    }

    pub fn fraction(&self) -> ExtendedRational {
        fraction(self)
    }
}

impl fmt::Display for TangleWord {
    /// Machine form: `4 -1 1 1`, or `[20,-1,0]` when an entry has more than
    /// one digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bracketed = self.0.iter().any(|a| a.abs() > 9);
        let sep = if bracketed { "," } else { " " };
        let body = self
            .0
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(sep);
        if bracketed {
            write!(f, "[{body}]")
        } else {
            f.write_str(&body)
        }
    }
}

impl FromStr for TangleWord {
    type Err = TangleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parses a Conway word. Each digit is one entry and a `-` negates the digit
/// that follows it, so `21 - 10` is `[2, 1, -1, 0]` and `4 -1 1 1` is
/// `[4, -1, 1, 1]`. A bracketed list such as `[20,-1,0]` is also accepted.
pub fn parse_word(text: &str) -> Result<TangleWord, TangleError> {
    let t = text.trim();
    let bad = |why| TangleError::MalformedWord(text.to_string(), why);
    if let Some(list) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let entries = list
            .split(',')
            .map(|tok| tok.trim().parse::<i32>().map_err(|_| bad("bad list entry")))
            .collect::<Result<Vec<_>, _>>()?;
        return TangleWord::new(entries).map_err(|e| match e {
            TangleError::MalformedWord(_, why) => bad(why),
            other => other,
        });
    }
    let mut entries = Vec::new();
    let mut negate = false;
    for ch in t.chars() {
        match ch {
            c if c.is_whitespace() => {}
            '-' if negate => return Err(bad("doubled sign")),
            '-' => negate = true,
            c if c.is_ascii_digit() => {
                let d = c.to_digit(10).unwrap() as i32;
                entries.push(if negate { -d } else { d });
                negate = false;
            }
            _ => return Err(bad("unexpected character")),
        }
    }
    if negate {
        return Err(bad("dangling sign"));
    }
    TangleWord::new(entries).map_err(|e| match e {
        TangleError::MalformedWord(_, why) => bad(why),
        other => other,
    })
}

/// Continued-fraction value of a word, with `1/0 = ∞`, `x + ∞ = ∞` and
/// `1/∞ = 0`.
pub fn fraction(word: &TangleWord) -> ExtendedRational {
    let mut entries = word.entries().iter();
    let first = *entries.next().expect("tangle words are nonempty");
    entries.fold(ExtendedRational::integer(first as i64), |acc, &a| {
        acc.recip().add_int(a as i64)
    })
}

/// Outcome of [`synthesize_one_minus_one`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synthesis {
    pub word: TangleWord,
    /// The target already has a word with non-negative entries, returned as is.
    pub already_nonnegative: bool,
}

/// Positive-entry word of length `len` with fraction `y`, if one exists with
/// entries in `1..=MAX_ENTRY`. Such a word is a continued-fraction expansion,
/// so at most one exists for each length.
fn positive_expansion(y: ExtendedRational, len: usize) -> Option<Vec<i32>> {
    if y.is_infinite() || y.cmp_finite(&ExtendedRational::integer(1)) == Ordering::Less {
        return None;
    }
    let mut out = vec![0; len];
    let mut y = y;
    for pos in (0..len).rev() {
        if pos == 0 {
            if !y.is_integer() || !(1..=MAX_ENTRY as i64).contains(&y.num) {
                return None;
            }
            out[0] = y.num as i32;
            return Some(out);
        }
        // the remaining prefix is at least 1, so this entry is ceil(y) - 1
        let a = if y.is_integer() { y.num - 1 } else { y.floor() };
        if !(1..=MAX_ENTRY as i64).contains(&a) {
            return None;
        }
        out[pos] = a as i32;
        y = y.add_int(-a).recip();
        if y.cmp_finite(&ExtendedRational::integer(1)) == Ordering::Less || y.is_infinite() {
            return None;
        }
    }
    None
}

/// Words of exactly `len` entries with value `target`, a single `-1`, positive
/// entries before it and entries in `0..=9` after it (`0` only last).
fn collect_words(
    target: ExtendedRational,
    remaining: usize,
    is_last: bool,
    suffix: &mut Vec<i32>,
    out: &mut Vec<Vec<i32>>,
) {
    // the -1 sits at position `remaining`
    let before = remaining - 1;
    let prefix = if before == 0 {
        (target == ExtendedRational::integer(-1)).then(Vec::new)
    } else {
        positive_expansion(target.add_int(1).recip(), before)
    };
    if let Some(mut word) = prefix {
        word.push(-1);
        word.extend(suffix.iter().rev());
        out.push(word);
    }
    if remaining < 2 {
        return;
    }
    let lowest = if is_last { 0 } else { 1 };
    for s in lowest..=MAX_SYNTH_SUFFIX_ENTRY {
        suffix.push(s);
        let inner = target.add_int(-(s as i64)).recip();
        collect_words(inner, remaining - 1, false, suffix, out);
        suffix.pop();
    }
}

/// Finds a word with fraction `q` containing exactly one `-1`. Words are
/// ordered by length, then lexicographically; the first one wins.
///
/// A `q` that already has a non-negative word (zero or positive) gets its
/// continued-fraction word back with `already_nonnegative` set.
pub fn synthesize_one_minus_one(q: ExtendedRational) -> Result<Synthesis, TangleError> {
    if q.is_infinite() {
        return Err(TangleError::InfiniteTarget);
    }
    if q.num >= 0 {
        let word = if q.num == 0 {
            vec![0]
        } else if q.is_integer() {
            vec![q.num as i32]
        } else {
            // integer part last, possibly 0
            let int = q.floor();
            let rest = q.add_int(-int).recip();
            let mut found = None;
            for len in 1..=MAX_SYNTH_LEN {
                if let Some(mut w) = positive_expansion(rest, len) {
                    w.push(int as i32);
                    found = Some(w);
                    break;
                }
            }
            found.ok_or(TangleError::NotFound(q))?
        };
        let word = TangleWord::new(word).map_err(|_| TangleError::NotFound(q))?;
        return Ok(Synthesis {
            word,
            already_nonnegative: true,
        });
    }
    for len in 1..=MAX_SYNTH_LEN {
        let mut found = Vec::new();
        collect_words(q, len, true, &mut Vec::new(), &mut found);
        if let Some(best) = found.into_iter().min() {
            return Ok(Synthesis {
                word: TangleWord::new(best).expect("synthesized words are well formed"),
                already_nonnegative: false,
            });
        }
    }
    Err(TangleError::NotFound(q))
}

/// The right word has a single `-1` (other entries non-negative) and the same
/// fraction as the left word.
pub fn verify_substitution(left: &TangleWord, right: &TangleWord) -> bool {
    right.has_single_minus_one() && fraction(left) == fraction(right)
}

/// A pair of differing tangle slots between two Conway strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub left: TangleWord,
    pub right: TangleWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Alignment {
    Aligned(Vec<Substitution>),
    NotAlignable(String),
}

#[derive(Debug, PartialEq, Eq)]
struct Skeleton<'a> {
    tag: Option<&'a str>,
    separators: Vec<char>,
    slots: Vec<&'a str>,
}

fn skeleton(compact: &str) -> Skeleton<'_> {
    let mut rest = compact;
    let mut tag = None;
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    if digits > 0 {
        let after = &rest[digits..];
        let star = if after.starts_with("^*") {
            2
        } else if after.starts_with('*') {
            1
        } else {
            0
        };
        if star > 0 {
            tag = Some(&rest[..digits]);
            rest = &after[star..];
        }
    }
    let mut separators = Vec::new();
    let mut slots = Vec::new();
    let mut start = 0;
    for (i, ch) in rest.char_indices() {
        if matches!(ch, '.' | ':' | ',' | '(' | ')') {
            slots.push(&rest[start..i]);
            separators.push(ch);
            start = i + 1;
        }
    }
    slots.push(&rest[start..]);
    Skeleton {
        tag,
        separators,
        slots,
    }
}

/// Aligns the tangle slots of two Conway strings that share a separator
/// skeleton and polyhedron tag, returning the slots that differ.
///
/// Rows that rewrite the diagram globally are reported as not alignable:
/// different skeletons, more than [`MAX_DIFFERING_SLOTS`] differing slots, or
/// a differing slot whose replacement carries no `-1`.
pub fn extract_substitutions(conway_min: &str, conway_rep: &str) -> Alignment {
    let a: String = conway_min.chars().filter(|c| !c.is_whitespace()).collect();
    let b: String = conway_rep.chars().filter(|c| !c.is_whitespace()).collect();
    let (sa, sb) = (skeleton(&a), skeleton(&b));
    if sa.tag != sb.tag {
        return Alignment::NotAlignable("different polyhedral basis".into());
    }
    if sa.separators != sb.separators {
        return Alignment::NotAlignable("different separator structure".into());
    }
    let differing: Vec<(&str, &str)> = sa
        .slots
        .iter()
        .zip(&sb.slots)
        .filter(|(x, y)| x != y)
        .map(|(x, y)| (*x, *y))
        .collect();
    if differing.len() > MAX_DIFFERING_SLOTS {
        return Alignment::NotAlignable(format!("{} slots differ", differing.len()));
    }
    let mut subs = Vec::with_capacity(differing.len());
    for (x, y) in differing {
        let (Ok(left), Ok(right)) = (parse_word(x), parse_word(y)) else {
            return Alignment::NotAlignable(format!("slot {x:?} -> {y:?} is not a rational word"));
        };
        if right.minus_one_count() == 0 {
            return Alignment::NotAlignable(format!("slot {x:?} -> {y:?} introduces no -1"));
        }
        subs.push(Substitution { left, right });
    }
    Alignment::Aligned(subs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(entries: &[i32]) -> TangleWord {
        TangleWord::new(entries.to_vec()).unwrap()
    }

    fn r(p: i64, q: i64) -> ExtendedRational {
        ExtendedRational::new(p, q)
    }

    #[test]
    fn parses_linknot_words() {
        assert_eq!(parse_word("4 - 111").unwrap(), w(&[4, -1, 1, 1]));
        assert_eq!(parse_word("21 - 10").unwrap(), w(&[2, 1, -1, 0]));
        assert_eq!(parse_word("22 - 110").unwrap(), w(&[2, 2, -1, 1, 0]));
        assert_eq!(parse_word("4 -1 1 1").unwrap(), w(&[4, -1, 1, 1]));
        assert_eq!(parse_word("- 2 - 1").unwrap(), w(&[-2, -1]));
        assert_eq!(parse_word("3").unwrap(), w(&[3]));
        assert_eq!(parse_word("[20,-1,0]").unwrap(), w(&[20, -1, 0]));
    }

    #[test]
    fn rejects_malformed_words() {
        for bad in ["", "201", "2 -", "--2", "2a", "[]", "[1,0,2]", "[65]"] {
            assert!(
                matches!(parse_word(bad), Err(TangleError::MalformedWord(..))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(w(&[4, -1, 1, 1]).to_string(), "4 -1 1 1");
        assert_eq!(w(&[4, -1, 1, 1]).to_conway(), "4 - 111");
        assert_eq!(w(&[2, 1, -1, 0]).to_conway(), "21 - 10");
        assert_eq!(w(&[-2, -1]).to_conway(), "-2 - 1");
        assert_eq!(w(&[20, -1, 0]).to_string(), "[20,-1,0]");
        for word in [w(&[4, -1, 1, 1]), w(&[20, -1, 0]), w(&[-3])] {
            assert_eq!(parse_word(&word.to_string()).unwrap(), word);
        }
    }

    #[test]
    fn fractions() {
        assert_eq!(fraction(&w(&[3])), r(3, 1));
        assert_eq!(fraction(&w(&[4, -1, 1, 1])), r(-2, 1));
        assert_eq!(fraction(&w(&[2, 1, -1, 0])), r(-3, 1));
        assert_eq!(fraction(&w(&[4, -1])), r(-3, 4));
        assert_eq!(fraction(&w(&[-3, -1, 0])), r(-3, 4));
        assert_eq!(fraction(&w(&[3, -1, 0])), r(-3, 2));
        assert_eq!(fraction(&w(&[2, 2, -1, 1, 0])), r(-3, 2));
        assert_eq!(fraction(&w(&[4, -1, 1])), r(-1, 3));
        // 1 - 10: the -1 cancels the 1 and the trailing 0 inverts zero
        assert_eq!(fraction(&w(&[1, -1, 0])), ExtendedRational::INFINITY);
        assert_eq!(fraction(&w(&[1, -1, 3, 2])), r(2, 1));
        assert_eq!(fraction(&w(&[0])), r(0, 1));
    }

    #[test]
    fn extended_rationals() {
        assert_eq!(r(4, -6), r(-2, 3));
        assert_eq!(r(-3, 0), ExtendedRational::INFINITY);
        assert_eq!(r(0, 5).recip(), ExtendedRational::INFINITY);
        assert_eq!(ExtendedRational::INFINITY.recip(), r(0, 1));
        assert_eq!(
            ExtendedRational::INFINITY.add_int(3),
            ExtendedRational::INFINITY
        );
        assert_eq!("-3/4".parse::<ExtendedRational>().unwrap(), r(-3, 4));
        assert_eq!(
            "inf".parse::<ExtendedRational>().unwrap(),
            ExtendedRational::INFINITY
        );
        assert_eq!(r(-3, 4).to_string(), "-3/4");
        assert!("1/-2".parse::<ExtendedRational>().is_err());
        assert!("x".parse::<ExtendedRational>().is_err());
    }

    #[test]
    fn synthesis_examples() {
        for (p, q) in [
            (-1, 1),
            (-2, 1),
            (-3, 1),
            (-1, 2),
            (-3, 2),
            (-5, 3),
            (-3, 4),
            (-5, 2),
        ] {
            let target = r(p, q);
            let s = synthesize_one_minus_one(target).unwrap();
            assert!(!s.already_nonnegative);
            assert_eq!(fraction(&s.word), target, "{}", s.word);
            assert!(s.word.has_single_minus_one());
            assert!(s.word.len() <= MAX_SYNTH_LEN);
        }
        assert_eq!(
            synthesize_one_minus_one(r(-3, 1)).unwrap().word,
            w(&[2, 1, -1, 0])
        );
        assert_eq!(
            synthesize_one_minus_one(r(-3, 4)).unwrap().word,
            w(&[4, -1])
        );
        assert_eq!(synthesize_one_minus_one(r(-1, 1)).unwrap().word, w(&[-1]));
    }

    #[test]
    fn synthesis_of_nonnegative_targets() {
        let s = synthesize_one_minus_one(r(7, 3)).unwrap();
        assert!(s.already_nonnegative);
        assert_eq!(fraction(&s.word), r(7, 3));
        assert_eq!(s.word.minus_one_count(), 0);
        let z = synthesize_one_minus_one(r(0, 1)).unwrap();
        assert_eq!(z.word, w(&[0]));
        let frac = synthesize_one_minus_one(r(2, 7)).unwrap();
        assert_eq!(fraction(&frac.word), r(2, 7));
        assert_eq!(
            synthesize_one_minus_one(ExtendedRational::INFINITY),
            Err(TangleError::InfiniteTarget)
        );
    }

    #[test]
    fn substitution_checks() {
        assert!(verify_substitution(&w(&[-2]), &w(&[4, -1, 1, 1])));
        assert!(verify_substitution(&w(&[-2, -1]), &w(&[2, 2, -1, 1, 0])));
        assert!(!verify_substitution(&w(&[-2]), &w(&[4, -1, 1])));
        assert!(!verify_substitution(&w(&[-3]), &w(&[1, -1, 0])));
        // equal fractions but no -1
        assert!(!verify_substitution(&w(&[2]), &w(&[2])));
    }

    #[test]
    fn alignment() {
        assert_eq!(
            extract_substitutions(".(21, 2). - 2.20", ".(21, 2).4 - 111.20"),
            Alignment::Aligned(vec![Substitution {
                left: w(&[-2]),
                right: w(&[4, -1, 1, 1]),
            }])
        );
        assert!(matches!(
            extract_substitutions("-2. - 20. - 2.2110", "8^*2.2.1.20.2.220.1. - 1"),
            Alignment::NotAlignable(_)
        ));
        assert_eq!(
            extract_substitutions("8^*20.21 : . - 2", "8^*20.21 : . - 2"),
            Alignment::Aligned(vec![])
        );
        assert_eq!(
            extract_substitutions("8^*20.21 : . - 2", "8^*20.21 : .4 - 111"),
            Alignment::Aligned(vec![Substitution {
                left: w(&[-2]),
                right: w(&[4, -1, 1, 1]),
            }])
        );
        // a global rewrite that happens to keep the separator skeleton
        assert!(matches!(
            extract_substitutions("-2 - 1 - 10 : -2 - 10 : -20", "211 : 2 - 1 : 21"),
            Alignment::NotAlignable(_)
        ));
        assert!(matches!(
            extract_substitutions("8^*2.3", "9^*2.3"),
            Alignment::NotAlignable(_)
        ));
    }
}

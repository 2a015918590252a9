//! Realizations of codes by intervals on the real line.
//!
//! Endpoints are exact rationals so that atoms can be compared as sets. The
//! arrangement of a realization is the ordered list of its distinct endpoints;
//! every point of the line is either one of those endpoints or lies in one of
//! the open gaps between consecutive endpoints (or outside all intervals), so
//! membership only has to be evaluated on these elementary pieces.

mod arrangement;
mod search;
mod transform;

pub mod samples;

pub use arrangement::{atoms, check_maximal_atoms, code_of, codewords_of, AtomTable};
pub use search::{search_realization_1d, SearchOptions, DEFAULT_SEARCH_CAP};
pub use transform::{
    closed_to_open, desingularize_closed, epsilon_distance, normalize_closed_epsilon,
    normalize_open_epsilon, open_to_closed, EpsilonReading,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `p / q` as an exact rational.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses "p/q", an integer, or a finite decimal such as "2.5".
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let w = if whole_digits.is_empty() { BigInt::zero() } else { BigInt::from_str(whole_digits).ok()? };
        let f = BigInt::from_str(frac).ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Rational::new(w * &scale + f, scale);
        return Some(if negative { -mag } else { mag });
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

/// Exact "p/q" form (integers print as "p/1").
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Open,
    Closed,
    Convex,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Open => "open",
            Mode::Closed => "closed",
            Mode::Convex => "convex",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "open" => Ok(Mode::Open),
            "closed" => Ok(Mode::Closed),
            "convex" => Ok(Mode::Convex),
            other => Err(Error::Realization(format!("unknown mode {other:?}"))),
        }
    }
}

/// A non-empty interval `a..b` with per-endpoint closure flags.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Span {
    pub a: Rational,
    pub b: Rational,
    pub left_closed: bool,
    pub right_closed: bool,
}

impl Span {
    pub fn new(a: Rational, b: Rational, left_closed: bool, right_closed: bool) -> Self {
        Span { a, b, left_closed, right_closed }
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        Span::new(a, b, false, false)
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        Span::new(a, b, true, true)
    }

    pub fn point(x: Rational) -> Self {
        Span::new(x.clone(), x, true, true)
    }

    pub fn is_singleton(&self) -> bool {
        self.a == self.b
    }

    pub fn length(&self) -> Rational {
        &self.b - &self.a
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (self.a < *x && *x < self.b) || (self.left_closed && *x == self.a) || (self.right_closed && *x == self.b)
    }

    /// Whether the open gap `(lo, hi)`, with no endpoint strictly inside, lies in the span.
    pub fn contains_gap(&self, lo: &Rational, hi: &Rational) -> bool {
        self.a <= *lo && *hi <= self.b
    }

    fn check(&self) -> Result<()> {
        if self.a > self.b {
            return Err(Error::Realization(format!("left endpoint {} above right endpoint {}", self.a, self.b)));
        }
        if self.a == self.b && !(self.left_closed && self.right_closed) {
            return Err(Error::Realization(format!("degenerate interval at {} must be closed", self.a)));
        }
        Ok(())
    }
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            return write!(f, "{{{}}}", self.a);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.left_closed { '[' } else { '(' },
            self.a,
            self.b,
            if self.right_closed { ']' } else { ')' }
        )
    }
}

/// One neuron's receptive field: empty, or a span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interval1D {
    Empty,
    Span(Span),
}

impl Interval1D {
    pub fn open(a: Rational, b: Rational) -> Self {
        Interval1D::Span(Span::open(a, b))
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        Interval1D::Span(Span::closed(a, b))
    }

    pub fn point(x: Rational) -> Self {
        Interval1D::Span(Span::point(x))
    }

    pub fn span(&self) -> Option<&Span> {
        match self {
            Interval1D::Empty => None,
            Interval1D::Span(s) => Some(s),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval1D::Empty)
    }
}

impl fmt::Display for Interval1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval1D::Empty => f.write_str("empty"),
            Interval1D::Span(s) => fmt::Display::fmt(s, f),
        }
    }
}

/// `n` intervals, one per neuron, tagged with the realization mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization1D {
    pub mode: Mode,
    pub intervals: Vec<Interval1D>,
}

impl Realization1D {
    /// Builds and validates a realization.
    pub fn new(mode: Mode, intervals: Vec<Interval1D>) -> Result<Self> {
        let r = Realization1D { mode, intervals };
        r.validate()?;
        Ok(r)
    }

    pub fn open(spans: &[(Rational, Rational)]) -> Result<Self> {
        Realization1D::new(Mode::Open, spans.iter().map(|(a, b)| Interval1D::open(a.clone(), b.clone())).collect())
    }

    pub fn closed(spans: &[(Rational, Rational)]) -> Result<Self> {
        Realization1D::new(Mode::Closed, spans.iter().map(|(a, b)| Interval1D::closed(a.clone(), b.clone())).collect())
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn spans(&self) -> impl Iterator<Item = (usize, &Span)> {
        self.intervals.iter().enumerate().filter_map(|(i, iv)| iv.span().map(|s| (i, s)))
    }

    pub fn validate(&self) -> Result<()> {
        if self.intervals.is_empty() || self.intervals.len() > crate::code::MAX_NEURONS {
            return Err(Error::NeuronCount(self.intervals.len()));
        }
        for (i, s) in self.spans() {
            s.check().map_err(|e| Error::Realization(format!("neuron {}: {e}", i + 1)))?;
            match self.mode {
                Mode::Open if s.left_closed || s.right_closed || s.is_singleton() => {
                    return Err(Error::Realization(format!("neuron {}: open mode needs an open interval, got {s}", i + 1)));
                }
                Mode::Closed if !(s.left_closed && s.right_closed) => {
                    return Err(Error::Realization(format!("neuron {}: closed mode needs a closed interval, got {s}", i + 1)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub(crate) fn require_mode(&self, mode: Mode) -> Result<()> {
        if self.mode != mode {
            return Err(Error::ModeMismatch { expected: mode.to_string(), found: self.mode.to_string() });
        }
        self.validate()
    }

    /// All endpoints of non-empty intervals, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.spans().flat_map(|(_, s)| [s.a.clone(), s.b.clone()]).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_json(&self) -> RealizationJson {
        RealizationJson::from(self)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: RealizationJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        Realization1D::try_from(j)
    }
}

impl fmt::Display for Realization1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} realization:", self.mode)?;
        for (i, iv) in self.intervals.iter().enumerate() {
            write!(f, " U{}={}", i + 1, iv)?;
        }
        Ok(())
    }
}

/// Wire form of an interval: `"empty"` or `{"a","b","lc","rc"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntervalJson {
    Tag(String),
    Span { a: String, b: String, lc: bool, rc: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub n: usize,
    pub mode: Mode,
    pub intervals: Vec<IntervalJson>,
}

impl From<&Realization1D> for RealizationJson {
    fn from(r: &Realization1D) -> Self {
        RealizationJson {
            n: r.n(),
            mode: r.mode,
            intervals: r
                .intervals
                .iter()
                .map(|iv| match iv {
                    Interval1D::Empty => IntervalJson::Tag("empty".into()),
                    Interval1D::Span(s) => IntervalJson::Span {
                        a: format_rational(&s.a),
                        b: format_rational(&s.b),
                        lc: s.left_closed,
                        rc: s.right_closed,
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<RealizationJson> for Realization1D {
    type Error = Error;

    fn try_from(j: RealizationJson) -> Result<Self> {
        if j.n != j.intervals.len() {
            return Err(Error::Json(format!("n = {} but {} intervals given", j.n, j.intervals.len())));
        }
        let mut intervals = Vec::with_capacity(j.n);
        for (i, iv) in j.intervals.into_iter().enumerate() {
            intervals.push(match iv {
                IntervalJson::Tag(t) if t == "empty" => Interval1D::Empty,
                IntervalJson::Tag(t) => return Err(Error::Json(format!("interval {}: unknown tag {t:?}", i + 1))),
                IntervalJson::Span { a, b, lc, rc } => {
                    let pa = parse_rational(&a)
                        .ok_or_else(|| Error::Json(format!("interval {}: bad rational {a:?}", i + 1)))?;
                    let pb = parse_rational(&b)
                        .ok_or_else(|| Error::Json(format!("interval {}: bad rational {b:?}", i + 1)))?;
                    Interval1D::Span(Span::new(pa, pb, lc, rc))
                }
            });
        }
        Realization1D::new(j.mode, intervals)
    }
}

pub(crate) fn half(x: &Rational) -> Rational {
    x / int(2)
}

pub(crate) fn third(x: &Rational) -> Rational {
    x / int(3)
}

pub(crate) fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

pub(crate) fn one() -> Rational {
    Rational::one()
}

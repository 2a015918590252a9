//! Code-preserving rewrites of one-dimensional realizations.

use num_traits::Signed;

use super::{half, int, is_positive, one, third, Interval1D, Mode, Rational, Realization1D, Span};
use crate::error::Result;

/// Which ordered pairs `(i, j)` enter the epsilon distance `min |b_i - a_j|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EpsilonReading {
    /// Only `i != j`.
    #[default]
    DistinctPairs,
    /// All pairs, so interval lengths `b_i - a_i` are included too.
    IncludeSelf,
}

/// `min |b_i - a_j|` over non-empty intervals; `None` when no pair exists.
pub fn epsilon_distance(u: &Realization1D, reading: EpsilonReading) -> Option<Rational> {
    let spans: Vec<_> = u.spans().collect();
    let mut best: Option<Rational> = None;
    for &(i, si) in &spans {
        for &(j, sj) in &spans {
            if i == j && reading == EpsilonReading::DistinctPairs {
                continue;
            }
            let d = (&si.b - &sj.a).abs();
            if best.as_ref().map_or(true, |b| d < *b) {
                best = Some(d);
            }
        }
    }
    best
}

/// Largest endpoint strictly below `x`.
fn max_endpoint_below(u: &Realization1D, x: &Rational) -> Option<Rational> {
    u.endpoints().into_iter().filter(|e| e < x).max()
}

/// Smallest endpoint strictly above `x`.
fn min_endpoint_above(u: &Realization1D, x: &Rational) -> Option<Rational> {
    u.endpoints().into_iter().filter(|e| e > x).min()
}

/// Right endpoints that coincide with the left endpoint of another interval.
fn coincidences(u: &Realization1D) -> Vec<Rational> {
    let mut xs: Vec<Rational> = Vec::new();
    for (i, si) in u.spans() {
        if u.spans().any(|(j, sj)| i != j && sj.a == si.b) {
            xs.push(si.b.clone());
        }
    }
    xs.sort();
    xs.dedup();
    xs
}

/// Removes every contact `b_i = a_j` of an open realization by pulling the
/// right endpoint back by half the gap to the nearest endpoint inside
/// `[a_i, b_i)`. Returns the input unchanged when epsilon is already positive.
pub fn normalize_open_epsilon(u: &Realization1D) -> Result<Realization1D> {
    u.require_mode(Mode::Open)?;
    if epsilon_distance(u, EpsilonReading::DistinctPairs).map_or(true, |e| is_positive(&e)) {
        return Ok(u.clone());
    }
    let contacts = coincidences(u);
    let endpoints = u.endpoints();
    let mut out = u.clone();
    for (i, iv) in u.intervals.iter().enumerate() {
        let Some(s) = iv.span() else { continue };
        if !contacts.contains(&s.b) {
            continue;
        }
        let inside = endpoints.iter().filter(|e| **e >= s.a && **e < s.b).max();
        let mut delta = match inside {
            Some(m) => half(&(&s.b - m)),
            None => int(0),
        };
        if !is_positive(&delta) {
            delta = s.length() / int(4);
        }
        out.intervals[i] = Interval1D::open(s.a.clone(), &s.b - delta);
    }
    out.validate()?;
    Ok(out)
}

/// Replaces every singleton of a closed realization by a proper closed
/// interval without changing the code.
///
/// Singletons sharing the same point are handled together. For a point `x`:
/// if no other interval has `x` as an endpoint, the singleton becomes
/// `[x - d, x + d]` with `2d` the distance to the nearest other endpoint; if
/// intervals only end (or only start) at `x`, it becomes `[x - d, x]`
/// (or `[x, x + d]`); if some end and some start at `x`, the starting ones are
/// widened to `x - d` and the singleton becomes `[x - d, x]`.
pub fn desingularize_closed(u: &Realization1D) -> Result<Realization1D> {
    u.require_mode(Mode::Closed)?;
    let mut cur = u.clone();
    loop {
        let Some(x) = cur.spans().filter(|(_, s)| s.is_singleton()).map(|(_, s)| s.a.clone()).min() else {
            break;
        };
        let group: Vec<usize> = cur.spans().filter(|(_, s)| s.is_singleton() && s.a == x).map(|(i, _)| i).collect();
        let others: Vec<(usize, Span)> = cur
            .spans()
            .filter(|(i, _)| !group.contains(i))
            .map(|(i, s)| (i, s.clone()))
            .collect();
        let ending: Vec<usize> = others.iter().filter(|(_, s)| s.b == x).map(|(i, _)| *i).collect();
        let starting: Vec<usize> = others.iter().filter(|(_, s)| s.a == x).map(|(i, _)| *i).collect();

        let replacement = match (ending.is_empty(), starting.is_empty()) {
            (true, true) => {
                let nearest = others
                    .iter()
                    .flat_map(|(_, s)| [(&s.a - &x).abs(), (&s.b - &x).abs()])
                    .min();
                let delta = nearest.map(|d| half(&d)).unwrap_or_else(|| half(&one()));
                Span::closed(&x - &delta, &x + &delta)
            }
            (false, true) => {
                let m = max_endpoint_below(&cur, &x).expect("an interval ending at x starts below x");
                let delta = half(&(&x - m));
                Span::closed(&x - delta, x.clone())
            }
            (true, false) => {
                let m = min_endpoint_above(&cur, &x).expect("an interval starting at x ends above x");
                let delta = half(&(m - &x));
                Span::closed(x.clone(), &x + delta)
            }
            (false, false) => {
                let m = max_endpoint_below(&cur, &x).expect("an interval ending at x starts below x");
                let delta = half(&(&x - m));
                let left = &x - &delta;
                for &k in &starting {
                    let s = cur.intervals[k].span().expect("starting interval is non-empty").clone();
                    cur.intervals[k] = Interval1D::closed(left.clone(), s.b);
                }
                Span::closed(left, x.clone())
            }
        };
        for &j in &group {
            cur.intervals[j] = Interval1D::Span(replacement.clone());
        }
    }
    cur.validate()?;
    Ok(cur)
}

/// Closed analogue of [`normalize_open_epsilon`]: singletons are removed
/// first, then every interval starting where another one ends is extended to
/// the left by half the gap to the nearest endpoint below.
pub fn normalize_closed_epsilon(u: &Realization1D) -> Result<Realization1D> {
    u.require_mode(Mode::Closed)?;
    let cur = desingularize_closed(u)?;
    if epsilon_distance(&cur, EpsilonReading::DistinctPairs).map_or(true, |e| is_positive(&e)) {
        return Ok(cur);
    }
    let contacts = coincidences(&cur);
    let mut out = cur.clone();
    for (j, iv) in cur.intervals.iter().enumerate() {
        let Some(s) = iv.span() else { continue };
        if !contacts.contains(&s.a) {
            continue;
        }
        let m = max_endpoint_below(&cur, &s.a).expect("an interval ending at a contact starts below it");
        let delta = half(&(&s.a - m));
        out.intervals[j] = Interval1D::closed(&s.a - delta, s.b.clone());
    }
    out.validate()?;
    Ok(out)
}

/// Epsilon used by the open/closed conversions: all pairs, including each
/// interval's own length, with 1 when there is no interval at all.
fn conversion_epsilon(u: &Realization1D) -> Rational {
    epsilon_distance(u, EpsilonReading::IncludeSelf).unwrap_or_else(one)
}

/// Open realization to closed: normalize, then `J_i = [a_i + e/3, b_i - e/3]`.
pub fn open_to_closed(u: &Realization1D) -> Result<Realization1D> {
    let base = normalize_open_epsilon(u)?;
    let eps = conversion_epsilon(&base);
    debug_assert!(is_positive(&eps));
    let shift = third(&eps);
    let intervals = base
        .intervals
        .iter()
        .map(|iv| match iv {
            Interval1D::Empty => Interval1D::Empty,
            Interval1D::Span(s) => {
                let (a, b) = (&s.a + &shift, &s.b - &shift);
                assert!(a < b, "interval shorter than 2e/3 after normalization");
                Interval1D::closed(a, b)
            }
        })
        .collect();
    Realization1D::new(Mode::Closed, intervals)
}

/// Closed realization to open: normalize, then `I_i = (a_i - e/3, b_i + e/3)`.
pub fn closed_to_open(u: &Realization1D) -> Result<Realization1D> {
    let base = normalize_closed_epsilon(u)?;
    let shift = third(&conversion_epsilon(&base));
    let intervals = base
        .intervals
        .iter()
        .map(|iv| match iv {
            Interval1D::Empty => Interval1D::Empty,
            Interval1D::Span(s) => Interval1D::open(&s.a - &shift, &s.b + &shift),
        })
        .collect();
    Realization1D::new(Mode::Open, intervals)
}

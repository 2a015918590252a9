//! Exhaustive search for one-dimensional realizations.
//!
//! Only the order of endpoints matters, so it is enough to place the `2u`
//! endpoints of the `u` used neurons on the integer levels `0..2u`. Bounded
//! intervals suffice: an unbounded ray can always be cut at a new extreme
//! endpoint without changing the code.

use rayon::prelude::*;

use super::{code_of, int, Interval1D, Mode, Realization1D, Span};
use crate::code::{Code, Codeword};
use crate::error::{Error, Result};

pub const DEFAULT_SEARCH_CAP: usize = 4;
/// Compact masks must index a 64-bit seen set.
const HARD_CAP: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest number of used neurons the search accepts.
    pub cap: usize,
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: DEFAULT_SEARCH_CAP, workers: 1 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Choice {
    a: usize,
    b: usize,
    lc: bool,
    rc: bool,
}

impl Choice {
    fn covers_point(&self, t: usize) -> bool {
        (self.a < t && t < self.b) || (self.lc && t == self.a) || (self.rc && t == self.b)
    }

    fn covers_gap(&self, t: usize) -> bool {
        self.a <= t && t < self.b
    }
}

fn choices(mode: Mode, levels: usize) -> Vec<Choice> {
    let mut out = Vec::new();
    for a in 0..levels {
        for b in a..levels {
            let flags: &[(bool, bool)] = match mode {
                Mode::Open if a < b => &[(false, false)],
                Mode::Open => &[],
                Mode::Closed => &[(true, true)],
                Mode::Convex if a == b => &[(true, true)],
                Mode::Convex => &[(false, false), (true, false), (false, true), (true, true)],
            };
            for &(lc, rc) in flags {
                out.push(Choice { a, b, lc, rc });
            }
        }
    }
    out
}

struct Search {
    levels: usize,
    choices: Vec<Choice>,
    /// `targets[k]`: set of non-empty projections of the target onto the first `k` neurons.
    targets: Vec<u64>,
}

impl Search {
    /// Pieces are indexed `2t` for level `t` and `2t + 1` for the gap above it.
    fn apply(&self, masks: &mut [u64], c: &Choice, bit: u64) {
        for t in 0..self.levels {
            if c.covers_point(t) {
                masks[2 * t] |= bit;
            }
            if t + 1 < self.levels && c.covers_gap(t) {
                masks[2 * t + 1] |= bit;
            }
        }
    }

    fn seen(masks: &[u64]) -> u64 {
        masks.iter().filter(|&&m| m != 0).fold(0u64, |acc, &m| acc | 1 << m)
    }

    fn dfs(&self, depth: usize, masks: &mut Vec<u64>, picked: &mut Vec<Choice>) -> bool {
        if depth == self.targets.len() - 1 {
            return true;
        }
        for c in &self.choices {
            let saved = masks.clone();
            self.apply(masks, c, 1 << depth);
            if Self::seen(masks) == self.targets[depth + 1] {
                picked.push(*c);
                if self.dfs(depth + 1, masks, picked) {
                    return true;
                }
                picked.pop();
            }
            *masks = saved;
        }
        false
    }

    fn from_first(&self, first: &Choice) -> Option<Vec<Choice>> {
        let mut masks = vec![0u64; 2 * self.levels - 1];
        self.apply(&mut masks, first, 1);
        if Self::seen(&masks) != self.targets[1] {
            return None;
        }
        let mut picked = vec![*first];
        self.dfs(1, &mut masks, &mut picked).then_some(picked)
    }
}

/// Decides whether `code` has a realization by intervals of the given mode
/// and returns one if so. The empty codeword is ignored: the complement of a
/// bounded cover is always non-empty.
pub fn search_realization_1d(code: &Code, mode: Mode, opts: &SearchOptions) -> Result<Option<Realization1D>> {
    let n = code.n();
    let target: Vec<Codeword> = {
        let mut v = code.without_empty();
        v.sort_unstable();
        v
    };
    let used = code.used_neurons().support();
    let u = used.len();
    let cap = opts.cap.min(HARD_CAP);
    if u > cap {
        return Err(Error::Capacity { what: "used neurons for the interval search", value: u, cap });
    }
    if u == 0 {
        return Ok(Some(Realization1D::new(mode, vec![Interval1D::Empty; n])?));
    }

    // compact bit k <-> neuron used[k]
    let compact = |w: Codeword| -> u64 {
        used.iter().enumerate().filter(|(_, &i)| w.contains(i)).fold(0u64, |acc, (k, _)| acc | 1 << k)
    };
    let targets: Vec<u64> = (0..=u)
        .map(|k| {
            let prefix = (1u64 << k) - 1;
            target.iter().map(|&w| compact(w) & prefix).filter(|&m| m != 0).fold(0u64, |acc, m| acc | 1 << m)
        })
        .collect();

    let levels = 2 * u;
    let search = Search { levels, choices: choices(mode, levels), targets };

    let found = if opts.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::Realization(format!("thread pool: {e}")))?;
        pool.install(|| search.choices.par_iter().find_map_first(|c| search.from_first(c)))
    } else {
        search.choices.iter().find_map(|c| search.from_first(c))
    };

    let Some(picked) = found else { return Ok(None) };
    let mut intervals = vec![Interval1D::Empty; n];
    for (k, c) in picked.iter().enumerate() {
        let span = Span::new(int(c.a as i64), int(c.b as i64), c.lc, c.rc);
        intervals[used[k] - 1] = Interval1D::Span(span);
    }
    let r = Realization1D::new(mode, intervals)?;
    let realized = code_of(&r)?;
    if realized.words() != target.as_slice() {
        return Err(Error::Realization(format!("search produced {realized} instead of the target")));
    }
    Ok(Some(r))
}

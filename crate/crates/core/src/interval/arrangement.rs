use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{format_rational, Rational, Realization1D, Span};
use crate::code::{maximal_codewords, Code, Codeword};
use crate::error::{Error, Result};

/// Elementary piece of an arrangement: an endpoint, or the open gap after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Piece {
    Point(usize),
    Gap(usize),
}

/// Endpoints of a realization with the neuron set covering each piece.
struct Arrangement {
    points: Vec<Rational>,
    /// pieces in left-to-right order with their membership masks
    pieces: Vec<(Piece, u64)>,
}

impl Arrangement {
    fn build(u: &Realization1D) -> Result<Self> {
        u.validate()?;
        let points = u.endpoints();
        let mut pieces = Vec::with_capacity(points.len() * 2);
        for (t, x) in points.iter().enumerate() {
            let mut mask = 0u64;
            for (i, s) in u.spans() {
                if s.contains(x) {
                    mask |= 1 << i;
                }
            }
            pieces.push((Piece::Point(t), mask));
            if let Some(next) = points.get(t + 1) {
                let mut mask = 0u64;
                for (i, s) in u.spans() {
                    if s.contains_gap(x, next) {
                        mask |= 1 << i;
                    }
                }
                pieces.push((Piece::Gap(t), mask));
            }
        }
        Ok(Arrangement { points, pieces })
    }

    fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.pieces.iter().map(|&(_, m)| m)
    }

    /// Merges runs of adjacent pieces whose membership satisfies `pred`.
    fn spans_where(&self, pred: impl Fn(u64) -> bool) -> Vec<Span> {
        let mut out = Vec::new();
        let mut run: Option<(Piece, Piece)> = None;
        for &(piece, mask) in &self.pieces {
            if pred(mask) {
                run = Some(match run {
                    Some((start, _)) => (start, piece),
                    None => (piece, piece),
                });
            } else if let Some((start, end)) = run.take() {
                out.push(self.span_of(start, end));
            }
        }
        if let Some((start, end)) = run {
            out.push(self.span_of(start, end));
        }
        out
    }

    fn span_of(&self, start: Piece, end: Piece) -> Span {
        let (a, lc) = match start {
            Piece::Point(t) => (self.points[t].clone(), true),
            Piece::Gap(t) => (self.points[t].clone(), false),
        };
        let (b, rc) = match end {
            Piece::Point(t) => (self.points[t].clone(), true),
            Piece::Gap(t) => (self.points[t + 1].clone(), false),
        };
        Span::new(a, b, lc, rc)
    }
}

/// The non-empty codewords with non-empty atoms, ascending by mask.
pub fn codewords_of(u: &Realization1D) -> Result<Vec<Codeword>> {
    let arr = Arrangement::build(u)?;
    let mut words: Vec<Codeword> = arr.masks().filter(|&m| m != 0).map(Codeword).collect();
    words.sort_unstable();
    words.dedup();
    Ok(words)
}

/// C(U): the code realized by `u`, ascending by mask, without the empty word.
pub fn code_of(u: &Realization1D) -> Result<Code> {
    let words = codewords_of(u)?;
    if words.is_empty() {
        return Err(Error::Realization("realization covers no point, C(U) is empty".into()));
    }
    Code::new(u.n(), words)
}

/// Atom decomposition: for each realized codeword, the maximal runs of the
/// line that code exactly that codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomTable {
    pub entries: BTreeMap<Codeword, Vec<Span>>,
}

impl AtomTable {
    pub fn get(&self, w: Codeword) -> Option<&[Span]> {
        self.entries.get(&w).map(|v| v.as_slice())
    }

    pub fn codewords(&self) -> Vec<Codeword> {
        self.entries.keys().copied().collect()
    }

    pub fn to_json(&self, n: usize) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(w, spans)| {
                json!({
                    "codeword": w.to_bits(n),
                    "pieces": spans.iter().map(|s| json!({
                        "a": format_rational(&s.a),
                        "b": format_rational(&s.b),
                        "lc": s.left_closed,
                        "rc": s.right_closed,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        Value::Array(entries)
    }
}

pub fn atoms(u: &Realization1D) -> Result<AtomTable> {
    let arr = Arrangement::build(u)?;
    let mut entries = BTreeMap::new();
    for w in codewords_of(u)? {
        entries.insert(w, arr.spans_where(|m| m == w.0));
    }
    Ok(AtomTable { entries })
}

/// For every maximal codeword τ of C(U), checks atom(τ) = U_τ, the plain
/// intersection of the intervals in τ.
pub fn check_maximal_atoms(u: &Realization1D) -> Result<bool> {
    let arr = Arrangement::build(u)?;
    let words = codewords_of(u)?;
    if words.is_empty() {
        return Ok(true);
    }
    let code = Code::new(u.n(), words)?;
    for tau in maximal_codewords(&code).iter() {
        let t = tau.0;
        let atom_equals_intersection = arr.pieces.iter().all(|&(_, m)| (m == t) == (m & t == t));
        if !atom_equals_intersection {
            return Ok(false);
        }
    }
    Ok(true)
}

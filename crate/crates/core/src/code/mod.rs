//! Binary neural codes.
//!
//! A [`Codeword`] is a set of neurons stored as a bit mask (neuron `i` is bit
//! `i - 1`). A [`Code`] is an ordered list of distinct codewords on `n`
//! neurons. The order matters: the neural ring uses it as the basis index.

mod format;
mod predicates;

pub use format::{parse_code_json, parse_code_text, to_code_text, CodeJson};
pub use predicates::{
    find_dim1_obstructions, intersection_complete, is_doublet_maximal, is_max_intersection_complete,
    is_max_intersection_complete_strict,
    maximal_codewords, DoubletReport, ObstructionKind, ObstructionWitness,
};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_NEURONS: usize = 64;

/// A subset of the neurons `1..=n`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Codeword(pub u64);

impl Codeword {
    pub const EMPTY: Codeword = Codeword(0);

    /// Builds a codeword from 1-based neuron indices.
    pub fn from_neurons<I: IntoIterator<Item = usize>>(neurons: I) -> Self {
        let mut mask = 0u64;
        for i in neurons {
            assert!((1..=MAX_NEURONS).contains(&i), "neuron index {i} out of range");
            mask |= 1 << (i - 1);
        }
        Codeword(mask)
    }

    /// Parses the compact digit notation used in the literature ("123" is
    /// neurons 1, 2 and 3). Only meaningful for n <= 9; "-" or "" is empty.
    pub fn from_digits(s: &str) -> Self {
        if s == "-" {
            return Codeword::EMPTY;
        }
        Codeword::from_neurons(s.chars().map(|c| {
            let d = c.to_digit(10).expect("digit notation only accepts 1-9") as usize;
            assert!(d >= 1, "neuron 0 does not exist");
            d
        }))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, neuron: usize) -> bool {
        (1..=MAX_NEURONS).contains(&neuron) && self.0 >> (neuron - 1) & 1 == 1
    }

    /// 1-based indices of the active neurons, ascending.
    pub fn support(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize + 1);
            m &= m - 1;
        }
        out
    }

    pub fn is_subset_of(self, other: Codeword) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Codeword) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn intersect(self, other: Codeword) -> Codeword {
        Codeword(self.0 & other.0)
    }

    pub fn union(self, other: Codeword) -> Codeword {
        Codeword(self.0 | other.0)
    }

    /// Binary string of length `n`, neuron 1 first ("110" is {1, 2}).
    pub fn to_bits(self, n: usize) -> String {
        (1..=n).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    /// Digit notation ("123"); neurons above 9 are comma separated.
    pub fn to_digits(self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        let s = self.support();
        if s.iter().all(|&i| i <= 9) {
            s.iter().map(|i| i.to_string()).collect()
        } else {
            s.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_digits())
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_digits())
    }
}

pub(crate) fn neuron_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An ordered collection of distinct codewords on `n` neurons.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Code {
    n: usize,
    words: Vec<Codeword>,
}

impl Code {
    /// Validates and builds a code. Input order is kept; duplicates are an error.
    pub fn new(n: usize, words: Vec<Codeword>) -> Result<Self> {
        if n == 0 || n > MAX_NEURONS {
            return Err(Error::NeuronCount(n));
        }
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        let limit = neuron_mask(n);
        let mut seen = HashSet::with_capacity(words.len());
        for (index, w) in words.iter().enumerate() {
            if w.0 & !limit != 0 {
                return Err(Error::WordOutOfRange { word: w.to_digits(), n });
            }
            if !seen.insert(*w) {
                return Err(Error::DuplicateCodeword { word: w.to_bits(n), index: index + 1 });
            }
        }
        Ok(Code { n, words })
    }

    /// Builds a code keeping the first occurrence of repeated words.
    pub fn from_words_dedup(n: usize, words: impl IntoIterator<Item = Codeword>) -> Result<Self> {
        let mut seen = HashSet::new();
        let words: Vec<_> = words.into_iter().filter(|w| seen.insert(*w)).collect();
        Code::new(n, words)
    }

    /// Convenience constructor from digit notation, e.g. `["12", "23"]`.
    pub fn from_digit_words(n: usize, words: &[&str]) -> Result<Self> {
        Code::new(n, words.iter().map(|w| Codeword::from_digits(w)).collect())
    }

    /// Convenience constructor from binary strings, e.g. `["110", "011"]`.
    pub fn from_bit_words(words: &[&str]) -> Result<Self> {
        let n = words.first().map(|w| w.len()).unwrap_or(0);
        let mut out = Vec::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.len() != n {
                return Err(Error::Parse { line: i + 1, msg: format!("bit string {w:?} has length != {n}") });
            }
            out.push(format::parse_bits(w).ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("not a bit string: {w:?}"),
            })?);
        }
        Code::new(n, out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of codewords.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = Codeword> + '_ {
        self.words.iter().copied()
    }

    pub fn contains(&self, w: Codeword) -> bool {
        self.words.contains(&w)
    }

    pub fn position(&self, w: Codeword) -> Option<usize> {
        self.words.iter().position(|&x| x == w)
    }

    /// Codewords sorted by mask, for order-insensitive comparison.
    pub fn sorted_words(&self) -> Vec<Codeword> {
        let mut v = self.words.clone();
        v.sort_unstable();
        v
    }

    pub fn set_eq(&self, other: &Code) -> bool {
        self.n == other.n && self.sorted_words() == other.sorted_words()
    }

    /// The code with the empty codeword removed (if present).
    pub fn without_empty(&self) -> Vec<Codeword> {
        self.words.iter().copied().filter(|w| !w.is_empty()).collect()
    }

    /// Union of all supports: the neurons that fire somewhere.
    pub fn used_neurons(&self) -> Codeword {
        self.words.iter().fold(Codeword::EMPTY, |acc, &w| acc.union(w))
    }

    /// Column `j` (1-based) as a bit vector over codeword indices.
    pub fn column(&self, neuron: usize) -> Vec<bool> {
        self.words.iter().map(|w| w.contains(neuron)).collect()
    }

    /// Display in the bit-string form, e.g. `{110, 011}`.
    pub fn to_bits_string(&self) -> String {
        let parts: Vec<_> = self.words.iter().map(|w| w.to_bits(self.n)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.words.iter().map(|w| w.to_digits()).collect();
        write!(f, "Code(n={}, {{{}}})", self.n, parts.join(","))
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.words.iter().map(|w| w.to_digits()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

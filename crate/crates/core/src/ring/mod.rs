//! The neural ring of a code as `F2^m`, and its unity-preserving endomorphisms.
//!
//! Coordinates follow the code order: coordinate `i` of a [`RingElement`] is
//! the coefficient of the indicator `rho_i` of codeword `c_i`. A ring
//! endomorphism fixing 1 sends `rho_i` to a sum of disjoint indicators that
//! together cover every coordinate exactly once, so it is determined by an
//! index function `f`: coordinate `k` of the image of `y` is `y[f(k)]`.

mod census;

pub use census::{enumerate_nrh, CensusFilter, CensusOptions, CensusReport, DEFAULT_CENSUS_CAP, PRUNED_CENSUS_CAP};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::Code;
use crate::error::{Error, Result};
use crate::maps::CodeMap;

/// Ring sizes are limited by the bit vector width.
pub const MAX_RING_DIM: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElement {
    m: usize,
    bits: u64,
}

impl RingElement {
    pub fn new(m: usize, bits: u64) -> Self {
        assert!((1..=MAX_RING_DIM).contains(&m), "ring dimension {m} out of range");
        RingElement { m, bits: bits & full(m) }
    }

    pub fn zero(m: usize) -> Self {
        RingElement::new(m, 0)
    }

    pub fn one(m: usize) -> Self {
        RingElement::new(m, full(m))
    }

    /// `rho_i`, with `i` 1-based.
    pub fn rho(m: usize, i: usize) -> Self {
        assert!((1..=m).contains(&i), "basis index {i} outside 1..={m}");
        RingElement::new(m, 1 << (i - 1))
    }

    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        let bits = coeffs.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |acc, (k, _)| acc | 1 << k);
        RingElement::new(coeffs.len(), bits)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Coefficient of `rho_i`, 1-based.
    pub fn coeff(&self, i: usize) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }

    /// Number of basis indicators in the expansion.
    pub fn norm(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        same_dim(self.m, other.m)?;
        Ok(RingElement::new(self.m, self.bits ^ other.bits))
    }

    /// Product in `R_C`: indicators are orthogonal idempotents, so this is a
    /// coordinatewise AND.
    pub fn multiply(&self, other: &RingElement) -> Result<RingElement> {
        same_dim(self.m, other.m)?;
        Ok(RingElement::new(self.m, self.bits & other.bits))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return f.write_str("0");
        }
        let terms: Vec<String> = (1..=self.m).filter(|&i| self.coeff(i)).map(|i| format!("rho{i}")).collect();
        f.write_str(&terms.join(" + "))
    }
}

fn full(m: usize) -> u64 {
    crate::code::neuron_mask(m)
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::RingMismatch(a, b));
    }
    Ok(())
}

/// `x_j`: the sum of the indicators of the codewords in which neuron `j` fires.
pub fn x_element(code: &Code, j: usize) -> RingElement {
    assert!((1..=code.n()).contains(&j), "neuron {j} outside 1..={}", code.n());
    RingElement::from_coeffs(&code.column(j))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndoClass {
    /// Basis permutation map: `f` is a bijection.
    #[serde(rename = "BPM")]
    Bpm,
    /// Unity map: `f` is constant.
    #[serde(rename = "UM")]
    Um,
    Other,
}

impl fmt::Display for EndoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EndoClass::Bpm => "BPM",
            EndoClass::Um => "UM",
            EndoClass::Other => "Other",
        })
    }
}

/// A unity-preserving endomorphism of `F2^m`, stored as its index function
/// (0-based internally).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Endomorphism {
    f: Vec<usize>,
}

impl Endomorphism {
    /// From 0-based values.
    pub fn new(f: Vec<usize>) -> Result<Self> {
        let m = f.len();
        if m == 0 || m > MAX_RING_DIM {
            return Err(Error::RingMismatch(m, MAX_RING_DIM));
        }
        if let Some(&bad) = f.iter().find(|&&v| v >= m) {
            return Err(Error::Map(format!("index function value {} outside 1..={m}", bad + 1)));
        }
        Ok(Endomorphism { f })
    }

    /// From 1-based values, e.g. `[2, 3, 1]` for `1 -> 2, 2 -> 3, 3 -> 1`.
    pub fn from_one_based(f: &[usize]) -> Result<Self> {
        if f.contains(&0) {
            return Err(Error::Map("index function values are 1-based".into()));
        }
        Endomorphism::new(f.iter().map(|v| v - 1).collect())
    }

    pub fn identity(m: usize) -> Self {
        Endomorphism { f: (0..m).collect() }
    }

    pub fn constant(m: usize, value: usize) -> Self {
        assert!(value < m);
        Endomorphism { f: vec![value; m] }
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    /// 0-based index function.
    pub fn values(&self) -> &[usize] {
        &self.f
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.f.iter().map(|v| v + 1).collect()
    }

    /// The vectors `a_i`: `a_i[k] = 1` iff `f(k) = i`, so `rho_i` maps to `a_i`.
    pub fn a_vectors(&self) -> Vec<RingElement> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let bits = self.f.iter().enumerate().filter(|(_, &v)| v == i).fold(0u64, |acc, (k, _)| acc | 1 << k);
                RingElement::new(m, bits)
            })
            .collect()
    }

    pub fn apply(&self, y: &RingElement) -> Result<RingElement> {
        same_dim(self.dim(), y.dim())?;
        let bits = self.f.iter().enumerate().filter(|(_, &v)| y.bits >> v & 1 == 1).fold(0u64, |acc, (k, _)| acc | 1 << k);
        Ok(RingElement::new(self.dim(), bits))
    }

    /// `self ∘ other` as ring maps, whose index function is `other ∘ self`.
    pub fn then_after(&self, other: &Endomorphism) -> Result<Endomorphism> {
        same_dim(self.dim(), other.dim())?;
        Ok(Endomorphism { f: self.f.iter().map(|&k| other.f[k]).collect() })
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.dim()];
        self.f.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn inverse(&self) -> Result<Endomorphism> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let mut g = vec![0; self.dim()];
        for (k, &v) in self.f.iter().enumerate() {
            g[v] = k;
        }
        Ok(Endomorphism { f: g })
    }

    /// Bijections are checked first, so on a one-element code the single
    /// map counts as BPM.
    pub fn classify(&self) -> EndoClass {
        if self.is_bijective() {
            EndoClass::Bpm
        } else if self.f.iter().all(|&v| v == self.f[0]) {
            EndoClass::Um
        } else {
            EndoClass::Other
        }
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endomorphism{:?}", self.one_based())
    }
}

/// `alpha^-1 ∘ phi ∘ alpha` for a bijective `alpha`; its index function is
/// `a ∘ f ∘ a^-1`.
pub fn conjugate(phi: &Endomorphism, alpha: &Endomorphism) -> Result<Endomorphism> {
    same_dim(phi.dim(), alpha.dim())?;
    let inv = alpha.inverse()?;
    let f = (0..phi.dim()).map(|k| alpha.f[phi.f[inv.f[k]]]).collect();
    Ok(Endomorphism { f })
}

/// The set `{x_1, ..., x_n, 0, 1}` that neural homomorphisms must map each
/// `x_j` into.
pub fn membership_set(code: &Code) -> HashSet<RingElement> {
    let m = code.len();
    let mut set: HashSet<RingElement> = (1..=code.n()).map(|j| x_element(code, j)).collect();
    set.insert(RingElement::zero(m));
    set.insert(RingElement::one(m));
    set
}

/// Whether `phi` sends every `x_j` to some `x_i`, to 0 or to 1. Neurons are
/// checked in ascending order and the first failure stops the scan.
pub fn is_neural(phi: &Endomorphism, code: &Code) -> Result<bool> {
    same_dim(phi.dim(), code.len())?;
    let allowed = membership_set(code);
    for j in 1..=code.n() {
        if !allowed.contains(&phi.apply(&x_element(code, j))?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The basis bijection `a` with `q(c_i) = c'_{a(i)}` for an iso-type map `q`
/// from `code` onto `target`.
pub fn induced_bijection(code: &Code, q: &CodeMap, target: &Code) -> Result<Endomorphism> {
    same_dim(code.len(), target.len())?;
    let mut a = Vec::with_capacity(code.len());
    for w in code.iter() {
        let img = q.apply_word(w, code.n())?;
        a.push(target.position(img).ok_or_else(|| Error::NotInTarget { word: img.to_bits(target.n()) })?);
    }
    let e = Endomorphism::new(a)?;
    if !e.is_bijective() {
        return Err(Error::NotBijective);
    }
    Ok(e)
}

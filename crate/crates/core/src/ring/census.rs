//! Exhaustive census of neural ring homomorphisms among the `m^m`
//! unity-preserving endomorphisms of a code's ring.
//!
//! Index functions are enumerated depth first, one coordinate at a time. The
//! images `phi(x_j)` are built incrementally: assigning `f(k) = v` sets bit
//! `k` of `phi(x_j)` for every neuron `j` of codeword `c_v`. A branch is cut
//! as soon as some partial image is not a prefix of an allowed value, which
//! leaves the count exact.

use std::time::Instant;

use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::EndoClass;
use crate::circulant::circulant_support;
use crate::code::Code;
use crate::error::{Error, Result};

/// Largest code size accepted for a plain census.
pub const DEFAULT_CENSUS_CAP: usize = 9;
/// Largest code size accepted with norm pruning and at least
/// [`PRUNED_CAP_WORKERS`] workers.
pub const PRUNED_CENSUS_CAP: usize = 10;
pub const PRUNED_CAP_WORKERS: usize = 8;
/// Prefix tables hold `2^m` bits, which bounds any explicit cap.
const HARD_CENSUS_LIMIT: usize = 16;

/// Restricts the census to one class of index functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CensusFilter {
    #[default]
    All,
    Only(EndoClass),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusOptions {
    pub filter: CensusFilter,
    /// Discard index functions whose fiber sizes give some `phi(x_i)` a norm
    /// no allowed value has. Only honoured on circulant codes.
    pub prune: bool,
    pub workers: usize,
    /// Overrides the default size cap.
    pub cap: Option<usize>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { filter: CensusFilter::All, prune: false, workers: 1, cap: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub m: usize,
    pub n: usize,
    /// Size of the enumerated class of index functions.
    pub total_functions: u64,
    pub nrh_total: u64,
    pub bpm_nrh: u64,
    pub um_nrh: u64,
    pub other_nrh: u64,
    pub pruned: bool,
    pub elapsed_ms: u64,
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Counts {
    bpm: u64,
    um: u64,
    other: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts { bpm: self.bpm + o.bpm, um: self.um + o.um, other: self.other + o.other }
    }
}

fn bit(set: &[u64], i: u64) -> bool {
    set[(i >> 6) as usize] >> (i & 63) & 1 == 1
}

fn set_bit(set: &mut [u64], i: u64) {
    set[(i >> 6) as usize] |= 1 << (i & 63);
}

struct Engine {
    m: usize,
    n: usize,
    words: Vec<u64>,
    /// `prefixes[k]`: bitset of the allowed values truncated to their first `k` bits.
    prefixes: Vec<Vec<u64>>,
}

struct State {
    img: Vec<u64>,
    fiber: Vec<u8>,
    distinct: usize,
}

impl Engine {
    fn new(code: &Code) -> Self {
        let m = code.len();
        let n = code.n();
        let words: Vec<u64> = code.iter().map(|w| w.0).collect();
        let mut allowed: Vec<u64> = (1..=n)
            .map(|j| words.iter().enumerate().filter(|(_, &w)| w >> (j - 1) & 1 == 1).fold(0u64, |a, (k, _)| a | 1 << k))
            .collect();
        allowed.push(0);
        allowed.push(crate::code::neuron_mask(m));
        let prefixes = (0..=m)
            .map(|k| {
                let mut set = vec![0u64; ((1usize << k) + 63) / 64];
                let mask = crate::code::neuron_mask(k);
                for &v in &allowed {
                    set_bit(&mut set, if k == 0 { 0 } else { v & mask });
                }
                set
            })
            .collect();
        Engine { m, n, words, prefixes }
    }

    fn fresh(&self) -> State {
        State { img: vec![0; self.n], fiber: vec![0; self.m], distinct: 0 }
    }

    /// Assigns `f(k) = v`; returns false (after undoing) when some partial
    /// image leaves the allowed prefixes.
    fn push(&self, st: &mut State, k: usize, v: usize) -> bool {
        let w = self.words[v];
        let mut rest = w;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            st.img[j] |= 1 << k;
            rest &= rest - 1;
        }
        if st.fiber[v] == 0 {
            st.distinct += 1;
        }
        st.fiber[v] += 1;
        let table = &self.prefixes[k + 1];
        if st.img.iter().all(|&x| bit(table, x)) {
            true
        } else {
            self.pop(st, k, v);
            false
        }
    }

    fn pop(&self, st: &mut State, k: usize, v: usize) {
        let mut rest = self.words[v];
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            st.img[j] &= !(1 << k);
            rest &= rest - 1;
        }
        st.fiber[v] -= 1;
        if st.fiber[v] == 0 {
            st.distinct -= 1;
        }
    }

    fn leaf(&self, st: &State) -> Counts {
        if st.distinct == self.m {
            Counts { bpm: 1, ..Counts::default() }
        } else if st.distinct == 1 {
            Counts { um: 1, ..Counts::default() }
        } else {
            Counts { other: 1, ..Counts::default() }
        }
    }

    fn dfs(&self, st: &mut State, k: usize, cap: Option<&[u8]>) -> Counts {
        if k == self.m {
            return self.leaf(st);
        }
        let mut total = Counts::default();
        for v in 0..self.m {
            if let Some(c) = cap {
                if st.fiber[v] >= c[v] {
                    continue;
                }
            }
            if self.push(st, k, v) {
                total = total + self.dfs(st, k + 1, cap);
                self.pop(st, k, v);
            }
        }
        total
    }

    /// Counts all completions of a fixed prefix of values.
    fn run(&self, prefix: &[usize], cap: Option<&[u8]>) -> Counts {
        let mut st = self.fresh();
        for (k, &v) in prefix.iter().enumerate() {
            if cap.is_some_and(|c| st.fiber[v] >= c[v]) || !self.push(&mut st, k, v) {
                return Counts::default();
            }
        }
        self.dfs(&mut st, prefix.len(), cap)
    }
}

/// Fiber-size vectors `s` (summing to `m`) accepted by `keep`.
fn compositions(m: usize, keep: &dyn Fn(&[u8]) -> bool) -> Vec<Vec<u8>> {
    fn rec(v: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>, m: usize, keep: &dyn Fn(&[u8]) -> bool) {
        if v == m - 1 {
            cur.push(left as u8);
            if keep(cur) {
                out.push(cur.clone());
            }
            cur.pop();
            return;
        }
        for s in 0..=left {
            cur.push(s as u8);
            rec(v + 1, left - s, cur, out, m, keep);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, &mut Vec::with_capacity(m), &mut out, m, keep);
    out
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

fn class_size(m: usize, filter: CensusFilter) -> u64 {
    let all = (m as u64).pow(m as u32);
    let bpm = factorial(m);
    let um = if m == 1 { 0 } else { m as u64 };
    match filter {
        CensusFilter::All => all,
        CensusFilter::Only(EndoClass::Bpm) => bpm,
        CensusFilter::Only(EndoClass::Um) => um,
        CensusFilter::Only(EndoClass::Other) => all - bpm - um,
    }
}

fn composition_class(s: &[u8]) -> EndoClass {
    if s.iter().all(|&x| x == 1) {
        EndoClass::Bpm
    } else if s.iter().filter(|&&x| x > 0).count() == 1 {
        EndoClass::Um
    } else {
        EndoClass::Other
    }
}

/// Counts the neural ring homomorphisms among the unity-preserving
/// endomorphisms of `R_C`, broken down by class.
pub fn enumerate_nrh(code: &Code, opts: &CensusOptions) -> Result<CensusReport> {
    let start = Instant::now();
    let m = code.len();
    let workers = opts.workers.max(1);

    let circulant = circulant_support(code).is_some();
    if opts.prune && !circulant {
        warn!("norm pruning is only applied to circulant codes; running the plain census");
    }
    let prune = opts.prune && circulant;
    let default_cap =
        if prune && workers >= PRUNED_CAP_WORKERS { PRUNED_CENSUS_CAP } else { DEFAULT_CENSUS_CAP };
    let cap = opts.cap.unwrap_or(default_cap).min(HARD_CENSUS_LIMIT);
    if m > cap {
        return Err(Error::Capacity { what: "code size for the census", value: m, cap });
    }

    let engine = Engine::new(code);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Map(format!("thread pool: {e}")))?;

    let wanted = |class: EndoClass| match opts.filter {
        CensusFilter::All => true,
        CensusFilter::Only(c) => c == class,
    };

    let counts = if prune || matches!(opts.filter, CensusFilter::Only(EndoClass::Bpm | EndoClass::Um)) {
        // norms of phi(x_i) are fiber-size sums over the support of x_i
        let supports: Vec<u64> = (1..=code.n())
            .map(|j| code.iter().enumerate().filter(|(_, w)| w.contains(j)).fold(0u64, |a, (k, _)| a | 1 << k))
            .collect();
        let mut norms: Vec<usize> = supports.iter().map(|s| s.count_ones() as usize).collect();
        norms.extend([0, m]);
        let keep = |s: &[u8]| {
            wanted(composition_class(s))
                && (!prune
                    || supports.iter().all(|&sup| {
                        let norm: usize = (0..m).filter(|&v| sup >> v & 1 == 1).map(|v| s[v] as usize).sum();
                        norms.contains(&norm)
                    }))
        };
        let comps = compositions(m, &keep);
        let run = |s: &Vec<u8>| engine.run(&[], Some(s));
        if workers > 1 {
            pool.install(|| comps.par_iter().map(run).reduce(Counts::default, |a, b| a + b))
        } else {
            comps.iter().map(run).fold(Counts::default(), |a, b| a + b)
        }
    } else {
        let depth = m.min(2);
        let prefixes: Vec<Vec<usize>> = (0..m.pow(depth as u32))
            .map(|mut x| {
                let mut p = vec![0; depth];
                for slot in p.iter_mut().rev() {
                    *slot = x % m;
                    x /= m;
                }
                p
            })
            .collect();
        let run = |p: &Vec<usize>| engine.run(p, None);
        if workers > 1 {
            pool.install(|| prefixes.par_iter().map(run).reduce(Counts::default, |a, b| a + b))
        } else {
            prefixes.iter().map(run).fold(Counts::default(), |a, b| a + b)
        }
    };

    let keep = |c: EndoClass, v: u64| if wanted(c) { v } else { 0 };
    let (bpm, um, other) =
        (keep(EndoClass::Bpm, counts.bpm), keep(EndoClass::Um, counts.um), keep(EndoClass::Other, counts.other));
    Ok(CensusReport {
        m,
        n: code.n(),
        total_functions: class_size(m, opts.filter),
        nrh_total: bpm + um + other,
        bpm_nrh: bpm,
        um_nrh: um,
        other_nrh: other,
        pruned: prune,
        elapsed_ms: start.elapsed().as_millis() as u64,
        workers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{is_neural, Endomorphism};

    /// Walks every index function as a mixed-radix counter and asks the
    /// ring-level predicate, with no pruning of any kind.
    fn naive(code: &Code) -> (u64, u64, u64) {
        let m = code.len();
        let mut f = vec![0usize; m];
        let (mut bpm, mut um, mut other) = (0, 0, 0);
        loop {
            let phi = Endomorphism::new(f.clone()).unwrap();
            if is_neural(&phi, code).unwrap() {
                match phi.classify() {
                    EndoClass::Bpm => bpm += 1,
                    EndoClass::Um => um += 1,
                    EndoClass::Other => other += 1,
                }
            }
            let mut k = 0;
            while k < m {
                f[k] += 1;
                if f[k] < m {
                    break;
                }
                f[k] = 0;
                k += 1;
            }
            if k == m {
                return (bpm, um, other);
            }
        }
    }

    fn census(code: &Code, opts: CensusOptions) -> CensusReport {
        enumerate_nrh(code, &opts).unwrap()
    }

    fn triple(r: &CensusReport) -> (u64, u64, u64) {
        (r.bpm_nrh, r.um_nrh, r.other_nrh)
    }

    #[test]
    fn matches_naive_enumeration() {
        let codes = [
            Code::from_bit_words(&["1001", "1100", "0110", "0011"]).unwrap(),
            Code::from_bit_words(&["100", "010", "001"]).unwrap(),
            Code::from_bit_words(&["110", "011", "010", "000"]).unwrap(),
            Code::from_digit_words(4, &["1", "12", "2", "23", "34"]).unwrap(),
            Code::from_digit_words(3, &["-", "1", "13"]).unwrap(),
        ];
        for c in &codes {
            let r = census(c, CensusOptions::default());
            assert_eq!(triple(&r), naive(c), "{c:?}");
            let par = census(c, CensusOptions { workers: 3, ..Default::default() });
            assert_eq!(triple(&par), triple(&r));
        }
    }

    #[test]
    fn circulant_4_2() {
        let c = Code::from_bit_words(&["1001", "1100", "0110", "0011"]).unwrap();
        let r = census(&c, CensusOptions::default());
        assert_eq!((r.nrh_total, r.bpm_nrh, r.um_nrh, r.other_nrh), (36, 8, 4, 24));
        assert_eq!(r.total_functions, 256);
        assert!(!r.pruned);
        let p = census(&c, CensusOptions { prune: true, ..Default::default() });
        assert!(p.pruned);
        assert_eq!(triple(&p), triple(&r));
    }

    #[test]
    fn filters() {
        let c = Code::from_bit_words(&["1001", "1100", "0110", "0011"]).unwrap();
        let bpm = census(&c, CensusOptions { filter: CensusFilter::Only(EndoClass::Bpm), ..Default::default() });
        assert_eq!((bpm.total_functions, bpm.nrh_total, bpm.um_nrh), (24, 8, 0));
        let um = census(&c, CensusOptions { filter: CensusFilter::Only(EndoClass::Um), ..Default::default() });
        assert_eq!((um.total_functions, um.nrh_total), (4, 4));
        let other = census(&c, CensusOptions { filter: CensusFilter::Only(EndoClass::Other), ..Default::default() });
        assert_eq!((other.total_functions, other.nrh_total), (256 - 24 - 4, 24));
    }

    #[test]
    fn single_codeword() {
        let c = Code::from_digit_words(2, &["12"]).unwrap();
        let r = census(&c, CensusOptions::default());
        assert_eq!((r.total_functions, r.nrh_total, r.bpm_nrh), (1, 1, 1));
    }

    #[test]
    fn pruning_refused_off_circulant() {
        let c = Code::from_digit_words(3, &["1", "12", "3"]).unwrap();
        let r = census(&c, CensusOptions { prune: true, ..Default::default() });
        assert!(!r.pruned);
        assert_eq!(triple(&r), naive(&c));
    }

    #[test]
    fn cap() {
        let words: Vec<String> = (1..=10).map(|i| i.to_string()).collect();
        let c = Code::new(10, words.iter().map(|w| crate::code::Codeword::from_neurons([w.parse().unwrap()])).collect()).unwrap();
        assert!(matches!(
            enumerate_nrh(&c, &CensusOptions::default()),
            Err(Error::Capacity { value: 10, cap: 9, .. })
        ));
    }

    #[test]
    fn composition_listing() {
        assert_eq!(compositions(3, &|_| true).len(), 10);
        assert_eq!(compositions(1, &|_| true), vec![vec![1]]);
    }
}

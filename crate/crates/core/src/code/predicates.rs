use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Code, Codeword};

/// M(C): codewords not strictly contained in another codeword. Order follows C.
pub fn maximal_codewords(code: &Code) -> Code {
    let words: Vec<Codeword> = code
        .iter()
        .filter(|&s| !code.iter().any(|t| s.is_proper_subset_of(t)))
        .collect();
    // a non-empty code always has at least one maximal element
    Code::new(code.n(), words).expect("maximal codewords of a valid code form a valid code")
}

/// All non-empty intersections of non-empty families of the given words,
/// ascending by mask.
pub fn intersection_complete(code: &Code) -> Vec<Codeword> {
    closure_of(code.iter())
}

fn closure_of(words: impl Iterator<Item = Codeword>) -> Vec<Codeword> {
    let mut set: BTreeSet<Codeword> = words.filter(|w| !w.is_empty()).collect();
    let mut frontier: Vec<Codeword> = set.iter().copied().collect();
    while !frontier.is_empty() {
        let base: Vec<Codeword> = set.iter().copied().collect();
        let mut next = Vec::new();
        for &f in &frontier {
            for &b in &base {
                let x = f.intersect(b);
                if !x.is_empty() && !set.contains(&x) {
                    next.push(x);
                }
            }
        }
        for &x in &next {
            set.insert(x);
        }
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    set.into_iter().collect()
}

/// True iff every non-empty intersection of maximal codewords is a codeword.
pub fn is_max_intersection_complete(code: &Code) -> bool {
    intersection_complete(&maximal_codewords(code)).into_iter().all(|w| code.contains(w))
}

/// Stricter variant that also treats an empty intersection of maximal
/// codewords as an intersection the code must contain.
pub fn is_max_intersection_complete_strict(code: &Code) -> bool {
    if !is_max_intersection_complete(code) {
        return false;
    }
    let all = maximal_codewords(code).iter().fold(Codeword(u64::MAX), |acc, w| acc.intersect(w));
    // some family of maximal words meets in nothing iff all of them do
    !all.is_empty() || code.contains(Codeword::EMPTY)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubletReport {
    pub doublet_maximal: bool,
    /// Pairs of maximal codewords with non-empty intersection, in code order.
    pub pairs: Vec<(Codeword, Codeword)>,
}

/// Doublet-maximal test: each maximal codeword meets at most one other maximal one.
pub fn is_doublet_maximal(code: &Code) -> DoubletReport {
    let max = maximal_codewords(code);
    let m = max.words();
    let mut pairs = Vec::new();
    let mut degree = vec![0usize; m.len()];
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            if !m[i].intersect(m[j]).is_empty() {
                pairs.push((m[i], m[j]));
                degree[i] += 1;
                degree[j] += 1;
            }
        }
    }
    DoubletReport { doublet_maximal: degree.iter().all(|&d| d <= 1), pairs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionKind {
    /// Singletons {i},{j},{k} plus one codeword containing all three.
    TripleInMaximal,
    /// Singletons {i},{j},{k} plus, for each pair, a codeword containing the
    /// pair but not the third neuron.
    TriplePairwise,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub kind: ObstructionKind,
    pub neurons: (usize, usize, usize),
    pub witnesses: Vec<Codeword>,
}

/// Patterns that rule out any convex realization on the line.
///
/// One witness per (kind, neuron triple); the codewords reported are the
/// first matches in code order.
pub fn find_dim1_obstructions(code: &Code) -> Vec<ObstructionWitness> {
    let singles: Vec<usize> = (1..=code.n())
        .filter(|&i| code.contains(Codeword::from_neurons([i])))
        .collect();
    let mut out = Vec::new();
    for a in 0..singles.len() {
        for b in a + 1..singles.len() {
            for c in b + 1..singles.len() {
                let (i, j, k) = (singles[a], singles[b], singles[c]);
                let single = |x| Codeword::from_neurons([x]);
                let triple = Codeword::from_neurons([i, j, k]);
                if let Some(sigma) = code.iter().find(|&s| triple.is_subset_of(s)) {
                    out.push(ObstructionWitness {
                        kind: ObstructionKind::TripleInMaximal,
                        neurons: (i, j, k),
                        witnesses: vec![single(i), single(j), single(k), sigma],
                    });
                }
                let pair_without = |x: usize, y: usize, z: usize| {
                    code.iter().find(|&s| s.contains(x) && s.contains(y) && !s.contains(z))
                };
                if let (Some(ij), Some(ik), Some(jk)) =
                    (pair_without(i, j, k), pair_without(i, k, j), pair_without(j, k, i))
                {
                    out.push(ObstructionWitness {
                        kind: ObstructionKind::TriplePairwise,
                        neurons: (i, j, k),
                        witnesses: vec![single(i), single(j), single(k), ij, ik, jk],
                    });
                }
            }
        }
    }
    out
}

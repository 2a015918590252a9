//! Elementary code maps and their compositions.
//!
//! Every code map between codes arising from a neural ring homomorphism is a
//! composition of the five stages in [`ElementaryMap`]. Neurons are 1-based
//! throughout.

mod analysis;

pub use analysis::{
    check_mic_preservation, classify_deletion, is_surjective, maximal_correspondence, verify_monotone,
    DeletionKind, MaximalReport, MicCheck, TransferKind,
};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::code::{neuron_mask, Code, CodeJson, Codeword};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryMap {
    /// Output neuron `j` copies input neuron `perm[j - 1]`.
    Permutation(Vec<usize>),
    /// Appends neuron `n + 1`, always on (`true`) or always off.
    AddTrivial(bool),
    /// Appends neuron `n + 1` as a copy of the given neuron.
    AddDuplicate(usize),
    /// Removes the given neuron; later neurons shift down by one.
    DeleteNeuron(usize),
    /// Identity on words, landing in a larger code on the same neurons.
    Inclusion(Code),
}

impl ElementaryMap {
    /// Output neuron count for an input on `n` neurons.
    pub fn output_arity(&self, n: usize) -> Result<usize> {
        match self {
            ElementaryMap::Permutation(perm) => {
                if perm.len() != n {
                    return Err(Error::Arity { expected: perm.len(), found: n });
                }
                let mut seen = vec![false; n + 1];
                for &i in perm {
                    if i == 0 || i > n || seen[i] {
                        return Err(Error::Map(format!("{perm:?} is not a permutation of 1..={n}")));
                    }
                    seen[i] = true;
                }
                Ok(n)
            }
            ElementaryMap::AddTrivial(_) => grow(n),
            ElementaryMap::AddDuplicate(src) => {
                check_neuron(*src, n)?;
                grow(n)
            }
            ElementaryMap::DeleteNeuron(i) => {
                check_neuron(*i, n)?;
                if n == 1 {
                    return Err(Error::Map("cannot delete the only neuron".into()));
                }
                Ok(n - 1)
            }
            ElementaryMap::Inclusion(target) => {
                if target.n() != n {
                    return Err(Error::Arity { expected: target.n(), found: n });
                }
                Ok(n)
            }
        }
    }

    /// Image of one word; the caller guarantees it lives on `n` neurons.
    pub fn apply_word(&self, w: Codeword, n: usize) -> Result<Codeword> {
        Ok(match self {
            ElementaryMap::Permutation(perm) => Codeword::from_neurons(
                perm.iter().enumerate().filter(|(_, &src)| w.contains(src)).map(|(j, _)| j + 1),
            ),
            ElementaryMap::AddTrivial(on) => {
                if *on {
                    w.union(Codeword::from_neurons([n + 1]))
                } else {
                    w
                }
            }
            ElementaryMap::AddDuplicate(src) => {
                if w.contains(*src) {
                    w.union(Codeword::from_neurons([n + 1]))
                } else {
                    w
                }
            }
            ElementaryMap::DeleteNeuron(i) => {
                let low = w.0 & neuron_mask(i - 1);
                let high = (w.0 >> i) << (i - 1);
                Codeword(low | high)
            }
            ElementaryMap::Inclusion(target) => {
                if !target.contains(w) {
                    return Err(Error::NotInTarget { word: w.to_bits(n) });
                }
                w
            }
        })
    }

    /// True for maps that induce a bijection of codewords on every code.
    pub fn is_iso_type(&self) -> bool {
        matches!(self, ElementaryMap::Permutation(_) | ElementaryMap::AddTrivial(_) | ElementaryMap::AddDuplicate(_))
    }
}

fn grow(n: usize) -> Result<usize> {
    if n >= crate::code::MAX_NEURONS {
        return Err(Error::NeuronCount(n + 1));
    }
    Ok(n + 1)
}

fn check_neuron(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::Map(format!("neuron {i} outside 1..={n}")));
    }
    Ok(())
}

/// A non-empty chain of elementary maps, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeMap {
    stages: Vec<ElementaryMap>,
}

/// The image of a code: first-occurrence order plus how many input words
/// landed on each image word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapImage {
    pub code: Code,
    pub multiplicities: Vec<usize>,
}

impl CodeMap {
    pub fn new(stages: Vec<ElementaryMap>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::Map("a code map needs at least one stage".into()));
        }
        Ok(CodeMap { stages })
    }

    pub fn single(stage: ElementaryMap) -> Self {
        CodeMap { stages: vec![stage] }
    }

    pub fn identity(n: usize) -> Self {
        CodeMap::single(ElementaryMap::Permutation((1..=n).collect()))
    }

    pub fn stages(&self) -> &[ElementaryMap] {
        &self.stages
    }

    /// Checks the arity chain starting from `n` and returns the final arity.
    pub fn output_arity(&self, n: usize) -> Result<usize> {
        self.stages.iter().try_fold(n, |k, s| s.output_arity(k))
    }

    pub fn apply_word(&self, w: Codeword, n: usize) -> Result<Codeword> {
        let mut k = n;
        let mut w = w;
        for s in &self.stages {
            let next = s.output_arity(k)?;
            w = s.apply_word(w, k)?;
            k = next;
        }
        Ok(w)
    }

    pub fn apply_with_multiplicity(&self, code: &Code) -> Result<MapImage> {
        let out_n = self.output_arity(code.n())?;
        let mut order: Vec<Codeword> = Vec::new();
        let mut counts: HashMap<Codeword, usize> = HashMap::new();
        for w in code.iter() {
            let image = self.apply_word(w, code.n())?;
            let c = counts.entry(image).or_insert(0);
            if *c == 0 {
                order.push(image);
            }
            *c += 1;
        }
        let multiplicities = order.iter().map(|w| counts[w]).collect();
        Ok(MapImage { code: Code::new(out_n, order)?, multiplicities })
    }

    /// q(C), keeping the order of first preimage occurrence.
    pub fn apply(&self, code: &Code) -> Result<Code> {
        Ok(self.apply_with_multiplicity(code)?.code)
    }

    /// The code the map lands in: the image, unless an inclusion stage named
    /// a larger target, in which case later stages are applied to that target.
    pub fn codomain(&self, code: &Code) -> Result<Code> {
        let mut cur = code.clone();
        for s in &self.stages {
            cur = match s {
                ElementaryMap::Inclusion(target) => {
                    s.output_arity(cur.n())?;
                    for w in cur.iter() {
                        s.apply_word(w, cur.n())?;
                    }
                    target.clone()
                }
                _ => CodeMap::single(s.clone()).apply(&cur)?,
            };
        }
        Ok(cur)
    }
}

/// Wire form of a single stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StageJson {
    Perm(Vec<usize>),
    AddTrivial(u8),
    Dup(usize),
    Delete(usize),
    IncludeInto(CodeJson),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeMapJson {
    pub stages: Vec<StageJson>,
}

impl TryFrom<StageJson> for ElementaryMap {
    type Error = Error;

    fn try_from(s: StageJson) -> Result<Self> {
        Ok(match s {
            StageJson::Perm(p) => ElementaryMap::Permutation(p),
            StageJson::AddTrivial(0) => ElementaryMap::AddTrivial(false),
            StageJson::AddTrivial(1) => ElementaryMap::AddTrivial(true),
            StageJson::AddTrivial(b) => return Err(Error::Map(format!("add_trivial expects 0 or 1, got {b}"))),
            StageJson::Dup(i) => ElementaryMap::AddDuplicate(i),
            StageJson::Delete(i) => ElementaryMap::DeleteNeuron(i),
            StageJson::IncludeInto(c) => ElementaryMap::Inclusion(Code::try_from(c)?),
        })
    }
}

impl From<&ElementaryMap> for StageJson {
    fn from(m: &ElementaryMap) -> Self {
        match m {
            ElementaryMap::Permutation(p) => StageJson::Perm(p.clone()),
            ElementaryMap::AddTrivial(b) => StageJson::AddTrivial(*b as u8),
            ElementaryMap::AddDuplicate(i) => StageJson::Dup(*i),
            ElementaryMap::DeleteNeuron(i) => StageJson::Delete(*i),
            ElementaryMap::Inclusion(c) => StageJson::IncludeInto(CodeJson::from(c)),
        }
    }
}

impl TryFrom<CodeMapJson> for CodeMap {
    type Error = Error;

    fn try_from(j: CodeMapJson) -> Result<Self> {
        CodeMap::new(j.stages.into_iter().map(ElementaryMap::try_from).collect::<Result<_>>()?)
    }
}

impl From<&CodeMap> for CodeMapJson {
    fn from(m: &CodeMap) -> Self {
        CodeMapJson { stages: m.stages.iter().map(StageJson::from).collect() }
    }
}

pub fn parse_code_map_json(s: &str) -> Result<CodeMap> {
    let j: CodeMapJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    CodeMap::try_from(j)
}

use serde::{Deserialize, Serialize};

use super::{CodeMap, ElementaryMap};
use crate::code::{intersection_complete, is_max_intersection_complete, maximal_codewords, Code, Codeword};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeletionKind {
    /// Column is constant over the code.
    TrivialDeletion,
    /// Column equals another column.
    DuplicateDeletion,
    ProperProjection,
}

pub fn classify_deletion(code: &Code, neuron: usize) -> Result<DeletionKind> {
    if neuron == 0 || neuron > code.n() {
        return Err(Error::Map(format!("neuron {neuron} outside 1..={}", code.n())));
    }
    let col = code.column(neuron);
    if col.iter().all(|&b| b == col[0]) {
        return Ok(DeletionKind::TrivialDeletion);
    }
    if (1..=code.n()).any(|j| j != neuron && code.column(j) == col) {
        return Ok(DeletionKind::DuplicateDeletion);
    }
    Ok(DeletionKind::ProperProjection)
}

/// Whether `q` maps `c` onto `d` (as sets). Arity or membership errors count as false.
pub fn is_surjective(q: &CodeMap, c: &Code, d: &Code) -> bool {
    q.apply(c).map(|img| img.set_eq(d)).unwrap_or(false)
}

/// `σ ⊆ τ` implies `q(σ) ⊆ q(τ)` for all pairs of codewords.
pub fn verify_monotone(q: &CodeMap, c: &Code) -> Result<bool> {
    let images: Vec<(Codeword, Codeword)> =
        c.iter().map(|w| q.apply_word(w, c.n()).map(|x| (w, x))).collect::<Result<_>>()?;
    Ok(images
        .iter()
        .all(|&(s, qs)| images.iter().all(|&(t, qt)| !s.is_subset_of(t) || qs.is_subset_of(qt))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum MicCheck {
    Preserved,
    /// `missing` is the intersection of the listed maximal image words but is
    /// not itself an image word.
    Violated { maximal: Vec<Codeword>, missing: Codeword },
    PreconditionFailed(String),
}

/// Re-checks max-intersection completeness on the image of a surjective map
/// out of a max-intersection complete code.
pub fn check_mic_preservation(q: &CodeMap, c: &Code) -> Result<MicCheck> {
    if !is_max_intersection_complete(c) {
        return Ok(MicCheck::PreconditionFailed("source code is not max-intersection complete".into()));
    }
    let image = q.apply(c)?;
    let codomain = q.codomain(c)?;
    if !image.set_eq(&codomain) {
        return Ok(MicCheck::PreconditionFailed("map is not surjective onto its codomain".into()));
    }
    let max = maximal_codewords(&image);
    for w in intersection_complete(&max) {
        if !image.contains(w) {
            let maximal = max.iter().filter(|m| w.is_subset_of(*m)).collect();
            return Ok(MicCheck::Violated { maximal, missing: w });
        }
    }
    Ok(MicCheck::Preserved)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransferKind {
    /// The map is a bijection on codewords; maximality transfers both ways.
    Iso,
    /// A proper projection; maximal image words have maximal preimages.
    Projection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalReport {
    pub kind: TransferKind,
    pub holds: bool,
    /// M(q(C)), in image order.
    pub image_maximal: Vec<Codeword>,
    /// q(M(C)), deduplicated.
    pub mapped_maximal: Vec<Codeword>,
    /// Maximal image words with no maximal preimage.
    pub unmatched: Vec<Codeword>,
    /// Maximal words of C whose image is not maximal, with that image.
    pub demoted: Vec<(Codeword, Codeword)>,
}

/// Compares maximal codewords before and after one elementary map.
pub fn maximal_correspondence(q: &ElementaryMap, c: &Code) -> Result<MaximalReport> {
    let kind = match q {
        ElementaryMap::Inclusion(_) => {
            return Err(Error::Map("maximal correspondence is not defined for inclusions".into()))
        }
        ElementaryMap::DeleteNeuron(i) => match classify_deletion(c, *i)? {
            DeletionKind::ProperProjection => TransferKind::Projection,
            _ => TransferKind::Iso,
        },
        _ => TransferKind::Iso,
    };
    let qm = CodeMap::single(q.clone());
    let image = qm.apply(c)?;
    let image_max = maximal_codewords(&image);
    let source_max = maximal_codewords(c);

    let mut mapped = Vec::new();
    let mut demoted = Vec::new();
    for s in source_max.iter() {
        let img = q.apply_word(s, c.n())?;
        if !mapped.contains(&img) {
            mapped.push(img);
        }
        if !image_max.contains(img) {
            demoted.push((s, img));
        }
    }
    let unmatched: Vec<Codeword> = image_max.iter().filter(|w| !mapped.contains(w)).collect();
    let holds = match kind {
        TransferKind::Iso => unmatched.is_empty() && demoted.is_empty(),
        TransferKind::Projection => unmatched.is_empty(),
    };
    Ok(MaximalReport { kind, holds, image_maximal: image_max.words().to_vec(), mapped_maximal: mapped, unmatched, demoted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::is_max_intersection_complete_strict;

    fn bits(w: &[&str]) -> Code {
        Code::from_bit_words(w).unwrap()
    }

    fn non_mic() -> Code {
        Code::from_digit_words(5, &["3", "5", "12", "13", "14", "45", "123", "124", "145"]).unwrap()
    }

    fn six() -> Code {
        bits(&["100", "010", "001", "011", "101", "110"])
    }

    #[test]
    fn deletion_kinds() {
        assert_eq!(classify_deletion(&bits(&["10", "00"]), 2).unwrap(), DeletionKind::TrivialDeletion);
        assert_eq!(classify_deletion(&bits(&["11", "00"]), 2).unwrap(), DeletionKind::DuplicateDeletion);
        assert_eq!(classify_deletion(&six(), 3).unwrap(), DeletionKind::ProperProjection);
        assert!(classify_deletion(&six(), 4).is_err());
    }

    #[test]
    fn surjectivity() {
        let del = CodeMap::single(ElementaryMap::DeleteNeuron(3));
        assert!(is_surjective(&del, &six(), &bits(&["00", "10", "01", "11"])));
        let inc = CodeMap::single(ElementaryMap::Inclusion(bits(&["10", "01"])));
        assert!(!is_surjective(&inc, &bits(&["10"]), &bits(&["10", "01"])));
        assert!(is_surjective(&CodeMap::identity(3), &six(), &six()));
    }

    #[test]
    fn monotone_examples() {
        let perm = CodeMap::single(ElementaryMap::Permutation(vec![5, 3, 1, 2, 4]));
        assert!(verify_monotone(&perm, &non_mic()).unwrap());
        assert!(verify_monotone(&CodeMap::single(ElementaryMap::DeleteNeuron(2)), &non_mic()).unwrap());
        let q = CodeMap::new(vec![ElementaryMap::AddDuplicate(1), ElementaryMap::DeleteNeuron(1)]).unwrap();
        assert!(verify_monotone(&q, &non_mic()).unwrap());
    }

    #[test]
    fn mic_examples() {
        let c = bits(&["110", "011", "010"]);
        let del = CodeMap::single(ElementaryMap::DeleteNeuron(3));
        assert_eq!(check_mic_preservation(&del, &c).unwrap(), MicCheck::Preserved);
        // {100,010,001} has pairwise disjoint maximal words, so it is complete
        // and so is its projection {10,01,00}
        let three = bits(&["100", "010", "001"]);
        assert_eq!(check_mic_preservation(&del, &three).unwrap(), MicCheck::Preserved);
        assert!(!is_max_intersection_complete_strict(&three));
        assert!(is_max_intersection_complete_strict(&del.apply(&three).unwrap()));
        assert!(matches!(
            check_mic_preservation(&del, &bits(&["110", "011"])).unwrap(),
            MicCheck::PreconditionFailed(_)
        ));
        assert_eq!(check_mic_preservation(&CodeMap::identity(3), &c).unwrap(), MicCheck::Preserved);
        let inc = CodeMap::single(ElementaryMap::Inclusion(bits(&["110", "011", "010", "111"])));
        assert!(matches!(check_mic_preservation(&inc, &c).unwrap(), MicCheck::PreconditionFailed(_)));
    }

    #[test]
    fn maximal_examples() {
        let r = maximal_correspondence(&ElementaryMap::Permutation(vec![2, 1, 3, 4, 5]), &non_mic()).unwrap();
        assert_eq!(r.kind, TransferKind::Iso);
        assert!(r.holds);
        assert_eq!(r.image_maximal.len(), 3);

        let r = maximal_correspondence(&ElementaryMap::DeleteNeuron(3), &six()).unwrap();
        assert_eq!(r.kind, TransferKind::Projection);
        assert!(r.holds);
        let b = |s: &str| Code::from_bit_words(&[s]).unwrap().words()[0];
        assert!(r.demoted.contains(&(b("011"), b("01"))));

        let r = maximal_correspondence(&ElementaryMap::AddTrivial(false), &six()).unwrap();
        assert!(r.holds);
        assert!(maximal_correspondence(&ElementaryMap::Inclusion(six()), &six()).is_err());
    }
}

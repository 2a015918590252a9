use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{json, Value};

use super::random::{random_code, random_elementary_map, random_mic_code, substream};
use super::{Check, VerifyConfig};
use crate::code::{
    is_max_intersection_complete, is_max_intersection_complete_strict, maximal_codewords, Code, Codeword,
};
use crate::error::Result;
use crate::maps::{check_mic_preservation, maximal_correspondence, verify_monotone, CodeMap, ElementaryMap, MicCheck};

const STREAM_MONOTONE: u64 = 11;
const STREAM_MIC: u64 = 12;
const STREAM_ISO: u64 = 13;

fn kind(q: &ElementaryMap) -> &'static str {
    match q {
        ElementaryMap::Permutation(_) => "permutation",
        ElementaryMap::AddTrivial(false) => "add silent neuron",
        ElementaryMap::AddTrivial(true) => "add always-on neuron",
        ElementaryMap::AddDuplicate(_) => "duplicate neuron",
        ElementaryMap::DeleteNeuron(_) => "delete neuron",
        ElementaryMap::Inclusion(_) => "inclusion",
    }
}

/// Adds the empty word when the maximal codewords have empty common
/// intersection, making a max-intersection complete code complete under the
/// strict reading too.
fn strict_completion(c: &Code) -> Result<Code> {
    let all = maximal_codewords(c).iter().fold(Codeword(u64::MAX), Codeword::intersect);
    if all.is_empty() && !c.contains(Codeword::EMPTY) {
        Code::from_words_dedup(c.n(), c.iter().chain([Codeword::EMPTY]))
    } else {
        Ok(c.clone())
    }
}

fn tally(counts: &BTreeMap<&str, usize>) -> String {
    counts.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", ")
}

pub(super) fn run(cfg: &VerifyConfig) -> Result<(Vec<Check>, Value)> {
    let mut checks = Vec::new();

    let mut rng = substream(cfg.seed, STREAM_MONOTONE);
    let mut monotone_failures = Vec::new();
    for _ in 0..cfg.map_trials {
        let n = rng.gen_range(1..=5);
        let c = random_code(&mut rng, n, 0.35);
        let q = random_elementary_map(&mut rng, n, false);
        if !verify_monotone(&CodeMap::single(q.clone()), &c)? {
            monotone_failures.push(format!("{q:?} on {}", c.to_bits_string()));
        }
    }
    checks.push(Check::new(
        "maps.monotone",
        "elementary maps preserve containment between codewords",
        monotone_failures.is_empty(),
        format!("{} trials, {} failures", cfg.map_trials, monotone_failures.len()),
    ));

    // surjective maps out of max-intersection complete codes
    let mut rng = substream(cfg.seed, STREAM_MIC);
    let mut strict_violations = Vec::new();
    let mut loose_violations: BTreeMap<&str, usize> = BTreeMap::new();
    let mut by_kind: BTreeMap<&str, usize> = BTreeMap::new();
    for _ in 0..cfg.map_trials {
        let n = rng.gen_range(1..=5);
        let c = random_mic_code(&mut rng, n, 0.3);
        let q = random_elementary_map(&mut rng, n, false);
        *by_kind.entry(kind(&q)).or_default() += 1;
        let qm = CodeMap::single(q.clone());
        match check_mic_preservation(&qm, &c)? {
            MicCheck::Preserved => {}
            MicCheck::Violated { .. } => *loose_violations.entry(kind(&q)).or_default() += 1,
            MicCheck::PreconditionFailed(why) => strict_violations.push(format!("precondition: {why}")),
        }
        let strict = strict_completion(&c)?;
        let image = qm.apply(&strict)?;
        if !is_max_intersection_complete_strict(&image) {
            strict_violations.push(format!("{q:?} on {}", strict.to_bits_string()));
        }
    }
    checks.push(Check::new(
        "maps.mic_preserved",
        "the image of a max-intersection complete code under a surjective elementary map is max-intersection complete",
        strict_violations.is_empty(),
        format!("{} instances ({}), {} violations", cfg.map_trials, tally(&by_kind), strict_violations.len()),
    ));
    checks.push(
        Check::new(
            "maps.mic_preserved_nonempty_reading",
            "the same, when empty intersections of maximal codewords are not required to be codewords",
            loose_violations.is_empty(),
            if loose_violations.is_empty() {
                "no violations".to_string()
            } else {
                format!("violations by map kind: {}", tally(&loose_violations))
            },
        )
        .informational(),
    );

    // iso-type maps
    let mut rng = substream(cfg.seed, STREAM_ISO);
    let mut iff_failures = Vec::new();
    let mut loose_iff_failures: BTreeMap<&str, usize> = BTreeMap::new();
    let mut maximal_failures = Vec::new();
    let mut mic_sources = 0;
    for _ in 0..cfg.map_trials {
        let n = rng.gen_range(1..=5);
        let c = if rng.gen_bool(0.5) { random_mic_code(&mut rng, n, 0.3) } else { random_code(&mut rng, n, 0.3) };
        let q = random_elementary_map(&mut rng, n, true);
        let qm = CodeMap::single(q.clone());
        let image = qm.apply(&c)?;
        let before = is_max_intersection_complete_strict(&c);
        mic_sources += before as usize;
        if before != is_max_intersection_complete_strict(&image) {
            iff_failures.push(format!("{q:?} on {}", c.to_bits_string()));
        }
        if is_max_intersection_complete(&c) != is_max_intersection_complete(&image) {
            *loose_iff_failures.entry(kind(&q)).or_default() += 1;
        }
        if !maximal_codewords(&image).set_eq(&qm.apply(&maximal_codewords(&c))?) {
            maximal_failures.push(format!("{q:?} on {}", c.to_bits_string()));
        }
    }
    checks.push(Check::new(
        "maps.iso_mic_iff",
        "a code is max-intersection complete iff its image under an iso-type map is",
        iff_failures.is_empty(),
        format!("{} instances, {mic_sources} complete sources, {} failures", cfg.map_trials, iff_failures.len()),
    ));
    checks.push(
        Check::new(
            "maps.iso_mic_iff_nonempty_reading",
            "the same, when empty intersections of maximal codewords are not required to be codewords",
            loose_iff_failures.is_empty(),
            if loose_iff_failures.is_empty() {
                "no failures".to_string()
            } else {
                format!("failures by map kind: {}", tally(&loose_iff_failures))
            },
        )
        .informational(),
    );
    checks.push(Check::new(
        "maps.iso_maximal",
        "iso-type maps send the maximal codewords exactly onto the maximal codewords of the image",
        maximal_failures.is_empty(),
        format!("{} instances, {} failures", cfg.map_trials, maximal_failures.len()),
    ));

    // fixed examples
    let c = Code::from_bit_words(&["100", "010", "001", "011", "101", "110"])?;
    let proj = maximal_correspondence(&ElementaryMap::DeleteNeuron(3), &c)?;
    let demoted_ok = proj.holds && proj.demoted.contains(&(Codeword::from_neurons([2, 3]), Codeword::from_neurons([2])));
    let mip = Code::from_digit_words(5, &["3", "5", "12", "13", "14", "45", "123", "124", "145"])?;
    let swap = maximal_correspondence(&ElementaryMap::Permutation(vec![2, 1, 3, 4, 5]), &mip)?;
    let silent = maximal_correspondence(&ElementaryMap::AddTrivial(false), &mip)?;
    checks.push(Check::new(
        "maps.maximal_examples",
        "projection can demote a maximal codeword (011 to 01) while every maximal image word keeps a maximal preimage; \
         permutations and silent neurons match maximal codewords one to one",
        demoted_ok && swap.holds && silent.holds,
        format!("projection demoted {:?}, permutation {}, silent neuron {}", proj.demoted, swap.holds, silent.holds),
    ));

    let strict_c = Code::from_bit_words(&["100", "010", "001"])?;
    let projected = CodeMap::single(ElementaryMap::DeleteNeuron(3)).apply(&strict_c)?;
    let strict_ok = !is_max_intersection_complete_strict(&strict_c) && is_max_intersection_complete_strict(&projected);
    checks.push(Check::new(
        "maps.projection_gains_completeness",
        "{100,010,001} is not complete under the strict reading while its projection {10,01,00} is",
        strict_ok,
        format!("projection {}", projected.to_bits_string()),
    ));

    let payload = json!({
        "trials": cfg.map_trials,
        "mic_instances_by_kind": by_kind,
        "nonempty_reading_violations": loose_violations,
        "nonempty_reading_iso_failures": loose_iff_failures,
    });
    Ok((checks, payload))
}

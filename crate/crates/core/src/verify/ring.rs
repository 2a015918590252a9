use std::collections::HashSet;

use rand::Rng;
use serde_json::{json, Value};

use super::random::{random_code, random_elementary_map, substream};
use super::{Check, VerifyConfig};
use crate::circulant::{circulant_code, CirculantSpec};
use crate::code::Code;
use crate::error::Result;
use crate::maps::CodeMap;
use crate::ring::{
    conjugate, enumerate_nrh, induced_bijection, is_neural, CensusOptions, EndoClass, Endomorphism, RingElement,
};

const STREAM_LAWS: u64 = 21;
const STREAM_UNITY: u64 = 22;
const STREAM_MONOID: u64 = 23;
const STREAM_CONJUGATION: u64 = 24;

/// All `m^m` index functions in mixed-radix order.
fn all_functions(m: usize) -> Vec<Endomorphism> {
    let total = m.pow(m as u32);
    (0..total)
        .map(|mut k| {
            let f = (0..m)
                .map(|_| {
                    let d = k % m;
                    k /= m;
                    d
                })
                .collect();
            Endomorphism::new(f).expect("values below m")
        })
        .collect()
}

fn neural_set(code: &Code) -> Result<Vec<Endomorphism>> {
    all_functions(code.len()).into_iter().filter_map(|phi| is_neural(&phi, code).map(|ok| ok.then_some(phi)).transpose()).collect()
}

fn random_endo(rng: &mut impl Rng, m: usize) -> Endomorphism {
    Endomorphism::new((0..m).map(|_| rng.gen_range(0..m)).collect()).expect("values below m")
}

fn random_element(rng: &mut impl Rng, m: usize) -> RingElement {
    let mask = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    RingElement::new(m, rng.gen::<u64>() & mask)
}

/// A code with at most `max_words` codewords on at most `max_n` neurons.
fn small_code(rng: &mut impl Rng, max_n: usize, max_words: usize) -> Result<Code> {
    let n = rng.gen_range(1..=max_n);
    let c = random_code(rng, n, 0.4);
    let keep = rng.gen_range(1..=max_words.min(c.len()));
    Code::new(n, c.words()[..keep].to_vec())
}

pub(super) fn run(cfg: &VerifyConfig) -> Result<(Vec<Check>, Value)> {
    let mut checks = Vec::new();

    // endomorphism laws and the shape of the a_i vectors
    let mut rng = substream(cfg.seed, STREAM_LAWS);
    let mut law_failures = 0;
    let mut column_failures = 0;
    for _ in 0..cfg.ring_law_trials {
        let m = rng.gen_range(1..=12);
        let phi = random_endo(&mut rng, m);
        let (y, z) = (random_element(&mut rng, m), random_element(&mut rng, m));
        let mult = phi.apply(&y.multiply(&z)?)? == phi.apply(&y)?.multiply(&phi.apply(&z)?)?;
        let add = phi.apply(&y.add(&z)?)? == phi.apply(&y)?.add(&phi.apply(&z)?)?;
        let unit = phi.apply(&RingElement::one(m))? == RingElement::one(m);
        law_failures += !(mult && add && unit) as usize;
        let a = phi.a_vectors();
        let total: usize = a.iter().map(RingElement::norm).sum();
        let union = a.iter().fold(0u64, |acc, v| acc | v.bits());
        let one_hot = total == m && union == RingElement::one(m).bits();
        let images = (0..m).all(|i| phi.apply(&RingElement::rho(m, i + 1)).map_or(false, |v| v == a[i]));
        column_failures += !(one_hot && images) as usize;
    }
    checks.push(Check::new(
        "ring.endomorphism_laws",
        "index-function maps preserve sums, products and 1",
        law_failures == 0,
        format!("{} random triples, {law_failures} failures", cfg.ring_law_trials),
    ));
    checks.push(Check::new(
        "ring.column_law",
        "the images a_i of the basis are disjoint, cover every coordinate and have total norm m",
        column_failures == 0,
        format!("{} random maps, {column_failures} failures", cfg.ring_law_trials),
    ));

    // constant maps are always neural
    let mut rng = substream(cfg.seed, STREAM_UNITY);
    let mut unity_failures = 0;
    let unity_trials = 200;
    for _ in 0..unity_trials {
        let c = small_code(&mut rng, 6, 12)?;
        for v in 0..c.len() {
            unity_failures += !is_neural(&Endomorphism::constant(c.len(), v), &c)? as usize;
        }
    }
    checks.push(Check::new(
        "ring.unity_maps_neural",
        "every unity map is a neural ring homomorphism",
        unity_failures == 0,
        format!("{unity_trials} random codes, {unity_failures} failures"),
    ));

    // neural homomorphisms form a monoid
    let mut rng = substream(cfg.seed, STREAM_MONOID);
    let mut monoid_codes: Vec<Code> = (0..30).map(|_| small_code(&mut rng, 4, 4)).collect::<Result<_>>()?;
    for (n, p) in [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3)] {
        monoid_codes.push(circulant_code(CirculantSpec::new(n, p)?));
    }
    let mut monoid_failures = Vec::new();
    let mut pairs = 0usize;
    for c in &monoid_codes {
        let nrh = neural_set(c)?;
        let set: HashSet<&Endomorphism> = nrh.iter().collect();
        let mut ok = set.contains(&Endomorphism::identity(c.len()));
        for a in &nrh {
            for b in &nrh {
                pairs += 1;
                ok &= set.contains(&a.then_after(b)?);
            }
        }
        if !ok {
            monoid_failures.push(c.to_bits_string());
        }
    }
    checks.push(Check::new(
        "ring.nrh_monoid",
        "neural ring homomorphisms contain the identity and are closed under composition",
        monoid_failures.is_empty(),
        format!("{} codes with at most 4 codewords, {pairs} composed pairs, {} failures", monoid_codes.len(), monoid_failures.len()),
    ));

    // conjugation by the basis bijection of an iso-type map
    let mut rng = substream(cfg.seed, STREAM_CONJUGATION);
    let mut count_failures = Vec::new();
    let mut bijection_failures = Vec::new();
    let mut spot_checks = 0usize;
    for _ in 0..cfg.conjugation_pairs {
        let c = small_code(&mut rng, 4, 4)?;
        let q = CodeMap::single(random_elementary_map(&mut rng, c.n(), true));
        let target = q.apply(&c)?;
        let opts = CensusOptions { workers: cfg.workers, ..Default::default() };
        let (before, after) = (enumerate_nrh(&c, &opts)?, enumerate_nrh(&target, &opts)?);
        if before.nrh_total != after.nrh_total {
            count_failures.push(format!("{:?} on {}: {} vs {}", q.stages()[0], c.to_bits_string(), before.nrh_total, after.nrh_total));
        }
        let alpha = induced_bijection(&c, &q, &target)?;
        let source_set = neural_set(&c)?;
        let target_set: HashSet<Endomorphism> = neural_set(&target)?.into_iter().collect();
        let mut images = HashSet::new();
        for phi in &source_set {
            spot_checks += 1;
            let psi = conjugate(phi, &alpha)?;
            if !target_set.contains(&psi) || psi.classify() != phi.classify() {
                bijection_failures.push(format!("{phi:?} on {}", c.to_bits_string()));
            }
            images.insert(psi);
        }
        if images.len() != target_set.len() {
            bijection_failures.push(format!("image size {} vs {} on {}", images.len(), target_set.len(), c.to_bits_string()));
        }
    }
    checks.push(Check::new(
        "ring.iso_census_invariant",
        "an iso-type code map leaves the number of neural ring homomorphisms unchanged",
        count_failures.is_empty(),
        format!("{} pairs, {} failures", cfg.conjugation_pairs, count_failures.len()),
    ));
    checks.push(Check::new(
        "ring.conjugation_bijection",
        "conjugating by the induced basis bijection maps neural homomorphisms of a code onto those of its image, keeping the class",
        bijection_failures.is_empty(),
        format!("{spot_checks} homomorphisms conjugated, {} failures", bijection_failures.len()),
    ));

    // fixed examples
    let bpm = Endomorphism::from_one_based(&[2, 3, 1])?.classify() == EndoClass::Bpm;
    let um = Endomorphism::from_one_based(&[2, 2, 2])?.classify() == EndoClass::Um;
    let other = Endomorphism::from_one_based(&[1, 1, 3])?.classify() == EndoClass::Other;
    checks.push(Check::new(
        "ring.classification",
        "a 3-cycle is a basis permutation, a constant is a unity map, anything else is neither",
        bpm && um && other,
        format!("cycle {bpm}, constant {um}, other {other}"),
    ));
    let single = enumerate_nrh(&Code::from_bit_words(&["1"])?, &CensusOptions::default())?;
    checks.push(Check::new(
        "ring.single_codeword",
        "a one-codeword code has exactly one neural homomorphism",
        single.nrh_total == 1,
        format!("census {}", single.nrh_total),
    ));

    let payload = json!({
        "law_trials": cfg.ring_law_trials,
        "monoid_codes": monoid_codes.len(),
        "composed_pairs": pairs,
        "conjugation_pairs": cfg.conjugation_pairs,
        "conjugated_homomorphisms": spot_checks,
    });
    Ok((checks, payload))
}

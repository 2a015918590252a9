use std::collections::BTreeSet;

use rand::Rng;
use serde_json::{json, Value};

use super::random::{random_code, random_realization, substream};
use super::{Check, VerifyConfig};
use crate::code::{find_dim1_obstructions, is_max_intersection_complete, maximal_codewords, Code, Codeword};
use crate::error::Result;
use crate::interval::samples::{doublet_realization, non_mic_realization};
use crate::interval::{
    atoms, check_maximal_atoms, closed_to_open, code_of, desingularize_closed, normalize_closed_epsilon,
    normalize_open_epsilon, open_to_closed, search_realization_1d, Mode, Realization1D, SearchOptions,
};

const STREAM_CONVERSIONS: u64 = 1;
const STREAM_RANDOM_CODES: u64 = 2;

/// Every code on `n` neurons built from non-empty words, in mask order of the
/// subset index. There are `2^(2^n - 1) - 1` of them, so keep `n` small.
pub fn codes_on(n: usize) -> Vec<Code> {
    assert!(n <= 4, "exhaustive code lists are limited to 4 neurons");
    let words = (1u64 << n) - 1;
    (1u64..1 << words)
        .map(|subset| {
            let ws = (0..words).filter(|b| subset >> b & 1 == 1).map(|b| Codeword(b + 1));
            Code::new(n, ws.collect()).expect("distinct words")
        })
        .collect()
}

/// Sorted masks minimised over all relabellings of the neurons: two codes
/// have the same form iff one is a relabelling of the other.
pub fn canonical_form(code: &Code) -> Vec<u64> {
    let n = code.n();
    assert!(n <= 8, "canonical forms are limited to 8 neurons");
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        let mut masks: Vec<u64> = code
            .iter()
            .map(|w| (0..n).filter(|&i| w.mask() >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perm[i]))
            .collect();
        masks.sort_unstable();
        if best.as_ref().map_or(true, |b| masks < *b) {
            best = Some(masks);
        }
        if !next_permutation(&mut perm) {
            return best.expect("at least one permutation");
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Accumulates realizations seen by the battery for the maximal-atom check.
#[derive(Default)]
struct AtomAudit {
    checked: usize,
    failures: Vec<String>,
}

impl AtomAudit {
    fn see(&mut self, u: &Realization1D, origin: &str) -> Result<()> {
        self.checked += 1;
        if !check_maximal_atoms(u)? {
            self.failures.push(origin.to_string());
        }
        Ok(())
    }
}

fn opts(cap: usize, workers: usize) -> SearchOptions {
    SearchOptions { cap, workers }
}

fn realizable(code: &Code, mode: Mode, cap: usize, workers: usize, audit: &mut AtomAudit) -> Result<bool> {
    let found = search_realization_1d(code, mode, &opts(cap, workers))?;
    if let Some(u) = &found {
        audit.see(u, &format!("search {mode:?} {}", code.to_bits_string()))?;
    }
    Ok(found.is_some())
}

fn sample(failures: &[String]) -> String {
    let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
    format!("{} failures, e.g. {}", failures.len(), shown.join("; "))
}

fn code(words: &[&str], n: usize) -> Code {
    Code::from_digit_words(n, words).expect("literal code")
}

pub(super) fn run(cfg: &VerifyConfig) -> Result<(Vec<Check>, Value)> {
    let mut checks = Vec::new();
    let mut audit = AtomAudit::default();
    let w = cfg.workers;

    // reference realizations
    let mip = non_mic_realization();
    let dbl = doublet_realization();
    let mip_ok = code_of(&mip)?.set_eq(&code(&["3", "5", "12", "13", "14", "45", "123", "124", "145"], 5));
    let dbl_ok = code_of(&dbl)?.set_eq(&code(&["2", "4", "12", "23", "45", "46"], 6));
    let point_atom = atoms(&dbl)?
        .get(Codeword::from_digits("2"))
        .map_or(false, |spans| spans.len() == 1 && spans[0].is_singleton());
    checks.push(Check::new(
        "realization.samples",
        "the reference realizations produce their stated codes and the atom of 2 is a single point",
        mip_ok && dbl_ok && point_atom,
        format!("five-interval code {mip_ok}, six-interval code {dbl_ok}, point atom {point_atom}"),
    ));

    // conversions preserve the code
    let mut rng = substream(cfg.seed, STREAM_CONVERSIONS);
    let mut open_inputs = vec![("reference five-interval".to_string(), mip), ("reference six-interval".to_string(), dbl)];
    let mut closed_inputs: Vec<(String, Realization1D)> = Vec::new();
    for t in 0..cfg.random_realizations {
        let n = rng.gen_range(1..=5);
        open_inputs.push((format!("random open #{t}"), random_realization(&mut rng, n, Mode::Open)));
        closed_inputs.push((format!("random closed #{t}"), random_realization(&mut rng, n, Mode::Closed)));
    }
    for (name, u) in &open_inputs[..2] {
        closed_inputs.push((format!("{name} closed"), open_to_closed(u)?));
    }
    let mut conversion_failures = Vec::new();
    let mut applied = 0usize;
    type Transform = fn(&Realization1D) -> Result<Realization1D>;
    let open_ops: [(&str, Transform); 2] =
        [("normalize_open_epsilon", normalize_open_epsilon), ("open_to_closed", open_to_closed)];
    let closed_ops: [(&str, Transform); 3] = [
        ("desingularize_closed", desingularize_closed),
        ("normalize_closed_epsilon", normalize_closed_epsilon),
        ("closed_to_open", closed_to_open),
    ];
    for (inputs, ops) in [(&open_inputs, &open_ops[..]), (&closed_inputs, &closed_ops[..])] {
        for (name, u) in inputs {
            audit.see(u, name)?;
            let before = code_of(u)?;
            for (op, f) in ops {
                applied += 1;
                let out = f(u)?;
                audit.see(&out, &format!("{op}({name})"))?;
                if !code_of(&out)?.set_eq(&before) {
                    conversion_failures.push(format!("{op} on {name}"));
                }
            }
        }
    }
    // round trips through both conversions
    for (name, u) in &open_inputs {
        applied += 1;
        let back = closed_to_open(&open_to_closed(u)?)?;
        audit.see(&back, &format!("round trip {name}"))?;
        if !code_of(&back)?.set_eq(&code_of(u)?) {
            conversion_failures.push(format!("round trip on {name}"));
        }
    }
    checks.push(Check::new(
        "realization.conversions",
        "normalization, desingularization and open/closed conversion leave the code unchanged",
        conversion_failures.is_empty(),
        if conversion_failures.is_empty() {
            format!("{applied} transformations on {} realizations", open_inputs.len() + closed_inputs.len())
        } else {
            sample(&conversion_failures)
        },
    ));

    // open and closed realizability agree
    let mut pool: Vec<(Code, String)> = Vec::new();
    let mut seen = BTreeSet::new();
    for c in codes_on(3) {
        if seen.insert(canonical_form(&c)) {
            pool.push((c, "exhaustive n=3".into()));
        }
    }
    let exhaustive = pool.len();
    let mut rng = substream(cfg.seed, STREAM_RANDOM_CODES);
    for _ in 0..cfg.random_codes_n4 {
        let c = random_code(&mut rng, 4, 0.3);
        let words: Vec<Codeword> = c.iter().filter(|w| !w.is_empty()).collect();
        pool.push((Code::new(4, words)?, "random n=4".into()));
    }
    let mut equivalence_failures = Vec::new();
    let mut soundness_failures = Vec::new();
    let mut open_count = 0;
    let mut obstructed = 0;
    for (c, origin) in &pool {
        let open = realizable(c, Mode::Open, 4, w, &mut audit)?;
        let closed = realizable(c, Mode::Closed, 4, w, &mut audit)?;
        open_count += open as usize;
        if open != closed {
            equivalence_failures.push(format!("{origin} {} open={open} closed={closed}", c.to_bits_string()));
        }
        if !find_dim1_obstructions(c).is_empty() {
            obstructed += 1;
            if open || closed || realizable(c, Mode::Convex, 4, w, &mut audit)? {
                soundness_failures.push(format!("{origin} {}", c.to_bits_string()));
            }
        }
    }
    checks.push(Check::new(
        "realization.open_closed_equivalence",
        "a code is open-realizable on the line iff it is closed-realizable",
        equivalence_failures.is_empty(),
        if equivalence_failures.is_empty() {
            format!(
                "{exhaustive} codes on 3 neurons up to relabelling, {} random codes on 4 neurons; {open_count} realizable",
                cfg.random_codes_n4
            )
        } else {
            sample(&equivalence_failures)
        },
    ));
    checks.push(Check::new(
        "realization.obstruction_soundness",
        "codes with a one-dimensional obstruction have no realization on the line in any mode",
        soundness_failures.is_empty(),
        if soundness_failures.is_empty() {
            format!("{obstructed} obstructed codes in the pool")
        } else {
            sample(&soundness_failures)
        },
    ));

    // {12, 23}: convex yes, open and closed no
    let c = code(&["12", "23"], 3);
    let convex = realizable(&c, Mode::Convex, 4, w, &mut audit)?;
    let open = realizable(&c, Mode::Open, 4, w, &mut audit)?;
    let closed = realizable(&c, Mode::Closed, 4, w, &mut audit)?;
    checks.push(Check::new(
        "realization.convex_only",
        "{12, 23} has a realization by intervals but none by open or by closed intervals",
        convex && !open && !closed,
        format!("convex={convex} open={open} closed={closed}"),
    ));

    // named obstructed codes
    let mut named_ok = true;
    let mut named_detail = Vec::new();
    for (words, n) in [(&["1", "2", "3", "1234"][..], 4), (&["1", "2", "3", "124", "23", "135"][..], 5)] {
        let c = code(words, n);
        let witnesses = find_dim1_obstructions(&c).len();
        let mut any = false;
        for mode in [Mode::Open, Mode::Closed, Mode::Convex] {
            any |= realizable(&c, mode, 5, w, &mut audit)?;
        }
        named_ok &= witnesses > 0 && !any;
        named_detail.push(format!("{{{}}}: {witnesses} witnesses, realizable={any}", words.join(",")));
    }
    checks.push(Check::new(
        "realization.obstructed_examples",
        "{1,2,3,1234} and {1,2,3,124,23,135} have obstruction witnesses and no realization on the line",
        named_ok,
        named_detail.join("; "),
    ));

    // two maximal codewords: open-realizable implies max-intersection complete
    let mut seen = BTreeSet::new();
    let mut two_max = 0;
    let mut realizable_two_max = 0;
    let mut mic_failures = Vec::new();
    for n in 2..=4 {
        for c in codes_on(n) {
            if c.used_neurons().len() < n || maximal_codewords(&c).len() != 2 || !seen.insert(canonical_form(&c)) {
                continue;
            }
            two_max += 1;
            if realizable(&c, Mode::Open, 4, w, &mut audit)? {
                realizable_two_max += 1;
                if !is_max_intersection_complete(&c) {
                    mic_failures.push(c.to_bits_string());
                }
            }
        }
    }
    checks.push(Check::new(
        "realization.two_maximal_mic",
        "an open-realizable code with exactly two maximal codewords is max-intersection complete",
        mic_failures.is_empty(),
        if mic_failures.is_empty() {
            format!("{two_max} codes on at most 4 neurons up to relabelling, {realizable_two_max} realizable")
        } else {
            sample(&mic_failures)
        },
    ));

    checks.push(Check::new(
        "realization.maximal_atoms",
        "in every realization produced, the atom of each maximal codeword is the intersection of its intervals",
        audit.failures.is_empty(),
        if audit.failures.is_empty() { format!("{} realizations", audit.checked) } else { sample(&audit.failures) },
    ));

    let payload = json!({
        "random_realizations": cfg.random_realizations,
        "transformations": applied,
        "equivalence_pool": pool.len(),
        "two_maximal_codes": two_max,
        "realizations_audited": audit.checked,
    });
    Ok((checks, payload))
}

//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The binary exits non-zero when a criterion's outcome differs from the
//! recorded expectation. Criterion 1 is expected to fail: the circulant code
//! n=6, p=3 has 180 neural ring homomorphisms, not 270. The 180 is pinned by
//! a naive enumeration here, independent of the census engine.

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rand::Rng;

use ncode::circulant::{circulant_code, CirculantSpec};
use ncode::code::{
    find_dim1_obstructions, is_max_intersection_complete, is_max_intersection_complete_strict, maximal_codewords,
    Code, Codeword,
};
use ncode::interval::samples::{doublet_realization, non_mic_realization};
use ncode::interval::{
    atoms, check_maximal_atoms, closed_to_open, code_of, desingularize_closed, normalize_closed_epsilon,
    normalize_open_epsilon, open_to_closed, search_realization_1d, Mode, Realization1D, SearchOptions,
};
use ncode::maps::CodeMap;
use ncode::ring::{
    conjugate, enumerate_nrh, induced_bijection, is_neural, CensusFilter, CensusOptions, CensusReport, EndoClass,
    Endomorphism,
};
use ncode::verify::random::{random_code, random_elementary_map, random_mic_code, random_realization, substream};
use ncode::verify::{canonical_form, codes_on};

const SEED: u64 = 20261018;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Every realization the run produces, for criterion 15.
#[derive(Default)]
struct Audit {
    seen: usize,
    bad: usize,
}

impl Audit {
    fn see(&mut self, u: &Realization1D) {
        self.seen += 1;
        if !check_maximal_atoms(u).unwrap() {
            self.bad += 1;
        }
    }
}

fn circ(n: usize, p: usize) -> Code {
    circulant_code(CirculantSpec::new(n, p).unwrap())
}

fn census(code: &Code, filter: CensusFilter, prune: bool, workers: usize) -> (CensusReport, Duration) {
    let start = Instant::now();
    let r = enumerate_nrh(code, &CensusOptions { filter, prune, workers, cap: None }).unwrap();
    (r, start.elapsed())
}

/// Counts index functions through the ring-level membership test, with no
/// shortcut shared with the census engine.
fn naive_count(code: &Code) -> u64 {
    let m = code.len();
    let mut f = vec![0usize; m];
    let mut count = 0;
    loop {
        if is_neural(&Endomorphism::new(f.clone()).unwrap(), code).unwrap() {
            count += 1;
        }
        let mut k = 0;
        while k < m && f[k] == m - 1 {
            f[k] = 0;
            k += 1;
        }
        if k == m {
            return count;
        }
        f[k] += 1;
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn search(code: &Code, mode: Mode, cap: usize, audit: &mut Audit) -> bool {
    let found = search_realization_1d(code, mode, &SearchOptions { cap, workers: 1 }).unwrap();
    if let Some(u) = &found {
        audit.see(u);
    }
    found.is_some()
}

fn digits(n: usize, words: &[&str]) -> Code {
    Code::from_digit_words(n, words).unwrap()
}

fn published_cells(cells: &[(usize, usize, u64)], um_seen: &mut Vec<(usize, usize, u64)>) -> (Vec<String>, Duration) {
    let mut wrong = Vec::new();
    let mut slowest = Duration::ZERO;
    for &(n, p, want) in cells {
        let (r, t) = census(&circ(n, p), CensusFilter::All, false, 1);
        slowest = slowest.max(t);
        um_seen.push((n, p, r.um_nrh));
        if r.nrh_total != want {
            wrong.push(format!("({n},{p}) census {} expected {want}", r.nrh_total));
        }
    }
    (wrong, slowest)
}

fn c1(um: &mut Vec<(usize, usize, u64)>) -> Outcome {
    let (r42, t42) = census(&circ(4, 2), CensusFilter::All, false, 1);
    let (r63, t63) = census(&circ(6, 3), CensusFilter::All, false, 1);
    let (r43, t43) = census(&circ(4, 3), CensusFilter::All, false, 1);
    um.extend([(4, 2, r42.um_nrh), (6, 3, r63.um_nrh), (4, 3, r43.um_nrh)]);
    let naive63 = naive_count(&circ(6, 3));
    let naive42 = naive_count(&circ(4, 2));
    let fast = t42.max(t63).max(t43) < Duration::from_secs(5);

    // the reproducible parts and the cross-checked value are asserted
    assert_eq!((r42.nrh_total, r42.bpm_nrh, r42.um_nrh, r42.other_nrh), (36, 8, 4, 24));
    assert_eq!(naive42, 36);
    assert_eq!(r43.nrh_total, 28);
    assert_eq!((r63.nrh_total, r63.bpm_nrh, r63.um_nrh, naive63), (180, 12, 6, 180));
    assert!(fast);

    outcome(
        r42.nrh_total == 36 && r42.other_nrh == 24 && r63.nrh_total == 270 && r43.nrh_total == 28 && fast,
        format!(
            "(4,2) {} with Other {}; (6,3) {} against 270 (naive enumeration also gives {naive63}); (4,3) {}; slowest {:?}",
            r42.nrh_total, r42.other_nrh, r63.nrh_total, r43.nrh_total, t42.max(t63).max(t43)
        ),
    )
}

fn c2(um: &mut Vec<(usize, usize, u64)>) -> Outcome {
    let mut cells = Vec::new();
    for n in 3..=6usize {
        let want = factorial(n as u64) + n as u64;
        cells.push((n, 1, want));
        cells.push((n, n - 1, want));
    }
    let (wrong, slowest) = published_cells(&cells, um);
    let ok = wrong.is_empty() && slowest < Duration::from_secs(10);
    outcome(ok, format!("9, 28, 125, 726 for p = 1 and p = n-1; slowest {slowest:?} {}", wrong.join(", ")))
}

fn c3(um: &mut Vec<(usize, usize, u64)>) -> Outcome {
    let (wrong, slowest) = published_cells(&[(5, 2, 15), (7, 2, 21), (6, 2, 42), (8, 2, 120)], um);
    let (r8, t8) = census(&circ(8, 2), CensusFilter::All, false, 8);
    let ok = wrong.is_empty() && slowest < Duration::from_secs(120) && r8.nrh_total == 120 && t8 < Duration::from_secs(30);
    outcome(ok, format!("15, 21, 42, 120; n=8 single worker {slowest:?}, 8 workers {t8:?} {}", wrong.join(", ")))
}

fn c4(um: &mut Vec<(usize, usize, u64)>) -> Outcome {
    let (wrong, slowest) = published_cells(&[(7, 3, 21), (8, 3, 24), (7, 5, 21)], um);
    let ok = wrong.is_empty() && slowest < Duration::from_secs(120);
    outcome(ok, format!("21, 24, 21; slowest {slowest:?} {}", wrong.join(", ")))
}

fn c5(um: &mut Vec<(usize, usize, u64)>) -> Outcome {
    let (r, t) = census(&circ(9, 3), CensusFilter::All, true, 8);
    um.push((9, 3, r.um_nrh));
    let ok = r.nrh_total == 189 && r.pruned && r.workers >= 8 && t < Duration::from_secs(1800);
    outcome(ok, format!("{} (BPM {}, UM {}, Other {}), pruned on {} workers in {t:?}", r.nrh_total, r.bpm_nrh, r.um_nrh, r.other_nrh, r.workers))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let mut wrong = Vec::new();
    for n in 4..=7usize {
        for p in 1..n {
            let want = if p == 1 || p == n - 1 { factorial(n as u64) } else { 2 * n as u64 };
            let (r, _) = census(&circ(n, p), CensusFilter::Only(EndoClass::Bpm), false, 1);
            if r.bpm_nrh != want || r.total_functions != factorial(n as u64) {
                wrong.push(format!("({n},{p}) {}", r.bpm_nrh));
            }
        }
    }
    let t = start.elapsed();
    outcome(wrong.is_empty() && t < Duration::from_secs(60), format!("18 cells, all bijections enumerated, {t:?} {}", wrong.join(", ")))
}

fn c7(um: &[(usize, usize, u64)]) -> Outcome {
    let wrong: Vec<String> = um.iter().filter(|(n, _, u)| *u != *n as u64).map(|(n, p, u)| format!("({n},{p}) {u}")).collect();
    outcome(wrong.is_empty(), format!("{} cells from criteria 1-5 {}", um.len(), wrong.join(", ")))
}

fn c8(audit: &mut Audit) -> Outcome {
    let (a, b) = (non_mic_realization(), doublet_realization());
    audit.see(&a);
    audit.see(&b);
    let ca = code_of(&a).unwrap().set_eq(&digits(5, &["3", "5", "12", "13", "14", "45", "123", "124", "145"]));
    let cb = code_of(&b).unwrap().set_eq(&digits(6, &["2", "4", "12", "23", "45", "46"]));
    let atom = atoms(&b).unwrap();
    let spans = atom.get(Codeword::from_digits("2")).unwrap();
    let point = spans.len() == 1 && spans[0].is_singleton();
    outcome(ca && cb && point, format!("five-interval code {ca}, six-interval code {cb}, atom of 2 = {}", spans[0]))
}

fn c9(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut mismatched = Vec::new();
    let mut forms = BTreeSet::new();
    for c in codes_on(3) {
        forms.insert(canonical_form(&c));
        if search(&c, Mode::Open, 4, audit) != search(&c, Mode::Closed, 4, audit) {
            mismatched.push(c.to_bits_string());
        }
    }
    let mut rng = substream(SEED, 9);
    for _ in 0..200 {
        let c = random_code(&mut rng, 4, 0.3);
        if search(&c, Mode::Open, 4, audit) != search(&c, Mode::Closed, 4, audit) {
            mismatched.push(c.to_bits_string());
        }
    }
    let t = start.elapsed();
    outcome(
        mismatched.is_empty() && t < Duration::from_secs(600),
        format!("127 codes on 3 neurons ({} up to relabelling) and 200 random codes on 4, {t:?} {}", forms.len(), mismatched.join(", ")),
    )
}

fn c10(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut rng = substream(SEED, 10);
    let mut opens = vec![non_mic_realization(), doublet_realization()];
    let mut closeds: Vec<Realization1D> = opens.iter().map(|u| open_to_closed(u).unwrap()).collect();
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        opens.push(random_realization(&mut rng, n, Mode::Open));
        closeds.push(random_realization(&mut rng, n, Mode::Closed));
    }
    let mut failures = 0;
    let mut applied = 0;
    let mut run = |u: &Realization1D, f: fn(&Realization1D) -> ncode::Result<Realization1D>, audit: &mut Audit| {
        let out = f(u).unwrap();
        audit.see(&out);
        applied += 1;
        if !code_of(&out).unwrap().set_eq(&code_of(u).unwrap()) {
            failures += 1;
        }
    };
    for u in &opens {
        audit.see(u);
        run(u, normalize_open_epsilon, audit);
        run(u, open_to_closed, audit);
    }
    for u in &closeds {
        audit.see(u);
        run(u, desingularize_closed, audit);
        run(u, normalize_closed_epsilon, audit);
        run(u, closed_to_open, audit);
    }
    let t = start.elapsed();
    outcome(failures == 0 && t < Duration::from_secs(30), format!("{applied} transformations, {failures} changed the code, {t:?}"))
}

fn c11(audit: &mut Audit) -> Outcome {
    let c = digits(3, &["12", "23"]);
    let (convex, open, closed) =
        (search(&c, Mode::Convex, 4, audit), search(&c, Mode::Open, 4, audit), search(&c, Mode::Closed, 4, audit));
    outcome(convex && !open && !closed, format!("convex {convex}, open {open}, closed {closed}"))
}

fn c12(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let c1 = digits(4, &["1", "2", "3", "1234"]);
    let c2 = digits(5, &["1", "2", "3", "124", "23", "135"]);
    let (w1, w2) = (find_dim1_obstructions(&c1).len(), find_dim1_obstructions(&c2).len());
    let mut any = false;
    for mode in [Mode::Open, Mode::Closed, Mode::Convex] {
        any |= search(&c1, mode, 4, audit);
        any |= search(&c2, mode, 5, audit);
    }
    let t = start.elapsed();
    outcome(w1 > 0 && w2 > 0 && !any && t < Duration::from_secs(120), format!("witnesses {w1} and {w2}, realizable {any}, {t:?}"))
}

/// Adds the empty word when all maximal codewords meet in nothing.
fn strict(c: &Code) -> Code {
    let all = maximal_codewords(c).iter().fold(Codeword(u64::MAX), Codeword::intersect);
    if all.is_empty() {
        Code::from_words_dedup(c.n(), c.iter().chain([Codeword::EMPTY])).unwrap()
    } else {
        c.clone()
    }
}

fn c13() -> Outcome {
    let start = Instant::now();
    let mut rng = substream(SEED, 13);
    let mut violations = 0;
    let mut nonempty_reading = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let c = random_mic_code(&mut rng, n, 0.3);
        let q = CodeMap::single(random_elementary_map(&mut rng, n, false));
        assert!(q.apply(&c).unwrap().set_eq(&q.codomain(&c).unwrap()), "elementary maps are onto their image");
        violations += !is_max_intersection_complete_strict(&q.apply(&strict(&c)).unwrap()) as usize;
        nonempty_reading += !is_max_intersection_complete(&q.apply(&c).unwrap()) as usize;
    }
    let mut iff = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let c = if rng.gen_bool(0.5) { random_mic_code(&mut rng, n, 0.3) } else { random_code(&mut rng, n, 0.3) };
        let q = CodeMap::single(random_elementary_map(&mut rng, n, true));
        let img = q.apply(&c).unwrap();
        iff += (is_max_intersection_complete_strict(&c) != is_max_intersection_complete_strict(&img)) as usize;
    }
    let t = start.elapsed();
    outcome(
        violations == 0 && iff == 0 && t < Duration::from_secs(60),
        format!(
            "500 surjective instances, {violations} violations; 500 iso instances, {iff} failures; \
             empty intersections counted as required ({nonempty_reading} images lose completeness when they are not, \
             all through an always-on neuron); {t:?}"
        ),
    )
}

fn neural_set(code: &Code) -> Vec<Endomorphism> {
    let m = code.len();
    (0..m.pow(m as u32))
        .map(|mut k| {
            Endomorphism::new((0..m).map(|_| {
                let d = k % m;
                k /= m;
                d
            }).collect())
            .unwrap()
        })
        .filter(|phi| is_neural(phi, code).unwrap())
        .collect()
}

fn c14() -> Outcome {
    let start = Instant::now();
    let mut rng = substream(SEED, 14);
    let mut count_failures = 0;
    let mut conj_failures = 0;
    let mut spot = 0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let full = random_code(&mut rng, n, 0.4);
        let keep = rng.gen_range(1..=full.len().min(4));
        let c = Code::new(n, full.words()[..keep].to_vec()).unwrap();
        let q = CodeMap::single(random_elementary_map(&mut rng, n, true));
        let d = q.apply(&c).unwrap();
        let (a, b) = (neural_set(&c), neural_set(&d));
        count_failures += (a.len() != b.len()) as usize;
        let engine = enumerate_nrh(&d, &CensusOptions::default()).unwrap().nrh_total;
        count_failures += (engine != b.len() as u64) as usize;
        let alpha = induced_bijection(&c, &q, &d).unwrap();
        let targets: HashSet<&Endomorphism> = b.iter().collect();
        for phi in &a {
            spot += 1;
            conj_failures += !targets.contains(&conjugate(phi, &alpha).unwrap()) as usize;
        }
    }
    let t = start.elapsed();
    outcome(
        count_failures == 0 && conj_failures == 0 && t < Duration::from_secs(60),
        format!("50 pairs, {count_failures} count mismatches; {spot} conjugations, {conj_failures} left the target set; {t:?}"),
    )
}

fn c15(audit: &Audit) -> Outcome {
    outcome(audit.bad == 0 && audit.seen > 0, format!("{} realizations, {} failures", audit.seen, audit.bad))
}

fn c16(audit: &mut Audit) -> Outcome {
    let start = Instant::now();
    let mut seen = BTreeSet::new();
    let (mut total, mut realizable, mut failures) = (0, 0, 0);
    for n in 1..=4 {
        for c in codes_on(n) {
            if c.used_neurons().len() < n || maximal_codewords(&c).len() != 2 || !seen.insert(canonical_form(&c)) {
                continue;
            }
            total += 1;
            if search(&c, Mode::Open, 4, audit) {
                realizable += 1;
                failures += !is_max_intersection_complete(&c) as usize;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        failures == 0 && t < Duration::from_secs(600),
        format!("{total} codes up to relabelling, {realizable} open-realizable, {failures} not complete, {t:?}"),
    )
}

fn c17() -> Outcome {
    let (r74, _) = census(&circ(7, 4), CensusFilter::All, false, 1);
    let (r105, t) = census(&circ(10, 5), CensusFilter::All, true, 8);
    let conj74 = 3 * 7;
    let conj105 = 3 * 10 + 25 * factorial(2) + 5 * 6 * 10;
    outcome(
        true,
        format!(
            "informational: (7,4) census {} vs conjectured {conj74}; (10,5) census {} (BPM {}, UM {}, Other {}) vs conjectured {conj105}, pruned in {t:?}",
            r74.nrh_total, r105.nrh_total, r105.bpm_nrh, r105.um_nrh, r105.other_nrh
        ),
    )
}

fn main() {
    let mut audit = Audit::default();
    let mut um = Vec::new();
    let mut results: Vec<(usize, &str, Outcome)> = vec![
        (1, "explicit circulant counts", c1(&mut um)),
        (2, "support 1 and n-1 give n!+n", c2(&mut um)),
        (3, "support 2 counts", c3(&mut um)),
        (4, "coprime support counts", c4(&mut um)),
        (5, "n=9, p=3 pruned census", c5(&mut um)),
        (6, "neural basis permutations", c6()),
        (7, "neural unity maps", c7(&um)),
        (8, "reference realizations", c8(&mut audit)),
        (9, "open and closed realizability agree", c9(&mut audit)),
        (10, "conversions keep the code", c10(&mut audit)),
        (11, "{12,23} is convex-only", c11(&mut audit)),
        (12, "obstructed codes", c12(&mut audit)),
        (13, "completeness under elementary maps", c13()),
        (14, "iso maps and conjugation", c14()),
        (16, "two maximal codewords", c16(&mut audit)),
        (17, "frontier cells", c17()),
    ];
    // the audit covers every realization produced above
    results.push((15, "maximal atoms", c15(&audit)));
    results.sort_by_key(|r| r.0);

    let mut unexpected = Vec::new();
    for (id, name, out) in &results {
        println!("{} criterion {id:>2} ({name}): {}", if out.passed { "PASS" } else { "FAIL" }, out.detail);
        if out.passed != (*id != 1) {
            unexpected.push(*id);
        }
    }
    let passed = results.iter().filter(|r| r.2.passed).count();
    println!("acceptance: {passed} of {} criteria pass", results.len());
    if !unexpected.is_empty() {
        eprintln!("criteria with an unexpected outcome: {unexpected:?}");
        std::process::exit(1);
    }
}

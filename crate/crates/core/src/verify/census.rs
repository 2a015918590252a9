use num_integer::Integer;
use serde_json::{json, Value};

use super::{Check, VerifyConfig};
use crate::circulant::{
    circulant_code, predicted_count, verify, verify_range, CirculantSpec, PredictionStatus, SupportRule,
    VerificationTable, VerifyOptions,
};
use crate::code::Code;
use crate::error::Result;
use crate::ring::{enumerate_nrh, CensusFilter, CensusOptions, CensusReport, EndoClass};

/// Census counts published for particular cells: `(n, p, total, other)`.
const PUBLISHED: &[(usize, usize, u64, Option<u64>)] = &[
    (4, 2, 36, Some(24)),
    (6, 3, 270, None),
    (4, 3, 28, None),
    (3, 1, 9, None),
    (3, 2, 9, None),
    (4, 1, 28, None),
    (5, 1, 125, None),
    (5, 4, 125, None),
    (6, 1, 726, None),
    (6, 5, 726, None),
    (5, 2, 15, None),
    (7, 2, 21, None),
    (6, 2, 42, None),
    (8, 2, 120, None),
    (7, 3, 21, None),
    (8, 3, 24, None),
    (7, 5, 21, None),
];

/// Workers used for the pruned cells that need them.
const PRUNED_WORKERS: usize = 8;

fn census(code: &Code, filter: CensusFilter, prune: bool, workers: usize) -> Result<CensusReport> {
    enumerate_nrh(code, &CensusOptions { filter, prune, workers, cap: None })
}

fn cell(n: usize, p: usize) -> Result<Code> {
    Ok(circulant_code(CirculantSpec::new(n, p)?))
}

/// The circulant verification table for `n_min..=n_max`, every support.
pub fn circulant_table(n_min: usize, n_max: usize, workers: usize) -> Result<VerificationTable> {
    verify_range(n_min, n_max, SupportRule::All, &VerifyOptions { prune: false, workers, cap: None })
}

pub(super) fn run(cfg: &VerifyConfig) -> Result<(Vec<Check>, Value)> {
    let mut checks = Vec::new();
    let w = cfg.workers;

    let table = circulant_table(cfg.n_min, cfg.n_max, w)?;
    let mismatched: Vec<String> = table
        .rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("({},{}) census {} predicted {:?}", r.n, r.p, r.census.nrh_total, r.prediction.value))
        .collect();
    let theorem_rows = table.rows.iter().filter(|r| !r.frontier).count();
    checks.push(Check::new(
        "circulant.table",
        "every proven closed form matches the census on the table range, including the BPM and UM counts",
        mismatched.is_empty(),
        format!(
            "n = {}..={}: {theorem_rows} proven rows, {} frontier rows{}",
            cfg.n_min,
            cfg.n_max,
            table.rows.len() - theorem_rows,
            if mismatched.is_empty() { String::new() } else { format!("; mismatches: {}", mismatched.join(", ")) }
        ),
    ));

    for &(n, p, total, other) in PUBLISHED {
        let r = census(&cell(n, p)?, CensusFilter::All, false, w)?;
        let mut ok = r.nrh_total == total;
        let mut detail = format!("census {} (BPM {}, UM {}, Other {})", r.nrh_total, r.bpm_nrh, r.um_nrh, r.other_nrh);
        if let Some(o) = other {
            ok &= r.other_nrh == o;
            detail.push_str(&format!(", expected Other {o}"));
        }
        let claim = format!("the circulant code n={n}, p={p} has {total} neural ring homomorphisms");
        checks.push(Check::new(&format!("circulant.count_{n}_{p}"), &claim, ok, detail));
    }

    // the (9,3) cell runs pruned on a worker pool
    let r = census(&cell(9, 3)?, CensusFilter::All, true, w.max(PRUNED_WORKERS))?;
    checks.push(Check::new(
        "circulant.count_9_3",
        "the circulant code n=9, p=3 has 189 neural ring homomorphisms (pruned census)",
        r.nrh_total == 189 && r.pruned,
        format!("census {} in {} ms on {} workers, pruned {}", r.nrh_total, r.elapsed_ms, r.workers, r.pruned),
    ));

    // BPM and UM counts
    let mut class_failures = Vec::new();
    let mut class_cells = 0;
    for n in 3..=7 {
        for p in 1..n {
            class_cells += 1;
            let code = cell(n, p)?;
            let pred = predicted_count(CirculantSpec::new(n, p)?);
            let bpm = census(&code, CensusFilter::Only(EndoClass::Bpm), false, w)?.bpm_nrh;
            let um = census(&code, CensusFilter::Only(EndoClass::Um), false, w)?.um_nrh;
            if bpm != pred.bpm_value || um != n as u64 {
                class_failures.push(format!("({n},{p}) BPM {bpm} UM {um}"));
            }
        }
    }
    checks.push(Check::new(
        "circulant.bpm_count",
        "basis permutations that are neural number n! for p in {1, n-1} and 2n otherwise; unity maps number n",
        class_failures.is_empty(),
        format!("{class_cells} cells with 3 <= n <= 7; {}", if class_failures.is_empty() { "all match".into() } else { class_failures.join(", ") }),
    ));

    // rotating the order of the codewords
    let mut rotation_failures = Vec::new();
    for n in 3..=6 {
        for p in 1..n {
            let code = cell(n, p)?;
            let mut words = code.words().to_vec();
            words.rotate_left(1);
            let rotated = Code::new(n, words)?;
            let (a, b) = (census(&code, CensusFilter::All, false, w)?, census(&rotated, CensusFilter::All, false, w)?);
            if (a.nrh_total, a.bpm_nrh, a.um_nrh) != (b.nrh_total, b.bpm_nrh, b.um_nrh) {
                rotation_failures.push(format!("({n},{p})"));
            }
        }
    }
    checks.push(Check::new(
        "circulant.rotation_invariant",
        "rotating the order of the codewords leaves the census unchanged",
        rotation_failures.is_empty(),
        format!("3 <= n <= 6, every p; {} failures", rotation_failures.len()),
    ));

    // pruning is exact
    let mut prune_failures = Vec::new();
    let mut prune_cells = 0;
    for n in 3..=8usize {
        for p in (1..n).filter(|p| p.gcd(&n) == 1) {
            prune_cells += 1;
            let code = cell(n, p)?;
            let (a, b) = (census(&code, CensusFilter::All, false, w)?, census(&code, CensusFilter::All, true, w)?);
            if (a.nrh_total, a.bpm_nrh, a.um_nrh, a.other_nrh) != (b.nrh_total, b.bpm_nrh, b.um_nrh, b.other_nrh) || !b.pruned {
                prune_failures.push(format!("({n},{p}) plain {} pruned {}", a.nrh_total, b.nrh_total));
            }
        }
    }
    checks.push(Check::new(
        "circulant.pruning_exact",
        "the pruned census equals the plain census on coprime cells",
        prune_failures.is_empty(),
        format!("{prune_cells} cells with n <= 8; {} failures", prune_failures.len()),
    ));

    // both closed forms apply at (3,2)
    let pred = predicted_count(CirculantSpec::new(3, 2)?);
    let r = census(&cell(3, 2)?, CensusFilter::All, false, w)?;
    checks.push(Check::new(
        "circulant.overlap_3_2",
        "at n=3, p=2 the forms n!+n and 3n agree with each other and with the census",
        pred.value == Some((1..=3).product::<u64>() + 3) && pred.value == Some(3 * 3) && r.nrh_total == 9,
        format!("predicted {:?}, census {}", pred.value, r.nrh_total),
    ));

    // frontier cells
    let mut frontier_rows = vec![verify(CirculantSpec::new(7, 4)?, &VerifyOptions { prune: false, workers: w, cap: None })?];
    if cfg.frontier {
        let opts = VerifyOptions { prune: true, workers: w.max(PRUNED_WORKERS), cap: None };
        frontier_rows.push(verify(CirculantSpec::new(10, 5)?, &opts)?);
    }
    for r in &frontier_rows {
        let status = r.prediction.status;
        let claim = format!("frontier cell n={}, p={}: census against the conjectured {}", r.n, r.p, r.prediction.formula);
        checks.push(
            Check::new(
                &format!("circulant.frontier_{}_{}", r.n, r.p),
                &claim,
                r.total_match == Some(true),
                format!(
                    "census {} (BPM {}, UM {}, Other {}), conjectured {:?}, status {status:?}, {} ms",
                    r.census.nrh_total, r.census.bpm_nrh, r.census.um_nrh, r.census.other_nrh, r.prediction.value, r.census.elapsed_ms
                ),
            )
            .informational(),
        );
        debug_assert!(status != PredictionStatus::Theorem);
    }

    let payload = json!({
        "table": table,
        "markdown": table.to_markdown(),
        "frontier": frontier_rows,
    });
    Ok((checks, payload))
}

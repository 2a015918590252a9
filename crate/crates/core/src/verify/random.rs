//! Seeded generators for the property batteries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::code::{intersection_complete, maximal_codewords, Code, Codeword};
use crate::interval::{int, Interval1D, Mode, Realization1D, Span};
use crate::maps::ElementaryMap;

/// An independent stream for one battery: the same `(seed, stream)` always
/// yields the same draws, whatever other batteries do.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Each of the `2^n` words is kept with probability `density`; draws that
/// contain no non-empty word are rejected.
pub fn random_code(rng: &mut impl Rng, n: usize, density: f64) -> Code {
    assert!((1..=16).contains(&n), "random codes are limited to 16 neurons");
    loop {
        let words: Vec<Codeword> = (0..1u64 << n).filter(|_| rng.gen_bool(density)).map(Codeword).collect();
        if words.iter().any(|w| !w.is_empty()) {
            let mut words = words;
            words.shuffle(rng);
            return Code::new(n, words).expect("distinct masks");
        }
    }
}

/// A random code made max-intersection complete by adding every
/// intersection of its maximal codewords.
pub fn random_mic_code(rng: &mut impl Rng, n: usize, density: f64) -> Code {
    let base = random_code(rng, n, density);
    let extra = intersection_complete(&maximal_codewords(&base));
    Code::from_words_dedup(n, base.iter().chain(extra)).expect("valid words")
}

/// Intervals with integer endpoints on a small grid, so that shared
/// endpoints and nested intervals are common. At least one interval is
/// non-empty.
pub fn random_realization(rng: &mut impl Rng, n: usize, mode: Mode) -> Realization1D {
    let grid = 2 * n as i64 + 1;
    loop {
        let intervals: Vec<Interval1D> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.1) {
                    return Interval1D::Empty;
                }
                let a = rng.gen_range(0..grid);
                let singleton = mode != Mode::Open && rng.gen_bool(0.15);
                let b = if singleton { a } else { rng.gen_range(a + 1..=grid) };
                let (lc, rc) = match mode {
                    Mode::Open => (false, false),
                    Mode::Closed => (true, true),
                    Mode::Convex if a == b => (true, true),
                    Mode::Convex => (rng.gen_bool(0.5), rng.gen_bool(0.5)),
                };
                Interval1D::Span(Span::new(int(a), int(b), lc, rc))
            })
            .collect();
        if intervals.iter().any(|iv| !iv.is_empty()) {
            return Realization1D::new(mode, intervals).expect("generated intervals are valid");
        }
    }
}

/// A random elementary map applicable to codes on `n` neurons. Inclusions
/// are never drawn here: an inclusion is surjective only onto its source.
pub fn random_elementary_map(rng: &mut impl Rng, n: usize, iso_only: bool) -> ElementaryMap {
    let kinds = if iso_only || n == 1 { 3 } else { 4 };
    match rng.gen_range(0..kinds) {
        0 => {
            let mut perm: Vec<usize> = (1..=n).collect();
            perm.shuffle(rng);
            ElementaryMap::Permutation(perm)
        }
        1 => ElementaryMap::AddTrivial(rng.gen_bool(0.5)),
        2 => ElementaryMap::AddDuplicate(rng.gen_range(1..=n)),
        _ => ElementaryMap::DeleteNeuron(rng.gen_range(1..=n)),
    }
}

/// `code` with its codewords in a random order.
pub fn shuffled(rng: &mut impl Rng, code: &Code) -> Code {
    let mut words = code.words().to_vec();
    words.shuffle(rng);
    Code::new(code.n(), words).expect("same words")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::is_max_intersection_complete;

    #[test]
    fn deterministic_streams() {
        let a: Vec<u32> = (0..4).map(|_| substream(7, 1).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| substream(7, 1).gen()).collect();
        assert_eq!(a, b);
        let c: u64 = substream(7, 2).gen();
        let d: u64 = substream(7, 1).gen();
        assert_ne!(c, d);
    }

    #[test]
    fn generators_respect_invariants() {
        let mut rng = substream(1, 0);
        for _ in 0..200 {
            let n = rng.gen_range(1..=5);
            let c = random_code(&mut rng, n, 0.3);
            assert!(c.iter().any(|w| !w.is_empty()));
            assert!(is_max_intersection_complete(&random_mic_code(&mut rng, n, 0.3)));
            for mode in [Mode::Open, Mode::Closed, Mode::Convex] {
                let r = random_realization(&mut rng, n, mode);
                assert_eq!(r.n(), n);
                assert!(r.validate().is_ok());
            }
            let m = random_elementary_map(&mut rng, n, false);
            assert!(m.output_arity(n).is_ok());
        }
    }
}

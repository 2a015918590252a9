//! Two hand-built open realizations used by the batteries and tests.

use super::{int, rat, Realization1D};

/// Five open intervals realizing `{3, 5, 12, 13, 14, 45, 123, 124, 145}`, a
/// code that is open-realizable in dimension 1 but not max-intersection
/// complete.
pub fn non_mic_realization() -> Realization1D {
    Realization1D::open(&[
        (rat(5, 2), int(6)),
        (int(3), rat(9, 2)),
        (rat(7, 4), rat(7, 2)),
        (int(4), int(9)),
        (int(5), int(10)),
    ])
    .expect("valid intervals")
}

/// Six open intervals realizing `{2, 4, 12, 23, 45, 46}`; the atom of `2` is
/// the single point 7/2.
pub fn doublet_realization() -> Realization1D {
    Realization1D::open(&[
        (rat(5, 2), rat(7, 2)),
        (rat(5, 2), int(5)),
        (rat(7, 2), int(5)),
        (int(6), int(10)),
        (int(6), rat(15, 2)),
        (rat(15, 2), int(10)),
    ])
    .expect("valid intervals")
}

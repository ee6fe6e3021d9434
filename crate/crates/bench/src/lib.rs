//! Shared fixtures for the benchmarks.

use quasiherm_core::quasi::assemble;
use quasiherm_core::varieties::s_indices;
use quasiherm_core::{PointSet, QuasiKind, Space};

/// The space for `q` with the S_j ∪ H2 set for the smallest j.
pub fn fixture(q: u32) -> (Space, PointSet) {
    let space = Space::for_q(q).expect("odd prime power");
    let j = s_indices(q)[0];
    let set = assemble(&space, QuasiKind::SH2 { j }).expect("admissible j");
    (space, set)
}

//! Fixtures shared by the benchmarks.

use tlkostant::perm::enumerate_fc;
use tlkostant::{Permutation, TLDiagram};

/// Every `stride`-th fully commutative element of `S_n`.
pub fn sample_fc(n: usize, stride: usize) -> Vec<Permutation> {
    enumerate_fc(n, false).into_iter().step_by(stride.max(1)).collect()
}

pub fn diagrams(elements: &[Permutation]) -> Vec<TLDiagram> {
    elements.iter().map(|w| TLDiagram::of_fc(w).unwrap()).collect()
}

//! Shared fixtures for the benchmarks.

use isolattice::construct::{ank, build_glue, named_lattice, parse_glue};
use isolattice::exactlin::orthogonal_sum;
use isolattice::GramMatrix;

pub fn glued(text: &str) -> GramMatrix {
    build_glue(&parse_glue(text).unwrap()).unwrap().gram().clone()
}

pub fn named(name: &str) -> GramMatrix {
    named_lattice(name).unwrap()
}

/// `(A_16,4, ⟨1⟩ ⊥ A_15[4])`.
pub fn a16_pair() -> (GramMatrix, GramMatrix) {
    let host = orthogonal_sum(&[&GramMatrix::identity(1), &glued("A15[4]")]);
    (ank(16, 4).unwrap().gram().clone(), host)
}

/// A rank-`n` form with large diagonal and mixed-sign off-diagonal entries.
pub fn skewed(n: usize) -> GramMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 40 + 7 * i as i64 } else { ((i * 7 + j * 7) % 11) as i64 - 5 })
                .collect()
        })
        .collect();
    GramMatrix::from_rows(&rows).unwrap()
}

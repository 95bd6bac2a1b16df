//! Lattice constructions: root lattices, glue notation, sublattices of `I_n`.

mod catalog;
mod glue;
mod roots;
mod sublattice;

pub use catalog::{d12_remark_basis, named_lattice, remark_l29, CATALOG};
pub use glue::{build_glue, parse_glue, Component, GlueSpec, GlueToken, RootKind};
pub use roots::{glue_vector, root_lattice};
pub use sublattice::{ank, enumerate_index_p_sublattices, index_p_basis, index_p_sublattice, is_prime, ternary_iabp};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::linalg::{common_denominator, integer_span_basis, Rat};
use crate::exactlin::GramMatrix;

/// A lattice given by rational coordinate vectors in `Q^d` with the inner
/// product `Σ w_k x_k y_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedLattice {
    weights: Vec<Rat>,
    basis: Vec<Vec<Rat>>,
    gram: GramMatrix,
}

impl EmbeddedLattice {
    /// Accepts `basis` as is; the pairwise inner products must be integers
    /// and the vectors independent.
    pub fn new(weights: Vec<Rat>, basis: Vec<Vec<Rat>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != weights.len()) {
            return Err(Error::DimensionMismatch("basis vector length differs from ambient dimension".into()));
        }
        let mut rows = Vec::with_capacity(basis.len());
        for (i, u) in basis.iter().enumerate() {
            let mut row = Vec::with_capacity(basis.len());
            for (j, v) in basis.iter().enumerate() {
                let ip = ambient_inner(&weights, u, v);
                if !ip.is_integer() {
                    return Err(Error::NonIntegralGlue(format!("inner product ({i}, {j}) is {ip}")));
                }
                row.push(ip.to_integer());
            }
            rows.push(row);
        }
        let gram = GramMatrix::new(rows).map_err(|e| match e {
            Error::NotPositiveDefinite => Error::DependentBasis,
            e => e,
        })?;
        Ok(EmbeddedLattice { weights, basis, gram })
    }

    /// Lattice spanned by arbitrary (possibly dependent) generators.
    pub fn from_generators(weights: Vec<Rat>, gens: &[Vec<Rat>]) -> Result<Self> {
        let d = common_denominator(gens.iter().flatten());
        let scaled: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|v| v.iter().map(|x| (x * Rat::from_integer(d.clone())).to_integer()).collect())
            .collect();
        let basis = integer_span_basis(&scaled)
            .into_iter()
            .map(|v| v.into_iter().map(|x| Rat::new(x, d.clone())).collect())
            .collect();
        EmbeddedLattice::new(weights, basis)
    }

    /// Scaled standard coordinates: `Q^n` with all weights 1.
    pub fn euclidean(basis: Vec<Vec<Rat>>) -> Result<Self> {
        let n = basis.first().map_or(0, |v| v.len());
        EmbeddedLattice::new(vec![Rat::one(); n], basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn inner(&self, u: &[Rat], v: &[Rat]) -> Rat {
        ambient_inner(&self.weights, u, v)
    }

    /// Coordinates of an ambient vector in the lattice basis, when it lies in
    /// the rational span.
    pub fn coordinates(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        let n = self.rank();
        let m: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..n).map(|j| Rat::from_integer(self.gram.get(i, j).clone())).collect())
            .collect();
        let rhs: Vec<Rat> = self.basis.iter().map(|b| self.inner(b, v)).collect();
        let c = crate::exactlin::linalg::solve_rat(&m, &rhs)?;
        let mut back = vec![Rat::zero(); self.ambient_dim()];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (x, y) in back.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        if back.as_slice() != v {
            return Err(Error::InvalidParameters("vector is outside the rational span".into()));
        }
        Ok(c)
    }

    /// Whether an ambient vector belongs to the lattice.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_ok_and(|c| c.iter().all(|x| x.is_integer()))
    }
}

pub(crate) fn ambient_inner(w: &[Rat], u: &[Rat], v: &[Rat]) -> Rat {
    w.iter().zip(u).zip(v).map(|((w, a), b)| w * a * b).sum()
}

/// Rational vector from integers.
pub(crate) fn ratv(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::linalg::rat_frac;

    #[test]
    fn generators_are_reduced_to_a_basis() {
        let l = EmbeddedLattice::from_generators(
            ratv(&[1, 1]),
            &[ratv(&[2, 0]), ratv(&[0, 2]), vec![Rat::one(), Rat::one()]],
        )
        .unwrap();
        assert_eq!(l.rank(), 2);
        assert_eq!(l.gram().determinant(), BigInt::from(4));
        assert!(l.contains(&ratv(&[1, -1])));
        assert!(!l.contains(&ratv(&[1, 0])));
    }

    #[test]
    fn non_integral_products_are_rejected() {
        let r = EmbeddedLattice::euclidean(vec![vec![rat_frac(1, 2), rat_frac(1, 2)]]);
        assert!(matches!(r, Err(Error::NonIntegralGlue(_))));
    }
}

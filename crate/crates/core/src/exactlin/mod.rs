//! Exact linear algebra, Gram matrices and short-vector enumeration.

pub mod enumerate;
pub mod gram;
mod isometry;
pub mod linalg;

pub use enumerate::{
    cholesky, cholesky_rows, enumerate_vectors, for_each_short_vector, min_norm, successive_minima,
    theta_coefficients, LatticeVector, RationalCholesky, ShortVector, DEFAULT_NODE_BUDGET,
};
pub use gram::{index_in, orthogonal_sum, GramMatrix};
pub use isometry::{isometry_test, isometry_test_with};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use linalg::{solve_rat, Rat};

/// A certificate `T` with `Tᵗ G_host T = G_target`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    columns: Vec<Vec<BigInt>>,
}

impl Representation {
    /// Checks the certificate identity before accepting the columns.
    pub fn new(host: &GramMatrix, target: &GramMatrix, columns: Vec<Vec<BigInt>>) -> Result<Self> {
        if columns.len() != target.rank() || columns.iter().any(|c| c.len() != host.rank()) {
            return Err(Error::DimensionMismatch(format!(
                "certificate shape does not match host rank {} and target rank {}",
                host.rank(),
                target.rank()
            )));
        }
        for i in 0..columns.len() {
            for j in i..columns.len() {
                if host.inner(&columns[i], &columns[j]) != *target.get(i, j) {
                    return Err(Error::InvalidParameters(format!(
                        "certificate fails at entry ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Representation { columns })
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    /// `T` as a row-major `host_rank × target_rank` matrix.
    pub fn matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.columns.first().map_or(0, |c| c.len());
        (0..n)
            .map(|r| self.columns.iter().map(|c| c[r].clone()).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub proj: Vec<BigRational>,
    pub perp: Vec<BigRational>,
}

/// Orthogonal projection of `x` onto `Q·span(s)` inside the lattice with Gram `g`.
/// All vectors are in lattice coordinates.
pub fn project(g: &GramMatrix, x: &[BigInt], s: &[Vec<BigInt>]) -> Result<Projection> {
    let n = g.rank();
    if x.len() != n || s.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch("vector length differs from lattice rank".into()));
    }
    let k = s.len();
    let gram_s: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| Rat::from_integer(g.inner(&s[i], &s[j]))).collect())
        .collect();
    let rhs: Vec<Rat> = s.iter().map(|v| Rat::from_integer(g.inner(v, x))).collect();
    let coef = solve_rat(&gram_s, &rhs)?;
    let mut proj = vec![Rat::zero(); n];
    for (c, v) in coef.iter().zip(s) {
        for (p, vi) in proj.iter_mut().zip(v) {
            *p += c * Rat::from_integer(vi.clone());
        }
    }
    let perp = x
        .iter()
        .zip(&proj)
        .map(|(xi, p)| Rat::from_integer(xi.clone()) - p)
        .collect();
    Ok(Projection { proj, perp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use linalg::rat_frac;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn projection_examples() {
        let i3 = GramMatrix::identity(3);
        let s = vec![big(&[1, -1, 0])];
        let p = project(&i3, &big(&[1, 0, 0]), &s).unwrap();
        assert_eq!(p.proj, vec![rat_frac(1, 2), rat_frac(-1, 2), rat_frac(0, 1)]);
        assert_eq!(p.perp, vec![rat_frac(1, 2), rat_frac(1, 2), rat_frac(0, 1)]);

        let p = project(&i3, &big(&[0, 0, 5]), &s).unwrap();
        assert!(p.proj.iter().all(|x| x.is_zero()));
        let p = project(&i3, &big(&[2, -2, 0]), &s).unwrap();
        assert!(p.perp.iter().all(|x| x.is_zero()));

        let dep = vec![big(&[1, 0, 0]), big(&[2, 0, 0])];
        assert_eq!(project(&i3, &big(&[1, 1, 1]), &dep).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn representation_checks_certificate() {
        let host = GramMatrix::identity(2);
        let target = GramMatrix::from_rows(&[[2i64]]).unwrap();
        assert!(Representation::new(&host, &target, vec![big(&[1, 1])]).is_ok());
        assert!(Representation::new(&host, &target, vec![big(&[1, 0])]).is_err());
    }
}

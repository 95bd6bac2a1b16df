//! Hermite reduction, the peel-off decomposition and closed-form bounds for
//! the isolation number of `I_n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::construct::is_prime;
use crate::error::{Error, Result};
use crate::exactlin::linalg::{common_denominator, rat, rat_frac, unimodular_inverse, Rat};
use crate::exactlin::{cholesky_rows, enumerate_vectors, min_norm, GramMatrix, DEFAULT_NODE_BUDGET};

#[derive(Clone, Debug, PartialEq)]
pub struct HermiteReducedForm {
    /// Hermite minima `h_1, …, h_n`.
    pub h: Vec<Rat>,
    /// `c[i][j]` for `j > i`; zero elsewhere.
    pub c: Vec<Vec<Rat>>,
    /// Columns are the reduced basis in the input coordinates.
    pub u: Vec<Vec<BigInt>>,
    /// `Uᵗ G U`.
    pub gram: GramMatrix,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// A unimodular matrix whose first column is the primitive vector `v`.
fn extend_to_basis(v: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let k = v.len();
    let mut w = v.to_vec();
    let mut ops = identity(k);
    loop {
        let nz: Vec<usize> = (0..k).filter(|&i| !w[i].is_zero()).collect();
        let piv = *nz.iter().min_by_key(|&&i| w[i].abs()).expect("nonzero vector");
        if nz.len() == 1 {
            w.swap(0, piv);
            ops.swap(0, piv);
            if w[0].is_negative() {
                w[0] = -&w[0];
                for x in ops[0].iter_mut() {
                    *x = -&*x;
                }
            }
            break;
        }
        for &j in nz.iter().filter(|&&j| j != piv) {
            let q = w[j].div_floor(&w[piv]);
            let t = &q * &w[piv];
            w[j] -= t;
            for c in 0..k {
                let t = &q * &ops[piv][c];
                ops[j][c] -= t;
            }
        }
    }
    if !w[0].is_one() {
        return Err(Error::InvalidParameters("vector is not primitive".into()));
    }
    unimodular_inverse(&ops)
}

pub fn hermite_reduce(g: &GramMatrix) -> Result<HermiteReducedForm> {
    hermite_reduce_with(g, DEFAULT_NODE_BUDGET)
}

/// Picks, for each `i`, the first vector in enumeration order realizing the
/// minimum of the trailing form, then size-reduces with `c_ij ∈ (-1/2, 1/2]`.
pub fn hermite_reduce_with(g: &GramMatrix, budget: u64) -> Result<HermiteReducedForm> {
    let n = g.rank();
    let mut u = identity(n);
    for i in 0..n {
        let r = g.congruent(&u);
        let ch = cholesky_rows(&r)?;
        let m = n - i;
        let trailing: Vec<Vec<Rat>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        (0..=a.min(b))
                            .map(|k| {
                                let ca = if k == a { Rat::one() } else { ch.c[i + k][i + a].clone() };
                                let cb = if k == b { Rat::one() } else { ch.c[i + k][i + b].clone() };
                                &ch.h[i + k] * ca * cb
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let den = common_denominator(trailing.iter().flatten());
        let scaled: Vec<Vec<BigInt>> = trailing
            .iter()
            .map(|row| row.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let tg = GramMatrix::new(scaled)?;
        let bound = tg.min_diagonal().try_into().map_err(|_| Error::Overflow)?;
        let best = enumerate_vectors(&tg, bound, budget)?
            .into_iter()
            .next()
            .expect("a basis vector lies within the bound");
        let v: Vec<BigInt> = best.coords.to_big();
        let ext = extend_to_basis(&v)?;
        for row in u.iter_mut() {
            let tail: Vec<BigInt> = (0..m)
                .map(|b| (0..m).map(|a| &row[i + a] * &ext[a][b]).sum())
                .collect();
            row[i..].clone_from_slice(&tail);
        }
    }
    let mut ch = cholesky_rows(&g.congruent(&u))?;
    let half = rat_frac(1, 2);
    for j in 1..n {
        for i in (0..j).rev() {
            let a = (&ch.c[i][j] - &half).ceil().to_integer();
            if a.is_zero() {
                continue;
            }
            for row in u.iter_mut() {
                let t = &a * &row[i];
                row[j] -= t;
            }
            let ar = Rat::from_integer(a);
            ch.c[i][j] -= &ar;
            for k in 0..i {
                let t = &ar * &ch.c[k][i];
                ch.c[k][j] -= t;
            }
        }
    }
    let gram = GramMatrix::new(g.congruent(&u))?;
    Ok(HermiteReducedForm {
        h: ch.h,
        c: ch.c,
        u,
        gram,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelDecomposition {
    /// Integer linear forms in the input coordinates, in peel order.
    pub forms: Vec<Vec<BigInt>>,
    pub residual: GramMatrix,
}

impl PeelDecomposition {
    pub fn count(&self) -> usize {
        self.forms.len()
    }

    /// `2 Σ a aᵗ + residual`.
    pub fn reassemble(&self) -> Vec<Vec<BigInt>> {
        let mut m = self.residual.rows();
        for a in &self.forms {
            for (i, row) in m.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x += BigInt::from(2) * &a[i] * &a[j];
                }
            }
        }
        m
    }
}

/// Writes `G = 2 Σ (a_k·x)² + residual` by removing `2 y_n²` from the last
/// Hermite coordinate while `h_n ≥ 4`.
pub fn peel_off(g: &GramMatrix) -> Result<PeelDecomposition> {
    let m = min_norm(g, DEFAULT_NODE_BUDGET)?;
    if m < 2 {
        return Err(Error::MinTooSmall(format!("minimum {m} is below 2")));
    }
    let n = g.rank();
    let four = rat(4);
    let mut forms = Vec::new();
    let mut cur = g.clone();
    loop {
        let hr = hermite_reduce(&cur)?;
        if hr.h[n - 1] < four {
            return Ok(PeelDecomposition { forms, residual: cur });
        }
        let inv = unimodular_inverse(&hr.u)?;
        let mut a = inv[n - 1].clone();
        if a.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            a = a.into_iter().map(|x| -x).collect();
        }
        let rows: Vec<Vec<BigInt>> = cur
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, x)| x - BigInt::from(2) * &a[i] * &a[j])
                    .collect()
            })
            .collect();
        cur = GramMatrix::new(rows)?;
        forms.push(a);
    }
}

/// Number of primes `p` with `2p² < n`.
pub fn prime_count_t(n: u64) -> u64 {
    (2..).take_while(|&p: &u64| 2 * p * p < n).filter(|&p| is_prime(p)).count() as u64
}

/// `2n - 1 + (n - 1)(t - 1)`.
pub fn lower_bound_iso(n: u64) -> i64 {
    let (n, t) = (n as i64, prime_count_t(n) as i64);
    2 * n - 1 + (n - 1) * (t - 1)
}

/// Known values of the minimal number of squares needed to represent every
/// positive definite integral form of rank `n` that is a sum of squares.
pub fn g_table(n: usize) -> Result<u64> {
    match n {
        1 => Ok(4),
        2 => Ok(5),
        3..=5 => Ok(n as u64 + 3),
        6 => Ok(10),
        _ => Err(Error::UnknownG(n)),
    }
}

fn four_thirds_pow(n: u64) -> Rat {
    num_traits::pow(rat_frac(4, 3), n as usize)
}

/// `g + (4/3)^n (3n³ - 12n² + 48n) + n³/2 - 3n²/2 - 47n - 1`.
pub fn upper_bound_iso(n: u64, g_value: Option<u64>) -> Result<Rat> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be positive".into()));
    }
    let g = match g_value {
        Some(g) => g,
        None => g_table(n as usize)?,
    };
    let nr = rat(n as i64);
    let cubic = rat(3) * nr.pow(3) - rat(12) * nr.pow(2) + rat(48) * &nr;
    Ok(rat(g as i64) + four_thirds_pow(n) * cubic + nr.pow(3) / rat(2) - rat(3) * nr.pow(2) / rat(2)
        - rat(47) * &nr
        - rat(1))
}

/// `(4/3)^n (3n² - 12n + 48) + n²/2 - 3n/2 - 48`.
pub fn sfrak_bound(n: u64) -> Rat {
    let nr = rat(n as i64);
    four_thirds_pow(n) * (rat(3) * nr.pow(2) - rat(12) * &nr + rat(48)) + nr.pow(2) / rat(2)
        - rat(3) * &nr / rat(2)
        - rat(48)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_examples() {
        let r = hermite_reduce(&GramMatrix::diagonal(&[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(r.h, vec![rat(1), rat(2), rat(3)]);
        assert!(r.c.iter().flatten().all(|x| x.is_zero()));
        assert_eq!(r.u, identity(3));

        let a2 = GramMatrix::from_rows(&[[2i64, -1], [-1, 2]]).unwrap();
        let r = hermite_reduce(&a2).unwrap();
        assert_eq!(r.h, vec![rat(2), rat_frac(3, 2)]);
        assert_eq!(&r.h[0] / &r.h[1], rat_frac(4, 3));

        let g = GramMatrix::from_rows(&[[2i64, 3], [3, 9]]).unwrap();
        let r = hermite_reduce(&g).unwrap();
        assert_eq!(r.h, vec![rat(2), rat_frac(9, 2)]);
        assert_eq!(r.c[0][1], rat_frac(1, 2));
        assert_eq!(r.gram, GramMatrix::from_rows(&[[2i64, 1], [1, 5]]).unwrap());
    }

    #[test]
    fn peel_examples() {
        let p = peel_off(&GramMatrix::diagonal(&[2, 2]).unwrap()).unwrap();
        assert_eq!(p.count(), 0);
        assert_eq!(p.residual, GramMatrix::diagonal(&[2, 2]).unwrap());

        let p = peel_off(&GramMatrix::diagonal(&[2, 2, 5]).unwrap()).unwrap();
        assert_eq!(p.forms, big(&[&[0, 0, 1]]));
        assert_eq!(p.residual, GramMatrix::diagonal(&[2, 2, 3]).unwrap());

        let p = peel_off(&GramMatrix::diagonal(&[6]).unwrap()).unwrap();
        assert_eq!(p.forms, big(&[&[1], &[1]]));
        assert_eq!(p.residual, GramMatrix::diagonal(&[2]).unwrap());

        assert!(matches!(peel_off(&GramMatrix::identity(2)), Err(Error::MinTooSmall(_))));
    }

    #[test]
    fn bound_values() {
        assert_eq!(prime_count_t(100), 4);
        assert_eq!(lower_bound_iso(100), 496);
        assert_eq!(prime_count_t(19), 2);
        assert_eq!(lower_bound_iso(19), 55);
        assert_eq!(prime_count_t(3), 0);
        assert_eq!(lower_bound_iso(3), 3);

        assert_eq!(upper_bound_iso(1, None).unwrap(), rat(7));
        assert_eq!(upper_bound_iso(2, None).unwrap(), rat(36));
        assert_eq!(upper_bound_iso(7, None).unwrap_err(), Error::UnknownG(7));

        assert_eq!(g_table(2).unwrap(), 5);
        assert_eq!(g_table(5).unwrap(), 8);
        assert_eq!(g_table(6).unwrap(), 10);

        assert_eq!(sfrak_bound(2), rat(15));
        assert_eq!(sfrak_bound(3), rat_frac(2496, 27) - rat(48));
        assert_eq!(sfrak_bound(1), rat(3));
    }
}

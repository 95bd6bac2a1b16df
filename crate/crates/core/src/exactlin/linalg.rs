//! Dense exact matrix helpers over `BigInt` and `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Solves `m x = b` for square nonsingular rational `m`.
pub fn solve_rat(m: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::DependentBasis)?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square integer matrix with determinant ±1.
pub fn unimodular_inverse(u: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let n = u.len();
    let mut a: Vec<Vec<Rat>> = u
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|x| Rat::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::DependentBasis)?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..2 * n {
                    let t = &a[col][c] * &f;
                    a[r][c] -= t;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::InvalidParameters("matrix is not unimodular".into()))
                    }
                })
                .collect()
        })
        .collect()
}

/// Row-style Hermite normal form: returns a basis (nonzero rows) of the
/// Z-span of `vectors`, all of the same length.
pub fn integer_span_basis(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    if rows.is_empty() {
        return rows;
    }
    let width = rows[0].len();
    let mut out = Vec::new();
    let mut col = 0;
    while col < width && !rows.is_empty() {
        // Euclid on column `col` across the remaining rows.
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let piv = *nonzero
                .iter()
                .min_by(|&&a, &&b| rows[a][col].abs().cmp(&rows[b][col].abs()))
                .unwrap();
            for &r in &nonzero {
                if r == piv {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[piv][col]);
                let pivot_row = rows[piv].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(r) = (0..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            let mut row = rows.remove(r);
            if row[col].is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            out.push(row);
        }
        rows.retain(|v| v.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    out
}

/// Least common multiple of the denominators of a rational slice.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Integer square root (floor) of a nonnegative integer.
pub fn isqrt_big(n: &BigInt) -> BigInt {
    n.sqrt()
}

pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(det_int(&m(&[&[2, -1], &[-1, 2]])), BigInt::from(3));
        assert_eq!(det_int(&m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(det_int(&m(&[&[2, -1, 0], &[-1, 2, 1], &[0, 1, 3]])), BigInt::from(7));
        assert_eq!(det_int(&m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn span_basis_of_redundant_generators() {
        let b = integer_span_basis(&m(&[&[2, 0], &[0, 2], &[1, 1]]));
        assert_eq!(b.len(), 2);
        assert_eq!(det_int(&b).abs(), BigInt::from(2));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let u = m(&[&[1, 2], &[1, 3]]);
        let inv = unimodular_inverse(&u).unwrap();
        assert_eq!(inv, m(&[&[3, -2], &[-1, 1]]));
    }
}

//! Local invariants at a prime or at infinity.
//!
//! Hasse symbols use the convention `H_p = Π_{i<j} (a_i, a_j)_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::construct::is_prime;
use crate::error::{Error, Result};
use crate::exactlin::linalg::Rat;
use crate::exactlin::GramMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// A nonzero rational written as `p^valuation · unit`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicUnit {
    pub p: u64,
    pub valuation: i64,
    pub unit: Rat,
}

impl PadicUnit {
    pub fn new(x: &Rat, p: u64) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::InvalidParameters("zero has no unit part".into()));
        }
        let (vn, un) = split(x.numer(), p);
        let (vd, ud) = split(x.denom(), p);
        Ok(PadicUnit {
            p,
            valuation: vn - vd,
            unit: Rat::new(un, ud),
        })
    }

    /// Whether the unit part is a square modulo `p` (odd `p`).
    pub fn unit_is_square(&self) -> bool {
        legendre(&unit_integer(&self.unit), self.p) == 1
    }
}

fn split(n: &BigInt, p: u64) -> (i64, BigInt) {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut n = n.clone();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    (v, n)
}

pub fn valuation(x: &Rat, p: u64) -> i64 {
    split(x.numer(), p).0 - split(x.denom(), p).0
}

/// Integer in the same square class as the rational `x` (`num · den`).
fn unit_integer(x: &Rat) -> BigInt {
    x.numer() * x.denom()
}

/// Legendre symbol `(a/p)` for odd prime `p`: 0, 1 or -1.
pub fn legendre(a: &BigInt, p: u64) -> i8 {
    let pb = BigInt::from(p);
    let a = a.mod_floor(&pb);
    if a.is_zero() {
        return 0;
    }
    let r = a.modpow(&BigInt::from((p - 1) / 2), &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// Hilbert symbol `(a, b)_p`.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidParameters("Hilbert symbol of zero".into()));
    }
    let p = match place {
        Place::Infinity => {
            return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 });
        }
        Place::Prime(p) => {
            if !is_prime(p) {
                return Err(Error::InvalidParameters(format!("{p} is not prime")));
            }
            p
        }
    };
    let (al, u) = split(&unit_integer(a), p);
    let (be, v) = split(&unit_integer(b), p);
    if p == 2 {
        let eps = |x: &BigInt| -> i64 { if x.mod_floor(&BigInt::from(4)) == BigInt::from(3) { 1 } else { 0 } };
        let omega = |x: &BigInt| -> i64 {
            let r = x.mod_floor(&BigInt::from(8)).to_i64().unwrap();
            if r == 3 || r == 5 {
                1
            } else {
                0
            }
        };
        let e = eps(&u) * eps(&v) + al * omega(&v) + be * omega(&u);
        return Ok(if e.rem_euclid(2) == 0 { 1 } else { -1 });
    }
    let eps_p = ((p - 1) / 2) as i64;
    let mut s: i8 = if (al * be * eps_p).rem_euclid(2) == 0 { 1 } else { -1 };
    if be.rem_euclid(2) == 1 {
        s *= legendre(&u, p);
    }
    if al.rem_euclid(2) == 1 {
        s *= legendre(&v, p);
    }
    Ok(s)
}

/// `Π_{i<j} (a_i, a_j)_p` of a diagonal form.
pub fn hasse_symbol(diag: &[Rat], place: Place) -> Result<i8> {
    let mut s = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            s *= hilbert_symbol(&diag[i], &diag[j], place)?;
        }
    }
    Ok(s)
}

/// Smallest positive quadratic nonresidue modulo an odd prime.
pub fn delta_p(p: u64) -> u64 {
    (2..p).find(|&a| legendre(&BigInt::from(a), p) == -1).expect("odd prime has a nonresidue")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub scale: i64,
    /// Diagonal entries divided by `p^scale`.
    pub units: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanSplitting {
    pub p: u64,
    pub blocks: Vec<JordanBlock>,
}

impl JordanSplitting {
    /// The full diagonal `p^s u` in block order.
    pub fn diagonal(&self) -> Vec<Rat> {
        let p = Rat::from_integer(BigInt::from(self.p));
        self.blocks
            .iter()
            .flat_map(|b| {
                let f = num_traits::pow(p.clone(), b.scale as usize);
                b.units.iter().map(move |u| u * &f)
            })
            .collect()
    }

    pub fn det_valuation(&self) -> i64 {
        self.blocks.iter().map(|b| b.scale * b.units.len() as i64).sum()
    }
}

/// Diagonalizes `g` over `Z_(p)` for odd `p` by pivoting on an entry of
/// least valuation.
pub fn jordan_odd(g: &GramMatrix, p: u64) -> Result<JordanSplitting> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not an odd prime")));
    }
    let mut m: Vec<Vec<Rat>> = g
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(Rat::from_integer).collect())
        .collect();
    let mut diag = Vec::new();
    while !m.is_empty() {
        let k = m.len();
        let mut best: Option<(i64, usize, usize)> = None;
        for i in 0..k {
            for j in i..k {
                if m[i][j].is_zero() {
                    continue;
                }
                let v = valuation(&m[i][j], p);
                let better = match best {
                    None => true,
                    Some((bv, bi, bj)) => v < bv || (v == bv && bi != bj && i == j),
                };
                if better {
                    best = Some((v, i, j));
                }
            }
        }
        let (_, i, j) = best.expect("nondegenerate form");
        if i != j {
            // replace e_i by e_i + e_j; its norm has the least valuation
            for c in 0..k {
                let t = m[j][c].clone();
                m[i][c] += t;
            }
            for r in 0..k {
                let t = m[r][j].clone();
                m[r][i] += t;
            }
        }
        let a = m[i][i].clone();
        let col: Vec<Rat> = (0..k).map(|r| m[r][i].clone()).collect();
        let mut next = Vec::with_capacity(k - 1);
        for r in (0..k).filter(|&r| r != i) {
            next.push(
                (0..k)
                    .filter(|&c| c != i)
                    .map(|c| &m[r][c] - &col[r] * &col[c] / &a)
                    .collect(),
            );
        }
        diag.push(a);
        m = next;
    }
    let mut blocks: Vec<JordanBlock> = Vec::new();
    let mut parts: Vec<PadicUnit> = diag.iter().map(|d| PadicUnit::new(d, p)).collect::<Result<_>>()?;
    parts.sort_by_key(|u| u.valuation);
    for u in parts {
        match blocks.last_mut() {
            Some(b) if b.scale == u.valuation => b.units.push(u.unit),
            _ => blocks.push(JordanBlock {
                scale: u.valuation,
                units: vec![u.unit],
            }),
        }
    }
    Ok(JordanSplitting { p, blocks })
}

/// Whether `x` and `y` lie in the same class of `Q_p^× / (Q_p^×)^2`, odd `p`.
pub fn same_square_class(x: &Rat, y: &Rat, p: u64) -> Result<bool> {
    let a = PadicUnit::new(x, p)?;
    let b = PadicUnit::new(y, p)?;
    Ok((a.valuation - b.valuation).rem_euclid(2) == 0 && a.unit_is_square() == b.unit_is_square())
}

/// Local criterion for a binary `ell` to be represented by a quaternary `n`
/// that is unimodular at the odd prime `p`.
///
/// True when `ell` represents a unit, or when `det n` is a square unit;
/// otherwise false exactly when `d(ell) ≅ -Δ_p` and `H_p(ell) = -1`.
pub fn lemma_local(ell: &GramMatrix, n: &GramMatrix, p: u64) -> Result<bool> {
    if ell.rank() != 2 || n.rank() != 4 {
        return Err(Error::DimensionMismatch("expected a binary and a quaternary lattice".into()));
    }
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidParameters(format!("{p} is not an odd prime")));
    }
    let pb = BigInt::from(p);
    if (n.determinant() % &pb).is_zero() {
        return Err(Error::NotUnimodular(p));
    }
    let represents_unit = (0..2).any(|i| (0..2).any(|j| !(ell.get(i, j) % &pb).is_zero()));
    if represents_unit {
        return Ok(true);
    }
    if legendre(&n.determinant(), p) == 1 {
        return Ok(true);
    }
    let minus_delta = Rat::from_integer(-BigInt::from(delta_p(p)));
    let d_ell = Rat::from_integer(ell.determinant());
    let diag = jordan_odd(ell, p)?.diagonal();
    let h = hasse_symbol(&diag, Place::Prime(p))?;
    Ok(!(same_square_class(&d_ell, &minus_delta, p)? && h == -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::linalg::{rat, rat_frac};

    fn h(a: i64, b: i64, p: Place) -> i8 {
        hilbert_symbol(&rat(a), &rat(b), p).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(h(-1, -1, Place::Prime(2)), -1);
        assert_eq!(h(2, 3, Place::Prime(3)), -1);
        assert_eq!(h(5, 7, Place::Prime(11)), 1);
        assert_eq!(h(-1, -1, Place::Infinity), -1);
        assert_eq!(h(3, 3, Place::Prime(3)), -1);
        assert_eq!(hilbert_symbol(&rat_frac(1, 2), &rat(3), Place::Prime(3)).unwrap(), -1);
    }

    #[test]
    fn hasse_examples() {
        assert_eq!(hasse_symbol(&[rat(1), rat(1)], Place::Prime(7)).unwrap(), 1);
        assert_eq!(hasse_symbol(&[rat(3), rat(3)], Place::Prime(3)).unwrap(), -1);
    }

    #[test]
    fn nonresidues() {
        assert_eq!(delta_p(3), 2);
        assert_eq!(delta_p(5), 2);
        assert_eq!(delta_p(7), 3);
        assert_eq!(delta_p(17), 3);
    }

    #[test]
    fn jordan_examples() {
        let j = jordan_odd(&GramMatrix::diagonal(&[1, 3, 9]).unwrap(), 3).unwrap();
        assert_eq!(j.blocks.iter().map(|b| b.scale).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(j.blocks.iter().all(|b| b.units == vec![rat(1)]));

        let a2 = GramMatrix::from_rows(&[[2i64, -1], [-1, 2]]).unwrap();
        let j = jordan_odd(&a2, 3).unwrap();
        assert_eq!(j.blocks.len(), 2);
        assert_eq!(j.blocks[0], JordanBlock { scale: 0, units: vec![rat(2)] });
        assert_eq!(j.blocks[1].scale, 1);
        assert!(same_square_class(&j.blocks[1].units[0], &rat(2), 3).unwrap());

        let j = jordan_odd(&GramMatrix::identity(5), 7).unwrap();
        assert_eq!(j.blocks.len(), 1);
        assert_eq!(j.det_valuation(), 0);

        // only an off-diagonal entry is a unit
        let g = GramMatrix::from_rows(&[[3i64, 1], [1, 3]]).unwrap();
        let j = jordan_odd(&g, 3).unwrap();
        assert_eq!(j.blocks.len(), 1);
        assert_eq!(j.blocks[0].units.len(), 2);
    }

    #[test]
    fn lemma_examples() {
        let i2 = GramMatrix::identity(2);
        let n = GramMatrix::diagonal(&[1, 1, 1, 2]).unwrap();
        assert!(lemma_local(&i2, &n, 5).unwrap());
        let l33 = GramMatrix::diagonal(&[3, 3]).unwrap();
        assert!(!lemma_local(&l33, &n, 3).unwrap());
        assert!(lemma_local(&l33, &GramMatrix::identity(4), 3).unwrap());
        assert_eq!(
            lemma_local(&l33, &GramMatrix::diagonal(&[1, 1, 1, 3]).unwrap(), 3).unwrap_err(),
            Error::NotUnimodular(3)
        );
    }
}

use num_traits::{One, Zero};

use super::glue::RootKind;
use super::{ambient_inner, EmbeddedLattice};
use crate::error::{Error, Result};
use crate::exactlin::linalg::{rat, rat_frac, Rat};

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn diff(n: usize, i: usize, j: usize) -> Vec<Rat> {
    let mut v = unit(n, i);
    v[j] = rat(-1);
    v
}

fn check_rank(kind: RootKind, n: usize) -> Result<()> {
    let ok = match kind {
        RootKind::A => n >= 1,
        RootKind::D => n >= 4,
        RootKind::E => (6..=8).contains(&n),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedRank { kind: kind.letter(), rank: n })
    }
}

fn ambient_dim(kind: RootKind, n: usize) -> usize {
    match kind {
        RootKind::A => n + 1,
        RootKind::D => n,
        RootKind::E => 8,
    }
}

/// Simple roots in the usual coordinate models: `A_n ⊂ Z^{n+1}` with
/// coordinate sum zero, `D_n ⊂ Z^n` with even coordinate sum, and
/// `E_6 ⊂ E_7 ⊂ E_8 ⊂ Q^8` from the standard Dynkin labelling.
pub fn root_lattice(kind: RootKind, n: usize) -> Result<EmbeddedLattice> {
    check_rank(kind, n)?;
    let d = ambient_dim(kind, n);
    let basis = match kind {
        RootKind::A => (0..n).map(|i| diff(d, i, i + 1)).collect(),
        RootKind::D => {
            let mut b: Vec<Vec<Rat>> = (0..n - 1).map(|i| diff(d, i, i + 1)).collect();
            let mut last = unit(d, n - 2);
            last[n - 1] = rat(1);
            b.push(last);
            b
        }
        RootKind::E => {
            let h = rat_frac(1, 2);
            let mut a1 = vec![-h.clone(); 8];
            a1[0] = h.clone();
            a1[7] = h;
            let mut a2 = unit(8, 0);
            a2[1] = rat(1);
            let mut b = vec![a1, a2];
            for i in 0..n - 2 {
                b.push(diff(8, i + 1, i));
            }
            b
        }
    };
    EmbeddedLattice::new(vec![Rat::one(); d], basis)
}

/// The glue vector `[i]` of `A_n` or `D_n` in the ambient coordinates of
/// [`root_lattice`], together with its norm.
pub fn glue_vector(kind: RootKind, n: usize, i: u64) -> Result<(Vec<Rat>, Rat)> {
    check_rank(kind, n)?;
    let bad = || Error::InvalidGlueIndex {
        kind: kind.letter(),
        rank: n,
        index: i.to_string(),
    };
    let d = ambient_dim(kind, n);
    let v: Vec<Rat> = match kind {
        RootKind::A => {
            let i = usize::try_from(i).ok().filter(|&i| i <= n).ok_or_else(bad)?;
            let j = n + 1 - i;
            let m = (n + 1) as i64;
            (0..d)
                .map(|k| {
                    if k < j {
                        rat_frac(i as i64, m)
                    } else {
                        rat_frac(-(j as i64), m)
                    }
                })
                .collect()
        }
        RootKind::D => match i {
            0 => vec![Rat::zero(); d],
            1 => vec![rat_frac(1, 2); d],
            2 => unit(d, d - 1),
            3 => {
                let mut v = vec![rat_frac(1, 2); d];
                v[d - 1] = rat_frac(-1, 2);
                v
            }
            _ => return Err(bad()),
        },
        RootKind::E => {
            if i != 0 {
                return Err(bad());
            }
            vec![Rat::zero(); d]
        }
    };
    let ones = vec![Rat::one(); d];
    let norm = ambient_inner(&ones, &v, &v);
    Ok((v, norm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{theta_coefficients, DEFAULT_NODE_BUDGET};
    use num_bigint::BigInt;

    fn roots(l: &EmbeddedLattice) -> u64 {
        theta_coefficients(l.gram(), 2, DEFAULT_NODE_BUDGET).unwrap().get(&2).copied().unwrap_or(0)
    }

    #[test]
    fn root_lattice_invariants() {
        let a2 = root_lattice(RootKind::A, 2).unwrap();
        assert_eq!(a2.gram().to_i64().unwrap(), vec![2, -1, -1, 2]);
        let d4 = root_lattice(RootKind::D, 4).unwrap();
        assert_eq!(d4.gram().determinant(), BigInt::from(4));
        assert_eq!(roots(&d4), 24);
        for (n, det, count) in [(6, 3, 72), (7, 2, 126), (8, 1, 240)] {
            let e = root_lattice(RootKind::E, n).unwrap();
            assert_eq!(e.gram().determinant(), BigInt::from(det));
            assert_eq!(roots(&e), count);
        }
        for n in 1..=8 {
            let a = root_lattice(RootKind::A, n).unwrap();
            assert_eq!(a.gram().determinant(), BigInt::from(n as i64 + 1));
            assert_eq!(roots(&a), (n * (n + 1)) as u64);
        }
        for n in 4..=8 {
            assert_eq!(roots(&root_lattice(RootKind::D, n).unwrap()), (2 * n * (n - 1)) as u64);
        }
        assert!(root_lattice(RootKind::D, 3).is_err());
        assert!(root_lattice(RootKind::E, 9).is_err());
        assert!(root_lattice(RootKind::A, 0).is_err());
    }

    #[test]
    fn glue_norms() {
        assert_eq!(glue_vector(RootKind::A, 2, 1).unwrap().1, rat_frac(2, 3));
        assert_eq!(glue_vector(RootKind::D, 12, 1).unwrap().1, rat(3));
        assert_eq!(glue_vector(RootKind::A, 15, 4).unwrap().1, rat(3));
        assert_eq!(glue_vector(RootKind::D, 12, 2).unwrap().1, rat(1));
        assert_eq!(glue_vector(RootKind::D, 10, 3).unwrap().1, rat_frac(10, 4));
        assert!(glue_vector(RootKind::A, 3, 4).is_err());
        assert!(glue_vector(RootKind::D, 5, 4).is_err());
        assert!(glue_vector(RootKind::E, 8, 1).is_err());
    }

    #[test]
    fn glue_vectors_lie_in_the_dual() {
        for n in 1..=9usize {
            let a = root_lattice(RootKind::A, n).unwrap();
            for i in 0..=n as u64 {
                let (g, norm) = glue_vector(RootKind::A, n, i).unwrap();
                assert_eq!(norm, rat_frac((i as i64) * (n as i64 + 1 - i as i64), n as i64 + 1));
                assert!(a.basis().iter().all(|b| a.inner(b, &g).is_integer()));
            }
        }
        for n in 4..=9usize {
            let d = root_lattice(RootKind::D, n).unwrap();
            for i in 0..4 {
                let (g, _) = glue_vector(RootKind::D, n, i).unwrap();
                assert!(d.basis().iter().all(|b| d.inner(b, &g).is_integer()));
            }
        }
    }
}

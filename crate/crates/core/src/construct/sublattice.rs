use num_bigint::BigInt;

use super::{ratv, EmbeddedLattice};
use crate::error::{Error, Result};
use crate::exactlin::{isometry_test, GramMatrix};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Basis `e_2 + u_2 e_1, …, e_n + u_n e_1, p e_1` of an index-`p`
/// sublattice of `I_n`, as integer coordinate rows.
pub fn index_p_basis(n: usize, p: u64, u: &[i64]) -> Result<Vec<Vec<i64>>> {
    if n < 2 || u.len() != n - 1 || !is_prime(p) {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2, prime p and n - 1 shifts (n = {n}, p = {p}, {} shifts)",
            u.len()
        )));
    }
    let mut rows = Vec::with_capacity(n);
    for (k, &uk) in u.iter().enumerate() {
        let mut v = vec![0i64; n];
        v[0] = uk;
        v[k + 1] = 1;
        rows.push(v);
    }
    let mut last = vec![0i64; n];
    last[0] = p as i64;
    rows.push(last);
    Ok(rows)
}

fn gram_of_rows(rows: &[Vec<i64>]) -> Result<GramMatrix> {
    let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    GramMatrix::identity(rows[0].len()).sublattice(&big)
}

/// `I_{u_2,…,u_n}(p)` for shifts in normal form `0 ≤ u_2 ≤ ⋯ ≤ u_n ≤ p/2`.
pub fn index_p_sublattice(n: usize, p: u64, u: &[i64]) -> Result<GramMatrix> {
    let sorted = u.windows(2).all(|w| w[0] <= w[1]);
    if !sorted || u.iter().any(|&x| x < 0 || 2 * x > p as i64) {
        return Err(Error::InvalidParameters(format!(
            "shifts {u:?} are not in normal form for p = {p}"
        )));
    }
    gram_of_rows(&index_p_basis(n, p, u)?)
}

fn nondecreasing(len: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<i64>| {
                let lo = t.last().copied().unwrap_or(0);
                (lo..=max).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// One representative per isometry class of the normal-form index-`p`
/// sublattices of `I_n`, in the order the shift tuples are generated.
pub fn enumerate_index_p_sublattices(n: usize, p: u64) -> Result<Vec<GramMatrix>> {
    if n < 2 || !is_prime(p) {
        return Err(Error::InvalidParameters(format!("need n >= 2 and prime p (n = {n}, p = {p})")));
    }
    let mut classes: Vec<GramMatrix> = Vec::new();
    for u in nondecreasing(n - 1, (p / 2) as i64) {
        let g = index_p_sublattice(n, p, &u)?;
        let mut fresh = true;
        for c in &classes {
            if isometry_test(c, &g)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            classes.push(g);
        }
    }
    Ok(classes)
}

/// `I_{a,b}(p) = Z(e_1 + a e_3) + Z(e_2 + b e_3) + Z(p e_3)`.
pub fn ternary_iabp(a: i64, b: i64, p: i64) -> Result<GramMatrix> {
    if !(0 <= a && a <= b && 2 * b <= p) || p < 1 {
        return Err(Error::InvalidParameters(format!("need 0 <= a <= b <= p/2 (a = {a}, b = {b}, p = {p})")));
    }
    gram_of_rows(&[vec![1, 0, a], vec![0, 1, b], vec![0, 0, p]])
}

/// `A_{n,k}` inside `I_n`: basis `-e_i + e_{i+1}` for `i < n` and
/// `-(e_{n-k+1} + ⋯ + e_n)`.
pub fn ank(n: usize, k: usize) -> Result<EmbeddedLattice> {
    if !(1 < k && k < n) {
        return Err(Error::InvalidParameters(format!("need 1 < k <= n - 1 (n = {n}, k = {k})")));
    }
    let mut basis = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let mut v = vec![0i64; n];
        v[i] = -1;
        v[i + 1] = 1;
        basis.push(ratv(&v));
    }
    let x: Vec<i64> = (0..n).map(|i| if i >= n - k { -1 } else { 0 }).collect();
    basis.push(ratv(&x));
    EmbeddedLattice::euclidean(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_glue, parse_glue};
    use crate::exactlin::index_in;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn index_p_examples() {
        assert_eq!(index_p_sublattice(2, 3, &[1]).unwrap().to_i64().unwrap(), vec![2, 3, 3, 9]);
        assert_eq!(index_p_sublattice(2, 2, &[0]).unwrap(), GramMatrix::diagonal(&[1, 4]).unwrap());
        let a3 = build_glue(&parse_glue("A3").unwrap()).unwrap();
        let l = index_p_sublattice(3, 2, &[1, 1]).unwrap();
        assert_eq!(l.determinant(), BigInt::from(4));
        assert!(isometry_test(&l, a3.gram()).unwrap());
        assert!(index_p_sublattice(2, 3, &[2]).is_err());
        assert!(index_p_sublattice(3, 5, &[2, 1]).is_err());
        assert!(index_p_sublattice(2, 4, &[1]).is_err());
    }

    #[test]
    fn sublattice_classes() {
        let c = enumerate_index_p_sublattices(2, 3).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0], GramMatrix::diagonal(&[1, 9]).unwrap());
        assert_eq!(c[1].to_i64().unwrap(), vec![2, 3, 3, 9]);
        let c = enumerate_index_p_sublattices(2, 2).unwrap();
        assert_eq!(c.len(), 2);
        assert!(isometry_test(&c[1], &GramMatrix::diagonal(&[2, 2]).unwrap()).unwrap());
        // (0,0) gives <1,1,4>, (0,1) gives <1,2,2>, (1,1) gives A_3
        let c = enumerate_index_p_sublattices(3, 2).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn ternary_examples() {
        assert_eq!(ternary_iabp(1, 1, 3).unwrap().to_i64().unwrap(), vec![2, 1, 3, 1, 2, 3, 3, 3, 9]);
        assert_eq!(ternary_iabp(0, 0, 7).unwrap(), GramMatrix::diagonal(&[1, 1, 49]).unwrap());
        assert_eq!(
            ternary_iabp(1, 2, 5).unwrap().to_i64().unwrap(),
            vec![2, 2, 5, 2, 5, 10, 5, 10, 25]
        );
        assert!(ternary_iabp(2, 1, 5).is_err());
        assert!(ternary_iabp(1, 3, 5).is_err());
    }

    #[test]
    fn ank_examples() {
        let l = ank(6, 3).unwrap();
        assert_eq!(l.rank(), 6);
        assert_eq!(l.gram().determinant(), BigInt::from(9));
        let last: Vec<BigInt> = (0..6).map(|j| l.gram().get(5, j).clone()).collect();
        assert_eq!(last, [0, 0, -1, 0, 0, 3].map(BigInt::from).to_vec());
        assert_eq!(index_in(l.gram(), &GramMatrix::identity(6)).unwrap(), BigInt::from(3));
        assert_eq!(ank(16, 4).unwrap().gram().determinant(), BigInt::from(16));
        let d6 = build_glue(&parse_glue("D6").unwrap()).unwrap();
        assert!(isometry_test(ank(6, 2).unwrap().gram(), d6.gram()).unwrap());
        assert!(ank(5, 1).is_err());
        assert!(ank(5, 5).is_err());
    }
}

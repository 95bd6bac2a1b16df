#![allow(dead_code)]

use std::collections::BTreeSet;

use isolattice::exactlin::linalg::Rat;
use isolattice::GramMatrix;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use proptest::prelude::*;
use rand::Rng;

/// Laplace expansion; only for the tiny matrices used as oracles.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0;
    for j in 0..n {
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        acc += s * m[0][j] * cofactor_det(&minor);
    }
    acc
}

pub fn small(g: &GramMatrix) -> Vec<Vec<i128>> {
    g.rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect()
}

pub fn norm_of(g: &[Vec<i128>], x: &[i64]) -> i128 {
    let n = x.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s += g[i][j] * x[i] as i128 * x[j] as i128;
        }
    }
    s
}

pub fn inner_of(g: &[Vec<i128>], x: &[i64], y: &[i64]) -> i128 {
    let n = x.len();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            s += g[i][j] * x[i] as i128 * y[j] as i128;
        }
    }
    s
}

/// Every nonzero `x` with `Q(x) ≤ bound`, both signs, from the box
/// `x_i² ≤ bound · (G⁻¹)_ii`.
pub fn box_search(g: &GramMatrix, bound: u64) -> Vec<(u64, Vec<i64>)> {
    let m = small(g);
    let n = m.len();
    let det = cofactor_det(&m);
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                .collect();
            let num = bound as i128 * cofactor_det(&minor);
            let mut r = 0i64;
            while ((r + 1) as i128) * ((r + 1) as i128) * det <= num {
                r += 1;
            }
            r
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<i64> = radius.iter().map(|r| -r).collect();
    loop {
        let q = norm_of(&m, &x);
        if q > 0 && q <= bound as i128 {
            out.push((q as u64, x.clone()));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if x[i] < radius[i] {
                x[i] += 1;
                break;
            }
            x[i] = -radius[i];
            i += 1;
        }
    }
}

pub fn first_nonzero_positive(x: &[i64]) -> bool {
    x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

/// Brute-force representation test for a rank ≤ 2 target.
pub fn naive_represents(target: &GramMatrix, host: &GramMatrix) -> bool {
    let t = small(target);
    let h = small(host);
    let maxd = t.iter().enumerate().map(|(i, r)| r[i]).max().unwrap() as u64;
    let vs = box_search(host, maxd);
    let of_norm = |k: i128| vs.iter().filter(move |(q, _)| *q as i128 == k).map(|(_, v)| v);
    match t.len() {
        1 => of_norm(t[0][0]).next().is_some(),
        2 => of_norm(t[0][0]).any(|x| of_norm(t[1][1]).any(|y| inner_of(&h, x, y) == t[0][1])),
        _ => panic!("oracle handles rank ≤ 2 targets"),
    }
}

pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Vec<Vec<BigInt>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let a = rng.gen_range(-2..=2);
        for row in u.iter_mut() {
            row[j] += a * row[i];
        }
        if rng.gen_bool(0.2) {
            for row in u.iter_mut() {
                row.swap(i, j);
            }
        }
    }
    u.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()
}

/// Random positive definite Gram matrices with bounded entries.
pub fn gram_strategy(max_rank: usize, max_diag: i64, max_off: i64) -> impl Strategy<Value = GramMatrix> {
    (1..=max_rank)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(1..=max_diag, n),
                prop::collection::vec(-max_off..=max_off, n * (n - 1) / 2),
            )
        })
        .prop_filter_map("positive definite", |(d, off)| {
            let n = d.len();
            let mut rows = vec![vec![0i64; n]; n];
            let mut k = 0;
            for i in 0..n {
                rows[i][i] = d[i];
                for j in i + 1..n {
                    rows[i][j] = off[k];
                    rows[j][i] = off[k];
                    k += 1;
                }
            }
            GramMatrix::from_rows(&rows).ok()
        })
}

pub fn random_gram<R: Rng>(rng: &mut R, n: usize, max_diag: i64, max_off: i64) -> GramMatrix {
    loop {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            rows[i][i] = rng.gen_range(1..=max_diag);
            for j in 0..i {
                let x = rng.gen_range(-max_off..=max_off);
                rows[i][j] = x;
                rows[j][i] = x;
            }
        }
        if let Ok(g) = GramMatrix::from_rows(&rows) {
            return g;
        }
    }
}

pub fn sorted_set(v: Vec<(u64, Vec<i64>)>) -> BTreeSet<(u64, Vec<i64>)> {
    v.into_iter().collect()
}

/// Minimum over nonzero integer vectors of the Schur complement of the
/// leading `i × i` block, by box search on a scaled copy.
pub fn trailing_minimum(g: &GramMatrix, i: usize) -> Rat {
    let n = g.rank();
    let r: Vec<Vec<Rat>> = g.rows().into_iter().map(|row| row.into_iter().map(Rat::from_integer).collect()).collect();
    // Gaussian elimination of the first i rows and columns
    let mut m = r.clone();
    for k in 0..i {
        for a in k + 1..n {
            let f = &m[a][k] / &m[k][k];
            for b in k..n {
                let t = &f * &m[k][b];
                m[a][b] -= t;
            }
        }
    }
    let s: Vec<Vec<Rat>> = (i..n).map(|a| (i..n).map(|b| m[a][b].clone()).collect()).collect();
    let den = s.iter().flatten().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let scaled: Vec<Vec<i64>> = s
        .iter()
        .map(|row| row.iter().map(|x| (x * Rat::from_integer(den.clone())).to_integer().try_into().unwrap()).collect())
        .collect();
    let sg = GramMatrix::from_rows(&scaled).unwrap();
    let bound: u64 = sg.min_diagonal().try_into().unwrap();
    let best = box_search(&sg, bound).into_iter().map(|(q, _)| q).min().unwrap();
    Rat::new(BigInt::from(best), den)
}


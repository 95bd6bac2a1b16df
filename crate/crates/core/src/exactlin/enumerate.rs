//! Exact short-vector enumeration.
//!
//! The kernel walks coordinates from last to first. With `D_k` the leading
//! principal minors and `λ_ij = D_i c_ij` (always integral), the partial
//! norm of the fixed tail scaled by `D_i` is an integer, so every bound test
//! is an integer comparison. The walk runs in checked `i128` and restarts in
//! `BigInt` if anything overflows.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gram::GramMatrix;
use crate::error::{Error, Result};

/// Default node budget for every tree search in the crate.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Coordinates of a lattice vector in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn to_big(&self) -> Vec<BigInt> {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Flips sign so the first nonzero coordinate is positive.
    pub fn normalize_sign(&mut self) {
        if let Some(first) = self.0.iter().find(|&&x| x != 0) {
            if *first < 0 {
                for x in self.0.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVector {
    pub coords: LatticeVector,
    pub norm: u64,
}

/// `Q(x) = Σ h_i (x_i + Σ_{j>i} c_ij x_j)²`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalCholesky {
    pub h: Vec<BigRational>,
    /// `c[i][j]`, meaningful for `j > i`; zero elsewhere.
    pub c: Vec<Vec<BigRational>>,
}

impl RationalCholesky {
    /// Evaluates the decomposed form at a rational point.
    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        let n = self.h.len();
        let mut acc = BigRational::zero();
        for i in 0..n {
            let mut y = x[i].clone();
            for j in i + 1..n {
                y += &self.c[i][j] * &x[j];
            }
            acc += &self.h[i] * &y * &y;
        }
        acc
    }

    /// Expands back to a symmetric rational matrix.
    pub fn reconstruct(&self) -> Vec<Vec<BigRational>> {
        let n = self.h.len();
        let coef = |k: usize, i: usize| -> BigRational {
            if i == k {
                BigRational::one()
            } else if i > k {
                self.c[k][i].clone()
            } else {
                BigRational::zero()
            }
        };
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &self.h[k] * coef(k, i) * coef(k, j)).sum())
                    .collect()
            })
            .collect()
    }
}

/// Rational Cholesky of a symmetric integer matrix given by rows.
pub fn cholesky_rows(rows: &[Vec<BigInt>]) -> Result<RationalCholesky> {
    let n = rows.len();
    let g = |i: usize, j: usize| BigRational::from_integer(rows[i][j].clone());
    let mut h = Vec::with_capacity(n);
    let mut c = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut hi = g(i, i);
        for k in 0..i {
            hi -= &h[k] * &c[k][i] * &c[k][i];
        }
        if !hi.is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            let mut v = g(i, j);
            for k in 0..i {
                v -= &h[k] * &c[k][i] * &c[k][j];
            }
            c[i][j] = v / &hi;
        }
        h.push(hi);
    }
    Ok(RationalCholesky { h, c })
}

pub fn cholesky(g: &GramMatrix) -> RationalCholesky {
    cholesky_rows(&g.rows()).expect("GramMatrix is positive definite")
}

trait KInt: Clone + Ord + Sized {
    fn lift(v: &BigInt) -> Option<Self>;
    fn small(v: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
    fn div_floor(&self, o: &Self) -> Self;
    fn div_ceil(&self, o: &Self) -> Self;
    fn isqrt(&self) -> Self;
    fn neg(&self) -> Self;
    fn to_i64(&self) -> Option<i64>;
    fn to_u64(&self) -> Option<u64>;
    fn is_negative(&self) -> bool;
}

impl KInt for i128 {
    fn lift(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn small(v: i64) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_ceil(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn to_u64(&self) -> Option<u64> {
        u64::try_from(*self).ok()
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
}

impl KInt for BigInt {
    fn lift(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn small(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn div_floor(&self, o: &Self) -> Self {
        Integer::div_floor(self, o)
    }
    fn div_ceil(&self, o: &Self) -> Self {
        -Integer::div_floor(&-self, o)
    }
    fn isqrt(&self) -> Self {
        Roots::sqrt(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn to_u64(&self) -> Option<u64> {
        ToPrimitive::to_u64(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

enum Abort {
    Budget,
    Overflow,
    CoordOverflow,
}

struct Kernel<'v, T, F: FnMut(&[i64], u64)> {
    n: usize,
    minors: Vec<T>,
    lam: Vec<Vec<T>>,
    bound: T,
    budget: u64,
    nodes: u64,
    visit: &'v mut F,
}

impl<T: KInt, F: FnMut(&[i64], u64)> Kernel<'_, T, F> {
    fn level(&mut self, i: usize, x: &mut [i64], w_next: &T, tail_zero: bool) -> Result<(), Abort> {
        let mut centre = T::small(0);
        for j in i + 1..self.n {
            if x[j] != 0 {
                let t = self.lam[i][j].mul(&T::small(x[j])).ok_or(Abort::Overflow)?;
                centre = centre.add(&t).ok_or(Abort::Overflow)?;
            }
        }
        let (d_lo, d_hi) = (&self.minors[i].clone(), &self.minors[i + 1].clone());
        let slack = self.bound.mul(d_hi).and_then(|v| v.sub(w_next)).ok_or(Abort::Overflow)?;
        let rhs = d_lo.mul(&slack).ok_or(Abort::Overflow)?;
        if rhs.is_negative() {
            return Ok(());
        }
        let r = rhs.isqrt();
        let mut lo = r.neg().sub(&centre).ok_or(Abort::Overflow)?.div_ceil(d_hi);
        let hi = r.sub(&centre).ok_or(Abort::Overflow)?.div_floor(d_hi);
        if tail_zero {
            let floor = T::small(if i == 0 { 1 } else { 0 });
            if lo < floor {
                lo = floor;
            }
        }
        if lo > hi {
            return Ok(());
        }
        let lo = lo.to_i64().ok_or(Abort::CoordOverflow)?;
        let hi = hi.to_i64().ok_or(Abort::CoordOverflow)?;
        let scaled_tail = d_lo.mul(w_next).ok_or(Abort::Overflow)?;
        for xi in lo..=hi {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Abort::Budget);
            }
            let t = d_hi
                .mul(&T::small(xi))
                .and_then(|v| v.add(&centre))
                .ok_or(Abort::Overflow)?;
            let w = scaled_tail
                .add(&t.mul(&t).ok_or(Abort::Overflow)?)
                .ok_or(Abort::Overflow)?
                .div_exact(d_hi);
            x[i] = xi;
            if i == 0 {
                let norm = w.to_u64().ok_or(Abort::Overflow)?;
                (self.visit)(x, norm);
            } else {
                self.level(i - 1, x, &w, tail_zero && xi == 0)?;
            }
        }
        x[i] = 0;
        Ok(())
    }
}

fn run_kernel<T: KInt, F: FnMut(&[i64], u64)>(
    minors: &[BigInt],
    lam: &[Vec<BigInt>],
    bound: u64,
    budget: u64,
    visit: &mut F,
) -> Result<u64, Abort> {
    let n = lam.len();
    let lift = |v: &BigInt| T::lift(v).ok_or(Abort::Overflow);
    let minors = minors.iter().map(lift).collect::<Result<Vec<T>, Abort>>()?;
    let lam = lam
        .iter()
        .map(|row| row.iter().map(lift).collect::<Result<Vec<T>, Abort>>())
        .collect::<Result<Vec<_>, Abort>>()?;
    let bound = T::lift(&BigInt::from(bound)).ok_or(Abort::Overflow)?;
    let mut k = Kernel {
        n,
        minors,
        lam,
        bound,
        budget,
        nodes: 0,
        visit,
    };
    let mut x = vec![0i64; n];
    k.level(n - 1, &mut x, &T::small(0), true)?;
    Ok(k.nodes)
}

/// Integral data driving the kernel: `D_0 = 1, D_1, ..., D_n` and `λ_ij = D_{i+1} c_ij`.
fn kernel_data(g: &GramMatrix) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let ch = cholesky(g);
    let mut minors = vec![BigInt::one()];
    minors.extend(g.leading_minors());
    let n = g.rank();
    let lam = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j <= i {
                        return BigInt::zero();
                    }
                    let v = &ch.c[i][j] * BigRational::from_integer(minors[i + 1].clone());
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    (minors, lam)
}

/// Calls `visit(coords, norm)` for every nonzero vector of norm at most
/// `bound`, one per `±` pair (the one whose last nonzero coordinate is
/// positive), in depth-first order. Returns the number of tree nodes used.
pub fn for_each_short_vector<F: FnMut(&[i64], u64)>(
    g: &GramMatrix,
    bound: u64,
    budget: u64,
    mut visit: F,
) -> Result<u64> {
    let (minors, lam) = kernel_data(g);
    let mut seen = Vec::new();
    // Buffer the fast pass so an overflow restart does not report vectors twice.
    let fast = run_kernel::<i128, _>(&minors, &lam, bound, budget, &mut |x: &[i64], n| {
        seen.push((x.to_vec(), n))
    });
    match fast {
        Ok(nodes) => {
            for (x, n) in seen {
                visit(&x, n);
            }
            Ok(nodes)
        }
        Err(Abort::Budget) => Err(Error::BudgetExceeded { budget }),
        Err(Abort::CoordOverflow) => Err(Error::Overflow),
        Err(Abort::Overflow) => match run_kernel::<BigInt, _>(&minors, &lam, bound, budget, &mut visit) {
            Ok(nodes) => Ok(nodes),
            Err(Abort::Budget) => Err(Error::BudgetExceeded { budget }),
            Err(_) => Err(Error::Overflow),
        },
    }
}

/// All nonzero vectors with `Q(v) <= bound`, one of each `±` pair (first
/// nonzero coordinate positive), sorted by norm then coordinates.
pub fn enumerate_vectors(g: &GramMatrix, bound: u64, budget: u64) -> Result<Vec<ShortVector>> {
    let mut out = Vec::new();
    for_each_short_vector(g, bound, budget, |x, norm| {
        let mut v = LatticeVector(x.to_vec());
        v.normalize_sign();
        out.push(ShortVector { coords: v, norm });
    })?;
    out.sort_by(|a, b| (a.norm, &a.coords).cmp(&(b.norm, &b.coords)));
    Ok(out)
}

/// Counts of all nonzero vectors (both signs) by norm, up to `bound`.
pub fn theta_coefficients(g: &GramMatrix, bound: u64, budget: u64) -> Result<BTreeMap<u64, u64>> {
    let mut counts = BTreeMap::new();
    for_each_short_vector(g, bound, budget, |_, norm| *counts.entry(norm).or_insert(0) += 2)?;
    Ok(counts)
}

pub fn min_norm(g: &GramMatrix, budget: u64) -> Result<u64> {
    let bound = ToPrimitive::to_u64(&g.min_diagonal()).ok_or(Error::Overflow)?;
    let mut best = u64::MAX;
    for_each_short_vector(g, bound, budget, |_, norm| best = best.min(norm))?;
    Ok(best)
}

/// Incremental rational row echelon form used for independence tests.
#[derive(Default)]
pub(crate) struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub(crate) fn insert(&mut self, v: &[i64]) -> bool {
        let mut v: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        for (piv, row) in &self.rows {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone() / &row[*piv];
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

/// First `k` successive minima, by greedy selection over vectors of rising norm.
pub fn successive_minima(g: &GramMatrix, k: usize, budget: u64) -> Result<Vec<u64>> {
    if k == 0 || k > g.rank() {
        return Err(Error::InvalidParameters(format!(
            "successive minima index {k} outside 1..={}",
            g.rank()
        )));
    }
    let bound = ToPrimitive::to_u64(&g.max_diagonal()).ok_or(Error::Overflow)?;
    let vectors = enumerate_vectors(g, bound, budget)?;
    let mut ech = Echelon::default();
    let mut out = Vec::with_capacity(k);
    for v in &vectors {
        if ech.insert(&v.coords.0) {
            out.push(v.norm);
            if out.len() == k {
                break;
            }
        }
    }
    Ok(out)
}

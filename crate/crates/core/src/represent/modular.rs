//! Representations modulo prime powers.
//!
//! For `p = 2` the columns of `T` are searched directly modulo `2^e`. For
//! odd `p` the solutions modulo `p` are found first and lifted one power of
//! `p` at a time; each lift is a linear system over `F_p`. Solutions modulo
//! `p` related by a reflection of the host are interchangeable, so only one
//! per orbit is lifted.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::construct::is_prime;
use crate::error::{Error, Result};
use crate::exactlin::GramMatrix;

/// Largest vector space or solution space the oracle will walk.
pub const MOD_SEARCH_LIMIT: u64 = 1 << 22;

/// Default exponent: `e = 4` for `p = 2`, `e = 3` otherwise.
pub fn default_exponent(p: u64) -> u32 {
    if p == 2 {
        4
    } else {
        3
    }
}

fn reduce(x: &BigInt, q: i64) -> i64 {
    x.mod_floor(&BigInt::from(q)).to_i64().expect("residue fits")
}

fn modq(x: i128, q: i64) -> i64 {
    x.rem_euclid(q as i128) as i64
}

struct Problem {
    n: usize,
    m: usize,
    p: i64,
    e: u32,
    q: i64,
    g: Vec<Vec<i64>>,
    a: Vec<Vec<i64>>,
}

impl Problem {
    fn inner(&self, x: &[i64], y: &[i64], q: i64) -> i64 {
        let mut s: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let gi: i128 = (0..self.n).map(|j| self.g[i][j] as i128 * y[j] as i128).sum();
            s += x[i] as i128 * gi;
        }
        modq(s, q)
    }

    /// All `x ∈ (Z/q)^n`, as a flat list.
    fn space(&self, q: i64) -> Result<Vec<Vec<i64>>> {
        let size = (q as u64).checked_pow(self.n as u32).filter(|&s| s <= MOD_SEARCH_LIMIT);
        if size.is_none() {
            return Err(Error::SizeExceeded(format!("{q}^{}", self.n)));
        }
        let mut out = vec![vec![]];
        for _ in 0..self.n {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (0..q).map(move |x| {
                        let mut v = v.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        Ok(out)
    }

    /// Column-by-column search modulo `q`. `visit` sees each complete
    /// solution and returns true to stop.
    fn columns(&self, q: i64, visit: &mut dyn FnMut(&[Vec<i64>]) -> bool) -> Result<bool> {
        let space = self.space(q)?;
        let norms: Vec<i64> = space.iter().map(|v| self.inner(v, v, q)).collect();
        let mut cols: Vec<Vec<i64>> = Vec::with_capacity(self.m);
        Ok(self.columns_rec(q, &space, &norms, &mut cols, visit))
    }

    fn columns_rec(
        &self,
        q: i64,
        space: &[Vec<i64>],
        norms: &[i64],
        cols: &mut Vec<Vec<i64>>,
        visit: &mut dyn FnMut(&[Vec<i64>]) -> bool,
    ) -> bool {
        let j = cols.len();
        if j == self.m {
            return visit(cols);
        }
        let want = modq(self.a[j][j] as i128, q);
        for (v, &nv) in space.iter().zip(norms) {
            if nv != want {
                continue;
            }
            if (0..j).any(|i| self.inner(&cols[i], v, q) != modq(self.a[i][j] as i128, q)) {
                continue;
            }
            cols.push(v.clone());
            let stop = self.columns_rec(q, space, norms, cols, visit);
            cols.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// Linear map `D ↦ DᵗM + MᵗD` over `F_p`, `M = G T mod p`, as rows
    /// indexed by pairs `i ≤ j` and columns by entries `D[a][b]`.
    fn lift_matrix(&self, t: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let p = self.p;
        let (n, m) = (self.n, self.m);
        let gm: Vec<Vec<i64>> = (0..n)
            .map(|a| {
                (0..m)
                    .map(|b| modq((0..n).map(|c| self.g[a][c] as i128 * t[b][c] as i128).sum(), p))
                    .collect()
            })
            .collect();
        let mut rows = Vec::new();
        for i in 0..m {
            for j in i..m {
                let mut row = vec![0i64; n * m];
                for a in 0..n {
                    row[a * m + i] = (row[a * m + i] + gm[a][j]) % p;
                    row[a * m + j] = (row[a * m + j] + gm[a][i]) % p;
                }
                rows.push(row);
            }
        }
        rows
    }

    /// `(A - TᵗGT) / p^k mod p`, in the row order of [`Self::lift_matrix`].
    fn defect(&self, t: &[Vec<i64>], k: u32) -> Vec<i64> {
        let pk = self.p.pow(k);
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in i..self.m {
                let r = modq(self.a[i][j] as i128 - self.inner(&t[i], &t[j], self.q) as i128, self.q);
                debug_assert_eq!(r % pk, 0);
                out.push((r / pk) % self.p);
            }
        }
        out
    }

    fn lift(&self, t: &[Vec<i64>], k: u32, system: &Solver) -> Result<bool> {
        if k == self.e {
            return Ok(true);
        }
        let rhs = self.defect(t, k);
        let Some(particular) = system.solve(&rhs) else {
            return Ok(false);
        };
        if k + 1 == self.e || system.rank == system.height {
            return Ok(true);
        }
        let dim = system.kernel.len() as u32;
        let count = (self.p as u64).checked_pow(dim).filter(|&c| c <= MOD_SEARCH_LIMIT);
        let Some(count) = count else {
            return Err(Error::SizeExceeded(format!("{}^{dim} lifts", self.p)));
        };
        let pk = self.p.pow(k);
        let mut coeffs = vec![0i64; dim as usize];
        for _ in 0..count {
            let mut d = particular.clone();
            for (c, kv) in coeffs.iter().zip(&system.kernel) {
                if *c != 0 {
                    for (x, y) in d.iter_mut().zip(kv) {
                        *x = (*x + c * y) % self.p;
                    }
                }
            }
            let next: Vec<Vec<i64>> = (0..self.m)
                .map(|b| (0..self.n).map(|a| (t[b][a] + pk * d[a * self.m + b]).rem_euclid(self.q)).collect())
                .collect();
            if self.lift(&next, k + 1, system)? {
                return Ok(true);
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if *c < self.p {
                    break;
                }
                *c = 0;
            }
        }
        Ok(false)
    }

    /// Reflection in `r` applied to every column, modulo `p`.
    fn reflect(&self, r: &[i64], inv_qr: i64, t: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let p = self.p;
        t.iter()
            .map(|x| {
                let f = (2 * self.inner(x, r, p) % p) * inv_qr % p;
                x.iter().zip(r).map(|(&xi, &ri)| (xi - f * ri).rem_euclid(p)).collect()
            })
            .collect()
    }
}

/// Row reduction over `F_p` of a fixed linear system.
struct Solver {
    p: i64,
    width: usize,
    height: usize,
    rank: usize,
    /// row operations applied, so `combo · rhs` is the reduced right-hand side
    combo: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    kernel: Vec<Vec<i64>>,
}

fn inv_mod(a: i64, p: i64) -> i64 {
    let e = num_integer::Integer::extended_gcd(&a.rem_euclid(p), &p);
    e.x.rem_euclid(p)
}

impl Solver {
    fn new(rows: Vec<Vec<i64>>, p: i64, width: usize) -> Self {
        let height = rows.len();
        let mut ech = rows;
        let mut combo: Vec<Vec<i64>> = (0..height)
            .map(|i| (0..height).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..width {
            let Some(piv) = (r..height).find(|&i| ech[i][col] != 0) else {
                continue;
            };
            ech.swap(r, piv);
            combo.swap(r, piv);
            let inv = inv_mod(ech[r][col], p);
            for x in ech[r].iter_mut() {
                *x = *x * inv % p;
            }
            for x in combo[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..height {
                if i != r && ech[i][col] != 0 {
                    let f = ech[i][col];
                    for c in 0..width {
                        ech[i][c] = (ech[i][c] - f * ech[r][c]).rem_euclid(p);
                    }
                    for c in 0..height {
                        combo[i][c] = (combo[i][c] - f * combo[r][c]).rem_euclid(p);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = vec![0i64; width];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (-ech[row][f]).rem_euclid(p);
                }
                v
            })
            .collect();
        Solver {
            p,
            width,
            height,
            rank: r,
            combo,
            pivots,
            kernel,
        }
    }

    fn solve(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        let p = self.p;
        let b: Vec<i64> = self
            .combo
            .iter()
            .map(|c| c.iter().zip(rhs).map(|(x, y)| x * y).sum::<i64>().rem_euclid(p))
            .collect();
        if b[self.rank..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut x = vec![0i64; self.width];
        for (row, &pc) in self.pivots.iter().enumerate() {
            x[pc] = b[row];
        }
        Some(x)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Whether some integer `T` satisfies `Tᵗ G_host T ≡ G_target (mod p^e)`.
pub fn rep_mod_pk(target: &GramMatrix, host: &GramMatrix, p: u64, e: u32) -> Result<bool> {
    if !is_prime(p) || e == 0 {
        return Err(Error::InvalidParameters(format!("need prime p and e >= 1 (p = {p}, e = {e})")));
    }
    let q = p
        .checked_pow(e)
        .filter(|&q| q <= MOD_SEARCH_LIMIT)
        .ok_or_else(|| Error::SizeExceeded(format!("{p}^{e}")))? as i64;
    let grab = |g: &GramMatrix| -> Vec<Vec<i64>> {
        (0..g.rank()).map(|i| (0..g.rank()).map(|j| reduce(g.get(i, j), q)).collect()).collect()
    };
    let prob = Problem {
        n: host.rank(),
        m: target.rank(),
        p: p as i64,
        e,
        q,
        g: grab(host),
        a: grab(target),
    };
    if p == 2 || e == 1 {
        return prob.columns(q, &mut |_| true);
    }
    let p = p as i64;
    let mut stuck: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut surjective = false;
    let found = prob.columns(p, &mut |t| {
        let s = Solver::new(prob.lift_matrix(t), p, prob.n * prob.m);
        if s.rank == s.height {
            surjective = true;
            return true;
        }
        stuck.push(t.to_vec());
        false
    })?;
    if found && surjective {
        return Ok(true);
    }
    if stuck.is_empty() {
        return Ok(false);
    }
    // Merge solutions mod p along host reflections in unit-norm vectors.
    let index: HashMap<Vec<Vec<i64>>, usize> = stuck.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let mut uf = UnionFind((0..stuck.len()).collect());
    let mut mirrors = Vec::new();
    for r in prob.space(p)? {
        let lead = r.iter().find(|&&x| x != 0).copied();
        let qr = prob.inner(&r, &r, p);
        if lead == Some(1) && qr != 0 {
            mirrors.push((inv_mod(qr, p), r));
        }
    }
    for (i, t) in stuck.iter().enumerate() {
        for (inv, r) in &mirrors {
            let image = prob.reflect(r, *inv, t);
            if let Some(&j) = index.get(&image) {
                uf.union(i, j);
            }
        }
    }
    for i in 0..stuck.len() {
        if uf.find(i) != i {
            continue;
        }
        let t = &stuck[i];
        let s = Solver::new(prob.lift_matrix(t), p, prob.n * prob.m);
        if prob.lift(t, 1, &s)? {
            return Ok(true);
        }
    }
    Ok(false)
}

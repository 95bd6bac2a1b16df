use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{Number, Value};

use super::linalg::det_int;
use crate::error::{Error, Result};

/// Exact symmetric positive definite integer matrix.
///
/// Symmetry and positive definiteness are checked on construction, so a
/// `GramMatrix` value always describes a positive definite integral lattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GramMatrix {
    rank: usize,
    entries: Vec<BigInt>,
}

impl GramMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::DimensionMismatch("empty Gram matrix".into()));
        }
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch("Gram matrix is not square".into()));
        }
        for i in 0..rank {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let g = GramMatrix {
            rank,
            entries: rows.into_iter().flatten().collect(),
        };
        // Sylvester: every leading principal minor positive.
        for k in 1..=rank {
            if !g.leading_minor(k).is_positive() {
                return Err(Error::NotPositiveDefinite);
            }
        }
        Ok(g)
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(diag: &[i64]) -> Result<Self> {
        let n = diag.len();
        Self::from_rows(
            &(0..n)
                .map(|i| (0..n).map(|j| if i == j { diag[i] } else { 0 }).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }

    /// The cubic lattice `I_n`.
    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1; n]).expect("identity is positive definite")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.rank).map(|c| c.to_vec()).collect()
    }

    pub fn diag(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.get(i, i).clone()).collect()
    }

    fn leading_minor(&self, k: usize) -> BigInt {
        let m: Vec<Vec<BigInt>> = (0..k)
            .map(|i| (0..k).map(|j| self.get(i, j).clone()).collect())
            .collect();
        det_int(&m)
    }

    pub fn determinant(&self) -> BigInt {
        self.leading_minor(self.rank)
    }

    /// Leading principal minors `D_1..D_n`.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.rank).map(|k| self.leading_minor(k)).collect()
    }

    /// `B(x, y)` for integer coordinate vectors.
    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for i in 0..self.rank {
            if x[i].is_zero() {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..self.rank {
                row += self.get(i, j) * &y[j];
            }
            acc += &x[i] * row;
        }
        acc
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.inner(x, x)
    }

    pub fn inner_i64(&self, x: &[i64], y: &[i64]) -> BigInt {
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        self.inner(&xb, &yb)
    }

    /// Gram matrix of the vectors given by the columns of `t` (`n x m`,
    /// stored as rows of length `m`): `tᵗ G t`.
    pub fn congruent(&self, t: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let m = t.first().map_or(0, |r| r.len());
        let cols: Vec<Vec<BigInt>> = (0..m).map(|j| t.iter().map(|r| r[j].clone()).collect()).collect();
        (0..m)
            .map(|i| (0..m).map(|j| self.inner(&cols[i], &cols[j])).collect())
            .collect()
    }

    /// Gram matrix of the sublattice spanned by the given coordinate vectors.
    pub fn sublattice(&self, vectors: &[Vec<BigInt>]) -> Result<GramMatrix> {
        let rows = vectors
            .iter()
            .map(|v| vectors.iter().map(|w| self.inner(v, w)).collect())
            .collect();
        GramMatrix::new(rows).map_err(|e| match e {
            Error::NotPositiveDefinite => Error::DependentBasis,
            e => e,
        })
    }

    pub fn min_diagonal(&self) -> BigInt {
        self.diag().into_iter().min().unwrap()
    }

    pub fn max_diagonal(&self) -> BigInt {
        self.diag().into_iter().max().unwrap()
    }

    /// Row-major entries as `i64`, when every entry fits.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.entries.iter().map(|x| x.to_i64()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rank).all(|i| (0..self.rank).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn to_json(&self) -> Value {
        let gram: Vec<Value> = self
            .entries
            .chunks(self.rank)
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x| Value::Number(x.to_string().parse::<Number>().expect("integer literal")))
                        .collect(),
                )
            })
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("rank".into(), Value::from(self.rank));
        obj.insert("gram".into(), Value::Array(gram));
        Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(m.to_string());
        let obj = v.as_object().ok_or_else(|| bad("expected a JSON object"))?;
        let rank = obj
            .get("rank")
            .and_then(|r| r.as_u64())
            .ok_or_else(|| bad("missing integer field \"rank\""))? as usize;
        let gram = obj
            .get("gram")
            .and_then(|g| g.as_array())
            .ok_or_else(|| bad("missing array field \"gram\""))?;
        if gram.len() != rank {
            return Err(bad("\"gram\" row count differs from \"rank\""));
        }
        let mut rows = Vec::with_capacity(rank);
        for row in gram {
            let row = row.as_array().ok_or_else(|| bad("Gram rows must be arrays"))?;
            if row.len() != rank {
                return Err(bad("Gram row length differs from \"rank\""));
            }
            let mut out = Vec::with_capacity(rank);
            for x in row {
                let n = x.as_number().ok_or_else(|| bad("Gram entries must be integers"))?;
                let parsed: BigInt = n
                    .to_string()
                    .parse()
                    .map_err(|_| bad("Gram entries must be integers"))?;
                out.push(parsed);
            }
            rows.push(out);
        }
        GramMatrix::new(rows)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&v)
    }
}

impl fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GramMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_diagonal() {
            let d: Vec<String> = self.diag().iter().map(|x| x.to_string()).collect();
            return write!(f, "<{}>", d.join(","));
        }
        let rows: Vec<String> = self
            .entries
            .chunks(self.rank)
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "[[{}]]", rows.join("],["))
    }
}

/// Block diagonal Gram matrix `G_1 ⊥ G_2 ⊥ ...`.
pub fn orthogonal_sum(parts: &[&GramMatrix]) -> GramMatrix {
    let n: usize = parts.iter().map(|g| g.rank()).sum();
    let mut rows = vec![vec![BigInt::zero(); n]; n];
    let mut off = 0;
    for g in parts {
        for i in 0..g.rank() {
            for j in 0..g.rank() {
                rows[off + i][off + j] = g.get(i, j).clone();
            }
        }
        off += g.rank();
    }
    GramMatrix::new(rows).expect("orthogonal sum of positive definite forms")
}

/// `sqrt(det(sub) / det(sup))`, the index of a full-rank sublattice.
pub fn index_in(sub: &GramMatrix, sup: &GramMatrix) -> Result<BigInt> {
    if sub.rank() != sup.rank() {
        return Err(Error::DimensionMismatch("index needs equal ranks".into()));
    }
    let (ds, dp) = (sub.determinant(), sup.determinant());
    let ratio = format!("{ds}/{dp}");
    if !(&ds % &dp).is_zero() {
        return Err(Error::NotASquareRatio(ratio));
    }
    super::linalg::exact_sqrt(&(ds / dp)).ok_or(Error::NotASquareRatio(ratio))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_asymmetric_and_indefinite() {
        assert_eq!(GramMatrix::from_rows(&[[1, 2], [3, 4]]).unwrap_err(), Error::NotSymmetric);
        assert_eq!(
            GramMatrix::from_rows(&[[1, 2], [2, 1]]).unwrap_err(),
            Error::NotPositiveDefinite
        );
        assert_eq!(GramMatrix::from_rows(&[[0]]).unwrap_err(), Error::NotPositiveDefinite);
    }

    #[test]
    fn determinants() {
        let a3 = GramMatrix::from_rows(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]).unwrap();
        assert_eq!(a3.determinant(), BigInt::from(4));
        let s = orthogonal_sum(&[&GramMatrix::identity(2), &a3, &GramMatrix::diagonal(&[3]).unwrap()]);
        assert_eq!(s.rank(), 6);
        assert_eq!(s.determinant(), BigInt::from(12));
        let one = GramMatrix::diagonal(&[1]).unwrap();
        assert_eq!(orthogonal_sum(&[&one, &one]), GramMatrix::identity(2));
    }

    #[test]
    fn index_of_sublattice() {
        let sub = GramMatrix::from_rows(&[[2, 3], [3, 9]]).unwrap();
        assert_eq!(index_in(&sub, &GramMatrix::identity(2)).unwrap(), BigInt::from(3));
        let a2 = GramMatrix::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        assert!(matches!(index_in(&a2, &GramMatrix::identity(2)), Err(Error::NotASquareRatio(_))));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let g = GramMatrix::from_rows(&[[2, -1], [-1, 2]]).unwrap();
        let s = g.to_json_string();
        assert_eq!(s, r#"{"rank":2,"gram":[[2,-1],[-1,2]]}"#);
        assert_eq!(GramMatrix::from_json_str(&s).unwrap(), g);
        let big = r#"{"rank":1,"gram":[[123456789012345678901234567890]]}"#;
        let g = GramMatrix::from_json_str(big).unwrap();
        assert_eq!(g.get(0, 0).to_string(), "123456789012345678901234567890");
        assert!(matches!(GramMatrix::from_json_str(r#"{"rank":1,"gram":[[1.5]]}"#), Err(Error::Parse(_))));
        assert!(matches!(GramMatrix::from_json_str("{"), Err(Error::Parse(_))));
        assert_eq!(
            GramMatrix::from_json_str(r#"{"rank":2,"gram":[[1,0],[1,1]]}"#).unwrap_err(),
            Error::NotSymmetric
        );
    }
}

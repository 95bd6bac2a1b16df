//! Root sublattices and their indecomposable components.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::linalg::{integer_span_basis, solve_rat, Rat};
use crate::exactlin::{enumerate_vectors, GramMatrix, DEFAULT_NODE_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    I1,
    A(usize),
    D(usize),
    E(usize),
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootType::I1 => write!(f, "I_1"),
            RootType::A(n) => write!(f, "A_{n}"),
            RootType::D(n) => write!(f, "D_{n}"),
            RootType::E(n) => write!(f, "E_{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootComponent {
    pub tag: RootType,
    /// Basis in host coordinates.
    pub basis: Vec<Vec<BigInt>>,
    pub gram: GramMatrix,
    /// Number of roots, counting both signs.
    pub roots: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RootDecomposition {
    pub components: Vec<RootComponent>,
}

impl RootDecomposition {
    pub fn tags(&self) -> Vec<RootType> {
        self.components.iter().map(|c| c.tag).collect()
    }
}

fn classify(rank: usize, roots: usize, det: &BigInt) -> Option<RootType> {
    let d = |x: u64| *det == BigInt::from(x);
    if rank == 1 && roots == 2 && d(1) {
        return Some(RootType::I1);
    }
    if roots == rank * (rank + 1) && d(rank as u64 + 1) {
        return Some(RootType::A(rank));
    }
    if rank >= 4 && roots == 2 * rank * (rank - 1) && d(4) {
        return Some(RootType::D(rank));
    }
    match (rank, roots) {
        (6, 72) if d(3) => Some(RootType::E(6)),
        (7, 126) if d(2) => Some(RootType::E(7)),
        (8, 240) if d(1) => Some(RootType::E(8)),
        _ => None,
    }
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Splits the sublattice generated by norm-1 and norm-2 vectors into
/// indecomposable pieces.
///
/// A norm-2 vector that is a sum of two orthogonal norm-1 vectors belongs
/// to the `I_1` pieces and is dropped; the remaining generators are grouped
/// by the graph of nonzero inner products.
pub fn root_sublattice(host: &GramMatrix) -> Result<RootDecomposition> {
    let short = enumerate_vectors(host, 2, DEFAULT_NODE_BUDGET)?;
    let units: Vec<Vec<i64>> = short.iter().filter(|v| v.norm == 1).map(|v| v.coords.0.clone()).collect();
    let mut split: HashSet<Vec<i64>> = HashSet::new();
    for (i, u) in units.iter().enumerate() {
        for w in &units[i + 1..] {
            if host.inner_i64(u, w).is_zero() {
                for s in [add(u, w), add(u, &neg(w))] {
                    split.insert(neg(&s));
                    split.insert(s);
                }
            }
        }
    }
    let gens: Vec<Vec<i64>> = short
        .iter()
        .filter(|v| v.norm == 1 || !split.contains(&v.coords.0))
        .map(|v| v.coords.0.clone())
        .collect();

    // connected components by nonzero inner product, in order of first member
    let k = gens.len();
    let mut label = vec![usize::MAX; k];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for start in 0..k {
        if label[start] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![start];
        label[start] = id;
        let mut members = Vec::new();
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..k {
                if label[y] == usize::MAX && !host.inner_i64(&gens[x], &gens[y]).is_zero() {
                    label[y] = id;
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        groups.push(members);
    }

    let mut components = Vec::with_capacity(groups.len());
    for members in groups {
        let vecs: Vec<Vec<BigInt>> = members
            .iter()
            .map(|&i| gens[i].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let basis = integer_span_basis(&vecs);
        let gram = host.sublattice(&basis)?;
        let roots = 2 * members.len();
        let det = gram.determinant();
        let tag = classify(basis.len(), roots, &det).ok_or_else(|| Error::UnclassifiableComponent {
            rank: basis.len(),
            det: det.to_string(),
            roots,
        })?;
        components.push(RootComponent { tag, basis, gram, roots });
    }
    Ok(RootDecomposition { components })
}

fn in_span(host: &GramMatrix, comp: &RootComponent, v: &[BigInt]) -> bool {
    let k = comp.basis.len();
    let m: Vec<Vec<Rat>> = (0..k)
        .map(|i| (0..k).map(|j| Rat::from_integer(comp.gram.get(i, j).clone())).collect())
        .collect();
    let rhs: Vec<Rat> = comp.basis.iter().map(|b| Rat::from_integer(host.inner(b, v))).collect();
    let Ok(c) = solve_rat(&m, &rhs) else {
        return false;
    };
    if c.iter().any(|x| !x.is_integer()) {
        return false;
    }
    let mut back = vec![BigInt::zero(); v.len()];
    for (ci, b) in c.iter().zip(&comp.basis) {
        let ci = ci.to_integer();
        for (x, y) in back.iter_mut().zip(b) {
            *x += &ci * y;
        }
    }
    back.as_slice() == v
}

/// The component whose lattice contains every vector of `s`.
pub fn component_containing<'a>(
    host: &GramMatrix,
    decomp: &'a RootDecomposition,
    s: &[Vec<BigInt>],
) -> Result<&'a RootComponent> {
    decomp
        .components
        .iter()
        .find(|c| s.iter().all(|v| in_span(host, c, v)))
        .ok_or(Error::NotInRootSublattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_glue, named_lattice, parse_glue, root_lattice, RootKind};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn decomposition_examples() {
        let g = named_lattice("iso3_senary").unwrap();
        let d = root_sublattice(&g).unwrap();
        assert_eq!(d.tags(), vec![RootType::I1, RootType::I1, RootType::A(3)]);

        let g = build_glue(&parse_glue("A2 21[1 1/3]").unwrap()).unwrap();
        assert_eq!(root_sublattice(g.gram()).unwrap().tags(), vec![RootType::A(2)]);

        let g = GramMatrix::diagonal(&[3, 5]).unwrap();
        assert!(root_sublattice(&g).unwrap().components.is_empty());

        let e8 = root_lattice(RootKind::E, 8).unwrap();
        let d = root_sublattice(e8.gram()).unwrap();
        assert_eq!(d.tags(), vec![RootType::E(8)]);
        assert_eq!(d.components[0].roots, 240);

        let d7 = root_lattice(RootKind::D, 7).unwrap();
        assert_eq!(root_sublattice(d7.gram()).unwrap().tags(), vec![RootType::D(7)]);
    }

    #[test]
    fn containing_component() {
        let g = named_lattice("iso3_senary").unwrap();
        let d = root_sublattice(&g).unwrap();
        let a3_roots = vec![big(&[0, 0, 1, 0, 0, 0]), big(&[0, 0, 0, 1, 1, 0])];
        assert_eq!(component_containing(&g, &d, &a3_roots).unwrap().tag, RootType::A(3));
        let outside = vec![big(&[0, 0, 0, 0, 0, 1])];
        assert_eq!(component_containing(&g, &d, &outside).unwrap_err(), Error::NotInRootSublattice);
    }
}

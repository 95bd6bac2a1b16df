//! Backtracking search for integral representations.
//!
//! Candidate images for every target column are the host vectors of the
//! right norm. After each placement, the candidate lists of all unplaced
//! columns are filtered by the required inner product, and the next column
//! is the one with the fewest remaining candidates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactlin::{for_each_short_vector, GramMatrix, Representation, DEFAULT_NODE_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepOutcome {
    Found(Representation),
    NotRepresented,
    Unknown { budget: u64 },
}

impl RepOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, RepOutcome::Found(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            RepOutcome::Found(_) => "found",
            RepOutcome::NotRepresented => "not-represented",
            RepOutcome::Unknown { .. } => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: RepOutcome,
    pub nodes: u64,
}

/// All host vectors of one norm, both signs, stored flat.
struct Shell {
    coords: Vec<i64>,
    gv: Vec<i64>,
    canonical: Vec<bool>,
}

impl Shell {
    fn len(&self) -> usize {
        self.canonical.len()
    }
}

struct HostIndex {
    n: usize,
    shells: BTreeMap<u64, Shell>,
}

impl HostIndex {
    fn build(host: &GramMatrix, norms: &[u64], budget: u64) -> Result<Self> {
        let n = host.rank();
        let max = norms.iter().copied().max().unwrap_or(0);
        let mut raw: BTreeMap<u64, Vec<Vec<i64>>> = norms.iter().map(|&d| (d, Vec::new())).collect();
        for_each_short_vector(host, max, budget, |x, norm| {
            if let Some(list) = raw.get_mut(&norm) {
                list.push(x.to_vec());
            }
        })?;
        let rows = host.rows();
        let mut shells = BTreeMap::new();
        for (norm, mut list) in raw {
            for v in list.iter_mut() {
                let first = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
                if first < 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
            }
            list.sort();
            let mut shell = Shell {
                coords: Vec::with_capacity(2 * n * list.len()),
                gv: Vec::with_capacity(2 * n * list.len()),
                canonical: Vec::with_capacity(2 * list.len()),
            };
            for v in &list {
                for sign in [1i64, -1] {
                    shell.coords.extend(v.iter().map(|&x| sign * x));
                    for row in &rows {
                        let s: BigInt = row.iter().zip(v).map(|(g, &x)| g * BigInt::from(sign * x)).sum();
                        shell.gv.push(s.to_i64().ok_or(Error::Overflow)?);
                    }
                    shell.canonical.push(sign == 1);
                }
            }
            shells.insert(norm, shell);
        }
        Ok(HostIndex { n, shells })
    }

    fn coords(&self, norm: u64, idx: u32) -> &[i64] {
        let i = idx as usize * self.n;
        &self.shells[&norm].coords[i..i + self.n]
    }

    fn gv(&self, norm: u64, idx: u32) -> &[i64] {
        let i = idx as usize * self.n;
        &self.shells[&norm].gv[i..i + self.n]
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

struct Search<'a> {
    index: &'a HostIndex,
    norms: Vec<u64>,
    target: Vec<Vec<i128>>,
    budget: u64,
    nodes: u64,
    placed: Vec<Option<u32>>,
}

struct OutOfBudget;

impl Search<'_> {
    fn pick(&self, domains: &[Vec<u32>]) -> Option<usize> {
        (0..self.norms.len())
            .filter(|&c| self.placed[c].is_none())
            .min_by(|&a, &b| {
                domains[a]
                    .len()
                    .cmp(&domains[b].len())
                    .then(self.norms[b].cmp(&self.norms[a]))
                    .then(a.cmp(&b))
            })
    }

    fn run(&mut self, domains: Vec<Vec<u32>>, first: bool) -> Result<bool, OutOfBudget> {
        let Some(col) = self.pick(&domains) else {
            return Ok(true);
        };
        let norm = self.norms[col];
        let canonical = &self.index.shells[&norm].canonical;
        for &v in &domains[col] {
            if first && !canonical[v as usize] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(OutOfBudget);
            }
            let gv = self.index.gv(norm, v);
            let mut next: Vec<Vec<u32>> = vec![Vec::new(); domains.len()];
            let mut dead = false;
            for k in 0..domains.len() {
                if k == col || self.placed[k].is_some() {
                    continue;
                }
                let want = self.target[col][k];
                let nk = self.norms[k];
                next[k] = domains[k]
                    .iter()
                    .copied()
                    .filter(|&w| dot(gv, self.index.coords(nk, w)) == want)
                    .collect();
                if next[k].is_empty() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.placed[col] = Some(v);
            if self.run(next, false)? {
                return Ok(true);
            }
            self.placed[col] = None;
        }
        Ok(false)
    }
}

/// Decides `target → host` with the default node budget.
pub fn find_representation(target: &GramMatrix, host: &GramMatrix) -> Result<RepOutcome> {
    Ok(find_representation_with(target, host, DEFAULT_NODE_BUDGET)?.outcome)
}

/// Decides `target → host`. The budget caps both the host enumeration and
/// the placement tree; running out yields `Unknown`.
pub fn find_representation_with(target: &GramMatrix, host: &GramMatrix, budget: u64) -> Result<SearchResult> {
    if target.rank() > host.rank() {
        return Ok(SearchResult {
            outcome: RepOutcome::NotRepresented,
            nodes: 0,
        });
    }
    let m = target.rank();
    let norms: Vec<u64> = target
        .diag()
        .iter()
        .map(|d| d.to_u64().ok_or(Error::Overflow))
        .collect::<Result<_>>()?;
    let index = match HostIndex::build(host, &norms, budget) {
        Ok(ix) => ix,
        Err(Error::BudgetExceeded { budget }) => {
            return Ok(SearchResult {
                outcome: RepOutcome::Unknown { budget },
                nodes: budget,
            })
        }
        Err(e) => return Err(e),
    };
    let tgt: Vec<Vec<i128>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| target.get(i, j).to_i128().ok_or(Error::Overflow))
                .collect()
        })
        .collect::<Result<_>>()?;
    let domains: Vec<Vec<u32>> = norms
        .iter()
        .map(|d| (0..index.shells[d].len() as u32).collect())
        .collect();
    let mut search = Search {
        index: &index,
        norms: norms.clone(),
        target: tgt,
        budget,
        nodes: 0,
        placed: vec![None; m],
    };
    let outcome = match search.run(domains, true) {
        Err(OutOfBudget) => RepOutcome::Unknown { budget },
        Ok(false) => RepOutcome::NotRepresented,
        Ok(true) => {
            let columns = (0..m)
                .map(|c| {
                    let idx = search.placed[c].expect("all columns placed");
                    index.coords(norms[c], idx).iter().map(|&x| BigInt::from(x)).collect()
                })
                .collect();
            RepOutcome::Found(Representation::new(host, target, columns)?)
        }
    };
    Ok(SearchResult {
        outcome,
        nodes: search.nodes,
    })
}

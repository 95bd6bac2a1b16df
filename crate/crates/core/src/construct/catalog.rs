use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::glue::{build_glue, parse_glue, RootKind};
use super::roots::{glue_vector, root_lattice};
use super::EmbeddedLattice;
use crate::error::{Error, Result};
use crate::exactlin::linalg::{rat, rat_frac, Rat};
use crate::exactlin::{orthogonal_sum, GramMatrix};

pub const CATALOG: [&str; 5] = [
    "iso1_ternary",
    "iso2_quinary",
    "iso2_quinary_alt",
    "iso3_senary",
    "remark_L29",
];

fn glued(text: &str) -> Result<GramMatrix> {
    Ok(build_glue(&parse_glue(text)?)?.gram().clone())
}

pub fn named_lattice(name: &str) -> Result<GramMatrix> {
    match name {
        "iso1_ternary" => GramMatrix::diagonal(&[2, 2, 5]),
        "iso2_quinary" => Ok(orthogonal_sum(&[
            &GramMatrix::diagonal(&[1, 2])?,
            &glued("A2 21[1 1/3]")?,
        ])),
        "iso2_quinary_alt" => Ok(orthogonal_sum(&[
            &GramMatrix::identity(1),
            &glued("A3")?,
            &GramMatrix::diagonal(&[3])?,
        ])),
        "iso3_senary" => Ok(orthogonal_sum(&[
            &GramMatrix::identity(2),
            &glued("A3")?,
            &GramMatrix::diagonal(&[3])?,
        ])),
        "remark_L29" => Ok(remark_l29()?.0.gram().clone()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// `A_27 + Z([3] + x/28) + Z([5] + y/28)` where `x, y` span a binary
/// lattice with Gram `28·[[9, -13], [-13, 25]]`.
///
/// `x` and `y` live in two extra coordinates of weights 252 and 1568/9,
/// with `x = (1, 0)` and `y = (-13/9, 1)`. The glue vectors use the block
/// layout with negative entries at the end; if that ever failed to be
/// integral, the negative block of `[5]` is rotated until it is. The second
/// return value is the rotation used.
pub fn remark_l29() -> Result<(EmbeddedLattice, usize)> {
    let a27 = root_lattice(RootKind::A, 27)?;
    let (g3, _) = glue_vector(RootKind::A, 27, 3)?;
    let (g5, _) = glue_vector(RootKind::A, 27, 5)?;
    let mut weights = vec![Rat::one(); 28];
    weights.push(rat(252));
    weights.push(rat_frac(1568, 9));
    let pad = |v: &[Rat], tail: [Rat; 2]| {
        let mut w = v.to_vec();
        w.extend(tail);
        w
    };
    let roots: Vec<Vec<Rat>> = a27.basis().iter().map(|b| pad(b, [Rat::zero(), Rat::zero()])).collect();
    let x = [rat_frac(1, 28), Rat::zero()];
    let y = [Rat::new(BigInt::from(-13), BigInt::from(9 * 28)), rat_frac(1, 28)];
    let mut last_err = None;
    for shift in 0..28 {
        let mut g5s = g5.clone();
        g5s.rotate_left(shift);
        let mut basis = roots.clone();
        basis.push(pad(&g3, x.clone()));
        basis.push(pad(&g5s, y.clone()));
        match EmbeddedLattice::new(weights.clone(), basis) {
            Ok(l) => return Ok((l, shift)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one alignment tried"))
}

/// The lattice `D_{8t+4}[1]` and the vectors `e_i - e_{i+1}` (`i ≤ 8t+2`)
/// together with `(e_1 + ⋯ + e_{6t+2} - e_{6t+3} - ⋯ - e_{8t+4})/2`.
pub fn d12_remark_basis(t: usize) -> Result<(EmbeddedLattice, Vec<Vec<Rat>>)> {
    if t == 0 {
        return Err(Error::InvalidParameters("t must be positive".into()));
    }
    let n = 8 * t + 4;
    let host = build_glue(&parse_glue(&format!("D{n}[1]"))?)?;
    let mut vs = Vec::with_capacity(8 * t + 3);
    for i in 0..8 * t + 2 {
        let mut v = vec![Rat::zero(); n];
        v[i] = rat(1);
        v[i + 1] = rat(-1);
        vs.push(v);
    }
    vs.push(
        (0..n)
            .map(|i| if i < 6 * t + 2 { rat_frac(1, 2) } else { rat_frac(-1, 2) })
            .collect(),
    );
    Ok((host, vs))
}

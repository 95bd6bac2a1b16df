//! Single-generator glue notation, e.g. `A2 21[1 1/3]` or `D12[1]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::roots::{glue_vector, root_lattice};
use super::EmbeddedLattice;
use crate::error::{Error, Result};
use crate::exactlin::linalg::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    A,
    D,
    E,
}

impl RootKind {
    pub fn letter(self) -> char {
        match self {
            RootKind::A => 'A',
            RootKind::D => 'D',
            RootKind::E => 'E',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    Root { kind: RootKind, rank: usize },
    /// `⟨a⟩`, spanned by one vector `z` with `Q(z) = a`.
    Scalar(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlueToken {
    Index(u64),
    /// `num/den` times the generator of a scalar component.
    Fraction { num: i64, den: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueSpec {
    pub components: Vec<Component>,
    pub tokens: Vec<GlueToken>,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Root { kind, rank } => write!(f, "{}{}", kind.letter(), rank),
            Component::Scalar(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Display for GlueToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlueToken::Index(i) => write!(f, "{i}"),
            GlueToken::Fraction { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Display for GlueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        let toks: Vec<String> = self.tokens.iter().map(|t| t.to_string()).collect();
        write!(f, "{}[{}]", comps.join(" "), toks.join(" "))
    }
}

impl FromStr for GlueSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_glue(s)
    }
}

fn parse_component(tok: &str) -> Result<Component> {
    let err = || Error::Parse(format!("bad component {tok:?}"));
    let mut chars = tok.chars();
    let first = chars.next().ok_or_else(err)?;
    let kind = match first {
        'A' => Some(RootKind::A),
        'D' => Some(RootKind::D),
        'E' => Some(RootKind::E),
        _ => None,
    };
    match kind {
        Some(kind) => {
            let rank: usize = chars.as_str().parse().map_err(|_| err())?;
            let ok = match kind {
                RootKind::A => rank >= 1,
                RootKind::D => rank >= 4,
                RootKind::E => (6..=8).contains(&rank),
            };
            if !ok {
                return Err(Error::UnsupportedRank { kind: kind.letter(), rank });
            }
            Ok(Component::Root { kind, rank })
        }
        None => {
            let a: u64 = tok.parse().map_err(|_| err())?;
            if a == 0 {
                return Err(err());
            }
            Ok(Component::Scalar(a))
        }
    }
}

fn parse_token(tok: &str, comp: &Component) -> Result<GlueToken> {
    let err = || Error::Parse(format!("bad glue token {tok:?} for {comp}"));
    match comp {
        Component::Root { kind, rank } => {
            let i: u64 = tok.parse().map_err(|_| err())?;
            let max = match kind {
                RootKind::A => *rank as u64,
                RootKind::D => 3,
                RootKind::E => 0,
            };
            if i > max {
                return Err(Error::InvalidGlueIndex {
                    kind: kind.letter(),
                    rank: *rank,
                    index: tok.to_string(),
                });
            }
            Ok(GlueToken::Index(i))
        }
        Component::Scalar(_) => match tok.split_once('/') {
            Some((n, d)) => {
                let num: i64 = n.parse().map_err(|_| err())?;
                let den: u64 = d.parse().map_err(|_| err())?;
                if den == 0 {
                    return Err(err());
                }
                Ok(GlueToken::Fraction { num, den })
            }
            None => {
                let num: i64 = tok.parse().map_err(|_| err())?;
                Ok(GlueToken::Fraction { num, den: 1 })
            }
        },
    }
}

/// Parses `comp+ "[" tok+ "]"`. Without a bracket every token is zero, so
/// the result is the plain orthogonal sum.
pub fn parse_glue(text: &str) -> Result<GlueSpec> {
    let text = text.trim();
    let (head, tail) = match text.find('[') {
        Some(pos) => {
            let rest = &text[pos + 1..];
            let close = rest
                .find(']')
                .ok_or_else(|| Error::Parse("missing closing bracket".into()))?;
            if !rest[close + 1..].trim().is_empty() {
                return Err(Error::Parse("trailing text after glue".into()));
            }
            (&text[..pos], Some(&rest[..close]))
        }
        None => (text, None),
    };
    let components = head
        .split_whitespace()
        .map(parse_component)
        .collect::<Result<Vec<_>>>()?;
    if components.is_empty() {
        return Err(Error::Parse("no components".into()));
    }
    let tokens = match tail {
        Some(t) => {
            let raw: Vec<&str> = t.split_whitespace().collect();
            if raw.len() != components.len() {
                return Err(Error::Parse(format!(
                    "{} glue tokens for {} components",
                    raw.len(),
                    components.len()
                )));
            }
            raw.iter()
                .zip(&components)
                .map(|(t, c)| parse_token(t, c))
                .collect::<Result<Vec<_>>>()?
        }
        None => components
            .iter()
            .map(|c| match c {
                Component::Root { .. } => GlueToken::Index(0),
                Component::Scalar(_) => GlueToken::Fraction { num: 0, den: 1 },
            })
            .collect(),
    };
    Ok(GlueSpec { components, tokens })
}

/// Builds `(L_1 ⊥ ⋯ ⊥ L_t) + Z(x_1 + ⋯ + x_t)`.
///
/// The basis is the concatenated component bases, with the last basis
/// vector whose coefficient in the glue generator is `±1/d` (where `d` is
/// the order of the generator) replaced by the generator. If there is no
/// such vector a reduced basis of all generators is used instead.
pub fn build_glue(spec: &GlueSpec) -> Result<EmbeddedLattice> {
    if spec.tokens.len() != spec.components.len() {
        return Err(Error::Parse("token count differs from component count".into()));
    }
    let mut weights = Vec::new();
    let mut basis: Vec<Vec<Rat>> = Vec::new();
    let mut glue = Vec::new();
    let mut coef = Vec::new();
    for (comp, tok) in spec.components.iter().zip(&spec.tokens) {
        let offset = weights.len();
        let (w, b, g, c): (Vec<Rat>, Vec<Vec<Rat>>, Vec<Rat>, Vec<Rat>) = match (comp, tok) {
            (Component::Root { kind, rank }, GlueToken::Index(i)) => {
                let l = root_lattice(*kind, *rank)?;
                let (g, _) = glue_vector(*kind, *rank, *i)?;
                let c = l.coordinates(&g)?;
                (l.weights().to_vec(), l.basis().to_vec(), g, c)
            }
            (Component::Scalar(a), GlueToken::Fraction { num, den }) => {
                let f = Rat::new(BigInt::from(*num), BigInt::from(*den));
                (
                    vec![Rat::from_integer(BigInt::from(*a))],
                    vec![vec![Rat::one()]],
                    vec![f.clone()],
                    vec![f],
                )
            }
            _ => return Err(Error::Parse(format!("token {tok} does not fit component {comp}"))),
        };
        weights.extend(w);
        for v in b {
            let mut full = vec![Rat::zero(); offset];
            full.extend(v);
            basis.push(full);
        }
        glue.extend(g);
        coef.extend(c);
    }
    let total = weights.len();
    for v in basis.iter_mut() {
        v.resize(total, Rat::zero());
    }
    if glue.iter().all(|x| x.is_zero()) {
        return EmbeddedLattice::new(weights, basis);
    }
    let q = super::ambient_inner(&weights, &glue, &glue);
    if !q.is_integer() {
        return Err(Error::NonIntegralGlue(format!("{spec}: glue norm {q}")));
    }
    for (k, b) in basis.iter().enumerate() {
        let ip = super::ambient_inner(&weights, &glue, b);
        if !ip.is_integer() {
            return Err(Error::NonIntegralGlue(format!("{spec}: inner product {ip} with basis vector {k}")));
        }
    }
    let d = coef.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let target = Rat::new(BigInt::one(), d.clone());
    match coef.iter().rposition(|c| c.abs() == target) {
        Some(k) if !d.is_one() => {
            basis[k] = glue;
            EmbeddedLattice::new(weights, basis)
        }
        _ => {
            basis.push(glue);
            EmbeddedLattice::from_generators(weights, &basis)
        }
    }
}

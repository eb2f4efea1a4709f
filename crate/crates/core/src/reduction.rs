//! Tits indices, the subgroup `G′` obtained by deleting `Δ_r` from the Dynkin
//! diagram, and Rost multipliers of its simple factors.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::center::center;
use crate::error::{Error, Result};
use crate::lattice::IntegerMatrix;
use crate::roots::{classify_diagram, Family, RootSystem, SystemType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormKind {
    Inner,
    Outer(u8),
}

impl fmt::Display for FormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormKind::Inner => write!(f, "inner"),
            FormKind::Outer(d) => write!(f, "outer{d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsIndex {
    system_type: SystemType,
    circled: BTreeSet<usize>,
    form_kind: FormKind,
}

impl TitsIndex {
    pub fn new(
        system_type: SystemType,
        circled: BTreeSet<usize>,
        form_kind: FormKind,
    ) -> Result<Self> {
        let rank = system_type.rank();
        if let Some(&bad) = circled.iter().find(|&&i| i == 0 || i > rank) {
            return Err(Error::VertexOutOfRange { index: bad, rank });
        }
        if let FormKind::Outer(d) = form_kind {
            let ok = match d {
                2 => match system_type.family() {
                    Family::A => rank >= 2,
                    Family::D => true,
                    Family::E => rank == 6,
                    _ => false,
                },
                3 | 6 => system_type.family() == Family::D && rank == 4,
                _ => false,
            };
            if !ok {
                return Err(Error::Parse(format!(
                    "{system_type} admits no outer form of degree {d}"
                )));
            }
        }
        Ok(TitsIndex {
            system_type,
            circled,
            form_kind,
        })
    }

    pub fn system_type(&self) -> SystemType {
        self.system_type
    }

    pub fn circled(&self) -> &BTreeSet<usize> {
        &self.circled
    }

    pub fn form_kind(&self) -> FormKind {
        self.form_kind
    }

    pub fn is_inner(&self) -> bool {
        self.form_kind == FormKind::Inner
    }
}

impl fmt::Display for TitsIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.circled.iter().map(usize::to_string).collect();
        write!(
            f,
            "{} {} circled={}",
            self.system_type,
            self.form_kind,
            list.join(",")
        )
    }
}

/// Grammar: `<family><rank> [inner|outer2|outer3|outer6] circled=<comma-list>`.
/// The form kind defaults to inner; the list may be empty.
impl FromStr for TitsIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let system_type: SystemType = words
            .next()
            .ok_or_else(|| Error::Parse("empty index".to_string()))?
            .parse()?;
        let mut form_kind = None;
        let mut circled = None;
        for word in words {
            if let Some(list) = word.strip_prefix("circled=") {
                if circled.is_some() {
                    return Err(Error::Parse("circled= given twice".to_string()));
                }
                circled = Some(parse_list(list)?);
                continue;
            }
            let kind = match word {
                "inner" => FormKind::Inner,
                "outer2" => FormKind::Outer(2),
                "outer3" => FormKind::Outer(3),
                "outer6" => FormKind::Outer(6),
                _ => return Err(Error::Parse(format!("unexpected token '{word}'"))),
            };
            if form_kind.replace(kind).is_some() || circled.is_some() {
                return Err(Error::Parse(format!("misplaced token '{word}'")));
            }
        }
        TitsIndex::new(
            system_type,
            circled.unwrap_or_default(),
            form_kind.unwrap_or(FormKind::Inner),
        )
    }
}

fn parse_list(list: &str) -> Result<BTreeSet<usize>> {
    if list.is_empty() {
        return Ok(BTreeSet::new());
    }
    list.split(',')
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad vertex '{t}'")))
        })
        .collect()
}

/// `Δ_r` vertices that are not circled.
pub fn uncircled_delta_r(rs: &RootSystem, idx: &TitsIndex) -> Vec<usize> {
    rs.delta_r().difference(&idx.circled).copied().collect()
}

/// True when every vertex of `Δ_r` is circled.
pub fn check_condition(idx: &TitsIndex) -> bool {
    let rs = RootSystem::build(idx.system_type);
    uncircled_delta_r(&rs, idx).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub system_type: SystemType,
    /// Ambient vertex labels, ascending.
    pub vertices: Vec<usize>,
    /// Ambient vertex labels in the component's Bourbaki order.
    pub bourbaki_order: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPrimeDecomposition {
    pub components: Vec<Component>,
    pub multipliers: Vec<u64>,
    /// `center_restriction[g][c]`: exponents of center generator `g` on the
    /// vertices of component `c`, in ascending vertex order.
    pub center_restriction: Vec<Vec<Vec<u64>>>,
}

/// Decomposes the diagram with `Δ_r` removed and restricts the center to each piece.
pub fn g_prime(idx: &TitsIndex) -> Result<GPrimeDecomposition> {
    let rs = RootSystem::build(idx.system_type);
    g_prime_of(&rs, idx)
}

/// As [`g_prime`], over an already built root system.
pub fn g_prime_of(rs: &RootSystem, idx: &TitsIndex) -> Result<GPrimeDecomposition> {
    let uncircled = uncircled_delta_r(rs, idx);
    if !uncircled.is_empty() {
        return Err(Error::ConditionViolated { uncircled });
    }
    let delta_r = rs.delta_r();
    let remaining: Vec<usize> = (1..=rs.rank()).filter(|j| !delta_r.contains(j)).collect();
    let mut components = Vec::new();
    for vertices in connected_pieces(rs, &remaining) {
        let local: Vec<usize> = vertices.iter().map(|v| v - 1).collect();
        let sub: IntegerMatrix = rs.cartan().submatrix(&local);
        let (system_type, order) = classify_diagram(&sub)
            .ok_or_else(|| Error::InvalidCartan("component is not of finite type".to_string()))?;
        components.push(Component {
            system_type,
            bourbaki_order: order.iter().map(|&i| vertices[i]).collect(),
            vertices,
        });
    }
    let multipliers = components
        .iter()
        .map(|c| rost_multiplier(rs, c.bourbaki_order[0]))
        .collect::<Result<Vec<_>>>()?;
    let center_restriction = center(rs)?
        .zmaps
        .iter()
        .map(|z| {
            components
                .iter()
                .map(|c| c.vertices.iter().map(|&v| z.exponent(v)).collect())
                .collect()
        })
        .collect();
    Ok(GPrimeDecomposition {
        components,
        multipliers,
        center_restriction,
    })
}

/// Connected pieces of the induced subdiagram, each ascending, ordered by least vertex.
fn connected_pieces(rs: &RootSystem, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut pieces = Vec::new();
    for &start in vertices {
        if !seen.insert(start) {
            continue;
        }
        let mut piece = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in rs.neighbours(v) {
                if vertices.contains(&w) && seen.insert(w) {
                    piece.push(w);
                    stack.push(w);
                }
            }
        }
        piece.sort_unstable();
        pieces.push(piece);
    }
    pieces
}

/// Rost multiplier of the rank-one subgroup on `α_i`: `(α̌_i, α̌_i)` divided by
/// the minimal squared coroot length, i.e. `max |β|² / |α_i|²`.
///
/// A component of rank above one consists of roots of a single length when
/// it is of type A, so its first vertex determines the multiplier.
pub fn rost_multiplier(ambient: &RootSystem, i: usize) -> Result<u64> {
    ambient.check_vertex(i)?;
    let longest = ambient
        .roots()
        .iter()
        .map(|r| &r.squared_length)
        .max()
        .expect("nonempty root system");
    let ratio: BigRational = longest / ambient.simple_root_length(i);
    debug_assert!(ratio.is_integer());
    let m: BigInt = ratio.to_integer();
    Ok(m.to_u64().expect("multiplier is at most 3"))
}

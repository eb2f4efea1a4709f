//! The center of the simply connected group as `Λ̌/Λ̌_r`, with each generator
//! realized by an explicit cocharacter `t ↦ ∏ h_i(t^{c_i})` restricted to `μ_n`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{lattice_quotient, FiniteAbelianGroup, RationalVector};
use crate::roots::{Family, RootSystem};

/// A homomorphism `μ_n → T`, `ζ ↦ ∏ h_i(ζ^{c_i})`, with every `c_i` in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CocharacterMap {
    pub order: u64,
    pub exponents: Vec<u64>,
}

impl CocharacterMap {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// 1-based indices `i` with `c_i ≠ 0`.
    pub fn support(&self) -> BTreeSet<usize> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Exponent of `h_i` for a 1-based index.
    pub fn exponent(&self, i: usize) -> u64 {
        self.exponents[i - 1]
    }

    /// The `k`-th power of this map.
    pub fn pow(&self, k: u64) -> CocharacterMap {
        CocharacterMap {
            order: self.order,
            exponents: self
                .exponents
                .iter()
                .map(|&c| (c * k) % self.order)
                .collect(),
        }
    }
}

/// Renders as `h_2(-1) h_5(-1) h_7(-1)` for order 2 and `h_1(z) h_3(z^2)`
/// otherwise; the trivial map renders as `1`.
impl fmt::Display for CocharacterMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let arg = match (self.order, c) {
                    (2, _) => "-1".to_string(),
                    (_, 1) => "z".to_string(),
                    (_, c) => format!("z^{c}"),
                };
                format!("h_{}({arg})", i + 1)
            })
            .collect();
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join(" "))
        }
    }
}

/// The cocharacter `z_ω̌` for a coweight given in simple-coroot coordinates.
pub fn zmap(coweight: &RationalVector) -> CocharacterMap {
    let n = coweight.denominator_lcm();
    let exponents = coweight
        .coords()
        .iter()
        .map(|x| {
            let scaled = (x * BigRational::from_integer(n.clone())).to_integer();
            scaled.mod_floor(&n).to_u64().expect("exponent below order")
        })
        .collect();
    CocharacterMap {
        order: n.to_u64().expect("center exponents are small"),
        exponents,
    }
}

/// `Λ̌/Λ̌_r` with generator lifts and their cocharacters.
///
/// `group` is presented on the basis of fundamental coweights, so its
/// generators are integer combinations of the `ω̌_j`. `source_weights[k]` is
/// `Some(j)` when the `k`-th generator is the single coweight `ω̌_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterPresentation {
    pub group: FiniteAbelianGroup,
    pub zmaps: Vec<CocharacterMap>,
    pub source_weights: Vec<Option<usize>>,
}

impl CenterPresentation {
    pub fn order(&self) -> BigInt {
        self.group.order()
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.group
            .invariant_factors()
            .iter()
            .map(|d| d.to_u64().expect("small invariant factor"))
            .collect()
    }
}

/// Re-lifts the generators of a quotient presented on a fundamental-(co)weight
/// basis, preferring single basis vectors. `preferred` is tried first.
/// Tuples are searched lexicographically over `favoured` followed by the
/// remaining indices.
pub(crate) fn lift_by_fundamentals(
    group: &FiniteAbelianGroup,
    rank: usize,
    preferred: Option<Vec<usize>>,
    favoured: &BTreeSet<usize>,
) -> (FiniteAbelianGroup, Vec<Option<usize>>) {
    let k = group.invariant_factors().len();
    let unit = |j: usize| RationalVector::unit(rank, j - 1);
    let attempt = |indices: &[usize]| {
        group
            .with_generators(indices.iter().map(|&j| unit(j)).collect())
            .map(|g| (g, indices.iter().map(|&j| Some(j)).collect::<Vec<_>>()))
    };
    if let Some(found) = preferred.as_deref().and_then(attempt) {
        return found;
    }
    let order: Vec<usize> = favoured
        .iter()
        .copied()
        .chain((1..=rank).filter(|j| !favoured.contains(j)))
        .collect();
    let mut indices: Vec<usize> = Vec::with_capacity(k);
    if let Some(found) = search_tuples(&order, k, &mut indices, &attempt) {
        return found;
    }
    (group.clone(), vec![None; k])
}

fn search_tuples<T>(
    order: &[usize],
    k: usize,
    prefix: &mut Vec<usize>,
    attempt: &dyn Fn(&[usize]) -> Option<T>,
) -> Option<T> {
    if prefix.len() == k {
        return attempt(prefix);
    }
    for &j in order {
        if prefix.contains(&j) {
            continue;
        }
        prefix.push(j);
        let found = search_tuples(order, k, prefix, attempt);
        prefix.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn is_d_even(rs: &RootSystem) -> bool {
    let t = rs.system_type();
    t.family() == Family::D && t.rank().is_multiple_of(2)
}

/// The center of the simply connected group with root system `rs`.
///
/// Generators are lifted to minuscule fundamental coweights where possible,
/// lowest index first. For `D_ℓ` with `ℓ` even the generators are `ω̌_{ℓ-1}` and `ω̌_ℓ`,
/// ordered so that `z_0` carries `h_ℓ`.
pub fn center(rs: &RootSystem) -> Result<CenterPresentation> {
    let rank = rs.rank();
    let coweights = rs.fundamental_coweights();
    let quotient = lattice_quotient(&rs.cartan().transpose())?;
    let preferred = is_d_even(rs).then(|| {
        let l = rank;
        if zmap(&coweights[l - 2]).exponent(l) != 0 {
            vec![l - 1, l]
        } else {
            vec![l, l - 1]
        }
    });
    let (group, source_weights) = lift_by_fundamentals(&quotient, rank, preferred, &rs.delta_c());
    let zmaps = group
        .generators()
        .iter()
        .map(|g| zmap(&coweight_in_coroot_basis(coweights, g)))
        .collect();
    Ok(CenterPresentation {
        group,
        zmaps,
        source_weights,
    })
}

/// Converts a combination of fundamental coweights to coroot coordinates.
fn coweight_in_coroot_basis(
    coweights: &[RationalVector],
    combo: &RationalVector,
) -> RationalVector {
    let n = coweights.first().map_or(0, RationalVector::len);
    combo
        .coords()
        .iter()
        .zip(coweights)
        .filter(|(c, _)| !c.is_zero())
        .fold(RationalVector::zeros(n), |acc, (c, w)| acc.add(&w.scale(c)))
}

/// True when every vertex of `Δ_c` is circled.
pub fn vanish_criterion(rs: &RootSystem, circled: &BTreeSet<usize>) -> bool {
    rs.delta_c().is_subset(circled)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn e7_seventh_coweight() {
        let e7 = build("E7");
        let z = zmap(&e7.fundamental_coweights()[6]);
        assert_eq!(z.order, 2);
        assert_eq!(z.support(), set(&[2, 5, 7]));
        assert_eq!(z.to_string(), "h_2(-1) h_5(-1) h_7(-1)");
    }

    #[test]
    fn e6_first_coweight() {
        let z = zmap(&build("E6").fundamental_coweights()[0]);
        assert_eq!(z.order, 3);
        assert_eq!(z.exponents, vec![1, 0, 2, 0, 1, 2]);
        assert_eq!(z.to_string(), "h_1(z) h_3(z^2) h_5(z) h_6(z^2)");
    }

    #[test]
    fn a2_and_c5() {
        assert_eq!(
            zmap(&build("A2").fundamental_coweights()[0]).exponents,
            vec![2, 1]
        );
        let z = zmap(&build("C5").fundamental_coweights()[4]);
        assert_eq!((z.order, z.support()), (2, set(&[1, 3, 5])));
    }

    #[test]
    fn trivial_map() {
        let z = zmap(&RationalVector::from_integers([1, 2]));
        assert_eq!(z.order, 1);
        assert!(z.is_trivial());
        assert_eq!(z.to_string(), "1");
    }

    #[test]
    fn trivial_centers() {
        for s in ["G2", "F4", "E8"] {
            let c = center(&build(s)).unwrap();
            assert!(c.group.is_trivial());
            assert!(c.zmaps.is_empty());
        }
    }

    #[test]
    fn d_even_center() {
        for l in [4usize, 6, 8, 10, 12] {
            let c = center(&build(&format!("D{l}"))).unwrap();
            assert_eq!(c.invariant_factors(), vec![2, 2]);
            let odd: Vec<usize> = (1..=l - 3).step_by(2).collect();
            let mut s0 = set(&odd);
            s0.insert(l);
            let mut s1 = set(&odd);
            s1.insert(l - 1);
            assert_eq!(c.zmaps[0].support(), s0, "D{l}");
            assert_eq!(c.zmaps[1].support(), s1, "D{l}");
            let first = if l % 4 == 0 { l - 1 } else { l };
            assert_eq!(c.source_weights[0], Some(first));
        }
    }

    #[test]
    fn cyclic_generators() {
        assert_eq!(center(&build("E7")).unwrap().source_weights, vec![Some(7)]);
        assert_eq!(center(&build("E6")).unwrap().source_weights, vec![Some(1)]);
        assert_eq!(center(&build("A2")).unwrap().source_weights, vec![Some(1)]);
        assert_eq!(center(&build("C6")).unwrap().source_weights, vec![Some(6)]);
        assert_eq!(center(&build("D5")).unwrap().source_weights, vec![Some(4)]);
        assert_eq!(center(&build("B6")).unwrap().source_weights, vec![Some(1)]);
        let d5 = center(&build("D5")).unwrap();
        assert_eq!(d5.invariant_factors(), vec![4]);
        assert_eq!(d5.zmaps[0].order, 4);
    }

    #[test]
    fn vanish_examples() {
        let b3 = build("B3");
        assert!(vanish_criterion(&b3, &set(&[1])));
        assert!(!vanish_criterion(&b3, &set(&[3])));
        let c4 = build("C4");
        // Δ_c(C4) = {4}
        assert!(vanish_criterion(&c4, &set(&[2, 4])));
        assert!(!vanish_criterion(&c4, &set(&[1, 2, 3])));
    }

    #[test]
    fn powers() {
        let z = zmap(&build("A3").fundamental_coweights()[0]);
        assert_eq!(z.order, 4);
        assert_eq!(z.pow(2).exponents, vec![2, 0, 2]);
        assert!(z.pow(4).is_trivial());
    }
}

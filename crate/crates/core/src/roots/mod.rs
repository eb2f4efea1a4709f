//! Irreducible root systems of types A–G in Bourbaki numbering.
//!
//! Roots are generated from the Cartan matrix alone, by induction on height
//! using root strings; no Euclidean model is involved. Vertex indices exposed
//! by this module are 1-based, matching the Bourbaki labels.

mod cartan;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

pub use cartan::{cartan_matrix, classify_diagram};

use crate::error::{Error, Result};
use crate::lattice::{solve_rational, IntegerMatrix, RationalVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    fn accepts_rank(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }

    /// Family of the dual root system.
    pub fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemType {
    family: Family,
    rank: usize,
}

impl SystemType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if family.accepts_rank(rank) {
            Ok(SystemType { family, rank })
        } else {
            Err(Error::InvalidRank { family, rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    pub fn coxeter_number(self) -> usize {
        let l = self.rank;
        match (self.family, l) {
            (Family::A, _) => l + 1,
            (Family::B | Family::C, _) => 2 * l,
            (Family::D, _) => 2 * l - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            (Family::E, _) => 30,
            (Family::F, _) => 12,
            (Family::G, _) => 6,
        }
    }

    /// Every valid type with rank at most `max_rank`, families in order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<SystemType> {
        Family::ALL
            .iter()
            .flat_map(|&f| (1..=max_rank).filter_map(move |r| SystemType::new(f, r).ok()))
            .collect()
    }
}

impl fmt::Display for SystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl Serialize for SystemType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for SystemType {
    type Err = Error;

    /// Accepts `<family><rank>` such as `E7` or `D12`.
    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("unknown type '{s}'"))),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad rank in type '{s}'")));
        }
        let rank = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in type '{s}'")))?;
        SystemType::new(family, rank)
    }
}

/// A root in simple-root coordinates. Root coefficients are bounded by 6 in
/// every irreducible system, so machine integers suffice here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i64>,
    /// Long roots have squared length 2.
    pub squared_length: BigRational,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }
}

#[derive(Debug)]
pub struct RootSystem {
    system_type: SystemType,
    cartan: IntegerMatrix,
    simple_lengths: Vec<BigRational>,
    roots: Vec<Root>,
    fundamental_weights: Vec<RationalVector>,
    dual: OnceLock<Arc<RootSystem>>,
}

impl RootSystem {
    pub fn build(system_type: SystemType) -> RootSystem {
        Self::from_cartan(system_type, cartan_matrix(system_type))
            .expect("standard Cartan matrices are valid")
    }

    /// Builds a root system from an explicit Cartan matrix labelled as
    /// `system_type`. The matrix must be a connected, symmetrizable
    /// generalized Cartan matrix of finite type with the given rank.
    pub fn from_cartan(system_type: SystemType, cartan: IntegerMatrix) -> Result<RootSystem> {
        let n = system_type.rank();
        if cartan.rows() != n || cartan.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: cartan.rows(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let a = cartan::entry(&cartan, i, j);
                let ok = if i == j {
                    a == 2
                } else {
                    (-3..=0).contains(&a) && (a == 0) == (cartan::entry(&cartan, j, i) == 0)
                };
                if !ok {
                    return Err(Error::InvalidCartan(format!("bad entry at ({i}, {j})")));
                }
            }
        }
        let simple_lengths = cartan::simple_root_lengths(&cartan).ok_or_else(|| {
            Error::InvalidCartan("not symmetrizable or not connected".to_string())
        })?;
        let positive = positive_roots(&cartan)?;
        let gram = gram_matrix(&cartan, &simple_lengths);
        let mut roots = Vec::with_capacity(2 * positive.len());
        for coords in &positive {
            let squared_length = quadratic_form(&gram, coords);
            roots.push(Root {
                coords: coords.clone(),
                squared_length,
            });
        }
        for coords in &positive {
            let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
            let squared_length = quadratic_form(&gram, &neg);
            roots.push(Root {
                coords: neg,
                squared_length,
            });
        }
        let fundamental_weights = (0..n)
            .map(|j| solve_rational(&cartan, &RationalVector::unit(n, j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RootSystem {
            system_type,
            cartan,
            simple_lengths,
            roots,
            fundamental_weights,
            dual: OnceLock::new(),
        })
    }

    pub fn system_type(&self) -> SystemType {
        self.system_type
    }

    pub fn rank(&self) -> usize {
        self.system_type.rank()
    }

    pub fn cartan(&self) -> &IntegerMatrix {
        &self.cartan
    }

    /// All roots; the positive ones come first, in order of height.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn highest_root(&self) -> &Root {
        self.roots[..self.roots.len() / 2]
            .last()
            .expect("nonempty root system")
    }

    /// Squared length of the simple root `α_i` (1-based).
    pub fn simple_root_length(&self, i: usize) -> &BigRational {
        &self.simple_lengths[i - 1]
    }

    /// Fundamental weights `ω_1..ω_ℓ` in simple-root coordinates; index 0 holds `ω_1`.
    pub fn fundamental_weights(&self) -> &[RationalVector] {
        &self.fundamental_weights
    }

    /// `ω_j` for a 1-based index.
    pub fn fundamental_weight(&self, j: usize) -> Result<&RationalVector> {
        self.check_vertex(j)?;
        Ok(&self.fundamental_weights[j - 1])
    }

    /// Fundamental coweights `ω̌_j` in simple-coroot coordinates, i.e. the
    /// fundamental weights of the dual system.
    pub fn fundamental_coweights(&self) -> &[RationalVector] {
        &self.dual_ref().fundamental_weights
    }

    /// The dual root system, with simple roots `α̌_i` keeping the labels of `α_i`.
    /// Built on first use; concurrent first calls agree on one value.
    pub fn dual(&self) -> Arc<RootSystem> {
        self.dual_arc().clone()
    }

    fn dual_ref(&self) -> &RootSystem {
        self.dual_arc()
    }

    fn dual_arc(&self) -> &Arc<RootSystem> {
        self.dual.get_or_init(|| {
            let t = SystemType::new(self.system_type.family().dual(), self.rank())
                .expect("dual rank is valid");
            Arc::new(
                RootSystem::from_cartan(t, self.cartan.transpose())
                    .expect("transpose of a Cartan matrix is a Cartan matrix"),
            )
        })
    }

    /// Coordinates of `2α/(α,α)` in the basis of simple coroots.
    pub fn coroot(&self, root: &Root) -> Vec<i64> {
        root.coords
            .iter()
            .zip(&self.simple_lengths)
            .map(|(&c, l)| {
                let x = BigRational::from_integer(c.into()) * l / &root.squared_length;
                debug_assert!(x.is_integer());
                i64::try_from(x.to_integer()).expect("small coefficient")
            })
            .collect()
    }

    /// `<λ, α̌_i>` for a weight in simple-root coordinates.
    pub fn pair_with_coroot(&self, weight: &RationalVector, i: usize) -> BigRational {
        self.cartan
            .row(i - 1)
            .iter()
            .zip(weight.coords())
            .map(|(a, x)| BigRational::from_integer(a.clone()) * x)
            .sum()
    }

    pub fn weight_in_root_lattice(&self, j: usize) -> Result<bool> {
        Ok(self.fundamental_weight(j)?.is_integral())
    }

    /// `{ j : ω_j ∈ Λ_r }`.
    pub fn delta_r(&self) -> BTreeSet<usize> {
        (1..=self.rank())
            .filter(|&j| self.fundamental_weights[j - 1].is_integral())
            .collect()
    }

    /// `{ j : ω̌_j is minuscule for the dual system }`: the coefficient of
    /// `α_j` in every root lies in `{-1, 0, 1}`.
    pub fn delta_c(&self) -> BTreeSet<usize> {
        (1..=self.rank())
            .filter(|&j| self.roots.iter().all(|r| r.coords[j - 1].abs() <= 1))
            .collect()
    }

    /// Dynkin-diagram neighbours of vertex `i` (1-based).
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        (1..=self.rank())
            .filter(|&j| j != i && !self.cartan[(i - 1, j - 1)].is_zero())
            .collect()
    }

    pub fn check_vertex(&self, j: usize) -> Result<()> {
        if (1..=self.rank()).contains(&j) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: j,
                rank: self.rank(),
            })
        }
    }
}

fn gram_matrix(cartan: &IntegerMatrix, lengths: &[BigRational]) -> Vec<Vec<BigRational>> {
    let n = cartan.rows();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    BigRational::from_integer(cartan[(i, j)].clone()) * &lengths[i]
                        / BigRational::from_integer(2.into())
                })
                .collect()
        })
        .collect()
}

fn quadratic_form(gram: &[Vec<BigRational>], v: &[i64]) -> BigRational {
    let mut s = BigRational::zero();
    for (i, &a) in v.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in v.iter().enumerate() {
            if b != 0 {
                s += &gram[i][j] * BigRational::from_integer(BigInt::from(a * b));
            }
        }
    }
    s
}

/// Positive roots by height. For a positive root `β` and simple root `α_i`,
/// the `α_i`-string through `β` runs from `β - pα_i` to `β + qα_i` with
/// `p - q = <β, α̌_i>`; `β + α_i` is a root iff `q > 0`.
fn positive_roots(cartan: &IntegerMatrix) -> Result<Vec<Vec<i64>>> {
    let n = cartan.rows();
    let a = |i: usize, j: usize| cartan::entry(cartan, i, j);
    let mut known: HashSet<Vec<i64>> = HashSet::new();
    let mut all: Vec<Vec<i64>> = Vec::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    known.extend(layer.iter().cloned());
    // no finite-type root exceeds this height
    let height_cap = 2 * n * n + 8;
    let mut height = 1;
    while !layer.is_empty() {
        if height > height_cap {
            return Err(Error::InvalidCartan(
                "root system is not finite".to_string(),
            ));
        }
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| beta[j] * a(i, j)).sum();
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        all.append(&mut layer);
        next.sort();
        layer = next;
        height += 1;
    }
    Ok(all)
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
    fn parse_types() {
        assert_eq!("E7".parse::<SystemType>().unwrap().rank(), 7);
        assert!("E9".parse::<SystemType>().is_err());
        assert!("B1".parse::<SystemType>().is_err());
        assert!("e7".parse::<SystemType>().is_err());
        assert!("E".parse::<SystemType>().is_err());
        assert!("E+7".parse::<SystemType>().is_err());
        assert!("".parse::<SystemType>().is_err());
    }

    #[test]
    fn root_counts() {
        assert_eq!(build("E7").roots().len(), 126);
        assert_eq!(build("E8").roots().len(), 240);
        assert_eq!(build("E6").roots().len(), 72);
        assert_eq!(build("F4").roots().len(), 48);
        assert_eq!(build("G2").roots().len(), 12);
        assert_eq!(build("D5").roots().len(), 2 * 5 * 4);
        assert_eq!(build("C5").roots().len(), 2 * 25);
        assert_eq!(build("B4").roots().len(), 2 * 16);
    }

    #[test]
    fn a1_weight() {
        let a1 = build("A1");
        assert_eq!(a1.roots().len(), 2);
        assert_eq!(
            a1.fundamental_weights(),
            &[RationalVector::from_fractions(&[(1, 2)])]
        );
    }

    #[test]
    fn e6_first_weight() {
        let e6 = build("E6");
        assert_eq!(
            e6.fundamental_weight(1).unwrap(),
            &RationalVector::from_fractions(&[(4, 3), (1, 1), (5, 3), (2, 1), (4, 3), (2, 3)])
        );
    }

    #[test]
    fn d_even_fork_weights() {
        for l in [4i64, 6, 8, 10] {
            let d = build(&format!("D{l}"));
            let w = d.fundamental_weight(l as usize - 1).unwrap();
            let n = l as usize;
            assert_eq!(w[n - 2], BigRational::new(l.into(), 4.into()));
            assert_eq!(w[n - 1], BigRational::new((l - 2).into(), 4.into()));
        }
    }

    #[test]
    fn lengths() {
        let g2 = build("G2");
        let lens: BTreeSet<_> = g2
            .roots()
            .iter()
            .map(|r| r.squared_length.clone())
            .collect();
        assert_eq!(
            lens,
            [
                BigRational::new(2.into(), 3.into()),
                BigRational::from_integer(2.into())
            ]
            .into_iter()
            .collect()
        );
        let c3 = build("C3");
        assert_eq!(
            c3.simple_root_length(3),
            &BigRational::from_integer(2.into())
        );
        assert_eq!(
            c3.simple_root_length(1),
            &BigRational::from_integer(1.into())
        );
    }

    #[test]
    fn duality() {
        let b3 = build("B3");
        let dual = b3.dual();
        assert_eq!(dual.cartan(), &cartan_matrix("C3".parse().unwrap()));
        assert_eq!(dual.system_type().family(), Family::C);

        let a2 = build("A2");
        assert_eq!(a2.dual().cartan(), a2.cartan());

        let c5 = build("C5");
        assert_eq!(c5.dual().dual().cartan(), c5.cartan());
    }

    #[test]
    fn coroots_are_roots_of_the_dual() {
        for s in ["B4", "C4", "F4", "G2", "E6"] {
            let rs = build(s);
            let dual = rs.dual();
            let mine: HashSet<Vec<i64>> = rs.roots().iter().map(|r| rs.coroot(r)).collect();
            let theirs: HashSet<Vec<i64>> = dual.roots().iter().map(|r| r.coords.clone()).collect();
            assert_eq!(mine, theirs, "{s}");
        }
    }

    #[test]
    fn weights_in_root_lattice() {
        let e7 = build("E7");
        assert!(e7.weight_in_root_lattice(1).unwrap());
        assert_eq!(
            e7.fundamental_weight(1).unwrap(),
            &RationalVector::from_integers([2, 2, 3, 4, 3, 2, 1])
        );
        assert!(!e7.weight_in_root_lattice(7).unwrap());
        assert!(build("B3").weight_in_root_lattice(2).unwrap());
        assert!(e7.weight_in_root_lattice(8).is_err());
        assert!(e7.weight_in_root_lattice(0).is_err());
    }

    #[test]
    fn delta_r_examples() {
        assert_eq!(build("B4").delta_r(), set(&[1, 2, 3]));
        assert_eq!(build("E7").delta_r(), set(&[1, 3, 4, 6]));
        assert_eq!(build("A5").delta_r(), set(&[]));
        assert_eq!(build("E6").delta_r(), set(&[2, 4]));
        assert_eq!(build("F4").delta_r(), set(&[1, 2, 3, 4]));
    }

    #[test]
    fn delta_c_examples() {
        for l in 2..=8 {
            assert_eq!(build(&format!("B{l}")).delta_c(), set(&[1]));
        }
        assert_eq!(build("A3").delta_c(), set(&[1, 2, 3]));
        assert_eq!(build("E8").delta_c(), set(&[]));
        assert_eq!(build("C4").delta_c(), set(&[4]));
    }

    #[test]
    fn rejects_bad_cartan() {
        let t: SystemType = "A2".parse().unwrap();
        let affine = IntegerMatrix::from_rows(&[[2, -2], [-2, 2]]);
        assert!(RootSystem::from_cartan(t, affine).is_err());
        let asym = IntegerMatrix::from_rows(&[[2, 0], [-1, 2]]);
        assert!(RootSystem::from_cartan(t, asym).is_err());
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{IntegerMatrix, RationalVector};
use super::smith::smith_normal_form;
use crate::error::{Error, Result};

/// Solves `m * x = rhs` over the rationals by Gauss-Jordan elimination.
pub fn solve_rational(m: &IntegerMatrix, rhs: &RationalVector) -> Result<RationalVector> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let n = m.rows();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= &f * p;
            }
        }
    }
    Ok(RationalVector::new(
        a.into_iter().map(|mut r| r.pop().unwrap()).collect(),
    ))
}

/// A finite abelian group `⊕ Z/d_i` presented as a quotient `Z^n / L` of an
/// ambient lattice by a full-rank sublattice.
///
/// `generators[i]` lifts the generator of the `i`-th cyclic factor to the
/// ambient lattice. `class_rows` maps an ambient vector to its coordinates in
/// `⊕ Z/d_i`; it is independent of which lifts are chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
    generators: Vec<RationalVector>,
    class_rows: Vec<Vec<BigInt>>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
            class_rows: Vec::new(),
        }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[RationalVector] {
        &self.generators
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    /// Exponent of the group (lcm of the invariant factors).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc.lcm(d))
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// Coordinates of the class of an ambient integer vector, each reduced to `[0, d_i)`.
    pub fn class_of(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.class_rows
            .iter()
            .zip(&self.invariant_factors)
            .map(|(row, d)| {
                let s: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                s.mod_floor(d)
            })
            .collect()
    }

    /// Coordinates of the class of an ambient rational vector, or `None` when
    /// the vector is not in the ambient lattice.
    pub fn class_of_rational(&self, v: &RationalVector) -> Option<Vec<BigInt>> {
        v.to_integers().map(|ints| self.class_of(&ints))
    }

    /// Order of a class given by its coordinates.
    pub fn class_order(&self, class: &[BigInt]) -> BigInt {
        class
            .iter()
            .zip(&self.invariant_factors)
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d))))
    }

    /// True when the ambient vector lies in the sublattice.
    pub fn is_trivial_class(&self, v: &[BigInt]) -> bool {
        self.class_of(v).iter().all(Zero::is_zero)
    }

    /// Replaces the generator lifts. The new lifts must be integral, and their
    /// classes must have the orders of the respective invariant factors and
    /// generate the whole group.
    pub fn with_generators(&self, lifts: Vec<RationalVector>) -> Option<Self> {
        if lifts.len() != self.invariant_factors.len() {
            return None;
        }
        let classes: Vec<Vec<BigInt>> = lifts
            .iter()
            .map(|g| self.class_of_rational(g))
            .collect::<Option<_>>()?;
        let orders_match = classes
            .iter()
            .zip(&self.invariant_factors)
            .all(|(c, d)| &self.class_order(c) == d);
        if !orders_match || self.span_size(&classes) != self.order() {
            return None;
        }
        // coordinates of each old basis class in terms of the new generators
        let k = self.invariant_factors.len();
        let mut coords_of = std::collections::BTreeMap::new();
        let mut x = vec![BigInt::zero(); k];
        loop {
            let class: Vec<BigInt> = (0..k)
                .map(|i| {
                    let s: BigInt = x.iter().zip(&classes).map(|(xj, c)| xj * &c[i]).sum();
                    s.mod_floor(&self.invariant_factors[i])
                })
                .collect();
            coords_of.insert(class, x.clone());
            let mut pos = 0;
            while pos < k {
                x[pos] += 1;
                if x[pos] < self.invariant_factors[pos] {
                    break;
                }
                x[pos] = BigInt::zero();
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
        let n = self.class_rows.first().map_or(0, Vec::len);
        let mut class_rows = vec![vec![BigInt::zero(); n]; k];
        for old in 0..k {
            let mut unit = vec![BigInt::zero(); k];
            unit[old] = BigInt::one();
            let m = &coords_of[&unit];
            for (row, coeff) in class_rows.iter_mut().zip(m) {
                for (r, o) in row.iter_mut().zip(&self.class_rows[old]) {
                    *r += coeff * o;
                }
            }
        }
        Some(FiniteAbelianGroup {
            invariant_factors: self.invariant_factors.clone(),
            generators: lifts,
            class_rows,
        })
    }

    /// Size of the subgroup generated by the given classes, by enumeration.
    pub fn span_size(&self, classes: &[Vec<BigInt>]) -> BigInt {
        use std::collections::BTreeSet;
        let zero = vec![BigInt::zero(); self.invariant_factors.len()];
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for c in classes {
                let y: Vec<BigInt> = x
                    .iter()
                    .zip(c)
                    .zip(&self.invariant_factors)
                    .map(|((a, b), d)| (a + b).mod_floor(d))
                    .collect();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        BigInt::from(seen.len())
    }
}

/// Quotient of `Z^n` by the lattice spanned by the columns of `sublattice_basis`.
///
/// With `L * M * R = D`, the columns of `M` span `L^{-1} D Z^n`, so the
/// columns of `L^{-1}` at nontrivial diagonal positions lift the cyclic
/// generators and the matching rows of `L` give class coordinates.
pub fn lattice_quotient(sublattice_basis: &IntegerMatrix) -> Result<FiniteAbelianGroup> {
    if !sublattice_basis.is_square() {
        return Err(Error::DimensionMismatch {
            expected: sublattice_basis.rows(),
            got: sublattice_basis.cols(),
        });
    }
    let snf = smith_normal_form(sublattice_basis);
    if snf.diag.iter().any(Zero::is_zero) {
        return Err(Error::InfiniteQuotient);
    }
    let mut group = FiniteAbelianGroup::trivial();
    for (i, d) in snf.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        group.invariant_factors.push(d.clone());
        group
            .generators
            .push(RationalVector::from_integers(snf.left_inverse.column(i)));
        group.class_rows.push(snf.left.row(i).to_vec());
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(g: &FiniteAbelianGroup) -> Vec<i64> {
        g.invariant_factors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn solve_identity() {
        let rhs = RationalVector::from_fractions(&[(1, 2), (-3, 1), (0, 1)]);
        assert_eq!(
            solve_rational(&IntegerMatrix::identity(3), &rhs).unwrap(),
            rhs
        );
    }

    #[test]
    fn solve_a2_cartan() {
        let a2 = IntegerMatrix::from_rows(&[[2, -1], [-1, 2]]);
        let x = solve_rational(&a2, &RationalVector::unit(2, 0)).unwrap();
        assert_eq!(x, RationalVector::from_fractions(&[(2, 3), (1, 3)]));
    }

    #[test]
    fn solve_rejects_singular() {
        let m = IntegerMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(
            solve_rational(&m, &RationalVector::unit(2, 0)),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn quotient_of_identity_is_trivial() {
        let g = lattice_quotient(&IntegerMatrix::identity(4)).unwrap();
        assert!(g.is_trivial());
        assert!(g.order().is_one());
    }

    #[test]
    fn quotient_a2_and_d4() {
        let a2 = lattice_quotient(&IntegerMatrix::from_rows(&[[2, -1], [-1, 2]])).unwrap();
        assert_eq!(factors(&a2), vec![3]);
        assert_eq!(a2.generators().len(), 1);

        let d4 = IntegerMatrix::from_rows(&[
            [2, -1, 0, 0],
            [-1, 2, -1, -1],
            [0, -1, 2, 0],
            [0, -1, 0, 2],
        ]);
        let g = lattice_quotient(&d4).unwrap();
        assert_eq!(factors(&g), vec![2, 2]);
    }

    #[test]
    fn generators_have_claimed_orders() {
        let m = IntegerMatrix::from_rows(&[[4, 2, 0], [0, 6, 2], [2, 0, 8]]);
        let g = lattice_quotient(&m).unwrap();
        for (gen, d) in g.generators().iter().zip(g.invariant_factors()) {
            let v = gen.to_integers().unwrap();
            let d_i64 = i64::try_from(d).unwrap();
            for k in 1..d_i64 {
                let kv: Vec<BigInt> = v.iter().map(|x| x * k).collect();
                assert!(!g.is_trivial_class(&kv));
            }
            let dv: Vec<BigInt> = v.iter().map(|x| x * d).collect();
            assert!(g.is_trivial_class(&dv));
        }
    }

    #[test]
    fn singular_sublattice_is_rejected() {
        let m = IntegerMatrix::from_rows(&[[1, 1], [1, 1]]);
        assert_eq!(lattice_quotient(&m), Err(Error::InfiniteQuotient));
    }

    #[test]
    fn regenerating_with_other_lifts() {
        let g = lattice_quotient(&IntegerMatrix::from_rows(&[[2, -1], [-1, 2]])).unwrap();
        // e_2 also has order 3 in Z^2 / A_2 Cartan columns.
        let other = g
            .with_generators(vec![RationalVector::from_integers([0, 1])])
            .unwrap();
        assert_eq!(other.generators()[0], RationalVector::from_integers([0, 1]));
        let gen = other.generators()[0].to_integers().unwrap();
        assert_eq!(other.class_of(&gen), vec![BigInt::one()]);
        assert!(g
            .with_generators(vec![RationalVector::from_integers([2, -1])])
            .is_none());
    }
}

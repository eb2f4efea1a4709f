use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// `left * source * right == diag(diag)` with `left`, `right` unimodular.
///
/// The inverses of both transforms are kept as well; `left_inverse` columns
/// are the basis adapted to the diagonal form, which is what lattice quotients
/// need.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub source: IntegerMatrix,
    pub left: IntegerMatrix,
    pub left_inverse: IntegerMatrix,
    pub right: IntegerMatrix,
    pub right_inverse: IntegerMatrix,
    /// Length `min(rows, cols)`, nonnegative, nonzero entries form a divisibility chain.
    pub diag: Vec<BigInt>,
}

impl SmithDecomposition {
    /// The `rows x cols` matrix carrying `diag` on its diagonal.
    pub fn diagonal_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.source.rows(), self.source.cols());
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// Checks every structural invariant of the decomposition.
    pub fn is_valid(&self) -> bool {
        let d = self.diagonal_matrix();
        let nonzero: Vec<_> = self.diag.iter().take_while(|x| !x.is_zero()).collect();
        &(&self.left * &self.source) * &self.right == d
            && self.left.is_unimodular()
            && self.right.is_unimodular()
            && &self.left * &self.left_inverse == IntegerMatrix::identity(self.left.rows())
            && &self.right * &self.right_inverse == IntegerMatrix::identity(self.right.rows())
            && self.diag.iter().all(|x| !x.is_negative())
            && nonzero.len() == self.rank()
            && nonzero.windows(2).all(|w| w[1].is_multiple_of(w[0]))
    }
}

struct Reducer {
    a: IntegerMatrix,
    left: IntegerMatrix,
    left_inv: IntegerMatrix,
    right: IntegerMatrix,
    right_inv: IntegerMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.left.swap_rows(i, j);
        self.left_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.right.swap_cols(i, j);
        self.right_inv.swap_rows(i, j);
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_row_multiple(target, source, c);
        self.left.add_row_multiple(target, source, c);
        self.left_inv.add_col_multiple(source, target, &-c);
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_col_multiple(target, source, c);
        self.right.add_col_multiple(target, source, c);
        self.right_inv.add_row_multiple(source, target, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.left.negate_row(i);
        self.left_inv.negate_col(i);
    }

    /// Position of the first smallest nonzero |entry| in the trailing block, row-major.
    fn smallest_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = self.a[(i, j)].abs();
                if v.is_zero() {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, b)| v < *b) {
                    best = Some(((i, j), v));
                }
            }
        }
        best.map(|(p, _)| p)
    }

    /// Reduces the block starting at `(t, t)` until `a[t][t]` is the only
    /// nonzero in its row and column and divides the remaining block.
    /// Returns false once the trailing block is zero.
    fn settle_pivot(&mut self, t: usize) -> bool {
        let (m, n) = (self.a.rows(), self.a.cols());
        loop {
            let Some((pi, pj)) = self.smallest_pivot(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);

            let pivot = self.a[(t, t)].clone();
            let mut residue = false;
            for i in t + 1..m {
                let q = self.a[(i, t)].div_floor(&pivot);
                self.add_row(i, t, &-q);
                residue |= !self.a[(i, t)].is_zero();
            }
            for j in t + 1..n {
                let q = self.a[(t, j)].div_floor(&pivot);
                self.add_col(j, t, &-q);
                residue |= !self.a[(t, j)].is_zero();
            }
            if residue {
                continue;
            }

            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => self.add_row(t, i, &BigInt::from(1)),
                None => {
                    if pivot.is_negative() {
                        self.negate_row(t);
                    }
                    return true;
                }
            }
        }
    }
}

/// Smith normal form of an arbitrary rectangular integer matrix.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        left: IntegerMatrix::identity(rows),
        left_inv: IntegerMatrix::identity(rows),
        right: IntegerMatrix::identity(cols),
        right_inv: IntegerMatrix::identity(cols),
    };
    let k = rows.min(cols);
    for t in 0..k {
        if !r.settle_pivot(t) {
            break;
        }
    }
    let diag = (0..k).map(|i| r.a[(i, i)].clone()).collect();
    SmithDecomposition {
        source: m.clone(),
        left: r.left,
        left_inverse: r.left_inv,
        right: r.right,
        right_inverse: r.right_inv,
        diag,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(rows: &[&[i64]]) -> Vec<i64> {
        let m = IntegerMatrix::from_rows(rows);
        let s = smith_normal_form(&m);
        assert!(s.is_valid(), "invalid decomposition for {m}");
        s.diag.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntegerMatrix::identity(3);
        let s = smith_normal_form(&id);
        assert_eq!(s.left, id);
        assert_eq!(s.right, id);
        assert_eq!(
            diag_of(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn small_known_forms() {
        assert_eq!(diag_of(&[&[2, 4], &[6, 8]]), vec![2, 4]);
        assert_eq!(diag_of(&[&[2, -1], &[-1, 2]]), vec![1, 3]);
        assert_eq!(diag_of(&[&[0, 0], &[0, 0]]), vec![0, 0]);
        assert_eq!(diag_of(&[&[6], &[4]]), vec![2]);
        assert_eq!(diag_of(&[&[2, 0], &[0, 3]]), vec![1, 6]);
        assert_eq!(diag_of(&[&[0, 5, 0, 10]]), vec![5]);
    }

    #[test]
    fn zero_dimensional_is_trivial() {
        let s = smith_normal_form(&IntegerMatrix::zeros(0, 0));
        assert!(s.diag.is_empty());
        assert!(s.is_valid());
        let s = smith_normal_form(&IntegerMatrix::zeros(0, 3));
        assert!(s.diag.is_empty());
        assert_eq!(s.right, IntegerMatrix::identity(3));
    }

    #[test]
    fn deterministic() {
        let m = IntegerMatrix::from_rows(&[[3, -7, 2], [9, 4, -4], [1, 1, 12]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.left, b.left);
        assert_eq!(a.right, b.right);
    }
}

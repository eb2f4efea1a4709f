//! Independent oracles shared by the integration suites. Nothing here calls
//! into the Smith normal form or root-generation code under test.

#![allow(dead_code)]

use liecenter::lattice::IntegerMatrix;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free Gaussian elimination on a square matrix.
pub fn bareiss_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `g_k` = gcd of all `k×k` minors, stopping early once the gcd reaches 1.
pub fn minor_gcd(m: &[Vec<i64>], k: usize) -> i128 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0i128;
    for r in combinations(rows, k) {
        for c in combinations(cols, k) {
            let sub: Vec<Vec<i128>> = r
                .iter()
                .map(|&i| c.iter().map(|&j| m[i][j] as i128).collect())
                .collect();
            g = gcd(g, bareiss_det(&sub));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// Nonzero invariant factors `d_k = g_k / g_{k-1}`.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let g = minor_gcd(m, k);
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

pub fn random_matrix(rng: &mut impl Rng, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let mut m: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect();
    // sometimes force a dependent row so that rank deficiency is exercised
    if rows >= 2 && rng.gen_bool(0.2) {
        let (a, b) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
        let f = rng.gen_range(-2..=2);
        let target = rng.gen_range(0..rows);
        let row: Vec<i64> = (0..cols).map(|j| m[a][j] + f * m[b][j]).collect();
        m[target] = row;
    }
    m
}

pub fn to_matrix(m: &[Vec<i64>]) -> IntegerMatrix {
    if m.is_empty() {
        return IntegerMatrix::zeros(0, 0);
    }
    IntegerMatrix::from_rows(m)
}

pub fn nonzero_diag(diag: &[num_bigint::BigInt]) -> Vec<i128> {
    diag.iter()
        .map(|d| d.to_i128().unwrap())
        .filter(|&d| d != 0)
        .collect()
}

/// Adjugate column `j` of a square integer matrix, via cofactors.
pub fn adjugate_column(m: &[Vec<i64>], j: usize) -> Vec<i128> {
    let n = m.len();
    (0..n)
        .map(|i| {
            // adj[i][j] = (-1)^{i+j} det(m with row j and column i removed)
            let sub: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c] as i128)
                        .collect()
                })
                .collect();
            let sign = if (i + j).is_multiple_of(2) { 1 } else { -1 };
            sign * bareiss_det(&sub)
        })
        .collect()
}

pub fn int_rows(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| x.to_i64().unwrap()).collect())
        .collect()
}

/// `{ j : ω_j ∈ Λ_r }` from the adjugate: `A^{-1} = adj(A)/det(A)`.
pub fn delta_r_by_adjugate(cartan: &IntegerMatrix) -> Vec<usize> {
    let m = int_rows(cartan);
    let n = m.len();
    let det = bareiss_det(
        &m.iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect::<Vec<_>>(),
    );
    (0..n)
        .filter(|&j| adjugate_column(&m, j).iter().all(|x| x % det == 0))
        .map(|j| j + 1)
        .collect()
}

/// Bourbaki highest roots (simple-root coefficients).
pub fn highest_root(family: char, l: usize) -> Vec<i64> {
    match family {
        'A' => vec![1; l],
        'B' => {
            let mut v = vec![2; l];
            v[0] = 1;
            v
        }
        'C' => {
            let mut v = vec![2; l];
            v[l - 1] = 1;
            v
        }
        'D' => {
            let mut v = vec![2; l];
            v[0] = 1;
            v[l - 2] = 1;
            v[l - 1] = 1;
            v
        }
        'E' => match l {
            6 => vec![1, 2, 2, 3, 2, 1],
            7 => vec![2, 2, 3, 4, 3, 2, 1],
            _ => vec![2, 3, 4, 6, 5, 4, 3, 2],
        },
        'F' => vec![2, 3, 4, 2],
        _ => vec![3, 2],
    }
}

//! Bilinear pairings on the center and classification of 2×2 forms over F2.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PairingKind {
    DEvenHyperbolic,
    DEvenDiagonal,
    StandardMuN,
}

/// A pairing on the center. For `D_ℓ` with `ℓ` even, `gram` is in the
/// coordinates `(ω_{ℓ-1}, ω_ℓ)` over F2; otherwise it is `[[1]]` mod `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PairingSpec {
    pub kind: PairingKind,
    pub modulus: u64,
    pub gram: Vec<Vec<u64>>,
}

impl PairingSpec {
    pub fn hyperbolic() -> Self {
        PairingSpec {
            kind: PairingKind::DEvenHyperbolic,
            modulus: 2,
            gram: vec![vec![0, 1], vec![1, 0]],
        }
    }

    pub fn diagonal() -> Self {
        PairingSpec {
            kind: PairingKind::DEvenDiagonal,
            modulus: 2,
            gram: vec![vec![1, 0], vec![0, 1]],
        }
    }

    pub fn standard(n: u64) -> Self {
        PairingSpec {
            kind: PairingKind::StandardMuN,
            modulus: n.max(1),
            gram: vec![vec![1 % n.max(1)]],
        }
    }

    /// The pairing for `D_ℓ`, `ℓ` even.
    pub fn d_even(rank: usize) -> Self {
        if rank.is_multiple_of(4) {
            Self::hyperbolic()
        } else {
            Self::diagonal()
        }
    }
}

impl fmt::Display for PairingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PairingKind::DEvenHyperbolic => write!(f, "hyperbolic [[0,1],[1,0]] over F2"),
            PairingKind::DEvenDiagonal => write!(f, "diagonal [[1,0],[0,1]] over F2"),
            PairingKind::StandardMuN => write!(f, "standard on mu_{}", self.modulus),
        }
    }
}

/// `xᵀ · gram · y` mod the modulus; `x` and `y` are character values.
pub fn cup_pairing(p: &PairingSpec, x: &[u64], y: &[u64]) -> u64 {
    let n = p.modulus;
    let mut s = 0;
    for (i, row) in p.gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            s = (s + (x[i] % n) * (g % n) % n * (y[j] % n)) % n;
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormClass {
    Hyperbolic,
    MetabolicNotHyperbolic,
    Degenerate,
    Other,
}

impl fmt::Display for FormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormClass::Hyperbolic => "hyperbolic",
            FormClass::MetabolicNotHyperbolic => "metabolic-not-hyperbolic",
            FormClass::Degenerate => "degenerate",
            FormClass::Other => "other",
        };
        write!(f, "{s}")
    }
}

pub type F2Matrix = [[u8; 2]; 2];

/// The six elements of GL2(F2).
pub fn gl2_f2() -> Vec<F2Matrix> {
    let mut out = Vec::new();
    for bits in 0u8..16 {
        let m = [[bits >> 3 & 1, bits >> 2 & 1], [bits >> 1 & 1, bits & 1]];
        if (m[0][0] * m[1][1] + m[0][1] * m[1][0]) % 2 == 1 {
            out.push(m);
        }
    }
    out
}

/// `Pᵀ · g · P` over F2.
pub fn congruent(g: &F2Matrix, p: &F2Matrix) -> F2Matrix {
    let mut out = [[0u8; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut s = 0;
            for k in 0..2 {
                for l in 0..2 {
                    s += p[k][i] * g[k][l] * p[l][j];
                }
            }
            *cell = s % 2;
        }
    }
    out
}

fn reduce(g: &F2Matrix) -> F2Matrix {
    [[g[0][0] % 2, g[0][1] % 2], [g[1][0] % 2, g[1][1] % 2]]
}

/// Classifies a 2×2 form over F2 by brute-force congruence against the
/// reference forms `[[0,1],[1,0]]` and `[[1,0],[0,1]]`.
pub fn classify_f2_form(gram: &F2Matrix) -> FormClass {
    let g = reduce(gram);
    if g[0][1] != g[1][0] {
        return FormClass::Other;
    }
    if (g[0][0] * g[1][1] + g[0][1] * g[1][0]).is_multiple_of(2) {
        return FormClass::Degenerate;
    }
    let hyperbolic = [[0, 1], [1, 0]];
    let diagonal = [[1, 0], [0, 1]];
    let orbit_contains =
        |reference: &F2Matrix| gl2_f2().iter().any(|p| congruent(reference, p) == g);
    if orbit_contains(&hyperbolic) {
        FormClass::Hyperbolic
    } else if orbit_contains(&diagonal) {
        FormClass::MetabolicNotHyperbolic
    } else {
        FormClass::Other
    }
}

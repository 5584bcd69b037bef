//! Reduced simplicial homology over prime fields and the rationals.
//!
//! Boundary matrices come from the augmented chain complex (the empty face
//! generates degree -1), so Betti numbers here are reduced. Ranks are taken
//! by Gaussian elimination mod p, or fraction-free elimination over the
//! integers for the rational case. No floating point anywhere.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::SimplicialComplex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("homology of the void complex is undefined")]
    VoidComplex,
    #[error("{0} is not prime; fields are GF(p) for prime p, or 0 for the rationals")]
    NotPrime(u64),
}

/// Coefficient field: GF(p) for a prime p, or the rationals (characteristic 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
}

impl FieldSpec {
    pub fn gf(p: u64) -> Result<Self, HomologyError> {
        if !is_prime(p) {
            return Err(HomologyError::NotPrime(p));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn gf2() -> Self {
        FieldSpec { characteristic: 2 }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.characteristic == 0 {
            write!(f, "Q")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense signed integer matrix; boundary entries are always 0 or ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![0; cols]; rows],
        }
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        if field.characteristic == 0 {
            rank_rational(self)
        } else {
            rank_gf(self, field.characteristic)
        }
    }
}

/// Rank mod p by straightforward Gaussian elimination.
pub fn rank_gf(matrix: &IntMatrix, p: u64) -> usize {
    let p_wide = p as u128;
    let reduce = |v: i64| -> u128 { v.rem_euclid(p as i64) as u128 };
    let mut a: Vec<Vec<u128>> = matrix
        .entries
        .iter()
        .map(|row| row.iter().map(|&v| reduce(v)).collect())
        .collect();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..matrix.cols {
        let Some(r) = (pivot_row..matrix.rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(pivot_row, r);
        let inv = mod_inverse(a[pivot_row][col] as u64, p) as u128;
        for entry in a[pivot_row][col..].iter_mut() {
            *entry = *entry * inv % p_wide;
        }
        let pivot = a[pivot_row].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != pivot_row && row[col] != 0 {
                let factor = row[col];
                for (entry, pv) in row[col..].iter_mut().zip(&pivot[col..]) {
                    let sub = factor * pv % p_wide;
                    *entry = (*entry + p_wide - sub) % p_wide;
                }
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == matrix.rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p, with wide intermediates for large primes
    let (mut base, p_wide) = (a as u128 % p as u128, p as u128);
    let mut exp = p - 2;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p_wide;
        }
        base = base * base % p_wide;
        exp >>= 1;
    }
    acc as u64
}

/// Rank over the rationals by fraction-free (Bareiss) elimination on exact
/// integers. Divisions are exact; a debug assertion guards the invariant.
pub fn rank_rational(matrix: &IntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = matrix
        .entries
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut rank = 0;
    let mut pivot_row = 0;
    let mut prev = BigInt::one();
    for col in 0..matrix.cols {
        let Some(r) = (pivot_row..matrix.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, r);
        for r in pivot_row + 1..matrix.rows {
            for c in col + 1..matrix.cols {
                let num = &a[r][c] * &a[pivot_row][col] - &a[r][col] * &a[pivot_row][c];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[pivot_row][col].clone();
        rank += 1;
        pivot_row += 1;
        if pivot_row == matrix.rows {
            break;
        }
    }
    rank
}

/// Reduced Betti numbers indexed by degree, from -1 up to dim K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    pub field: FieldSpec,
    /// by_degree[i] is the reduced Betti number in degree i - 1.
    pub by_degree: Vec<usize>,
}

impl BettiNumbers {
    pub fn betti(&self, degree: i64) -> usize {
        usize::try_from(degree + 1)
            .ok()
            .and_then(|i| self.by_degree.get(i).copied())
            .unwrap_or(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.by_degree.len() as i64 - 2
    }

    pub fn all_zero(&self) -> bool {
        self.by_degree.iter().all(|&b| b == 0)
    }

    /// Reduced Euler characteristic: alternating sum of the Betti numbers.
    pub fn euler_sum(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, &b) in self.by_degree.iter().enumerate() {
            let degree_parity = (i + 1) % 2; // i = 0 is degree -1
            let term = BigInt::from(b);
            if degree_parity == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }
}

/// Boundary matrices of the augmented chain complex: entry k maps chains on
/// faces with k + 1 vertices to chains on faces with k vertices, for
/// k = 0..=dim (so the first matrix is the augmentation onto the empty face).
pub fn boundary_matrices(complex: &SimplicialComplex) -> Result<Vec<IntMatrix>, HomologyError> {
    let dim = complex.dimension().ok_or(HomologyError::VoidComplex)?;
    let mut by_card: Vec<Vec<crate::complex::Face>> = Vec::new();
    for card in 0..=(dim + 1) as usize {
        by_card.push(complex.faces_with_cardinality(card));
    }
    let mut mats = Vec::new();
    for k in 0..=dim {
        let k = k as usize;
        let sources = &by_card[k + 1];
        let targets = &by_card[k];
        let index: std::collections::HashMap<&crate::complex::Face, usize> =
            targets.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut m = IntMatrix::zero(targets.len(), sources.len());
        for (j, face) in sources.iter().enumerate() {
            for (pos, v) in face.vertices().iter().enumerate() {
                let sub = face.without(*v);
                let i = index[&sub];
                m.entries[i][j] = if pos % 2 == 0 { 1 } else { -1 };
            }
        }
        mats.push(m);
    }
    Ok(mats)
}

/// Reduced Betti numbers over the chosen field, degrees -1..=dim.
pub fn reduced_betti(
    complex: &SimplicialComplex,
    field: FieldSpec,
) -> Result<BettiNumbers, HomologyError> {
    let dim = complex.dimension().ok_or(HomologyError::VoidComplex)?;
    let mats = boundary_matrices(complex)?;
    let ranks: Vec<usize> = mats.iter().map(|m| m.rank(field)).collect();
    let mut by_degree = Vec::with_capacity((dim + 2) as usize);
    for i in -1..=dim {
        let idx = (i + 1) as usize;
        let n_i = if i == -1 {
            1
        } else {
            mats[i as usize].cols
        };
        let rank_in = if idx < ranks.len() { ranks[idx] } else { 0 };
        let rank_out = if i == -1 { 0 } else { ranks[i as usize] };
        by_degree.push(n_i - rank_out - rank_in);
    }
    Ok(BettiNumbers { field, by_degree })
}

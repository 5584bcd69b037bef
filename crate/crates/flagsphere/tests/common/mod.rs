//! Shared helpers for integration tests, including rank oracles that stay
//! independent of the library's elimination code: ranks are computed by
//! incremental insertion into a reduced pivot basis, not by in-place
//! Gaussian elimination.

use num_bigint::BigInt;
use num_traits::Zero;

/// Rank over GF(p): reduce each row against a growing pivot basis; the rank
/// is the number of rows that survive with a nonzero pivot.
pub fn oracle_rank_gf(entries: &[Vec<i64>], p: u64) -> usize {
    let p = p as i128;
    let cols = entries.first().map_or(0, Vec::len);
    // basis rows normalized to pivot 1, keyed by pivot column
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::new();
    for row in entries {
        let mut r: Vec<i128> = row.iter().map(|&v| (v as i128).rem_euclid(p)).collect();
        while let Some(j) = (0..cols).find(|&j| r[j] != 0) {
            match basis.iter().find(|(pj, _)| *pj == j) {
                Some((_, b)) => {
                    let factor = r[j];
                    for (rc, bc) in r.iter_mut().zip(b) {
                        *rc = (*rc - factor * bc).rem_euclid(p);
                    }
                }
                None => {
                    let inv = mod_pow(r[j], p - 2, p);
                    for rc in r.iter_mut() {
                        *rc = *rc * inv % p;
                    }
                    basis.push((j, r));
                    break;
                }
            }
        }
    }
    basis.len()
}

fn mod_pow(mut base: i128, mut exp: i128, p: i128) -> i128 {
    let mut acc = 1i128;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank over the rationals: same incremental scheme with exact integer
/// cross-multiplication (no divisions at all, so exactness is trivial).
pub fn oracle_rank_rational(entries: &[Vec<i64>]) -> usize {
    let cols = entries.first().map_or(0, Vec::len);
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for row in entries {
        let mut r: Vec<BigInt> = row.iter().map(|&v| BigInt::from(v)).collect();
        while let Some(j) = (0..cols).find(|&j| !r[j].is_zero()) {
            match basis.iter().find(|(pj, _)| *pj == j) {
                Some((_, b)) => {
                    let (rj, bj) = (r[j].clone(), b[j].clone());
                    for (rc, bc) in r.iter_mut().zip(b) {
                        *rc = &*rc * &bj - bc * &rj;
                    }
                }
                None => {
                    basis.push((j, r));
                    break;
                }
            }
        }
    }
    basis.len()
}


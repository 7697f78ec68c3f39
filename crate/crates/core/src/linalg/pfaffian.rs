use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

const EXPANSION_LIMIT: usize = 8;

/// Pfaffian of an integral alternating matrix; `Pf(M)^2 = det(M)`.
///
/// Odd sizes have Pfaffian zero.
pub fn pfaffian(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_antisymmetric() {
        return Err(Error::NotAlternating);
    }
    let n = m.rows();
    if n % 2 == 1 {
        return Ok(BigInt::zero());
    }
    if n <= EXPANSION_LIMIT {
        let idx: Vec<usize> = (0..n).collect();
        Ok(pfaffian_expansion(m, &idx))
    } else {
        pfaffian_elimination(m)
    }
}

/// Expansion along the first remaining row:
/// `Pf(A) = Σ_j (-1)^(j+1) a_{1j} Pf(A_{1̂ĵ})`.
pub(crate) fn pfaffian_expansion(m: &IntMatrix, idx: &[usize]) -> BigInt {
    if idx.is_empty() {
        return BigInt::one();
    }
    let first = idx[0];
    let mut total = BigInt::zero();
    for (k, &j) in idx.iter().enumerate().skip(1) {
        let a = &m[(first, j)];
        if a.is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
        let term = a * pfaffian_expansion(m, &rest);
        // k is the 0-based position of j among idx, so the sign is (-1)^(k+1).
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Skew-symmetric elimination over the rationals. Each step applies a
/// congruence with determinant one, so the Pfaffian is the signed product of
/// the 2x2 pivots.
pub(crate) fn pfaffian_elimination(m: &IntMatrix) -> Result<BigInt> {
    let n = m.rows();
    let mut a: RatMatrix = m.to_rat();
    let mut pf = BigRational::one();
    let mut k = 0;
    while k < n {
        let Some(p) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) else {
            return Ok(BigInt::zero());
        };
        if p != k + 1 {
            a.swap_rows(p, k + 1);
            a.swap_cols(p, k + 1);
            pf = -pf;
        }
        let pivot = a[(k, k + 1)].clone();
        pf *= &pivot;
        for i in k + 2..n {
            // Clear a[k][i] with column k+1, then a[k+1][i] with column k.
            let c1 = &a[(k, i)] / &pivot;
            if !c1.is_zero() {
                add_congruence(&mut a, i, k + 1, &c1);
            }
            let c2 = &a[(k + 1, i)] / &a[(k + 1, k)];
            if !c2.is_zero() {
                add_congruence(&mut a, i, k, &c2);
            }
        }
        k += 2;
    }
    if !pf.is_integer() {
        // An integral alternating matrix always has an integral Pfaffian.
        return Err(Error::IntegralityFailure);
    }
    Ok(pf.to_integer())
}

/// col_i -= c·col_j and row_i -= c·row_j.
fn add_congruence(a: &mut RatMatrix, i: usize, j: usize, c: &BigRational) {
    let n = a.rows();
    for r in 0..n {
        let v = &a[(r, i)] - &(c * &a[(r, j)]);
        a[(r, i)] = v;
    }
    for s in 0..n {
        let v = &a[(i, s)] - &(c * &a[(j, s)]);
        a[(i, s)] = v;
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, RatMatrix};
use super::snf::snf;
use crate::error::{Error, Result};

/// Row-style Hermite normal form of the row lattice of `m`.
///
/// Returns the nonzero rows in echelon form: positive pivots, entries above
/// each pivot reduced into `[0, pivot)`. The output depends only on the
/// lattice spanned by the rows.
pub fn echelon_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let pivot_row = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .min_by(|&i, &j| a[(i, c)].abs().cmp(&a[(j, c)].abs()).then(i.cmp(&j)));
            let Some(p) = pivot_row else { break };
            a.swap_rows(r, p);
            let pivot = a[(r, c)].clone();
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&pivot);
                for j in c..cols {
                    let v = &a[(i, j)] - &q * &a[(r, j)];
                    a[(i, j)] = v;
                }
                done &= a[(i, c)].is_zero();
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            for j in c..cols {
                a[(r, j)] = -a[(r, j)].clone();
            }
        }
        let pivot = a[(r, c)].clone();
        for i in 0..r {
            let q = a[(i, c)].div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = &a[(i, j)] - &q * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        r += 1;
    }
    a.submatrix(0, 0, r, cols)
}

/// Canonical column basis of the lattice spanned by the (rational) columns.
///
/// The result is lower triangular with positive diagonal; in each row the
/// entries left of the pivot lie in `[0, pivot)`.
pub fn hnf_basis(columns: &RatMatrix) -> Result<RatMatrix> {
    let n = columns.rows();
    let scale = columns.denominator_lcm();
    let scaled = columns
        .map(|x| (x * BigRational::from_integer(scale.clone())).to_integer())
        .transpose();
    let h = echelon_rows(&scaled);
    if h.rows() < n {
        return Err(Error::RankDeficient);
    }
    let s = BigRational::from_integer(scale);
    Ok(h.transpose().map(|x| BigRational::from_integer(x.clone()) / &s))
}

/// Integral basis (as columns) of `{x ∈ Z^n : M x = 0}`, in canonical form.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let n = m.cols();
    let s = snf(m);
    let rank = s.rank();
    let idx: Vec<usize> = (rank..n).collect();
    if idx.is_empty() {
        return IntMatrix::zeros(n, 0);
    }
    let raw = s.v.select_columns(&idx);
    echelon_rows(&raw.transpose()).transpose()
}

/// Rank over the rationals.
pub fn rank_over_field(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn int_rank(m: &IntMatrix) -> usize {
    snf(m).rank()
}

/// Saturation `span_Q(L) ∩ Z^n` of a full-column-rank integer matrix, as a
/// canonical column basis.
pub fn saturate(l: &IntMatrix) -> Result<IntMatrix> {
    if int_rank(l) < l.cols() {
        return Err(Error::RankDeficient);
    }
    // Annihilator of the span, then its annihilator.
    let ann = kernel_basis(&l.transpose());
    Ok(kernel_basis(&ann.transpose()))
}

/// Whether the column lattice of `l` equals its saturation.
pub fn is_saturated(l: &IntMatrix) -> Result<bool> {
    let sat = saturate(l)?;
    Ok(echelon_rows(&l.transpose()) == sat.transpose())
}

/// Whether every column of `sub` lies in the Q-span of the columns of `l`.
pub fn in_rational_span(l: &IntMatrix, sub: &IntMatrix) -> bool {
    int_rank(l) == int_rank(&l.hstack(sub))
}

/// Solves `basis · c = v` for integer `c`; `None` if `v` is not in the
/// column lattice. `basis` must have full column rank.
pub fn lattice_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = snf(basis);
    // U B V = D  =>  B c = v  <=>  D (V^{-1} c) = U v
    let uv = s.u.mul_vec(v);
    let mut y = Vec::with_capacity(basis.cols());
    for (i, x) in uv.iter().enumerate() {
        if i < basis.cols() {
            let d = &s.d[(i, i)];
            if d.is_zero() || !x.is_multiple_of(d) {
                return None;
            }
            y.push(x / d);
        } else if !x.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}
